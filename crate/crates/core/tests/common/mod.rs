#![allow(dead_code)]

use berge::combinatorics::{binom_small, colex_unrank};
use berge::matching::BipartiteGraph;
use rand::Rng;

/// Maximum matching size by exhaustive search over right subsets, with every
/// capacity-`c` right vertex expanded into `c` twins.
pub fn brute_force_matching(g: &BipartiteGraph) -> usize {
    let mut twins: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for r in 0..g.right_count() {
        twins.push((next..next + g.capacity(r) as usize).collect());
        next += g.capacity(r) as usize;
    }
    assert!(next <= 20, "oracle limited to 20 expanded right vertices");
    let adj: Vec<u32> = (0..g.left_count())
        .map(|l| g.neighbours(l).iter().flat_map(|&r| twins[r as usize].iter()).fold(0u32, |m, &t| m | 1 << t))
        .collect();
    let mut memo = std::collections::HashMap::new();
    best(&adj, 0, 0, &mut memo)
}

fn best(adj: &[u32], left: usize, used: u32, memo: &mut std::collections::HashMap<(usize, u32), usize>) -> usize {
    if left == adj.len() {
        return 0;
    }
    if let Some(&v) = memo.get(&(left, used)) {
        return v;
    }
    let mut out = best(adj, left + 1, used, memo);
    let mut free = adj[left] & !used;
    while free != 0 {
        let bit = free & free.wrapping_neg();
        out = out.max(1 + best(adj, left + 1, used | bit, memo));
        free &= free - 1;
    }
    memo.insert((left, used), out);
    out
}

/// Random bipartite graph with `left <= max_left` and at most 12 expanded
/// right vertices; capacities are used on roughly half the draws.
pub fn random_graph<R: Rng>(rng: &mut R, max_left: usize) -> BipartiteGraph {
    let left = rng.gen_range(1..=max_left);
    let right = rng.gen_range(1..=12usize);
    let density = rng.gen_range(0.05..0.6);
    let adjacency: Vec<Vec<u32>> = (0..left)
        .map(|_| (0..right as u32).filter(|_| rng.gen_bool(density)).collect())
        .collect();
    if rng.gen_bool(0.5) {
        let mut cap = vec![1u32; right];
        let mut total = right;
        for c in cap.iter_mut() {
            if total < 12 && rng.gen_bool(0.3) {
                *c += 1;
                total += 1;
            }
        }
        let mut offsets = vec![0];
        let mut targets = Vec::new();
        for a in &adjacency {
            targets.extend_from_slice(a);
            offsets.push(targets.len());
        }
        BipartiteGraph::from_csr(left, right, offsets, targets, Some(cap)).unwrap()
    } else {
        BipartiteGraph::from_adjacency(right, &adjacency).unwrap()
    }
}

/// One random corruption of a valid HBD file that keeps it well formed:
/// a changed vertex, a replaced or duplicated edge, a dropped cycle, a
/// replaced M member, or a changed header field other than the seed.
pub fn mutate_hbd<R: Rng>(text: &str, rng: &mut R) -> (String, &'static str) {
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let header: Vec<(String, String)> = lines[1]
        .split(' ')
        .map(|f| {
            let (a, b) = f.split_once('=').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect();
    let field = |key: &str| header.iter().find(|(k, _)| k == key).unwrap().1.parse::<u32>().unwrap();
    let (n, k) = (field("n"), field("k"));
    let cycle_lines: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].starts_with("C ")).collect();
    let m_line = lines.iter().position(|l| l.starts_with("M "));
    let random_set = |rng: &mut R| colex_unrank(rng.gen_range(0..binom_small(n as u64, k as u64)), k).to_string();
    loop {
        let kind = rng.gen_range(0..7);
        let line = cycle_lines[rng.gen_range(0..cycle_lines.len())];
        let mut tokens: Vec<String> = lines[line].split(' ').map(str::to_string).collect();
        let pos = rng.gen_range(0..n as usize);
        let label = match kind {
            0 => {
                let v: u32 = tokens[1 + 2 * pos].parse().unwrap();
                let w = loop {
                    let w = rng.gen_range(1..=n);
                    if w != v {
                        break w;
                    }
                };
                tokens[1 + 2 * pos] = w.to_string();
                "vertex changed"
            }
            1 => {
                let new = random_set(rng);
                if new == tokens[2 + 2 * pos] {
                    continue;
                }
                tokens[2 + 2 * pos] = new;
                "edge replaced"
            }
            2 => {
                let other = cycle_lines[rng.gen_range(0..cycle_lines.len())];
                let src: Vec<&str> = lines[other].split(' ').collect();
                let q = rng.gen_range(0..n as usize);
                if other == line && q == pos {
                    continue;
                }
                tokens[2 + 2 * pos] = src[2 + 2 * q].to_string();
                "edge duplicated"
            }
            3 => {
                lines.remove(line);
                return (lines.join("\n") + "\n", "cycle dropped");
            }
            4 => {
                let Some(ml) = m_line else { continue };
                let mut ms: Vec<String> = lines[ml].split(' ').map(str::to_string).collect();
                let i = 1 + rng.gen_range(0..ms.len() - 1);
                let new = random_set(rng);
                if ms.contains(&new) {
                    continue;
                }
                ms[i] = new;
                lines[ml] = ms.join(" ");
                return (lines.join("\n") + "\n", "M member replaced");
            }
            5 => {
                let keys = ["n", "k", "msize", "cycles"];
                let key = keys[rng.gen_range(0..keys.len())];
                let old = field(key);
                let new = if rng.gen_bool(0.5) || old == 0 { old + 1 } else { old - 1 };
                lines[1] = header
                    .iter()
                    .map(|(k, v)| if k == key { format!("{k}={new}") } else { format!("{k}={v}") })
                    .collect::<Vec<_>>()
                    .join(" ");
                return (lines.join("\n") + "\n", "header count changed");
            }
            _ => {
                let old = &header.iter().find(|(k, _)| k == "case").unwrap().1;
                let new = ["1", "2", "3a", "3b"].into_iter().find(|c| c != old).unwrap();
                lines[1] = lines[1].replace(&format!("case={old}"), &format!("case={new}"));
                return (lines.join("\n") + "\n", "case changed");
            }
        };
        lines[line] = tokens.join(" ");
        return (lines.join("\n") + "\n", label);
    }
}
