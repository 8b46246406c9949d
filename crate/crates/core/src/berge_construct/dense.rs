//! Matching on the pair graph without storing its edges. Used when k is
//! close to n, where almost every pair lies inside almost every k-set and
//! the adjacency lists would run to billions of entries.

use super::aux::AStar;
use crate::combinatorics::{binom, pair_rank, Family, Vertex};
use crate::matching::{coprime_stride, MatchingResult};

const NONE: u32 = u32::MAX;

/// Candidates looked at per left vertex before it is left to augmentation.
const GREEDY_SCAN: usize = 64;

#[derive(Debug, Clone)]
pub struct ImplicitMatching {
    pub result: MatchingResult,
    /// Total capacity of the violator's neighbourhood; 0 when perfect.
    pub neighbourhood: u64,
    pub memory_bytes: usize,
}

/// Indexed set of pairs with spare capacity.
struct OpenSet {
    items: Vec<u32>,
    pos: Vec<u32>,
}

impl OpenSet {
    fn insert(&mut self, p: u32) {
        if self.pos[p as usize] == NONE {
            self.pos[p as usize] = self.items.len() as u32;
            self.items.push(p);
        }
    }

    fn remove(&mut self, p: u32) {
        let i = self.pos[p as usize];
        if i == NONE {
            return;
        }
        let last = self.items.pop().expect("non-empty");
        if last != p {
            self.items[i as usize] = last;
            self.pos[last as usize] = i;
        }
        self.pos[p as usize] = NONE;
    }
}

struct State {
    words: usize,
    masks: Vec<u64>,
    ends: Vec<(Vertex, Vertex)>,
    residual: Vec<u32>,
    open: OpenSet,
    matched: Vec<u32>,
    holders: Vec<Vec<u32>>,
    slot: Vec<u32>,
}

impl State {
    #[inline]
    fn inside(&self, left: u32, p: u32) -> bool {
        let z = &self.masks[left as usize * self.words..][..self.words];
        let (a, b) = self.ends[p as usize];
        let bit = |v: Vertex| z[v as usize / 64] >> (v % 64) & 1 == 1;
        bit(a) && bit(b)
    }

    fn attach(&mut self, left: u32, p: u32) {
        self.matched[left as usize] = p;
        self.slot[left as usize] = self.holders[p as usize].len() as u32;
        self.holders[p as usize].push(left);
        self.residual[p as usize] -= 1;
        if self.residual[p as usize] == 0 {
            self.open.remove(p);
        }
    }

    fn detach(&mut self, left: u32) {
        let p = self.matched[left as usize];
        let i = self.slot[left as usize] as usize;
        let list = &mut self.holders[p as usize];
        list.swap_remove(i);
        if let Some(&moved) = list.get(i) {
            self.slot[moved as usize] = i as u32;
        }
        self.matched[left as usize] = NONE;
        self.residual[p as usize] += 1;
        self.open.insert(p);
    }
}

/// Maximum-or-blocked matching of `A_*` into vertex pairs with capacities
/// `cap` (indexed by `pair_rank`). Greedy first, then one breadth-first
/// augmentation per unmatched left vertex. Each search scans every live
/// pair at most once, so its cost is bounded by the number of pairs plus
/// the left vertices it reaches. On failure the left vertices reached from
/// the stuck vertex form a Hall violator.
pub fn match_implicit(a_star: &AStar, cap: &[u32]) -> ImplicitMatching {
    let left = a_star.len() as usize;
    let n = a_star.n() as usize;
    let words = (n + 1).div_ceil(64);
    let mut masks = vec![0u64; left * words];
    let mut row = 0;
    a_star.visit_range(0, left as u64, |z| {
        for &v in z {
            masks[row * words + v as usize / 64] |= 1 << (v % 64);
        }
        row += 1;
    });
    let mut ends = Vec::with_capacity(cap.len());
    for hi in 2..=n as Vertex {
        for lo in 1..hi {
            ends.push((lo, hi));
        }
    }
    let live: Vec<u32> = (0..cap.len() as u32).filter(|&p| cap[p as usize] > 0).collect();
    let mut open = OpenSet { items: Vec::with_capacity(live.len()), pos: vec![NONE; cap.len()] };
    for &p in &live {
        open.insert(p);
    }
    let mut st = State {
        words,
        masks,
        ends,
        residual: cap.to_vec(),
        open,
        matched: vec![NONE; left],
        holders: vec![Vec::new(); cap.len()],
        slot: vec![0; left],
    };

    let mut cursor = 0usize;
    // colex order groups k-sets by their missing vertices; a coprime stride
    // spreads the demand on each pair over the whole pass
    let stride = coprime_stride(left);
    let mut z = 0u32;
    for _ in 0..left {
        z = ((z as usize + stride) % left) as u32;
        let len = st.open.items.len();
        if len == 0 {
            break;
        }
        for t in 0..len.min(GREEDY_SCAN) {
            let p = st.open.items[(cursor + t) % len];
            if st.inside(z, p) {
                st.attach(z, p);
                cursor = cursor + t + 1;
                break;
            }
        }
    }

    let mut seen = vec![0u32; left];
    let mut parent = vec![NONE; cap.len()];
    let mut epoch = 0u32;
    let mut violator = None;
    let mut neighbourhood = 0u64;
    let mut search = Search { unvisited: Vec::with_capacity(live.len()), reached: Vec::new() };
    let mut lefts = Vec::new();
    for u in 0..left as u32 {
        if st.matched[u as usize] != NONE {
            continue;
        }
        epoch += 1;
        search.unvisited.clear();
        search.unvisited.extend_from_slice(&live);
        search.reached.clear();
        lefts.clear();
        lefts.push(u);
        seen[u as usize] = epoch;
        let mut found = search.expand(&st, &mut parent, u);
        let mut head = 0;
        // pairs are queued as they are reached; their holders are expanded
        // one at a time so the search stops at the first open pair
        'bfs: while found.is_none() && head < search.reached.len() {
            let p = search.reached[head] as usize;
            head += 1;
            for i in 0..st.holders[p].len() {
                let y = st.holders[p][i];
                if seen[y as usize] == epoch {
                    continue;
                }
                seen[y as usize] = epoch;
                lefts.push(y);
                if search.unvisited.is_empty() {
                    continue;
                }
                found = search.expand(&st, &mut parent, y);
                if found.is_some() {
                    break 'bfs;
                }
            }
        }
        if let Some(q) = found {
            augment(&mut st, &parent, q);
            continue;
        }
        lefts.sort_unstable();
        neighbourhood = search.reached.iter().map(|&p| cap[p as usize] as u64).sum();
        violator = Some(lefts.clone());
        break;
    }

    let memory_bytes = st.masks.len() * 8
        + left * 4 * 3
        + st.holders.iter().map(|h| h.capacity() * 4 + 24).sum::<usize>()
        + cap.len() * (4 * 4 + 8);
    let pairs: Vec<Option<u32>> = st.matched.iter().map(|&p| (p != NONE).then_some(p)).collect();
    let size = pairs.iter().filter(|p| p.is_some()).count();
    ImplicitMatching { result: MatchingResult { pairs, size, violator }, neighbourhood, memory_bytes }
}

struct Search {
    unvisited: Vec<u32>,
    reached: Vec<u32>,
}

impl Search {
    /// Visits the unvisited pairs inside `z`; returns the first one with
    /// spare capacity, queueing the saturated ones met before it.
    fn expand(&mut self, st: &State, parent: &mut [u32], z: u32) -> Option<u32> {
        let mut kept = 0;
        let mut found = None;
        for r in 0..self.unvisited.len() {
            let p = self.unvisited[r];
            if found.is_some() || !st.inside(z, p) {
                self.unvisited[kept] = p;
                kept += 1;
                continue;
            }
            parent[p as usize] = z;
            if st.residual[p as usize] > 0 {
                found = Some(p);
            } else {
                self.reached.push(p);
            }
        }
        self.unvisited.truncate(kept);
        found
    }
}

/// Shifts the alternating path ending at the open pair `q` back to the
/// unmatched vertex it started from.
fn augment(st: &mut State, parent: &[u32], q: u32) {
    let mut p = q;
    loop {
        let z = parent[p as usize];
        let old = st.matched[z as usize];
        if old != NONE {
            st.detach(z);
        }
        st.attach(z, p);
        if old == NONE {
            return;
        }
        p = old;
    }
}

/// Edge count of the pair graph from capacities alone: each live pair lies
/// in `C(n-2, k-2)` k-sets, less those removed as M.
pub fn implicit_edge_count(m: &Family, cap: &[u32]) -> u64 {
    let (n, k) = (m.n() as u64, m.k() as u64);
    let per_pair = binom(n - 2, k - 2).unwrap_or(u64::MAX);
    let live = cap.iter().filter(|&&c| c > 0).count() as u64;
    let mut removed = 0u64;
    for s in m {
        let z = s.elements();
        for hi in 1..z.len() {
            for lo in 0..hi {
                if cap[pair_rank(z[lo], z[hi])] > 0 {
                    removed += 1;
                }
            }
        }
    }
    live.saturating_mul(per_pair).saturating_sub(removed)
}

#[cfg(test)]
mod tests {
    use super::super::aux::{build_b, build_pair_graph, pair_multiplicity};
    use super::super::{choose_default_m, compute_parameters, random_admissible_m};
    use super::*;
    use crate::ham_decomp::{dk_decompose, select_m_cycles};
    use crate::matching::hopcroft_karp;

    fn instance(n: u32, k: u32, m: Family) -> (AStar, Vec<u32>, u64, usize) {
        let p = compute_parameters(n, k, m.len() as u64).unwrap();
        let dk = dk_decompose(n, 0).unwrap();
        let h = select_m_cycles(&dk, p.m as usize).unwrap();
        let b = build_b(&p, Some(&dk), &h).unwrap();
        let a = AStar::new(&m);
        let cap = pair_multiplicity(&b);
        let g = build_pair_graph(&a, &b, 1).unwrap();
        (a, cap, g.edge_count() as u64, hopcroft_karp(&g).size)
    }

    fn check_valid(a: &AStar, cap: &[u32], r: &MatchingResult) {
        let mut used = vec![0u32; cap.len()];
        for (left, p) in r.pairs.iter().enumerate() {
            if let Some(p) = *p {
                let z = a.kset(left as u64);
                let z = z.elements();
                assert!((1..z.len()).any(|hi| (0..hi).any(|lo| pair_rank(z[lo], z[hi]) == p as usize)));
                used[p as usize] += 1;
            }
        }
        assert!(used.iter().zip(cap).all(|(u, c)| u <= c));
    }

    #[test]
    fn agrees_with_hopcroft_karp() {
        for (n, k) in [(9, 6), (10, 7), (11, 8), (12, 5), (13, 10), (15, 12)] {
            for seed in 0..2 {
                let m = if seed == 0 { choose_default_m(n, k).unwrap() } else { random_admissible_m(n, k, seed).unwrap() };
                let (a, cap, edges, hk) = instance(n, k, m.clone());
                assert_eq!(implicit_edge_count(&m, &cap), edges, "({n},{k})");
                let got = match_implicit(&a, &cap);
                check_valid(&a, &cap, &got.result);
                assert!(got.result.is_perfect(), "({n},{k})");
                assert_eq!(got.result.size, hk);
                assert_eq!(got.result.size as u64, a.len());
            }
        }
    }

    #[test]
    fn blocked_instance_yields_violator() {
        let m = choose_default_m(10, 7).unwrap();
        let (a, mut cap, _, _) = instance(10, 7, m);
        // starve every pair inside {1..8}
        for hi in 2..=8u32 {
            for lo in 1..hi {
                cap[pair_rank(lo, hi)] = 0;
            }
        }
        let got = match_implicit(&a, &cap);
        check_valid(&a, &cap, &got.result);
        let s = got.result.violator.as_ref().expect("not perfect");
        assert!(s.len() as u64 > got.neighbourhood);
        // every pair inside a member of S is counted in the neighbourhood
        let mut inside = vec![false; cap.len()];
        for &l in s {
            let z = a.kset(l as u64);
            let z = z.elements();
            for hi in 1..z.len() {
                for lo in 0..hi {
                    inside[pair_rank(z[lo], z[hi])] = true;
                }
            }
        }
        let total: u64 = (0..cap.len()).filter(|&p| inside[p]).map(|p| cap[p] as u64).sum();
        assert_eq!(total, got.neighbourhood);
    }
}
