//! The B side, the auxiliary bipartite graph and cycle assembly.

use std::thread;

use num_traits::ToPrimitive;

use super::{BergeCycle, ConstructError, Parameters};
use crate::combinatorics::{binom, colex_next, colex_unrank, colex_unrank_into, pair_rank, Family, KSet, Vertex};
use crate::ham_decomp::{DirectedEdge, HamCycle, HamDecomposition};
use crate::matching::{BipartiteGraph, MatchingResult};

/// Blocks of B, numbered from 1: `B(i)` and `BPrime(i)` split the
/// `i`th copy of `DK_n`, `H(j)` holds the edges of the `j`th extra cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BBlock {
    B(u32),
    BPrime(u32),
    H(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BElement {
    pub block: BBlock,
    /// `tail < head` for undirected cycles.
    pub edge: DirectedEdge,
    pub index: usize,
}

/// All of B in canonical order: `D_1, ..., D_ℓ, H_1, ..., H_m`, each block
/// in ascending `(tail, head)` order.
#[derive(Debug, Clone)]
pub struct BSide {
    n: u32,
    ell: u32,
    undirected: bool,
    elements: Vec<BElement>,
    /// Offset of `(tail, head)` inside one copy of `DK_n`, indexed
    /// `tail * (n + 1) + head`.
    d_slot: Vec<u32>,
    /// Start of each `H(j)` block, plus the end.
    h_offsets: Vec<usize>,
}

impl BSide {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BElement] {
        &self.elements
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    /// Index of the element for `edge` in block `block`.
    pub fn index_of(&self, block: BBlock, edge: DirectedEdge) -> Option<usize> {
        let n = self.n as usize;
        if edge.tail == edge.head || edge.tail as usize > n || edge.head as usize > n || edge.tail == 0 || edge.head == 0 {
            return None;
        }
        let per_copy = n * (n - 1);
        let slot = self.d_slot[edge.tail as usize * (n + 1) + edge.head as usize] as usize;
        match block {
            BBlock::B(i) | BBlock::BPrime(i) if i == 0 || i > self.ell => None,
            BBlock::B(i) => (edge.tail < edge.head).then(|| (i as usize - 1) * per_copy + slot),
            BBlock::BPrime(i) => (edge.tail > edge.head).then(|| (i as usize - 1) * per_copy + slot),
            BBlock::H(j) => {
                let j = j as usize;
                if j == 0 || j >= self.h_offsets.len() {
                    return None;
                }
                let edge = if self.undirected {
                    let (a, b) = edge.unordered();
                    DirectedEdge::new(a, b)
                } else {
                    edge
                };
                let (lo, hi) = (self.h_offsets[j - 1], self.h_offsets[j]);
                self.elements[lo..hi].binary_search_by(|e| e.edge.cmp(&edge)).ok().map(|p| lo + p)
            }
        }
    }

    /// Index of the element carrying edge `edge` of the `i`th copy of
    /// `DK_n`, whichever half of the split it lies in.
    fn copy_index(&self, i: u32, edge: DirectedEdge) -> Option<usize> {
        let block = if edge.tail < edge.head { BBlock::B(i) } else { BBlock::BPrime(i) };
        self.index_of(block, edge)
    }
}

/// B for parameters `p`: `ℓ` copies of `DK_n` (which need `dk` to exist)
/// followed by the edges of the `m` cycles `h`.
pub fn build_b(p: &Parameters, dk: Option<&HamDecomposition>, h: &[HamCycle]) -> Result<BSide, ConstructError> {
    let n = p.n;
    let ell = p.ell.to_u32().ok_or_else(|| ConstructError::Internal("ℓ exceeds 32 bits".into()))?;
    if ell > 0 && dk.is_none_or(|d| d.n != n || !d.kind.is_directed()) {
        return Err(ConstructError::Internal("ℓ > 0 needs a decomposition of DK_n".into()));
    }
    if h.len() != p.m as usize {
        return Err(ConstructError::SizeMismatch { what: "extra Hamilton cycles", got: h.len() as u64, expected: p.m as u64 });
    }
    if let Some(bad) = h.iter().find(|c| c.len() != n as usize) {
        return Err(ConstructError::SizeMismatch { what: "Hamilton cycle", got: bad.len() as u64, expected: n as u64 });
    }
    let undirected = h.first().is_some_and(|c| !c.is_directed());
    if h.iter().any(|c| c.is_directed() == undirected) {
        return Err(ConstructError::Internal("extra cycles mix directed and undirected".into()));
    }
    let expected = p.remaining().to_u64().ok_or_else(|| ConstructError::Internal("|A_*| exceeds 64 bits".into()))?;

    let stride = n as usize + 1;
    let mut d_slot = vec![0u32; stride * stride];
    let mut copy = Vec::with_capacity((n * (n - 1)) as usize);
    for t in 1..=n {
        for head in t + 1..=n {
            copy.push(DirectedEdge::new(t, head));
        }
    }
    for t in 1..=n {
        for head in 1..t {
            copy.push(DirectedEdge::new(t, head));
        }
    }
    for (pos, e) in copy.iter().enumerate() {
        d_slot[e.tail as usize * stride + e.head as usize] = pos as u32;
    }
    let pairs = copy.len() / 2;

    let mut elements = Vec::with_capacity(expected as usize);
    for i in 1..=ell {
        for (pos, &edge) in copy.iter().enumerate() {
            let block = if pos < pairs { BBlock::B(i) } else { BBlock::BPrime(i) };
            elements.push(BElement { block, edge, index: elements.len() });
        }
    }
    let mut h_offsets = vec![elements.len()];
    for (j, c) in h.iter().enumerate() {
        let mut edges: Vec<DirectedEdge> = c
            .edges()
            .map(|e| if undirected { DirectedEdge::new(e.unordered().0, e.unordered().1) } else { e })
            .collect();
        edges.sort_unstable();
        for edge in edges {
            elements.push(BElement { block: BBlock::H(j as u32 + 1), edge, index: elements.len() });
        }
        h_offsets.push(elements.len());
    }
    if elements.len() as u64 != expected {
        return Err(ConstructError::SizeMismatch { what: "B", got: elements.len() as u64, expected });
    }
    Ok(BSide { n, ell, undirected, elements, d_slot, h_offsets })
}

/// `A_* = [n]^(k) \ M` indexed densely in colex order: left index `i` is the
/// `i`th colex rank not in M.
#[derive(Debug, Clone)]
pub struct AStar {
    n: u32,
    k: u32,
    m_ranks: Vec<u64>,
    len: u64,
}

impl AStar {
    pub fn new(m: &Family) -> AStar {
        let total = binom(m.n() as u64, m.k() as u64).expect("C(n,k) fits 64 bits under the size cap");
        AStar { n: m.n(), k: m.k(), m_ranks: m.ranks(), len: total - m.len() as u64 }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Colex rank of left vertex `left`.
    pub fn rank_of(&self, left: u64) -> u64 {
        let mut rank = left;
        for &r in &self.m_ranks {
            if r <= rank {
                rank += 1;
            } else {
                break;
            }
        }
        rank
    }

    /// Left index of colex rank `rank`, `None` for members of M.
    pub fn left_of(&self, rank: u64) -> Option<u64> {
        match self.m_ranks.binary_search(&rank) {
            Ok(_) => None,
            Err(below) => Some(rank - below as u64),
        }
    }

    pub fn kset(&self, left: u64) -> KSet {
        colex_unrank(self.rank_of(left), self.k)
    }

    /// Calls `f` with the sorted elements of left vertices `start..end` in
    /// order.
    pub(super) fn visit_range(&self, start: u64, end: u64, mut f: impl FnMut(&[Vertex])) {
        if start >= end {
            return;
        }
        let mut rank = self.rank_of(start);
        let mut cur = vec![0; self.k as usize];
        colex_unrank_into(rank, &mut cur);
        let mut skip = self.m_ranks.partition_point(|&r| r < rank);
        for _ in start..end {
            while skip < self.m_ranks.len() && self.m_ranks[skip] == rank {
                colex_next(&mut cur, self.n);
                rank += 1;
                skip += 1;
            }
            f(&cur);
            colex_next(&mut cur, self.n);
            rank += 1;
        }
    }
}

/// Multiplicity of every vertex pair (by [`pair_rank`]) among the edges of B.
pub(super) fn pair_multiplicity(b: &BSide) -> Vec<u32> {
    let n = b.n as usize;
    let mut cap = vec![0u32; n * (n - 1) / 2];
    for e in &b.elements {
        cap[pair_rank(e.edge.tail, e.edge.head)] += 1;
    }
    cap
}

/// The auxiliary graph with B compressed to vertex pairs: right vertex
/// `pair_rank(x, y)` stands for every element of B on `{x, y}`, with that
/// many units of capacity. Elements on the same pair have identical
/// neighbourhoods, so this has a perfect matching iff the full graph does.
///
/// Left vertices are split into contiguous ranges across `threads` workers;
/// the result is independent of `threads`.
pub fn build_pair_graph(a_star: &AStar, b: &BSide, threads: usize) -> Result<BipartiteGraph, ConstructError> {
    if a_star.len() != b.len() as u64 {
        return Err(ConstructError::SizeMismatch { what: "B versus A_*", got: b.len() as u64, expected: a_star.len() });
    }
    let cap = pair_multiplicity(b);
    let left = a_star.len() as usize;
    let threads = threads.clamp(1, left.max(1));
    let chunk = left.div_ceil(threads);
    let parts: Vec<(Vec<u32>, Vec<u32>)> = thread::scope(|s| {
        let workers: Vec<_> = (0..threads)
            .map(|t| {
                let start = (t * chunk).min(left);
                let end = ((t + 1) * chunk).min(left);
                let cap = &cap;
                s.spawn(move || pair_adjacency(a_star, cap, start as u64, end as u64))
            })
            .collect();
        workers.into_iter().map(|w| w.join().expect("graph worker panicked")).collect()
    });
    let mut offsets = Vec::with_capacity(left + 1);
    offsets.push(0usize);
    let mut targets = Vec::with_capacity(parts.iter().map(|p| p.1.len()).sum());
    for (degrees, part) in parts {
        for d in degrees {
            offsets.push(offsets.last().unwrap() + d as usize);
        }
        targets.extend_from_slice(&part);
    }
    let right = cap.len();
    BipartiteGraph::from_csr(left, right, offsets, targets, Some(cap))
        .map_err(|e| ConstructError::Internal(format!("auxiliary graph: {e}")))
}

/// Degrees and concatenated adjacency of left vertices `start..end`.
fn pair_adjacency(a_star: &AStar, cap: &[u32], start: u64, end: u64) -> (Vec<u32>, Vec<u32>) {
    let k = a_star.k as usize;
    let mut degrees = Vec::with_capacity((end - start) as usize);
    let mut targets = Vec::with_capacity((end - start) as usize * k * (k - 1) / 2);
    a_star.visit_range(start, end, |cur| {
        let before = targets.len();
        // pairs come out in ascending pair_rank: by larger element, then smaller
        for hi in 1..k {
            for lo in 0..hi {
                let pr = pair_rank(cur[lo], cur[hi]);
                if cap[pr] > 0 {
                    targets.push(pr as u32);
                }
            }
        }
        degrees.push((targets.len() - before) as u32);
    });
    (degrees, targets)
}

/// The auxiliary graph exactly as defined: left `A_*` in colex order, right
/// the elements of B by canonical index, `z ~ xy` iff `{x, y} ⊆ z`.
pub fn build_aux_graph(a_star: &AStar, b: &BSide) -> Result<BipartiteGraph, ConstructError> {
    if a_star.len() != b.len() as u64 {
        return Err(ConstructError::SizeMismatch { what: "B versus A_*", got: b.len() as u64, expected: a_star.len() });
    }
    let n = b.n as usize;
    let mut by_pair: Vec<Vec<u32>> = vec![Vec::new(); n * (n - 1) / 2];
    for e in &b.elements {
        by_pair[pair_rank(e.edge.tail, e.edge.head)].push(e.index as u32);
    }
    let adjacency: Vec<Vec<u32>> = (0..a_star.len())
        .map(|left| {
            let z = a_star.kset(left);
            let z = z.elements();
            let mut adj = Vec::new();
            for hi in 1..z.len() {
                for lo in 0..hi {
                    adj.extend_from_slice(&by_pair[pair_rank(z[lo], z[hi])]);
                }
            }
            adj.sort_unstable();
            adj
        })
        .collect();
    BipartiteGraph::from_adjacency(b.len(), &adjacency)
        .map_err(|e| ConstructError::Internal(format!("auxiliary graph: {e}")))
}

/// Expands a perfect matching of the pair graph to one of the full graph:
/// the lefts matched to a pair take that pair's elements of B in ascending
/// order. Returns the left vertex matched to each element of B.
pub fn distribute_matching(r: &MatchingResult, b: &BSide) -> Result<Vec<u32>, ConstructError> {
    let pairs = (b.n * (b.n - 1) / 2) as usize;
    let mut start = vec![0usize; pairs + 1];
    for e in &b.elements {
        start[pair_rank(e.edge.tail, e.edge.head) + 1] += 1;
    }
    for p in 0..pairs {
        start[p + 1] += start[p];
    }
    let mut slots = vec![0u32; b.len()];
    let mut cursor = start.clone();
    for e in &b.elements {
        let p = pair_rank(e.edge.tail, e.edge.head);
        slots[cursor[p]] = e.index as u32;
        cursor[p] += 1;
    }
    cursor.copy_from_slice(&start);
    let mut assignment = vec![u32::MAX; b.len()];
    for (left, matched) in r.pairs.iter().enumerate() {
        let p = matched.ok_or_else(|| ConstructError::Internal(format!("left vertex {left} unmatched")))? as usize;
        if cursor[p] == start[p + 1] {
            return Err(ConstructError::Internal(format!("pair {p} matched beyond its capacity")));
        }
        assignment[slots[cursor[p]] as usize] = left as u32;
        cursor[p] += 1;
    }
    if assignment.contains(&u32::MAX) {
        return Err(ConstructError::Internal("matching leaves elements of B uncovered".into()));
    }
    Ok(assignment)
}

/// Pulls every Hamilton cycle back through the matching: the `t`th edge of
/// the Berge cycle is the k-set matched to the cycle's edge
/// `(v_t, v_{t+1})`. Cycles come out as the `n - 1` cycles of each copy of
/// `DK_n` in turn, then `H_1, ..., H_m`.
pub fn assemble_cycles(
    b: &BSide,
    assignment: &[u32],
    a_star: &AStar,
    dk: Option<&HamDecomposition>,
    h: &[HamCycle],
) -> Result<Vec<BergeCycle>, ConstructError> {
    if assignment.len() != b.len() {
        return Err(ConstructError::SizeMismatch { what: "assignment", got: assignment.len() as u64, expected: b.len() as u64 });
    }
    let mut sets = Vec::with_capacity(a_star.len() as usize);
    a_star.visit_range(0, a_star.len(), |z| sets.push(Some(KSet::from_sorted(z.to_vec()))));
    let mut pull = |cycle: &HamCycle, index: &dyn Fn(DirectedEdge) -> Option<usize>| {
        let mut edges = Vec::with_capacity(cycle.len());
        for e in cycle.edges() {
            let idx = index(e).ok_or_else(|| ConstructError::Internal(format!("edge {e:?} missing from B")))?;
            let left = assignment[idx] as usize;
            let z = sets
                .get_mut(left)
                .and_then(Option::take)
                .ok_or_else(|| ConstructError::Internal(format!("left vertex {left} assigned twice")))?;
            if !z.contains(e.tail) || !z.contains(e.head) {
                return Err(ConstructError::Internal(format!("matched k-set {z} misses edge {e:?}")));
            }
            edges.push(z);
        }
        Ok(BergeCycle { vertices: cycle.order().to_vec(), edges })
    };
    let mut out = Vec::new();
    if b.ell > 0 {
        let dk = dk.ok_or_else(|| ConstructError::Internal("ℓ > 0 needs a decomposition of DK_n".into()))?;
        for i in 1..=b.ell {
            for c in &dk.cycles {
                out.push(pull(c, &|e| b.copy_index(i, e))?);
            }
        }
    }
    for (j, c) in h.iter().enumerate() {
        out.push(pull(c, &|e| b.index_of(BBlock::H(j as u32 + 1), e))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berge_construct::{compute_parameters, required_m_size};
    use crate::combinatorics::{all_ksets, binom_small, colex_initial_segment};
    use crate::ham_decomp::{dk_decompose, select_m_cycles, walecki_decompose, walecki_even_decompose};
    use crate::matching::hopcroft_karp;

    fn setup(n: u32, k: u32) -> (Parameters, Family, Option<HamDecomposition>, Vec<HamCycle>) {
        let r = required_m_size(n, k);
        let m = colex_initial_segment(r, k, n).unwrap();
        let p = compute_parameters(n, k, r).unwrap();
        if k + 2 == n {
            let d = if n % 2 == 1 { walecki_decompose(n) } else { walecki_even_decompose(n) }.unwrap();
            return (p, m, None, d.cycles);
        }
        let dk = dk_decompose(n, 0).unwrap();
        let h = select_m_cycles(&dk, p.m as usize).unwrap();
        (p, m, Some(dk), h)
    }

    #[test]
    fn b_sizes() {
        let (p, _, dk, h) = setup(10, 8);
        assert_eq!(build_b(&p, dk.as_ref(), &h).unwrap().len(), 40);
        let (p, _, dk, h) = setup(21, 5);
        assert_eq!(build_b(&p, dk.as_ref(), &h).unwrap().len(), 20349);
        let mut p = compute_parameters(5, 4, 0).unwrap();
        p.ell = 1u32.into();
        p.m = 0;
        p.total = 20u32.into();
        let b = build_b(&p, Some(&dk_decompose(5, 0).unwrap()), &[]).unwrap();
        assert_eq!(b.len(), 20);
    }

    #[test]
    fn b_split_and_order() {
        let (p, _, dk, h) = setup(11, 4);
        let b = build_b(&p, dk.as_ref(), &h).unwrap();
        let n = 11usize;
        for (pos, e) in b.elements().iter().enumerate() {
            assert_eq!(e.index, pos);
            assert_eq!(b.index_of(e.block, e.edge), Some(pos));
            match e.block {
                BBlock::B(_) => assert!(e.edge.tail < e.edge.head),
                BBlock::BPrime(_) => assert!(e.edge.tail > e.edge.head),
                BBlock::H(_) => {}
            }
        }
        // B(i) contains exactly one of xy, yx
        let first: Vec<_> = b.elements()[..n * (n - 1)].iter().collect();
        for x in 1..=n as u32 {
            for y in x + 1..=n as u32 {
                let in_b = first
                    .iter()
                    .filter(|e| e.block == BBlock::B(1) && e.edge.unordered() == (x, y))
                    .count();
                assert_eq!(in_b, 1);
            }
        }
        for w in b.elements().windows(2) {
            if w[0].block == w[1].block {
                assert!(w[0].edge < w[1].edge);
            }
        }
    }

    #[test]
    fn b_rejects_wrong_cycle_count() {
        let (p, _, dk, h) = setup(12, 4);
        assert_eq!(h.len(), 8);
        assert!(matches!(build_b(&p, dk.as_ref(), &h[1..]), Err(ConstructError::SizeMismatch { .. })));
    }

    #[test]
    fn a_star_indexing() {
        let m = Family::from_ranks(9, 3, vec![0, 5, 6, 40]);
        let a = AStar::new(&m);
        assert_eq!(a.len(), 84 - 4);
        let mut left = 0;
        for rank in 0..84 {
            if [0, 5, 6, 40].contains(&rank) {
                assert_eq!(a.left_of(rank), None);
            } else {
                assert_eq!(a.left_of(rank), Some(left));
                assert_eq!(a.rank_of(left), rank);
                left += 1;
            }
        }
    }

    #[test]
    fn aux_graph_single_edge() {
        // z = {1,2,3} against a B holding only (1,2)
        let m = Family::from_ranks(3, 3, vec![]);
        let a = AStar::new(&m);
        let b = BSide {
            n: 3,
            ell: 0,
            undirected: false,
            elements: vec![BElement { block: BBlock::H(1), edge: DirectedEdge::new(1, 2), index: 0 }],
            d_slot: vec![0; 16],
            h_offsets: vec![0, 1],
        };
        let g = build_aux_graph(&a, &b).unwrap();
        assert_eq!(g.neighbours(0), &[0]);
    }

    #[test]
    fn aux_graph_degrees_n9_k7() {
        let (p, m, dk, h) = setup(9, 7);
        let b = build_b(&p, dk.as_ref(), &h).unwrap();
        let a = AStar::new(&m);
        let g = build_aux_graph(&a, &b).unwrap();
        // brute-force containment count on the right
        let ksets = all_ksets(9, 7);
        for e in b.elements() {
            let deg = ksets.iter().filter(|z| z.contains(e.edge.tail) && z.contains(e.edge.head)).count();
            assert_eq!(deg, binom_small(7, 5) as usize);
            let from_graph = (0..g.left_count()).filter(|&l| g.has_edge(l, e.index as u32)).count();
            assert_eq!(from_graph, deg);
        }
        // odd n: the 4 undirected cycles hit every pair, so left degree is C(7,2)
        for l in 0..g.left_count() {
            assert_eq!(g.neighbours(l).len(), 21);
        }
    }

    #[test]
    fn pair_graph_agrees_with_full_graph() {
        for (n, k) in [(9, 7), (10, 8), (8, 4), (9, 5), (11, 4)] {
            let (p, m, dk, h) = setup(n, k);
            let b = build_b(&p, dk.as_ref(), &h).unwrap();
            let a = AStar::new(&m);
            let full = build_aux_graph(&a, &b).unwrap();
            let compressed = build_pair_graph(&a, &b, 2).unwrap();
            assert_eq!(compressed, build_pair_graph(&a, &b, 1).unwrap());
            assert_eq!(compressed.total_capacity(), b.len() as u64);
            let rf = hopcroft_karp(&full);
            let rc = hopcroft_karp(&compressed);
            assert_eq!(rf.size, rc.size, "({n},{k})");
            // every left degree: pairs inside z times their multiplicity
            for l in 0..full.left_count() {
                let expanded: u32 = compressed.neighbours(l).iter().map(|&r| compressed.capacity(r as usize)).sum();
                assert_eq!(full.neighbours(l).len() as u32, expanded);
            }
        }
    }

    #[test]
    fn distribution_and_assembly() {
        let (p, m, dk, h) = setup(11, 4);
        let b = build_b(&p, dk.as_ref(), &h).unwrap();
        let a = AStar::new(&m);
        let g = build_pair_graph(&a, &b, 1).unwrap();
        let r = hopcroft_karp(&g);
        assert!(r.is_perfect());
        let assignment = distribute_matching(&r, &b).unwrap();
        let mut seen = assignment.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), b.len());
        let cycles = assemble_cycles(&b, &assignment, &a, dk.as_ref(), &h).unwrap();
        assert_eq!(cycles.len() as u64 * 11, a.len());
    }
}
