//! Bipartite maximum matching (Hopcroft–Karp) with Hall-violator
//! certificates.
//!
//! Right vertices may carry a capacity. A right vertex of capacity `c`
//! behaves exactly like `c` twin vertices with identical neighbourhoods,
//! which is how the auxiliary graph of the construction is stored: all
//! copies of the same vertex pair are interchangeable.

use std::collections::VecDeque;

use thiserror::Error;

const NONE: u32 = u32::MAX;
const INF: u32 = u32::MAX;

/// Immutable bipartite graph in compressed sparse row form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    capacity: Option<Vec<u32>>,
}

/// A step near `len / φ` sharing no factor with `len`.
pub(crate) fn coprime_stride(len: usize) -> usize {
    if len <= 1 {
        return 1;
    }
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mut s = ((len as f64 * 0.618_033_988_75) as usize).max(1);
    while gcd(s, len) != 1 {
        s += 1;
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("left vertex {left}: neighbour {right} out of range (right_count = {right_count})")]
    NeighbourOutOfRange { left: usize, right: u32, right_count: usize },
    #[error("left vertex {0}: adjacency not strictly ascending")]
    NotCanonical(usize),
    #[error("capacity vector has length {got}, expected {expected}")]
    CapacityLength { got: usize, expected: usize },
    #[error("offsets malformed")]
    BadOffsets,
}

impl BipartiteGraph {
    pub fn from_adjacency(right_count: usize, adjacency: &[Vec<u32>]) -> Result<Self, GraphError> {
        let mut offsets = Vec::with_capacity(adjacency.len() + 1);
        let mut targets = Vec::with_capacity(adjacency.iter().map(Vec::len).sum());
        offsets.push(0);
        for list in adjacency {
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Self::from_csr(adjacency.len(), right_count, offsets, targets, None)
    }

    /// Validates canonical form: neighbours in range and strictly ascending.
    pub fn from_csr(
        left_count: usize,
        right_count: usize,
        offsets: Vec<usize>,
        targets: Vec<u32>,
        capacity: Option<Vec<u32>>,
    ) -> Result<Self, GraphError> {
        if offsets.len() != left_count + 1
            || offsets[0] != 0
            || *offsets.last().unwrap() != targets.len()
            || offsets.windows(2).any(|w| w[0] > w[1])
        {
            return Err(GraphError::BadOffsets);
        }
        if let Some(cap) = &capacity {
            if cap.len() != right_count {
                return Err(GraphError::CapacityLength { got: cap.len(), expected: right_count });
            }
        }
        for left in 0..left_count {
            let adj = &targets[offsets[left]..offsets[left + 1]];
            if let Some(&right) = adj.iter().find(|&&r| r as usize >= right_count) {
                return Err(GraphError::NeighbourOutOfRange { left, right, right_count });
            }
            if adj.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GraphError::NotCanonical(left));
            }
        }
        Ok(BipartiteGraph { left_count, right_count, offsets, targets, capacity })
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn neighbours(&self, left: usize) -> &[u32] {
        &self.targets[self.offsets[left]..self.offsets[left + 1]]
    }

    #[inline]
    pub fn capacity(&self, right: usize) -> u32 {
        self.capacity.as_ref().map_or(1, |c| c[right])
    }

    /// Sum of right capacities (the right class size once twins are expanded).
    pub fn total_capacity(&self) -> u64 {
        match &self.capacity {
            Some(c) => c.iter().map(|&x| x as u64).sum(),
            None => self.right_count as u64,
        }
    }

    pub fn has_edge(&self, left: usize, right: u32) -> bool {
        left < self.left_count && self.neighbours(left).binary_search(&right).is_ok()
    }

    /// Approximate heap footprint in bytes.
    pub fn memory_bytes(&self) -> usize {
        self.offsets.len() * std::mem::size_of::<usize>()
            + self.targets.len() * 4
            + self.capacity.as_ref().map_or(0, |c| c.len() * 4)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    /// `pairs[left]` is the matched right vertex, if any.
    pub pairs: Vec<Option<u32>>,
    pub size: usize,
    /// Left vertices reachable from unmatched left vertices by alternating
    /// paths; present iff the matching does not saturate the left side.
    pub violator: Option<Vec<u32>>,
}

impl MatchingResult {
    pub fn is_perfect(&self) -> bool {
        self.violator.is_none()
    }
}

/// Maximum matching saturating as much of the left side as possible.
///
/// Deterministic: adjacency lists are scanned in ascending order and
/// vertices in a fixed order.
pub fn hopcroft_karp(g: &BipartiteGraph) -> MatchingResult {
    let mut state = State::new(g);
    state.greedy();
    while state.bfs() {
        if !state.dfs_phase() {
            break;
        }
    }
    state.finish()
}

struct State<'a> {
    g: &'a BipartiteGraph,
    match_left: Vec<u32>,
    /// Lefts currently assigned to each right vertex.
    holders: Vec<Vec<u32>>,
    dist: Vec<u32>,
    next_edge: Vec<usize>,
    /// Layer of the left that first reached each right vertex in the BFS;
    /// only lefts of that layer can continue a shortest path through it.
    right_dist: Vec<u32>,
    /// Per phase, holders before this index are known not to lie on the
    /// next layer.
    holder_cursor: Vec<usize>,
    matched: usize,
}

impl<'a> State<'a> {
    fn new(g: &'a BipartiteGraph) -> Self {
        State {
            g,
            match_left: vec![NONE; g.left_count],
            holders: vec![Vec::new(); g.right_count],
            dist: vec![INF; g.left_count],
            next_edge: vec![0; g.left_count],
            right_dist: vec![INF; g.right_count],
            holder_cursor: vec![0; g.right_count],
            matched: 0,
        }
    }

    #[inline]
    fn is_free(&self, r: u32) -> bool {
        (self.holders[r as usize].len() as u32) < self.g.capacity(r as usize)
    }

    /// Visits lefts with a coprime stride rather than in order, so that runs
    /// of similar neighbourhoods do not exhaust the same right vertices.
    fn greedy(&mut self) {
        let n = self.g.left_count;
        let step = coprime_stride(n);
        let mut u = 0;
        for _ in 0..n {
            u = (u + step) % n;
            if let Some(&r) = self.g.neighbours(u).iter().find(|&&r| self.is_free(r)) {
                self.match_left[u] = r;
                self.holders[r as usize].push(u as u32);
                self.matched += 1;
            }
        }
    }

    /// Layers lefts by alternating distance from the free lefts. Returns
    /// whether some free right vertex is reachable.
    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.g.left_count {
            if self.match_left[u] == NONE {
                self.dist[u] = 0;
                queue.push_back(u as u32);
            } else {
                self.dist[u] = INF;
            }
        }
        self.right_dist.iter_mut().for_each(|s| *s = INF);
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            let u = u as usize;
            let d = self.dist[u];
            for &r in self.g.neighbours(u) {
                if r == self.match_left[u] {
                    continue;
                }
                if self.is_free(r) {
                    found = true;
                    continue;
                }
                if self.right_dist[r as usize] != INF {
                    continue;
                }
                self.right_dist[r as usize] = d;
                for &w in &self.holders[r as usize] {
                    if self.dist[w as usize] == INF {
                        self.dist[w as usize] = d + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        found
    }

    /// Searches vertex-disjoint augmenting paths along the BFS layers.
    /// Returns whether at least one augmentation happened.
    fn dfs_phase(&mut self) -> bool {
        for u in 0..self.g.left_count {
            self.next_edge[u] = self.g.offsets[u];
        }
        self.holder_cursor.iter_mut().for_each(|c| *c = 0);
        let mut progress = false;
        let mut path: Vec<(u32, u32, u32)> = Vec::new();
        for root in 0..self.g.left_count {
            if self.match_left[root] == NONE && self.dist[root] == 0 && self.augment_from(root as u32, &mut path) {
                self.matched += 1;
                progress = true;
            }
        }
        progress
    }

    /// Iterative layered DFS. `path` holds (left, right, slot) steps: `left`
    /// will take `slot` of `right`, displacing the next left on the path.
    fn augment_from(&mut self, root: u32, path: &mut Vec<(u32, u32, u32)>) -> bool {
        path.clear();
        let mut cur = root;
        loop {
            let u = cur as usize;
            let d = self.dist[u];
            let end = self.g.offsets[u + 1];
            let mut descended = false;
            while self.next_edge[u] < end {
                let r = self.g.targets[self.next_edge[u]];
                if r == self.match_left[u] {
                    self.next_edge[u] += 1;
                    continue;
                }
                if self.is_free(r) {
                    self.holders[r as usize].push(cur);
                    self.match_left[u] = r;
                    while let Some((left, right, slot)) = path.pop() {
                        self.holders[right as usize][slot as usize] = left;
                        self.match_left[left as usize] = right;
                    }
                    self.dist[root as usize] = INF;
                    return true;
                }
                if self.right_dist[r as usize] != d {
                    self.next_edge[u] += 1;
                    continue;
                }
                let holders = &self.holders[r as usize];
                let mut slot = self.holder_cursor[r as usize];
                while slot < holders.len() && self.dist[holders[slot] as usize] != d + 1 {
                    slot += 1;
                }
                self.holder_cursor[r as usize] = slot;
                if slot < holders.len() {
                    path.push((cur, r, slot as u32));
                    cur = holders[slot];
                    descended = true;
                    break;
                }
                self.next_edge[u] += 1;
            }
            if descended {
                continue;
            }
            // dead end: retire this left for the rest of the phase
            self.dist[u] = INF;
            match path.pop() {
                None => return false,
                Some((parent, _, _)) => {
                    cur = parent;
                }
            }
        }
    }

    fn finish(self) -> MatchingResult {
        let pairs: Vec<Option<u32>> = self.match_left.iter().map(|&r| (r != NONE).then_some(r)).collect();
        let violator = (self.matched < self.g.left_count).then(|| alternating_reach(self.g, &self.match_left, &self.holders));
        MatchingResult { pairs, size: self.matched, violator }
    }
}

/// Lefts reachable from free lefts via (any edge, matched edge) steps.
fn alternating_reach(g: &BipartiteGraph, match_left: &[u32], holders: &[Vec<u32>]) -> Vec<u32> {
    let mut seen_left = vec![false; g.left_count];
    let mut seen_right = vec![false; g.right_count];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for u in 0..g.left_count {
        if match_left[u] == NONE {
            seen_left[u] = true;
            queue.push_back(u as u32);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &r in g.neighbours(u as usize) {
            if std::mem::replace(&mut seen_right[r as usize], true) {
                continue;
            }
            for &w in &holders[r as usize] {
                if !std::mem::replace(&mut seen_left[w as usize], true) {
                    queue.push_back(w);
                }
            }
        }
    }
    (0..g.left_count as u32).filter(|&u| seen_left[u as usize]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingViolation {
    #[error("pairs has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("pair ({left}, {right}) is not an edge")]
    NotAnEdge { left: usize, right: u32 },
    #[error("right vertex {right} used {used} times (capacity {capacity})")]
    OverCapacity { right: u32, used: u32, capacity: u32 },
    #[error("reported size {reported} but {actual} pairs present")]
    SizeMismatch { reported: usize, actual: usize },
    #[error("violator presence inconsistent with matching size")]
    ViolatorPresence,
    #[error("violator is not a Hall violation: |S| = {set}, capacity of N(S) = {neighbourhood}")]
    NotAViolation { set: u64, neighbourhood: u64 },
    #[error("violator vertex {0} out of range or repeated")]
    BadViolatorVertex(u32),
}

/// Re-checks a matching result from scratch.
pub fn verify_matching(g: &BipartiteGraph, r: &MatchingResult) -> Result<(), MatchingViolation> {
    if r.pairs.len() != g.left_count {
        return Err(MatchingViolation::Length { got: r.pairs.len(), expected: g.left_count });
    }
    let mut used = vec![0u32; g.right_count];
    let mut actual = 0;
    for (left, p) in r.pairs.iter().enumerate() {
        if let Some(right) = *p {
            if !g.has_edge(left, right) {
                return Err(MatchingViolation::NotAnEdge { left, right });
            }
            used[right as usize] += 1;
            actual += 1;
        }
    }
    for (right, &u) in used.iter().enumerate() {
        let capacity = g.capacity(right);
        if u > capacity {
            return Err(MatchingViolation::OverCapacity { right: right as u32, used: u, capacity });
        }
    }
    if actual != r.size {
        return Err(MatchingViolation::SizeMismatch { reported: r.size, actual });
    }
    if r.violator.is_some() != (r.size < g.left_count) {
        return Err(MatchingViolation::ViolatorPresence);
    }
    if let Some(s) = &r.violator {
        let (set, neighbourhood) = hall_deficiency(g, s)?;
        if neighbourhood >= set {
            return Err(MatchingViolation::NotAViolation { set, neighbourhood });
        }
    }
    Ok(())
}

/// `(|S|, capacity of N(S))` computed by direct scan.
fn hall_deficiency(g: &BipartiteGraph, s: &[u32]) -> Result<(u64, u64), MatchingViolation> {
    let mut in_set = vec![false; g.left_count];
    for &u in s {
        if u as usize >= g.left_count || std::mem::replace(&mut in_set[u as usize], true) {
            return Err(MatchingViolation::BadViolatorVertex(u));
        }
    }
    let mut hit = vec![false; g.right_count];
    let mut cap = 0u64;
    for &u in s {
        for &r in g.neighbours(u as usize) {
            if !std::mem::replace(&mut hit[r as usize], true) {
                cap += g.capacity(r as usize) as u64;
            }
        }
    }
    Ok((s.len() as u64, cap))
}
