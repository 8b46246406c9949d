//! Hamilton decompositions of `K_n` (n odd), `K_n` minus a perfect matching
//! (n even) and of the complete digraph `DK_n` (n not 4 or 6).

mod dk;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::combinatorics::Vertex;

pub use dk::{
    dk_decompose, dk_decompose_cached, dk_decompose_with, exhaustive_dk_search, prove_impossible_small,
    DkOptions, ExhaustiveOutcome,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamError {
    #[error("n = {0} must be odd and at least 3")]
    NeedOdd(u32),
    #[error("n = {0} must be even and at least 4")]
    NeedEven(u32),
    #[error("n = {0} out of range: {1}")]
    OutOfRange(u32, &'static str),
    #[error("DK_{0} has no Hamilton decomposition (Tillson: n = 4 and n = 6 are the only exceptions)")]
    ImpossibleByTillson(u32),
    #[error("search for a Hamilton decomposition of DK_{n} exhausted {restarts} restarts (longest partial path {longest_path} of {})", n - 1)]
    SearchExhausted { n: u32, restarts: u32, longest_path: u32 },
    #[error("requested {requested} cycles but only {available} available")]
    TooManyCycles { requested: usize, available: usize },
    #[error("exhaustive search unexpectedly found a decomposition of DK_{0}")]
    UnexpectedDecomposition(u32),
    #[error("decomposition file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("decomposition failed verification: {0}")]
    Invalid(#[from] HamViolation),
}

/// A directed edge `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEdge {
    pub tail: Vertex,
    pub head: Vertex,
}

impl DirectedEdge {
    pub fn new(tail: Vertex, head: Vertex) -> Self {
        debug_assert_ne!(tail, head);
        DirectedEdge { tail, head }
    }

    pub fn reversed(self) -> Self {
        DirectedEdge { tail: self.head, head: self.tail }
    }

    /// The underlying unordered pair as `(min, max)`.
    pub fn unordered(self) -> (Vertex, Vertex) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }
}

/// A Hamilton cycle as a cyclic vertex order, normalized to start at
/// vertex 1. An undirected cycle is additionally oriented so that its
/// second vertex is the smaller neighbour of 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HamCycle {
    order: Vec<Vertex>,
    directed: bool,
}

impl HamCycle {
    pub fn directed(order: Vec<Vertex>) -> Self {
        HamCycle { order: rotate_to_one(order), directed: true }
    }

    pub fn undirected(order: Vec<Vertex>) -> Self {
        let mut order = rotate_to_one(order);
        if order.len() > 2 && order[order.len() - 1] < order[1] {
            order[1..].reverse();
        }
        HamCycle { order, directed: false }
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Consecutive pairs `(v_i, v_{i+1})`, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = DirectedEdge> + '_ {
        let n = self.order.len();
        (0..n).map(move |i| DirectedEdge { tail: self.order[i], head: self.order[(i + 1) % n] })
    }

    /// The same cycle traversed backwards (directed).
    pub fn reversed(&self) -> HamCycle {
        let mut order = self.order.clone();
        order[1..].reverse();
        HamCycle { order, directed: self.directed }
    }
}

fn rotate_to_one(mut order: Vec<Vertex>) -> Vec<Vertex> {
    if let Some(pos) = order.iter().position(|&v| v == 1) {
        order.rotate_left(pos);
    }
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamKind {
    CompleteGraphOdd,
    CompleteGraphEvenMinusMatching,
    CompleteDigraph,
}

impl HamKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HamKind::CompleteGraphOdd => "complete_graph_odd",
            HamKind::CompleteGraphEvenMinusMatching => "complete_graph_even_minus_matching",
            HamKind::CompleteDigraph => "complete_digraph",
        }
    }

    pub fn is_directed(self) -> bool {
        self == HamKind::CompleteDigraph
    }

    /// Number of cycles a decomposition of this kind has on `n` vertices.
    pub fn cycle_count(self, n: u32) -> usize {
        match self {
            HamKind::CompleteGraphOdd => (n as usize - 1) / 2,
            HamKind::CompleteGraphEvenMinusMatching => n as usize / 2 - 1,
            HamKind::CompleteDigraph => n as usize - 1,
        }
    }
}

impl fmt::Display for HamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for HamKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "complete_graph_odd" => Ok(HamKind::CompleteGraphOdd),
            "complete_graph_even_minus_matching" => Ok(HamKind::CompleteGraphEvenMinusMatching),
            "complete_digraph" => Ok(HamKind::CompleteDigraph),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamDecomposition {
    pub n: u32,
    pub kind: HamKind,
    pub cycles: Vec<HamCycle>,
    /// Leftover perfect matching, as `(min, max)` pairs; empty unless the
    /// kind is even-minus-matching.
    pub leftover: Vec<(Vertex, Vertex)>,
    pub seed: u64,
}

impl HamDecomposition {
    /// Sorts cycles by their normalized vertex sequence.
    pub fn canonicalize(&mut self) {
        self.cycles.sort();
        self.leftover.sort();
    }

    /// HAMDEC v1 text.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("HAMDEC v1 n={} kind={} seed={}\n", self.n, self.kind, self.seed);
        for c in &self.cycles {
            out.push('H');
            for v in c.order() {
                out.push(' ');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        for (a, b) in &self.leftover {
            out.push_str(&format!("L {a}-{b}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, HamError> {
        let err = |line: usize, msg: String| HamError::Parse { line, msg };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
        let mut fields = header.split(' ');
        if fields.next() != Some("HAMDEC") || fields.next() != Some("v1") {
            return Err(err(1, "missing 'HAMDEC v1' header".into()));
        }
        let mut n = None;
        let mut kind = None;
        let mut seed = None;
        for f in fields {
            let (key, value) = f.split_once('=').ok_or_else(|| err(1, format!("bad field {f:?}")))?;
            match key {
                "n" => n = value.parse::<u32>().ok(),
                "kind" => kind = value.parse::<HamKind>().ok(),
                "seed" => seed = value.parse::<u64>().ok(),
                _ => return Err(err(1, format!("unknown field {key:?}"))),
            }
        }
        let (n, kind, seed) = match (n, kind, seed) {
            (Some(n), Some(k), Some(s)) => (n, k, s),
            _ => return Err(err(1, "header needs n, kind and seed".into())),
        };
        let mut cycles = Vec::new();
        let mut leftover = Vec::new();
        for (idx, line) in lines {
            let line_no = idx + 1;
            let mut tokens = line.split(' ');
            match tokens.next() {
                Some("H") => {
                    let order = tokens
                        .map(|t| t.parse::<Vertex>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| err(line_no, "bad vertex".into()))?;
                    cycles.push(if kind.is_directed() { HamCycle::directed(order) } else { HamCycle::undirected(order) });
                }
                Some("L") => {
                    let pair = tokens.next().ok_or_else(|| err(line_no, "missing edge".into()))?;
                    let (a, b) = pair
                        .split_once('-')
                        .and_then(|(a, b)| Some((a.parse::<Vertex>().ok()?, b.parse::<Vertex>().ok()?)))
                        .ok_or_else(|| err(line_no, format!("bad edge {pair:?}")))?;
                    leftover.push((a.min(b), a.max(b)));
                }
                Some("") if line.is_empty() => {}
                _ => return Err(err(line_no, format!("unexpected line {line:?}"))),
            }
        }
        Ok(HamDecomposition { n, kind, cycles, leftover, seed })
    }
}

/// Walecki zig-zag Hamilton path on `Z_{2m}` starting at `start`:
/// `start, start+1, start-1, start+2, ..., start+m`.
fn zigzag(start: u32, modulus: u32) -> Vec<u32> {
    let m = modulus as i64;
    (0..modulus as i64)
        .map(|t| {
            let offset = if t % 2 == 1 { (t + 1) / 2 } else { -(t / 2) };
            (start as i64 + offset).rem_euclid(m) as u32
        })
        .collect()
}

/// `(n - 1) / 2` edge-disjoint Hamilton cycles covering `K_n`, n odd.
///
/// Vertex `n` plays the role of the centre; the rest are `Z_{n-1}` shifted to
/// `1..n-1`, and cycle `i` is the centre followed by the zig-zag path from `i`.
pub fn walecki_decompose(n: u32) -> Result<HamDecomposition, HamError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(HamError::NeedOdd(n));
    }
    let modulus = n - 1;
    let cycles = (0..modulus / 2)
        .map(|i| {
            let mut order = vec![n];
            order.extend(zigzag(i, modulus).into_iter().map(|v| v + 1));
            HamCycle::undirected(order)
        })
        .collect();
    let mut d = HamDecomposition { n, kind: HamKind::CompleteGraphOdd, cycles, leftover: Vec::new(), seed: 0 };
    d.canonicalize();
    Ok(d)
}

/// `n/2 - 1` edge-disjoint Hamilton cycles plus a perfect matching
/// partitioning `K_n`, n even.
///
/// Uses `Z_{n-2}` plus two extra vertices `a = n-1`, `b = n`. Each zig-zag
/// path has exactly one edge of length `(n-2)/2` at the same position; the
/// path is cut there and `a`, `b` spliced in, so the cut edges together with
/// `ab` form the leftover matching.
pub fn walecki_even_decompose(n: u32) -> Result<HamDecomposition, HamError> {
    if n < 4 || n % 2 == 1 {
        return Err(HamError::NeedEven(n));
    }
    let modulus = n - 2;
    let half = (modulus / 2) as usize;
    let (a, b) = (n - 1, n);
    let mut cycles = Vec::with_capacity(half);
    let mut leftover = vec![(a, b)];
    for i in 0..modulus / 2 {
        let path: Vec<Vertex> = zigzag(i, modulus).into_iter().map(|v| v + 1).collect();
        let (x, y) = path.split_at(half);
        leftover.push((x[half - 1].min(y[0]), x[half - 1].max(y[0])));
        let mut order = Vec::with_capacity(n as usize);
        order.push(a);
        order.extend_from_slice(x);
        order.push(b);
        order.extend_from_slice(y);
        cycles.push(HamCycle::undirected(order));
    }
    let mut d = HamDecomposition { n, kind: HamKind::CompleteGraphEvenMinusMatching, cycles, leftover, seed: 0 };
    d.canonicalize();
    Ok(d)
}

/// First `m` cycles of `d` in canonical order.
pub fn select_m_cycles(d: &HamDecomposition, m: usize) -> Result<Vec<HamCycle>, HamError> {
    if m > d.cycles.len() {
        return Err(HamError::TooManyCycles { requested: m, available: d.cycles.len() });
    }
    let mut sorted = d.cycles.clone();
    sorted.sort();
    sorted.truncate(m);
    Ok(sorted)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HamViolation {
    #[error("cycle {index} is not a permutation of 1..={n}")]
    NotPermutation { index: usize, n: u32 },
    #[error("cycle {index} orientation flag does not match kind {kind}")]
    WrongOrientation { index: usize, kind: HamKind },
    #[error("edge {tail}->{head} used twice (cycle {index})")]
    DuplicateEdge { index: usize, tail: Vertex, head: Vertex },
    #[error("edge {tail}->{head} not covered")]
    Uncovered { tail: Vertex, head: Vertex },
    #[error("leftover edge {0}-{1} invalid or overlapping")]
    BadLeftover(Vertex, Vertex),
    #[error("leftover is not a perfect matching")]
    LeftoverNotPerfect,
    #[error("expected {expected} cycles, found {found}")]
    CycleCount { expected: usize, found: usize },
    #[error("n = {0} invalid for this kind")]
    BadN(u32),
}

/// Checks cycle shape, pairwise edge-disjointness, exact cover of the host
/// graph and the cycle count for the kind.
pub fn verify_ham_decomposition(d: &HamDecomposition) -> Result<(), HamViolation> {
    let n = d.n;
    let valid_n = match d.kind {
        HamKind::CompleteGraphOdd => n >= 3 && n % 2 == 1,
        HamKind::CompleteGraphEvenMinusMatching => n >= 4 && n.is_multiple_of(2),
        HamKind::CompleteDigraph => n >= 2,
    };
    if !valid_n {
        return Err(HamViolation::BadN(n));
    }
    let expected = d.kind.cycle_count(n);
    if d.cycles.len() != expected {
        return Err(HamViolation::CycleCount { expected, found: d.cycles.len() });
    }
    let size = n as usize + 1;
    let mut used = vec![false; size * size];
    let directed = d.kind.is_directed();
    for (index, c) in d.cycles.iter().enumerate() {
        let mut seen = vec![false; size];
        if c.len() != n as usize
            || c.order().iter().any(|&v| v == 0 || v > n || std::mem::replace(&mut seen[v as usize], true))
        {
            return Err(HamViolation::NotPermutation { index, n });
        }
        if c.is_directed() != directed {
            return Err(HamViolation::WrongOrientation { index, kind: d.kind });
        }
        for e in c.edges() {
            let (t, h) = if directed { (e.tail, e.head) } else { e.unordered() };
            if std::mem::replace(&mut used[t as usize * size + h as usize], true) {
                return Err(HamViolation::DuplicateEdge { index, tail: t, head: h });
            }
        }
    }
    if d.kind == HamKind::CompleteGraphEvenMinusMatching {
        let mut matched = vec![false; size];
        for &(a, b) in &d.leftover {
            let (a, b) = (a.min(b), a.max(b));
            if a == 0 || b > n || a == b || matched[a as usize] || matched[b as usize] || used[a as usize * size + b as usize] {
                return Err(HamViolation::BadLeftover(a, b));
            }
            matched[a as usize] = true;
            matched[b as usize] = true;
            used[a as usize * size + b as usize] = true;
        }
        if d.leftover.len() != n as usize / 2 {
            return Err(HamViolation::LeftoverNotPerfect);
        }
    } else if let Some(&(a, b)) = d.leftover.first() {
        return Err(HamViolation::BadLeftover(a, b));
    }
    for t in 1..=n {
        for h in 1..=n {
            let wanted = if directed { t != h } else { t < h };
            if wanted && !used[t as usize * size + h as usize] {
                return Err(HamViolation::Uncovered { tail: t, head: h });
            }
        }
    }
    Ok(())
}
