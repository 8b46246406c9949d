//! Certificate checking for HBD and HAMDEC files.
//!
//! Nothing here calls into the constructor, the Hamilton decomposition code
//! or the matching engine: ranks, binomials and coverage are recomputed
//! locally, so a bug shared with the construction cannot hide itself.

use std::str::FromStr;

use thiserror::Error;

use crate::berge_construct::{BergeCycle, Decomposition, ProofCase};
use crate::combinatorics::{KSet, Vertex};
use crate::matching::BipartiteGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleViolation {
    #[error("has {vertices} vertices and {edges} edges, expected {n} of each")]
    Length { vertices: usize, edges: usize, n: u32 },
    #[error("vertex {vertex} at position {position} is out of range or repeated")]
    NotPermutation { position: usize, vertex: Vertex },
    #[error("edge {set} at position {position} is not a {k}-subset of [{n}]")]
    BadEdge { position: usize, set: String, n: u32, k: u32 },
    #[error("duplicate edge at positions ({first},{second})")]
    DuplicateEdge { first: usize, second: usize },
    #[error("containment at i={position}: edge misses v_i or v_(i+1)")]
    Containment { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("need 3 <= k < n (got n = {n}, k = {k})")]
    Shape { n: u32, k: u32 },
    #[error("C({n},{k}) is too large to check")]
    TooLarge { n: u32, k: u32 },
    #[error("case marker {declared} does not match (n, k); expected {expected}")]
    CaseMismatch { declared: ProofCase, expected: ProofCase },
    #[error("|M| = {size} must be less than n = {n}")]
    MTooLarge { size: usize, n: u32 },
    #[error("M member {set} is not a {k}-subset of [{n}]")]
    MMember { set: String, n: u32, k: u32 },
    #[error("M contains {set} twice")]
    MDuplicate { set: String },
    #[error("M is not in colex order at {set}")]
    MOrder { set: String },
    #[error("n does not divide C(n,k) - |M| = {remaining}")]
    Divisibility { remaining: u64 },
    #[error("header {field}={declared} but the body has {actual}")]
    HeaderMismatch { field: &'static str, declared: usize, actual: usize },
    #[error("{got} cycles, expected {expected}")]
    CycleCount { got: usize, expected: u64 },
    #[error("cycle {index}: {violation}")]
    Cycle { index: usize, violation: CycleViolation },
    #[error("coverage mismatch: {set} used by a cycle but belongs to M")]
    EdgeInM { set: String },
    #[error("coverage mismatch: {set} used twice")]
    EdgeReused { set: String },
    #[error("coverage mismatch: {set} not covered")]
    Missing { set: String },
}

/// Pascal triangle with `u64` entries, `None` past overflow.
struct Binomials {
    rows: Vec<Vec<Option<u64>>>,
}

impl Binomials {
    fn new(n: u32, k: u32) -> Binomials {
        let mut rows: Vec<Vec<Option<u64>>> = Vec::with_capacity(n as usize + 1);
        for a in 0..=n as usize {
            let mut row = vec![Some(0u64); k as usize + 2];
            row[0] = Some(1);
            if a > 0 {
                for b in 1..row.len() {
                    let prev = &rows[a - 1];
                    row[b] = match (prev[b - 1], prev[b]) {
                        (Some(x), Some(y)) => x.checked_add(y),
                        _ => None,
                    };
                }
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    fn get(&self, a: u32, b: u32) -> Option<u64> {
        self.rows[a as usize][b as usize]
    }

    /// `sum C(z_i - 1, i)` over 1-based positions `i`.
    fn rank(&self, set: &[Vertex]) -> u64 {
        set.iter().enumerate().map(|(i, &z)| self.get(z - 1, i as u32 + 1).unwrap_or(u64::MAX)).sum()
    }

    fn unrank(&self, mut rank: u64, n: u32, k: u32) -> Vec<Vertex> {
        let mut out = vec![0; k as usize];
        let mut top = n;
        for i in (1..=k).rev() {
            let mut z = top;
            while self.get(z - 1, i).unwrap_or(u64::MAX) > rank {
                z -= 1;
            }
            rank -= self.get(z - 1, i).unwrap();
            out[i as usize - 1] = z;
            top = z - 1;
        }
        out
    }
}

fn is_ksubset(set: &KSet, n: u32, k: u32) -> bool {
    let e = set.elements();
    e.len() == k as usize && e.windows(2).all(|w| w[0] < w[1]) && e.first().is_some_and(|&v| v >= 1) && e.last().is_some_and(|&v| v <= n)
}

fn colex_before(a: &KSet, b: &KSet) -> bool {
    a.elements().iter().rev().lt(b.elements().iter().rev())
}

/// Checks one Berge cycle: `v` is a permutation of `[n]`, every `e_i` is a
/// k-subset of `[n]`, edges are pairwise distinct and `{v_i, v_{i+1}} ⊆ e_i`.
pub fn verify_berge_cycle(c: &BergeCycle, n: u32, k: u32) -> Result<(), CycleViolation> {
    let len = n as usize;
    if c.vertices.len() != len || c.edges.len() != len {
        return Err(CycleViolation::Length { vertices: c.vertices.len(), edges: c.edges.len(), n });
    }
    let mut seen = vec![false; len + 1];
    for (i, &v) in c.vertices.iter().enumerate() {
        if v == 0 || v > n || std::mem::replace(&mut seen[v as usize], true) {
            return Err(CycleViolation::NotPermutation { position: i + 1, vertex: v });
        }
    }
    for (i, e) in c.edges.iter().enumerate() {
        if !is_ksubset(e, n, k) {
            return Err(CycleViolation::BadEdge { position: i + 1, set: e.to_string(), n, k });
        }
    }
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| c.edges[a].elements().cmp(c.edges[b].elements()).then(a.cmp(&b)));
    if let Some(w) = order.windows(2).find(|w| c.edges[w[0]] == c.edges[w[1]]) {
        return Err(CycleViolation::DuplicateEdge { first: w[0] + 1, second: w[1] + 1 });
    }
    for i in 0..len {
        let e = &c.edges[i];
        let (a, b) = (c.vertices[i], c.vertices[(i + 1) % len]);
        if e.elements().binary_search(&a).is_err() || e.elements().binary_search(&b).is_err() {
            return Err(CycleViolation::Containment { position: i + 1 });
        }
    }
    Ok(())
}

/// Re-validates a whole decomposition; cycle order does not matter.
pub fn verify_decomposition(d: &Decomposition) -> Result<(), VerifyError> {
    let (n, k) = (d.n, d.k);
    if k < 3 || k >= n {
        return Err(VerifyError::Shape { n, k });
    }
    if d.m_sets.len() >= n as usize {
        return Err(VerifyError::MTooLarge { size: d.m_sets.len(), n });
    }
    for s in &d.m_sets {
        if !is_ksubset(s, n, k) {
            return Err(VerifyError::MMember { set: s.to_string(), n, k });
        }
    }
    for w in d.m_sets.windows(2) {
        if w[0] == w[1] {
            return Err(VerifyError::MDuplicate { set: w[1].to_string() });
        }
        if !colex_before(&w[0], &w[1]) {
            return Err(VerifyError::MOrder { set: w[1].to_string() });
        }
    }
    // k = 3 falls under case 2 only when M is empty or a perfect matching
    let mut expected_case = ProofCase::of(n, k);
    if expected_case == ProofCase::Triples && !d.m_sets.is_empty() {
        let mut seen = vec![false; n as usize + 1];
        let disjoint = d.m_sets.iter().flat_map(|s| s.elements()).all(|&v| !std::mem::replace(&mut seen[v as usize], true));
        if !disjoint || d.m_sets.len() * 3 != n as usize {
            expected_case = ProofCase::General;
        }
    }
    if d.case != expected_case {
        return Err(VerifyError::CaseMismatch { declared: d.case, expected: expected_case });
    }
    let table = Binomials::new(n, k);
    let total = table.get(n, k).ok_or(VerifyError::TooLarge { n, k })?;
    let remaining = total - d.m_sets.len() as u64;
    if !remaining.is_multiple_of(n as u64) {
        return Err(VerifyError::Divisibility { remaining });
    }
    let expected = remaining / n as u64;
    if d.cycles.len() as u64 != expected {
        return Err(VerifyError::CycleCount { got: d.cycles.len(), expected });
    }
    for (index, c) in d.cycles.iter().enumerate() {
        verify_berge_cycle(c, n, k).map_err(|violation| VerifyError::Cycle { index: index + 1, violation })?;
    }

    let mut used: Vec<u64> = d.cycles.iter().flat_map(|c| c.edges.iter().map(|e| table.rank(e.elements()))).collect();
    used.sort_unstable();
    let removed: Vec<u64> = d.m_sets.iter().map(|s| table.rank(s.elements())).collect();
    let show = |r: u64| KSet::from_sorted(table.unrank(r, n, k)).to_string();
    if let Some(w) = used.windows(2).find(|w| w[0] == w[1]) {
        return Err(VerifyError::EdgeReused { set: show(w[0]) });
    }
    if let Some(&r) = removed.iter().find(|r| used.binary_search(r).is_ok()) {
        return Err(VerifyError::EdgeInM { set: show(r) });
    }
    // used ∪ removed has exactly `total` distinct ranks below `total`, so it
    // is all of [n]^(k)
    let (mut u, mut m) = (0, 0);
    for r in 0..total {
        if u < used.len() && used[u] == r {
            u += 1;
        } else if m < removed.len() && removed[m] == r {
            m += 1;
        } else {
            return Err(VerifyError::Missing { set: show(r) });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] VerifyError),
    #[error("{0}")]
    InvalidHamilton(String),
}

impl CertificateError {
    pub fn is_parse(&self) -> bool {
        matches!(self, CertificateError::Parse { .. })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> CertificateError {
    CertificateError::Parse { line, msg: msg.into() }
}

/// Header fields as written, which may disagree with the body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HbdHeader {
    pub n: u32,
    pub k: u32,
    pub msize: usize,
    pub cycles: usize,
    pub seed: u64,
    pub case: ProofCase,
}

/// Parses HBD v1 without judging its contents.
pub fn parse_hbd(text: &str) -> Result<(HbdHeader, Decomposition), CertificateError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    match lines.next() {
        Some((_, "HBD v1")) => {}
        Some(_) => return Err(parse_err(1, "missing 'HBD v1' magic line")),
        None => return Err(parse_err(1, "empty file")),
    }
    let (_, header_line) = lines.next().ok_or_else(|| parse_err(2, "missing header"))?;
    let header = parse_header(header_line)?;
    let mut m_sets = Vec::new();
    let mut cycles = Vec::new();
    let mut m_seen = false;
    for (line, text) in lines {
        let mut tokens = text.split(' ');
        match tokens.next() {
            Some("M") if !m_seen && cycles.is_empty() => {
                m_seen = true;
                for t in tokens {
                    m_sets.push(KSet::from_str(t).map_err(|e| parse_err(line, e.to_string()))?);
                }
            }
            Some("C") => {
                let rest: Vec<&str> = tokens.collect();
                if !rest.len().is_multiple_of(2) {
                    return Err(parse_err(line, "cycle line needs vertex/edge pairs"));
                }
                let mut c = BergeCycle { vertices: Vec::new(), edges: Vec::new() };
                for pair in rest.chunks(2) {
                    let v = pair[0].parse::<Vertex>().map_err(|_| parse_err(line, format!("bad vertex {:?}", pair[0])))?;
                    c.vertices.push(v);
                    c.edges.push(KSet::from_str(pair[1]).map_err(|e| parse_err(line, e.to_string()))?);
                }
                cycles.push(c);
            }
            _ => return Err(parse_err(line, format!("unexpected line {text:?}"))),
        }
    }
    let d = Decomposition { n: header.n, k: header.k, m_sets, cycles, seed: header.seed, case: header.case };
    Ok((header, d))
}

fn parse_header(line: &str) -> Result<HbdHeader, CertificateError> {
    let mut values: [Option<&str>; 6] = [None; 6];
    const KEYS: [&str; 6] = ["n", "k", "msize", "cycles", "seed", "case"];
    for field in line.split(' ') {
        let (key, value) = field.split_once('=').ok_or_else(|| parse_err(2, format!("bad field {field:?}")))?;
        let slot = KEYS.iter().position(|&k| k == key).ok_or_else(|| parse_err(2, format!("unknown field {key:?}")))?;
        if values[slot].replace(value).is_some() {
            return Err(parse_err(2, format!("repeated field {key:?}")));
        }
    }
    let get = |i: usize| values[i].ok_or_else(|| parse_err(2, format!("missing field {:?}", KEYS[i])));
    let num = |i: usize| -> Result<u64, CertificateError> {
        get(i)?.parse::<u64>().map_err(|_| parse_err(2, format!("field {:?} is not a number", KEYS[i])))
    };
    let small = |i: usize| -> Result<u32, CertificateError> {
        u32::try_from(num(i)?).map_err(|_| parse_err(2, format!("field {:?} out of range", KEYS[i])))
    };
    Ok(HbdHeader {
        n: small(0)?,
        k: small(1)?,
        msize: num(2)? as usize,
        cycles: num(3)? as usize,
        seed: num(4)?,
        case: get(5)?.parse().map_err(|e: String| parse_err(2, e))?,
    })
}

/// Parses and fully verifies an HBD v1 file, including agreement of the
/// header counts with the body.
pub fn check_hbd(text: &str) -> Result<Decomposition, CertificateError> {
    let (header, d) = parse_hbd(text)?;
    if header.msize != d.m_sets.len() {
        return Err(VerifyError::HeaderMismatch { field: "msize", declared: header.msize, actual: d.m_sets.len() }.into());
    }
    if header.cycles != d.cycles.len() {
        return Err(VerifyError::HeaderMismatch { field: "cycles", declared: header.cycles, actual: d.cycles.len() }.into());
    }
    verify_decomposition(&d)?;
    Ok(d)
}

/// Confirms a claimed Hall violator by direct neighbourhood count: the
/// capacity of `N(S)` must be strictly below `|S|`.
pub fn hall_certificate_check(g: &BipartiteGraph, violator: &[u32]) -> Result<(), String> {
    if violator.is_empty() {
        return Err("empty violator".into());
    }
    let mut in_s = vec![false; g.left_count()];
    for &l in violator {
        let l = l as usize;
        if l >= g.left_count() {
            return Err(format!("left vertex {l} out of range"));
        }
        if std::mem::replace(&mut in_s[l], true) {
            return Err(format!("left vertex {l} listed twice"));
        }
    }
    let mut hit = vec![false; g.right_count()];
    let mut neighbourhood = 0u64;
    for l in 0..g.left_count() {
        if !in_s[l] {
            continue;
        }
        for &r in g.neighbours(l) {
            if !std::mem::replace(&mut hit[r as usize], true) {
                neighbourhood += g.capacity(r as usize) as u64;
            }
        }
    }
    if neighbourhood < violator.len() as u64 {
        Ok(())
    } else {
        Err(format!("|N(S)| = {neighbourhood} is not below |S| = {}", violator.len()))
    }
}

/// What a checked HAMDEC file claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamdecSummary {
    pub n: u32,
    pub kind: String,
    pub cycles: usize,
    pub leftover: usize,
}

/// Parses and checks a HAMDEC v1 file: the `H` lines must be edge-disjoint
/// Hamilton cycles which, with the `L` matching where the kind has one,
/// cover every edge exactly once.
pub fn check_hamdec(text: &str) -> Result<HamdecSummary, CertificateError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut fields = header.split(' ');
    if fields.next() != Some("HAMDEC") || fields.next() != Some("v1") {
        return Err(parse_err(1, "missing 'HAMDEC v1' header"));
    }
    let (mut n, mut kind, mut seed) = (None, None, None);
    for f in fields {
        match f.split_once('=') {
            Some(("n", v)) => n = v.parse::<u32>().ok(),
            Some(("kind", v)) => kind = Some(v.to_string()),
            Some(("seed", v)) => seed = v.parse::<u64>().ok(),
            _ => return Err(parse_err(1, format!("bad field {f:?}"))),
        }
    }
    let (Some(n), Some(kind), Some(_)) = (n, kind, seed) else {
        return Err(parse_err(1, "header needs n, kind and seed"));
    };
    let (directed, want_cycles, has_leftover) = match kind.as_str() {
        "complete_digraph" if n >= 2 => (true, n as usize - 1, false),
        "complete_graph_odd" if n >= 3 && n % 2 == 1 => (false, (n as usize - 1) / 2, false),
        "complete_graph_even_minus_matching" if n >= 4 && n % 2 == 0 => (false, n as usize / 2 - 1, true),
        _ => return Err(parse_err(1, format!("kind {kind:?} invalid for n = {n}"))),
    };
    let mut cycles: Vec<Vec<Vertex>> = Vec::new();
    let mut leftover = Vec::new();
    for (line, body) in lines {
        let mut tokens = body.split(' ');
        match tokens.next() {
            Some("H") => cycles.push(
                tokens
                    .map(|t| t.parse::<Vertex>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| parse_err(line, "bad vertex"))?,
            ),
            Some("L") => {
                let pair = tokens.next().and_then(|t| t.split_once('-')).and_then(|(a, b)| Some((a.parse::<Vertex>().ok()?, b.parse::<Vertex>().ok()?)));
                leftover.push(pair.ok_or_else(|| parse_err(line, "bad leftover edge"))?);
            }
            _ => return Err(parse_err(line, format!("unexpected line {body:?}"))),
        }
    }
    let bad = |msg: String| Err(CertificateError::InvalidHamilton(msg));
    if cycles.len() != want_cycles {
        return bad(format!("{} cycles, expected {want_cycles}", cycles.len()));
    }
    let size = n as usize + 1;
    let mut covered = vec![false; size * size];
    let mut cover = |a: Vertex, b: Vertex| -> bool {
        let (a, b) = if directed { (a, b) } else { (a.min(b), a.max(b)) };
        !std::mem::replace(&mut covered[a as usize * size + b as usize], true)
    };
    for (i, c) in cycles.iter().enumerate() {
        let mut seen = vec![false; size];
        if c.len() != n as usize || c.iter().any(|&v| v == 0 || v > n || std::mem::replace(&mut seen[v as usize], true)) {
            return bad(format!("cycle {} is not a permutation of 1..={n}", i + 1));
        }
        for t in 0..c.len() {
            if !cover(c[t], c[(t + 1) % c.len()]) {
                return bad(format!("cycle {} reuses edge {}-{}", i + 1, c[t], c[(t + 1) % c.len()]));
            }
        }
    }
    if has_leftover != !leftover.is_empty() {
        return bad("leftover matching present exactly when the kind has one".into());
    }
    let mut matched = vec![false; size];
    for &(a, b) in &leftover {
        if a == b || a == 0 || b == 0 || a > n || b > n {
            return bad(format!("leftover edge {a}-{b} invalid"));
        }
        if std::mem::replace(&mut matched[a as usize], true) || std::mem::replace(&mut matched[b as usize], true) {
            return bad("leftover edges are not a matching".into());
        }
        if !cover(a, b) {
            return bad(format!("leftover edge {a}-{b} also lies on a cycle"));
        }
    }
    if has_leftover && leftover.len() * 2 != n as usize {
        return bad("leftover matching is not perfect".into());
    }
    for a in 1..=n {
        for b in 1..=n {
            if a != b && (directed || a < b) && !covered[a as usize * size + b as usize] {
                return bad(format!("edge {a}-{b} not covered"));
            }
        }
    }
    Ok(HamdecSummary { n, kind, cycles: cycles.len(), leftover: leftover.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berge_construct::{decompose, single_cycle_n_minus_1};
    use crate::combinatorics::colex_rank;
    use crate::ham_decomp::{dk_decompose, walecki_decompose, walecki_even_decompose};

    fn ks(s: &str) -> KSet {
        s.parse().unwrap()
    }

    #[test]
    fn local_rank_agrees() {
        let t = Binomials::new(12, 5);
        for r in 0..crate::combinatorics::binom_small(12, 5) {
            let set = t.unrank(r, 12, 5);
            assert_eq!(t.rank(&set), r);
            assert_eq!(colex_rank(&KSet::from_sorted(set)), r);
        }
    }

    #[test]
    fn cycle_examples() {
        let d = single_cycle_n_minus_1(5).unwrap();
        let c = &d.cycles[0];
        assert_eq!(verify_berge_cycle(c, 5, 4), Ok(()));
        let mut dup = c.clone();
        dup.edges[1] = dup.edges[0].clone();
        assert_eq!(verify_berge_cycle(&dup, 5, 4), Err(CycleViolation::DuplicateEdge { first: 1, second: 2 }));
        // v_3 = 3 must lie in e_2
        let mut miss = c.clone();
        miss.edges[1] = ks("1-2-4-5");
        miss.edges[0] = ks("1-2-3-5");
        assert_eq!(verify_berge_cycle(&miss, 5, 4), Err(CycleViolation::Containment { position: 2 }));
        let mut perm = c.clone();
        perm.vertices[4] = 1;
        assert!(matches!(verify_berge_cycle(&perm, 5, 4), Err(CycleViolation::NotPermutation { position: 5, .. })));
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose(9, 7, None, 0).unwrap();
        assert_eq!(verify_decomposition(&d), Ok(()));
        let mut swapped = d.clone();
        swapped.cycles.swap(0, 3);
        assert_eq!(verify_decomposition(&swapped), Ok(()));

        let d = decompose(10, 8, None, 0).unwrap();
        let mut planted = d.clone();
        // replace an edge by an M member that still contains its two vertices
        let (c, i) = (0..planted.cycles.len())
            .flat_map(|c| (0..10).map(move |i| (c, i)))
            .find(|&(c, i)| {
                let cy = &planted.cycles[c];
                let (a, b) = (cy.vertices[i], cy.vertices[(i + 1) % 10]);
                d.m_sets.iter().any(|m| m.contains(a) && m.contains(b) && !cy.edges.contains(m))
            })
            .unwrap();
        let cy = &planted.cycles[c];
        let (a, b) = (cy.vertices[i], cy.vertices[(i + 1) % 10]);
        let m = d.m_sets.iter().find(|m| m.contains(a) && m.contains(b) && !cy.edges.contains(m)).unwrap().clone();
        planted.cycles[c].edges[i] = m;
        assert!(matches!(verify_decomposition(&planted), Err(VerifyError::EdgeInM { .. })));

        let mut dropped = d.clone();
        dropped.cycles.pop();
        assert!(matches!(verify_decomposition(&dropped), Err(VerifyError::CycleCount { .. })));
    }

    #[test]
    fn hbd_round_trip_and_errors() {
        let d = decompose(10, 8, None, 4).unwrap();
        let text = d.to_file_string();
        assert_eq!(check_hbd(&text), Ok(d.clone()));
        assert!(check_hbd("").unwrap_err().is_parse());
        assert!(check_hbd("HBD v1\nn=5 k=4\n").unwrap_err().is_parse());
        let bad = text.replacen("C ", "C x ", 1);
        assert!(matches!(check_hbd(&bad), Err(CertificateError::Parse { line: 4, .. })));
        let wrong_count = text.replace("cycles=4", "cycles=5");
        assert!(matches!(check_hbd(&wrong_count), Err(CertificateError::Invalid(_))));
        let wrong_case = text.replace("case=3b", "case=1");
        assert!(matches!(check_hbd(&wrong_case), Err(CertificateError::Invalid(VerifyError::CaseMismatch { .. }))));
    }

    #[test]
    fn hall_examples() {
        let star = BipartiteGraph::from_adjacency(1, &[vec![0], vec![0]]).unwrap();
        assert_eq!(hall_certificate_check(&star, &[0, 1]), Ok(()));
        let perfect = BipartiteGraph::from_adjacency(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(hall_certificate_check(&perfect, &[0, 1]).is_err());
        assert!(hall_certificate_check(&perfect, &[]).is_err());
        let cap = BipartiteGraph::from_csr(2, 1, vec![0, 1, 2], vec![0, 0], Some(vec![2])).unwrap();
        assert!(hall_certificate_check(&cap, &[0, 1]).is_err());
    }

    #[test]
    fn hamdec_files() {
        for d in [walecki_decompose(11).unwrap(), walecki_even_decompose(12).unwrap(), dk_decompose(9, 0).unwrap()] {
            let text = d.to_file_string();
            let s = check_hamdec(&text).unwrap();
            assert_eq!(s.cycles, d.cycles.len());
        }
        let text = walecki_decompose(7).unwrap().to_file_string();
        let lines: Vec<&str> = text.lines().collect();
        let mut broken = vec![lines[0], lines[1], lines[1]];
        broken.extend_from_slice(&lines[3..]);
        assert!(matches!(check_hamdec(&broken.join("\n")), Err(CertificateError::InvalidHamilton(_))));
        assert!(check_hamdec("").unwrap_err().is_parse());
        let even = walecki_even_decompose(8).unwrap().to_file_string();
        let no_leftover: String = even.lines().filter(|l| !l.starts_with('L')).map(|l| format!("{l}\n")).collect();
        assert!(check_hamdec(&no_leftover).is_err());
    }
}
