//! Decompositions of `K_n^(k) - M` into Hamilton Berge cycles.
//!
//! The general pipeline matches every k-set of `A_* = [n]^(k) \ M` to a
//! directed edge drawn from `ℓ` copies of `DK_n` plus `m` further Hamilton
//! cycles, under the rule that a k-set may only take an edge it contains.
//! Each Hamilton cycle of the copies then pulls back to a Berge cycle.

mod aux;
mod dense;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::combinatorics::{colex_initial_segment, CombError, Family, KSet, Vertex};
use crate::ham_decomp::{
    dk_decompose_cached, select_m_cycles, walecki_decompose, walecki_even_decompose, DkOptions, HamCycle,
    HamDecomposition, HamError,
};
use crate::matching::hopcroft_karp;
use crate::verify::verify_decomposition;

use aux::pair_multiplicity;
pub use dense::{implicit_edge_count, match_implicit, ImplicitMatching};
pub use aux::{
    assemble_cycles, build_aux_graph, build_b, build_pair_graph, distribute_matching, AStar, BBlock, BElement, BSide,
};

/// Above this many pair-graph edges the matching runs on the implicit
/// graph instead of a stored one.
const IMPLICIT_EDGE_THRESHOLD: u64 = 100_000_000;

/// Default refusal threshold on `C(n, k)`.
pub const DEFAULT_CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("need 3 <= k < n (got n = {n}, k = {k})")]
    Range { n: u32, k: u32 },
    #[error("|M| = {size} must be less than n = {n}")]
    MTooLarge { size: u64, n: u32 },
    #[error(
        "n = {n} does not divide C({n},{k}) - |M| for |M| = {size}; C({n},{k}) mod {n} = {residue}, so the only admissible |M| is {residue}"
    )]
    Divisibility { n: u32, k: u32, size: u64, residue: u64 },
    #[error("C({n},{k}) = {total} exceeds the size cap {cap}")]
    SizeCap { n: u32, k: u32, total: String, cap: u64 },
    #[error("M must be a family of {k}-subsets of [{n}] (got n = {got_n}, k = {got_k})")]
    FamilyShape { n: u32, k: u32, got_n: u32, got_k: u32 },
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    Ham(#[from] HamError),
    #[error(
        "auxiliary graph has no perfect matching: {} k-sets have only {neighbourhood} admissible edges between them",
        violator.len()
    )]
    MatchingInfeasible { violator: Vec<KSet>, neighbourhood: u64 },
    #[error("{what} has size {got}, expected {expected}")]
    SizeMismatch { what: &'static str, got: u64, expected: u64 },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

/// `C(n,k) - |M| = ℓ·n(n-1) + m·n` with `0 <= m < n - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameters {
    pub n: u32,
    pub k: u32,
    pub m_set_size: u64,
    pub total: BigUint,
    pub ell: BigUint,
    pub m: u32,
}

impl Parameters {
    /// `|A_*| = C(n,k) - |M|`.
    pub fn remaining(&self) -> BigUint {
        &self.total - self.m_set_size
    }

    pub fn cycle_count(&self) -> BigUint {
        self.remaining() / self.n
    }

    /// `ℓ` as a machine integer; `None` only for instances far beyond any
    /// size cap.
    pub fn ell_u64(&self) -> Option<u64> {
        self.ell.to_u64()
    }
}

pub fn binom_big(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(n, k) mod n`, the only admissible `|M|`.
pub fn required_m_size(n: u32, k: u32) -> u64 {
    (binom_big(n, k) % n).to_u64().expect("residue below n")
}

pub fn compute_parameters(n: u32, k: u32, m_set_size: u64) -> Result<Parameters, ConstructError> {
    if k < 3 || k >= n {
        return Err(ConstructError::Range { n, k });
    }
    if m_set_size >= n as u64 {
        return Err(ConstructError::MTooLarge { size: m_set_size, n });
    }
    let total = binom_big(n, k);
    let residue = (&total % n).to_u64().expect("residue below n");
    if residue != m_set_size {
        return Err(ConstructError::Divisibility { n, k, size: m_set_size, residue });
    }
    let remaining = &total - m_set_size;
    let per_copy = BigUint::from(n as u64 * (n as u64 - 1));
    let ell = &remaining / &per_copy;
    let m = ((remaining - &ell * per_copy) / n).to_u32().expect("m < n - 1");
    debug_assert!(m + 1 < n);
    Ok(Parameters { n, k, m_set_size, total, ell, m })
}

/// The admissible `M` used when none is supplied: empty when `n` divides
/// `C(n,k)`; for `k = 3` the perfect matching `{1,2,3}, {4,5,6}, ...`;
/// otherwise the colex-initial segment of the required size.
pub fn choose_default_m(n: u32, k: u32) -> Result<Family, ConstructError> {
    if k < 3 || k >= n {
        return Err(ConstructError::Range { n, k });
    }
    let r = required_m_size(n, k);
    if r == 0 {
        return Ok(Family::empty(n, k));
    }
    if k == 3 {
        if !n.is_multiple_of(3) || r != (n / 3) as u64 {
            return Err(ConstructError::Internal(format!(
                "C({n},3) mod {n} = {r} is not n/3; no perfect matching restores divisibility"
            )));
        }
        return Ok(perfect_matching(n, &(1..=n).collect::<Vec<_>>()));
    }
    Ok(colex_initial_segment(r, k, n)?)
}

/// A uniformly random admissible `M`: a random perfect matching for `k = 3`,
/// otherwise `C(n,k) mod n` distinct random k-sets.
pub fn random_admissible_m(n: u32, k: u32, seed: u64) -> Result<Family, ConstructError> {
    if k < 3 || k >= n {
        return Err(ConstructError::Range { n, k });
    }
    let r = required_m_size(n, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if r == 0 {
        return Ok(Family::empty(n, k));
    }
    if k == 3 && r == (n / 3) as u64 && n.is_multiple_of(3) {
        let mut perm: Vec<Vertex> = (1..=n).collect();
        perm.shuffle(&mut rng);
        return Ok(perfect_matching(n, &perm));
    }
    let total = binom_big(n, k)
        .to_u64()
        .ok_or_else(|| ConstructError::Internal(format!("C({n},{k}) exceeds 64 bits")))?;
    let mut ranks = Vec::with_capacity(r as usize);
    while (ranks.len() as u64) < r {
        let x = rng.gen_range(0..total);
        if !ranks.contains(&x) {
            ranks.push(x);
        }
    }
    Ok(Family::from_ranks(n, k, ranks))
}

fn perfect_matching(n: u32, order: &[Vertex]) -> Family {
    let members = order.chunks(3).map(|c| KSet::new(c.to_vec(), n).expect("distinct vertices")).collect();
    Family::from_members(n, 3, members).expect("disjoint triples")
}

/// Range check for the construction; `None` when `(n, k, M)` is
/// covered, otherwise a human-readable reason.
pub fn proven_range_warning(n: u32, k: u32, m: &Family) -> Option<String> {
    let in_range = (k >= 5 && n >= 20) || (k == 4 && n >= 30) || (k == 3 && n >= 100);
    if !in_range {
        return Some(format!(
            "(n, k) = ({n}, {k}) is outside the proven range (k >= 5 and n >= 20, k = 4 and n >= 30, or k = 3 and n >= 100); \
             the construction may fail with a Hall violator"
        ));
    }
    if k == 3 && !m.is_empty() && !is_matching(m) {
        return Some("for k = 3 the construction is only guaranteed when M is a perfect matching".to_string());
    }
    None
}

fn is_matching(f: &Family) -> bool {
    let mut seen = vec![false; f.n() as usize + 1];
    for s in f {
        for &v in s.elements() {
            if std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
    }
    true
}

/// Which construction produced a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProofCase {
    /// `4 <= k <= n - 3`.
    General,
    /// `k = 3`.
    Triples,
    /// `k = n - 1`: the hypergraph is itself one Berge cycle.
    WholeHypergraph,
    /// `k = n - 2`: undirected Hamilton cycles of `K_n`.
    CoDegreeTwo,
}

impl ProofCase {
    pub fn of(n: u32, k: u32) -> ProofCase {
        if k + 1 == n {
            ProofCase::WholeHypergraph
        } else if k + 2 == n {
            ProofCase::CoDegreeTwo
        } else if k == 3 {
            ProofCase::Triples
        } else {
            ProofCase::General
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProofCase::General => "1",
            ProofCase::Triples => "2",
            ProofCase::WholeHypergraph => "3a",
            ProofCase::CoDegreeTwo => "3b",
        }
    }
}

impl fmt::Display for ProofCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProofCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(ProofCase::General),
            "2" => Ok(ProofCase::Triples),
            "3a" => Ok(ProofCase::WholeHypergraph),
            "3b" => Ok(ProofCase::CoDegreeTwo),
            other => Err(format!("unknown case {other:?}")),
        }
    }
}

/// `v_1, e_1, ..., v_n, e_n` with `{v_i, v_{i+1}} ⊆ e_i` cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BergeCycle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<KSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: u32,
    pub k: u32,
    /// Removed k-sets in colex order.
    pub m_sets: Vec<KSet>,
    pub cycles: Vec<BergeCycle>,
    pub seed: u64,
    pub case: ProofCase,
}

impl Decomposition {
    /// HBD v1 text.
    pub fn to_file_string(&self) -> String {
        let mut out = String::from("HBD v1\n");
        out.push_str(&format!(
            "n={} k={} msize={} cycles={} seed={} case={}\n",
            self.n,
            self.k,
            self.m_sets.len(),
            self.cycles.len(),
            self.seed,
            self.case
        ));
        if !self.m_sets.is_empty() {
            out.push('M');
            for s in &self.m_sets {
                out.push(' ');
                out.push_str(&s.to_string());
            }
            out.push('\n');
        }
        for c in &self.cycles {
            out.push('C');
            for (v, e) in c.vertices.iter().zip(&c.edges) {
                out.push_str(&format!(" {v} {e}"));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct DecomposeOptions {
    pub seed: u64,
    /// Refuse instances with `C(n, k)` above this.
    pub cap: u64,
    /// Workers for the auxiliary graph build and the `DK_n` search.
    pub threads: usize,
    /// Directory for cached `DK_n` decompositions.
    pub cache_dir: Option<PathBuf>,
    pub dk: DkOptions,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { seed: 0, cap: DEFAULT_CAP, threads: 1, cache_dir: None, dk: DkOptions::default() }
    }
}

/// Per-stage wall-clock times and auxiliary graph size.
#[derive(Debug, Clone, Default)]
pub struct BuildStats {
    pub stages: Vec<(&'static str, Duration)>,
    pub b_len: u64,
    pub aux_left: u64,
    pub aux_right: u64,
    pub aux_edges: u64,
    pub aux_memory_bytes: u64,
}

impl BuildStats {
    fn time<T>(&mut self, stage: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.stages.push((stage, start.elapsed()));
        out
    }
}

pub fn decompose(n: u32, k: u32, m: Option<&Family>, seed: u64) -> Result<Decomposition, ConstructError> {
    let opts = DecomposeOptions { seed, ..DecomposeOptions::default() };
    decompose_with(n, k, m, &opts).map(|(d, _)| d)
}

/// Builds and verifies a decomposition of `K_n^(k) - M`; `M` defaults to
/// [`choose_default_m`].
pub fn decompose_with(
    n: u32,
    k: u32,
    m: Option<&Family>,
    opts: &DecomposeOptions,
) -> Result<(Decomposition, BuildStats), ConstructError> {
    if k < 3 || k >= n {
        return Err(ConstructError::Range { n, k });
    }
    let default;
    let m = match m {
        Some(f) => f,
        None => {
            default = choose_default_m(n, k)?;
            &default
        }
    };
    if m.n() != n || m.k() != k {
        return Err(ConstructError::FamilyShape { n, k, got_n: m.n(), got_k: m.k() });
    }
    let p = compute_parameters(n, k, m.len() as u64)?;
    if p.total > BigUint::from(opts.cap) {
        return Err(ConstructError::SizeCap { n, k, total: p.total.to_string(), cap: opts.cap });
    }
    let mut stats = BuildStats::default();
    let mut case = ProofCase::of(n, k);
    if case == ProofCase::Triples && !m.is_empty() && !is_matching(m) {
        // the matching argument is unchanged, but part (ii) no longer applies
        case = ProofCase::General;
    }
    let cycles = match case {
        ProofCase::WholeHypergraph => stats.time("assembly", || single_cycle_n_minus_1(n))?.cycles,
        ProofCase::CoDegreeTwo => {
            let h = stats.time("hamilton", || undirected_cycles(n))?;
            run_pipeline(&p, m, None, &h, opts, &mut stats)?
        }
        ProofCase::General | ProofCase::Triples => {
            let ell = p.ell_u64().expect("capped");
            let dk = stats.time("hamilton", || -> Result<_, ConstructError> {
                let d = if ell > 0 || !matches!(n, 4 | 6) {
                    let dk_opts = DkOptions { threads: opts.threads, ..opts.dk.clone() };
                    dk_decompose_cached(n, opts.seed, &dk_opts, opts.cache_dir.as_deref())?
                } else {
                    // DK_6 has no Hamilton decomposition, but m <= n - 2
                    // directed cycles are all that is needed here
                    doubled(&walecki_even_decompose(n)?)
                };
                Ok(d)
            })?;
            let h = select_m_cycles(&dk, p.m as usize)?;
            let dk = (ell > 0).then_some(&dk);
            run_pipeline(&p, m, dk, &h, opts, &mut stats)?
        }
    };
    let d = Decomposition { n, k, m_sets: m.members().to_vec(), cycles, seed: opts.seed, case };
    stats
        .time("verify", || verify_decomposition(&d))
        .map_err(|e| ConstructError::Internal(format!("constructed decomposition rejected: {e}")))?;
    Ok((d, stats))
}

fn undirected_cycles(n: u32) -> Result<Vec<HamCycle>, ConstructError> {
    let d = if n % 2 == 1 { walecki_decompose(n)? } else { walecki_even_decompose(n)? };
    Ok(d.cycles)
}

/// Both orientations of every cycle of an undirected decomposition.
fn doubled(d: &HamDecomposition) -> HamDecomposition {
    let mut cycles = Vec::with_capacity(2 * d.cycles.len());
    for c in &d.cycles {
        cycles.push(HamCycle::directed(c.order().to_vec()));
        cycles.push(HamCycle::directed(c.reversed().order().to_vec()));
    }
    let mut out = HamDecomposition { cycles, leftover: Vec::new(), ..d.clone() };
    out.canonicalize();
    out
}

fn run_pipeline(
    p: &Parameters,
    m: &Family,
    dk: Option<&HamDecomposition>,
    h: &[HamCycle],
    opts: &DecomposeOptions,
    stats: &mut BuildStats,
) -> Result<Vec<BergeCycle>, ConstructError> {
    let b = stats.time("build_b", || build_b(p, dk, h))?;
    let a_star = AStar::new(m);
    let k = p.k as u64;
    let dense = a_star.len().saturating_mul(k * (k - 1) / 2) > IMPLICIT_EDGE_THRESHOLD;
    stats.b_len = b.len() as u64;
    stats.aux_left = a_star.len();
    stats.aux_right = (p.n * (p.n - 1) / 2) as u64;
    let matching = if dense {
        let cap = pair_multiplicity(&b);
        stats.aux_edges = implicit_edge_count(m, &cap);
        let out = stats.time("matching", || match_implicit(&a_star, &cap));
        stats.aux_memory_bytes = out.memory_bytes as u64;
        if let Some(violator) = &out.result.violator {
            let violator = violator.iter().map(|&l| a_star.kset(l as u64)).collect();
            return Err(ConstructError::MatchingInfeasible { violator, neighbourhood: out.neighbourhood });
        }
        out.result
    } else {
        let g = stats.time("graph", || build_pair_graph(&a_star, &b, opts.threads))?;
        stats.aux_edges = g.edge_count() as u64;
        stats.aux_memory_bytes = g.memory_bytes() as u64;
        let matching = stats.time("matching", || hopcroft_karp(&g));
        if let Some(violator) = &matching.violator {
            let mut seen = vec![false; g.right_count()];
            let mut neighbourhood = 0u64;
            for &left in violator {
                for &r in g.neighbours(left as usize) {
                    if !std::mem::replace(&mut seen[r as usize], true) {
                        neighbourhood += g.capacity(r as usize) as u64;
                    }
                }
            }
            let violator = violator.iter().map(|&l| a_star.kset(l as u64)).collect();
            return Err(ConstructError::MatchingInfeasible { violator, neighbourhood });
        }
        matching
    };
    stats.time("assembly", || {
        let assignment = distribute_matching(&matching, &b)?;
        assemble_cycles(&b, &assignment, &a_star, dk, h)
    })
}

/// `K_n^(n-1)` as one Berge cycle: `v = (1, ..., n)` and
/// `e_i = [n] \ {v_{i+2}}`.
pub fn single_cycle_n_minus_1(n: u32) -> Result<Decomposition, ConstructError> {
    if n < 4 {
        return Err(ConstructError::Range { n, k: n.saturating_sub(1) });
    }
    let vertices: Vec<Vertex> = (1..=n).collect();
    let edges = (0..n)
        .map(|i| {
            let skip = (i + 2) % n + 1;
            KSet::from_sorted((1..=n).filter(|&v| v != skip).collect())
        })
        .collect();
    Ok(Decomposition {
        n,
        k: n - 1,
        m_sets: Vec::new(),
        cycles: vec![BergeCycle { vertices, edges }],
        seed: 0,
        case: ProofCase::WholeHypergraph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom_small;

    #[test]
    fn parameters_examples() {
        let p = compute_parameters(21, 5, 0).unwrap();
        assert_eq!((p.ell_u64(), p.m), (Some(48), 9));
        let p = compute_parameters(10, 8, 5).unwrap();
        assert_eq!((p.ell_u64(), p.m), (Some(0), 4));
        let p = compute_parameters(101, 3, 0).unwrap();
        assert_eq!((p.ell_u64(), p.m), (Some(16), 50));
    }

    #[test]
    fn parameters_beyond_64_bits() {
        let r = required_m_size(200, 100);
        let p = compute_parameters(200, 100, r).unwrap();
        assert!(p.ell_u64().is_none());
        let n = BigUint::from(200u32);
        assert_eq!(&p.ell * &n * 199u32 + p.m * &n + r, p.total);
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(
            compute_parameters(8, 4, 0),
            Err(ConstructError::Divisibility { n: 8, k: 4, size: 0, residue: 6 })
        );
        assert_eq!(compute_parameters(8, 4, 8), Err(ConstructError::MTooLarge { size: 8, n: 8 }));
        assert!(matches!(compute_parameters(8, 2, 0), Err(ConstructError::Range { .. })));
        let msg = compute_parameters(8, 4, 1).unwrap_err().to_string();
        assert!(msg.contains("admissible |M| is 6"), "{msg}");
    }

    #[test]
    fn parameter_identity_small() {
        for n in 4..40u32 {
            for k in 3..n {
                let r = required_m_size(n, k);
                let p = compute_parameters(n, k, r).unwrap();
                let lhs = binom_small(n as u64, k as u64) - r;
                let ell = p.ell_u64().unwrap();
                assert_eq!(lhs, ell * (n * (n - 1)) as u64 + (p.m * n) as u64);
                assert!(p.m <= n - 2);
            }
        }
    }

    #[test]
    fn default_m_examples() {
        assert!(choose_default_m(21, 5).unwrap().is_empty());
        let m = choose_default_m(30, 4).unwrap();
        assert_eq!(m.len(), 15);
        assert_eq!(m, colex_initial_segment(15, 4, 30).unwrap());
        let m = choose_default_m(102, 3).unwrap();
        assert_eq!(m.len(), 34);
        assert!(is_matching(&m));
        assert_eq!(m.members()[0].elements(), &[1, 2, 3]);
    }

    #[test]
    fn random_m_is_admissible() {
        for (n, k) in [(30, 4), (102, 3), (22, 4), (9, 3)] {
            for seed in 0..3 {
                let m = random_admissible_m(n, k, seed).unwrap();
                assert!(compute_parameters(n, k, m.len() as u64).is_ok());
                if k == 3 {
                    assert!(is_matching(&m));
                }
            }
        }
        assert_ne!(random_admissible_m(30, 4, 0).unwrap(), random_admissible_m(30, 4, 1).unwrap());
    }

    #[test]
    fn single_cycle_examples() {
        let d = single_cycle_n_minus_1(5).unwrap();
        assert_eq!(d.cycles[0].edges[0].elements(), &[1, 2, 4, 5]);
        for n in 4..=40 {
            verify_decomposition(&single_cycle_n_minus_1(n).unwrap()).unwrap();
        }
        assert!(single_cycle_n_minus_1(3).is_err());
    }

    #[test]
    fn small_decompositions() {
        for (n, k, count) in [(5, 4, 1), (9, 7, 4), (10, 8, 4), (7, 4, 5), (8, 5, 7), (6, 3, 3), (9, 3, 9)] {
            let d = decompose(n, k, None, 0).unwrap();
            assert_eq!(d.cycles.len(), count, "({n},{k})");
        }
        let d = decompose(9, 7, None, 0).unwrap();
        assert_eq!(d.case, ProofCase::CoDegreeTwo);
        assert_eq!(d.cycles.iter().map(|c| c.edges.len()).sum::<usize>(), 36);
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let one = decompose_with(12, 4, None, &DecomposeOptions::default()).unwrap().0;
        let opts = DecomposeOptions { threads: 3, ..DecomposeOptions::default() };
        let three = decompose_with(12, 4, None, &opts).unwrap().0;
        assert_eq!(one.to_file_string(), three.to_file_string());
    }

    #[test]
    fn size_cap_and_bad_family() {
        let opts = DecomposeOptions { cap: 100, ..DecomposeOptions::default() };
        assert!(matches!(decompose_with(21, 5, None, &opts), Err(ConstructError::SizeCap { .. })));
        let wrong = Family::empty(9, 6);
        assert!(matches!(decompose(9, 7, Some(&wrong), 0), Err(ConstructError::FamilyShape { .. })));
        let short = Family::empty(8, 4);
        assert!(matches!(decompose(8, 4, Some(&short), 0), Err(ConstructError::Divisibility { .. })));
    }

    #[test]
    fn range_warning() {
        assert!(proven_range_warning(21, 5, &Family::empty(21, 5)).is_none());
        assert!(proven_range_warning(29, 4, &Family::empty(29, 4)).is_some());
        assert!(proven_range_warning(102, 3, &choose_default_m(102, 3).unwrap()).is_none());
        let not_matching = Family::from_ranks(102, 3, (0..34).collect());
        assert!(proven_range_warning(102, 3, &not_matching).is_some());
    }

    #[test]
    fn hbd_header() {
        let text = decompose(5, 4, None, 3).unwrap().to_file_string();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("HBD v1"));
        assert_eq!(lines.next(), Some("n=5 k=4 msize=0 cycles=1 seed=3 case=3a"));
        assert_eq!(lines.next(), Some("C 1 1-2-4-5 2 1-2-3-5 3 1-2-3-4 4 2-3-4-5 5 1-3-4-5"));
    }
}
