//! Empirical validation of the Kruskal–Katona facts: initial segments
//! minimize shadows, and the closed-form lower bounds never exceed the
//! exact minima.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    all_ksets, binom, binom_small, colex_next, colex_rank_slice, kk_bound_i, kk_bound_ii,
    kk_bound_iii, lex_next, CombError, Vertex,
};

/// Ground sets with more k-sets than this skip the per-family checks.
const FAMILY_CHECK_LIMIT: u64 = 128;
/// Largest `C(n, k)` for which the segment sweeps run.
const SEGMENT_LIMIT: u64 = 2_000_000;
const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KkCheckMode {
    /// Enumerate every family of a given size when there are at most `cap`
    /// of them, otherwise draw `cap` random families.
    Exhaustive { cap: u64, seed: u64 },
    /// `samples` random families per size.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct KkFinding {
    pub check: &'static str,
    pub size: u64,
    pub observed: f64,
    pub required: f64,
}

#[derive(Debug, Clone, Default)]
pub struct KkCheckReport {
    pub n: u32,
    pub k: u32,
    /// (check name, number of comparisons made)
    pub tallies: Vec<(&'static str, u64)>,
    pub families_examined: u64,
    pub findings: Vec<KkFinding>,
}

impl KkCheckReport {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    fn tally(&mut self, check: &'static str) {
        match self.tallies.iter_mut().find(|(c, _)| *c == check) {
            Some((_, count)) => *count += 1,
            None => self.tallies.push((check, 1)),
        }
    }

    fn expect_at_least(&mut self, check: &'static str, size: u64, observed: f64, required: f64) {
        self.tally(check);
        if observed + EPS < required {
            self.findings.push(KkFinding { check, size, observed, required });
        }
    }
}

/// Runs every applicable check for k-families of `[n]` and pair families
/// of `[n]`.
pub fn kk_check(n: u32, k: u32, mode: KkCheckMode) -> Result<KkCheckReport, CombError> {
    if k == 0 || k > n {
        return Err(CombError::OutOfRange(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    let total = binom(n as u64, k as u64).unwrap_or(u64::MAX);
    if total > SEGMENT_LIMIT {
        return Err(CombError::OutOfRange(format!("C({n},{k}) = {total} too large for kk-check")));
    }
    let mut report = KkCheckReport { n, k, ..Default::default() };

    // exact shadow sizes of initial segments, indexed by size - 1
    let lower_min = segment_shadow_sizes(n, k, 1, Direction::Lower, Order::Colex);
    let upper_min = (k < n).then(|| segment_shadow_sizes(n, k, 1, Direction::Upper, Order::Lex));
    if k >= 3 {
        let deep = segment_shadow_sizes(n, k, k - 2, Direction::Lower, Order::Colex);
        for (i, &exact) in deep.iter().enumerate() {
            let size = i as u64 + 1;
            report.expect_at_least("bound (i) vs colex segment", size, exact as f64, kk_bound_i(size, k)?);
        }
    }
    if n >= 4 {
        let pair_upper2 = segment_shadow_sizes(n, 2, 2, Direction::Upper, Order::Lex);
        for size in 1..n as u64 {
            let exact = pair_upper2[size as usize - 1] as f64;
            report.expect_at_least("bound (iii) vs lex segment", size, exact, kk_bound_iii(size, n)?);
        }
    }
    if n >= 3 {
        let pair_upper1 = segment_shadow_sizes(n, 2, 1, Direction::Upper, Order::Lex);
        for size in 1..binom_small(n as u64, 2) {
            let r = kk_bound_ii(size, n)?;
            if r.asserted {
                let exact = pair_upper1[size as usize - 1] as f64;
                report.expect_at_least("bound (ii) vs lex segment", size, exact, r.bound_value);
            }
        }
    }

    if total <= FAMILY_CHECK_LIMIT {
        family_checks(&mut report, n, k, mode, &lower_min, upper_min.as_deref())?;
    }
    Ok(report)
}

#[derive(Clone, Copy)]
enum Direction {
    Lower,
    Upper,
}

#[derive(Clone, Copy)]
enum Order {
    Colex,
    Lex,
}

/// `out[s - 1]` = shadow size of the first `s` sets in the given order.
fn segment_shadow_sizes(n: u32, k: u32, level: u32, dir: Direction, order: Order) -> Vec<u64> {
    let total = binom_small(n as u64, k as u64);
    let target_k = match dir {
        Direction::Lower => k - level,
        Direction::Upper => k + level,
    };
    let mut seen = vec![false; binom_small(n as u64, target_k as u64) as usize];
    let mut count = 0u64;
    let mut out = Vec::with_capacity(total as usize);
    let mut cur: Vec<Vertex> = (1..=k).collect();
    let mut buf = Vec::new();
    for i in 0..total {
        for_each_shadow_member(&cur, n, level, dir, &mut buf, |r| {
            if !seen[r as usize] {
                seen[r as usize] = true;
                count += 1;
            }
        });
        out.push(count);
        if i + 1 < total {
            match order {
                Order::Colex => colex_next(&mut cur, n),
                Order::Lex => lex_next(&mut cur, n),
            };
        }
    }
    out
}

fn for_each_shadow_member(
    set: &[Vertex],
    n: u32,
    level: u32,
    dir: Direction,
    buf: &mut Vec<Vertex>,
    mut f: impl FnMut(u64),
) {
    match dir {
        Direction::Lower => {
            let keep = set.len() - level as usize;
            for_each_index_subset(set.len(), keep, |idx| {
                buf.clear();
                buf.extend(idx.iter().map(|&i| set[i]));
                f(colex_rank_slice(buf));
            });
        }
        Direction::Upper => {
            let outside: Vec<Vertex> = (1..=n).filter(|v| !set.contains(v)).collect();
            for_each_index_subset(outside.len(), level as usize, |idx| {
                buf.clear();
                buf.extend_from_slice(set);
                buf.extend(idx.iter().map(|&i| outside[i]));
                buf.sort_unstable();
                f(colex_rank_slice(buf));
            });
        }
    }
}

fn for_each_index_subset(len: usize, r: usize, mut f: impl FnMut(&[usize])) {
    if r > len {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        f(&idx);
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < len - (r - i) {
                idx[i] += 1;
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Dense bitmask over the ranks of a shadow level.
#[derive(Clone)]
struct Mask(Vec<u64>);

impl Mask {
    fn zero(bits: usize) -> Self {
        Mask(vec![0; bits.div_ceil(64).max(1)])
    }

    fn set(&mut self, bit: u64) {
        self.0[(bit / 64) as usize] |= 1 << (bit % 64);
    }

    fn or_into(&self, acc: &mut [u64]) {
        for (a, b) in acc.iter_mut().zip(&self.0) {
            *a |= b;
        }
    }
}

/// Per-member shadow masks for every set of `[n]^(k)`.
fn member_masks(n: u32, k: u32, level: u32, dir: Direction) -> Vec<Mask> {
    let target_k = match dir {
        Direction::Lower => k - level,
        Direction::Upper => k + level,
    };
    let bits = binom_small(n as u64, target_k as u64) as usize;
    let mut buf = Vec::new();
    all_ksets(n, k)
        .iter()
        .map(|s| {
            let mut m = Mask::zero(bits);
            for_each_shadow_member(s.elements(), n, level, dir, &mut buf, |r| m.set(r));
            m
        })
        .collect()
}

fn shadow_size(members: &[usize], masks: &[Mask], acc: &mut [u64]) -> u64 {
    acc.iter_mut().for_each(|w| *w = 0);
    for &i in members {
        masks[i].or_into(acc);
    }
    acc.iter().map(|w| w.count_ones() as u64).sum()
}

/// Visits families of `size` members drawn from `0..universe`: all of them
/// when few enough, otherwise a seeded random sample.
fn for_each_family(universe: usize, size: usize, mode: KkCheckMode, rng: &mut ChaCha8Rng, mut f: impl FnMut(&[usize])) {
    let (budget, exhaustive) = match mode {
        KkCheckMode::Exhaustive { cap, .. } => (cap, true),
        KkCheckMode::Sampled { samples, .. } => (samples, false),
    };
    let count = binom(universe as u64, size as u64);
    if exhaustive && count.is_some_and(|c| c <= budget) {
        for_each_index_subset(universe, size, f);
        return;
    }
    let mut fam = Vec::with_capacity(size);
    for _ in 0..budget {
        fam.clear();
        fam.extend(index::sample(rng, universe, size));
        f(&fam);
    }
}

fn family_checks(
    report: &mut KkCheckReport,
    n: u32,
    k: u32,
    mode: KkCheckMode,
    lower_min: &[u64],
    upper_min: Option<&[u64]>,
) -> Result<(), CombError> {
    let seed = match mode {
        KkCheckMode::Exhaustive { seed, .. } | KkCheckMode::Sampled { seed, .. } => seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe = binom_small(n as u64, k as u64) as usize;
    let lower_masks = member_masks(n, k, 1, Direction::Lower);
    let upper_masks = upper_min.map(|_| member_masks(n, k, 1, Direction::Upper));
    let mut lower_acc = vec![0u64; lower_masks[0].0.len()];
    let mut upper_acc = upper_masks.as_ref().map(|m| vec![0u64; m[0].0.len()]);

    for size in 1..=universe {
        let lower_req = lower_min[size - 1] as f64;
        let upper_req = upper_min.map(|u| u[size - 1] as f64);
        let bound_i = if k == 3 { Some(kk_bound_i(size as u64, k)?) } else { None };
        let mut examined = 0u64;
        let mut local: Vec<KkFinding> = Vec::new();
        let mut checks: Vec<(&'static str, u64)> = Vec::new();
        for_each_family(universe, size, mode, &mut rng, |fam| {
            examined += 1;
            let lower = shadow_size(fam, &lower_masks, &mut lower_acc) as f64;
            push_check(&mut checks, &mut local, "colex segment minimizes lower shadow", size, lower, lower_req);
            if let Some(b) = bound_i {
                push_check(&mut checks, &mut local, "bound (i) vs family", size, lower, b);
            }
            if let (Some(masks), Some(acc), Some(req)) = (&upper_masks, upper_acc.as_mut(), upper_req) {
                let upper = shadow_size(fam, masks, acc) as f64;
                push_check(&mut checks, &mut local, "lex segment minimizes upper shadow", size, upper, req);
            }
        });
        report.families_examined += examined;
        merge(report, checks, local);
    }

    // pair families against bound (iii)
    if n >= 4 {
        let pairs = binom_small(n as u64, 2) as usize;
        let masks = member_masks(n, 2, 2, Direction::Upper);
        let mut acc = vec![0u64; masks[0].0.len()];
        for size in 1..n as usize {
            let req = kk_bound_iii(size as u64, n)?;
            let mut local = Vec::new();
            let mut checks = Vec::new();
            let mut examined = 0u64;
            for_each_family(pairs, size, mode, &mut rng, |fam| {
                examined += 1;
                let upper = shadow_size(fam, &masks, &mut acc) as f64;
                push_check(&mut checks, &mut local, "bound (iii) vs pair family", size, upper, req);
            });
            report.families_examined += examined;
            merge(report, checks, local);
        }
    }
    Ok(())
}

fn push_check(
    checks: &mut Vec<(&'static str, u64)>,
    findings: &mut Vec<KkFinding>,
    check: &'static str,
    size: usize,
    observed: f64,
    required: f64,
) {
    match checks.iter_mut().find(|(c, _)| *c == check) {
        Some((_, count)) => *count += 1,
        None => checks.push((check, 1)),
    }
    if observed + EPS < required {
        findings.push(KkFinding { check, size: size as u64, observed, required });
    }
}

fn merge(report: &mut KkCheckReport, checks: Vec<(&'static str, u64)>, findings: Vec<KkFinding>) {
    for (check, count) in checks {
        match report.tallies.iter_mut().find(|(c, _)| *c == check) {
            Some((_, c)) => *c += count,
            None => report.tallies.push((check, count)),
        }
    }
    report.findings.extend(findings);
}
