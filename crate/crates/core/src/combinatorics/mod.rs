//! k-subsets of `[n] = {1, ..., n}`: ranking, orders, shadows and the
//! Kruskal–Katona style lower bounds on shadow sizes.
//!
//! Vertices are 1-based throughout. Ranks are 0-based positions in the
//! colexicographic order, which is independent of the ground-set size.

mod bounds;
mod check;
mod shadow;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use bounds::{binom_real, kk_bound_i, kk_bound_ii, kk_bound_iii, lovasz_s, KKBoundReport};
pub use check::{kk_check, KkCheckMode, KkCheckReport, KkFinding};
pub use shadow::{lower_shadow, upper_shadow};

/// Vertex label, always in `1..=n`.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("malformed k-set {0:?}: {1}")]
    MalformedSet(String, &'static str),
    #[error("rank {rank} out of range (C({n},{k}) = {total})")]
    RankOutOfRange { rank: u64, n: u32, k: u32, total: u64 },
    #[error("size {size} exceeds C({n},{k}) = {total}")]
    SizeTooLarge { size: u64, n: u32, k: u32, total: u64 },
    #[error("shadow level {level} out of range for k={k}, n={n}")]
    LevelOutOfRange { level: u32, k: u32, n: u32 },
    #[error("duplicate member {0} in family")]
    Duplicate(String),
    #[error("member {set} invalid for n={n}, k={k}")]
    WrongShape { set: String, n: u32, k: u32 },
    #[error("family line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("size must be positive")]
    EmptySize,
    #[error("value out of range: {0}")]
    OutOfRange(String),
}

/// Binomial coefficient, `None` on `u64` overflow. `C(n, k) = 0` for `k > n`.
pub fn binom(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Binomial coefficient that panics on overflow; for arguments already
/// known to be small.
pub fn binom_small(n: u64, k: u64) -> u64 {
    binom(n, k).expect("binomial coefficient overflows u64")
}

/// A k-element subset of `[n]` in canonical (strictly increasing) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KSet(Vec<Vertex>);

impl KSet {
    /// Builds a k-set from arbitrary-order elements, validating against `n`.
    pub fn new(mut elements: Vec<Vertex>, n: u32) -> Result<Self, CombError> {
        elements.sort_unstable();
        let set = KSet(elements);
        if set.0.windows(2).any(|w| w[0] == w[1]) {
            return Err(CombError::MalformedSet(set.to_string(), "repeated element"));
        }
        if set.0.first().is_some_and(|&v| v == 0) || set.0.last().is_some_and(|&v| v > n) {
            return Err(CombError::MalformedSet(set.to_string(), "element outside 1..=n"));
        }
        Ok(set)
    }

    /// Wraps an already strictly increasing, 1-based element vector.
    pub fn from_sorted(elements: Vec<Vertex>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.first().is_none_or(|&v| v >= 1));
        KSet(elements)
    }

    pub fn elements(&self) -> &[Vertex] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_valid_for(&self, n: u32, k: u32) -> bool {
        self.0.len() == k as usize
            && self.0.windows(2).all(|w| w[0] < w[1])
            && self.0.first().is_none_or(|&v| v >= 1)
            && self.0.last().is_none_or(|&v| v <= n)
    }

    /// `[n] \ self`, also canonical.
    pub fn complement(&self, n: u32) -> KSet {
        KSet((1..=n).filter(|v| !self.contains(*v)).collect())
    }

    pub fn into_inner(self) -> Vec<Vertex> {
        self.0
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for KSet {
    type Err = CombError;

    /// Parses the `1-4-7` form. Elements must already be strictly increasing.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = s
            .split('-')
            .map(|p| p.parse::<Vertex>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CombError::MalformedSet(s.to_string(), "not a '-'-joined integer list"))?;
        if parts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CombError::MalformedSet(s.to_string(), "elements not strictly increasing"));
        }
        if parts.first().is_some_and(|&v| v == 0) {
            return Err(CombError::MalformedSet(s.to_string(), "vertex 0"));
        }
        Ok(KSet(parts))
    }
}

/// Colex comparison: `A < B` iff the largest element of the symmetric
/// difference lies in `B`. Both sets must have equal size.
pub fn colex_cmp(a: &KSet, b: &KSet) -> Ordering {
    for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Lex comparison: `A < B` iff the smallest element of the symmetric
/// difference lies in `A`.
pub fn lex_cmp(a: &KSet, b: &KSet) -> Ordering {
    for (x, y) in a.0.iter().zip(b.0.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // smaller element present in a and not in b
            other => return other,
        }
    }
    Ordering::Equal
}

/// 0-based position of `s` in colex order: `sum_i C(s_i - 1, i + 1)`.
pub fn colex_rank(s: &KSet) -> u64 {
    colex_rank_slice(&s.0)
}

pub(crate) fn colex_rank_slice(elements: &[Vertex]) -> u64 {
    elements
        .iter()
        .enumerate()
        .map(|(i, &v)| binom_small(v as u64 - 1, i as u64 + 1))
        .sum()
}

/// Inverse of [`colex_rank`]; the result does not depend on a ground set.
pub fn colex_unrank(rank: u64, k: u32) -> KSet {
    let mut out = vec![0; k as usize];
    colex_unrank_into(rank, &mut out);
    KSet(out)
}

pub(crate) fn colex_unrank_into(mut rank: u64, out: &mut [Vertex]) {
    let k = out.len();
    for i in (0..k).rev() {
        // largest m with C(m, i + 1) <= rank; element is m + 1
        let pos = i as u64 + 1;
        let mut m = i as u64;
        let mut step = 1u64;
        while binom(m + step, pos).is_some_and(|c| c <= rank) {
            m += step;
            step *= 2;
        }
        while step > 0 {
            if binom(m + step, pos).is_some_and(|c| c <= rank) {
                m += step;
            }
            step /= 2;
        }
        rank -= binom_small(m, pos);
        out[i] = m as Vertex + 1;
    }
}

/// Checked variant of [`colex_unrank`] against a ground set `[n]`.
pub fn colex_unrank_checked(rank: u64, k: u32, n: u32) -> Result<KSet, CombError> {
    let total = binom(n as u64, k as u64).unwrap_or(u64::MAX);
    if rank >= total {
        return Err(CombError::RankOutOfRange { rank, n, k, total });
    }
    Ok(colex_unrank(rank, k))
}

/// Advances `s` to its colex successor within `[n]`; false at the last set.
pub(crate) fn colex_next(s: &mut [Vertex], n: u32) -> bool {
    let k = s.len();
    for i in 0..k {
        let limit = if i + 1 < k { s[i + 1] } else { n + 1 };
        if s[i] + 1 < limit {
            s[i] += 1;
            for (j, slot) in s.iter_mut().enumerate().take(i) {
                *slot = j as Vertex + 1;
            }
            return true;
        }
    }
    false
}

/// Advances `s` to its lex successor within `[n]`; false at the last set.
pub(crate) fn lex_next(s: &mut [Vertex], n: u32) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - (k - 1 - i) as Vertex {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Colex rank of the pair `{x, y}`, any order.
#[inline]
pub fn pair_rank(x: Vertex, y: Vertex) -> usize {
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    let b = b as usize;
    (b - 1) * (b - 2) / 2 + (a as usize - 1)
}

/// A duplicate-free family of k-subsets of `[n]`, kept in colex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    n: u32,
    k: u32,
    members: Vec<KSet>,
}

impl Family {
    pub fn empty(n: u32, k: u32) -> Self {
        Family { n, k, members: Vec::new() }
    }

    /// Validates every member and sorts into colex order.
    pub fn from_members(n: u32, k: u32, mut members: Vec<KSet>) -> Result<Self, CombError> {
        if let Some(bad) = members.iter().find(|s| !s.is_valid_for(n, k)) {
            return Err(CombError::WrongShape { set: bad.to_string(), n, k });
        }
        members.sort_by(colex_cmp);
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(CombError::Duplicate(w[0].to_string()));
        }
        Ok(Family { n, k, members })
    }

    /// Builds from colex ranks; duplicates are removed.
    pub fn from_ranks(n: u32, k: u32, mut ranks: Vec<u64>) -> Self {
        ranks.sort_unstable();
        ranks.dedup();
        let members = ranks.into_iter().map(|r| colex_unrank(r, k)).collect();
        Family { n, k, members }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    pub fn ranks(&self) -> Vec<u64> {
        self.members.iter().map(colex_rank).collect()
    }

    pub fn contains(&self, s: &KSet) -> bool {
        self.members.binary_search_by(|m| colex_cmp(m, s)).is_ok()
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.members.iter().all(|s| other.contains(s))
    }

    /// Parses the family file format: one `1-4-7` set per line, blank lines
    /// and `#` comments ignored.
    pub fn parse(text: &str, n: u32, k: u32) -> Result<Self, CombError> {
        let mut members = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let elements = line
                .split('-')
                .map(|p| p.trim().parse::<Vertex>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CombError::Parse { line: idx + 1, msg: format!("bad set {line:?}") })?;
            let set = KSet::new(elements, n)
                .map_err(|e| CombError::Parse { line: idx + 1, msg: e.to_string() })?;
            if set.k() != k as usize {
                return Err(CombError::Parse {
                    line: idx + 1,
                    msg: format!("set {set} has size {} (expected {k})", set.k()),
                });
            }
            members.push(set);
        }
        Family::from_members(n, k, members)
    }

    /// Canonical family file text (colex order).
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for s in &self.members {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a KSet;
    type IntoIter = std::slice::Iter<'a, KSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// All of `[n]^(k)` in colex order.
pub fn all_ksets(n: u32, k: u32) -> Vec<KSet> {
    let total = binom_small(n as u64, k as u64);
    let mut out = Vec::with_capacity(total as usize);
    if k > n {
        return out;
    }
    let mut cur: Vec<Vertex> = (1..=k).collect();
    loop {
        out.push(KSet(cur.clone()));
        if !colex_next(&mut cur, n) {
            break;
        }
    }
    out
}

/// The first `size` members of `[n]^(k)` in colex order.
pub fn colex_initial_segment(size: u64, k: u32, n: u32) -> Result<Family, CombError> {
    let total = binom(n as u64, k as u64).unwrap_or(u64::MAX);
    if size > total {
        return Err(CombError::SizeTooLarge { size, n, k, total });
    }
    let members = (0..size).map(|r| colex_unrank(r, k)).collect();
    Ok(Family { n, k, members })
}

/// The first `size` members of `[n]^(k)` in lex order.
pub fn lex_initial_segment(size: u64, k: u32, n: u32) -> Result<Family, CombError> {
    let total = binom(n as u64, k as u64).unwrap_or(u64::MAX);
    if size > total {
        return Err(CombError::SizeTooLarge { size, n, k, total });
    }
    let mut members = Vec::with_capacity(size as usize);
    let mut cur: Vec<Vertex> = (1..=k).collect();
    for i in 0..size {
        members.push(KSet(cur.clone()));
        if i + 1 < size {
            lex_next(&mut cur, n);
        }
    }
    Family::from_members(n, k, members)
}
