use super::{binom_small, CombError};

/// Generalized binomial `s (s-1) ... (s-k+1) / k!` for real `s`.
pub fn binom_real(s: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (s - i as f64) / (i as f64 + 1.0);
    }
    acc
}

/// The unique real `s >= k` with `binom_real(s, k) = size`.
///
/// Bisection on `[k, k + size]`, at most 200 iterations, stopping once the
/// bracket is narrower than `1e-9`. Exact integer solutions are returned
/// exactly.
pub fn lovasz_s(size: u64, k: u32) -> Result<f64, CombError> {
    if size == 0 {
        return Err(CombError::EmptySize);
    }
    if k == 0 {
        return Err(CombError::OutOfRange("k must be positive".into()));
    }
    let target = size as f64;
    let (mut lo, mut hi) = (k as f64, k as f64 + size as f64);
    for _ in 0..200 {
        if hi - lo < 1e-9 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if binom_real(mid, k) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let s = 0.5 * (lo + hi);
    let rounded = s.round();
    if rounded >= k as f64 && binom_small(rounded as u64, k as u64) == size {
        return Ok(rounded);
    }
    Ok(s)
}

/// Lovász form of Kruskal–Katona: `|lower shadow to 2-sets| >= C(s, 2)`.
pub fn kk_bound_i(size: u64, k: u32) -> Result<f64, CombError> {
    if k < 3 {
        return Err(CombError::OutOfRange(format!("kk_bound_i needs k >= 3, got {k}")));
    }
    Ok(binom_real(lovasz_s(size, k)?, 2))
}

/// Outcome of the upper-shadow bound for families of pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct KKBoundReport {
    pub family_size: u64,
    /// Real solution of `C(s, k) = |S|`; only meaningful for the
    /// lower-shadow bound.
    pub s_real: Option<f64>,
    pub c: u64,
    pub d: u64,
    pub bound_value: f64,
    /// Whether the bound is guaranteed (`n >= 100` and `c <= 8`); outside
    /// that range the report is informational.
    pub asserted: bool,
}

/// Writes `size = c n - C(c+1, 2) + d` with `c < n`, `d < n - (c + 1)` and
/// reports `c C(n - c, 2) + 2 d n / 5`.
pub fn kk_bound_ii(size: u64, n: u32) -> Result<KKBoundReport, CombError> {
    let n64 = n as u64;
    let total = binom_small(n64, 2);
    if size == 0 || size >= total {
        return Err(CombError::OutOfRange(format!(
            "kk_bound_ii needs 0 < size < C({n},2) = {total}, got {size}"
        )));
    }
    // complete rows of the lex order: row i holds the n - i pairs {i, j}, j > i
    let mut c = 0u64;
    let row_base = |c: u64| c * n64 - c * (c + 1) / 2;
    while c + 1 < n64 && row_base(c + 1) <= size {
        c += 1;
    }
    let d = size - row_base(c);
    if d >= n64 - (c + 1) {
        return Err(CombError::OutOfRange(format!("no (c, d) decomposition of {size} for n={n}")));
    }
    let bound_value = c as f64 * binom_small(n64 - c, 2) as f64 + 2.0 * d as f64 * n as f64 / 5.0;
    Ok(KKBoundReport {
        family_size: size,
        s_real: None,
        c,
        d,
        bound_value,
        asserted: n >= 100 && c <= 8,
    })
}

/// `|S| C(n - |S| - 1, 2) + C(|S|, 2) (n - |S| - 1)` for `1 <= |S| <= n - 1`.
pub fn kk_bound_iii(size: u64, n: u32) -> Result<f64, CombError> {
    let n64 = n as u64;
    if size == 0 || size + 1 > n64 {
        return Err(CombError::OutOfRange(format!(
            "kk_bound_iii needs 1 <= size <= n - 1, got size={size}, n={n}"
        )));
    }
    let rest = n64 - size - 1;
    Ok((size * binom_small(rest, 2) + binom_small(size, 2) * rest) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lovasz_exact_cases() {
        assert_eq!(lovasz_s(35, 4).unwrap(), 7.0);
        for k in 1..10 {
            assert_eq!(lovasz_s(1, k).unwrap(), k as f64);
        }
        assert_eq!(lovasz_s(20, 3).unwrap(), 6.0);
        assert_eq!(kk_bound_i(20, 3).unwrap(), 15.0);
        assert_eq!(kk_bound_i(126, 4).unwrap(), 36.0);
        assert_eq!(kk_bound_i(1, 3).unwrap(), 3.0);
        assert!(lovasz_s(0, 3).is_err());
    }

    #[test]
    fn lovasz_solves_non_integer_sizes() {
        for k in 2..6 {
            for size in 1..400u64 {
                let s = lovasz_s(size, k).unwrap();
                assert!(s >= k as f64);
                assert!((binom_real(s, k) - size as f64).abs() < 1e-6 * size as f64);
            }
        }
    }

    #[test]
    fn bound_ii_decompositions() {
        let n = 100;
        let r = kk_bound_ii(n as u64 - 1, n).unwrap();
        assert_eq!((r.c, r.d), (1, 0));
        assert_eq!(r.bound_value, binom_small(99, 2) as f64);
        let r = kk_bound_ii(1, n).unwrap();
        assert_eq!((r.c, r.d), (0, 1));
        assert_eq!(r.bound_value, 40.0);
        let r = kk_bound_ii(150, n).unwrap();
        assert_eq!((r.c, r.d), (1, 51));
        assert_eq!(r.bound_value, 6891.0);
        assert!(r.asserted);
        assert!(kk_bound_ii(0, n).is_err());
        assert!(kk_bound_ii(4950, n).is_err());
        assert!(!kk_bound_ii(1, 30).unwrap().asserted);
    }

    #[test]
    fn bound_ii_invariants_hold_for_every_size() {
        for n in [5u32, 30, 100] {
            let total = binom_small(n as u64, 2);
            for size in 1..total {
                let r = kk_bound_ii(size, n).unwrap();
                assert!(r.c < n as u64);
                assert!(r.d < n as u64 - (r.c + 1));
                assert_eq!(r.c * n as u64 - r.c * (r.c + 1) / 2 + r.d, size);
                assert!(r.bound_value >= 0.0);
            }
        }
    }

    #[test]
    fn bound_iii_values() {
        assert_eq!(kk_bound_iii(7, 30).unwrap(), 2079.0);
        assert_eq!(kk_bound_iii(6, 30).unwrap(), 1863.0);
        assert_eq!(kk_bound_iii(1, 30).unwrap(), binom_small(28, 2) as f64);
        assert!(kk_bound_iii(30, 30).is_err());
        assert!(kk_bound_iii(0, 30).is_err());
    }
}
