use super::{colex_rank_slice, CombError, Family, Vertex};

/// All `(k - level)`-sets contained in some member of `f`.
pub fn lower_shadow(f: &Family, level: u32) -> Result<Family, CombError> {
    let (n, k) = (f.n(), f.k());
    if level > k {
        return Err(CombError::LevelOutOfRange { level, k, n });
    }
    let keep = (k - level) as usize;
    let mut ranks = Vec::new();
    let mut idx: Vec<usize> = Vec::with_capacity(keep);
    let mut buf: Vec<Vertex> = vec![0; keep];
    for s in f {
        let e = s.elements();
        // every keep-subset of the member, by index combination
        idx.clear();
        idx.extend(0..keep);
        loop {
            for (slot, &i) in buf.iter_mut().zip(&idx) {
                *slot = e[i];
            }
            ranks.push(colex_rank_slice(&buf));
            if !next_index_combination(&mut idx, e.len()) {
                break;
            }
        }
    }
    Ok(Family::from_ranks(n, k - level, ranks))
}

/// All `(k + level)`-sets of `[n]` containing some member of `f`.
pub fn upper_shadow(f: &Family, level: u32) -> Result<Family, CombError> {
    let (n, k) = (f.n(), f.k());
    if k + level > n {
        return Err(CombError::LevelOutOfRange { level, k, n });
    }
    let add = level as usize;
    let mut ranks = Vec::new();
    let mut idx: Vec<usize> = Vec::with_capacity(add);
    let mut buf: Vec<Vertex> = Vec::with_capacity(k as usize + add);
    for s in f {
        let outside: Vec<Vertex> = (1..=n).filter(|v| !s.contains(*v)).collect();
        idx.clear();
        idx.extend(0..add);
        loop {
            buf.clear();
            buf.extend_from_slice(s.elements());
            buf.extend(idx.iter().map(|&i| outside[i]));
            buf.sort_unstable();
            ranks.push(colex_rank_slice(&buf));
            if !next_index_combination(&mut idx, outside.len()) {
                break;
            }
        }
    }
    Ok(Family::from_ranks(n, k + level, ranks))
}

/// Lex successor of an increasing index vector drawn from `0..len`.
fn next_index_combination(idx: &mut [usize], len: usize) -> bool {
    let r = idx.len();
    for i in (0..r).rev() {
        if idx[i] < len - (r - i) {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
