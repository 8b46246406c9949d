use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{verify_ham_decomposition, walecki_decompose, HamCycle, HamDecomposition, HamError, HamKind};
use crate::combinatorics::Vertex;

#[derive(Debug, Clone)]
pub struct DkOptions {
    /// Maximum number of restarts of the even-n path search.
    pub restart_cap: u32,
    /// Search nodes per restart of the even-n path search.
    pub nodes_per_restart: u64,
    pub threads: usize,
}

impl Default for DkOptions {
    fn default() -> Self {
        DkOptions { restart_cap: 1000, nodes_per_restart: 20_000, threads: 1 }
    }
}

pub fn dk_decompose(n: u32, seed: u64) -> Result<HamDecomposition, HamError> {
    dk_decompose_with(n, seed, &DkOptions::default())
}

/// Hamilton decomposition of the complete digraph on `[n]` into `n - 1`
/// directed cycles.
///
/// Odd `n`: every undirected Walecki cycle in both directions. Even `n >= 8`:
/// a decomposition of `DK_{n-1}` into `n - 2` colour classes is fixed, a
/// Hamilton path of `DK_{n-1}` using each colour exactly once is found by
/// seeded backtracking with restarts, vertex `n` is spliced into each colour
/// class at its path arc, and the path closed through `n` is the last cycle.
pub fn dk_decompose_with(n: u32, seed: u64, opts: &DkOptions) -> Result<HamDecomposition, HamError> {
    let cycles = match n {
        0 | 1 => return Err(HamError::OutOfRange(n, "DK_n needs n >= 2")),
        2 => vec![HamCycle::directed(vec![1, 2])],
        4 | 6 => return Err(HamError::ImpossibleByTillson(n)),
        _ if n % 2 == 1 => doubled_walecki(n)?,
        _ => spliced(n, seed, opts)?,
    };
    let mut d = HamDecomposition { n, kind: HamKind::CompleteDigraph, cycles, leftover: Vec::new(), seed };
    d.canonicalize();
    verify_ham_decomposition(&d)?;
    Ok(d)
}

/// As [`dk_decompose_with`], reading and writing `DK_n` decompositions under
/// `cache_dir` when given. Cached files are re-verified on load.
pub fn dk_decompose_cached(
    n: u32,
    seed: u64,
    opts: &DkOptions,
    cache_dir: Option<&Path>,
) -> Result<HamDecomposition, HamError> {
    let Some(dir) = cache_dir else {
        return dk_decompose_with(n, seed, opts);
    };
    let path = dir.join(format!("dk_n{n}_s{seed}.hamdec"));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(d) = HamDecomposition::parse(&text) {
            if d.n == n && d.kind == HamKind::CompleteDigraph && verify_ham_decomposition(&d).is_ok() {
                return Ok(d);
            }
        }
    }
    let d = dk_decompose_with(n, seed, opts)?;
    // the cache is best effort
    if fs::create_dir_all(dir).is_ok() {
        let _ = fs::write(&path, d.to_file_string());
    }
    Ok(d)
}

fn doubled_walecki(n: u32) -> Result<Vec<HamCycle>, HamError> {
    let base = walecki_decompose(n)?;
    let mut out = Vec::with_capacity(2 * base.cycles.len());
    for c in &base.cycles {
        let fwd = HamCycle::directed(c.order().to_vec());
        out.push(fwd.reversed());
        out.push(fwd);
    }
    Ok(out)
}

/// Rotational colouring of `DK_m`, `m` odd. Vertices `1..m-1` stand for
/// `Z_{m-1}` and `m` is fixed. With `h = (m-1)/2`, arc `x -> x+d` gets colour
/// `x + floor(d/2)`, plus `h` when `d` is even; `m -> x` gets `x` and
/// `x -> m` gets `x + h`. Every colour class is a directed Hamilton cycle; up
/// to relabelling this is the doubled Walecki decomposition.
struct Colouring {
    m: usize,
    colour: Vec<u32>,
    succ: Vec<Vertex>,
}

impl Colouring {
    fn new(m: u32) -> Self {
        let m = m as usize;
        let z = m - 1;
        let half = z / 2;
        let side = m + 1;
        let mut colour = vec![u32::MAX; side * side];
        let mut succ = vec![0; z * side];
        let mut set = |x: usize, y: usize, c: usize| {
            colour[x * side + y] = c as u32;
            succ[c * side + x] = y as Vertex;
        };
        for x in 0..z {
            for d in 1..z {
                let c = (x + d / 2 + if d % 2 == 0 { half } else { 0 }) % z;
                set(x + 1, (x + d) % z + 1, c);
            }
            set(m, x + 1, x);
            set(x + 1, m, (x + half) % z);
        }
        Colouring { m, colour, succ }
    }

    #[inline]
    fn of(&self, tail: Vertex, head: Vertex) -> usize {
        self.colour[tail as usize * (self.m + 1) + head as usize] as usize
    }

    #[inline]
    fn next(&self, c: usize, v: Vertex) -> Vertex {
        self.succ[c * (self.m + 1) + v as usize]
    }
}

fn spliced(n: u32, seed: u64, opts: &DkOptions) -> Result<Vec<HamCycle>, HamError> {
    let colouring = Colouring::new(n - 1);
    let threads = opts.threads.max(1) as u32;
    let mut deepest = 0;
    let mut next = 0u32;
    while next < opts.restart_cap {
        let round: Vec<u32> = (next..opts.restart_cap.min(next + threads)).collect();
        next += round.len() as u32;
        let budget = opts.nodes_per_restart;
        let results: Vec<Result<Vec<Vertex>, usize>> = if round.len() == 1 {
            vec![rainbow_path(&colouring, seed, round[0], budget)]
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = round
                    .iter()
                    .map(|&idx| {
                        let colouring = &colouring;
                        s.spawn(move || rainbow_path(colouring, seed, idx, budget))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("search thread panicked")).collect()
            })
        };
        // lowest restart index wins, so the result is independent of threads
        for r in results {
            match r {
                Ok(path) => return Ok(splice(&colouring, n, &path)),
                Err(depth) => deepest = deepest.max(depth),
            }
        }
    }
    Err(HamError::SearchExhausted { n, restarts: opts.restart_cap, longest_path: deepest as u32 })
}

/// Each path arc `x -> y` is replaced in its colour class by `x -> n -> y`;
/// the path closed through `n` is the last cycle.
fn splice(colouring: &Colouring, n: u32, path: &[Vertex]) -> Vec<HamCycle> {
    let mut out = Vec::with_capacity(n as usize - 1);
    for w in path.windows(2) {
        let (x, y) = (w[0], w[1]);
        let c = colouring.of(x, y);
        let mut order = Vec::with_capacity(n as usize);
        let mut v = y;
        while v != x {
            order.push(v);
            v = colouring.next(c, v);
        }
        order.push(x);
        order.push(n);
        out.push(HamCycle::directed(order));
    }
    let mut last = vec![n];
    last.extend_from_slice(path);
    out.push(HamCycle::directed(last));
    out
}

/// Remaining-vertex count below which dead ends are checked for at every node.
const LOOKAHEAD: usize = 40;

/// One restart of the search for a Hamilton path of `DK_m` using every colour
/// exactly once: depth-first, trying first the vertex with the fewest onward
/// moves and then the colour with the fewest remaining alternatives, with a
/// node budget. Returns the path or the longest prefix reached.
fn rainbow_path(colouring: &Colouring, seed: u64, restart: u32, budget: u64) -> Result<Vec<Vertex>, usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    let m = colouring.m;
    let start = rng.gen_range(1..=m as Vertex);
    let mut s = PathSearch {
        col: colouring,
        visited: vec![false; m + 1],
        used: vec![false; m - 1],
        path: Vec::with_capacity(m),
        nodes: 0,
        budget,
        deepest: 0,
        rng,
    };
    s.visited[start as usize] = true;
    s.path.push(start);
    if s.extend() {
        Ok(s.path)
    } else {
        Err(s.deepest)
    }
}

struct PathSearch<'a> {
    col: &'a Colouring,
    visited: Vec<bool>,
    used: Vec<bool>,
    path: Vec<Vertex>,
    nodes: u64,
    budget: u64,
    deepest: usize,
    rng: ChaCha8Rng,
}

impl PathSearch<'_> {
    fn open(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.col.m as Vertex).filter(|&v| !self.visited[v as usize])
    }

    fn extend(&mut self) -> bool {
        let m = self.col.m;
        if self.path.len() == m {
            return true;
        }
        self.nodes += 1;
        self.deepest = self.deepest.max(self.path.len());
        if self.nodes > self.budget || !self.feasible() {
            return false;
        }
        let cur = *self.path.last().expect("non-empty path");
        let last_step = self.path.len() + 1 == m;
        let mut candidates = Vec::new();
        let options: Vec<Vertex> = self.open().filter(|&u| !self.used[self.col.of(cur, u)]).collect();
        for u in options {
            let c = self.col.of(cur, u);
            self.visited[u as usize] = true;
            self.used[c] = true;
            let onward = self.open().filter(|&w| !self.used[self.col.of(u, w)]).count();
            self.visited[u as usize] = false;
            self.used[c] = false;
            if onward == 0 && !last_step {
                continue;
            }
            let alternatives = std::iter::once(cur)
                .chain(self.open())
                .filter(|&w| w != u)
                .filter(|&w| {
                    let h = self.col.next(c, w);
                    h != u && !self.visited[h as usize]
                })
                .count();
            candidates.push((onward, alternatives, self.rng.gen::<u64>(), u));
        }
        candidates.sort_unstable();
        for (_, _, _, u) in candidates {
            let c = self.col.of(cur, u);
            self.visited[u as usize] = true;
            self.used[c] = true;
            self.path.push(u);
            if self.extend() {
                return true;
            }
            self.path.pop();
            self.visited[u as usize] = false;
            self.used[c] = false;
            if self.nodes > self.budget {
                return false;
            }
        }
        false
    }

    /// Near the end: every unused colour still needs an available arc, every
    /// open vertex an entering arc, and at most one open vertex may lack a
    /// leaving arc.
    fn feasible(&self) -> bool {
        let remaining = self.col.m - self.path.len();
        if remaining > LOOKAHEAD {
            return true;
        }
        let cur = *self.path.last().expect("non-empty path");
        let open: Vec<Vertex> = self.open().collect();
        let tails = || std::iter::once(cur).chain(open.iter().copied());
        for c in (0..self.col.m - 1).filter(|&c| !self.used[c]) {
            if !tails().any(|w| !self.visited[self.col.next(c, w) as usize]) {
                return false;
            }
        }
        let mut dead_ends = 0;
        for &v in &open {
            if !tails().any(|w| w != v && !self.used[self.col.of(w, v)]) {
                return false;
            }
            if !open.iter().any(|&w| w != v && !self.used[self.col.of(v, w)]) {
                dead_ends += 1;
                if dead_ends > 1 {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of the exhaustive search over `DK_n`.
#[derive(Debug, Clone)]
pub struct ExhaustiveOutcome {
    pub n: u32,
    /// Hamilton cycles tried.
    pub nodes: u64,
    pub decomposition: Option<HamDecomposition>,
}

/// Backtracking search for a Hamilton decomposition of `DK_n`, `2 <= n <= 7`.
///
/// At each level the lowest unused arc out of vertex 1 must lie on the next
/// cycle, and every Hamilton cycle through it is tried.
pub fn exhaustive_dk_search(n: u32) -> Result<ExhaustiveOutcome, HamError> {
    if !(2..=7).contains(&n) {
        return Err(HamError::OutOfRange(n, "exhaustive search supports 2 <= n <= 7"));
    }
    let full = (1u16 << n) - 1;
    let mut rem: Vec<u16> = (0..n).map(|v| full & !(1 << v)).collect();
    let mut search = Exhaustive { n: n as usize, nodes: 0, cycles: Vec::new(), path: Vec::new() };
    let found = search.level(&mut rem);
    let decomposition = found.then(|| {
        let cycles = search
            .cycles
            .iter()
            .map(|c| HamCycle::directed(c.iter().map(|&v| v as Vertex + 1).collect()))
            .collect();
        let mut d = HamDecomposition { n, kind: HamKind::CompleteDigraph, cycles, leftover: Vec::new(), seed: 0 };
        d.canonicalize();
        d
    });
    Ok(ExhaustiveOutcome { n, nodes: search.nodes, decomposition })
}

/// Runs the exhaustive search for `n` in {4, 6}; returns the node count of
/// the completed search.
pub fn prove_impossible_small(n: u32) -> Result<u64, HamError> {
    if n != 4 && n != 6 {
        return Err(HamError::OutOfRange(n, "only n = 4 and n = 6 are exceptional"));
    }
    let outcome = exhaustive_dk_search(n)?;
    match outcome.decomposition {
        Some(_) => Err(HamError::UnexpectedDecomposition(n)),
        None => Ok(outcome.nodes),
    }
}

struct Exhaustive {
    n: usize,
    nodes: u64,
    cycles: Vec<Vec<u8>>,
    path: Vec<u8>,
}

impl Exhaustive {
    fn level(&mut self, rem: &mut [u16]) -> bool {
        if rem[0] == 0 {
            return rem.iter().all(|&r| r == 0);
        }
        let h = rem[0].trailing_zeros() as u8;
        rem[0] &= !(1 << h);
        self.path.clear();
        self.path.extend([0, h]);
        let found = self.extend(rem, 1 | (1 << h));
        rem[0] |= 1 << h;
        found
    }

    fn extend(&mut self, rem: &mut [u16], visited: u16) -> bool {
        let cur = *self.path.last().expect("non-empty path") as usize;
        if self.path.len() == self.n {
            if rem[cur] & 1 == 0 {
                return false;
            }
            self.nodes += 1;
            rem[cur] &= !1;
            self.cycles.push(self.path.clone());
            let saved = std::mem::take(&mut self.path);
            if self.level(rem) {
                return true;
            }
            self.path = saved;
            self.cycles.pop();
            rem[cur] |= 1;
            return false;
        }
        let mut options = rem[cur] & !visited;
        while options != 0 {
            let v = options.trailing_zeros() as u8;
            options &= options - 1;
            rem[cur] &= !(1 << v);
            self.path.push(v);
            if self.extend(rem, visited | (1 << v)) {
                return true;
            }
            self.path.pop();
            rem[cur] |= 1 << v;
        }
        false
    }
}
