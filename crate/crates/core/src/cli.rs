//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed check or construction error, 2
//! divisibility violated, 3 no perfect matching (Hall violator on stderr), 4
//! size cap exceeded, 5 malformed input or arguments.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

use crate::berge_construct::{
    choose_default_m, decompose_with, proven_range_warning, ConstructError, DecomposeOptions, DEFAULT_CAP,
};
use crate::combinatorics::{kk_check, lower_shadow, upper_shadow, Family, KkCheckMode};
use crate::ham_decomp::{dk_decompose_cached, walecki_decompose, walecki_even_decompose, DkOptions};
use crate::verify::{check_hamdec, check_hbd, CertificateError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_DIVISIBILITY: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;
pub const EXIT_SIZE_CAP: i32 = 4;
pub const EXIT_PARSE: i32 = 5;

/// Directory for cached `DK_n` decompositions.
pub const CACHE_ENV: &str = "BERGE_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "berge", version, about = "Hamilton Berge cycle decompositions of complete uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose K_n^(k) - M into Hamilton Berge cycles and write an HBD file.
    Decompose(DecomposeArgs),
    /// Check an HBD or HAMDEC file.
    Verify {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
    },
    /// Print the lower or upper shadow of a family.
    Shadow {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum)]
        dir: ShadowDir,
        #[arg(long, value_name = "PATH")]
        family: PathBuf,
    },
    /// Check the Kruskal–Katona bounds against exact shadows.
    KkCheck {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Enumerate all families per size, sampling 10^5 where there are more.
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Random families per size.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a Hamilton decomposition of K_n, K_n minus a perfect matching, or DK_n.
    Ham {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        directed: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Time each stage of a decomposition.
    Bench {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    /// File of removed k-sets, one `1-4-7` set per line.
    #[arg(long, value_name = "PATH", conflicts_with = "auto_m")]
    m_file: Option<PathBuf>,
    /// Remove the default admissible M instead of none.
    #[arg(long)]
    auto_m: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Do not warn when (n, k) is outside the proven range.
    #[arg(long)]
    force_range: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShadowDir {
    Lower,
    Upper,
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
        }
    };
    match cli.command {
        Command::Decompose(a) => cmd_decompose(&a),
        Command::Verify { input } => cmd_verify(&input),
        Command::Shadow { n, k, level, dir, family } => cmd_shadow(n, k, level, dir, &family),
        Command::KkCheck { n, k, exhaustive, samples, seed } => cmd_kk_check(n, k, exhaustive, samples, seed),
        Command::Ham { n, directed, seed, out, threads } => cmd_ham(n, directed, seed, out.as_deref(), threads),
        Command::Bench { n, k, seed, cap, threads } => cmd_bench(n, k, seed, cap, threads),
    }
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn emit(out: Option<&Path>, text: &str) -> i32 {
    let result = match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            EXIT_FAIL
        }
    }
}

fn read(path: &Path) -> Result<String, i32> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_PARSE
    })
}

fn cmd_decompose(a: &DecomposeArgs) -> i32 {
    let m = if let Some(path) = &a.m_file {
        let text = match read(path) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match Family::parse(&text, a.n, a.k) {
            Ok(f) => f,
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_PARSE;
            }
        }
    } else if a.auto_m {
        match choose_default_m(a.n, a.k) {
            Ok(f) => f,
            Err(e) => return report_construct_error(&e),
        }
    } else {
        Family::empty(a.n, a.k)
    };
    if !a.force_range && a.k >= 3 && a.k < a.n {
        if let Some(w) = proven_range_warning(a.n, a.k, &m) {
            eprintln!("warning: {w}");
        }
    }
    let opts = DecomposeOptions { seed: a.seed, cap: a.cap, threads: a.threads, cache_dir: cache_dir(), ..Default::default() };
    match decompose_with(a.n, a.k, Some(&m), &opts) {
        Ok((d, _)) => {
            let code = emit(a.out.as_deref(), &d.to_file_string());
            if code == EXIT_OK {
                eprintln!("{} cycles, case {}, verified", d.cycles.len(), d.case);
            }
            code
        }
        Err(e) => report_construct_error(&e),
    }
}

fn report_construct_error(e: &ConstructError) -> i32 {
    eprintln!("error: {e}");
    match e {
        ConstructError::Divisibility { .. } | ConstructError::MTooLarge { .. } => {
            if matches!(e, ConstructError::Divisibility { .. }) {
                eprintln!("hint: pass --auto-m or an --m-file of that size");
            }
            EXIT_DIVISIBILITY
        }
        ConstructError::MatchingInfeasible { violator, neighbourhood } => {
            let mut err = io::stderr().lock();
            let _ = writeln!(err, "hall violator: |S| = {} > |N(S)| = {neighbourhood}", violator.len());
            for s in violator {
                let _ = writeln!(err, "S {s}");
            }
            EXIT_INFEASIBLE
        }
        ConstructError::SizeCap { .. } => EXIT_SIZE_CAP,
        ConstructError::Range { .. } | ConstructError::FamilyShape { .. } | ConstructError::Comb(_) => EXIT_PARSE,
        _ => EXIT_FAIL,
    }
}

fn cmd_verify(input: &Path) -> i32 {
    let text = match read(input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let outcome = if text.starts_with("HAMDEC") {
        check_hamdec(&text).map(|s| format!("OK HAMDEC n={} kind={} cycles={}", s.n, s.kind, s.cycles))
    } else {
        check_hbd(&text).map(|d| format!("OK HBD n={} k={} msize={} cycles={}", d.n, d.k, d.m_sets.len(), d.cycles.len()))
    };
    match outcome {
        Ok(line) => {
            println!("{line}");
            EXIT_OK
        }
        Err(e @ CertificateError::Parse { .. }) => {
            eprintln!("parse error: {e}");
            EXIT_PARSE
        }
        Err(e) => {
            eprintln!("FAIL: {e}");
            EXIT_FAIL
        }
    }
}

fn cmd_shadow(n: u32, k: u32, level: u32, dir: ShadowDir, family: &Path) -> i32 {
    let text = match read(family) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let f = match Family::parse(&text, n, k) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}: {e}", family.display());
            return EXIT_PARSE;
        }
    };
    let shadow = match dir {
        ShadowDir::Lower => lower_shadow(&f, level),
        ShadowDir::Upper => upper_shadow(&f, level),
    };
    match shadow {
        Ok(s) => emit(None, &format!("{}# size {}\n", s.to_file_string(), s.len())),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_PARSE
        }
    }
}

fn cmd_kk_check(n: u32, k: u32, exhaustive: bool, samples: Option<u64>, seed: u64) -> i32 {
    let mode = match (exhaustive, samples) {
        (_, Some(samples)) => KkCheckMode::Sampled { samples, seed },
        _ => KkCheckMode::Exhaustive { cap: 100_000, seed },
    };
    let report = match kk_check(n, k, mode) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_PARSE;
        }
    };
    let mut out = String::new();
    out.push_str(&format!("kk-check n={n} k={k} families={}\n", report.families_examined));
    for (check, count) in &report.tallies {
        out.push_str(&format!("{check}: {count} comparisons\n"));
    }
    for f in &report.findings {
        out.push_str(&format!("VIOLATION {}: size {} observed {} < required {}\n", f.check, f.size, f.observed, f.required));
    }
    out.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
    let code = emit(None, &out);
    if code != EXIT_OK {
        return code;
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn cmd_ham(n: u32, directed: bool, seed: u64, out: Option<&Path>, threads: usize) -> i32 {
    let d = if directed {
        let opts = DkOptions { threads, ..DkOptions::default() };
        dk_decompose_cached(n, seed, &opts, cache_dir().as_deref())
    } else if n % 2 == 1 {
        walecki_decompose(n)
    } else {
        walecki_even_decompose(n)
    };
    match d {
        Ok(d) => emit(out, &d.to_file_string()),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

fn cmd_bench(n: u32, k: u32, seed: u64, cap: u64, threads: usize) -> i32 {
    let m = match choose_default_m(n, k) {
        Ok(f) => f,
        Err(e) => return report_construct_error(&e),
    };
    let opts = DecomposeOptions { seed, cap, threads, cache_dir: cache_dir(), ..Default::default() };
    let (d, stats) = match decompose_with(n, k, Some(&m), &opts) {
        Ok(r) => r,
        Err(e) => return report_construct_error(&e),
    };
    let mut out = format!("bench n={n} k={k} seed={seed} threads={threads} case={}\n", d.case);
    out.push_str(&format!("{:<12} {:>12}\n", "stage", "seconds"));
    let mut total = 0.0;
    for (stage, t) in &stats.stages {
        total += t.as_secs_f64();
        out.push_str(&format!("{stage:<12} {:>12.6}\n", t.as_secs_f64()));
    }
    out.push_str(&format!("{:<12} {total:>12.6}\n", "total"));
    out.push_str(&format!("{:<12} {:>12}\n", "cycles", d.cycles.len()));
    out.push_str(&format!("{:<12} {:>12}\n", "left", stats.aux_left));
    out.push_str(&format!("{:<12} {:>12}\n", "right", stats.aux_right));
    out.push_str(&format!("{:<12} {:>12}\n", "edges", stats.aux_edges));
    out.push_str(&format!("{:<12} {:>12.1}\n", "graph_mib", stats.aux_memory_bytes as f64 / (1 << 20) as f64));
    emit(None, &out)
}
