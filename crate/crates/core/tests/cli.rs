use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn berge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_berge")).args(args).env_remove("BERGE_CACHE_DIR").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn decompose_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let path = dir.join(name);
    let mut full = vec!["decompose"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = berge(&full);
    (code(&o), fs::read_to_string(&path).unwrap_or_default())
}

#[test]
fn decompose_n9_k7() {
    let dir = tempfile::tempdir().unwrap();
    let (c, text) = decompose_to(dir.path(), "a.hbd", &["--n", "9", "--k", "7"]);
    assert_eq!(c, 0);
    assert!(text.lines().nth(1).unwrap().contains("cycles=4"));
    assert_eq!(text.lines().filter(|l| l.starts_with("C ")).count(), 4);
}

#[test]
fn divisibility_and_auto_m() {
    let o = berge(&["decompose", "--n", "8", "--k", "4"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("admissible |M| is 6"));
    let dir = tempfile::tempdir().unwrap();
    let (c, text) = decompose_to(dir.path(), "a.hbd", &["--n", "8", "--k", "4", "--auto-m"]);
    assert_eq!(c, 0);
    assert!(text.contains("msize=6"));
}

#[test]
fn m_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.txt");
    fs::write(&m, "# six sets\n1-2-3-4\n5-6-7-8\n1-3-5-7\n2-4-6-8\n1-2-7-8\n3-4-5-6\n").unwrap();
    let (c, text) = decompose_to(dir.path(), "a.hbd", &["--n", "8", "--k", "4", "--m-file", m.to_str().unwrap()]);
    assert_eq!(c, 0);
    assert!(text.contains("M 1-2-3-4 "));
    fs::write(&m, "1-2-3-4\n").unwrap();
    let o = berge(&["decompose", "--n", "8", "--k", "4", "--m-file", m.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    fs::write(&m, "1-2-3-x\n").unwrap();
    let o = berge(&["decompose", "--n", "8", "--k", "4", "--m-file", m.to_str().unwrap()]);
    assert_eq!(code(&o), 5);
}

#[test]
fn single_cycle_file() {
    let o = berge(&["decompose", "--n", "5", "--k", "4", "--force-range"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("HBD v1\nn=5 k=4 msize=0 cycles=1 seed=0 case=3a\n"));
    assert!(o.stderr.is_empty() || !String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn range_warning_goes_to_stderr() {
    let o = berge(&["decompose", "--n", "9", "--k", "7"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = berge(&["decompose", "--n", "21", "--k", "5"]);
    assert!(!String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn size_cap() {
    let o = berge(&["decompose", "--n", "21", "--k", "5", "--cap", "1000"]);
    assert_eq!(code(&o), 4);
    let o = berge(&["decompose", "--n", "40", "--k", "20", "--auto-m"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn verify_round_trip_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let (c, text) = decompose_to(dir.path(), "a.hbd", &["--n", "12", "--k", "5", "--auto-m"]);
    assert_eq!(c, 0);
    let path = dir.path().join("a.hbd");
    assert_eq!(code(&berge(&["verify", "--in", path.to_str().unwrap()])), 0);

    // swap two cycle lines: still valid
    let mut lines: Vec<&str> = text.lines().collect();
    let first_c = lines.iter().position(|l| l.starts_with("C ")).unwrap();
    lines.swap(first_c, first_c + 1);
    let swapped = dir.path().join("swapped.hbd");
    fs::write(&swapped, lines.join("\n") + "\n").unwrap();
    assert_eq!(code(&berge(&["verify", "--in", swapped.to_str().unwrap()])), 0);

    // drop a cycle
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    let corrupt = dir.path().join("corrupt.hbd");
    fs::write(&corrupt, lines.join("\n") + "\n").unwrap();
    let o = berge(&["verify", "--in", corrupt.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL"));

    let empty = dir.path().join("empty.hbd");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&berge(&["verify", "--in", empty.to_str().unwrap()])), 5);
    assert_eq!(code(&berge(&["verify", "--in", dir.path().join("missing").to_str().unwrap()])), 5);
}

#[test]
fn shadow_of_single_triple() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    fs::write(&f, "1-2-3\n").unwrap();
    let o = berge(&["shadow", "--n", "5", "--k", "3", "--level", "1", "--dir", "lower", "--family", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1-2\n1-3\n2-3\n# size 3\n");
    let o = berge(&["shadow", "--n", "4", "--k", "3", "--level", "1", "--dir", "upper", "--family", f.to_str().unwrap()]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1-2-3-4\n# size 1\n");
    let o = berge(&["shadow", "--n", "5", "--k", "3", "--level", "4", "--dir", "lower", "--family", f.to_str().unwrap()]);
    assert_eq!(code(&o), 5);
}

#[test]
fn kk_check_exhaustive() {
    let o = berge(&["kk-check", "--n", "7", "--k", "3", "--exhaustive"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8(o.stdout).unwrap().ends_with("PASS\n"));
}

#[test]
fn ham_outputs() {
    let o = berge(&["ham", "--n", "4", "--directed"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Tillson"));
    let dir = tempfile::tempdir().unwrap();
    for (n, directed) in [(11, false), (12, false), (10, true)] {
        let path = dir.path().join(format!("h{n}.hamdec"));
        let ns = n.to_string();
        let mut args = vec!["ham", "--n", &ns, "--out", path.to_str().unwrap()];
        if directed {
            args.push("--directed");
        }
        assert_eq!(code(&berge(&args)), 0);
        assert_eq!(code(&berge(&["verify", "--in", path.to_str().unwrap()])), 0);
    }
}

#[test]
fn ham_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_berge"))
            .args(["ham", "--n", "12", "--directed", "--seed", "5"])
            .env("BERGE_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert!(dir.path().join("dk_n12_s5.hamdec").exists());
    assert_eq!(first.stdout, run().stdout);
}

#[test]
fn byte_identical_reruns_and_threads() {
    let a = berge(&["decompose", "--n", "22", "--k", "5", "--auto-m", "--seed", "9"]);
    let b = berge(&["decompose", "--n", "22", "--k", "5", "--auto-m", "--seed", "9"]);
    let c = berge(&["decompose", "--n", "22", "--k", "5", "--auto-m", "--seed", "9", "--threads", "3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn bench_table() {
    let o = berge(&["bench", "--n", "12", "--k", "4"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    for stage in ["graph", "matching", "assembly", "verify", "edges", "graph_mib"] {
        assert!(text.lines().any(|l| l.starts_with(stage)), "{stage} missing:\n{text}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&berge(&["--help"])), 0);
    assert_eq!(code(&berge(&["decompose"])), 5);
}
