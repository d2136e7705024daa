//! End-to-end tests of the `tau3` binary: subcommands, output formats,
//! cache files, and the exit-code contract (0 success, 1 domain error,
//! 2 invariant alarm).

use std::path::PathBuf;
use std::process::{Command, Output};

use tau3_cli::format::{corpus_to_bytes, save_corpus};
use tau3_core::corpus::build_corpus;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tau3"))
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = bin();
    cmd.args(args).env_remove("TAU3_CACHE_DIR");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

/// A small corpus cache on disk for fast CLI calls.
fn small_corpus_file(dir: &tempfile::TempDir) -> PathBuf {
    let corpus = build_corpus(3, 2.0).unwrap();
    let path = dir.path().join("small.tau3corp");
    save_corpus(&corpus, &path).unwrap();
    path
}

#[test]
fn tau_single_prime() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus_file(&dir);
    let out = run(
        &["tau", "--prime", "59", "--corpus", corpus.to_str().unwrap()],
        &[],
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("0.093733"), "{stdout}");
    assert!(stdout.contains("x^3 - x^2 + 1"), "{stdout}");
}

#[test]
fn tau_rejects_bad_primes_with_domain_exit() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus_file(&dir);
    for bad in ["4", "3", "2", "1"] {
        let out = run(
            &["tau", "--prime", bad, "--corpus", corpus.to_str().unwrap()],
            &[],
        );
        assert_eq!(out.status.code(), Some(1), "p = {bad}");
    }
}

#[test]
fn exhausted_corpus_is_an_alarm() {
    // The tiny corpus has no complete splitter at p = 7: exit code 2.
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus_file(&dir);
    let out = run(
        &["tau", "--prime", "7", "--corpus", corpus.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("invariant alarm"), "{stderr}");
}

#[test]
fn corrupt_cache_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = build_corpus(3, 2.0).unwrap();
    let mut bytes = corpus_to_bytes(&corpus);
    let n = bytes.len();
    bytes[n - 3] ^= 1;
    let path = dir.path().join("corrupt.tau3corp");
    std::fs::write(&path, bytes).unwrap();
    let out = run(
        &["tau", "--prime", "59", "--corpus", path.to_str().unwrap()],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("checksum"), "{stderr}");
}

#[test]
fn enumerate_writes_a_loadable_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tiny.tau3corp");
    let out = run(
        &[
            "enumerate",
            "--length-max",
            "3",
            "--measure-max",
            "2",
            "--out",
            path.to_str().unwrap(),
        ],
        &[],
    );
    assert!(out.status.success());
    let loaded = tau3_cli::format::load_corpus(&path).unwrap();
    assert_eq!(loaded.length_max, 3);
    assert!(loaded
        .entries
        .iter()
        .any(|e| e.poly.coeffs() == [1, -1, 0, 1]));
}

#[test]
fn primitive_only_filter_drops_multiples() {
    let dir = tempfile::tempdir().unwrap();
    let all = dir.path().join("all.tau3corp");
    let prim = dir.path().join("prim.tau3corp");
    // Measure bound 3 admits imprimitive entries like 2x^3 - 2x - 2.
    let base = ["enumerate", "--length-max", "6", "--measure-max", "3", "--out"];
    let mut args = base.to_vec();
    args.push(all.to_str().unwrap());
    let out = run(&args, &[]);
    assert!(out.status.success());
    let mut args = base.to_vec();
    args.push(prim.to_str().unwrap());
    args.push("--primitive-only");
    let out = run(&args, &[]);
    assert!(out.status.success());
    let all = tau3_cli::format::load_corpus(&all).unwrap();
    let prim = tau3_cli::format::load_corpus(&prim).unwrap();
    assert!(all.entries.iter().any(|e| e.poly.content() > 1));
    assert!(prim.entries.iter().all(|e| e.poly.content() == 1));
    assert!(prim.len() < all.len());
    // Every primitive entry survives, in the same relative order.
    let expected: Vec<_> = all
        .entries
        .iter()
        .filter(|e| e.poly.content() == 1)
        .map(|e| e.poly)
        .collect();
    let got: Vec<_> = prim.entries.iter().map(|e| e.poly).collect();
    assert_eq!(expected, got);
}

#[test]
fn table_formats_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus_file(&dir);
    let c = corpus.to_str().unwrap();
    for format in ["csv", "json", "markdown"] {
        let one = run(
            &[
                "tau",
                "--prime-range",
                "59..60",
                "--corpus",
                c,
                "--format",
                format,
            ],
            &[],
        );
        let two = run(
            &[
                "tau",
                "--prime-range",
                "59..60",
                "--corpus",
                c,
                "--format",
                format,
            ],
            &[],
        );
        assert!(one.status.success());
        assert_eq!(one.stdout, two.stdout);
    }
    let json = run(
        &[
            "tau",
            "--prime-range",
            "59..60",
            "--corpus",
            c,
            "--format",
            "json",
        ],
        &[],
    );
    let stdout = String::from_utf8(json.stdout).unwrap();
    assert!(stdout.contains("\"p\": 59"), "{stdout}");
    assert!(stdout.contains("\"tau\": \"0.093733\""), "{stdout}");
}

#[test]
fn bad_range_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = small_corpus_file(&dir);
    let out = run(
        &[
            "table",
            "--range",
            "banana",
            "--corpus",
            corpus.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cache_dir_round_trip() {
    // With TAU3_CACHE_DIR set and a prebuilt cache under the canonical
    // name, the binary must use it rather than rebuilding.
    let dir = tempfile::tempdir().unwrap();
    let corpus = build_corpus(3, 2.0).unwrap();
    // Masquerade as the canonical cache; loading trusts the header fields.
    let path = dir.path().join("corpus-L68-M8.5.tau3corp");
    save_corpus(&corpus, &path).unwrap();
    let out = run(
        &["tau", "--prime", "59"],
        &[("TAU3_CACHE_DIR", dir.path().to_str().unwrap())],
    );
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("0.093733"), "{stdout}");
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"], &[]);
    assert!(out.status.success());
    let unknown = run(&["frobnicate"], &[]);
    assert_eq!(unknown.status.code(), Some(1));
}
