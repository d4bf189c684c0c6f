use std::path::Path;
use std::process::{Command, Output};

use magicstar_core::StructureConstants;

fn magicstar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magicstar")).args(args).output().expect("spawn magicstar")
}

fn magicstar_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magicstar"))
        .env("MAGICSTAR_THREADS", threads)
        .args(args)
        .output()
        .expect("spawn magicstar")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read(p: &Path) -> Vec<u8> {
    std::fs::read(p).unwrap()
}

#[test]
fn roots_e8_level_one() {
    let o = magicstar(&["roots", "--algebra", "e8", "--level", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 241);
}

#[test]
fn roots_f4_level_two_matches_closed_form() {
    let o = magicstar(&["roots", "--algebra", "f4", "--level", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 16 + 112 + 256);
}

#[test]
fn capacity_and_bad_arguments_exit_two() {
    assert_eq!(magicstar(&["roots", "--algebra", "e8", "--level", "99"]).status.code(), Some(2));
    assert_eq!(magicstar(&["roots", "--algebra", "e9"]).status.code(), Some(2));
    assert_eq!(magicstar(&["roots", "--algebra", "e8", "--level", "0"]).status.code(), Some(2));
    assert_eq!(magicstar(&["verify", "--algebra", "e8", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(magicstar(&["star", "--algebra", "g2", "--axes", "456"]).status.code(), Some(2));
}

#[test]
fn io_errors_exit_three() {
    let o = magicstar(&["roots", "--algebra", "g2", "--out", "/nonexistent-dir/roots.tsv"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn brackets_rejects_f4() {
    let o = magicstar(&["brackets", "--algebra", "f4", "--level", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of scope"));
}

#[test]
fn brackets_e6_header_and_e8_round_trip() {
    let o = magicstar(&["brackets", "--algebra", "e6", "--level", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("#algebra=e6 n=1 dim=78\n"));

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("e8.txt");
    let o = magicstar(&["brackets", "--algebra", "e8", "--level", "2", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = read(&p);
    let sc = StructureConstants::read(&text[..]).unwrap();
    assert_eq!(sc.to_text().as_bytes(), &text[..]);
}

#[test]
fn star_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("e8.svg");
    let o = magicstar(&["star", "--algebra", "e8", "--level", "1", "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(read(&svg)).unwrap();
    assert_eq!(text.matches("<circle").count(), 13);

    let o = magicstar(&["star", "--algebra", "e6", "--level", "2"]);
    let tsv = stdout(&o);
    // N = 12: center 2·6·5 + 2^7, tips 2·12−11 + 2^6
    assert!(tsv.lines().any(|l| l.starts_with("0\t0\t60\t128\t")));
    assert!(tsv.lines().any(|l| l.starts_with("1\t1\t13\t64\t")));

    let o = magicstar(&["star", "--algebra", "e8", "--level", "2", "--axes", "456"]);
    let tsv = stdout(&o);
    // e6 sub-star at N = 12: center 2·6·5 + 2^7, tips 2·12−11 + 2^6
    assert!(tsv.lines().any(|l| l.starts_with("0\t0\t60\t128\t")));
    assert!(tsv.lines().any(|l| l.starts_with("-1\t-1\t13\t64\t")));
}

#[test]
fn verify_level_one_all_suites() {
    let o = magicstar(&["verify", "--algebra", "e8", "--level", "1", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("[PASS]").count(), 10);
}

#[test]
fn verify_derivations_reports_expected_violations() {
    let o = magicstar(&["verify", "--algebra", "e8", "--level", "2", "--suite", "derivations"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("expected: 2048 of 2048"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn sampled_verify_is_deterministic() {
    let args = ["verify", "--suite", "weyl", "--algebra", "e7", "--level", "3", "--mode", "sampled", "--samples", "200000", "--seed", "7"];
    let a = magicstar_threads("1", &args);
    let b = magicstar_threads("2", &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed=7"));
}

#[test]
fn outputs_are_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, alg, ext) in [("roots", "e8", "tsv"), ("brackets", "e7", "txt"), ("star", "e8", "svg")] {
        let p1 = dir.path().join(format!("{cmd}1.{ext}"));
        let p2 = dir.path().join(format!("{cmd}2.{ext}"));
        let base = [cmd, "--algebra", alg, "--level", "2", "--out"];
        let a = magicstar_threads("1", &[&base[..], &[p1.to_str().unwrap()]].concat());
        let b = magicstar_threads("3", &[&base[..], &[p2.to_str().unwrap()]].concat());
        assert_eq!((a.status.code(), b.status.code()), (Some(0), Some(0)));
        assert_eq!(read(&p1), read(&p2), "{cmd}");
    }
}

#[test]
fn epsilon_by_index_and_by_coordinates_agree() {
    let by_index = magicstar(&["epsilon", "--algebra", "e8", "--level", "1", "--pair", "3,7"]);
    assert_eq!(by_index.status.code(), Some(0));
    let roots = stdout(&magicstar(&["roots", "--algebra", "e8", "--level", "1"]));
    let coords = |i: usize| {
        let line = roots.lines().nth(i + 1).unwrap();
        line.split('\t').nth(2).unwrap().replace(' ', ",")
    };
    let pair = format!("{};{}", coords(3), coords(7));
    let by_coords = magicstar(&["epsilon", "--algebra", "e8", "--level", "1", "--pair", &pair]);
    assert_eq!(by_coords.status.code(), Some(0), "{}", String::from_utf8_lossy(&by_coords.stderr));
    assert_eq!(by_index.stdout, by_coords.stdout);
    assert_eq!(magicstar(&["epsilon", "--algebra", "e8", "--pair", "3"]).status.code(), Some(2));
    assert_eq!(magicstar(&["epsilon", "--algebra", "e8", "--pair", "3,999"]).status.code(), Some(2));
}
