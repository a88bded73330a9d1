use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use achow::corpus;
use achow::cycles::io::parse_cycle;
use achow::mixedcx::io::print_complex;
use achow::mixedcx::span_builder;
use tempfile::TempDir;

fn achow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_achow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const C2: &str = "cycle
vars: a b1 b2
param: s
ring: 2
slots: 2
+1 (1/a; s, (b1*s - b1*b2)/(s - b1*b2))
";

const P: &str = "cycle\nvars: x t1\nring: 2\nslots: 1\n+1 (x; t1)\n";
const Q: &str = "cycle\nvars: y s1\nring: 2\nslots: 1\n+1 (y; s1)\n";

#[test]
fn boundary_of_the_curve_is_three_points() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "c2.cyc", C2);
    let out = dir.path().join("out.cyc");
    let o = achow(&[
        "cycle",
        "boundary",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let got = parse_cycle(&fs::read_to_string(&out).unwrap()).unwrap();
    let want = parse_cycle(
        "cycle\nvars: a b1 b2\nring: 2\nslots: 1\n+1 (1/a; b1)\n+1 (1/a; b2)\n-1 (1/a; b1*b2)\n",
    )
    .unwrap();
    assert_eq!(got, want);
}

#[test]
fn delta_and_wedge_of_points() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "p.cyc", P);
    let q = write(dir.path(), "q.cyc", Q);
    let o = achow(&["cycle", "delta", "--input", p.to_str().unwrap()]);
    assert!(o.status.success());
    let delta = parse_cycle(&stdout(&o)).unwrap();
    let want =
        parse_cycle("cycle\nvars: x t1\nring: 2\nslots: 2\n+1 (x; t1, 1/x)\n-1 (x; 1/x, t1)\n")
            .unwrap();
    assert_eq!(delta, want);

    let o = achow(&[
        "cycle",
        "wedge",
        "--input",
        p.to_str().unwrap(),
        "--input",
        q.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let wedge = parse_cycle(&stdout(&o)).unwrap();
    assert_eq!(wedge.num_terms(), 2);
    assert_eq!(wedge.n(), 2);
    assert!(stdout(&o).contains("ring: 2\n"));
}

#[test]
fn cyclic_shuffle_needs_two_inputs() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "p.cyc", P);
    let o = achow(&["cycle", "cyclic-shuffle", "--input", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("takes 2"));
}

#[test]
fn parse_errors_are_reported() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        dir.path(),
        "bad.cyc",
        "cycle\nvars: x\nslots: 1\n+1 (x; t1)\n",
    );
    let o = achow(&["cycle", "boundary", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.cyc"));
}

fn homology_table(o: &Output) -> Vec<Vec<usize>> {
    stdout(o)
        .lines()
        .skip(1)
        .take_while(|l| l.split('\t').count() == 4)
        .map(|l| l.split('\t').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn homology_of_identity_map_vanishes() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "id.mc",
        "mixed-complex\ndegree 0 1\ndegree 1 1\nb 1\n1\n",
    );
    let o = achow(&["homology", "--input", f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let table = homology_table(&o);
    assert_eq!(table.len(), 4);
    assert!(table.iter().all(|row| row[2] == 0 && row[3] == 0));
}

#[test]
fn homology_of_zero_differentials_echoes_dims() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "zero.mc",
        "mixed-complex\ndegree 0 2\ndegree 1 1\ndegree 2 3\n",
    );
    let o = achow(&["homology", "--input", f.to_str().unwrap()]);
    assert!(o.status.success());
    let hh: Vec<usize> = homology_table(&o).iter().map(|r| r[2]).collect();
    let hc: Vec<usize> = homology_table(&o).iter().map(|r| r[3]).collect();
    assert_eq!(hh, vec![2, 1, 3, 0, 0]);
    assert_eq!(hc, vec![2, 1, 5, 1, 5]);
}

#[test]
fn span_built_fixture_is_exact() {
    let dir = TempDir::new().unwrap();
    let (_, seeds) = corpus::span_seeds().swap_remove(2);
    let span = span_builder(&seeds, 4).unwrap();
    let f = write(dir.path(), "span.mc", &print_complex(&span.complex));
    let o = achow(&["homology", "--input", f.to_str().unwrap(), "--connes"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let interior: Vec<&str> = text
        .lines()
        .filter(|l| l.contains("verified=true"))
        .collect();
    assert!(!interior.is_empty());
    assert!(interior.iter().all(|l| l.contains("exact=true")));
    assert!(!text.contains("exact=false"));
}

#[test]
fn invalid_complex_names_the_degree() {
    let dir = TempDir::new().unwrap();
    let f = write(
        dir.path(),
        "bad.mc",
        "mixed-complex\ndegree 0 1\ndegree 1 1\ndegree 2 1\nb 1\n1\nb 2\n1\n",
    );
    let o = achow(&["homology", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("degree 2"), "{}", stderr(&o));
}

#[test]
fn verify_derivation_reports_sign() {
    let o = achow(&["verify", "derivation", "--r1", "1", "--r2", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ε = -1"));
}

#[test]
fn verify_shuffle_structured_records() {
    let o = achow(&[
        "verify",
        "shuffle",
        "--max",
        "4",
        "--format",
        "structured",
        "--jobs",
        "2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    // (r,s) with r+s ≤ 4, three lemmas and three bijections each.
    assert_eq!(lines.len(), 15 * 6);
    assert!(lines.iter().all(|l| l.split('\t').nth(1) == Some("pass")));
    let again = achow(&[
        "verify",
        "shuffle",
        "--max",
        "4",
        "--format",
        "structured",
        "--jobs",
        "1",
    ]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn verify_exits_nonzero_on_failure() {
    let o = achow(&["verify", "leibniz"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("first failure: [FAIL] Leibniz for ×_sh"));
}

#[test]
fn caps_outside_safe_range_are_rejected() {
    let o = achow(&["verify", "delta", "--max-n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("safe range"));
}
