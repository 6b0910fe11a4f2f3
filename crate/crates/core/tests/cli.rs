use std::path::Path;
use std::process::{Command, Output};

use gbcat::cli::format::{self, Value};
use gbcat::cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED};
use gbcat::lattice::GramMatrix;
use gbcat::moddata::ModularData;
use tempfile::TempDir;

fn gbcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbcat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn constructed(dir: &TempDir, name: &str, gram: &str) -> String {
    let b = write(dir, &format!("{name}.txt"), gram);
    let out = dir.path().join(format!("{name}.md"));
    let o = gbcat(&["construct", "--b", &b, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    out.to_str().unwrap().to_string()
}

#[test]
fn construct_matches_library() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "z3.txt", "# Z/3\n2 1\n1 2\n");
    let o = gbcat(&["construct", "--b", &b]);
    assert_eq!(o.status.code(), Some(0));
    let md = ModularData::from_lattice(&GramMatrix::new(vec![vec![2, 1], vec![1, 2]]).unwrap()).unwrap();
    assert_eq!(stdout(&o), format::serialize(&Value::Modular(md)));
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let semion = constructed(&dir, "semion", "2\n");
    let o = gbcat(&["verify", "--data", &semion]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("result: pass (9 checks)\n"));

    let bad = write(
        &dir,
        "bad.md",
        "kind: modular_data\nrank: 2\ntwists: e(0/1), e(0/1)\ns_tilde: 1, 1\ns_tilde: 1, -1\n",
    );
    let o = gbcat(&["verify", "--data", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL  st_cubed"));
    assert!(text.ends_with("result: fail (gauss_identity, st_cubed, st_inverse_cubed)\n"));
}

#[test]
fn parse_and_validation_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let broken = write(
        &dir,
        "broken.md",
        "kind: modular_data\nrank: 2\ntwists: e(0/1), e(1/3\ns_tilde: 1, 1\ns_tilde: 1, -1\n",
    );
    let o = gbcat(&["verify", "--data", &broken]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("broken.md:3:22: expected ')'"), "{}", stderr(&o));

    let asym = write(
        &dir,
        "asym.md",
        "kind: modular_data\nrank: 2\ntwists: e(0/1), e(1/4)\ns_tilde: 1, 2\ns_tilde: 1, -1\n",
    );
    let o = gbcat(&["verify", "--data", &asym]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid data"));

    let odd = write(&dir, "odd.txt", "1 0\n0 2\n");
    assert_eq!(gbcat(&["construct", "--b", &odd]).status.code(), Some(2));
    assert_eq!(gbcat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gbcat(&["verify"]).status.code(), Some(2));
}

#[test]
fn semion_hopf_link_is_minus_one() {
    let dir = TempDir::new().unwrap();
    let semion = constructed(&dir, "semion", "2\n");
    let hopf = write(&dir, "hopf.txt", "0 1\n1 0\n");
    let o = gbcat(&["link", "--data", &semion, "--linking", &hopf, "--colors", "1,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "-1\n");

    let twist = write(&dir, "unknot.txt", "1\n");
    let o = gbcat(&["link", "--data", &semion, "--linking", &twist, "--colors", "1"]);
    assert_eq!(stdout(&o), "e(1/4)\n");

    let doc = write(&dir, "hopf.link", "kind: link\nlinking: 0 1\nlinking: 1 0\ncolors: 1, 0\n");
    let o = gbcat(&["link", "--data", &semion, "--linking", &doc]);
    assert_eq!(stdout(&o), "1\n");

    let o = gbcat(&["link", "--data", &semion, "--linking", &hopf, "--colors", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = gbcat(&["link", "--data", &semion, "--linking", &hopf, "--colors", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn link_needs_lattice_data() {
    let dir = TempDir::new().unwrap();
    let generic = write(
        &dir,
        "generic.md",
        "kind: modular_data\nrank: 2\ntwists: e(0/1), e(1/4)\ns_tilde: 1, 1\ns_tilde: 1, -1\n",
    );
    let hopf = write(&dir, "hopf.txt", "0 1\n1 0\n");
    let o = gbcat(&["link", "--data", &generic, "--linking", &hopf, "--colors", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fusion_table() {
    let dir = TempDir::new().unwrap();
    let z3 = constructed(&dir, "z3", "2 1\n1 2\n");
    let o = gbcat(&["fusion", "--data", &z3, "--i", "1", "--j", "2"]);
    assert_eq!(stdout(&o), "outcome\tmultiplicity\tprobability\n0\t1\t1\n");
    let o = gbcat(&["fusion", "--data", &z3, "--i", "1", "--j", "3"]);
    assert_eq!(o.status.code(), Some(2));

    let fib = write(
        &dir,
        "fib.md",
        "kind: modular_data\nrank: 2\ntwists: e(0/1), e(2/5)\n\
         s_tilde: 1, 1+e(1/5)+e(4/5)\ns_tilde: 1+e(1/5)+e(4/5), -1\n",
    );
    let o = gbcat(&["fusion", "--data", &fib, "--i", "1", "--j", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn enumerate_table() {
    let o = gbcat(&["enumerate", "--max-dim", "1", "--max-entry", "4"]);
    assert_eq!(
        stdout(&o),
        "rank\tclasses\twitness\ttwists\n\
         2\t2\t[[2]]\te(0/1) e(1/4)\n\
         2\t2\t[[-2]]\te(0/1) e(3/4)\n\
         4\t2\t[[4]]\te(0/1) e(1/8) e(1/8) e(1/2)\n\
         4\t2\t[[-4]]\te(0/1) e(1/2) e(7/8) e(7/8)\n\
         total\t4\tfrom 4 matrices\n"
    );
    let o = gbcat(&["enumerate", "--max-dim", "1", "--max-entry", "4", "--max-rank", "2"]);
    assert!(stdout(&o).ends_with("total\t2\tfrom 2 matrices\n"));
    let o = gbcat(&["enumerate", "--max-dim", "1", "--max-entry", "10", "--max-rank", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rank 10"), "{}", stderr(&o));
    assert_eq!(gbcat(&["enumerate", "--max-dim", "0", "--max-entry", "2"]).status.code(), Some(2));
}

#[test]
fn show_summary() {
    let dir = TempDir::new().unwrap();
    let toric = constructed(&dir, "toric", "0 2\n2 0\n");
    let o = gbcat(&["show", "--data", &toric, "--approx"]);
    let text = stdout(&o);
    assert!(text.starts_with("rank: 4\ntwists: e(0/1), e(0/1), e(0/1), e(1/2)\n"));
    assert!(text.contains("D^2: 4\np+: 2\np-: 2\nduals: 0, 1, 2, 3\n"));
    assert!(text.contains("lattice: [[0,2],[2,0]]\n"));
    assert!(text.contains("  p+ = 2.000000+0.000000i\n"));
    assert!(!text.contains("-0.000000"));
}

#[test]
fn in_process_entry_point() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    assert_eq!(run(["gbcat", "--help"], &mut out, &mut err), EXIT_OK);
    assert!(String::from_utf8(out).unwrap().contains("construct"));

    let dir = TempDir::new().unwrap();
    let semion = constructed(&dir, "semion", "2\n");
    let bad = write(&dir, "bad.md", "kind: modular_data\nrank: 1\ntwists: e(1/2)\ns_tilde: 1\n");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["gbcat", "verify", "--data", &semion], &mut out, &mut err), EXIT_OK);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["gbcat", "verify", "--data", &bad], &mut out, &mut err), EXIT_USAGE);
    assert!(String::from_utf8(err).unwrap().starts_with("error: "));
    assert_eq!(EXIT_VERIFICATION_FAILED, 1);
    assert!(Path::new(&semion).exists());
}
