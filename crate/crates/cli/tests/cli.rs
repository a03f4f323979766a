use std::path::PathBuf;

use diffterm::format::{parse_algebra, parse_table, print_algebra, print_table};
use diffterm::run;
use diffterm_core::{fixtures, FiniteAlgebra, OperationTable, TernaryTable};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("fixtures");
    p.push(name);
    p.display().to_string()
}

fn cli(args: &[&str]) -> diffterm::Outcome {
    run(std::iter::once("diffterm").chain(args.iter().copied()))
}

fn field<'a>(stdout: &'a str, key: &str) -> Vec<&'a str> {
    stdout
        .lines()
        .filter_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
        .collect()
}

fn without_elapsed(stdout: &str) -> String {
    stdout
        .lines()
        .filter(|l| !l.starts_with("elapsed_ms "))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn fixture_files_match_library_fixtures() {
    for (file, alg) in [
        ("ndt4.alg", fixtures::ndt4()),
        ("sl2.alg", fixtures::sl2()),
        ("mal2.alg", fixtures::mal2()),
        ("set2.alg", fixtures::set2()),
    ] {
        let parsed = parse_algebra(&std::fs::read_to_string(fixture(file)).unwrap()).unwrap();
        assert_eq!(parsed, alg, "{file}");
    }
    let ndt4 = parse_algebra(&std::fs::read_to_string(fixture("ndt4.alg")).unwrap()).unwrap();
    assert_eq!(ndt4.apply(0, &[0, 1]).unwrap(), 2);
}

#[test]
fn short_operation_is_a_positioned_error() {
    let e = parse_algebra("algebra X\nsize 2\nop f 2\n0 1 1\nend\n").unwrap_err();
    assert_eq!(e.to_string(), "line 3: expected 4 entries, found 3");
}

fn arb_algebra() -> impl Strategy<Value = FiniteAlgebra> {
    (1usize..=4)
        .prop_flat_map(|n| {
            let op = (0usize..=3).prop_flat_map(move |k| {
                proptest::collection::vec(0..n, n.pow(k as u32)).prop_map(move |e| (k, e))
            });
            (Just(n), proptest::collection::vec(op, 0..3))
        })
        .prop_map(|(n, ops)| {
            let ops = ops
                .into_iter()
                .enumerate()
                .map(|(i, (k, e))| OperationTable::new(format!("f{i}"), k, e))
                .collect();
            FiniteAlgebra::new("R", n, ops).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn algebra_round_trip(a in arb_algebra()) {
        prop_assert_eq!(parse_algebra(&print_algebra(&a)).unwrap(), a);
    }

    #[test]
    fn table_round_trip(n in 1usize..4, seed in proptest::collection::vec(0usize..64, 64)) {
        let t = TernaryTable::from_entries(n, seed.iter().take(n * n * n).map(|v| v % n).collect()).unwrap();
        let (name, back) = parse_table(&print_table("t", &t)).unwrap();
        prop_assert_eq!(name, "t");
        prop_assert_eq!(back, t);
    }
}

#[test]
fn exit_codes() {
    let ndt4 = fixture("ndt4.alg");
    let set2 = fixture("set2.alg");
    assert_eq!(cli(&["check", &ndt4]).code, 0);
    assert_eq!(cli(&["has-dto", &ndt4]).code, 0);
    assert_eq!(cli(&["has-dto", &set2]).code, 1);
    assert_eq!(cli(&["omits-type1", &set2]).code, 1);
    assert_eq!(cli(&["variety-dt", &ndt4]).code, 1);
    assert_eq!(cli(&["cg", &ndt4, "0", "1"]).code, 0);
    assert_eq!(cli(&["con", &ndt4]).code, 0);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["has-dto"]).code, 2);
    assert_eq!(cli(&["has-dto", "/nonexistent/x.alg"]).code, 2);
    assert_eq!(cli(&["cg", &ndt4, "0", "9"]).code, 2);
    assert_eq!(cli(&["variety-dt", &ndt4, "--method", "guess"]).code, 2);
    assert_eq!(
        cli(&["commutator", &ndt4, "--alpha", "|0|1|", "--beta", "|0,1|"]).code,
        2
    );
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn non_idempotent_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.alg");
    std::fs::write(&path, print_algebra(&fixtures::constant_unary())).unwrap();
    let path = path.display().to_string();
    let out = cli(&["check", &path]);
    assert_eq!(out.code, 1);
    assert_eq!(
        field(&out.stdout, "certificate"),
        ["not idempotent: c(1,…,1) = 0"]
    );
    assert_eq!(cli(&["has-dto", &path]).code, 2);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.alg");
    std::fs::write(&path, "algebra X\nsize 2\nop f 2\n0 1 1\nend\n").unwrap();
    let out = cli(&["check", &path.display().to_string()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("expected 4 entries"), "{}", out.stderr);
}

#[test]
fn reports_are_deterministic() {
    let ndt4 = fixture("ndt4.alg");
    for args in [
        vec!["variety-dt", ndt4.as_str(), "--method", "both"],
        vec!["has-dto", ndt4.as_str()],
        vec!["con", ndt4.as_str()],
        vec!["omits-type1", ndt4.as_str()],
    ] {
        let a = cli(&args);
        let b = cli(&args);
        assert_eq!(a.code, b.code);
        assert_eq!(without_elapsed(&a.stdout), without_elapsed(&b.stdout));
        assert_eq!(field(&a.stdout, "elapsed_ms").len(), 1);
    }
}

#[test]
fn every_no_record_has_a_certificate() {
    for (cmd, file) in [
        ("has-dto", "set2.alg"),
        ("omits-type1", "set2.alg"),
        ("variety-dt", "ndt4.alg"),
        ("variety-dt", "set2.alg"),
        ("build-dt", "set2.alg"),
    ] {
        let dir = tempfile::tempdir().unwrap();
        let out_path = dir.path().join("d.tbl").display().to_string();
        let f = fixture(file);
        let mut args = vec![cmd, f.as_str()];
        if cmd == "build-dt" {
            args.extend(["-o", out_path.as_str()]);
        }
        let out = cli(&args);
        assert_eq!(out.code, 1, "{cmd} {file}");
        let certs = field(&out.stdout, "certificate");
        assert_eq!(certs.len(), 1);
        assert_ne!(certs[0], "-");
    }
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (file, calls) in [
        ("ndt4.alg", "calls 256"),
        ("sl2.alg", "calls 16"),
        ("mal2.alg", "calls 16"),
    ] {
        let f = fixture(file);
        assert_eq!(cli(&["has-dto", &f]).code, 0);
        let out = dir.path().join(format!("{file}.tbl")).display().to_string();
        let built = cli(&["build-dt", &f, "-o", &out]);
        assert_eq!(built.code, 0, "{}", built.stderr);
        assert!(field(&built.stdout, "result").contains(&calls), "{file}");
        assert_eq!(cli(&["verify-dt", &f, &out]).code, 0, "{file}");
    }
}

#[test]
fn witness_file_lists_every_mixed_pair() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.txt");
    let f = fixture("sl2.alg");
    let r = cli(&["has-dto", &f, "--witness", &out.display().to_string()]);
    assert_eq!(r.code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("witnesses SL2 16"));
    assert_eq!(lines.count(), 16);
}

#[test]
fn commutator_methods_agree_on_cli() {
    let f = fixture("sl2.alg");
    let m = cli(&["commutator", &f, "--alpha", "|0,1|", "--beta", "|0,1|"]);
    let fast = cli(&[
        "commutator",
        &f,
        "--alpha",
        "|0,1|",
        "--beta",
        "|0,1|",
        "--method",
        "fast",
    ]);
    assert_eq!(m.code, 0);
    assert_eq!(field(&m.stdout, "result"), field(&fast.stdout, "result"));
    assert_eq!(field(&m.stdout, "result"), ["|0,1|"]);
    let set2 = fixture("set2.alg");
    let out = cli(&[
        "commutator",
        &set2,
        "--alpha",
        "|0,1|",
        "--beta",
        "|0,1|",
        "--method",
        "fast",
    ]);
    assert_eq!(out.code, 2);
}

#[test]
fn principal_congruence_on_cli() {
    let out = cli(&["cg", &fixture("sl2.alg"), "0", "1"]);
    assert_eq!(field(&out.stdout, "result"), ["|0,1|"]);
    let out = cli(&["con", &fixture("mal2.alg")]);
    assert_eq!(field(&out.stdout, "result"), ["count 2", "|0|1|", "|0,1|"]);
}
