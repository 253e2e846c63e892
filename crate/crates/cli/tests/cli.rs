use std::path::PathBuf;

use xorgap::io;
use xorgap_cli::{execute, parse_args, run_with, Report};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("xorgap").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> Report {
    let argv = std::iter::once("xorgap").chain(args.iter().copied());
    execute(&parse_args(argv).unwrap()).unwrap()
}

#[test]
fn identity_ratio_example() {
    let (code, out, _) = run(&["tensor", "--op", "ratio", "--in", &data("id2_l1_l2.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("value: 1.41421356237\n"), "{out}");
}

#[test]
fn verify_suite_passes() {
    let (code, out, _) = run(&["verify", "--suite", "paper-constants"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("paper-constants PASS\n"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn classical_chsh_local_bias() {
    let r = report(&["game", "--in", &data("chsh_classical.json")]);
    let Report::Game(g) = r else { panic!("wrong report") };
    assert!((g.local - 0.5).abs() < 1e-9);
    assert!((g.global - g.game.bias_global().unwrap()).abs() < 1e-12);
    assert!(g.global >= g.local);
}

#[test]
fn norm_commands() {
    let Report::Norm(r) = report(&["norm", "--op", "base", "--in", &data("cs_hexagon_norm.json")]) else {
        panic!()
    };
    let hex = io::parse_space(&std::fs::read_to_string(data("hexagon.json")).unwrap()).unwrap();
    let expect = hex.norm(&[0.5, 0.5]).unwrap().max(0.25);
    assert!((r.value - expect).abs() < 1e-9);
    assert_eq!(r.certificate.tag, "base-norm-lp");

    let (code, out, _) = run(&[
        "norm",
        "--inline",
        r#"{"space":{"kind":"l1","dim":3},"vector":[1,-2,0.5]}"#,
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("value: 3.5\n"));
    let (code, out, _) = run(&[
        "norm",
        "--op",
        "dual",
        "--inline",
        r#"{"space":{"kind":"l1","dim":3},"vector":[1,-2,0.5]}"#,
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("value: 2\n"));
}

#[test]
fn witness_reports() {
    let Report::Witness(w) = report(&["witness", "--op", "chsh19"]) else { panic!() };
    assert_eq!(w.certificate["pairing"].as_f64().unwrap().round(), 19.0);
    assert!(w.value >= 19.0 / 18.0 - 1e-9);
    let Report::Witness(w) = report(&["witness", "--op", "projection-constant", "--inline", r#"{"n":4}"#]) else {
        panic!()
    };
    assert!((w.value - 8.0 / 3.0).abs() < 1e-12);
    let Report::Witness(w) = report(&[
        "witness",
        "--op",
        "identity",
        "--inline",
        r#"{"x":"l1","y":"linf","n":3}"#,
    ]) else {
        panic!()
    };
    assert!((w.value - 3.0).abs() < 1e-9);
    let (code, out, _) = run(&["witness", "--op", "convexity", "--in", &data("hexagon.json")]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn quantum_tensor_interval() {
    let (code, out, _) = run(&["tensor", "--op", "injective", "--in", &data("swap_s1.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("lower_certificate"));
}

#[test]
fn json_output_round_trips() {
    let cases: Vec<Vec<String>> = vec![
        vec!["tensor".into(), "--op".into(), "ratio".into(), "--in".into(), data("id2_l1_l2.json")],
        vec!["tensor".into(), "--op".into(), "projective".into(), "--inline".into(),
            r#"{"x_space":{"kind":"linf","dim":2},"y_space":{"kind":"linf","dim":2},"coeffs":[[1,1],[1,-1]]}"#.into()],
        vec!["tensor".into(), "--op".into(), "ratio".into(), "--in".into(), data("swap_s1.json")],
        vec!["game".into(), "--in".into(), data("chsh_classical.json")],
        vec!["norm".into(), "--op".into(), "base".into(), "--in".into(), data("cs_hexagon_norm.json")],
        vec!["norm".into(), "--op".into(), "order-unit".into(), "--in".into(), data("cs_hexagon_norm.json")],
        vec!["rho-search".into(), "--samples".into(), "5".into(), "--inline".into(),
            r#"{"x_space":{"kind":"l1","dim":2},"y_space":{"kind":"l1","dim":2}}"#.into()],
        vec!["witness".into(), "--op".into(), "chsh19".into()],
        vec!["witness".into(), "--op".into(), "auerbach".into()],
        vec!["mc".into(), "--op".into(), "gue-opnorm".into(), "--samples".into(), "100".into(),
            "--inline".into(), r#"{"k":[1,3]}"#.into()],
        vec!["verify".into()],
    ];
    for args in cases {
        let mut full = args.clone();
        full.extend(["--format".into(), "json".into()]);
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let (code, out, err) = run(&refs);
        assert_eq!(code, 0, "{args:?}: {err}");
        let parsed: Report = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(parsed, report(&refs), "{args:?}");
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", out);
        match parsed {
            Report::Tensor(t) => assert_eq!(io::parse_tensor(&io::tensor_to_json(&t.tensor)).unwrap(), t.tensor),
            Report::Game(g) => assert_eq!(io::parse_game(&io::game_to_json(&g.game)).unwrap(), g.game),
            _ => {}
        }
    }
}

#[test]
fn monte_carlo_csv_and_determinism() {
    let args = ["mc", "--op", "ell-norm", "--samples", "2000", "--format", "csv", "--seed", "9"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("quantity,k,samples,seed,estimate,stderr,target,pass"));
    assert_eq!(lines.count(), 1);
    assert_eq!(run(&args).1, out);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "1"]);
    assert_eq!(run(&threaded).1, out);
    let mut other = args.to_vec();
    other[7] = "10";
    assert_ne!(run(&other).1, out);
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        vec!["tensor", "--op", "ratio", "--inline", "{"],
        vec!["tensor", "--op", "ratio", "--inline", "[1,2]"],
        vec!["tensor", "--op", "ratio"],
        vec!["tensor", "--op", "ratio", "--inline", r#"{"x_space":{"kind":"l1","dim":2},"y_space":{"kind":"l1","dim":2},"coeffs":[[0,0],[0,0]]}"#],
        vec!["norm", "--inline", r#"{"space":{"kind":"polytope","dim":2,"vertices":[[1,0],[0,1]]},"vector":[1,1]}"#],
        vec!["game", "--inline", r#"{"rule":"min","a":{"dim":1,"generators":[[1]],"unit":[1]},"b":{"dim":1,"generators":[[1]],"unit":[1]},"questions":[[1]],"probs":[0.5],"bits":[0]}"#],
        vec!["witness", "--op", "projection-constant"],
        vec!["mc", "--op", "gue-opnorm", "--samples", "10"],
        vec!["verify", "--threads", "0"],
        vec!["frobnicate"],
        vec!["tensor", "--op", "sideways", "--inline", "{}"],
        vec!["tensor", "--op", "ratio", "--in", "/nonexistent/model.json"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn budget_errors_exit_3() {
    for args in [
        vec!["tensor", "--op", "injective", "--inline", r#"{"x_space":{"kind":"schatten1","dim":9},"y_space":{"kind":"schatten1","dim":1},"coeffs":[[1]]}"#],
        vec!["rho-search", "--inline", r#"{"x_space":{"kind":"l2","dim":100000000},"y_space":{"kind":"l2","dim":2}}"#],
        vec!["mc", "--op", "gue-opnorm", "--inline", r#"{"k":[65]}"#],
        vec!["mc", "--op", "ell-norm", "--samples", "100000000000"],
        vec!["rho-search", "--samples", "1000000", "--inline", r#"{"x_space":{"kind":"l1","dim":2},"y_space":{"kind":"l1","dim":2}}"#],
        vec!["witness", "--op", "projection-constant", "--inline", r#"{"n":31}"#],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 3, "{args:?}: {err}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("rho-search"));
}
