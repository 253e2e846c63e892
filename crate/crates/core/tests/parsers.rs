//! Parser robustness on stable: the fuzz corpus replayed, plus random
//! JSON-shaped inputs. Every accepted input must re-emit to JSON that parses
//! back to an equal value.

use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use serde_json::{json, Value};
use xorgap::io;

fn check_all(s: &str) {
    if let Ok(v) = io::parse_space(s) {
        assert_eq!(io::parse_space(&io::space_to_json(&v)).unwrap(), v);
    }
    if let Ok(v) = io::parse_tensor(s) {
        assert_eq!(io::parse_tensor(&io::tensor_to_json(&v)).unwrap(), v);
    }
    if let Ok(v) = io::parse_quantum_tensor(s) {
        assert_eq!(io::parse_quantum_tensor(&io::quantum_tensor_to_json(&v)).unwrap(), v);
    }
    if let Ok(v) = io::parse_gpt(s) {
        assert_eq!(io::parse_gpt(&io::gpt_to_json(&v)).unwrap(), v);
    }
    if let Ok(v) = io::parse_game(s) {
        assert_eq!(io::parse_game(&io::game_to_json(&v)).unwrap(), v);
    }
}

#[test]
fn fuzz_corpus_replays() {
    let root: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fuzz", "corpus"].iter().collect();
    let mut seen = 0;
    for dir in fs::read_dir(&root).unwrap() {
        for f in fs::read_dir(dir.unwrap().path()).unwrap() {
            let bytes = fs::read(f.unwrap().path()).unwrap();
            if let Ok(s) = std::str::from_utf8(&bytes) {
                check_all(s);
                seen += 1;
            }
        }
    }
    assert!(seen >= 10);
}

fn number() -> impl Strategy<Value = Value> {
    prop_oneof![
        (-3i64..=3).prop_map(|i| json!(i)),
        (-2.0f64..2.0).prop_map(|x| json!(x)),
        Just(json!(1e308)),
        Just(json!(-0.0)),
    ]
}

fn rows(max_r: usize, max_c: usize) -> impl Strategy<Value = Value> {
    prop::collection::vec(prop::collection::vec(number(), 0..=max_c), 0..=max_r).prop_map(|v| json!(v))
}

fn space() -> impl Strategy<Value = Value> {
    let kind = prop::sample::select(vec!["l1", "l2", "linf", "polytope", "schatten1", "schatteninf", "lp"]);
    (kind, 0usize..5, prop::option::of(rows(6, 3))).prop_map(|(k, d, v)| match v {
        Some(v) => json!({"kind": k, "dim": d, "vertices": v}),
        None => json!({"kind": k, "dim": d}),
    })
}

fn symmetric_polygon() -> impl Strategy<Value = Value> {
    prop::collection::vec((0.0f64..std::f64::consts::PI, 0.2f64..2.0), 2..6).prop_map(|half| {
        let mut v = Vec::new();
        for (t, r) in half {
            v.push(json!([r * t.cos(), r * t.sin()]));
            v.push(json!([-r * t.cos(), -r * t.sin()]));
        }
        json!({"kind": "polytope", "dim": 2, "vertices": v})
    })
}

fn gpt() -> impl Strategy<Value = Value> {
    (1usize..4, rows(5, 3), prop::collection::vec(number(), 0..4))
        .prop_map(|(d, g, u)| json!({"dim": d, "generators": g, "unit": u}))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn arbitrary_text(s in ".{0,64}") {
        check_all(&s);
    }

    #[test]
    fn spaces(x in prop_oneof![space(), symmetric_polygon()]) {
        check_all(&x.to_string());
    }

    #[test]
    fn tensors(x in prop_oneof![space(), symmetric_polygon()], y in space(), c in rows(4, 4)) {
        check_all(&json!({"x_space": x, "y_space": y, "coeffs": c}).to_string());
    }

    #[test]
    fn quantum_tensors(n in 0usize..4, m in 0usize..4, c in rows(9, 9)) {
        check_all(&json!({"n": n, "m": m, "coeffs": c}).to_string());
    }

    #[test]
    fn gpts(g in gpt(), wrap in any::<bool>()) {
        let v = if wrap { json!({"gpt": g}) } else { g };
        check_all(&v.to_string());
    }

    #[test]
    fn games(
        a in gpt(),
        b in gpt(),
        rule in prop::sample::select(vec!["min", "max", "tensor"]),
        q in rows(3, 6),
        p in prop::collection::vec(number(), 0..4),
        bits in prop::collection::vec(0u8..3, 0..4),
    ) {
        check_all(&json!({"rule": rule, "a": a, "b": b, "questions": q, "probs": p, "bits": bits}).to_string());
    }
}
