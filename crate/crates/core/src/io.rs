//! JSON entry points for the model types.
//!
//! Every parser validates fully: a value that parses is a value the
//! constructors would have accepted. GPTs and games may be given bare or
//! wrapped in a single-key object (`{"gpt": …}`, `{"game": …}`); the
//! serializers always emit the wrapped form.

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gpt::{GameJson, Gpt, GptJson, XorGame};
use crate::quantum::{QuantumTensor, QuantumTensorJson};
use crate::spaces::{SpaceDescriptor, SpaceJson};
use crate::tensornorms::{Tensor, TensorJson};

/// Inputs larger than this are rejected before parsing.
pub const MAX_INPUT_BYTES: usize = 1 << 22;

fn check_size(s: &str) -> Result<()> {
    if s.len() > MAX_INPUT_BYTES {
        return Err(Error::BudgetExceeded {
            what: "JSON input bytes",
            count: s.len(),
            limit: MAX_INPUT_BYTES,
        });
    }
    Ok(())
}

/// Parses the unvalidated wire form, then validates. Going through the
/// mirror keeps the typed error (serde would flatten it to a string), which
/// callers need to tell budget violations from malformed input.
fn parse_via<J, T>(v: Value) -> Result<T>
where
    J: DeserializeOwned,
    T: TryFrom<J, Error = Error>,
{
    T::try_from(serde_json::from_value::<J>(v)?)
}

fn value(s: &str) -> Result<Value> {
    check_size(s)?;
    Ok(serde_json::from_str(s)?)
}

fn unwrap_key(s: &str, key: &str) -> Result<Value> {
    match value(s)? {
        Value::Object(mut map) if map.len() == 1 && map.contains_key(key) => Ok(map.remove(key).unwrap()),
        other => Ok(other),
    }
}

pub fn parse_space(s: &str) -> Result<SpaceDescriptor> {
    parse_via::<SpaceJson, _>(value(s)?)
}

pub fn parse_tensor(s: &str) -> Result<Tensor> {
    parse_via::<TensorJson, _>(value(s)?)
}

pub fn parse_quantum_tensor(s: &str) -> Result<QuantumTensor> {
    parse_via::<QuantumTensorJson, _>(value(s)?)
}

pub fn parse_gpt(s: &str) -> Result<Gpt> {
    parse_via::<GptJson, _>(unwrap_key(s, "gpt")?)
}

pub fn parse_game(s: &str) -> Result<XorGame> {
    parse_via::<GameJson, _>(unwrap_key(s, "game")?)
}

pub fn space_to_json(x: &SpaceDescriptor) -> String {
    serde_json::to_string(x).expect("space serializes")
}

pub fn tensor_to_json(z: &Tensor) -> String {
    serde_json::to_string(z).expect("tensor serializes")
}

pub fn quantum_tensor_to_json(z: &QuantumTensor) -> String {
    serde_json::to_string(z).expect("quantum tensor serializes")
}

pub fn gpt_to_json(g: &Gpt) -> String {
    serde_json::json!({ "gpt": g }).to_string()
}

pub fn game_to_json(g: &XorGame) -> String {
    serde_json::json!({ "game": g }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gpt::CompositionRule;
    use crate::linalg::Matrix;
    use crate::spaces::SpaceKind;

    #[test]
    fn space_round_trip() {
        for x in [
            SpaceDescriptor::l1(3).unwrap(),
            SpaceDescriptor::l2(2).unwrap(),
            SpaceDescriptor::linf(4).unwrap(),
            SpaceDescriptor::schatten1(2).unwrap(),
            SpaceDescriptor::schatten_inf(3).unwrap(),
            SpaceDescriptor::hexagon(),
        ] {
            assert_eq!(parse_space(&space_to_json(&x)).unwrap(), x);
        }
        let x = parse_space(r#"{"kind":"polytope","dim":2,"vertices":[[1,0],[-1,0],[0,1],[0,-1]]}"#).unwrap();
        assert_eq!(x.kind(), SpaceKind::Polytope);
    }

    #[test]
    fn space_rejections() {
        for bad in [
            r#"{"kind":"l1","dim":0}"#,
            r#"{"kind":"l5","dim":2}"#,
            r#"{"kind":"polytope","dim":2,"vertices":[[1,0],[0,1]]}"#,
            r#"{"kind":"polytope","dim":3,"vertices":[[1,0],[-1,0],[0,1],[0,-1]]}"#,
            "[",
            "",
        ] {
            assert!(parse_space(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn tensor_round_trip_and_validation() {
        let z = Tensor::new(
            SpaceDescriptor::l1(2).unwrap(),
            SpaceDescriptor::l2(3).unwrap(),
            Matrix::from_fn(2, 3, |i, j| (i + 2 * j) as f64 - 1.5),
        )
        .unwrap();
        assert_eq!(parse_tensor(&tensor_to_json(&z)).unwrap(), z);
        let bad = r#"{"x_space":{"kind":"l1","dim":2},"y_space":{"kind":"l2","dim":2},"coeffs":[[1,0,0],[0,1,0]]}"#;
        assert!(parse_tensor(bad).is_err());
        let ragged = r#"{"x_space":{"kind":"l1","dim":2},"y_space":{"kind":"l2","dim":2},"coeffs":[[1,0],[0]]}"#;
        assert!(parse_tensor(ragged).is_err());
    }

    #[test]
    fn quantum_round_trip() {
        let z = QuantumTensor::new(2, 3, Matrix::from_fn(4, 9, |i, j| ((i * 7 + j) % 5) as f64 - 2.0)).unwrap();
        assert_eq!(parse_quantum_tensor(&quantum_tensor_to_json(&z)).unwrap(), z);
        assert!(parse_quantum_tensor(r#"{"n":2,"m":2,"coeffs":[[1]]}"#).is_err());
        assert!(parse_quantum_tensor(r#"{"n":9,"m":1,"coeffs":[]}"#).is_err());
    }

    #[test]
    fn gpt_wrapped_and_bare() {
        let g = Gpt::centrally_symmetric(&SpaceDescriptor::hexagon()).unwrap();
        let wrapped = gpt_to_json(&g);
        assert!(wrapped.starts_with(r#"{"gpt":"#));
        assert_eq!(parse_gpt(&wrapped).unwrap(), g);
        let bare = serde_json::to_string(&g).unwrap();
        assert_eq!(parse_gpt(&bare).unwrap(), g);
        assert!(parse_gpt(r#"{"dim":2,"generators":[[1,0],[-1,0],[0,1]],"unit":[1,0]}"#).is_err());
    }

    #[test]
    fn game_round_trip() {
        let a = Gpt::centrally_symmetric(&SpaceDescriptor::linf(2).unwrap()).unwrap();
        let b = Gpt::classical(2).unwrap();
        for rule in [CompositionRule::Min, CompositionRule::Max] {
            let g = XorGame::random(&a, &b, rule, 4, 7).unwrap();
            let s = game_to_json(&g);
            assert_eq!(parse_game(&s).unwrap(), g);
            let bare = serde_json::to_string(&g).unwrap();
            assert_eq!(parse_game(&bare).unwrap(), g);
        }
    }

    #[test]
    fn caps_surface_as_budget_errors() {
        assert!(parse_space(r#"{"kind":"schatten1","dim":100000}"#).unwrap_err().is_budget());
        assert!(parse_space(r#"{"kind":"l2","dim":1000000000}"#).unwrap_err().is_budget());
        assert!(parse_quantum_tensor(r#"{"n":9,"m":1,"coeffs":[[1]]}"#).unwrap_err().is_budget());
        let big = format!(r#"{{"dim":13,"generators":[{}],"unit":[{}]}}"#,
            (0..13).map(|i| format!("[{}]", (0..13).map(|j| if i == j { "1" } else { "0" }).collect::<Vec<_>>().join(","))).collect::<Vec<_>>().join(","),
            vec!["1"; 13].join(","));
        assert!(parse_gpt(&big).unwrap_err().is_budget());
    }

    #[test]
    fn oversized_input_is_a_budget_error() {
        let s = " ".repeat(MAX_INPUT_BYTES + 1);
        assert!(parse_space(&s).unwrap_err().is_budget());
    }
}
