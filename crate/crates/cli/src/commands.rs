use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};
use xorgap::gpt::Gpt;
use xorgap::io;
use xorgap::linalg::{dot, Matrix};
use xorgap::montecarlo::{
    chevet_epsilon_check, ell_norm_estimate, gue_opnorm_scaling, gue_tracenorm_scaling, quantum_ratio_scaling,
};
use xorgap::quantum::SeesawOptions;
use xorgap::spaces::{SpaceDescriptor, SpaceKind};
use xorgap::tensornorms::{
    injective_maximizer, injective_norm_with, projective_dual_witness, projective_norm, ratio_witness_with,
    rho_search, Certificate, NormValue, Tensor,
};
use xorgap::witnesses::{
    chsh19_witness, hexagon_auerbach, identity_ratio, identity_witness, linf2_convexity_witness,
    projection_constant_l1,
};
use xorgap::{Error, Result};

use crate::args::{Cli, Command, Input, McOp, NormOp, TensorOp, WitnessOp};
use crate::report::*;
use crate::verify::paper_constants;

/// Above this, `--samples` is a budget error.
pub const MAX_SAMPLES: usize = 10_000_000;
/// Above this, `rho-search --samples` is a budget error.
pub const MAX_SEARCH_ITERATIONS: usize = 10_000;

pub fn execute(cli: &Cli) -> Result<Report> {
    match cli.threads {
        Some(0) => Err(Error::InvalidInput("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let seed = cli.seed;
    match &cli.command {
        Command::Norm { input, op } => norm(&read(input)?, *op),
        Command::Tensor { input, op } => tensor(&read(input)?, *op, seed),
        Command::RhoSearch { input, samples } => search(&read(input)?, *samples, seed),
        Command::Game { input } => game(&read(input)?),
        Command::Witness { input, op } => witness(optional(input)?.as_deref(), *op),
        Command::Mc { input, op, samples } => mc(optional(input)?.as_deref(), *op, *samples, seed),
        Command::Verify { .. } => Ok(Report::Verify(paper_constants(seed)?)),
    }
}

fn read_path(path: &Path) -> Result<String> {
    let cannot = |e: std::io::Error| Error::InvalidInput(format!("cannot read {}: {e}", path.display()));
    let len = fs::metadata(path).map_err(cannot)?.len();
    if len > io::MAX_INPUT_BYTES as u64 {
        return Err(Error::BudgetExceeded {
            what: "JSON input bytes",
            count: usize::try_from(len).unwrap_or(usize::MAX),
            limit: io::MAX_INPUT_BYTES,
        });
    }
    fs::read_to_string(path).map_err(cannot)
}

fn optional(input: &Input) -> Result<Option<String>> {
    match (&input.path, &input.inline) {
        (Some(p), _) => read_path(p).map(Some),
        (None, Some(s)) => Ok(Some(s.clone())),
        (None, None) => Ok(None),
    }
}

fn read(input: &Input) -> Result<String> {
    optional(input)?.ok_or_else(|| Error::InvalidInput("an input model is required (--in PATH or --inline JSON)".into()))
}

fn object(s: &str) -> Result<Map<String, Value>> {
    if s.len() > io::MAX_INPUT_BYTES {
        return Err(Error::BudgetExceeded {
            what: "JSON input bytes",
            count: s.len(),
            limit: io::MAX_INPUT_BYTES,
        });
    }
    match serde_json::from_str(s)? {
        Value::Object(m) => Ok(m),
        _ => Err(Error::InvalidInput("expected a JSON object".into())),
    }
}

fn raw<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| Error::InvalidInput(format!("missing field \"{key}\"")))
}

fn field<T: DeserializeOwned>(m: &Map<String, Value>, key: &str) -> Result<T> {
    serde_json::from_value(raw(m, key)?.clone()).map_err(|e| Error::InvalidInput(format!("field \"{key}\": {e}")))
}

fn space_field(m: &Map<String, Value>, key: &str) -> Result<SpaceDescriptor> {
    io::parse_space(&raw(m, key)?.to_string())
}

fn finite(v: &NormValue) -> Result<()> {
    if v.lower().is_finite() && v.upper().is_finite() {
        Ok(())
    } else {
        Err(Error::Numerical("non-finite bound".into()))
    }
}

fn norm(s: &str, op: NormOp) -> Result<Report> {
    let m = object(s)?;
    let vector: Vec<f64> = field(&m, "vector")?;
    let report = match op {
        NormOp::Norm | NormOp::Dual => {
            let space = space_field(&m, "space")?;
            let (value, certificate) = if op == NormOp::Norm {
                let f = space.norming_functional(&vector)?;
                (space.norm(&vector)?, Certificate::new("norming-functional", vec![f]))
            } else {
                let p = space.dual_space()?.norming_functional(&vector)?;
                (space.dual_norm(&vector)?, Certificate::new("norming-point", vec![p]))
            };
            NormReport {
                op: if op == NormOp::Norm { "norm" } else { "dual" }.into(),
                space: Some(space),
                gpt: None,
                vector,
                value,
                certificate,
            }
        }
        NormOp::Base | NormOp::OrderUnit => {
            let gpt = io::parse_gpt(&raw(&m, "gpt")?.to_string())?;
            let (value, certificate) = if op == NormOp::Base {
                let b = gpt.base_norm_certified(&vector)?;
                (b.value, Certificate::new("base-norm-lp", vec![b.witness, b.positive, b.negative]))
            } else {
                let value = gpt.order_unit_norm(&vector)?;
                (value, Certificate::new("generator-max", vec![attaining_generator(&gpt, &vector)]))
            };
            NormReport {
                op: if op == NormOp::Base { "base" } else { "order-unit" }.into(),
                space: None,
                gpt: Some(gpt),
                vector,
                value,
                certificate,
            }
        }
    };
    Ok(Report::Norm(report))
}

fn attaining_generator(gpt: &Gpt, f: &[f64]) -> Vec<f64> {
    gpt.generators()
        .iter()
        .max_by(|a, b| dot(a, f).abs().total_cmp(&dot(b, f).abs()))
        .cloned()
        .unwrap_or_default()
}

fn injective_certificate(z: &Tensor, v: &NormValue) -> Result<Certificate> {
    use SpaceKind::*;
    let (x, y) = (&z.x_space, &z.y_space);
    Ok(match (x.kind(), y.kind()) {
        _ if v.exact().is_none() => Certificate::new("certified-interval", vec![]),
        (L2, L2) => Certificate::new("spectral-norm", vec![]),
        _ if x.is_polytopal() && y.is_polytopal() => {
            let mx = injective_maximizer(z)?;
            Certificate::new("dual-vertex-pair", vec![mx.x_functional, mx.y_functional])
        }
        _ => Certificate::new("dual-vertex-enumeration", vec![]),
    })
}

fn projective_certificate(z: &Tensor, v: &NormValue) -> Result<Certificate> {
    use SpaceKind::*;
    let (x, y) = (&z.x_space, &z.y_space);
    Ok(match (x.kind(), y.kind()) {
        _ if v.exact().is_none() => Certificate::new("certified-interval", vec![]),
        (L2, L2) => Certificate::new("nuclear-norm", vec![]),
        (L1, _) | (_, L1) => Certificate::new("l1-factor-sum", vec![]),
        _ => Certificate::new("projective-lp-dual", projective_dual_witness(z)?.dual.to_rows()),
    })
}

fn tensor(s: &str, op: TensorOp, seed: u64) -> Result<Report> {
    let z = io::parse_tensor(s)?;
    let opts = SeesawOptions {
        seed,
        ..SeesawOptions::default()
    };
    let (name, value, certificate) = match op {
        TensorOp::Injective => {
            let v = injective_norm_with(&z, &opts)?;
            let c = injective_certificate(&z, &v)?;
            ("injective", v, c)
        }
        TensorOp::Projective => {
            let v = projective_norm(&z)?;
            let c = projective_certificate(&z, &v)?;
            ("projective", v, c)
        }
        TensorOp::Ratio => {
            let value = ratio_witness_with(&z, &opts)?;
            let (p, e) = (
                projective_certificate(&z, &projective_norm(&z)?)?,
                injective_certificate(&z, &value)?,
            );
            let tag = format!("projective[{}]/injective[{}]", p.tag, e.tag);
            let witness = p.witness.into_iter().chain(e.witness).collect();
            ("ratio", value, Certificate::new(tag, witness))
        }
    };
    finite(&value)?;
    Ok(Report::Tensor(TensorReport {
        op: name.into(),
        tensor: z,
        value,
        certificate,
    }))
}

fn search(s: &str, iterations: usize, seed: u64) -> Result<Report> {
    if iterations > MAX_SEARCH_ITERATIONS {
        return Err(Error::BudgetExceeded {
            what: "search iterations",
            count: iterations,
            limit: MAX_SEARCH_ITERATIONS,
        });
    }
    if iterations == 0 {
        return Err(Error::InvalidInput("--samples must be at least 1".into()));
    }
    let m = object(s)?;
    let (x, y) = (space_field(&m, "x_space")?, space_field(&m, "y_space")?);
    let r = rho_search(&x, &y, seed, iterations)?;
    Ok(Report::RhoSearch(RhoReport {
        x_space: x,
        y_space: y,
        seed,
        iterations: r.iterations,
        found_at: r.found_at,
        ratio: r.ratio,
        tensor: r.tensor,
        certificate: Certificate::new("exact-ratio-of-tensor", vec![]),
    }))
}

fn game(s: &str) -> Result<Report> {
    let g = io::parse_game(s)?;
    let (local, global) = (g.bias_local()?, g.bias_global()?);
    Ok(Report::Game(GameReport {
        rule: g.composite().rule,
        local,
        global,
        certificate: Certificate::new("local=injective-norm, global=composite-base-norm", g.game_matrix().to_rows()),
        game: g,
    }))
}

fn witness(s: Option<&str>, op: WitnessOp) -> Result<Report> {
    let space_or_hexagon = |s: Option<&str>| match s {
        Some(s) => io::parse_space(s),
        None => Ok(SpaceDescriptor::hexagon()),
    };
    let (name, value, certificate) = match op {
        WitnessOp::Chsh19 => {
            let (x, y) = match s {
                Some(s) => {
                    let m = object(s)?;
                    (space_field(&m, "x")?, space_field(&m, "y")?)
                }
                None => (SpaceDescriptor::hexagon(), SpaceDescriptor::hexagon()),
            };
            let c = chsh19_witness(&x, &y)?;
            let cert = json!({
                "z": c.z,
                "w": c.w,
                "pairing": c.pairing,
                "eps_z": c.eps_z,
                "eps_w": c.eps_w,
                "bound": c.bound,
                "eps_z_attained": [c.eps_z_attained.x_functional, c.eps_z_attained.y_functional],
                "x_pair": to_value(&c.x_pair),
                "y_pair": to_value(&c.y_pair),
            });
            ("chsh19", c.ratio, cert)
        }
        WitnessOp::Auerbach => {
            let p = hexagon_auerbach(&space_or_hexagon(s)?)?;
            ("auerbach", p.sum_norm, to_value(&p))
        }
        WitnessOp::Convexity => {
            let w = linf2_convexity_witness(&space_or_hexagon(s)?)?;
            ("convexity", w.ratio, to_value(&w))
        }
        WitnessOp::ProjectionConstant => {
            let m = object(s.ok_or_else(|| Error::InvalidInput("projection-constant needs {\"n\": N}".into()))?)?;
            let p = projection_constant_l1(field(&m, "n")?)?;
            let cert = json!({
                "n": p.n,
                "numerator": p.numerator.to_string(),
                "denominator": p.denominator.to_string(),
            });
            ("projection-constant", p.value(), cert)
        }
        WitnessOp::Identity => {
            let m = object(s.ok_or_else(|| {
                Error::InvalidInput("identity needs {\"x\": KIND, \"y\": KIND, \"n\": N}".into())
            })?)?;
            let (x, y, n): (SpaceKind, SpaceKind, usize) = (field(&m, "x")?, field(&m, "y")?, field(&m, "n")?);
            let z = identity_witness(x, y, n)?;
            ("identity", identity_ratio(x, y, n)?, json!({ "tensor": z }))
        }
    };
    Ok(Report::Witness(WitnessReport {
        witness: name.into(),
        value,
        certificate,
    }))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn mc(s: Option<&str>, op: McOp, samples: Option<usize>, seed: u64) -> Result<Report> {
    let m = match s {
        Some(s) => object(s)?,
        None => Map::new(),
    };
    let get = |key: &str| -> Result<Option<Value>> { Ok(m.get(key).cloned()) };
    let usize_or = |key: &str, d: usize| -> Result<usize> {
        match get(key)? {
            Some(v) => serde_json::from_value(v).map_err(|e| Error::InvalidInput(format!("field \"{key}\": {e}"))),
            None => Ok(d),
        }
    };
    let list_or = |key: &str, d: &[usize]| -> Result<Vec<usize>> {
        match get(key)? {
            Some(v) => serde_json::from_value(v).map_err(|e| Error::InvalidInput(format!("field \"{key}\": {e}"))),
            None => Ok(d.to_vec()),
        }
    };
    let default_samples = match op {
        McOp::GueOpnorm | McOp::GueTracenorm => 500,
        McOp::Chevet => 200,
        McOp::EllNorm => 100_000,
        McOp::QuantumRatio => 100,
    };
    let n_samples = samples.unwrap_or(default_samples);
    if n_samples > MAX_SAMPLES {
        return Err(Error::BudgetExceeded {
            what: "Monte Carlo samples",
            count: n_samples,
            limit: MAX_SAMPLES,
        });
    }
    let (name, reports) = match op {
        McOp::GueOpnorm => ("gue-opnorm", gue_opnorm_scaling(&list_or("k", &[1, 10, 50])?, n_samples, seed)?),
        McOp::GueTracenorm => (
            "gue-tracenorm",
            gue_tracenorm_scaling(&list_or("k", &[1, 10, 30])?, n_samples, seed)?,
        ),
        McOp::Chevet => (
            "chevet",
            vec![chevet_epsilon_check(usize_or("n", 2)?, usize_or("m", 2)?, n_samples, seed)?],
        ),
        McOp::EllNorm => {
            let space = match m.get("space") {
                Some(v) => io::parse_space(&v.to_string())?,
                None => SpaceDescriptor::l2(2)?,
            };
            let map = match m.get("map") {
                Some(_) => Matrix::try_from(field::<Vec<Vec<f64>>>(&m, "map")?)?,
                None => Matrix::identity(space.ambient_dim()),
            };
            ("ell-norm", vec![ell_norm_estimate(&space, &map, n_samples, seed)?])
        }
        McOp::QuantumRatio => (
            "quantum-ratio",
            quantum_ratio_scaling(&list_or("n", &[2, 3, 4])?, n_samples, seed)?,
        ),
    };
    Ok(Report::Mc(McReports {
        op: name.into(),
        reports,
    }))
}
