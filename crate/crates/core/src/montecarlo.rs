//! Monte Carlo estimates for Gaussian random matrices and tensors.
//!
//! Samples are drawn from ChaCha8 streams: sample `i` of a run with seed `s`
//! uses stream `i` of the generator seeded with `s`, so results do not
//! depend on how the work is split across threads. Per-sample values are
//! collected in order and reduced sequentially.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quantum::{self, gue_sample_with, gue_tensor_with, SeesawOptions};
use crate::spaces::{SpaceDescriptor, SpaceKind};

pub const MAX_GUE_DIM: usize = 64;
pub const MAX_CHEVET_DIM: usize = 4;
pub const MAX_RATIO_DIM: usize = 4;
pub const MIN_SCALING_SAMPLES: usize = 100;

/// Box–Muller; one of the pair is discarded.
pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// `len` standard normals, using both halves of each Box–Muller pair.
pub fn normals<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len + 1);
    while out.len() < len {
        let u1: f64 = 1.0 - rng.random::<f64>();
        let u2: f64 = rng.random();
        let r = (-2.0 * u1.ln()).sqrt();
        let t = std::f64::consts::TAU * u2;
        out.push(r * t.cos());
        out.push(r * t.sin());
    }
    out.truncate(len);
    out
}

/// Independent generator for sample `index` of a run seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McReport {
    pub quantity: String,
    /// Size parameter (matrix size, or `n` for tensors on `Herm(n) ⊗ Herm(m)`).
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub estimate: f64,
    /// Sample standard deviation over `√samples`.
    pub stderr: f64,
    /// Two-sided target; passes when `|estimate − target| ≤ tolerance·target`.
    pub target: Option<f64>,
    pub tolerance: Option<f64>,
    /// One-sided upper bound; passes when `estimate ≤ bound`.
    pub bound: Option<f64>,
    pub pass: Option<bool>,
    pub note: String,
}

impl McReport {
    fn new(quantity: &str, k: usize, samples: usize, seed: u64, values: &[f64]) -> Self {
        let (estimate, stderr) = mean_stderr(values);
        McReport {
            quantity: quantity.to_string(),
            k,
            m: None,
            samples,
            seed,
            estimate,
            stderr,
            target: None,
            tolerance: None,
            bound: None,
            pass: None,
            note: String::new(),
        }
    }

    fn with_target(mut self, target: f64, tolerance: f64) -> Self {
        self.target = Some(target);
        self.tolerance = Some(tolerance);
        self.update_pass();
        self
    }

    fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self.update_pass();
        self
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = note.to_string();
        self
    }

    fn update_pass(&mut self) {
        let two_sided = match (self.target, self.tolerance) {
            (Some(t), Some(tol)) => Some((self.estimate - t).abs() <= tol * t.abs()),
            _ => None,
        };
        let one_sided = self.bound.map(|b| self.estimate <= b);
        self.pass = match (two_sided, one_sided) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(true) && b.unwrap_or(true)),
        };
    }

    /// `|estimate − target| / target`, if there is a target.
    pub fn relative_error(&self) -> Option<f64> {
        self.target.map(|t| (self.estimate - t).abs() / t.abs())
    }

    /// `estimate − target` in units of the standard error.
    pub fn z_score(&self) -> Option<f64> {
        self.target.map(|t| (self.estimate - t) / self.stderr)
    }
}

pub fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, (var / n as f64).sqrt())
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => v[n / 2],
        _ => 0.5 * (v[n / 2 - 1] + v[n / 2]),
    }
}

/// Evaluates `f` on `samples` independent streams, in order.
fn sample<F>(seed: u64, samples: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<f64> + Sync,
{
    (0..samples as u64)
        .into_par_iter()
        .map(|i| f(&mut stream(seed, i)))
        .collect()
}

fn check_count(samples: usize, min: usize) -> Result<()> {
    if samples < min {
        return Err(Error::InvalidInput(format!("need at least {min} samples, got {samples}")));
    }
    Ok(())
}

fn check_dim(what: &'static str, k: usize, limit: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput(format!("{what} must be at least 1")));
    }
    if k > limit {
        return Err(Error::DimensionTooLarge { what, dim: k, limit });
    }
    Ok(())
}

/// Distinct per-size seed so that different sizes use unrelated streams.
fn sub_seed(seed: u64, k: usize) -> u64 {
    seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// `E|g|` for a standard Gaussian.
pub fn half_normal_mean() -> f64 {
    (2.0 / std::f64::consts::PI).sqrt()
}

/// `E‖g‖₂` for a standard Gaussian vector in `Rⁿ`.
pub fn chi_mean(n: usize) -> f64 {
    let n = n as f64;
    std::f64::consts::SQRT_2 * (ln_gamma((n + 1.0) / 2.0) - ln_gamma(n / 2.0)).exp()
}

/// Mean operator norm of a `k × k` GUE sample, against `2√k` (exactly
/// `√(2/π)` at `k = 1`) with 12% tolerance.
pub fn gue_opnorm_scaling(k_list: &[usize], samples: usize, seed: u64) -> Result<Vec<McReport>> {
    check_count(samples, MIN_SCALING_SAMPLES)?;
    k_list
        .iter()
        .map(|&k| {
            check_dim("GUE matrix size", k, MAX_GUE_DIM)?;
            let s = sub_seed(seed, k);
            let vals = sample(s, samples, |rng| gue_sample_with(rng, k).op_norm())?;
            let r = McReport::new("gue_opnorm", k, samples, seed, &vals);
            Ok(if k == 1 {
                r.with_target(half_normal_mean(), 0.12).with_note("half-normal mean")
            } else {
                r.with_target(2.0 * (k as f64).sqrt(), 0.12)
                    .with_note("semicircle edge 2√k; finite-size bias is largest for small k")
            })
        })
        .collect()
}

/// `8/(3π)·k^{3/2}`, the trace norm predicted by the semicircle law.
pub fn semicircle_trace_norm(k: usize) -> f64 {
    8.0 / (3.0 * std::f64::consts::PI) * (k as f64).powf(1.5)
}

/// Mean trace norm of a `k × k` GUE sample: one-sided bound
/// `k^{3/2} + 3·stderr`, and the semicircle value as target with 15% tolerance.
pub fn gue_tracenorm_scaling(k_list: &[usize], samples: usize, seed: u64) -> Result<Vec<McReport>> {
    check_count(samples, MIN_SCALING_SAMPLES)?;
    k_list
        .iter()
        .map(|&k| {
            check_dim("GUE matrix size", k, MAX_GUE_DIM)?;
            let s = sub_seed(seed, k);
            let vals = sample(s, samples, |rng| gue_sample_with(rng, k).trace_norm())?;
            let r = McReport::new("gue_tracenorm", k, samples, seed, &vals);
            let bound = (k as f64).powf(1.5) + 3.0 * r.stderr;
            Ok(r.with_target(semicircle_trace_norm(k), 0.15)
                .with_bound(bound)
                .with_note("bound k^{3/2} + 3 stderr; target 8/(3π) k^{3/2}"))
        })
        .collect()
}

/// `n^{3/2}√m + m^{3/2}√n`.
pub fn chevet_chain_bound(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    n.powf(1.5) * m.sqrt() + m.powf(1.5) * n.sqrt()
}

/// Mean see-saw lower bound on `ε` for a GUE tensor in `S₁ⁿ ⊗ S₁ᵐ`,
/// checked against [`chevet_chain_bound`] (absolute constants set to 1).
pub fn chevet_epsilon_check(n: usize, m: usize, samples: usize, seed: u64) -> Result<McReport> {
    check_dim("tensor factor size", n, MAX_CHEVET_DIM)?;
    check_dim("tensor factor size", m, MAX_CHEVET_DIM)?;
    check_count(samples, 1)?;
    let vals = sample(sub_seed(seed, 16 * n + m), samples, |rng| {
        let z = gue_tensor_with(rng, n, m)?;
        let opts = SeesawOptions {
            seed: rng.random(),
            restarts: 4,
            ..SeesawOptions::default()
        };
        Ok(quantum::seesaw_epsilon_s1(&z, &opts)?.lower)
    })?;
    let mut r = McReport::new("chevet_epsilon", n, samples, seed, &vals)
        .with_bound(chevet_chain_bound(n, m))
        .with_note("see-saw lower bound on ε; bound uses the pre-constant chain");
    r.m = Some(m);
    Ok(r)
}

/// Monte Carlo `E‖T g‖_X` for a standard Gaussian vector `g`.
///
/// `map` has `ambient_dim(X)` rows. Closed-form targets (2% tolerance) are
/// attached for the identity on ℓ₂ⁿ, ℓ₁ⁿ and ℓ∞¹.
pub fn ell_norm_estimate(space: &SpaceDescriptor, map: &Matrix, samples: usize, seed: u64) -> Result<McReport> {
    check_count(samples, 1)?;
    let d = space.ambient_dim();
    if map.rows() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: map.rows(),
        });
    }
    if map.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("map"));
    }
    let cols = map.cols();
    let vals = sample(seed, samples, |rng| {
        let g = normals(rng, cols);
        space.norm(&map.mul_vec(&g))
    })?;
    let r = McReport::new(&format!("ell_norm[{}]", space.label()), d, samples, seed, &vals);
    let identity = map.is_square() && map.sub(&Matrix::identity(d)).is_zero();
    if !identity {
        return Ok(r);
    }
    Ok(match space.kind() {
        SpaceKind::L2 => r.with_target(chi_mean(d), 0.02).with_note("chi mean"),
        SpaceKind::L1 => r
            .with_target(d as f64 * half_normal_mean(), 0.02)
            .with_note("sum of half-normal means"),
        SpaceKind::Linf if d == 1 => r.with_target(half_normal_mean(), 0.02).with_note("half-normal mean"),
        _ => r,
    })
}

/// Median of `π_lower / ε_upper` over GUE tensors in `S₁ⁿ ⊗ S₁ⁿ`.
///
/// Each report passes when every sampled ratio lies in `[1, n²]`. Growth in
/// `n` is checked separately by [`strictly_increasing`].
pub fn quantum_ratio_scaling(n_list: &[usize], samples: usize, seed: u64) -> Result<Vec<McReport>> {
    check_count(samples, 1)?;
    n_list
        .iter()
        .map(|&n| {
            check_dim("tensor factor size", n, MAX_RATIO_DIM)?;
            let vals = sample(sub_seed(seed, n), samples, |rng| {
                let z = gue_tensor_with(rng, n, n)?;
                let (pi_lower, _) = quantum::pi_lower_s1(&z)?;
                let (eps_upper, _) = quantum::epsilon_upper_s1(&z)?;
                Ok(pi_lower / eps_upper)
            })?;
            let (_, stderr) = mean_stderr(&vals);
            let cap = (n * n) as f64;
            let in_range = vals.iter().all(|&r| r >= 1.0 - 1e-9 && r <= cap + 1e-9);
            Ok(McReport {
                quantity: "quantum_ratio_median".into(),
                k: n,
                m: Some(n),
                samples,
                seed,
                estimate: median(&vals),
                stderr,
                target: None,
                tolerance: None,
                bound: Some(cap),
                pass: Some(in_range),
                note: "median of certified lower bounds on π/ε; every sample checked against [1, n²]".into(),
            })
        })
        .collect()
}

/// Whether the estimates strictly increase along the list.
pub fn strictly_increasing(reports: &[McReport]) -> bool {
    reports.windows(2).all(|w| w[1].estimate > w[0].estimate)
}
