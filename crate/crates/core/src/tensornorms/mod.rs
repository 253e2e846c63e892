//! Injective and projective tensor norms on `X ⊗ Y` and their ratio.
//!
//! A tensor is stored as its `n × m` coefficient matrix `Z` in the
//! coordinate bases of `X` and `Y`, so `(x* ⊗ y*)(z) = x*ᵀ Z y*`.

mod search;

pub use search::{rho_search, RhoSearch};

use serde::{Deserialize, Serialize};

use crate::config::{MAX_LP_COLUMNS, MAX_VERTEX_PAIRS};
use crate::error::{Error, Result};
use crate::linalg::{dot, lp_solve, nuclear_norm, spectral_norm, LpProblem, Matrix};
use crate::quantum::{self, QuantumTensor, SeesawOptions};
use crate::spaces::{SpaceDescriptor, SpaceJson, SpaceKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TensorJson")]
pub struct Tensor {
    pub x_space: SpaceDescriptor,
    pub y_space: SpaceDescriptor,
    pub coeffs: Matrix,
}

/// Wire form of [`Tensor`], before validation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorJson {
    pub x_space: SpaceJson,
    pub y_space: SpaceJson,
    pub coeffs: Vec<Vec<f64>>,
}

impl TryFrom<TensorJson> for Tensor {
    type Error = Error;
    fn try_from(j: TensorJson) -> Result<Self> {
        Tensor::new(j.x_space.try_into()?, j.y_space.try_into()?, Matrix::try_from(j.coeffs)?)
    }
}

impl Tensor {
    pub fn new(x_space: SpaceDescriptor, y_space: SpaceDescriptor, coeffs: Matrix) -> Result<Self> {
        let t = Tensor {
            x_space,
            y_space,
            coeffs,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.x_space.ambient_dim(), self.y_space.ambient_dim());
        if self.coeffs.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.coeffs.rows(),
            });
        }
        if self.coeffs.cols() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: self.coeffs.cols(),
            });
        }
        if self.coeffs.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("tensor coefficients"));
        }
        Ok(())
    }

    /// `x ⊗ y`.
    pub fn product(x_space: SpaceDescriptor, y_space: SpaceDescriptor, x: &[f64], y: &[f64]) -> Result<Self> {
        Self::new(x_space, y_space, Matrix::outer(x, y))
    }

    /// The same tensor viewed in `Y ⊗ X`.
    pub fn flip(&self) -> Tensor {
        Tensor {
            x_space: self.y_space.clone(),
            y_space: self.x_space.clone(),
            coeffs: self.coeffs.transpose(),
        }
    }

    pub fn scale(&self, s: f64) -> Tensor {
        Tensor {
            coeffs: self.coeffs.scale(s),
            ..self.clone()
        }
    }

    pub fn with_coeffs(&self, coeffs: Matrix) -> Result<Tensor> {
        Tensor::new(self.x_space.clone(), self.y_space.clone(), coeffs)
    }

    fn is_schatten_pair(&self) -> bool {
        self.x_space.is_schatten() || self.y_space.is_schatten()
    }

    fn quantum(&self) -> Result<QuantumTensor> {
        QuantumTensor::new(self.x_space.dim(), self.y_space.dim(), self.coeffs.clone())
    }

    fn unsupported(&self) -> Error {
        Error::UnsupportedPair(self.x_space.label(), self.y_space.label())
    }
}

/// A bound certificate: a tag naming the argument and the witness data that
/// reproduces the bound when plugged back in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub tag: String,
    #[serde(default)]
    pub witness: Vec<Vec<f64>>,
}

impl Certificate {
    pub fn new(tag: impl Into<String>, witness: Vec<Vec<f64>>) -> Self {
        Certificate {
            tag: tag.into(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_certificate: Certificate,
    pub upper_certificate: Certificate,
}

impl CertifiedInterval {
    pub fn exact(v: f64, tag: &str) -> Self {
        CertifiedInterval {
            lower: v,
            upper: v,
            lower_certificate: Certificate::new(tag, vec![]),
            upper_certificate: Certificate::new(tag, vec![]),
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.lower <= self.upper + 1e-9 * self.upper.abs().max(1.0)
    }
}

/// Either an exact value or a certified enclosure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormValue {
    Exact(f64),
    Interval(CertifiedInterval),
}

impl NormValue {
    pub fn lower(&self) -> f64 {
        match self {
            NormValue::Exact(v) => *v,
            NormValue::Interval(i) => i.lower,
        }
    }

    pub fn upper(&self) -> f64 {
        match self {
            NormValue::Exact(v) => *v,
            NormValue::Interval(i) => i.upper,
        }
    }

    pub fn exact(&self) -> Option<f64> {
        match self {
            NormValue::Exact(v) => Some(*v),
            NormValue::Interval(_) => None,
        }
    }
}

fn check_pairs(count: usize) -> Result<()> {
    if count > MAX_VERTEX_PAIRS {
        return Err(Error::VertexBudgetExceeded {
            count,
            limit: MAX_VERTEX_PAIRS,
        });
    }
    Ok(())
}

/// Maximizing dual-vertex pair of the injective norm on a polytopal pair.
#[derive(Debug, Clone, PartialEq)]
pub struct InjectiveMaximizer {
    pub value: f64,
    pub x_functional: Vec<f64>,
    pub y_functional: Vec<f64>,
}

/// Exact injective norm of a polytopal pair with the first maximizing pair
/// of dual vertices (lexicographic in vertex indices).
pub fn injective_maximizer(z: &Tensor) -> Result<InjectiveMaximizer> {
    z.validate()?;
    let (x, y) = (&z.x_space, &z.y_space);
    if !(x.is_polytopal() && y.is_polytopal()) {
        return Err(z.unsupported());
    }
    let (cx, cy) = (
        x.dual_vertex_count().ok_or_else(|| z.unsupported())?,
        y.dual_vertex_count().ok_or_else(|| z.unsupported())?,
    );
    check_pairs(cx.saturating_mul(cy))?;
    let dx = x.dual_ball_vertex_list()?;
    let dy = y.dual_ball_vertex_list()?;
    let zy: Vec<Vec<f64>> = dy.iter().map(|g| z.coeffs.mul_vec(g)).collect();
    let mut best = (f64::NEG_INFINITY, 0, 0);
    for (i, f) in dx.iter().enumerate() {
        for (j, zg) in zy.iter().enumerate() {
            let v = dot(f, zg);
            if v > best.0 {
                best = (v, i, j);
            }
        }
    }
    Ok(InjectiveMaximizer {
        value: best.0.max(0.0),
        x_functional: dx[best.1].clone(),
        y_functional: dy[best.2].clone(),
    })
}

/// `ε(z) = max{(x* ⊗ y*)(z) : x* ∈ B_{X*}, y* ∈ B_{Y*}}`.
///
/// Exact for pairs where one side has a polytopal dual ball and for ℓ₂ ⊗ ℓ₂;
/// a certified interval for `S₁ ⊗ S₁` and `S∞ ⊗ S∞`.
pub fn injective_norm(z: &Tensor) -> Result<NormValue> {
    injective_norm_with(z, &SeesawOptions::default())
}

pub fn injective_norm_with(z: &Tensor, opts: &SeesawOptions) -> Result<NormValue> {
    z.validate()?;
    let (x, y) = (&z.x_space, &z.y_space);
    use SpaceKind::*;
    match (x.kind(), y.kind()) {
        (Schatten1Sa, Schatten1Sa) => {
            return Ok(NormValue::Interval(quantum::seesaw_epsilon_s1(&z.quantum()?, opts)?))
        }
        (SchattenInfSa, SchattenInfSa) => {
            return Ok(NormValue::Interval(quantum::seesaw_epsilon_sinf(&z.quantum()?, opts)?))
        }
        (L2, L2) => return Ok(NormValue::Exact(spectral_norm(&z.coeffs)?)),
        _ => {}
    }
    if z.coeffs.is_zero() && !z.is_schatten_pair() {
        return Ok(NormValue::Exact(0.0));
    }
    if x.is_polytopal() && y.is_polytopal() {
        return Ok(NormValue::Exact(injective_maximizer(z)?.value));
    }
    // One polytopal side: enumerate its dual vertices and take the other
    // side's norm of the partial contraction.
    if let Some(cx) = x.dual_vertex_count() {
        check_pairs(cx)?;
        let mut best = 0.0f64;
        for f in x.dual_ball_vertex_list()? {
            best = best.max(y.fast_norm(&z.coeffs.tr_mul_vec(&f))?);
        }
        return Ok(NormValue::Exact(best));
    }
    if let Some(cy) = y.dual_vertex_count() {
        check_pairs(cy)?;
        let mut best = 0.0f64;
        for g in y.dual_ball_vertex_list()? {
            best = best.max(x.fast_norm(&z.coeffs.mul_vec(&g))?);
        }
        return Ok(NormValue::Exact(best));
    }
    Err(z.unsupported())
}

/// Result of the projective LP: value and a dual tensor `W` in `X* ⊗ Y*`
/// with `ε(W) ≤ 1` and `⟨W, Z⟩ = π(z)`.
#[derive(Debug, Clone)]
pub struct ProjectiveLp {
    pub value: f64,
    pub dual: Matrix,
    /// Nonzero decomposition weights `(λ, x-vertex, y-vertex)`.
    pub decomposition: Vec<(f64, Vec<f64>, Vec<f64>)>,
}

/// One representative of each `±v` pair, keeping the first met.
fn half_vertices(v: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(v.len() / 2 + 1);
    for p in v {
        let dup = out
            .iter()
            .any(|q| q.iter().zip(p).all(|(a, b)| (a + b).abs() <= 1e-12));
        if !dup {
            out.push(p.clone());
        }
    }
    out
}

/// `min Σ λᵢⱼ` subject to `Σ λᵢⱼ vᵢ wⱼᵀ = Z`, `λ ≥ 0`, where `vx` and `vy`
/// are the vertices of centrally symmetric unit balls.
pub fn projective_lp(vx: &[Vec<f64>], vy: &[Vec<f64>], coeffs: &Matrix) -> Result<ProjectiveLp> {
    let (n, m) = (coeffs.rows(), coeffs.cols());
    let hx = half_vertices(vx);
    let cols = hx.len().saturating_mul(vy.len());
    if cols > MAX_LP_COLUMNS {
        return Err(Error::VertexBudgetExceeded {
            count: cols,
            limit: MAX_LP_COLUMNS,
        });
    }
    let a = Matrix::from_fn(n * m, cols, |r, c| {
        let (i, j) = (c / vy.len(), c % vy.len());
        hx[i][r / m] * vy[j][r % m]
    });
    let sol = lp_solve(&LpProblem::nonnegative(
        vec![1.0; cols],
        a,
        coeffs.as_slice().to_vec(),
    ))?;
    let decomposition = sol
        .x
        .iter()
        .enumerate()
        .filter(|(_, &l)| l > 1e-12)
        .map(|(c, &l)| (l, hx[c / vy.len()].clone(), vy[c % vy.len()].clone()))
        .collect();
    Ok(ProjectiveLp {
        value: sol.value.max(0.0),
        dual: Matrix::from_vec(n, m, sol.duals)?,
        decomposition,
    })
}

/// Projective LP on a polytopal pair, with its dual witness.
pub fn projective_dual_witness(z: &Tensor) -> Result<ProjectiveLp> {
    z.validate()?;
    let (x, y) = (&z.x_space, &z.y_space);
    if !(x.is_polytopal() && y.is_polytopal()) {
        return Err(z.unsupported());
    }
    if z.coeffs.is_zero() {
        return Ok(ProjectiveLp {
            value: 0.0,
            dual: Matrix::zeros(z.coeffs.rows(), z.coeffs.cols()),
            decomposition: vec![],
        });
    }
    let cols = x.vertex_count().unwrap_or(usize::MAX) / 2;
    if cols.saturating_mul(y.vertex_count().unwrap_or(usize::MAX)) > MAX_LP_COLUMNS {
        return Err(Error::VertexBudgetExceeded {
            count: cols.saturating_mul(y.vertex_count().unwrap_or(usize::MAX)),
            limit: MAX_LP_COLUMNS,
        });
    }
    projective_lp(&x.ball_vertex_list()?, &y.ball_vertex_list()?, &z.coeffs)
}

/// `π(z) = min{Σ ‖xᵢ‖‖yᵢ‖ : z = Σ xᵢ ⊗ yᵢ}`.
///
/// Closed forms for ℓ₁ factors and ℓ₂ ⊗ ℓ₂, an LP over products of ball
/// vertices for other polytopal pairs, and a certified interval for
/// `S₁ ⊗ S₁`.
pub fn projective_norm(z: &Tensor) -> Result<NormValue> {
    z.validate()?;
    let (x, y) = (&z.x_space, &z.y_space);
    use SpaceKind::*;
    match (x.kind(), y.kind()) {
        (Schatten1Sa, Schatten1Sa) => {
            return Ok(NormValue::Interval(quantum::pi_interval_s1(&z.quantum()?)?))
        }
        (L2, L2) => return Ok(NormValue::Exact(nuclear_norm(&z.coeffs)?)),
        (L1, _) => {
            let mut s = 0.0;
            for i in 0..z.coeffs.rows() {
                s += y.fast_norm(z.coeffs.row(i))?;
            }
            return Ok(NormValue::Exact(s));
        }
        (_, L1) => {
            let mut s = 0.0;
            for j in 0..z.coeffs.cols() {
                s += x.fast_norm(&z.coeffs.col(j))?;
            }
            return Ok(NormValue::Exact(s));
        }
        _ => {}
    }
    if x.is_polytopal() && y.is_polytopal() {
        return Ok(NormValue::Exact(projective_dual_witness(z)?.value));
    }
    Err(z.unsupported())
}

/// `π(z)/ε(z)`, a lower bound on the ratio constant of the pair.
///
/// For interval-valued pairs the result is `[π_lower/ε_upper, π_upper/ε_lower]`.
pub fn ratio_witness(z: &Tensor) -> Result<NormValue> {
    ratio_witness_with(z, &SeesawOptions::default())
}

pub fn ratio_witness_with(z: &Tensor, opts: &SeesawOptions) -> Result<NormValue> {
    z.validate()?;
    if z.coeffs.is_zero() {
        return Err(Error::ZeroTensor);
    }
    let eps = injective_norm_with(z, opts)?;
    let pi = projective_norm(z)?;
    match (&eps, &pi) {
        (NormValue::Exact(e), NormValue::Exact(p)) => Ok(NormValue::Exact(p / e)),
        _ => {
            let cert = |n: &NormValue, lower: bool| match n {
                NormValue::Exact(_) => Certificate::new("exact", vec![]),
                NormValue::Interval(i) if lower => i.lower_certificate.clone(),
                NormValue::Interval(i) => i.upper_certificate.clone(),
            };
            let upper = if eps.lower() > 0.0 {
                pi.upper() / eps.lower()
            } else {
                f64::INFINITY
            };
            Ok(NormValue::Interval(CertifiedInterval {
                lower: pi.lower() / eps.upper(),
                upper,
                lower_certificate: Certificate::new(
                    format!("pi-lower[{}]/eps-upper[{}]", cert(&pi, true).tag, cert(&eps, false).tag),
                    vec![],
                ),
                upper_certificate: Certificate::new(
                    format!("pi-upper[{}]/eps-lower[{}]", cert(&pi, false).tag, cert(&eps, true).tag),
                    vec![],
                ),
            }))
        }
    }
}

/// Operator norm of `a : E → F` (`a` is `dim F × dim E` in coordinates).
pub fn operator_norm(a: &Matrix, from: &SpaceDescriptor, to: &SpaceDescriptor) -> Result<f64> {
    if a.cols() != from.ambient_dim() || a.rows() != to.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: to.ambient_dim() * from.ambient_dim(),
            got: a.rows() * a.cols(),
        });
    }
    if from.kind() == SpaceKind::L2 && to.kind() == SpaceKind::L2 {
        return spectral_norm(a);
    }
    if let Some(c) = from.vertex_count() {
        check_pairs(c)?;
        let mut best = 0.0f64;
        for v in from.ball_vertex_list()? {
            best = best.max(to.fast_norm(&a.mul_vec(&v))?);
        }
        return Ok(best);
    }
    if let Some(c) = to.dual_vertex_count() {
        check_pairs(c)?;
        let mut best = 0.0f64;
        for f in to.dual_ball_vertex_list()? {
            best = best.max(from.dual_norm(&a.tr_mul_vec(&f))?);
        }
        return Ok(best);
    }
    Err(Error::UnsupportedPair(from.label(), to.label()))
}

/// `tr(v·u)` for contractions `u : X → Y*` and `v : Y* → X`.
pub fn trace_ratio_bound(
    u: &Matrix,
    v: &Matrix,
    x_space: &SpaceDescriptor,
    y_space: &SpaceDescriptor,
) -> Result<f64> {
    let y_dual = y_space.dual_space()?;
    let nu = operator_norm(u, x_space, &y_dual)?;
    let nv = operator_norm(v, &y_dual, x_space)?;
    for norm in [nu, nv] {
        if norm > 1.0 + 1e-9 {
            return Err(Error::NotContraction { norm });
        }
    }
    Ok(v.matmul(u)?.trace())
}
