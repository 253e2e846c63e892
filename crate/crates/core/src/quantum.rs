//! Bounds for tensor norms on `Herm(n) ⊗ Herm(m)` with trace-class and
//! operator-norm factors.
//!
//! A [`QuantumTensor`] holds the `n² × m²` coefficient matrix `C` of
//! `z = Σ C_ab Bₐ ⊗ B'_b`, where `Bₐ` and `B'_b` are the bases of
//! [`hermitian_basis`]. For `x ∈ Herm(n)` with coordinates `a`, the partial
//! contraction `ẑ(x) = (tr(x·) ⊗ id)(z)` has coordinates `Cᵀa`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::MAX_QUANTUM_DIM;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, svd, Matrix};
use crate::montecarlo::{normals, stream};
pub use crate::spaces::hermitian_basis;
use crate::spaces::HermitianMatrix;
use crate::tensornorms::{Certificate, CertifiedInterval};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "QuantumTensorJson")]
pub struct QuantumTensor {
    pub n: usize,
    pub m: usize,
    pub coeffs: Matrix,
}

/// Wire form of [`QuantumTensor`], before validation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantumTensorJson {
    pub n: usize,
    pub m: usize,
    pub coeffs: Vec<Vec<f64>>,
}

impl TryFrom<QuantumTensorJson> for QuantumTensor {
    type Error = Error;
    fn try_from(j: QuantumTensorJson) -> Result<Self> {
        QuantumTensor::new(j.n, j.m, Matrix::try_from(j.coeffs)?)
    }
}

impl QuantumTensor {
    pub fn new(n: usize, m: usize, coeffs: Matrix) -> Result<Self> {
        let t = QuantumTensor { n, m, coeffs };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (k, what) in [(self.n, "n"), (self.m, "m")] {
            if k == 0 {
                return Err(Error::InvalidInput(format!("{what} must be at least 1")));
            }
            if k > MAX_QUANTUM_DIM {
                return Err(Error::DimensionTooLarge {
                    what: "Hermitian tensor factor",
                    dim: k,
                    limit: MAX_QUANTUM_DIM,
                });
            }
        }
        if self.coeffs.rows() != self.n * self.n || self.coeffs.cols() != self.m * self.m {
            return Err(Error::DimensionMismatch {
                expected: self.n * self.n * self.m * self.m,
                got: self.coeffs.rows() * self.coeffs.cols(),
            });
        }
        if self.coeffs.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("tensor coefficients"));
        }
        Ok(())
    }

    pub fn zeros(n: usize, m: usize) -> Result<Self> {
        Self::new(n, m, Matrix::zeros(n * n, m * m))
    }

    /// `x ⊗ y`.
    pub fn product(x: &HermitianMatrix, y: &HermitianMatrix) -> Result<Self> {
        Self::new(x.k(), y.k(), Matrix::outer(&x.to_coords(), &y.to_coords()))
    }

    /// Coordinates of a Hermitian operator on `Cⁿ ⊗ Cᵐ`.
    pub fn from_operator(n: usize, m: usize, z: &HermitianMatrix) -> Result<Self> {
        if z.k() != n * m {
            return Err(Error::DimensionMismatch {
                expected: n * m,
                got: z.k(),
            });
        }
        let (ba, bb) = (hermitian_basis(n), hermitian_basis(m));
        let coeffs = Matrix::from_fn(n * n, m * m, |a, b| ba[a].kron(&bb[b]).hs_dot(z));
        Self::new(n, m, coeffs)
    }

    /// `z` as a Hermitian operator on `Cⁿ ⊗ Cᵐ`.
    pub fn operator(&self) -> HermitianMatrix {
        let ba = hermitian_basis(self.n);
        let mut out = HermitianMatrix::zeros(self.n * self.m);
        for (a, b) in ba.iter().enumerate() {
            let right = HermitianMatrix::from_coords(self.m, self.coeffs.row(a))
                .expect("row length is m²");
            out = out.add(&b.kron(&right));
        }
        out
    }

    /// `ẑ(x)` for `x` given by coordinates.
    pub fn contract_left(&self, a: &[f64]) -> Result<HermitianMatrix> {
        HermitianMatrix::from_coords(self.m, &self.coeffs.tr_mul_vec(a))
    }

    /// `(id ⊗ tr(·y))(z)` for `y` given by coordinates.
    pub fn contract_right(&self, b: &[f64]) -> Result<HermitianMatrix> {
        HermitianMatrix::from_coords(self.n, &self.coeffs.mul_vec(b))
    }

    /// `tr(z²)`.
    pub fn hs_norm_sq(&self) -> f64 {
        self.coeffs.frobenius_dot(&self.coeffs)
    }

    /// `(x ⊗ y)(z) = aᵀ C b`.
    pub fn pair(&self, a: &[f64], b: &[f64]) -> f64 {
        self.coeffs.bilinear(a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeesawOptions {
    pub seed: u64,
    pub restarts: usize,
    pub max_rounds: usize,
}

impl Default for SeesawOptions {
    fn default() -> Self {
        SeesawOptions {
            seed: 0,
            restarts: 16,
            max_rounds: 500,
        }
    }
}

/// Which dual unit ball the see-saw optimizes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DualBall {
    /// Operator-norm ball; best response is the matrix sign.
    OpNorm,
    /// Trace-norm ball; best response is a signed top eigenprojector.
    TraceNorm,
}

impl DualBall {
    fn respond(self, h: &HermitianMatrix) -> Result<(f64, Vec<f64>)> {
        match self {
            DualBall::OpNorm => Ok((h.trace_norm()?, h.sign()?.to_coords())),
            DualBall::TraceNorm => Ok((h.op_norm()?, h.top_projector()?.to_coords())),
        }
    }

    fn norm(self, k: usize, c: &[f64]) -> Result<f64> {
        let h = HermitianMatrix::from_coords(k, c)?;
        match self {
            DualBall::OpNorm => h.op_norm(),
            DualBall::TraceNorm => h.trace_norm(),
        }
    }
}

fn check_size(z: &QuantumTensor) -> Result<()> {
    z.validate()
}

/// Alternating maximization of `aᵀ C b` over a product of dual balls.
/// Returns the best value and its witness `(a, b)`.
fn seesaw(z: &QuantumTensor, ball: DualBall, opts: &SeesawOptions) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let (n, m) = (z.n, z.m);
    let mut best = (0.0f64, vec![0.0; n * n], vec![0.0; m * m]);
    if z.coeffs.is_zero() {
        return Ok(best);
    }
    let top = svd(&z.coeffs)?.u.col(0);
    for r in 0..opts.restarts.max(1) {
        let start = if r == 0 {
            HermitianMatrix::from_coords(n, &top)?
        } else {
            gue_sample_with(&mut stream(opts.seed, r as u64), n)
        };
        let (_, mut a) = ball.respond(&start)?;
        let mut value = f64::NEG_INFINITY;
        let mut flat = 0;
        let mut b = vec![0.0; m * m];
        for _ in 0..opts.max_rounds {
            let (_, nb) = ball.respond(&z.contract_left(&a)?)?;
            let (v, na) = ball.respond(&z.contract_right(&nb)?)?;
            b = nb;
            a = na;
            if v - value <= 1e-10 * v.abs().max(1e-300) {
                flat += 1;
                if flat >= 3 {
                    break;
                }
            } else {
                flat = 0;
            }
            value = value.max(v);
        }
        let exact = z.pair(&a, &b);
        if exact > best.0 {
            best = (exact, a, b);
        }
    }
    Ok(best)
}

/// Upper bound on `ε` for `S₁ ⊗ S₁`: the smaller of the trace norm of `z`
/// on `Cⁿ ⊗ Cᵐ` and the Hilbert–Schmidt factorization bound `√(nm)·‖C‖₂→₂`.
pub fn epsilon_upper_s1(z: &QuantumTensor) -> Result<(f64, &'static str)> {
    check_size(z)?;
    let trace = z.operator().trace_norm()?;
    let hs = ((z.n * z.m) as f64).sqrt() * singular_values(&z.coeffs)?.first().copied().unwrap_or(0.0);
    Ok(if trace <= hs {
        (trace, "trace-norm")
    } else {
        (hs, "hilbert-schmidt-factorization")
    })
}

/// Upper bound on `ε` for `S∞ ⊗ S∞`: the operator norm of `z` on `Cⁿ ⊗ Cᵐ`.
pub fn epsilon_upper_sinf(z: &QuantumTensor) -> Result<f64> {
    check_size(z)?;
    z.operator().op_norm()
}

/// `ε` on `S₁ⁿ ⊗ S₁ᵐ`: see-saw lower bound over operator-norm balls,
/// upper bound from [`epsilon_upper_s1`].
pub fn seesaw_epsilon_s1(z: &QuantumTensor, opts: &SeesawOptions) -> Result<CertifiedInterval> {
    check_size(z)?;
    let (lower, a, b) = seesaw(z, DualBall::OpNorm, opts)?;
    let (upper, tag) = epsilon_upper_s1(z)?;
    Ok(CertifiedInterval {
        lower,
        upper,
        lower_certificate: Certificate::new("seesaw-sign-witness", vec![a, b]),
        upper_certificate: Certificate::new(tag, vec![]),
    })
}

/// `ε` on `S∞ⁿ ⊗ S∞ᵐ`: see-saw over rank-one projectors, operator-norm upper bound.
pub fn seesaw_epsilon_sinf(z: &QuantumTensor, opts: &SeesawOptions) -> Result<CertifiedInterval> {
    check_size(z)?;
    let (lower, a, b) = seesaw(z, DualBall::TraceNorm, opts)?;
    Ok(CertifiedInterval {
        lower,
        upper: epsilon_upper_sinf(z)?,
        lower_certificate: Certificate::new("seesaw-projector-witness", vec![a, b]),
        upper_certificate: Certificate::new("operator-norm", vec![]),
    })
}

/// Re-checks a see-saw lower certificate: both witnesses lie in their dual
/// balls and reproduce the bound.
pub fn verify_epsilon_lower(z: &QuantumTensor, iv: &CertifiedInterval, trace_class: bool) -> Result<bool> {
    let w = &iv.lower_certificate.witness;
    if w.len() != 2 {
        return Ok(iv.lower == 0.0);
    }
    let ball = if trace_class { DualBall::OpNorm } else { DualBall::TraceNorm };
    let ok_a = ball.norm(z.n, &w[0])? <= 1.0 + 1e-9;
    let ok_b = ball.norm(z.m, &w[1])? <= 1.0 + 1e-9;
    let v = z.pair(&w[0], &w[1]);
    Ok(ok_a && ok_b && (v - iv.lower).abs() <= 1e-9 * v.abs().max(1.0))
}

/// `tr(z²) / ‖z‖_op`, a lower bound on `π` for `S₁ ⊗ S₁` obtained by
/// pairing `z` with itself and bounding its `S∞ ⊗ S∞` injective norm by the
/// operator norm.
pub fn pi_lower_bound_trace(z: &QuantumTensor) -> Result<f64> {
    check_size(z)?;
    let tr2 = z.hs_norm_sq();
    if tr2 == 0.0 {
        return Ok(0.0);
    }
    Ok(tr2 / epsilon_upper_sinf(z)?)
}

/// One term `weight · left ⊗ right` of the Hermitian decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTerm {
    pub label: String,
    pub weight: f64,
    /// Coordinates of the left factor (`E_jj`, `F_jk` or `H_jk`).
    pub left: Vec<f64>,
    /// Coordinates of `ẑ(left)`.
    pub right: Vec<f64>,
    /// `weight · ‖left‖₁ · ‖right‖₁`.
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Sum of term costs: an upper bound on `π(z)`.
    pub value: f64,
    pub terms: Vec<DecompositionTerm>,
    /// `‖z − Σ terms‖_HS`.
    pub reconstruction_error: f64,
    /// `2√2 (Σⱼ √λⱼ + 2 Σ_{j<k} √(λⱼ+λₖ))`: the constant the chain would give
    /// per unit of injective norm if the weights came from an optimal state.
    /// Reported only.
    pub state_chain_constant: f64,
}

/// Orthonormal basis `u₁ … uₙ` of `Cⁿ`, stored as the real and imaginary
/// parts of the unitary whose columns are the `uⱼ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexBasis {
    pub re: Matrix,
    pub im: Matrix,
}

impl ComplexBasis {
    pub fn standard(n: usize) -> Self {
        ComplexBasis {
            re: Matrix::identity(n),
            im: Matrix::zeros(n, n),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.re.rows() != n || self.re.cols() != n || self.im.rows() != n || self.im.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.re.rows(),
            });
        }
        for j in 0..n {
            for k in 0..n {
                let (rj, ij, rk, ik) = (self.re.col(j), self.im.col(j), self.re.col(k), self.im.col(k));
                // ⟨u_j, u_k⟩ = Σ conj(u_j) u_k
                let re: f64 = (0..n).map(|t| rj[t] * rk[t] + ij[t] * ik[t]).sum();
                let im: f64 = (0..n).map(|t| rj[t] * ik[t] - ij[t] * rk[t]).sum();
                let want = if j == k { 1.0 } else { 0.0 };
                if (re - want).abs() > 1e-9 || im.abs() > 1e-9 {
                    return Err(Error::InvalidInput("basis is not orthonormal".into()));
                }
            }
        }
        Ok(())
    }

    /// `u_j u_k†` as (real, imaginary) parts.
    fn outer(&self, j: usize, k: usize) -> (Matrix, Matrix) {
        let (a, b) = (self.re.col(j), self.im.col(j));
        let (c, d) = (self.re.col(k), self.im.col(k));
        let n = a.len();
        let re = Matrix::from_fn(n, n, |p, q| a[p] * c[q] + b[p] * d[q]);
        let im = Matrix::from_fn(n, n, |p, q| b[p] * c[q] - a[p] * d[q]);
        (re, im)
    }
}

fn check_weights(w: &[f64], n: usize) -> Result<()> {
    if w.len() != n {
        return Err(Error::BadProbabilityVector(format!(
            "expected {n} weights, got {}",
            w.len()
        )));
    }
    if w.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::BadProbabilityVector("weights must be finite and nonnegative".into()));
    }
    let s: f64 = w.iter().sum();
    if (s - 1.0).abs() > 1e-12 {
        return Err(Error::BadProbabilityVector(format!("weights sum to {s}")));
    }
    Ok(())
}

/// Upper bound on `π` for `S₁ ⊗ S₁` from the exact decomposition
/// `z = Σⱼ Eⱼⱼ ⊗ ẑ(Eⱼⱼ) + ½ Σ_{j<k} (F_jk ⊗ ẑ(F_jk) + H_jk ⊗ ẑ(H_jk))`
/// in the basis `u` (standard basis by default), with
/// `E_jk = u_j u_k†`, `F = E_jk + E_kj`, `H = i(E_jk − E_kj)`.
///
/// `weights` (uniform by default) only enter the reported
/// `state_chain_constant`.
pub fn pi_upper_decomposition(
    z: &QuantumTensor,
    weights: Option<&[f64]>,
    basis: Option<&ComplexBasis>,
) -> Result<Decomposition> {
    check_size(z)?;
    let n = z.n;
    let uniform = vec![1.0 / n as f64; n];
    let w = weights.unwrap_or(&uniform);
    check_weights(w, n)?;
    let std_basis = ComplexBasis::standard(n);
    let u = basis.unwrap_or(&std_basis);
    u.validate(n)?;

    let mut terms = Vec::with_capacity(n * n);
    let mut push = |label: String, weight: f64, h: HermitianMatrix| -> Result<()> {
        let left = h.to_coords();
        let right_h = z.contract_left(&left)?;
        let cost = weight * h.trace_norm()? * right_h.trace_norm()?;
        terms.push(DecompositionTerm {
            label,
            weight,
            left,
            right: right_h.to_coords(),
            cost,
        });
        Ok(())
    };
    for j in 0..n {
        let (re, im) = u.outer(j, j);
        push(format!("E{j}{j}"), 1.0, HermitianMatrix::new(re, im)?)?;
    }
    for j in 0..n {
        for k in j + 1..n {
            let (re, im) = u.outer(j, k);
            let f = HermitianMatrix::new(re.add(&re.transpose()), im.sub(&im.transpose()))?;
            // i(M − M†) with M = re + i·im: real part −(im + imᵀ), imaginary part re − reᵀ
            let h = HermitianMatrix::new(im.add(&im.transpose()).scale(-1.0), re.sub(&re.transpose()))?;
            push(format!("F{j}{k}"), 0.5, f)?;
            push(format!("H{j}{k}"), 0.5, h)?;
        }
    }

    let mut rec = Matrix::zeros(n * n, z.m * z.m);
    for t in &terms {
        rec = rec.add(&Matrix::outer(&t.left, &t.right).scale(t.weight));
    }
    let reconstruction_error = rec.sub(&z.coeffs).frobenius_norm();
    let mut chain = w.iter().map(|l| l.sqrt()).sum::<f64>();
    for j in 0..n {
        for k in j + 1..n {
            chain += 2.0 * (w[j] + w[k]).sqrt();
        }
    }
    Ok(Decomposition {
        value: terms.iter().map(|t| t.cost).sum(),
        terms,
        reconstruction_error,
        state_chain_constant: 2.0 * std::f64::consts::SQRT_2 * chain,
    })
}

/// Lower bound on `π` for `S₁ ⊗ S₁`: the better of two duality witnesses `w` with `ε_{S∞⊗S∞}(w) ≤ ‖w‖_op`,
/// namely `w = z` (giving [`pi_lower_bound_trace`]) and `w = sign(z)` (giving
/// the trace norm of `z`).
pub fn pi_lower_s1(z: &QuantumTensor) -> Result<(f64, Certificate)> {
    check_size(z)?;
    let by_trace = pi_lower_bound_trace(z)?;
    let op = z.operator();
    let by_sign = op.trace_norm()?;
    Ok(if by_sign >= by_trace {
        (by_sign, Certificate::new("duality-witness-sign", vec![op.sign()?.to_coords()]))
    } else {
        (by_trace, Certificate::new("duality-witness-self", vec![]))
    })
}

/// Enclosure of `π` on `S₁ ⊗ S₁`: [`pi_lower_s1`] below,
/// [`pi_upper_decomposition`] with default weights above.
pub fn pi_interval_s1(z: &QuantumTensor) -> Result<CertifiedInterval> {
    let (lower, lower_certificate) = pi_lower_s1(z)?;
    let dec = pi_upper_decomposition(z, None, None)?;
    Ok(CertifiedInterval {
        lower,
        upper: dec.value,
        lower_certificate,
        upper_certificate: Certificate::new(
            "hermitian-decomposition",
            dec.terms.iter().map(|t| vec![t.weight, t.cost]).collect(),
        ),
    })
}

/// GUE sample: independent standard Gaussian coordinates in the
/// Hilbert–Schmidt-orthonormal basis, so that `E tr(g²) = k²`. Off-diagonal
/// entries then have `E|gⱼₖ|² = 1` and diagonal entries variance 1.
pub fn gue_sample(k: usize, seed: u64) -> HermitianMatrix {
    gue_sample_with(&mut ChaCha8Rng::seed_from_u64(seed), k)
}

pub fn gue_sample_with<R: Rng + ?Sized>(rng: &mut R, k: usize) -> HermitianMatrix {
    HermitianMatrix::from_coords(k, &normals(rng, k * k)).expect("k² coordinates")
}

/// Tensor with independent standard Gaussian coefficients, the GUE on
/// `Herm(n) ⊗ Herm(m) ≅ Herm(nm)`.
pub fn gue_tensor(n: usize, m: usize, seed: u64) -> Result<QuantumTensor> {
    gue_tensor_with(&mut ChaCha8Rng::seed_from_u64(seed), n, m)
}

pub fn gue_tensor_with<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Result<QuantumTensor> {
    if n > MAX_QUANTUM_DIM || m > MAX_QUANTUM_DIM {
        return Err(Error::DimensionTooLarge {
            what: "Hermitian tensor factor",
            dim: n.max(m),
            limit: MAX_QUANTUM_DIM,
        });
    }
    QuantumTensor::new(n, m, Matrix::from_vec(n * n, m * m, normals(rng, n * n * m * m))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
    }

    #[test]
    fn product_tensor_is_exact() {
        let x = HermitianMatrix::real_diag(&[0.5, -0.5]);
        let y = HermitianMatrix::real_diag(&[0.25, 0.75]);
        let z = QuantumTensor::product(&x, &y).unwrap();
        let iv = seesaw_epsilon_s1(&z, &SeesawOptions::default()).unwrap();
        assert!(close(iv.lower, 1.0, 1e-9) && close(iv.upper, 1.0, 1e-9), "{iv:?}");
        assert!(verify_epsilon_lower(&z, &iv, true).unwrap());
    }

    #[test]
    fn swap_operator() {
        // swap = Σ E_ij ⊗ E_ji; tr((x⊗y)·swap) = tr(xy), maximized by x = y = I
        let mut re = Matrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                re[(2 * i + j, 2 * j + i)] = 1.0;
            }
        }
        let swap = HermitianMatrix::new(re, Matrix::zeros(4, 4)).unwrap();
        let z = QuantumTensor::from_operator(2, 2, &swap).unwrap();
        assert!(z.operator().sub(&swap).max_abs() < 1e-12);
        let iv = seesaw_epsilon_s1(&z, &SeesawOptions::default()).unwrap();
        assert!(iv.lower >= 2.0 - 1e-9, "{iv:?}");
        assert!(iv.upper >= iv.lower - 1e-9);
    }

    #[test]
    fn zero_tensor() {
        let z = QuantumTensor::zeros(2, 3).unwrap();
        let iv = seesaw_epsilon_s1(&z, &SeesawOptions::default()).unwrap();
        assert_eq!((iv.lower, iv.upper), (0.0, 0.0));
        assert_eq!(pi_lower_bound_trace(&z).unwrap(), 0.0);
    }

    #[test]
    fn identity_trace_bound() {
        let z = QuantumTensor::from_operator(2, 2, &HermitianMatrix::identity(4)).unwrap();
        assert!(close(z.hs_norm_sq(), 4.0, 1e-12));
        assert!(close(pi_lower_bound_trace(&z).unwrap(), 4.0, 1e-12));
    }

    #[test]
    fn single_product_term() {
        let b = hermitian_basis(2);
        let z = QuantumTensor::product(&b[1], &b[2]).unwrap();
        // ‖b₁‖₁‖b₂‖₁ = 2 and the self-pairing bound is tight here
        assert!(close(z.hs_norm_sq(), 1.0, 1e-12));
        assert!(close(pi_lower_bound_trace(&z).unwrap(), 2.0, 1e-12));
        let iv = pi_interval_s1(&z).unwrap();
        assert!(close(iv.lower, 2.0, 1e-12) && iv.upper >= 2.0 - 1e-12);
    }

    #[test]
    fn decomposition_of_e11_product() {
        let e11 = HermitianMatrix::real_diag(&[1.0, 0.0, 0.0]);
        let y = HermitianMatrix::real_diag(&[2.0, -1.0]);
        let z = QuantumTensor::product(&e11, &y).unwrap();
        let d = pi_upper_decomposition(&z, None, None).unwrap();
        assert!(close(d.value, 3.0, 1e-12));
        assert!(d.reconstruction_error < 1e-12);
    }

    #[test]
    fn uniform_chain_constant() {
        // uniform weights reproduce 4n^{3/2} − 2√2(√2−1)√n
        for n in 1..=5 {
            let z = QuantumTensor::zeros(n, 1).unwrap();
            let d = pi_upper_decomposition(&z, None, None).unwrap();
            let nf = n as f64;
            let want = 4.0 * nf.powf(1.5) - 2.0 * 2f64.sqrt() * (2f64.sqrt() - 1.0) * nf.sqrt();
            assert!(close(d.state_chain_constant, want, 1e-12), "{n}");
        }
    }

    #[test]
    fn bad_weights() {
        let z = QuantumTensor::zeros(2, 2).unwrap();
        assert!(matches!(
            pi_upper_decomposition(&z, Some(&[0.7, 0.7]), None),
            Err(Error::BadProbabilityVector(_))
        ));
        assert!(matches!(
            pi_upper_decomposition(&z, Some(&[1.0]), None),
            Err(Error::BadProbabilityVector(_))
        ));
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            QuantumTensor::zeros(9, 2),
            Err(Error::DimensionTooLarge { .. })
        ));
    }

    #[test]
    fn gue_moments() {
        let samples = 10_000;
        let (mut tr, mut tr2) = (0.0, 0.0);
        for s in 0..samples {
            let g2 = gue_sample(2, s);
            tr += g2.trace();
            let g3 = gue_sample(3, 1_000_000 + s);
            tr2 += g3.hs_norm().powi(2);
        }
        let n = samples as f64;
        // tr g = √2·c₀ at k = 2, so its variance is 2
        assert!((tr / n).abs() <= 3.0 * (2.0 / n).sqrt());
        let mean = tr2 / n;
        assert!((mean - 9.0).abs() <= 0.05 * 9.0, "{mean}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn interval_ordering(seed in 0u64..10_000, n in 1usize..4, m in 1usize..4) {
            let z = gue_tensor(n, m, seed).unwrap();
            let opts = SeesawOptions { restarts: 4, ..SeesawOptions::default() };
            let eps = seesaw_epsilon_s1(&z, &opts).unwrap();
            let pi = pi_interval_s1(&z).unwrap();
            prop_assert!(eps.lower <= eps.upper + 1e-9);
            prop_assert!(pi.lower <= pi.upper + 1e-9);
            prop_assert!(eps.upper <= pi.upper + 1e-9);
            prop_assert!(verify_epsilon_lower(&z, &eps, true).unwrap());
            let d = pi_upper_decomposition(&z, None, None).unwrap();
            prop_assert!(d.reconstruction_error <= 1e-9 * z.hs_norm_sq().sqrt().max(1.0));
            let inf = seesaw_epsilon_sinf(&z, &opts).unwrap();
            prop_assert!(inf.lower <= inf.upper + 1e-9);
            prop_assert!(verify_epsilon_lower(&z, &inf, false).unwrap());
        }

        #[test]
        fn decomposition_in_rotated_basis(seed in 0u64..1000, t in 0.0..6.3f64) {
            let z = gue_tensor(2, 2, seed).unwrap();
            // columns (cos t, i sin t) and (i sin t, cos t)
            let basis = ComplexBasis {
                re: Matrix::from_rows(&[vec![t.cos(), 0.0], vec![0.0, t.cos()]]).unwrap(),
                im: Matrix::from_rows(&[vec![0.0, t.sin()], vec![t.sin(), 0.0]]).unwrap(),
            };
            let d = pi_upper_decomposition(&z, Some(&[0.3, 0.7]), Some(&basis)).unwrap();
            prop_assert!(d.reconstruction_error <= 1e-9 * z.hs_norm_sq().sqrt());
            let lower = pi_lower_bound_trace(&z).unwrap();
            prop_assert!(lower <= d.value + 1e-9);
        }
    }
}
