//! Finite-dimensional normed spaces: ℓ₁, ℓ₂, ℓ∞, centrally symmetric
//! polytopes, and self-adjoint Schatten classes.
//!
//! Schatten spaces of `k × k` Hermitian matrices have ambient dimension `k²`;
//! vectors are coordinates in the Hilbert–Schmidt-orthonormal basis returned
//! by [`hermitian_basis`]. Because that basis is orthonormal, the coordinate
//! dot product is the trace pairing and the dual of the trace-norm space is
//! the operator-norm space in the same coordinates.

use std::f64::consts::SQRT_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::{MAX_BALL_DIM, MAX_LINF_VERTEX_DIM, MAX_POLYTOPE_VERTICES, MAX_QUANTUM_DIM, MAX_SPACE_DIM};
use crate::error::{Error, Result};
use crate::linalg::polyhedral::{polar_of_clean, symmetric_body_vertices};
use crate::linalg::{dot, lp_solve, norm2, sym_eig, sym_eigvals, LpProblem, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    L1,
    L2,
    Linf,
    Polytope,
    #[serde(rename = "schatten1")]
    Schatten1Sa,
    #[serde(rename = "schatteninf")]
    SchattenInfSa,
}

impl SpaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::L1 => "l1",
            SpaceKind::L2 => "l2",
            SpaceKind::Linf => "linf",
            SpaceKind::Polytope => "polytope",
            SpaceKind::Schatten1Sa => "schatten1",
            SpaceKind::SchattenInfSa => "schatteninf",
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A normed space. Immutable; polytope polars are computed at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceJson", into = "SpaceJson")]
pub struct SpaceDescriptor {
    kind: SpaceKind,
    dim: usize,
    vertices: Vec<Vec<f64>>,
    polar: Vec<Vec<f64>>,
}

/// Wire form of [`SpaceDescriptor`], before validation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    pub kind: SpaceKind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
}

impl TryFrom<SpaceJson> for SpaceDescriptor {
    type Error = Error;

    fn try_from(j: SpaceJson) -> Result<Self> {
        match (j.kind, j.vertices) {
            (SpaceKind::Polytope, Some(v)) => {
                let s = SpaceDescriptor::polytope(v)?;
                if s.dim != j.dim {
                    return Err(Error::DimensionMismatch {
                        expected: j.dim,
                        got: s.dim,
                    });
                }
                Ok(s)
            }
            (SpaceKind::Polytope, None) => {
                Err(Error::InvalidInput("polytope space needs \"vertices\"".into()))
            }
            (kind, None) => SpaceDescriptor::new(kind, j.dim),
            (kind, Some(_)) => Err(Error::InvalidInput(format!(
                "\"vertices\" given for {kind} space"
            ))),
        }
    }
}

impl From<SpaceDescriptor> for SpaceJson {
    fn from(s: SpaceDescriptor) -> Self {
        SpaceJson {
            kind: s.kind,
            dim: s.dim,
            vertices: (s.kind == SpaceKind::Polytope).then_some(s.vertices),
        }
    }
}

impl SpaceDescriptor {
    /// Any non-polytope kind.
    pub fn new(kind: SpaceKind, dim: usize) -> Result<Self> {
        if kind == SpaceKind::Polytope {
            return Err(Error::InvalidInput(
                "polytope spaces are built from vertices".into(),
            ));
        }
        if dim == 0 {
            return Err(Error::InvalidInput("space dimension must be at least 1".into()));
        }
        if dim > MAX_SPACE_DIM {
            return Err(Error::DimensionTooLarge {
                what: "space",
                dim,
                limit: MAX_SPACE_DIM,
            });
        }
        if matches!(kind, SpaceKind::Schatten1Sa | SpaceKind::SchattenInfSa) && dim > MAX_QUANTUM_DIM {
            return Err(Error::DimensionTooLarge {
                what: "Schatten space",
                dim,
                limit: MAX_QUANTUM_DIM,
            });
        }
        Ok(SpaceDescriptor {
            kind,
            dim,
            vertices: vec![],
            polar: vec![],
        })
    }

    pub fn l1(n: usize) -> Result<Self> {
        Self::new(SpaceKind::L1, n)
    }

    pub fn l2(n: usize) -> Result<Self> {
        Self::new(SpaceKind::L2, n)
    }

    pub fn linf(n: usize) -> Result<Self> {
        Self::new(SpaceKind::Linf, n)
    }

    pub fn schatten1(k: usize) -> Result<Self> {
        Self::new(SpaceKind::Schatten1Sa, k)
    }

    pub fn schatten_inf(k: usize) -> Result<Self> {
        Self::new(SpaceKind::SchattenInfSa, k)
    }

    /// Space whose unit ball is `conv(vertices)`.
    ///
    /// Duplicates and non-extreme points are dropped; the set must be
    /// centrally symmetric and span `R^d` with `d ≤ 8`.
    pub fn polytope(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.len() > MAX_POLYTOPE_VERTICES {
            return Err(Error::VertexBudgetExceeded {
                count: vertices.len(),
                limit: MAX_POLYTOPE_VERTICES,
            });
        }
        let d = vertices.first().map_or(0, Vec::len);
        if d > MAX_BALL_DIM {
            return Err(Error::DimensionTooLarge {
                what: "polytope space",
                dim: d,
                limit: MAX_BALL_DIM,
            });
        }
        let vertices = symmetric_body_vertices(&vertices)?;
        let polar = polar_of_clean(&vertices)?;
        if polar.len() > MAX_POLYTOPE_VERTICES {
            return Err(Error::VertexBudgetExceeded {
                count: polar.len(),
                limit: MAX_POLYTOPE_VERTICES,
            });
        }
        Ok(SpaceDescriptor {
            kind: SpaceKind::Polytope,
            dim: d,
            vertices,
            polar,
        })
    }

    /// Regular polygon with `sides` vertices on the unit circle (`sides` even, ≥ 4).
    pub fn regular_polygon(sides: usize) -> Result<Self> {
        if sides < 4 || !sides.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "a symmetric regular polygon needs an even number ≥ 4 of sides, got {sides}"
            )));
        }
        let v = (0..sides)
            .map(|j| {
                let t = 2.0 * std::f64::consts::PI * j as f64 / sides as f64;
                vec![snap(t.cos()), snap(t.sin())]
            })
            .collect();
        Self::polytope(v)
    }

    /// Polygon with vertices `±r·(cos θ, sin θ)` for each `(θ, r)`.
    pub fn symmetric_polygon(half: &[(f64, f64)]) -> Result<Self> {
        let mut v = Vec::with_capacity(2 * half.len());
        for &(t, r) in half {
            v.push(vec![r * t.cos(), r * t.sin()]);
            v.push(vec![-r * t.cos(), -r * t.sin()]);
        }
        Self::polytope(v)
    }

    /// The hexagon `conv{(±1,0), (0,±1), ±(2/3,2/3)}`.
    pub fn hexagon() -> Self {
        let t = 2.0 / 3.0;
        Self::polytope(vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
            vec![t, t],
            vec![-t, -t],
        ])
        .expect("hexagon is a valid symmetric polytope")
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    /// `n` for ℓ_p and polytopes, `k` for Schatten spaces of `k × k` matrices.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length of coordinate vectors.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceKind::Schatten1Sa | SpaceKind::SchattenInfSa => self.dim * self.dim,
            _ => self.dim,
        }
    }

    /// Unit-ball vertices have a finite list (ℓ₁, ℓ∞, polytope).
    pub fn is_polytopal(&self) -> bool {
        matches!(self.kind, SpaceKind::L1 | SpaceKind::Linf | SpaceKind::Polytope)
    }

    pub fn is_schatten(&self) -> bool {
        matches!(self.kind, SpaceKind::Schatten1Sa | SpaceKind::SchattenInfSa)
    }

    /// Stored vertices of a polytope space (empty for other kinds).
    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Vertices of the polar body of a polytope space (empty for other kinds).
    pub fn polar_vertices(&self) -> &[Vec<f64>] {
        &self.polar
    }

    fn check(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim(),
                got: x.len(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("vector"));
        }
        Ok(())
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.check(x)?;
        Ok(match self.kind {
            SpaceKind::L1 => l1(x),
            SpaceKind::L2 => norm2(x),
            SpaceKind::Linf => linf(x),
            SpaceKind::Polytope => self.gauge(x)?.0,
            SpaceKind::Schatten1Sa => HermitianMatrix::from_coords(self.dim, x)?.trace_norm()?,
            SpaceKind::SchattenInfSa => HermitianMatrix::from_coords(self.dim, x)?.op_norm()?,
        })
    }

    /// Same value as [`SpaceDescriptor::norm`]; polytopes are evaluated as a
    /// maximum over polar vertices instead of by LP.
    pub(crate) fn fast_norm(&self, x: &[f64]) -> Result<f64> {
        if self.kind == SpaceKind::Polytope {
            self.check(x)?;
            return Ok(self.polar.iter().map(|w| dot(w, x)).fold(0.0, f64::max));
        }
        self.norm(x)
    }

    /// Norm of a Hermitian matrix in a Schatten space.
    pub fn norm_hermitian(&self, h: &HermitianMatrix) -> Result<f64> {
        if h.k() != self.dim || !self.is_schatten() {
            return Err(Error::UnsupportedKind(format!(
                "{} space of dimension {} for a {}×{} matrix",
                self.kind,
                self.dim,
                h.k(),
                h.k()
            )));
        }
        match self.kind {
            SpaceKind::Schatten1Sa => h.trace_norm(),
            _ => h.op_norm(),
        }
    }

    /// Minimal `t` with `x ∈ t·conv(V)` by LP, together with a norming
    /// functional read off the LP duals.
    fn gauge(&self, x: &[f64]) -> Result<(f64, Vec<f64>)> {
        let d = self.dim;
        if x.iter().all(|&v| v == 0.0) {
            return Ok((0.0, vec![0.0; d]));
        }
        let v = &self.vertices;
        let a = Matrix::from_fn(d, v.len(), |i, j| v[j][i]);
        let sol = lp_solve(&LpProblem::nonnegative(vec![1.0; v.len()], a, x.to_vec()))?;
        Ok((sol.value.max(0.0), sol.duals))
    }

    /// A functional `f` with `dual_norm(f) ≤ 1` and `f(x) = norm(x)`.
    pub fn norming_functional(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check(x)?;
        let n = self.norm(x)?;
        if n == 0.0 {
            return Ok(vec![0.0; x.len()]);
        }
        Ok(match self.kind {
            SpaceKind::L1 => x.iter().map(|v| sign(*v)).collect(),
            SpaceKind::L2 => x.iter().map(|v| v / n).collect(),
            SpaceKind::Linf => {
                let i = argmax_abs(x);
                let mut f = vec![0.0; x.len()];
                f[i] = sign(x[i]);
                f
            }
            SpaceKind::Polytope => self.gauge(x)?.1,
            SpaceKind::Schatten1Sa => HermitianMatrix::from_coords(self.dim, x)?.sign()?.to_coords(),
            SpaceKind::SchattenInfSa => {
                let h = HermitianMatrix::from_coords(self.dim, x)?;
                h.top_projector()?.to_coords()
            }
        })
    }

    pub fn dual_norm(&self, f: &[f64]) -> Result<f64> {
        self.check(f)?;
        Ok(match self.kind {
            SpaceKind::L1 => linf(f),
            SpaceKind::L2 => norm2(f),
            SpaceKind::Linf => l1(f),
            SpaceKind::Polytope => self.dual_norm_with_maximizer(f)?.0,
            SpaceKind::Schatten1Sa => HermitianMatrix::from_coords(self.dim, f)?.op_norm()?,
            SpaceKind::SchattenInfSa => HermitianMatrix::from_coords(self.dim, f)?.trace_norm()?,
        })
    }

    /// Polytope dual norm and the first vertex (in stored order) attaining it.
    pub fn dual_norm_with_maximizer(&self, f: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.check(f)?;
        if self.kind != SpaceKind::Polytope {
            return Err(Error::UnsupportedKind(format!(
                "maximizing vertex requested for {} space",
                self.kind
            )));
        }
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, v) in self.vertices.iter().enumerate() {
            let s = dot(f, v);
            if s > best.0 + 1e-15 {
                best = (s, i);
            }
        }
        Ok((best.0.max(0.0), self.vertices[best.1].clone()))
    }

    pub fn dual_space(&self) -> Result<Self> {
        Ok(match self.kind {
            SpaceKind::L1 => Self::linf(self.dim)?,
            SpaceKind::Linf => Self::l1(self.dim)?,
            SpaceKind::L2 => self.clone(),
            SpaceKind::Schatten1Sa => Self::schatten_inf(self.dim)?,
            SpaceKind::SchattenInfSa => Self::schatten1(self.dim)?,
            SpaceKind::Polytope => SpaceDescriptor {
                kind: SpaceKind::Polytope,
                dim: self.dim,
                vertices: self.polar.clone(),
                polar: self.vertices.clone(),
            },
        })
    }

    /// Extreme points of the unit ball.
    pub fn ball_vertex_list(&self) -> Result<Vec<Vec<f64>>> {
        match self.kind {
            SpaceKind::L1 => Ok(cross_polytope(self.dim)),
            SpaceKind::Linf => cube(self.dim),
            SpaceKind::Polytope => Ok(self.vertices.clone()),
            k => Err(Error::UnsupportedKind(format!("{k} ball is not a polytope"))),
        }
    }

    /// Extreme points of the dual unit ball.
    pub fn dual_ball_vertex_list(&self) -> Result<Vec<Vec<f64>>> {
        match self.kind {
            SpaceKind::L1 => cube(self.dim),
            SpaceKind::Linf => Ok(cross_polytope(self.dim)),
            SpaceKind::Polytope => Ok(self.polar.clone()),
            k => Err(Error::UnsupportedKind(format!("{k} dual ball is not a polytope"))),
        }
    }

    /// Number of dual-ball vertices without enumerating them.
    pub(crate) fn dual_vertex_count(&self) -> Option<usize> {
        match self.kind {
            SpaceKind::L1 => 1usize.checked_shl(self.dim as u32).filter(|_| self.dim < 63),
            SpaceKind::Linf => Some(2 * self.dim),
            SpaceKind::Polytope => Some(self.polar.len()),
            _ => None,
        }
    }

    /// Number of primal-ball vertices without enumerating them.
    pub(crate) fn vertex_count(&self) -> Option<usize> {
        match self.kind {
            SpaceKind::Linf => 1usize.checked_shl(self.dim as u32).filter(|_| self.dim < 63),
            SpaceKind::L1 => Some(2 * self.dim),
            SpaceKind::Polytope => Some(self.vertices.len()),
            _ => None,
        }
    }

    /// Short label such as `l1(3)` or `polytope(2, 6 vertices)`.
    pub fn label(&self) -> String {
        match self.kind {
            SpaceKind::Polytope => format!("polytope({}, {} vertices)", self.dim, self.vertices.len()),
            k => format!("{k}({})", self.dim),
        }
    }
}

fn snap(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn argmax_abs(x: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in x.iter().enumerate() {
        if v.abs() > x[best].abs() {
            best = i;
        }
    }
    best
}

pub(crate) fn l1(x: &[f64]) -> f64 {
    x.iter().map(|v| v.abs()).sum()
}

pub(crate) fn linf(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `±eᵢ`, ordered `e₁, −e₁, e₂, −e₂, …`.
fn cross_polytope(n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; n];
            v[i] = s;
            out.push(v);
        }
    }
    out
}

/// All sign vectors; bit `i` of the index set means coordinate `i` is −1.
fn cube(n: usize) -> Result<Vec<Vec<f64>>> {
    if n > MAX_LINF_VERTEX_DIM {
        return Err(Error::DimensionTooLarge {
            what: "cube vertex enumeration",
            dim: n,
            limit: MAX_LINF_VERTEX_DIM,
        });
    }
    Ok((0..1usize << n)
        .map(|mask| {
            (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1.0 } else { 1.0 })
                .collect()
        })
        .collect())
}

/// A complex Hermitian matrix `re + i·im` with `re` symmetric and `im`
/// antisymmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    re: Matrix,
    im: Matrix,
}

impl HermitianMatrix {
    /// Accepts parts that are symmetric/antisymmetric up to `1e-12`
    /// (relative) and projects them exactly.
    pub fn new(re: Matrix, im: Matrix) -> Result<Self> {
        let k = re.rows();
        if !re.is_square() || im.rows() != k || im.cols() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: im.rows(),
            });
        }
        let scale = re.max_abs().max(im.max_abs()).max(1.0);
        let asym = re.asymmetry();
        if asym > 1e-12 * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let sym_im = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .fold(0.0f64, |m, (i, j)| m.max((im[(i, j)] + im[(j, i)]).abs()));
        if sym_im > 1e-12 * scale {
            return Err(Error::NotSymmetric(sym_im));
        }
        let re = Matrix::from_fn(k, k, |i, j| 0.5 * (re[(i, j)] + re[(j, i)]));
        let im = Matrix::from_fn(k, k, |i, j| 0.5 * (im[(i, j)] - im[(j, i)]));
        Ok(HermitianMatrix { re, im })
    }

    pub fn zeros(k: usize) -> Self {
        HermitianMatrix {
            re: Matrix::zeros(k, k),
            im: Matrix::zeros(k, k),
        }
    }

    pub fn identity(k: usize) -> Self {
        HermitianMatrix {
            re: Matrix::identity(k),
            im: Matrix::zeros(k, k),
        }
    }

    pub fn real_diag(d: &[f64]) -> Self {
        HermitianMatrix {
            re: Matrix::from_diag(d),
            im: Matrix::zeros(d.len(), d.len()),
        }
    }

    pub fn k(&self) -> usize {
        self.re.rows()
    }

    pub fn re(&self) -> &Matrix {
        &self.re
    }

    pub fn im(&self) -> &Matrix {
        &self.im
    }

    /// `Σ cᵢ Bᵢ` over the basis of [`hermitian_basis`].
    pub fn from_coords(k: usize, c: &[f64]) -> Result<Self> {
        if c.len() != k * k {
            return Err(Error::DimensionMismatch {
                expected: k * k,
                got: c.len(),
            });
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("coordinates"));
        }
        let mut re = Matrix::zeros(k, k);
        let mut im = Matrix::zeros(k, k);
        let c0 = c[0] / (k as f64).sqrt();
        for i in 0..k {
            re[(i, i)] = c0;
        }
        for l in 1..k {
            let w = c[l] / ((l * (l + 1)) as f64).sqrt();
            for j in 0..l {
                re[(j, j)] += w;
            }
            re[(l, l)] -= l as f64 * w;
        }
        let mut idx = k;
        for j in 0..k {
            for l in j + 1..k {
                let s = c[idx] / SQRT_2;
                let a = c[idx + 1] / SQRT_2;
                re[(j, l)] = s;
                re[(l, j)] = s;
                im[(j, l)] = -a;
                im[(l, j)] = a;
                idx += 2;
            }
        }
        Ok(HermitianMatrix { re, im })
    }

    /// Coordinates in the basis of [`hermitian_basis`] (the inverse of
    /// [`HermitianMatrix::from_coords`]).
    pub fn to_coords(&self) -> Vec<f64> {
        let k = self.k();
        let mut c = Vec::with_capacity(k * k);
        c.push(self.re.trace() / (k as f64).sqrt());
        for l in 1..k {
            let s: f64 = (0..l).map(|j| self.re[(j, j)]).sum();
            c.push((s - l as f64 * self.re[(l, l)]) / ((l * (l + 1)) as f64).sqrt());
        }
        for j in 0..k {
            for l in j + 1..k {
                c.push(SQRT_2 * self.re[(j, l)]);
                c.push(-SQRT_2 * self.im[(j, l)]);
            }
        }
        c
    }

    /// Real symmetric `2k × 2k` matrix `[[re, −im], [im, re]]`.
    pub fn embed(&self) -> Matrix {
        let k = self.k();
        Matrix::from_fn(2 * k, 2 * k, |i, j| match (i < k, j < k) {
            (true, true) => self.re[(i, j)],
            (true, false) => -self.im[(i, j - k)],
            (false, true) => self.im[(i - k, j)],
            (false, false) => self.re[(i - k, j - k)],
        })
    }

    /// Inverse of [`HermitianMatrix::embed`] for matrices in its image.
    fn from_embedding(m: &Matrix) -> Self {
        let k = m.rows() / 2;
        let re = Matrix::from_fn(k, k, |i, j| 0.5 * (m[(i, j)] + m[(i + k, j + k)]));
        let im = Matrix::from_fn(k, k, |i, j| 0.5 * (m[(i + k, j)] - m[(i, j + k)]));
        HermitianMatrix { re, im }
            .symmetrized()
    }

    fn symmetrized(self) -> Self {
        let k = self.k();
        let re = Matrix::from_fn(k, k, |i, j| 0.5 * (self.re[(i, j)] + self.re[(j, i)]));
        let im = Matrix::from_fn(k, k, |i, j| 0.5 * (self.im[(i, j)] - self.im[(j, i)]));
        HermitianMatrix { re, im }
    }

    /// Eigenvalues, descending. Each eigenvalue of the embedding appears
    /// twice; every second one is kept.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let all = sym_eigvals(&self.embed())?;
        Ok(all.into_iter().step_by(2).collect())
    }

    pub fn trace_norm(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().map(|v| v.abs()).sum())
    }

    pub fn op_norm(&self) -> Result<f64> {
        Ok(self.eigenvalues()?.iter().fold(0.0, |m, v| m.max(v.abs())))
    }

    /// `f(self)` for a real function applied to the spectrum.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        let e = sym_eig(&self.embed())?;
        let n = e.values.len();
        let fv: Vec<f64> = e.values.iter().map(|&l| f(l)).collect();
        let m = Matrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|t| e.vectors[(i, t)] * fv[t] * e.vectors[(j, t)])
                .sum()
        });
        Ok(Self::from_embedding(&m))
    }

    /// Matrix sign with `sign(0) = +1`; satisfies `tr(self·sign) = ‖self‖₁`.
    pub fn sign(&self) -> Result<Self> {
        self.apply(|l| if l >= 0.0 { 1.0 } else { -1.0 })
    }

    /// `±vv†` for a unit eigenvector of an eigenvalue of largest modulus.
    pub(crate) fn top_projector(&self) -> Result<Self> {
        let e = sym_eig(&self.embed())?;
        let n = e.values.len();
        let (lmax, lmin) = (e.values[0], e.values[n - 1]);
        let (col, s) = if lmax >= -lmin { (0, 1.0) } else { (n - 1, -1.0) };
        // the embedding's eigenvector (u, v) ↦ ψ = u + iv with |ψ| = 1
        let k = n / 2;
        let u: Vec<f64> = (0..k).map(|i| e.vectors[(i, col)]).collect();
        let v: Vec<f64> = (0..k).map(|i| e.vectors[(i + k, col)]).collect();
        let re = Matrix::from_fn(k, k, |i, j| s * (u[i] * u[j] + v[i] * v[j]));
        let im = Matrix::from_fn(k, k, |i, j| s * (v[i] * u[j] - u[i] * v[j]));
        Ok(HermitianMatrix { re, im })
    }

    /// Real trace pairing `tr(self · other)`.
    pub fn hs_dot(&self, other: &Self) -> f64 {
        self.re.frobenius_dot(&other.re) + self.im.frobenius_dot(&other.im)
    }

    pub fn hs_norm(&self) -> f64 {
        self.hs_dot(self).sqrt()
    }

    pub fn trace(&self) -> f64 {
        self.re.trace()
    }

    pub fn add(&self, other: &Self) -> Self {
        HermitianMatrix {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HermitianMatrix {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianMatrix {
            re: self.re.scale(s),
            im: self.im.scale(s),
        }
    }

    /// Tensor product `self ⊗ other` on `C^{k·l}`.
    pub fn kron(&self, other: &Self) -> Self {
        let re = self.re.kron(&other.re).sub(&self.im.kron(&other.im));
        let im = self.re.kron(&other.im).add(&self.im.kron(&other.re));
        HermitianMatrix { re, im }
    }

    /// Largest entry modulus bound `max(|re|, |im|)`.
    pub fn max_abs(&self) -> f64 {
        self.re.max_abs().max(self.im.max_abs())
    }
}

/// Hilbert–Schmidt-orthonormal basis of `k × k` Hermitian matrices.
///
/// Order: `I/√k`; the diagonal matrices
/// `(E₁₁+…+E_ll − l·E_{l+1,l+1})/√(l(l+1))` for `l = 1..k−1`; then for each
/// pair `j < l` (lexicographic) the symmetric `(E_jl + E_lj)/√2` followed by
/// the antisymmetric `(−i·E_jl + i·E_lj)/√2`.
pub fn hermitian_basis(k: usize) -> Vec<HermitianMatrix> {
    (0..k * k)
        .map(|i| {
            let mut c = vec![0.0; k * k];
            c[i] = 1.0;
            HermitianMatrix::from_coords(k, &c).expect("unit coordinates")
        })
        .collect()
}

/// Checks `a ≤ b` up to the feasibility tolerance scaled by magnitude.
#[cfg(test)]
pub(crate) fn le_tol(a: f64, b: f64) -> bool {
    a <= b + crate::config::TOL.feas * a.abs().max(b.abs()).max(1.0)
}
