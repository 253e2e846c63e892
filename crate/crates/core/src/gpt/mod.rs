//! Polyhedral general probabilistic theories: a cone of unnormalized states
//! in `Rᵈ` with a strictly positive unit functional.
//!
//! Generators are rescaled so that `u(g) = 1`; they are then the extreme
//! states (or a superset of them), and the base-norm unit ball is
//! `conv(±generators)`.

mod game;

pub use game::{GameJson, XorGame};

use serde::{Deserialize, Serialize};

use crate::config::{MAX_COMPOSITE_GENERATORS, MAX_CONE_DIM, MAX_LP_COLUMNS, MAX_POLYTOPE_VERTICES, TOL};
use crate::error::{Error, Result};
use crate::linalg::polyhedral::{check_vector, cone_contains, extreme_rays, hull_contains};
use crate::linalg::{cone_dualize, dot, lp_solve, rank, LpProblem, Matrix, PolyhedralConeRep};
use crate::spaces::{SpaceDescriptor, SpaceKind};
use crate::tensornorms::{projective_norm, Tensor};

/// Largest dimension accepted for the 2-isomorphic base-norm construction.
pub const MAX_TWO_ISO_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GptJson", into = "GptJson")]
pub struct Gpt {
    cone: PolyhedralConeRep,
    unit: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GptJson {
    pub dim: usize,
    pub generators: Vec<Vec<f64>>,
    pub unit: Vec<f64>,
}

impl TryFrom<GptJson> for Gpt {
    type Error = Error;
    fn try_from(j: GptJson) -> Result<Self> {
        Gpt::new(j.dim, j.generators, j.unit)
    }
}

impl From<Gpt> for GptJson {
    fn from(g: Gpt) -> Self {
        GptJson {
            dim: g.cone.dim,
            generators: g.cone.generators,
            unit: g.unit,
        }
    }
}

/// Value of a base-norm LP with both certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseNorm {
    pub value: f64,
    /// Functional in the order interval `[−u, u]` attaining the value.
    pub witness: Vec<f64>,
    /// `x₊` and `x₋` with `x = x₊ − x₋` and `u(x₊ + x₋) = value`; empty for
    /// max-rule composites.
    pub positive: Vec<f64>,
    pub negative: Vec<f64>,
}

fn is_generating(gens: &[Vec<f64>], dim: usize) -> bool {
    rank(gens, 1e-9) == dim
}

/// `min Σλ` over `x = Σ λ⁺ g − Σ λ⁻ g` for generators normalized to `u = 1`,
/// with the strong-duality check on the LP dual.
fn generator_base_norm(gens: &[Vec<f64>], x: &[f64]) -> Result<BaseNorm> {
    let d = x.len();
    if x.iter().all(|&v| v == 0.0) {
        return Ok(BaseNorm {
            value: 0.0,
            witness: vec![0.0; d],
            positive: vec![0.0; d],
            negative: vec![0.0; d],
        });
    }
    let k = gens.len();
    if 2 * k > MAX_LP_COLUMNS {
        return Err(Error::BudgetExceeded {
            what: "base-norm LP columns",
            count: 2 * k,
            limit: MAX_LP_COLUMNS,
        });
    }
    let a = Matrix::from_fn(d, 2 * k, |i, j| if j < k { gens[j][i] } else { -gens[j - k][i] });
    let sol = lp_solve(&LpProblem::nonnegative(vec![1.0; 2 * k], a, x.to_vec()))?;
    let f = sol.duals;
    let worst = gens.iter().map(|g| dot(&f, g).abs()).fold(0.0, f64::max);
    let dual_value = dot(&f, x);
    let scale = sol.value.abs().max(1.0);
    if worst > 1.0 + 1e-8 || (dual_value - sol.value).abs() > 1e-8 * scale {
        return Err(Error::Numerical(format!(
            "base-norm duality gap: primal {}, dual {dual_value}, dual feasibility {worst}",
            sol.value
        )));
    }
    let mut positive = vec![0.0; d];
    let mut negative = vec![0.0; d];
    for (j, &l) in sol.x.iter().enumerate() {
        if l == 0.0 {
            continue;
        }
        let (acc, g) = if j < k { (&mut positive, &gens[j]) } else { (&mut negative, &gens[j - k]) };
        for (a, v) in acc.iter_mut().zip(g) {
            *a += l * v;
        }
    }
    Ok(BaseNorm {
        value: sol.value.max(0.0),
        witness: f,
        positive,
        negative,
    })
}

impl Gpt {
    /// Validates `(Rᵈ, cone(generators), unit)` and rescales the generators
    /// to `u = 1`.
    pub fn new(dim: usize, generators: Vec<Vec<f64>>, unit: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("GPT dimension must be at least 1".into()));
        }
        if dim > MAX_CONE_DIM {
            return Err(Error::DimensionTooLarge {
                what: "GPT",
                dim,
                limit: MAX_CONE_DIM,
            });
        }
        if generators.len() > MAX_POLYTOPE_VERTICES {
            return Err(Error::VertexBudgetExceeded {
                count: generators.len(),
                limit: MAX_POLYTOPE_VERTICES,
            });
        }
        check_vector(&unit, dim)?;
        let cone = PolyhedralConeRep::from_generators(dim, generators)?;
        if !is_generating(&cone.generators, dim) {
            return Err(Error::DegenerateCone);
        }
        let gens = &cone.generators;
        let not_positive = gens
            .iter()
            .position(|g| dot(&unit, g) <= TOL.feas * crate::linalg::norm2(g));
        if let Some(i) = not_positive {
            // a strictly positive unit exists iff the cone is salient, so
            // only look for −g ∈ C when the given unit fails
            for (j, g) in gens.iter().enumerate() {
                let neg: Vec<f64> = g.iter().map(|v| -v).collect();
                if cone_contains(gens, &neg)? {
                    return Err(Error::NotSalient(j));
                }
            }
            return Err(Error::UnitNotPositive(i));
        }
        let generators = gens
            .iter()
            .map(|g| {
                let ug = dot(&unit, g);
                if (ug - 1.0).abs() <= 4.0 * f64::EPSILON {
                    g.clone()
                } else {
                    g.iter().map(|v| v / ug).collect()
                }
            })
            .collect();
        Ok(Gpt {
            cone: PolyhedralConeRep {
                dim,
                generators,
                facets: None,
            },
            unit,
        })
    }

    /// `Cl_d`: the orthant with unit `(1, …, 1)`.
    pub fn classical(d: usize) -> Result<Self> {
        let gens = (0..d)
            .map(|i| (0..d).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(d, gens, vec![1.0; d])
    }

    /// Cone `{(x, a) : a ≥ ‖x‖_X}` with unit `(0, …, 0, 1)`, generated by
    /// `(v, 1)` over the vertices `v` of the unit ball of `X`.
    pub fn centrally_symmetric(x: &SpaceDescriptor) -> Result<Self> {
        let verts = match x.kind() {
            SpaceKind::Polytope | SpaceKind::L1 | SpaceKind::Linf => x.ball_vertex_list()?,
            k => return Err(Error::UnsupportedKind(k.name().to_string())),
        };
        let d = x.dim() + 1;
        let gens = verts
            .into_iter()
            .map(|mut v| {
                v.push(1.0);
                v
            })
            .collect();
        let mut unit = vec![0.0; d];
        unit[d - 1] = 1.0;
        Self::new(d, gens, unit)
    }

    pub fn dim(&self) -> usize {
        self.cone.dim
    }

    /// Generators, normalized to `u = 1`.
    pub fn generators(&self) -> &[Vec<f64>] {
        &self.cone.generators
    }

    pub fn unit(&self) -> &[f64] {
        &self.unit
    }

    pub fn cone(&self) -> &PolyhedralConeRep {
        &self.cone
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        self.cone.contains(x)
    }

    /// Whether `x` is a normalized state: in the cone with `u(x) = 1`.
    pub fn is_state(&self, x: &[f64]) -> Result<bool> {
        Ok((dot(&self.unit, x) - 1.0).abs() <= 1e-9 && self.contains(x)?)
    }

    /// `min{t ≥ 0 : −tu ≤ f ≤ tu}` on the cone, i.e. `max |f(g)|` over the
    /// normalized generators.
    pub fn order_unit_norm(&self, f: &[f64]) -> Result<f64> {
        check_vector(f, self.dim())?;
        Ok(self.generators().iter().map(|g| dot(f, g).abs()).fold(0.0, f64::max))
    }

    pub fn base_norm(&self, x: &[f64]) -> Result<f64> {
        Ok(self.base_norm_certified(x)?.value)
    }

    /// Base norm with the optimal splitting `x = x₊ − x₋` and a dual functional.
    pub fn base_norm_certified(&self, x: &[f64]) -> Result<BaseNorm> {
        check_vector(x, self.dim())?;
        generator_base_norm(self.generators(), x)
    }

    /// The base-norm space: unit ball `conv(±generators)`.
    pub fn base_norm_space(&self) -> Result<SpaceDescriptor> {
        SpaceDescriptor::polytope(self.signed_generators())
    }

    /// Generators followed by their negatives.
    pub fn signed_generators(&self) -> Vec<Vec<f64>> {
        let g = self.generators();
        g.iter()
            .cloned()
            .chain(g.iter().map(|v| v.iter().map(|x| -x).collect()))
            .collect()
    }

    /// Extreme rays of the dual cone (unit length).
    pub fn dual_generators(&self) -> Result<Vec<Vec<f64>>> {
        Ok(cone_dualize(&self.cone)?.generators)
    }
}

/// Output of [`two_isomorphic_base_norm`].
#[derive(Debug, Clone, PartialEq)]
pub struct TwoIsomorphic {
    pub gpt: Gpt,
    /// Unit vector of `X` used for the slice.
    pub x: Vec<f64>,
    /// Norming functional of `x`; the unit is `2x*`.
    pub x_star: Vec<f64>,
    /// Smallest `s` with `B ⊆ s·B_X`.
    pub inner: f64,
    /// Smallest `t` with `B_X ⊆ t·B`.
    pub outer: f64,
}

/// Base-norm space 2-isomorphic to a polytopal `X`: the cone over the slice
/// `F = {y ∈ B_X : x*(y) = 1/2}` with unit `2x*`.
///
/// Without an explicit pair, `x` is the first ball vertex and `x*` the first
/// dual vertex norming it. Both containments are verified by LP membership;
/// a failure is reported as [`Error::Numerical`].
pub fn two_isomorphic_base_norm(
    space: &SpaceDescriptor,
    pair: Option<(&[f64], &[f64])>,
) -> Result<TwoIsomorphic> {
    if !space.is_polytopal() {
        return Err(Error::UnsupportedKind(space.kind().name().to_string()));
    }
    let d = space.dim();
    if d > MAX_TWO_ISO_DIM {
        return Err(Error::DimensionTooLarge {
            what: "2-isomorphic base-norm construction",
            dim: d,
            limit: MAX_TWO_ISO_DIM,
        });
    }
    let dual = space.dual_ball_vertex_list()?;
    let (x, x_star) = match pair {
        Some((x, xs)) => {
            check_vector(x, d)?;
            check_vector(xs, d)?;
            let (nx, nxs) = (space.norm(x)?, space.dual_norm(xs)?);
            if (nx - 1.0).abs() > 1e-9 || (nxs - 1.0).abs() > 1e-9 || (dot(x, xs) - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidInput(
                    "need ‖x‖ = ‖x*‖ = x*(x) = 1".into(),
                ));
            }
            (x.to_vec(), xs.to_vec())
        }
        None => {
            let x = space.ball_vertex_list()?.swap_remove(0);
            let xs = dual
                .iter()
                .find(|f| (dot(f, &x) - 1.0).abs() <= 1e-9)
                .cloned()
                .ok_or_else(|| Error::Numerical("no dual vertex norms the first ball vertex".into()))?;
            (x, xs)
        }
    };
    // R₊F = {y : w(y) ≤ 2x*(y) for every dual vertex w}
    let constraints: Vec<Vec<f64>> = dual
        .iter()
        .map(|w| x_star.iter().zip(w).map(|(a, b)| 2.0 * a - b).collect())
        .collect();
    let rays = extreme_rays(d, &constraints)?;
    let gens: Vec<Vec<f64>> = rays
        .iter()
        .map(|r| {
            let s = 2.0 * dot(&x_star, r);
            r.iter().map(|v| v / s).collect()
        })
        .collect();
    let unit: Vec<f64> = x_star.iter().map(|v| 2.0 * v).collect();
    let gpt = Gpt::new(d, gens, unit)?;

    let inner = gpt
        .generators()
        .iter()
        .map(|g| space.norm(g))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let outer = space
        .ball_vertex_list()?
        .iter()
        .map(|v| gpt.base_norm(v))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    // exact containment checks by hull membership
    let ball = space.ball_vertex_list()?;
    for g in gpt.signed_generators() {
        if !hull_contains(&ball, &g)? {
            return Err(Error::Numerical("B is not contained in B_X".into()));
        }
    }
    let doubled: Vec<Vec<f64>> = gpt
        .signed_generators()
        .iter()
        .map(|g| g.iter().map(|v| 2.0 * v).collect())
        .collect();
    for v in &ball {
        if !hull_contains(&doubled, v)? {
            return Err(Error::Numerical("B_X is not contained in 2B".into()));
        }
    }
    Ok(TwoIsomorphic {
        gpt,
        x,
        x_star,
        inner,
        outer,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionRule {
    Min,
    Max,
}

impl std::fmt::Display for CompositionRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CompositionRule::Min => "min",
            CompositionRule::Max => "max",
        })
    }
}

/// Joint system on `V_A ⊗ V_B` (coordinates `i·dim_B + j`) with unit `u_A ⊗ u_B`.
///
/// The min cone is stored by its generators `g_A ⊗ g_B`; the max cone by
/// the generators `h_A ⊗ h_B` of its dual cone, kept in `cone.facets`.
#[derive(Debug, Clone, PartialEq)]
pub struct Composite {
    pub a: Gpt,
    pub b: Gpt,
    pub rule: CompositionRule,
    pub cone: PolyhedralConeRep,
    pub unit: Vec<f64>,
}

pub fn kron_vec(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

fn products(xs: &[Vec<f64>], ys: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let count = xs.len().saturating_mul(ys.len());
    if count > MAX_COMPOSITE_GENERATORS {
        return Err(Error::BudgetExceeded {
            what: "composite generators",
            count,
            limit: MAX_COMPOSITE_GENERATORS,
        });
    }
    Ok(xs.iter().flat_map(|x| ys.iter().map(move |y| kron_vec(x, y))).collect())
}

pub fn compose(a: &Gpt, b: &Gpt, rule: CompositionRule) -> Result<Composite> {
    let dim = a.dim() * b.dim();
    let unit = kron_vec(a.unit(), b.unit());
    let cone = match rule {
        CompositionRule::Min => PolyhedralConeRep {
            dim,
            generators: products(a.generators(), b.generators())?,
            facets: None,
        },
        CompositionRule::Max => PolyhedralConeRep {
            dim,
            generators: vec![],
            facets: Some(products(&a.dual_generators()?, &b.dual_generators()?)?),
        },
    };
    Ok(Composite {
        a: a.clone(),
        b: b.clone(),
        rule,
        cone,
        unit,
    })
}

impl Composite {
    pub fn dim(&self) -> usize {
        self.cone.dim
    }

    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        self.cone.contains(x)
    }

    /// Base norm of `x` in the composite.
    ///
    /// Min rule: the generator LP. Max rule: `max f(x)` over functionals
    /// with `u ± f` in the dual of the max cone, i.e. nonnegative
    /// combinations of the product dual generators.
    pub fn base_norm(&self, x: &[f64]) -> Result<BaseNorm> {
        check_vector(x, self.dim())?;
        match self.rule {
            CompositionRule::Min => generator_base_norm(&self.cone.generators, x),
            CompositionRule::Max => self.max_base_norm(x),
        }
    }

    fn max_base_norm(&self, x: &[f64]) -> Result<BaseNorm> {
        let d = self.dim();
        let h = self.cone.facets.as_deref().unwrap_or(&[]);
        let k = h.len();
        let cols = 2 * k;
        if cols > MAX_LP_COLUMNS {
            return Err(Error::BudgetExceeded {
                what: "base-norm LP columns",
                count: cols,
                limit: MAX_LP_COLUMNS,
            });
        }
        // Eliminating f: u ± f = Σ μ^± h gives Σ (μ⁺ + μ⁻) h = 2u and
        // f = (Σ μ⁻ h − Σ μ⁺ h) / 2, so no free variables are needed.
        let a = Matrix::from_fn(d, cols, |r, c| h[c % k][r]);
        let xh: Vec<f64> = h.iter().map(|hj| dot(x, hj)).collect();
        let objective: Vec<f64> = xh.iter().map(|v| v / 2.0).chain(xh.iter().map(|v| -v / 2.0)).collect();
        let b: Vec<f64> = self.unit.iter().map(|v| 2.0 * v).collect();
        let sol = lp_solve(&LpProblem::nonnegative(objective, a, b))?;
        let mut f = vec![0.0; d];
        for (j, hj) in h.iter().enumerate() {
            let w = (sol.x[k + j] - sol.x[j]) / 2.0;
            for (fi, hi) in f.iter_mut().zip(hj) {
                *fi += w * hi;
            }
        }
        Ok(BaseNorm {
            value: (-sol.value).max(0.0),
            witness: f,
            positive: vec![],
            negative: vec![],
        })
    }
}

/// Tensor `[[z, s], [t, a]]` in `X′ ⊗ Y′` with `X′ = X ⊕∞ R`, together with
/// the closed form of its injective norm and an explicit projective upper
/// bound built from the optimal decomposition of `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderedTensor {
    pub tensor: Tensor,
    /// `max{ε(z), ‖s‖, ‖t‖, |a|}`.
    pub injective: f64,
    /// `max{‖s‖ + ‖t‖, |a|} + π(z)`.
    pub projective_upper: f64,
}

pub fn bordered_tensor(z: &Tensor, s: &[f64], t: &[f64], a: f64) -> Result<BorderedTensor> {
    let (n, m) = (z.coeffs.rows(), z.coeffs.cols());
    check_vector(s, n)?;
    check_vector(t, m)?;
    if !a.is_finite() {
        return Err(Error::NonFinite("corner entry"));
    }
    let xp = Gpt::centrally_symmetric(&z.x_space)?.base_norm_space()?;
    let yp = Gpt::centrally_symmetric(&z.y_space)?.base_norm_space()?;
    let coeffs = Matrix::from_fn(n + 1, m + 1, |i, j| match (i < n, j < m) {
        (true, true) => z.coeffs[(i, j)],
        (true, false) => s[i],
        (false, true) => t[j],
        (false, false) => a,
    });
    let eps = crate::tensornorms::injective_norm(z)?
        .exact()
        .ok_or_else(|| Error::UnsupportedPair(z.x_space.label(), z.y_space.label()))?;
    let pi = projective_norm(z)?
        .exact()
        .ok_or_else(|| Error::UnsupportedPair(z.x_space.label(), z.y_space.label()))?;
    let (ns, nt) = (z.x_space.norm(s)?, z.y_space.norm(t)?);
    Ok(BorderedTensor {
        tensor: Tensor::new(xp, yp, coeffs)?,
        injective: eps.max(ns).max(nt).max(a.abs()),
        projective_upper: (ns + nt).max(a.abs()) + pi,
    })
}
