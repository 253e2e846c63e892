//! Explicit tensors and vectors that certify lower bounds on `π/ε`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::polyhedral::lex_cmp;
use crate::linalg::{dot, norm2, Matrix};
use crate::spaces::{SpaceDescriptor, SpaceKind};
use crate::tensornorms::{injective_maximizer, injective_norm, projective_norm, InjectiveMaximizer, Tensor};

const TOL: f64 = 1e-9;

fn require_polytopal(space: &SpaceDescriptor) -> Result<()> {
    match space.kind() {
        SpaceKind::Polytope | SpaceKind::L1 | SpaceKind::Linf => Ok(()),
        k => Err(Error::UnsupportedKind(format!("{k} (needs a polytopal unit ball)"))),
    }
}

fn require_planar(space: &SpaceDescriptor) -> Result<()> {
    require_polytopal(space)?;
    if space.dim() != 2 {
        return Err(Error::NotTwoDimensional(space.dim()));
    }
    Ok(())
}

/// Biorthogonal unit pair `(e₁, e₂)`, `(e₁*, e₂*)` in a plane with
/// `‖e₁ + e₂‖ ≤ 3/2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuerbachPair {
    pub e1: Vec<f64>,
    pub e2: Vec<f64>,
    pub e1s: Vec<f64>,
    pub e2s: Vec<f64>,
    /// `‖e₁ + e₂‖`.
    pub sum_norm: f64,
    /// `|det(e₁*, e₂*)|`, maximal over pairs of dual-ball points.
    pub det: f64,
    pub space: SpaceDescriptor,
}

impl AuerbachPair {
    /// Re-checks unit norms, biorthogonality and the `3/2` bound.
    pub fn verify(&self) -> Result<()> {
        let s = &self.space;
        for (v, dual) in [(&self.e1, false), (&self.e2, false), (&self.e1s, true), (&self.e2s, true)] {
            let n = if dual { s.dual_norm(v)? } else { s.norm(v)? };
            if (n - 1.0).abs() > TOL {
                return Err(Error::Numerical(format!("Auerbach vector {v:?} has norm {n}")));
            }
        }
        for (f, e, want) in [
            (&self.e1s, &self.e1, 1.0),
            (&self.e1s, &self.e2, 0.0),
            (&self.e2s, &self.e1, 0.0),
            (&self.e2s, &self.e2, 1.0),
        ] {
            if (dot(f, e) - want).abs() > TOL {
                return Err(Error::Numerical("Auerbach pair is not biorthogonal".into()));
            }
        }
        if self.sum_norm > 1.5 + TOL {
            return Err(Error::Numerical(format!("‖e₁ + e₂‖ = {} exceeds 3/2", self.sum_norm)));
        }
        Ok(())
    }
}

/// Auerbach basis of a planar polytopal space from the pair of dual-ball
/// vertices with maximal `|det|` (vertices in lexicographic order, first
/// maximum kept). `e₂` is negated when that brings `‖e₁ + e₂‖` to at most
/// `3/2`; when both signs satisfy the bound the larger sum is kept.
pub fn hexagon_auerbach(space: &SpaceDescriptor) -> Result<AuerbachPair> {
    require_planar(space)?;
    let mut dual = space.dual_ball_vertex_list()?;
    dual.sort_by(|a, b| lex_cmp(a, b));
    let mut best = (0.0, 0, 0);
    for i in 0..dual.len() {
        for j in i + 1..dual.len() {
            let d = (dual[i][0] * dual[j][1] - dual[i][1] * dual[j][0]).abs();
            if d > best.0 {
                best = (d, i, j);
            }
        }
    }
    let (det, i, j) = best;
    let (f, g) = (dual[i].clone(), dual[j].clone());
    let inv = Matrix::from_rows(&[f.clone(), g.clone()])?
        .inverse()
        .ok_or_else(|| Error::Numerical("dual vertex pair is collinear".into()))?;
    let e1 = inv.col(0);
    let mut e2 = inv.col(1);
    let mut e2s = g;
    let sum = |a: &[f64], b: &[f64], s: f64| -> Result<f64> {
        space.norm(&[a[0] + s * b[0], a[1] + s * b[1]])
    };
    let (plus, minus) = (sum(&e1, &e2, 1.0)?, sum(&e1, &e2, -1.0)?);
    let flip = if plus > 1.5 + TOL {
        true
    } else {
        minus <= 1.5 + TOL && minus > plus
    };
    if flip {
        e2 = e2.iter().map(|v| -v).collect();
        e2s = e2s.iter().map(|v| -v).collect();
    }
    let pair = AuerbachPair {
        sum_norm: if flip { minus } else { plus },
        e1,
        e2,
        e1s: f,
        e2s,
        det,
        space: space.clone(),
    };
    pair.verify()?;
    Ok(pair)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chsh19 {
    /// `5e₁⊗e₁ + 5e₁⊗e₂ + 5e₂⊗e₁ − 4e₂⊗e₂` in `X ⊗ Y`.
    pub z: Tensor,
    /// `e₁*⊗e₁* + e₁*⊗e₂* + e₂*⊗e₁* − e₂*⊗e₂*` in `X* ⊗ Y*`.
    pub w: Tensor,
    pub x_pair: AuerbachPair,
    pub y_pair: AuerbachPair,
    /// `w(z)`, equal to 19.
    pub pairing: f64,
    pub eps_z: f64,
    pub eps_w: f64,
    /// Dual-vertex pair attaining `ε(z)`.
    pub eps_z_attained: InjectiveMaximizer,
    /// `w(z) / (ε(w)·ε(z)) ≤ π(z)/ε(z)`.
    pub bound: f64,
    /// `π(z)/ε(z)` from the projective LP.
    pub ratio: f64,
}

/// The four-term tensor built on Auerbach bases of two planar spaces, with
/// the certified lower bound on its projective/injective ratio.
pub fn chsh19_witness(x: &SpaceDescriptor, y: &SpaceDescriptor) -> Result<Chsh19> {
    let (px, py) = (hexagon_auerbach(x)?, hexagon_auerbach(y)?);
    let cols = |a: &[f64], b: &[f64]| Matrix::from_fn(2, 2, |i, k| if k == 0 { a[i] } else { b[i] });
    let (ex, ey) = (cols(&px.e1, &px.e2), cols(&py.e1, &py.e2));
    let (fx, fy) = (cols(&px.e1s, &px.e2s), cols(&py.e1s, &py.e2s));
    let k = Matrix::from_rows(&[vec![5.0, 5.0], vec![5.0, -4.0]])?;
    let l = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, -1.0]])?;
    let zc = ex.matmul(&k)?.matmul(&ey.transpose())?;
    let wc = fx.matmul(&l)?.matmul(&fy.transpose())?;
    let z = Tensor::new(x.clone(), y.clone(), zc)?;
    let w = Tensor::new(x.dual_space()?, y.dual_space()?, wc)?;
    let pairing = w.coeffs.frobenius_dot(&z.coeffs);
    let attained = injective_maximizer(&z)?;
    let eps_z = attained.value;
    let eps_w = injective_maximizer(&w)?.value;
    let pi = projective_norm(&z)?
        .exact()
        .ok_or_else(|| Error::UnsupportedPair(x.label(), y.label()))?;
    Ok(Chsh19 {
        bound: pairing / (eps_w * eps_z),
        ratio: pi / eps_z,
        z,
        w,
        x_pair: px,
        y_pair: py,
        pairing,
        eps_z,
        eps_w,
        eps_z_attained: attained,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityWitness {
    pub y1: Vec<f64>,
    pub y2: Vec<f64>,
    /// `(‖y₁+y₂‖ + ‖y₁−y₂‖) / (2 max{‖y₁‖, ‖y₂‖})`.
    pub ratio: f64,
}

fn convexity_ratio(space: &SpaceDescriptor, a: &[f64], b: &[f64]) -> Result<f64> {
    let s: Vec<f64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
    let d: Vec<f64> = a.iter().zip(b).map(|(p, q)| p - q).collect();
    let m = space.fast_norm(a)?.max(space.fast_norm(b)?);
    if m == 0.0 {
        return Ok(0.0);
    }
    Ok((space.fast_norm(&s)? + space.fast_norm(&d)?) / (2.0 * m))
}

fn normalize(space: &SpaceDescriptor, v: &[f64]) -> Result<Option<Vec<f64>>> {
    let n = space.fast_norm(v)?;
    Ok((n > 1e-12).then(|| v.iter().map(|x| x / n).collect()))
}

const MAX_CONVEXITY_CANDIDATES: usize = 256;

/// Searches for `y₁, y₂` with a large `‖y₁+y₂‖ + ‖y₁−y₂‖` relative to
/// `2 max{‖y₁‖, ‖y₂‖}`.
///
/// Candidates are ball vertices and normalized midpoints of vertex pairs
/// (adjacent pairs in the plane); the best candidate pair is refined on an
/// angular grid of the plane it spans and then by a pattern search.
pub fn linf2_convexity_witness(space: &SpaceDescriptor) -> Result<ConvexityWitness> {
    require_polytopal(space)?;
    let d = space.dim();
    if d < 2 {
        return Err(Error::InvalidInput("need dimension at least 2".into()));
    }
    let verts = space.ball_vertex_list()?;
    let mut cands: Vec<Vec<f64>> = verts.clone();
    if d == 2 {
        let mut ordered = verts.clone();
        ordered.sort_by(|a, b| a[1].atan2(a[0]).total_cmp(&b[1].atan2(b[0])));
        for i in 0..ordered.len() {
            let (a, b) = (&ordered[i], &ordered[(i + 1) % ordered.len()]);
            let mid: Vec<f64> = a.iter().zip(b).map(|(p, q)| 0.5 * (p + q)).collect();
            cands.extend(normalize(space, &mid)?);
        }
    } else {
        'outer: for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                if cands.len() >= MAX_CONVEXITY_CANDIDATES {
                    break 'outer;
                }
                let mid: Vec<f64> = verts[i].iter().zip(&verts[j]).map(|(p, q)| 0.5 * (p + q)).collect();
                cands.extend(normalize(space, &mid)?);
            }
        }
    }
    cands.truncate(MAX_CONVEXITY_CANDIDATES);

    let mut best = (f64::NEG_INFINITY, cands[0].clone(), cands[0].clone());
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            let r = convexity_ratio(space, &cands[i], &cands[j])?;
            if r > best.0 {
                best = (r, cands[i].clone(), cands[j].clone());
            }
        }
    }

    // orthonormal basis of the plane of the best pair
    let p: Vec<f64> = best.1.iter().map(|v| v / norm2(&best.1)).collect();
    let c = dot(&best.2, &p);
    let mut q: Vec<f64> = best.2.iter().zip(&p).map(|(v, pv)| v - c * pv).collect();
    let nq = norm2(&q);
    if nq < 1e-12 {
        q = vec![0.0; d];
        let k = if p[0].abs() < 0.9 { 0 } else { 1 };
        q[k] = 1.0;
        let c = dot(&q, &p);
        q = q.iter().zip(&p).map(|(v, pv)| v - c * pv).collect();
    }
    let nq = norm2(&q);
    let q: Vec<f64> = q.iter().map(|v| v / nq).collect();
    let point = |t: f64| -> Vec<f64> { p.iter().zip(&q).map(|(a, b)| t.cos() * a + t.sin() * b).collect() };
    let eval = |t1: f64, t2: f64| convexity_ratio(space, &point(t1), &point(t2));

    let steps = 240;
    let h = std::f64::consts::PI / steps as f64;
    let mut grid = (f64::NEG_INFINITY, 0.0, 0.0);
    for i in 0..2 * steps {
        for j in 0..steps {
            let (t1, t2) = (h * i as f64, h * i as f64 + h * j as f64);
            let r = eval(t1, t2)?;
            if r > grid.0 {
                grid = (r, t1, t2);
            }
        }
    }
    let mut step = h;
    while step > 1e-10 {
        let mut moved = false;
        for (d1, d2) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0)] {
            let (t1, t2) = (grid.1 + d1 * step, grid.2 + d2 * step);
            let r = eval(t1, t2)?;
            if r > grid.0 + 1e-15 {
                grid = (r, t1, t2);
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    let (y1, y2) = if grid.0 > best.0 {
        (point(grid.1), point(grid.2))
    } else {
        (best.1, best.2)
    };
    Ok(ConvexityWitness {
        ratio: convexity_ratio(space, &y1, &y2)?,
        y1,
        y2,
    })
}

/// `π₁(Id)` on `ℓ₁ⁿ` as the exact fraction `n / E|Σ εᵢ|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProjectionConstant {
    pub n: usize,
    pub numerator: u128,
    pub denominator: u128,
}

impl ProjectionConstant {
    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

pub const MAX_PROJECTION_N: usize = 30;
pub const MAX_ENUMERATION_N: usize = 20;

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn reduced(n: usize, abs_sum: u128) -> ProjectionConstant {
    // n / (S / 2ⁿ) = n·2ⁿ / S
    let num = (n as u128) << n;
    let g = gcd(num, abs_sum);
    ProjectionConstant {
        n,
        numerator: num / g,
        denominator: abs_sum / g,
    }
}

fn check_n(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if n > limit {
        return Err(Error::DimensionTooLarge {
            what: "projection constant of ℓ₁ⁿ",
            dim: n,
            limit,
        });
    }
    Ok(())
}

/// Binomial evaluation: `Σ_k C(n,k)|n − 2k|` in exact integers.
pub fn projection_constant_l1(n: usize) -> Result<ProjectionConstant> {
    check_n(n, MAX_PROJECTION_N)?;
    let mut binom: u128 = 1;
    let mut s: u128 = 0;
    for k in 0..=n {
        s += binom * (n as i128 - 2 * k as i128).unsigned_abs();
        binom = binom * (n - k) as u128 / (k + 1) as u128;
    }
    Ok(reduced(n, s))
}

/// Same quantity by summing `|Σ εᵢ|` over all `2ⁿ` sign vectors.
pub fn projection_constant_l1_enumerated(n: usize) -> Result<ProjectionConstant> {
    check_n(n, MAX_ENUMERATION_N)?;
    let s: u128 = (0u64..1 << n)
        .map(|mask| (n as i64 - 2 * mask.count_ones() as i64).unsigned_abs() as u128)
        .sum();
    Ok(reduced(n, s))
}

/// `Iₙ` as a tensor over the requested pair of standard spaces. For
/// Schatten kinds `n` is the matrix size and the tensor is `Σ Bₐ ⊗ Bₐ`.
pub fn identity_witness(x: SpaceKind, y: SpaceKind, n: usize) -> Result<Tensor> {
    if x == SpaceKind::Polytope || y == SpaceKind::Polytope {
        return Err(Error::UnsupportedKind("polytope (identity needs a standard space)".into()));
    }
    let (xs, ys) = (SpaceDescriptor::new(x, n)?, SpaceDescriptor::new(y, n)?);
    if xs.ambient_dim() != ys.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: xs.ambient_dim(),
            got: ys.ambient_dim(),
        });
    }
    let d = xs.ambient_dim();
    Tensor::new(xs, ys, Matrix::identity(d))
}

/// Exact ratio for the identity over `X ⊗ Y`, when both norms are exact.
pub fn identity_ratio(x: SpaceKind, y: SpaceKind, n: usize) -> Result<f64> {
    let z = identity_witness(x, y, n)?;
    let (e, p) = (injective_norm(&z)?, projective_norm(&z)?);
    match (e.exact(), p.exact()) {
        (Some(e), Some(p)) => Ok(p / e),
        _ => Err(Error::UnsupportedPair(z.x_space.label(), z.y_space.label())),
    }
}
