//! Polyhedral cones and centrally symmetric polytopes: conversion between
//! generator and facet descriptions by the double-description method.

use serde::{Deserialize, Serialize};

use super::{dot, lp_solve, norm2, rank, LpProblem, Matrix};
use crate::config::{MAX_BALL_DIM, MAX_CONE_DIM, TOL};
use crate::error::{Error, Result};

/// A polyhedral cone given by generators, optionally with inner facet normals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyhedralConeRep {
    pub dim: usize,
    pub generators: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<f64>>>,
}

impl PolyhedralConeRep {
    pub fn from_generators(dim: usize, generators: Vec<Vec<f64>>) -> Result<Self> {
        let c = PolyhedralConeRep {
            dim,
            generators,
            facets: None,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            check_vector(g, self.dim)?;
            if g.iter().all(|&v| v == 0.0) {
                return Err(Error::InvalidInput("zero cone generator".into()));
            }
        }
        if let Some(facets) = &self.facets {
            for f in facets {
                check_vector(f, self.dim)?;
                for g in &self.generators {
                    if dot(f, g) < -TOL.feas * norm2(f).max(1.0) * norm2(g).max(1.0) {
                        return Err(Error::InvalidInput(
                            "facet normal negative on a generator".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether `x` lies in the cone, decided by LP feasibility.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        check_vector(x, self.dim)?;
        if let Some(facets) = &self.facets {
            let scale = norm2(x).max(1.0);
            return Ok(facets
                .iter()
                .all(|f| dot(f, x) >= -TOL.feas * scale * norm2(f).max(1.0)));
        }
        cone_contains(&self.generators, x)
    }
}

pub(crate) fn check_vector(v: &[f64], dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("vector"));
    }
    Ok(())
}

/// LP membership of `x` in `cone(generators)`.
pub fn cone_contains(generators: &[Vec<f64>], x: &[f64]) -> Result<bool> {
    let d = x.len();
    if generators.is_empty() {
        return Ok(x.iter().all(|v| v.abs() <= TOL.feas));
    }
    let a = Matrix::from_fn(d, generators.len(), |i, j| generators[j][i]);
    let p = LpProblem::nonnegative(vec![0.0; generators.len()], a, x.to_vec());
    match lp_solve(&p) {
        Ok(_) => Ok(true),
        Err(Error::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

/// LP membership of `x` in `conv(points)`.
pub fn hull_contains(points: &[Vec<f64>], x: &[f64]) -> Result<bool> {
    let d = x.len();
    if points.is_empty() {
        return Ok(false);
    }
    let a = Matrix::from_fn(d + 1, points.len(), |i, j| if i < d { points[j][i] } else { 1.0 });
    let mut b = x.to_vec();
    b.push(1.0);
    let p = LpProblem::nonnegative(vec![0.0; points.len()], a, b);
    match lp_solve(&p) {
        Ok(_) => Ok(true),
        Err(Error::Infeasible) => Ok(false),
        Err(e) => Err(e),
    }
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = norm2(v);
    v.iter().map(|x| x / n).collect()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Removes points within `tol` (max-norm) of an earlier point.
pub fn dedup_points(points: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for p in points {
        if !out.iter().any(|q| max_abs_diff(p, q) <= tol) {
            out.push(p.clone());
        }
    }
    out
}

/// Removes duplicate ray directions (compared after unit normalization).
pub fn dedup_directions(rays: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for r in rays {
        let u = unit(r);
        if !out.iter().any(|q| max_abs_diff(&u, q) <= tol) {
            out.push(u);
        }
    }
    out
}

/// Keeps only points that are not convex combinations of the others.
pub fn extreme_points(points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let mut kept: Vec<Vec<f64>> = points.to_vec();
    let mut i = 0;
    while i < kept.len() {
        let others: Vec<Vec<f64>> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        if hull_contains(&others, &kept[i])? {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(kept)
}

/// Zero-set bitset over the constraint indices.
#[derive(Clone, PartialEq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_superset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: Vec<f64>,
    zeros: Bits,
}

/// Extreme rays of `{x : ⟨aᵢ, x⟩ ≥ 0 for all i}`.
///
/// The constraint normals must span the space, which makes the cone pointed.
/// Rays are returned with unit Euclidean length.
pub fn extreme_rays(dim: usize, constraints: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if dim > MAX_CONE_DIM {
        return Err(Error::DimensionTooLarge {
            what: "double description",
            dim,
            limit: MAX_CONE_DIM,
        });
    }
    for c in constraints {
        check_vector(c, dim)?;
    }
    let rows: Vec<Vec<f64>> = constraints
        .iter()
        .filter(|c| norm2(c) > 0.0)
        .map(|c| unit(c))
        .collect();
    let rows = dedup_points(&rows, 1e-12);
    let k = rows.len();
    if dim == 0 {
        return Ok(vec![]);
    }

    // Greedy choice of `dim` independent constraints.
    let mut basis_idx = Vec::with_capacity(dim);
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut res = r.clone();
        for q in &ortho {
            let p = dot(&res, q);
            for (x, y) in res.iter_mut().zip(q) {
                *x -= p * y;
            }
        }
        let nr = norm2(&res);
        if nr > 1e-9 {
            ortho.push(res.iter().map(|x| x / nr).collect());
            basis_idx.push(i);
            if basis_idx.len() == dim {
                break;
            }
        }
    }
    if basis_idx.len() < dim {
        return Err(Error::DegenerateCone);
    }

    let a0 = Matrix::from_fn(dim, dim, |i, j| rows[basis_idx[i]][j]);
    let inv = a0.inverse().ok_or(Error::DegenerateCone)?;
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            let mut zeros = Bits::new(k);
            for (kk, &bi) in basis_idx.iter().enumerate() {
                if kk != j {
                    zeros.set(bi);
                }
            }
            Ray {
                v: unit(&inv.col(j)),
                zeros,
            }
        })
        .collect();

    let tol = 1e-9;
    for (ci, a) in rows.iter().enumerate() {
        if basis_idx.contains(&ci) {
            continue;
        }
        let s: Vec<f64> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len());
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (ri, &sv) in s.iter().enumerate() {
            if sv > tol {
                pos.push(ri);
            } else if sv < -tol {
                neg.push(ri);
            }
        }
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(r, ray)| {
                    r == p || r == q || !ray.zeros.is_superset_of(&common)
                });
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (s[p], s[q]);
                let v: Vec<f64> = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(vq, vp)| sp * vq - sq * vp)
                    .collect();
                let nv = norm2(&v);
                if nv <= 1e-14 {
                    continue;
                }
                let mut zeros = common;
                zeros.set(ci);
                next.push(Ray {
                    v: v.iter().map(|x| x / nv).collect(),
                    zeros,
                });
            }
        }
        for (ri, ray) in rays.into_iter().enumerate() {
            if s[ri] > tol {
                next.push(ray);
            } else if s[ri] >= -tol {
                let mut ray = ray;
                ray.zeros.set(ci);
                next.push(ray);
            }
        }
        rays = next;
    }
    Ok(dedup_directions(
        &rays.into_iter().map(|r| r.v).collect::<Vec<_>>(),
        1e-9,
    ))
}

/// Dual cone `C* = {f : f(x) ≥ 0 for all x ∈ C}`.
///
/// The returned generators are the extreme rays of `C*` (unit length); its
/// `facets` field lists the extreme rays of `C`, which are exactly the inner
/// facet normals of `C*`.
pub fn cone_dualize(c: &PolyhedralConeRep) -> Result<PolyhedralConeRep> {
    if c.dim > MAX_CONE_DIM {
        return Err(Error::DimensionTooLarge {
            what: "cone dualization",
            dim: c.dim,
            limit: MAX_CONE_DIM,
        });
    }
    c.validate()?;
    let d = c.dim;
    let gens = dedup_directions(&c.generators, 1e-9);
    if rank(&gens, 1e-9) < d {
        return Err(Error::DegenerateCone);
    }
    let rays = extreme_rays(d, &gens)?;
    // A generator is extreme in C iff the dual rays it annihilates span a
    // hyperplane.
    let extreme: Vec<Vec<f64>> = gens
        .iter()
        .filter(|g| {
            let tight: Vec<Vec<f64>> = rays
                .iter()
                .filter(|r| dot(g, r).abs() <= 1e-9)
                .cloned()
                .collect();
            rank(&tight, 1e-9) + 1 >= d
        })
        .cloned()
        .collect();
    Ok(PolyhedralConeRep {
        dim: d,
        generators: rays,
        facets: Some(extreme),
    })
}

/// Validates and cleans the vertex list of a centrally symmetric convex
/// body: deduplication, symmetry, full dimension, and removal of
/// non-extreme points.
pub fn symmetric_body_vertices(vertices: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = vertices
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidInput("empty vertex list".into()))?;
    if d == 0 {
        return Err(Error::InvalidInput("zero-dimensional vertices".into()));
    }
    for v in vertices {
        check_vector(v, d)?;
    }
    let pts = dedup_points(vertices, TOL.eq);
    for (i, v) in pts.iter().enumerate() {
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        if !pts.iter().any(|q| max_abs_diff(q, &neg) <= TOL.eq) {
            return Err(Error::NotCentrallySymmetric(i));
        }
    }
    if rank(&pts, 1e-9) < d {
        return Err(Error::NotFullDimensional);
    }
    extreme_points(&pts)
}

/// Vertices of the polar body `{w : ⟨w, v⟩ ≤ 1 for all v}` of a centrally
/// symmetric, full-dimensional polytope `conv(vertices)`.
///
/// Output is sorted lexicographically.
pub fn polytope_dual_ball(vertices: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = vertices.first().map_or(0, Vec::len);
    if d > MAX_BALL_DIM {
        return Err(Error::DimensionTooLarge {
            what: "polytope polarity",
            dim: d,
            limit: MAX_BALL_DIM,
        });
    }
    let pts = symmetric_body_vertices(vertices)?;
    polar_of_clean(&pts)
}

/// Polar vertices for an already validated symmetric vertex set.
pub(crate) fn polar_of_clean(pts: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let d = pts[0].len();
    let constraints: Vec<Vec<f64>> = pts
        .iter()
        .map(|v| {
            let mut c: Vec<f64> = v.iter().map(|x| -x).collect();
            c.push(1.0);
            c
        })
        .collect();
    let rays = extreme_rays(d + 1, &constraints)?;
    let mut out: Vec<Vec<f64>> = rays
        .iter()
        .filter(|r| r[d] > 1e-12)
        .map(|r| r[..d].iter().map(|x| clean(x / r[d])).collect())
        .collect();
    out.sort_by(|a, b| lex_cmp(a, b));
    Ok(out)
}

/// Snaps values within rounding noise of zero.
fn clean(x: f64) -> f64 {
    if x.abs() < 1e-13 {
        0.0
    } else {
        x
    }
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > 1e-12 {
            return x.total_cmp(y);
        }
    }
    std::cmp::Ordering::Equal
}

/// Whether two point sets agree as sets, up to `tol` in max-norm.
pub fn same_point_set(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| max_abs_diff(p, q) <= tol))
        && b.iter().all(|p| a.iter().any(|q| max_abs_diff(p, q) <= tol))
}

/// Whether two ray sets agree as sets of unit directions.
pub fn same_directions(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    let ua: Vec<Vec<f64>> = a.iter().map(|r| unit(r)).collect();
    let ub: Vec<Vec<f64>> = b.iter().map(|r| unit(r)).collect();
    same_point_set(&ua, &ub, tol)
}
