//! Heuristic search for tensors with a large projective/injective ratio.
//!
//! The result is a lower bound only. Polytopal pairs use LP alternation:
//! the dual of the projective LP gives a functional `W` with `ε(W) ≤ 1`, and
//! the dual of the projective LP for `W` on `X* ⊗ Y*` gives the next tensor,
//! which is never worse. Other pairs use a Gaussian hill climb.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{projective_lp, ratio_witness, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::montecarlo::standard_normal;
use crate::spaces::SpaceDescriptor;

#[derive(Debug, Clone, PartialEq)]
pub struct RhoSearch {
    /// `ratio_witness(tensor)`.
    pub ratio: f64,
    pub tensor: Tensor,
    /// Iteration at which the best tensor was found.
    pub found_at: usize,
    pub iterations: usize,
}

fn exact_ratio(z: &Tensor) -> Result<Option<f64>> {
    match ratio_witness(z) {
        Ok(v) => v
            .exact()
            .map(Some)
            .ok_or_else(|| Error::UnsupportedPair(z.x_space.label(), z.y_space.label())),
        Err(Error::ZeroTensor) => Ok(None),
        Err(e) => Err(e),
    }
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Matrix {
    Matrix::from_fn(n, m, |_, _| standard_normal(rng))
}

/// Searches `X ⊗ Y` for a tensor with large `π/ε`.
///
/// Every iteration evaluates exactly one candidate and the best-so-far is
/// reported, so for a fixed seed the result is nondecreasing in
/// `iterations`.
pub fn rho_search(
    x_space: &SpaceDescriptor,
    y_space: &SpaceDescriptor,
    seed: u64,
    iterations: usize,
) -> Result<RhoSearch> {
    if x_space.is_schatten() || y_space.is_schatten() {
        return Err(Error::UnsupportedPair(x_space.label(), y_space.label()));
    }
    let (n, m) = (x_space.ambient_dim(), y_space.ambient_dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fresh = 0usize;
    let mut next_start = |rng: &mut ChaCha8Rng| -> Matrix {
        fresh += 1;
        if fresh == 1 && n == m {
            Matrix::identity(n)
        } else {
            gaussian_matrix(rng, n, m)
        }
    };

    let template = Tensor::new(x_space.clone(), y_space.clone(), Matrix::from_fn(n, m, |i, j| if i == j { 1.0 } else { 0.0 }))?;
    // surfaces unsupported pairs before any work
    exact_ratio(&template)?;

    let polytopal = x_space.is_polytopal() && y_space.is_polytopal();
    let lists = if polytopal {
        Some((
            x_space.ball_vertex_list()?,
            y_space.ball_vertex_list()?,
            x_space.dual_ball_vertex_list()?,
            y_space.dual_ball_vertex_list()?,
        ))
    } else {
        None
    };

    let mut best: Option<(f64, Tensor, usize)> = None;
    let mut current: Option<(Matrix, f64)> = None;
    let mut sigma = 0.5;
    for it in 0..iterations {
        let candidate = match (&current, &lists) {
            (None, _) => next_start(&mut rng),
            (Some((z, _)), Some((vx, vy, dx, dy))) => {
                let w = projective_lp(vx, vy, z)?.dual;
                projective_lp(dx, dy, &w)?.dual
            }
            (Some((z, _)), None) => {
                let scale = sigma * z.frobenius_norm() / ((n * m) as f64).sqrt();
                z.add(&gaussian_matrix(&mut rng, n, m).scale(scale))
            }
        };
        let tensor = template.with_coeffs(candidate.clone())?;
        let r = exact_ratio(&tensor)?;
        if let Some(r) = r {
            if best.as_ref().is_none_or(|b| r > b.0) {
                best = Some((r, tensor, it));
            }
        }
        current = match (current, r) {
            (None, Some(r)) => Some((candidate, r)),
            (None, None) => None,
            (Some((z, rz)), r) => {
                let improved = r.is_some_and(|r| r > rz * (1.0 + 1e-12));
                if polytopal {
                    improved.then(|| (candidate, r.unwrap()))
                } else if improved {
                    sigma *= 1.25;
                    Some((candidate, r.unwrap()))
                } else {
                    sigma *= 0.85;
                    if sigma < 1e-4 {
                        sigma = 0.5;
                        None
                    } else {
                        Some((z, rz))
                    }
                }
            }
        };
    }
    let (ratio, tensor, found_at) = match best {
        Some(b) => b,
        None => (exact_ratio(&template)?.unwrap_or(0.0), template, 0),
    };
    Ok(RhoSearch {
        ratio,
        tensor,
        found_at,
        iterations,
    })
}
