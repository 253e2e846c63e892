//! XOR games on a bipartite composite: the referee prepares `ωᵢ` with
//! probability `pᵢ` and the players must output bits whose parity is `cᵢ`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{compose, kron_vec, CompositionRule, Composite, Gpt, GptJson};
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::montecarlo::stream;
use crate::tensornorms::{injective_norm, projective_lp, Tensor};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GameJson", into = "GameJson")]
pub struct XorGame {
    composite: Composite,
    questions: Vec<Vec<f64>>,
    probs: Vec<f64>,
    bits: Vec<u8>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameJson {
    pub rule: CompositionRule,
    pub a: GptJson,
    pub b: GptJson,
    pub questions: Vec<Vec<f64>>,
    pub probs: Vec<f64>,
    pub bits: Vec<u8>,
}

impl TryFrom<GameJson> for XorGame {
    type Error = Error;
    fn try_from(j: GameJson) -> Result<Self> {
        XorGame::new(compose(&j.a.try_into()?, &j.b.try_into()?, j.rule)?, j.questions, j.probs, j.bits)
    }
}

impl From<XorGame> for GameJson {
    fn from(g: XorGame) -> Self {
        GameJson {
            rule: g.composite.rule,
            a: g.composite.a.into(),
            b: g.composite.b.into(),
            questions: g.questions,
            probs: g.probs,
            bits: g.bits,
        }
    }
}

impl XorGame {
    /// Checks that `probs` is a probability vector (sum within 1e-12), that
    /// bits are 0 or 1, and that every question is a normalized state of the
    /// composite (`u(ω) = 1` within 1e-9, cone membership by LP for the min
    /// rule and by dual positivity for the max rule).
    pub fn new(composite: Composite, questions: Vec<Vec<f64>>, probs: Vec<f64>, bits: Vec<u8>) -> Result<Self> {
        let k = questions.len();
        if k == 0 {
            return Err(Error::InvalidGame("no questions".into()));
        }
        if probs.len() != k || bits.len() != k {
            return Err(Error::InvalidGame(format!(
                "{k} questions but {} probabilities and {} bits",
                probs.len(),
                bits.len()
            )));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::BadProbabilityVector("probabilities must be finite and nonnegative".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::BadProbabilityVector(format!("probabilities sum to {total}")));
        }
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidGame(format!("bit {b} is not 0 or 1")));
        }
        let d = composite.dim();
        for (i, w) in questions.iter().enumerate() {
            if w.len() != d {
                return Err(Error::InvalidGame(format!(
                    "question {i} has length {}, expected {d}",
                    w.len()
                )));
            }
            if w.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("question state"));
            }
            let u = dot(&composite.unit, w);
            if (u - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidGame(format!("question {i} has unit value {u}, expected 1")));
            }
            if !composite.contains(w)? {
                return Err(Error::InvalidGame(format!(
                    "question {i} is not in the {} composite cone",
                    composite.rule
                )));
            }
        }
        Ok(XorGame {
            composite,
            questions,
            probs,
            bits,
        })
    }

    pub fn composite(&self) -> &Composite {
        &self.composite
    }

    pub fn questions(&self) -> &[Vec<f64>] {
        &self.questions
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// `Σ pᵢ (−1)^{cᵢ} ωᵢ` as a `dim_A × dim_B` matrix.
    pub fn game_matrix(&self) -> Matrix {
        let (n, m) = (self.composite.a.dim(), self.composite.b.dim());
        let mut z = vec![0.0; n * m];
        for ((w, p), c) in self.questions.iter().zip(&self.probs).zip(&self.bits) {
            let s = if *c == 0 { *p } else { -*p };
            for (acc, v) in z.iter_mut().zip(w) {
                *acc += s * v;
            }
        }
        Matrix::from_vec(n, m, z).expect("n·m entries")
    }

    /// The game tensor in the tensor product of the factor base-norm spaces.
    pub fn game_vector(&self) -> Result<Tensor> {
        Tensor::new(
            self.composite.a.base_norm_space()?,
            self.composite.b.base_norm_space()?,
            self.game_matrix(),
        )
    }

    /// Best bias with local measurements: the injective norm of the game
    /// tensor. Depends only on the factors.
    pub fn bias_local(&self) -> Result<f64> {
        let z = self.game_vector()?;
        injective_norm(&z)?
            .exact()
            .ok_or_else(|| Error::UnsupportedPair(z.x_space.label(), z.y_space.label()))
    }

    /// Best bias with global measurements: the base norm of the game tensor
    /// in the composite.
    pub fn bias_global(&self) -> Result<f64> {
        Ok(self.composite.base_norm(self.game_matrix().as_slice())?.value)
    }

    /// Game whose tensor is `z / π(z)`, built from an optimal projective
    /// decomposition of `z` into signed product states.
    pub fn from_tensor(a: &Gpt, b: &Gpt, rule: CompositionRule, z: &Matrix) -> Result<Self> {
        if z.rows() != a.dim() || z.cols() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim() * b.dim(),
                got: z.rows() * z.cols(),
            });
        }
        if z.is_zero() {
            return Err(Error::ZeroTensor);
        }
        let lp = projective_lp(&a.signed_generators(), &b.signed_generators(), z)?;
        let total: f64 = lp.decomposition.iter().map(|t| t.0).sum();
        let mut questions = Vec::new();
        let mut probs = Vec::new();
        let mut bits = Vec::new();
        for (l, x, y) in &lp.decomposition {
            let (sx, sy) = (dot(a.unit(), x).signum(), dot(b.unit(), y).signum());
            let xs: Vec<f64> = x.iter().map(|v| v * sx).collect();
            let ys: Vec<f64> = y.iter().map(|v| v * sy).collect();
            questions.push(kron_vec(&xs, &ys));
            probs.push(l / total);
            bits.push(u8::from(sx * sy < 0.0));
        }
        let s: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= s;
        }
        Self::new(compose(a, b, rule)?, questions, probs, bits)
    }

    /// Random game: each question is a mixture of up to three product
    /// states of generators, probabilities are uniform draws, bits are fair
    /// coins.
    pub fn random(a: &Gpt, b: &Gpt, rule: CompositionRule, questions: usize, seed: u64) -> Result<Self> {
        if questions == 0 {
            return Err(Error::InvalidGame("no questions".into()));
        }
        let mut rng = stream(seed, 0);
        let (ga, gb) = (a.generators(), b.generators());
        let mut qs = Vec::with_capacity(questions);
        for _ in 0..questions {
            let parts = rng.random_range(1..=3);
            let weights: Vec<f64> = (0..parts).map(|_| rng.random::<f64>() + 0.05).collect();
            let wsum: f64 = weights.iter().sum();
            let mut w = vec![0.0; a.dim() * b.dim()];
            for wt in weights {
                let x = &ga[rng.random_range(0..ga.len())];
                let y = &gb[rng.random_range(0..gb.len())];
                for (acc, v) in w.iter_mut().zip(kron_vec(x, y)) {
                    *acc += wt / wsum * v;
                }
            }
            qs.push(w);
        }
        let raw: Vec<f64> = (0..questions).map(|_| rng.random::<f64>() + 0.01).collect();
        let total: f64 = raw.iter().sum();
        let probs = raw.iter().map(|p| p / total).collect();
        let bits = (0..questions).map(|_| rng.random_range(0..=1u8)).collect();
        Self::new(compose(a, b, rule)?, qs, probs, bits)
    }
}
