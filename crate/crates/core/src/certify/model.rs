use serde::{Deserialize, Serialize};

use crate::algebra::{BinaryPovm, BlochVector};
use crate::error::{Error, Result};
use crate::scenario::{indices4, CorrelationBox, Table4};

/// Response function `p(output|input)`, indexed `[input][output]`.
pub type Response = [[f64; 2]; 2];

const MODEL_TOL: f64 = 1e-9;

fn check_weights(weights: &[f64], dlambda: usize) -> Result<()> {
    if weights.len() != dlambda || dlambda == 0 {
        return Err(Error::InvariantViolation("weight count differs from dlambda".into()));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < -MODEL_TOL) {
        return Err(Error::InvariantViolation("negative hidden-variable weight".into()));
    }
    let s: f64 = weights.iter().sum();
    if (s - 1.0).abs() > MODEL_TOL {
        return Err(Error::InvariantViolation(format!("weights sum to {s}")));
    }
    Ok(())
}

fn check_responses(resp: &[Response], dlambda: usize) -> Result<()> {
    if resp.len() != dlambda {
        return Err(Error::InvariantViolation("response count differs from dlambda".into()));
    }
    for r in resp {
        for row in r {
            if row.iter().any(|p| !p.is_finite() || *p < -MODEL_TOL)
                || (row[0] + row[1] - 1.0).abs() > MODEL_TOL
            {
                return Err(Error::InvariantViolation(format!("invalid response row {row:?}")));
            }
        }
    }
    Ok(())
}

/// `p(a,b|x,y) = Σ_λ p_λ p(a|x,λ) p(b|y,λ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalModel {
    pub dlambda: usize,
    pub weights: Vec<f64>,
    pub alice_resp: Vec<Response>,
    pub bob_resp: Vec<Response>,
}

impl LocalModel {
    pub fn validate(&self) -> Result<()> {
        check_weights(&self.weights, self.dlambda)?;
        check_responses(&self.alice_resp, self.dlambda)?;
        check_responses(&self.bob_resp, self.dlambda)
    }

    pub fn to_box(&self) -> CorrelationBox {
        let mut p = Table4::default();
        for (x, y, a, b) in indices4() {
            p[x][y][a][b] = (0..self.dlambda)
                .map(|l| self.weights[l] * self.alice_resp[l][x][a] * self.bob_resp[l][y][b])
                .sum();
        }
        CorrelationBox { p }
    }

    /// Same box with `extra` zero-weight hidden values appended.
    pub fn padded(&self, extra: usize) -> LocalModel {
        let mut m = self.clone();
        m.dlambda += extra;
        m.weights.extend(std::iter::repeat_n(0.0, extra));
        m.alice_resp.extend(std::iter::repeat_n([[1.0, 0.0]; 2], extra));
        m.bob_resp.extend(std::iter::repeat_n([[1.0, 0.0]; 2], extra));
        m
    }
}

/// `p(a,b|x,y) = Σ_λ p_λ p(a|x,λ) Tr(M_{b|y} ρ_λ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LhsModel {
    pub dlambda: usize,
    pub weights: Vec<f64>,
    pub alice_resp: Vec<Response>,
    pub hidden_states: Vec<BlochVector>,
}

impl LhsModel {
    pub fn validate(&self) -> Result<()> {
        check_weights(&self.weights, self.dlambda)?;
        check_responses(&self.alice_resp, self.dlambda)?;
        if self.hidden_states.len() != self.dlambda {
            return Err(Error::InvariantViolation("hidden state count differs from dlambda".into()));
        }
        for s in &self.hidden_states {
            if !s.is_finite() || s.norm() > 1.0 + MODEL_TOL {
                return Err(Error::BlochOutOfBall { norm: s.norm() });
            }
        }
        Ok(())
    }

    pub fn to_box(&self, bob: &[BinaryPovm; 2]) -> CorrelationBox {
        let mut p = Table4::default();
        for (x, y, a, b) in indices4() {
            p[x][y][a][b] = (0..self.dlambda)
                .map(|l| {
                    self.weights[l]
                        * self.alice_resp[l][x][a]
                        * bob[y].probability_from_bloch(b, &self.hidden_states[l])
                })
                .sum();
        }
        CorrelationBox { p }
    }

    pub fn padded(&self, extra: usize) -> LhsModel {
        let mut m = self.clone();
        m.dlambda += extra;
        m.weights.extend(std::iter::repeat_n(0.0, extra));
        m.alice_resp.extend(std::iter::repeat_n([[1.0, 0.0]; 2], extra));
        m.hidden_states.extend(std::iter::repeat_n(BlochVector::ZERO, extra));
        m
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Model {
    Local(LocalModel),
    Lhs(LhsModel),
}

impl Model {
    pub fn dlambda(&self) -> usize {
        match self {
            Model::Local(m) => m.dlambda,
            Model::Lhs(m) => m.dlambda,
        }
    }

    /// Number of hidden values with non-zero weight.
    pub fn support(&self) -> usize {
        let w = match self {
            Model::Local(m) => &m.weights,
            Model::Lhs(m) => &m.weights,
        };
        w.iter().filter(|&&v| v > 0.0).count()
    }
}

/// Normalizes LP output: clips negatives, splits subnormalized rows into a
/// weight and a response.
pub(crate) fn split_subnormalized(u: &[[[f64; 2]; 2]]) -> (Vec<f64>, Vec<Response>) {
    let mut weights = Vec::with_capacity(u.len());
    let mut resp = Vec::with_capacity(u.len());
    for rows in u {
        let clipped: [[f64; 2]; 2] = rows.map(|r| r.map(|v| v.max(0.0)));
        let sums = clipped.map(|r| r[0] + r[1]);
        let w = 0.5 * (sums[0] + sums[1]);
        weights.push(w);
        resp.push(std::array::from_fn(|i| {
            if sums[i] > 0.0 {
                [clipped[i][0] / sums[i], clipped[i][1] / sums[i]]
            } else {
                [0.5, 0.5]
            }
        }));
    }
    normalize_weights(&mut weights);
    (weights, resp)
}

pub(crate) fn normalize_weights(w: &mut [f64]) {
    w.iter_mut().for_each(|v| *v = v.max(0.0));
    let s: f64 = w.iter().sum();
    if s > 0.0 {
        w.iter_mut().for_each(|v| *v /= s);
    } else {
        let n = w.len() as f64;
        w.iter_mut().for_each(|v| *v = 1.0 / n);
    }
}
