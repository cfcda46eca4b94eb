//! Local-polytope membership and bounded hidden-variable model search.
//!
//! [`local_membership`] is an exact linear program over the sixteen
//! deterministic strategies. The bounded searches ([`bounded_lhv_search`],
//! [`bounded_lhs_search`]) are multistart alternating linear programs: they
//! certify a model when they find one, but failing to find one is only
//! evidence, so every `NoModelFound` carries `heuristic = true`.

mod lhs;
mod local;
mod model;
mod seesaw;
mod verdict;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use lhs::bounded_lhs_search;
pub use local::{deterministic_response, local_membership};
pub use model::{LhsModel, LocalModel, Model, Response};
pub use seesaw::bounded_lhv_search;
pub use verdict::{
    superlocality_verdict, superunsteerability_verdict, SuperlocalityReport, SuperlocalityVerdict,
    SuperunsteerabilityReport, SuperunsteerabilityVerdict,
};

use crate::error::{Error, Result};
use crate::scenario::CorrelationBox;

/// A model reproduces the target when its L¹ residual is at most this.
pub const FEASIBILITY_TOL: f64 = 1e-8;
/// `NoModelFound` requires the best residual to exceed this.
pub const NO_MODEL_TOL: f64 = 1e-6;
/// `NoModelFound` requires at least this many restarts.
pub const MIN_RESTARTS_FOR_NO_MODEL: usize = 64;

/// Restarts are evaluated in fixed-size batches; the search stops after the
/// first batch that contains a model, which keeps results independent of
/// the number of worker threads.
const RESTART_BATCH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ModelFound,
    NoModelFound,
    Infeasible,
    /// Best residual between the two thresholds, or too few restarts.
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::ModelFound => "ModelFound",
            Verdict::NoModelFound => "NoModelFound",
            Verdict::Infeasible => "Infeasible",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub restarts: usize,
    pub max_sweeps: usize,
    /// Sweeps in a row with improvement below `min_improvement` before a
    /// restart is declared converged.
    pub stall_sweeps: usize,
    pub min_improvement: f64,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            restarts: MIN_RESTARTS_FOR_NO_MODEL,
            max_sweeps: 500,
            stall_sweeps: 5,
            min_improvement: 1e-12,
            seed: 0,
            parallel: true,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::ConfigError("restarts must be at least 1".into()));
        }
        if self.max_sweeps == 0 || self.stall_sweeps == 0 {
            return Err(Error::ConfigError("sweep limits must be positive".into()));
        }
        Ok(())
    }

    /// Independent generator for one restart.
    pub(crate) fn restart_rng(&self, restart: usize) -> ChaCha8Rng {
        let mut seeder = ChaCha8Rng::seed_from_u64(self.seed);
        seeder.set_stream(restart as u64 + 1);
        ChaCha8Rng::seed_from_u64(seeder.random())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSearchReport {
    pub verdict: Verdict,
    /// L¹ distance between the target box and the best model found (or the
    /// minimum distance to the local polytope when infeasible).
    pub residual: f64,
    pub model: Option<Model>,
    pub dlambda: usize,
    pub restarts: usize,
    pub iterations: usize,
    pub seed: u64,
    /// True when a negative outcome is not a proof.
    pub heuristic: bool,
}

pub(crate) fn check_dlambda(dlambda: usize) -> Result<()> {
    if !(1..=4).contains(&dlambda) {
        return Err(Error::ConfigError(format!("dlambda must be in 1..=4, got {dlambda}")));
    }
    Ok(())
}

pub(crate) fn check_box(bx: &CorrelationBox) -> Result<()> {
    bx.validate()
}

/// Outcome of one restart of an alternating search.
#[derive(Debug, Clone)]
pub(crate) struct RestartOutcome {
    pub residual: f64,
    pub model: Model,
    pub sweeps: usize,
}

/// Runs restarts in batches and keeps the best by `(residual, index)`.
pub(crate) fn run_restarts<F>(cfg: &SearchConfig, run: F) -> (Option<RestartOutcome>, usize, usize)
where
    F: Fn(usize) -> Option<RestartOutcome> + Sync,
{
    use rayon::prelude::*;
    let mut best: Option<RestartOutcome> = None;
    let mut done = 0;
    let mut sweeps = 0;
    while done < cfg.restarts {
        let end = (done + RESTART_BATCH).min(cfg.restarts);
        let batch: Vec<Option<RestartOutcome>> = if cfg.parallel {
            (done..end).into_par_iter().map(&run).collect()
        } else {
            (done..end).map(&run).collect()
        };
        for out in batch.into_iter().flatten() {
            sweeps += out.sweeps;
            if best.as_ref().is_none_or(|b| out.residual < b.residual) {
                best = Some(out);
            }
        }
        done = end;
        if best.as_ref().is_some_and(|b| b.residual <= FEASIBILITY_TOL) {
            break;
        }
    }
    (best, done, sweeps)
}

pub(crate) fn classify(residual: f64, restarts: usize) -> Verdict {
    if residual <= FEASIBILITY_TOL {
        Verdict::ModelFound
    } else if restarts >= MIN_RESTARTS_FOR_NO_MODEL && residual > NO_MODEL_TOL {
        Verdict::NoModelFound
    } else {
        Verdict::Inconclusive
    }
}

/// Tracks the stopping rule of an alternating search.
pub(crate) struct Convergence {
    best: f64,
    stalled: usize,
    pub sweeps: usize,
}

impl Convergence {
    pub fn new() -> Self {
        Convergence { best: f64::INFINITY, stalled: 0, sweeps: 0 }
    }

    /// Records one sweep; returns `true` when the search should stop.
    pub fn record(&mut self, residual: f64, cfg: &SearchConfig) -> bool {
        self.sweeps += 1;
        if self.best - residual < cfg.min_improvement {
            self.stalled += 1;
        } else {
            self.stalled = 0;
        }
        self.best = self.best.min(residual);
        residual <= EXACT_RESIDUAL || self.stalled >= cfg.stall_sweeps || self.sweeps >= cfg.max_sweeps
    }
}

/// Residual treated as an exact fit.
pub(crate) const EXACT_RESIDUAL: f64 = 1e-13;

/// Two independent uniform response rows `[input][output]`.
pub(crate) fn random_response(rng: &mut impl Rng) -> Response {
    std::array::from_fn(|_| {
        let p: f64 = rng.random();
        [p, 1.0 - p]
    })
}
