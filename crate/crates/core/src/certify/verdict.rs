use serde::{Deserialize, Serialize};

use super::{bounded_lhs_search, bounded_lhv_search, local_membership, ModelSearchReport, SearchConfig, Verdict};
use crate::algebra::BinaryPovm;
use crate::error::Result;
use crate::scenario::CorrelationBox;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuperlocalityVerdict {
    /// The box lies outside the local polytope.
    NotApplicableNonlocal,
    /// Local, but no local model with `dlambda ≤ dA` was found.
    Superlocal,
    NotSuperlocal,
    Inconclusive,
}

impl SuperlocalityVerdict {
    pub fn name(self) -> &'static str {
        match self {
            SuperlocalityVerdict::NotApplicableNonlocal => "NotApplicableNonlocal",
            SuperlocalityVerdict::Superlocal => "Superlocal*",
            SuperlocalityVerdict::NotSuperlocal => "NotSuperlocal",
            SuperlocalityVerdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperlocalityReport {
    pub verdict: SuperlocalityVerdict,
    pub heuristic: bool,
    pub local: ModelSearchReport,
    pub bounded: Option<ModelSearchReport>,
}

/// Local membership followed by a search at `dlambda = dim_alice`.
pub fn superlocality_verdict(bx: &CorrelationBox, dim_alice: usize, cfg: &SearchConfig) -> Result<SuperlocalityReport> {
    let local = local_membership(bx)?;
    if local.verdict == Verdict::Infeasible {
        return Ok(SuperlocalityReport {
            verdict: SuperlocalityVerdict::NotApplicableNonlocal,
            heuristic: false,
            local,
            bounded: None,
        });
    }
    let bounded = bounded_lhv_search(bx, dim_alice, cfg)?;
    let verdict = match bounded.verdict {
        Verdict::ModelFound => SuperlocalityVerdict::NotSuperlocal,
        Verdict::NoModelFound => SuperlocalityVerdict::Superlocal,
        _ => SuperlocalityVerdict::Inconclusive,
    };
    Ok(SuperlocalityReport {
        verdict,
        heuristic: verdict != SuperlocalityVerdict::NotSuperlocal,
        local,
        bounded: Some(bounded),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuperunsteerabilityVerdict {
    Steerable,
    Superunsteerable,
    NotSuperunsteerable,
    Inconclusive,
}

impl SuperunsteerabilityVerdict {
    pub fn name(self) -> &'static str {
        match self {
            SuperunsteerabilityVerdict::Steerable => "Steerable*",
            SuperunsteerabilityVerdict::Superunsteerable => "Superunsteerable*",
            SuperunsteerabilityVerdict::NotSuperunsteerable => "NotSuperunsteerable",
            SuperunsteerabilityVerdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperunsteerabilityReport {
    pub verdict: SuperunsteerabilityVerdict,
    pub heuristic: bool,
    pub bounded: ModelSearchReport,
    /// Search with four hidden states; absent when the bounded search
    /// already found a model.
    pub unbounded: Option<ModelSearchReport>,
}

/// LHS search at `dlambda = dim_alice`, then at `dlambda = 4` (enough for
/// two binary measurements on Alice's side) when the first finds nothing.
pub fn superunsteerability_verdict(
    bx: &CorrelationBox,
    bob: &[BinaryPovm; 2],
    dim_alice: usize,
    cfg: &SearchConfig,
) -> Result<SuperunsteerabilityReport> {
    let bounded = bounded_lhs_search(bx, bob, dim_alice, cfg)?;
    if bounded.verdict == Verdict::ModelFound {
        return Ok(SuperunsteerabilityReport {
            verdict: SuperunsteerabilityVerdict::NotSuperunsteerable,
            heuristic: false,
            bounded,
            unbounded: None,
        });
    }
    let unbounded = bounded_lhs_search(bx, bob, 4, cfg)?;
    let verdict = match (bounded.verdict, unbounded.verdict) {
        (_, Verdict::NoModelFound) => SuperunsteerabilityVerdict::Steerable,
        (Verdict::NoModelFound, Verdict::ModelFound) => SuperunsteerabilityVerdict::Superunsteerable,
        _ => SuperunsteerabilityVerdict::Inconclusive,
    };
    Ok(SuperunsteerabilityReport { verdict, heuristic: true, bounded, unbounded: Some(unbounded) })
}
