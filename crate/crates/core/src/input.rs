//! Text inputs: the JSON scenario document, family identifiers, sweep
//! ranges and metric lists.

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use serde::Deserialize;

use crate::algebra::{BinaryPovm, BlochVector, QubitDensity, TwoQubitDensity, C64};
use crate::error::{Error, Result};
use crate::evaluate::{Metric, Subject};
use crate::families::{
    bb84_strategy, bell_diagonal_rac_strategy, pr_box, rac_optimal_strategy, werner_strategy,
    white_noise_bb84_box, wn_bb84_bob, NamedStrategy, Realization,
};
use crate::scenario::{CorrelationBox, Labeling, Table4};

/// JSON schema of [`InputDocument`].
pub const INPUT_SCHEMA: &str = include_str!("../schema/input.schema.json");

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PovmSpec {
    #[serde(default = "half")]
    pub gamma0: f64,
    #[serde(default = "one")]
    pub eta: f64,
    pub direction: [f64; 3],
}

fn half() -> f64 {
    0.5
}

fn one() -> f64 {
    1.0
}

impl PovmSpec {
    pub fn build(&self) -> Result<BinaryPovm> {
        BinaryPovm::new(self.gamma0, self.eta, BlochVector(self.direction))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Canonical { a: [f64; 3], b: [f64; 3], c: [f64; 3] },
    /// Row-major `[re, im]` entries of the 4×4 density matrix.
    Matrix(Vec<[f64; 2]>),
}

// Dispatches on the JSON shape by hand: an untagged derive buffers numbers
// in a form that serde_json's `arbitrary_precision` feature cannot read back.
impl<'de> Deserialize<'de> for StateSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;

        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Canonical {
            a: [f64; 3],
            b: [f64; 3],
            c: [f64; 3],
        }

        let value = serde_json::Value::deserialize(d)?;
        match value {
            serde_json::Value::Object(_) => serde_json::from_value::<Canonical>(value)
                .map(|s| StateSpec::Canonical { a: s.a, b: s.b, c: s.c })
                .map_err(D::Error::custom),
            serde_json::Value::Array(_) => serde_json::from_value(value).map(StateSpec::Matrix).map_err(D::Error::custom),
            _ => Err(D::Error::custom("state must be {a, b, c} or a list of 16 [re, im] entries")),
        }
    }
}

impl StateSpec {
    pub fn build(&self) -> Result<TwoQubitDensity> {
        match self {
            StateSpec::Canonical { a, b, c } => TwoQubitDensity::canonical(&BlochVector(*a), &BlochVector(*b), *c),
            StateSpec::Matrix(entries) => {
                if entries.len() != 16 {
                    return Err(Error::ParseError(format!(
                        "state matrix needs 16 entries, got {}",
                        entries.len()
                    )));
                }
                if entries.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::ParseError("non-finite state entry".into()));
                }
                TwoQubitDensity::from_operator(Matrix4::from_fn(|r, c| {
                    let [re, im] = entries[4 * r + c];
                    C64::new(re, im)
                }))
            }
        }
    }
}

/// A scenario described in JSON. Exactly one of `preps`, `state` (with
/// `alice`) or `box` must be present; `bob` is required with `preps` and
/// `state` and optional with `box`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default)]
    pub label: Option<String>,
    /// Bloch vectors of `ρ00, ρ01, ρ10, ρ11`.
    #[serde(default)]
    pub preps: Option<[[f64; 3]; 4]>,
    #[serde(default)]
    pub state: Option<StateSpec>,
    #[serde(default)]
    pub alice: Option<[PovmSpec; 2]>,
    #[serde(default)]
    pub bob: Option<[PovmSpec; 2]>,
    #[serde(default, rename = "box")]
    pub bx: Option<Table4>,
    #[serde(default)]
    pub labeling: Option<Labeling>,
}

impl InputDocument {
    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| Error::ParseError(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_slice(text.as_bytes())
    }

    /// Builds the scenario, checking every physical invariant.
    pub fn resolve(&self) -> Result<Subject> {
        let sources = [self.preps.is_some(), self.state.is_some(), self.bx.is_some()];
        if sources.iter().filter(|&&s| s).count() != 1 {
            return Err(Error::ConfigError(
                "exactly one of `preps`, `state` or `box` is required".into(),
            ));
        }
        let label = self.label.clone().unwrap_or_else(|| "input".into());
        let labeling = self.labeling.unwrap_or_default();
        let bob = match &self.bob {
            Some([m0, m1]) => Some([m0.build()?, m1.build()?]),
            None => None,
        };
        if let Some(p) = &self.bx {
            if self.alice.is_some() {
                return Err(Error::ConfigError("`alice` is not used with `box`".into()));
            }
            if p.iter().flatten().flatten().flatten().any(|v| !v.is_finite()) {
                return Err(Error::ParseError("non-finite box entry".into()));
            }
            return Ok(Subject::Box { label, bx: CorrelationBox::new(*p)?, bob, labeling });
        }
        let bob = bob.ok_or_else(|| Error::ConfigError("`bob` measurements are required".into()))?;
        let realization = if let Some(preps) = &self.preps {
            if self.alice.is_some() {
                return Err(Error::ConfigError("`alice` is not used with `preps`".into()));
            }
            let rho = |i: usize| QubitDensity::from_bloch(&BlochVector(preps[i]));
            Realization::PrepareMeasure { preps: [[rho(0)?, rho(1)?], [rho(2)?, rho(3)?]] }
        } else {
            let state = self.state.as_ref().expect("checked above").build()?;
            let [a0, a1] = self
                .alice
                .as_ref()
                .ok_or_else(|| Error::ConfigError("`state` needs `alice` measurements".into()))?;
            Realization::Bipartite { state, alice: [a0.build()?, a1.build()?] }
        };
        Ok(Subject::Strategy(NamedStrategy { label, realization, bob, labeling }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Bb84,
    RacOptimal,
    /// Werner state with the white-noise BB84 measurements.
    Werner(Option<f64>),
    /// The white-noise BB84 box itself.
    WnBb84(Option<f64>),
    Pr,
    BellDiagRac,
}

pub const FAMILY_HELP: [(&str, &str); 6] = [
    ("bb84", "BB84 preparations and measurements"),
    ("rac-optimal", "optimal 2-to-1 random-access code strategy"),
    ("werner:V", "Werner state with {-σz, σx} / {σz, σx} measurements"),
    ("wn-bb84:V", "white-noise BB84 box with Bob measuring {σz, σx}"),
    ("pr", "PR box"),
    ("bell-diag-rac", "separable Bell-diagonal state driving a random-access code"),
];

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Bb84 => "bb84",
            Family::RacOptimal => "rac-optimal",
            Family::Werner(_) => "werner",
            Family::WnBb84(_) => "wn-bb84",
            Family::Pr => "pr",
            Family::BellDiagRac => "bell-diag-rac",
        }
    }

    pub fn is_parametric(&self) -> bool {
        matches!(self, Family::Werner(_) | Family::WnBb84(_))
    }

    pub fn parameter(&self) -> Option<f64> {
        match self {
            Family::Werner(v) | Family::WnBb84(v) => *v,
            _ => None,
        }
    }

    pub fn with_parameter(&self, v: f64) -> Result<Family> {
        match self {
            Family::Werner(_) => Ok(Family::Werner(Some(v))),
            Family::WnBb84(_) => Ok(Family::WnBb84(Some(v))),
            _ => Err(Error::ConfigError(format!("family `{}` takes no parameter", self.name()))),
        }
    }

    pub fn subject(&self) -> Result<Subject> {
        let need = |v: &Option<f64>| {
            v.ok_or_else(|| Error::ConfigError(format!("family `{}` needs a value, e.g. `{}:0.5`", self.name(), self.name())))
        };
        Ok(match self {
            Family::Bb84 => Subject::Strategy(bb84_strategy()),
            Family::RacOptimal => Subject::Strategy(rac_optimal_strategy()),
            Family::Werner(v) => Subject::Strategy(werner_strategy(need(v)?)?),
            Family::WnBb84(v) => {
                let v = need(v)?;
                Subject::Box {
                    label: format!("wn-bb84:{v}"),
                    bx: white_noise_bb84_box(v)?,
                    bob: Some(wn_bb84_bob()),
                    labeling: Labeling::default(),
                }
            }
            Family::Pr => Subject::Box {
                label: "pr".into(),
                bx: pr_box(),
                bob: None,
                labeling: Labeling::default(),
            },
            Family::BellDiagRac => Subject::Strategy(bell_diagonal_rac_strategy()),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some(v) => write!(f, "{}:{v}", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

fn parse_number(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::ParseError(format!("invalid {what} `{s}`")))?;
    if !v.is_finite() {
        return Err(Error::ParseError(format!("{what} must be finite, got `{s}`")));
    }
    Ok(v)
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, value) = match s.split_once(':') {
            Some((n, v)) => (n, Some(parse_number(v, "family parameter")?)),
            None => (s, None),
        };
        let fixed = |f: Family| match value {
            Some(_) => Err(Error::ParseError(format!("family `{name}` takes no parameter"))),
            None => Ok(f),
        };
        match name.trim().to_ascii_lowercase().as_str() {
            "bb84" => fixed(Family::Bb84),
            "rac-optimal" => fixed(Family::RacOptimal),
            "pr" => fixed(Family::Pr),
            "bell-diag-rac" => fixed(Family::BellDiagRac),
            "werner" => Ok(Family::Werner(value)),
            "wn-bb84" => Ok(Family::WnBb84(value)),
            _ => Err(Error::ParseError(format!("unknown family `{name}`"))),
        }
    }
}

/// Longest grid a range may describe.
pub const MAX_RANGE_STEPS: usize = 1_000_000;

/// `start:stop:steps` with `steps ≥ 2`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl RangeSpec {
    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }
}

impl FromStr for RangeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(Error::ParseError(format!("range `{s}` is not `start:stop:steps`")));
        };
        let steps: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::ParseError(format!("invalid step count `{n}`")))?;
        if steps < 2 {
            return Err(Error::ConfigError(format!("a range needs at least 2 steps, got {steps}")));
        }
        if steps > MAX_RANGE_STEPS {
            return Err(Error::ConfigError(format!("a range may have at most {MAX_RANGE_STEPS} steps, got {steps}")));
        }
        Ok(RangeSpec { start: parse_number(a, "range start")?, stop: parse_number(b, "range stop")?, steps })
    }
}

/// Comma-separated metric names, e.g. `q,hmin`.
pub fn parse_metrics(s: &str) -> Result<Vec<Metric>> {
    let out: Vec<Metric> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(Metric::from_str)
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::ParseError("empty metric list".into()));
    }
    Ok(out)
}
