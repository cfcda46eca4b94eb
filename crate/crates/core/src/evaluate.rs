//! Evaluates witnesses on a scenario given either as a strategy or as a box.

use std::str::FromStr;

use crate::algebra::BinaryPovm;
use crate::error::{Error, Result};
use crate::families::NamedStrategy;
use crate::scenario::{box_to_conditional, ConditionalTable, CorrelationBox, Labeling, SequentialTable};
use crate::witnesses::{
    chsh_value, guessing_bound, linear_witness_wl, min_entropy, quantity_q, rac_average_success,
    rac_worst_case, sl_thresholds, witness_w, WitnessKind, WitnessValue,
};

/// Slack when re-checking witness ranges before output.
pub const OUTPUT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Subject {
    Strategy(NamedStrategy),
    /// A box, optionally with the measurements Bob used to produce it.
    Box {
        label: String,
        bx: CorrelationBox,
        bob: Option<[BinaryPovm; 2]>,
        labeling: Labeling,
    },
}

impl Subject {
    pub fn label(&self) -> &str {
        match self {
            Subject::Strategy(s) => &s.label,
            Subject::Box { label, .. } => label,
        }
    }

    pub fn bob(&self) -> Option<[BinaryPovm; 2]> {
        match self {
            Subject::Strategy(s) => Some(s.bob),
            Subject::Box { bob, .. } => *bob,
        }
    }

    pub fn correlation_box(&self) -> Result<CorrelationBox> {
        match self {
            Subject::Strategy(s) => s.correlation_box(),
            Subject::Box { bx, .. } => Ok(*bx),
        }
    }

    pub fn conditional_table(&self) -> Result<ConditionalTable> {
        match self {
            Subject::Strategy(s) => s.conditional_table(),
            Subject::Box { bx, .. } => box_to_conditional(bx),
        }
    }

    pub fn sequential_table(&self) -> Result<SequentialTable> {
        match self {
            Subject::Strategy(s) => s.sequential_table(),
            Subject::Box { labeling, .. } => Ok(self.conditional_table()?.to_sequential(*labeling)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Q,
    W,
    WL,
    PB,
    PMIN,
    CHSH,
    HMIN,
    /// The guessing bound `f(Q)`.
    FQ,
}

impl Metric {
    /// Column order of sweep tables.
    pub const ALL: [Metric; 8] = [
        Metric::Q,
        Metric::W,
        Metric::WL,
        Metric::PB,
        Metric::PMIN,
        Metric::CHSH,
        Metric::HMIN,
        Metric::FQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::FQ => "f_Q",
            m => m.kind().expect("witness metric").name(),
        }
    }

    pub fn kind(self) -> Option<WitnessKind> {
        Some(match self {
            Metric::Q => WitnessKind::Q,
            Metric::W => WitnessKind::W,
            Metric::WL => WitnessKind::WL,
            Metric::PB => WitnessKind::PB,
            Metric::PMIN => WitnessKind::PMIN,
            Metric::CHSH => WitnessKind::CHSH,
            Metric::HMIN => WitnessKind::HMIN,
            Metric::FQ => return None,
        })
    }

    /// Largest value reachable without the resource the metric detects:
    /// classical preparations (W, Q, WL, PB), two shared bits (PMIN) or a
    /// local model (CHSH).
    pub fn classical_bound(self) -> Option<f64> {
        match self {
            Metric::W | Metric::Q => Some(0.0),
            Metric::WL | Metric::CHSH => Some(2.0),
            Metric::PB => Some(0.75),
            Metric::PMIN => sl_thresholds(2, false).ok(),
            Metric::HMIN | Metric::FQ => None,
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "q" => Metric::Q,
            "w" => Metric::W,
            "wl" => Metric::WL,
            "pb" => Metric::PB,
            "pmin" => Metric::PMIN,
            "chsh" => Metric::CHSH,
            "hmin" => Metric::HMIN,
            "f_q" | "fq" => Metric::FQ,
            _ => return Err(Error::ParseError(format!("unknown metric `{s}`"))),
        })
    }
}

/// Whether `metric` is defined for `subject`: CHSH needs a joint box, which a
/// prepare-and-measure strategy has only when its preparations do not
/// signal Alice's setting.
pub fn is_applicable(subject: &Subject, metric: Metric) -> bool {
    metric != Metric::CHSH || subject.correlation_box().is_ok()
}

/// Values of `metrics` in the given order. Tables are built once and every
/// value is checked against its admissible range.
pub fn evaluate_metrics(subject: &Subject, metrics: &[Metric]) -> Result<Vec<f64>> {
    let mut seq: Option<SequentialTable> = None;
    let mut q: Option<f64> = None;
    let mut out = Vec::with_capacity(metrics.len());
    for &m in metrics {
        let mut sequential = || -> Result<SequentialTable> {
            if seq.is_none() {
                seq = Some(subject.sequential_table()?);
            }
            Ok(seq.expect("just set"))
        };
        let mut q_value = || -> Result<f64> {
            if q.is_none() {
                q = Some(quantity_q(&subject.conditional_table()?).value);
            }
            Ok(q.expect("just set"))
        };
        let value = match m {
            Metric::Q => q_value()?,
            Metric::W => witness_w(&sequential()?).value,
            Metric::WL => linear_witness_wl(&sequential()?).value,
            Metric::PB => rac_average_success(&sequential()?).value,
            Metric::PMIN => rac_worst_case(&sequential()?).value,
            Metric::CHSH => {
                let bx = subject.correlation_box().map_err(|e| {
                    Error::ConfigError(format!("CHSH needs a nonsignaling joint box: {e}"))
                })?;
                chsh_value(&bx).value
            }
            Metric::HMIN => min_entropy(q_value()?.min(2.0))?.value,
            Metric::FQ => guessing_bound(q_value()?.min(2.0))?,
        };
        match m.kind() {
            Some(kind) => WitnessValue::new(kind, value).validate(OUTPUT_TOL)?,
            None if !(0.5 - OUTPUT_TOL..=1.0 + OUTPUT_TOL).contains(&value) => {
                return Err(Error::InvariantViolation(format!("f(Q) = {value} outside [0.5, 1]")));
            }
            None => {}
        }
        out.push(value);
    }
    Ok(out)
}
