//! Scalar witnesses and bounds evaluated on correlation tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::BlochVector;
use crate::error::{Error, Result};
use crate::scenario::{indices4, ConditionalTable, CorrelationBox, SequentialTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WitnessKind {
    W,
    Q,
    WL,
    PB,
    PMIN,
    CHSH,
    HMIN,
}

impl WitnessKind {
    pub const ALL: [WitnessKind; 7] = [
        WitnessKind::W,
        WitnessKind::Q,
        WitnessKind::WL,
        WitnessKind::PB,
        WitnessKind::PMIN,
        WitnessKind::CHSH,
        WitnessKind::HMIN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::W => "W",
            WitnessKind::Q => "Q",
            WitnessKind::WL => "WL",
            WitnessKind::PB => "PB",
            WitnessKind::PMIN => "PMIN",
            WitnessKind::CHSH => "CHSH",
            WitnessKind::HMIN => "HMIN",
        }
    }

    /// Range every value of this kind must lie in.
    pub fn valid_range(self) -> (f64, f64) {
        match self {
            // Qubit strategies stay below 1; an arbitrary table reaches 2.
            WitnessKind::W => (0.0, 2.0),
            WitnessKind::Q => (0.0, 2.0),
            WitnessKind::WL => (-4.0, 4.0),
            WitnessKind::PB | WitnessKind::PMIN => (0.0, 1.0),
            WitnessKind::CHSH => (0.0, 4.0),
            WitnessKind::HMIN => (0.0, 1.0),
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessValue {
    pub value: f64,
    pub kind: WitnessKind,
}

impl WitnessValue {
    pub fn new(kind: WitnessKind, value: f64) -> Self {
        WitnessValue { value, kind }
    }

    /// Checks the value against [`WitnessKind::valid_range`] with `tol` slack.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let (lo, hi) = self.kind.valid_range();
        if !self.value.is_finite() || self.value < lo - tol || self.value > hi + tol {
            return Err(Error::InvariantViolation(format!(
                "{} = {} outside [{lo}, {hi}]",
                self.kind, self.value
            )));
        }
        Ok(())
    }
}

/// Signed `det D` with `D[y][x0] = p(0|x0 0,y) − p(0|x0 1,y)`.
pub fn signed_w(t: &SequentialTable) -> f64 {
    let d = |y: usize, x0: usize| t.p[x0][0][y][0] - t.p[x0][1][y][0];
    det2(d(0, 0), d(0, 1), d(1, 0), d(1, 1))
}

/// Signed `det D` with `D[y][x0] = p(0|0;x0,y) − p(0|1;x0,y)`.
pub fn signed_q(ct: &ConditionalTable) -> f64 {
    let d = |y: usize, x0: usize| ct.pb[x0][0][y][0] - ct.pb[x0][1][y][0];
    det2(d(0, 0), d(0, 1), d(1, 0), d(1, 1))
}

fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a * d - b * c
}

/// Nonlinear dimension witness `|det D|` on a sequential table.
pub fn witness_w(t: &SequentialTable) -> WitnessValue {
    WitnessValue::new(WitnessKind::W, signed_w(t).abs())
}

/// The spatial analogue of [`witness_w`] on `p(b|x1;x0,y)`.
pub fn quantity_q(ct: &ConditionalTable) -> WitnessValue {
    WitnessValue::new(WitnessKind::Q, signed_q(ct).abs())
}

/// Upper bound `f(Q) = ½(1 + √((2−Q)/2))` on the guessing probability.
pub fn guessing_bound(q: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&q) {
        return Err(Error::DomainError { what: "Q must lie in [0, 2]", value: q });
    }
    Ok(0.5 * (1.0 + ((2.0 - q) / 2.0).sqrt()))
}

/// `H_min = −log₂ f(Q)`.
pub fn min_entropy(q: f64) -> Result<WitnessValue> {
    let f = guessing_bound(q)?;
    // f ≥ ½ so the bound never exceeds one bit; clamp the −0.0 at Q = 0.
    Ok(WitnessValue::new(WitnessKind::HMIN, (-f.log2()).max(0.0)))
}

/// Linear dimension witness; classical bits satisfy `W_L ≤ 2`.
pub fn linear_witness_wl(t: &SequentialTable) -> WitnessValue {
    let p = |x0: usize, x1: usize, y: usize| t.p[x0][x1][y][0];
    let v = p(0, 0, 0) + p(0, 0, 1) + p(0, 1, 0) - p(0, 1, 1) - p(1, 0, 0) + p(1, 0, 1)
        - p(1, 1, 0)
        - p(1, 1, 1);
    WitnessValue::new(WitnessKind::WL, v)
}

/// Probability that Bob outputs Alice's `y`th bit for preparation `x0x1`.
fn correct_guess(t: &SequentialTable, x0: usize, x1: usize, y: usize) -> f64 {
    let target = if y == 0 { x0 } else { x1 };
    t.p[x0][x1][y][target]
}

/// Average success probability of the 2-to-1 random-access code.
pub fn rac_average_success(t: &SequentialTable) -> WitnessValue {
    let sum: f64 = indices4()
        .filter(|q| q.3 == 0)
        .map(|(x0, x1, y, _)| correct_guess(t, x0, x1, y))
        .sum();
    WitnessValue::new(WitnessKind::PB, sum / 8.0)
}

/// Worst-case success probability over all eight `(x0, x1, y)` events.
pub fn rac_worst_case(t: &SequentialTable) -> WitnessValue {
    let min = indices4()
        .filter(|q| q.3 == 0)
        .map(|(x0, x1, y, _)| correct_guess(t, x0, x1, y))
        .fold(f64::INFINITY, f64::min);
    WitnessValue::new(WitnessKind::PMIN, min)
}

/// Classical bound on the worst-case success probability of an `n`-to-1
/// code assisted by two shared bits.
pub fn sl_thresholds(n: u32, maximally_mixed_marginals: bool) -> Result<f64> {
    match n {
        2 | 3 if maximally_mixed_marginals => Ok(0.5),
        2 => Ok(2.0 / 3.0),
        3 => Ok(0.5),
        _ => Err(Error::UnsupportedN(n)),
    }
}

/// Correlator `E(x,y) = Σ (−1)^{a⊕b} p(a,b|x,y)`.
pub fn correlator(bx: &CorrelationBox, x: usize, y: usize) -> f64 {
    let p = &bx.p[x][y];
    p[0][0] + p[1][1] - p[0][1] - p[1][0]
}

/// The four CHSH expressions, one per position of the minus sign.
pub fn chsh_expressions(bx: &CorrelationBox) -> [f64; 4] {
    let e = [
        correlator(bx, 0, 0),
        correlator(bx, 0, 1),
        correlator(bx, 1, 0),
        correlator(bx, 1, 1),
    ];
    let total: f64 = e.iter().sum();
    std::array::from_fn(|k| total - 2.0 * e[k])
}

/// Largest `|CHSH|` over the eight sign conventions.
pub fn chsh_value(bx: &CorrelationBox) -> WitnessValue {
    let v = chsh_expressions(bx)
        .iter()
        .map(|s| s.abs())
        .fold(0.0, f64::max);
    WitnessValue::new(WitnessKind::CHSH, v)
}

fn check_finite(a: &BlochVector, b: &BlochVector, corr: &[f64; 3]) -> Result<()> {
    if !a.is_finite() || !b.is_finite() || corr.iter().any(|v| !v.is_finite()) {
        return Err(Error::DomainError { what: "non-finite canonical parameter", value: f64::NAN });
    }
    Ok(())
}

const DEGENERACY_TOL: f64 = 1e-12;

/// Q of the canonical state measured along `x̂, ŷ` on both sides.
pub fn closed_form_q_aligned(a: &BlochVector, b: &BlochVector, corr: [f64; 3]) -> Result<f64> {
    check_finite(a, b, &corr)?;
    let [a1, a2, _] = a.0;
    let [b1, b2, _] = b.0;
    let [c1, c2, _] = corr;
    for (index, ai) in [(1, a1), (2, a2)] {
        let value = 1.0 - ai * ai;
        if value <= DEGENERACY_TOL {
            return Err(Error::DegenerateMarginal { index, value });
        }
    }
    let num = (c1 - a1 * b1) * (c2 - a2 * b2) - a1 * b1 * a2 * b2;
    Ok(num.abs() / ((1.0 - a1 * a1) * (1.0 - a2 * a2)))
}

/// Q of the canonical state with Alice measuring along
/// `(c1 x̂ ± c2 ŷ)/√(c1²+c2²)` and Bob along `(x̂ ± ŷ)/√2`.
pub fn closed_form_q_steering_optimal(
    a: &BlochVector,
    b: &BlochVector,
    corr: [f64; 3],
) -> Result<f64> {
    check_finite(a, b, &corr)?;
    let [a1, a2, _] = a.0;
    let [b1, b2, _] = b.0;
    let [c1, c2, _] = corr;
    let n2 = c1 * c1 + c2 * c2;
    let plus = a1 * c1 + a2 * c2;
    let minus = a1 * c1 - a2 * c2;
    let den = (plus * plus - n2) * (minus * minus - n2);
    if n2 <= DEGENERACY_TOL || den.abs() <= DEGENERACY_TOL {
        return Err(Error::DegenerateDenominator { value: den });
    }
    let num = 2.0 * c1 * c2 * n2 * (a2 * b2 * c1 + a1 * b1 * c2 - c1 * c2);
    Ok((num / den).abs())
}

/// Q of the canonical state with Alice measuring along `(x̂ ± ŷ)/√2` and
/// Bob along `x̂, ŷ`.
pub fn closed_form_q_rac_optimal(a: &BlochVector, b: &BlochVector, corr: [f64; 3]) -> Result<f64> {
    check_finite(a, b, &corr)?;
    let [a1, a2, _] = a.0;
    let [b1, b2, _] = b.0;
    let [c1, c2, _] = corr;
    let den = a1.powi(4) + (a2 * a2 - 2.0).powi(2) - 2.0 * a1 * a1 * (2.0 + a2 * a2);
    if den.abs() <= DEGENERACY_TOL {
        return Err(Error::DegenerateDenominator { value: den });
    }
    let num = (c1 - a1 * b1) * (c2 - a2 * b2) - a1 * b1 * a2 * b2;
    Ok(4.0 * num.abs() / den.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::SequentialTable;

    const HALF_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn table(f: impl Fn(usize, usize, usize) -> f64) -> SequentialTable {
        SequentialTable::from_p0(std::array::from_fn(|x0| {
            std::array::from_fn(|x1| std::array::from_fn(|y| f(x0, x1, y)))
        }))
        .unwrap()
    }

    #[test]
    fn w_of_identical_preparations_is_zero() {
        let t = table(|_, _, y| if y == 0 { 0.3 } else { 0.8 });
        assert_eq!(witness_w(&t).value, 0.0);
    }

    #[test]
    fn guessing_bound_spot_values() {
        assert_eq!(guessing_bound(0.0).unwrap(), 1.0);
        assert_eq!(min_entropy(0.0).unwrap().value, 0.0);
        let f1 = guessing_bound(1.0).unwrap();
        assert!((f1 - 0.5 * (1.0 + HALF_SQRT2)).abs() < 1e-15);
        assert!((f1 - 0.853553).abs() < 1e-6);
        assert!((min_entropy(1.0).unwrap().value - 0.2284467).abs() < 1e-7);
        assert_eq!(guessing_bound(2.0).unwrap(), 0.5);
        assert_eq!(min_entropy(2.0).unwrap().value, 1.0);
    }

    #[test]
    fn guessing_bound_domain() {
        for q in [-1e-9, 2.0 + 1e-9, f64::NAN] {
            assert!(matches!(guessing_bound(q), Err(Error::DomainError { .. })));
        }
    }

    #[test]
    fn uniform_table_rac_is_half() {
        let t = table(|_, _, _| 0.5);
        assert_eq!(rac_average_success(&t).value, 0.5);
        assert_eq!(linear_witness_wl(&t).value, 0.0);
    }

    #[test]
    fn constant_output_worst_case_is_zero() {
        let t = table(|_, _, _| 1.0);
        assert_eq!(rac_worst_case(&t).value, 0.0);
        assert_eq!(rac_average_success(&t).value, 0.5);
    }

    #[test]
    fn sl_threshold_values() {
        assert_eq!(sl_thresholds(2, false).unwrap(), 2.0 / 3.0);
        assert_eq!(sl_thresholds(3, false).unwrap(), 0.5);
        assert_eq!(sl_thresholds(2, true).unwrap(), 0.5);
        assert_eq!(sl_thresholds(3, true).unwrap(), 0.5);
        assert_eq!(sl_thresholds(4, false), Err(Error::UnsupportedN(4)));
        assert_eq!(sl_thresholds(1, true), Err(Error::UnsupportedN(1)));
    }

    #[test]
    fn chsh_of_uncorrelated_box_within_local_bound() {
        let bx = CorrelationBox::product([[0.3, 0.7], [0.9, 0.1]], [[0.5, 0.5], [0.2, 0.8]]).unwrap();
        let v = chsh_value(&bx).value;
        assert!((0.0..=2.0).contains(&v));
    }

    #[test]
    fn aligned_examples() {
        let z = BlochVector::ZERO;
        for v in [0.1, 0.5, 1.0] {
            let q = closed_form_q_aligned(&z, &z, [v, v, 0.3]).unwrap();
            assert!((q - v * v).abs() < 1e-15);
        }
        let h = BlochVector::new(0.5, 0.5, 0.0);
        assert_eq!(closed_form_q_aligned(&h, &h, [0.5, 0.5, 0.0]).unwrap(), 0.0);
        assert_eq!(closed_form_q_aligned(&z, &z, [1.0, 1.0, -1.0]).unwrap(), 1.0);
        assert!(matches!(
            closed_form_q_aligned(&BlochVector::X, &z, [0.0; 3]),
            Err(Error::DegenerateMarginal { index: 1, .. })
        ));
    }

    #[test]
    fn steering_optimal_examples() {
        let z = BlochVector::ZERO;
        let h = BlochVector::new(0.5, 0.5, 0.0);
        assert_eq!(closed_form_q_steering_optimal(&h, &h, [0.5, 0.5, 0.0]).unwrap(), 0.0);
        // For a = b = 0 this construction gives 2 c1² c2² / (c1² + c2²).
        for v in [0.2, 0.5, 0.9] {
            let q = closed_form_q_steering_optimal(&z, &z, [v, v, 0.0]).unwrap();
            assert!((q - v * v).abs() < 1e-15);
        }
        assert_eq!(closed_form_q_steering_optimal(&h, &z, [0.0, 0.4, 0.0]).unwrap(), 0.0);
        assert_eq!(closed_form_q_steering_optimal(&h, &z, [0.4, 0.0, 0.0]).unwrap(), 0.0);
        assert!(matches!(
            closed_form_q_steering_optimal(&z, &z, [0.0, 0.0, 0.5]),
            Err(Error::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn rac_optimal_examples() {
        let z = BlochVector::ZERO;
        let h = BlochVector::new(0.5, 0.5, 0.0);
        assert!((closed_form_q_rac_optimal(&z, &z, [0.5, 0.5, 0.0]).unwrap() - 0.25).abs() < 1e-15);
        assert!((closed_form_q_rac_optimal(&z, &z, [1.0, 1.0, 0.0]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(closed_form_q_rac_optimal(&h, &h, [0.5, 0.5, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn witness_value_range_check() {
        assert!(WitnessValue::new(WitnessKind::Q, 2.0).validate(1e-12).is_ok());
        assert!(WitnessValue::new(WitnessKind::Q, 2.1).validate(1e-12).is_err());
        assert!(WitnessValue::new(WitnessKind::WL, -3.0).validate(1e-12).is_ok());
    }
}
