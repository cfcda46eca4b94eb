//! Named states, strategies and boxes used as reference points.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::algebra::{tensor, BinaryPovm, BlochVector, QubitDensity, TwoQubitDensity};
use crate::error::{Error, Result};
use crate::scenario::{
    box_from_state, conditional_table, conditional_to_box, indices4, pm_table, steer_assemblage,
    ConditionalTable, CorrelationBox, Labeling, SequentialTable, Table4,
};

/// How a strategy produces Bob's preparations.
#[derive(Debug, Clone, PartialEq)]
pub enum Realization {
    /// Explicit preparations `ρ_{x0x1}`, indexed `[x0][x1]`.
    PrepareMeasure { preps: [[QubitDensity; 2]; 2] },
    /// A shared state and Alice's two measurements.
    Bipartite {
        state: TwoQubitDensity,
        alice: [BinaryPovm; 2],
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedStrategy {
    pub label: String,
    pub realization: Realization,
    pub bob: [BinaryPovm; 2],
    /// Identification of preparations with Alice's `(outcome|setting)`.
    pub labeling: Labeling,
}

impl NamedStrategy {
    pub fn sequential_table(&self) -> Result<SequentialTable> {
        match &self.realization {
            Realization::PrepareMeasure { preps } => Ok(pm_table(preps, &self.bob)),
            Realization::Bipartite { .. } => Ok(self.conditional_table()?.to_sequential(self.labeling)),
        }
    }

    pub fn conditional_table(&self) -> Result<ConditionalTable> {
        match &self.realization {
            Realization::PrepareMeasure { .. } => Ok(ConditionalTable::from_sequential(
                &self.sequential_table()?,
                self.labeling,
            )),
            Realization::Bipartite { state, alice } => {
                conditional_table(&steer_assemblage(state, alice), &self.bob)
            }
        }
    }

    /// Joint box. For prepare-and-measure strategies this is the box with
    /// uniform outcome probabilities, which exists only when the
    /// preparations satisfy the nonsignaling condition.
    pub fn correlation_box(&self) -> Result<CorrelationBox> {
        match &self.realization {
            Realization::PrepareMeasure { .. } => {
                let bx = conditional_to_box(&self.conditional_table()?);
                bx.validate()?;
                Ok(bx)
            }
            Realization::Bipartite { state, alice } => Ok(box_from_state(state, alice, &self.bob)),
        }
    }

    /// Preparations seen by Bob (conditional states for bipartite strategies).
    pub fn preparations(&self) -> Result<[[QubitDensity; 2]; 2]> {
        match &self.realization {
            Realization::PrepareMeasure { preps } => Ok(*preps),
            Realization::Bipartite { state, alice } => {
                steer_assemblage(state, alice).preparations(self.labeling)
            }
        }
    }
}

fn density(v: BlochVector) -> QubitDensity {
    QubitDensity::from_bloch(&v).expect("family Bloch vectors lie in the ball")
}

fn sharp(v: BlochVector) -> BinaryPovm {
    BinaryPovm::sharp(v).expect("family directions are unit vectors")
}

/// Eigenstates of `σz` and `σx` measured in the same two bases.
pub fn bb84_strategy() -> NamedStrategy {
    let (z, x) = (BlochVector::Z, BlochVector::X);
    NamedStrategy {
        label: "bb84".into(),
        realization: Realization::PrepareMeasure {
            preps: [
                [density(z), density(z.scale(-1.0))],
                [density(x), density(x.scale(-1.0))],
            ],
        },
        bob: [sharp(z), sharp(x)],
        labeling: Labeling::SettingOutcome,
    }
}

/// Preparations `((−1)^{x0} x̂ + (−1)^{x1} ŷ)/√2` with `σx`, `σy` readout.
pub fn rac_optimal_strategy() -> NamedStrategy {
    let r = FRAC_1_SQRT_2;
    let prep = |x0: usize, x1: usize| {
        let sx = if x0 == 0 { r } else { -r };
        let sy = if x1 == 0 { r } else { -r };
        density(BlochVector::new(sx, sy, 0.0))
    };
    NamedStrategy {
        label: "rac-optimal".into(),
        realization: Realization::PrepareMeasure {
            preps: [[prep(0, 0), prep(0, 1)], [prep(1, 0), prep(1, 1)]],
        },
        bob: [sharp(BlochVector::X), sharp(BlochVector::Y)],
        labeling: Labeling::SettingOutcome,
    }
}

fn check_visibility(v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::DomainError { what: "visibility V must lie in [0, 1]", value: v });
    }
    Ok(())
}

/// `V|ψ⁻⟩⟨ψ⁻| + (1−V) 𝟙/4`.
pub fn werner_state(v: f64) -> Result<TwoQubitDensity> {
    check_visibility(v)?;
    TwoQubitDensity::canonical(&BlochVector::ZERO, &BlochVector::ZERO, [-v; 3])
}

/// Alice's `{−σz, σx}` for the white-noise family.
pub fn wn_bb84_alice() -> [BinaryPovm; 2] {
    [sharp(BlochVector::Z.scale(-1.0)), sharp(BlochVector::X)]
}

/// Bob's `{σz, σx}` for the white-noise family.
pub fn wn_bb84_bob() -> [BinaryPovm; 2] {
    [sharp(BlochVector::Z), sharp(BlochVector::X)]
}

/// Werner state with the white-noise BB84 measurements.
pub fn werner_strategy(v: f64) -> Result<NamedStrategy> {
    Ok(NamedStrategy {
        label: format!("werner:{v}"),
        realization: Realization::Bipartite { state: werner_state(v)?, alice: wn_bb84_alice() },
        bob: wn_bb84_bob(),
        labeling: Labeling::SettingOutcome,
    })
}

/// `p(x1,b|x0,y) = [1 + (−1)^{x1⊕b⊕x0·y} δ_{x0,y} V]/4`.
pub fn white_noise_bb84_box(v: f64) -> Result<CorrelationBox> {
    check_visibility(v)?;
    let mut p = Table4::default();
    for (x, y, a, b) in indices4() {
        let sign = if (a ^ b ^ (x & y)) == 0 { 1.0 } else { -1.0 };
        let vis = if x == y { v } else { 0.0 };
        p[x][y][a][b] = (1.0 + sign * vis) / 4.0;
    }
    Ok(CorrelationBox { p })
}

/// `p(a,b|x,y) = ½ [a⊕b = x·y]`.
pub fn pr_box() -> CorrelationBox {
    let mut p = Table4::default();
    for (x, y, a, b) in indices4() {
        p[x][y][a][b] = if (a ^ b) == (x & y) { 0.5 } else { 0.0 };
    }
    CorrelationBox { p }
}

fn check_cq_args(p0: f64, r: &BlochVector) -> Result<()> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(Error::DomainError { what: "p0 must lie in [0, 1]", value: p0 });
    }
    if (r.norm() - 1.0).abs() > crate::algebra::BLOCH_TOL {
        return Err(Error::DomainError { what: "basis direction must be a unit vector", value: r.norm() });
    }
    Ok(())
}

/// `p0 |r̂+⟩⟨r̂+| ⊗ χ0 + (1−p0) |r̂−⟩⟨r̂−| ⊗ χ1`.
pub fn cq_state(
    p0: f64,
    r: &BlochVector,
    chi0: &QubitDensity,
    chi1: &QubitDensity,
) -> Result<TwoQubitDensity> {
    check_cq_args(p0, r)?;
    let plus = density(*r);
    let minus = density(r.scale(-1.0));
    let op = tensor(plus.operator(), chi0.operator()) * nalgebra::Complex::new(p0, 0.0)
        + tensor(minus.operator(), chi1.operator()) * nalgebra::Complex::new(1.0 - p0, 0.0);
    TwoQubitDensity::from_operator(op)
}

/// `p0 φ0 ⊗ |r̂+⟩⟨r̂+| + (1−p0) φ1 ⊗ |r̂−⟩⟨r̂−|`.
pub fn qc_state(
    p0: f64,
    r: &BlochVector,
    phi0: &QubitDensity,
    phi1: &QubitDensity,
) -> Result<TwoQubitDensity> {
    check_cq_args(p0, r)?;
    let plus = density(*r);
    let minus = density(r.scale(-1.0));
    let op = tensor(phi0.operator(), plus.operator()) * nalgebra::Complex::new(p0, 0.0)
        + tensor(phi1.operator(), minus.operator()) * nalgebra::Complex::new(1.0 - p0, 0.0);
    TwoQubitDensity::from_operator(op)
}

/// Separable Bell-diagonal state `c = (½, ½, 0)` with Alice measuring along
/// `(x̂ ± ŷ)/√2` and Bob along `x̂, ŷ`. The preparations follow the
/// random-access-code labeling `x0` = outcome, `x1` = outcome ⊕ setting.
pub fn bell_diagonal_rac_strategy() -> NamedStrategy {
    let r = FRAC_1_SQRT_2;
    let state = TwoQubitDensity::canonical(&BlochVector::ZERO, &BlochVector::ZERO, [0.5, 0.5, 0.0])
        .expect("separable Bell-diagonal state is positive");
    NamedStrategy {
        label: "bell-diag-rac".into(),
        realization: Realization::Bipartite {
            state,
            alice: [sharp(BlochVector::new(r, r, 0.0)), sharp(BlochVector::new(r, -r, 0.0))],
        },
        bob: [sharp(BlochVector::X), sharp(BlochVector::Y)],
        labeling: Labeling::OutcomeParity,
    }
}
