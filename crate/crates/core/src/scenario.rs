//! Correlation objects of the two-input/two-output scenarios: sequential
//! prepare-and-measure tables, steering assemblages, conditional tables and
//! joint boxes.
//!
//! Label conventions:
//! * sequential tables are indexed `[x0][x1][y][b]` for `p(b|x0x1,y)`;
//! * assemblages and conditional tables are indexed `[setting][outcome]`
//!   for Alice (`σ_{x1|x0}`), so `[x0][x1][y][b]` means `p(b|x1;x0,y)`;
//! * boxes are indexed `[x][y][a][b]` for `p(a,b|x,y)`.
//!
//! The default [`Labeling::SettingOutcome`] identifies the preparation
//! `x0x1` with Alice's outcome `x1` for setting `x0`.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    identity2, tensor, trace_out_first, BinaryPovm, BlochVector, Op2, QubitDensity,
    TwoQubitDensity, ALGEBRA_TOL, PSD_TOL,
};
use crate::error::{Error, Result};

/// Four-index probability array with binary indices.
pub type Table4 = [[[[f64; 2]; 2]; 2]; 2];

/// Nonsignaling tolerance for assemblages and boxes.
pub const NONSIGNALING_TOL: f64 = 1e-10;
/// Probabilities at or below this value cannot be conditioned on.
pub const CONDITIONING_TOL: f64 = 1e-12;

const PROB_TOL: f64 = 1e-12;

/// Iterates over all `(i, j, k, l)` binary index quadruples.
pub fn indices4() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..16).map(|n| (n >> 3 & 1, n >> 2 & 1, n >> 1 & 1, n & 1))
}

fn check_probability(v: f64, what: &str) -> Result<()> {
    if !v.is_finite() || !(-PROB_TOL..=1.0 + PROB_TOL).contains(&v) {
        return Err(Error::InvariantViolation(format!("{what} = {v} outside [0, 1]")));
    }
    Ok(())
}

/// How the four preparations `x0x1` of a prepare-and-measure strategy map to
/// Alice's `(outcome | setting)` pairs in the spatial scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Labeling {
    /// `x0` = setting, `x1` = outcome.
    #[default]
    SettingOutcome,
    /// `x0` = outcome, `x1` = outcome ⊕ setting.
    OutcomeParity,
}

impl Labeling {
    /// `(setting, outcome)` for preparation `x0x1`.
    pub fn to_spatial(self, x0: usize, x1: usize) -> (usize, usize) {
        match self {
            Labeling::SettingOutcome => (x0, x1),
            Labeling::OutcomeParity => (x0 ^ x1, x0),
        }
    }

    /// Preparation label `(x0, x1)` for Alice's `(setting, outcome)`.
    pub fn to_preparation(self, setting: usize, outcome: usize) -> (usize, usize) {
        match self {
            Labeling::SettingOutcome => (setting, outcome),
            Labeling::OutcomeParity => (outcome, outcome ^ setting),
        }
    }
}

/// `p(b|x0x1,y)`, indexed `[x0][x1][y][b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequentialTable {
    pub p: Table4,
}

impl SequentialTable {
    pub fn new(p: Table4) -> Result<Self> {
        let t = SequentialTable { p };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for (x0, x1, y, b) in indices4() {
            check_probability(self.p[x0][x1][y][b], "p(b|x0x1,y)")?;
        }
        for (x0, x1, y, _) in indices4().filter(|q| q.3 == 0) {
            let s = self.p[x0][x1][y][0] + self.p[x0][x1][y][1];
            if (s - 1.0).abs() > PROB_TOL {
                return Err(Error::InvariantViolation(format!(
                    "sum_b p(b|{x0}{x1},{y}) = {s}"
                )));
            }
        }
        Ok(())
    }

    /// Builds a table from `p(0|x0x1,y)` alone.
    pub fn from_p0(p0: [[[f64; 2]; 2]; 2]) -> Result<Self> {
        let mut p = Table4::default();
        for (x0, x1, y, _) in indices4().filter(|q| q.3 == 0) {
            p[x0][x1][y] = [p0[x0][x1][y], 1.0 - p0[x0][x1][y]];
        }
        Self::new(p)
    }

    pub fn get(&self, b: usize, x0: usize, x1: usize, y: usize) -> f64 {
        self.p[x0][x1][y][b]
    }
}

/// `Tr(ρ_{x0x1} M_{b|y})` for preparations indexed `[x0][x1]`.
pub fn pm_table(preps: &[[QubitDensity; 2]; 2], meas: &[BinaryPovm; 2]) -> SequentialTable {
    let mut p = Table4::default();
    for (x0, x1, y, b) in indices4() {
        p[x0][x1][y][b] = meas[y].probability(b, preps[x0][x1].operator());
    }
    SequentialTable { p }
}

/// Subnormalized conditional states `σ_{x1|x0}`, indexed `[x0][x1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assemblage {
    pub sigma: [[Op2; 2]; 2],
}

impl Assemblage {
    pub fn new(sigma: [[Op2; 2]; 2]) -> Result<Self> {
        let a = Assemblage { sigma };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        for x0 in 0..2 {
            for x1 in 0..2 {
                let s = &self.sigma[x0][x1];
                if !crate::algebra::is_hermitian(s, ALGEBRA_TOL) {
                    return Err(Error::InvariantViolation(format!("sigma_{x1}|{x0} not Hermitian")));
                }
                let min = crate::algebra::hermitian_eigenvalues2(s)[0];
                if min < -PSD_TOL {
                    return Err(Error::NotPositive { min_eigenvalue: min });
                }
            }
            let tr = self.probability(x0, 0) + self.probability(x0, 1);
            if (tr - 1.0).abs() > ALGEBRA_TOL {
                return Err(Error::InvariantViolation(format!(
                    "outcome probabilities for setting {x0} sum to {tr}"
                )));
            }
        }
        let defect = self.signaling_defect();
        if defect > NONSIGNALING_TOL {
            return Err(Error::InvariantViolation(format!(
                "assemblage signals: max deviation {defect:e}"
            )));
        }
        Ok(())
    }

    /// `p(x1|x0) = Tr σ_{x1|x0}`.
    pub fn probability(&self, setting: usize, outcome: usize) -> f64 {
        self.sigma[setting][outcome].trace().re
    }

    /// Largest entrywise deviation between `Σ_{x1} σ_{x1|0}` and `Σ_{x1} σ_{x1|1}`.
    pub fn signaling_defect(&self) -> f64 {
        let d = (self.sigma[0][0] + self.sigma[0][1]) - (self.sigma[1][0] + self.sigma[1][1]);
        d.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Normalized conditional state `ρ_{x1|x0}`.
    pub fn conditional_state(&self, setting: usize, outcome: usize) -> Result<QubitDensity> {
        let pr = self.probability(setting, outcome);
        if pr <= CONDITIONING_TOL {
            return Err(Error::ZeroConditioningProbability {
                setting,
                outcome,
                probability: pr,
            });
        }
        QubitDensity::from_operator(self.sigma[setting][outcome] / nalgebra::Complex::new(pr, 0.0))
    }

    /// The four normalized conditional states arranged as P&M preparations.
    pub fn preparations(&self, labeling: Labeling) -> Result<[[QubitDensity; 2]; 2]> {
        let mut out = [[QubitDensity::maximally_mixed(); 2]; 2];
        for x0 in 0..2 {
            for x1 in 0..2 {
                let (s, o) = labeling.to_spatial(x0, x1);
                out[x0][x1] = self.conditional_state(s, o)?;
            }
        }
        Ok(out)
    }

    /// Bloch vectors of `σ_{x1|x0}` scaled by `p(x1|x0)` (i.e. `Tr(σ σ⃗)`).
    pub fn subnormalized_bloch(&self, setting: usize, outcome: usize) -> BlochVector {
        let s = &self.sigma[setting][outcome];
        BlochVector(std::array::from_fn(|k| (s * crate::algebra::pauli(k)).trace().re))
    }
}

/// `σ_{x1|x0} = Tr_A((M_{x1|x0} ⊗ 𝟙) ρ)`.
pub fn steer_assemblage(rho: &TwoQubitDensity, alice: &[BinaryPovm; 2]) -> Assemblage {
    let id = identity2();
    let sigma = std::array::from_fn(|x0| {
        std::array::from_fn(|x1| {
            let op = tensor(&alice[x0].effect(x1), &id) * rho.operator();
            trace_out_first(&op)
        })
    });
    Assemblage { sigma }
}

/// `pb = p(b|x1;x0,y)`, `pa = p(x1|x0)`, both indexed with `[x0][x1]` first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionalTable {
    pub pb: Table4,
    pub pa: [[f64; 2]; 2],
}

impl ConditionalTable {
    pub fn new(pb: Table4, pa: [[f64; 2]; 2]) -> Result<Self> {
        let t = ConditionalTable { pb, pa };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        for x0 in 0..2 {
            for x1 in 0..2 {
                check_probability(self.pa[x0][x1], "p(x1|x0)")?;
            }
            let s = self.pa[x0][0] + self.pa[x0][1];
            if (s - 1.0).abs() > PROB_TOL {
                return Err(Error::InvariantViolation(format!("sum_x1 p(x1|{x0}) = {s}")));
            }
        }
        for (x0, x1, y, _) in indices4().filter(|q| q.3 == 0) {
            if self.pa[x0][x1] <= 0.0 {
                continue;
            }
            for b in 0..2 {
                check_probability(self.pb[x0][x1][y][b], "p(b|x1;x0,y)")?;
            }
            let s = self.pb[x0][x1][y][0] + self.pb[x0][x1][y][1];
            if (s - 1.0).abs() > PROB_TOL {
                return Err(Error::InvariantViolation(format!(
                    "sum_b p(b|{x1};{x0},{y}) = {s}"
                )));
            }
        }
        Ok(())
    }

    /// Reads the table as a sequential table under `labeling`.
    pub fn to_sequential(&self, labeling: Labeling) -> SequentialTable {
        let mut p = Table4::default();
        for (x0, x1, y, b) in indices4() {
            let (s, o) = labeling.to_spatial(x0, x1);
            p[x0][x1][y][b] = self.pb[s][o][y][b];
        }
        SequentialTable { p }
    }

    /// Conditional table whose conditional probabilities are the entries of
    /// `t` under `labeling`, with uniform outcome probabilities.
    pub fn from_sequential(t: &SequentialTable, labeling: Labeling) -> Self {
        let mut pb = Table4::default();
        for (x0, x1, y, b) in indices4() {
            let (s, o) = labeling.to_spatial(x0, x1);
            pb[s][o][y][b] = t.p[x0][x1][y][b];
        }
        ConditionalTable { pb, pa: [[0.5; 2]; 2] }
    }
}

/// `p(b|x1;x0,y) = Tr(σ_{x1|x0} M_{b|y}) / Tr σ_{x1|x0}`.
pub fn conditional_table(asm: &Assemblage, bob: &[BinaryPovm; 2]) -> Result<ConditionalTable> {
    let mut pb = Table4::default();
    let mut pa = [[0.0; 2]; 2];
    for x0 in 0..2 {
        for x1 in 0..2 {
            let pr = asm.probability(x0, x1);
            if pr <= CONDITIONING_TOL {
                return Err(Error::ZeroConditioningProbability {
                    setting: x0,
                    outcome: x1,
                    probability: pr,
                });
            }
            pa[x0][x1] = pr;
            for y in 0..2 {
                for b in 0..2 {
                    pb[x0][x1][y][b] = bob[y].probability(b, &asm.sigma[x0][x1]) / pr;
                }
            }
        }
    }
    Ok(ConditionalTable { pb, pa })
}

/// Joint probabilities `p(a,b|x,y)`, indexed `[x][y][a][b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationBox {
    pub p: Table4,
}

impl CorrelationBox {
    pub fn new(p: Table4) -> Result<Self> {
        let b = CorrelationBox { p };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        for (x, y, a, b) in indices4() {
            check_probability(self.p[x][y][a][b], "p(a,b|x,y)")?;
        }
        for x in 0..2 {
            for y in 0..2 {
                let s: f64 = self.p[x][y].iter().flatten().sum();
                if (s - 1.0).abs() > PROB_TOL {
                    return Err(Error::InvariantViolation(format!(
                        "sum_ab p(a,b|{x},{y}) = {s}"
                    )));
                }
            }
        }
        let defect = self.signaling_defect();
        if defect > NONSIGNALING_TOL {
            return Err(Error::InvariantViolation(format!(
                "box signals: max marginal deviation {defect:e}"
            )));
        }
        Ok(())
    }

    pub fn get(&self, a: usize, b: usize, x: usize, y: usize) -> f64 {
        self.p[x][y][a][b]
    }

    /// `p(a|x)` computed from the `y` block.
    pub fn alice_marginal(&self, a: usize, x: usize, y: usize) -> f64 {
        self.p[x][y][a][0] + self.p[x][y][a][1]
    }

    /// `p(b|y)` computed from the `x` block.
    pub fn bob_marginal(&self, b: usize, x: usize, y: usize) -> f64 {
        self.p[x][y][0][b] + self.p[x][y][1][b]
    }

    /// Largest violation of the nonsignaling conditions in either direction.
    pub fn signaling_defect(&self) -> f64 {
        let mut d: f64 = 0.0;
        for x in 0..2 {
            for a in 0..2 {
                d = d.max((self.alice_marginal(a, x, 0) - self.alice_marginal(a, x, 1)).abs());
            }
        }
        for y in 0..2 {
            for b in 0..2 {
                d = d.max((self.bob_marginal(b, 0, y) - self.bob_marginal(b, 1, y)).abs());
            }
        }
        d
    }

    /// `p(a|x) p(b|y)`.
    pub fn product(alice: [[f64; 2]; 2], bob: [[f64; 2]; 2]) -> Result<Self> {
        let mut p = Table4::default();
        for (x, y, a, b) in indices4() {
            p[x][y][a][b] = alice[x][a] * bob[y][b];
        }
        Self::new(p)
    }

    pub fn uniform() -> Self {
        CorrelationBox { p: [[[[0.25; 2]; 2]; 2]; 2] }
    }

    /// L¹ distance `Σ |p − q|` over all 16 entries.
    pub fn l1_distance(&self, other: &CorrelationBox) -> f64 {
        indices4()
            .map(|(x, y, a, b)| (self.p[x][y][a][b] - other.p[x][y][a][b]).abs())
            .sum()
    }
}

/// `p(a,b|x,y) = Tr((M_{a|x} ⊗ M_{b|y}) ρ)`.
pub fn box_from_state(
    rho: &TwoQubitDensity,
    alice: &[BinaryPovm; 2],
    bob: &[BinaryPovm; 2],
) -> CorrelationBox {
    let mut p = Table4::default();
    for (x, y, a, b) in indices4() {
        let m = tensor(&alice[x].effect(a), &bob[y].effect(b));
        p[x][y][a][b] = (m * rho.operator()).trace().re;
    }
    CorrelationBox { p }
}

/// Splits a box into `p(a|x)` and `p(b|a;x,y)`.
pub fn box_to_conditional(bx: &CorrelationBox) -> Result<ConditionalTable> {
    let mut pb = Table4::default();
    let mut pa = [[0.0; 2]; 2];
    for x in 0..2 {
        for a in 0..2 {
            let marg = 0.5 * (bx.alice_marginal(a, x, 0) + bx.alice_marginal(a, x, 1));
            if marg <= CONDITIONING_TOL {
                return Err(Error::ZeroConditioningProbability {
                    setting: x,
                    outcome: a,
                    probability: marg,
                });
            }
            pa[x][a] = marg;
            for y in 0..2 {
                let row = bx.alice_marginal(a, x, y);
                for b in 0..2 {
                    pb[x][a][y][b] = bx.p[x][y][a][b] / row;
                }
            }
        }
    }
    Ok(ConditionalTable { pb, pa })
}

/// `p(a,b|x,y) = p(b|a;x,y) p(a|x)`.
pub fn conditional_to_box(ct: &ConditionalTable) -> CorrelationBox {
    let mut p = Table4::default();
    for (x, y, a, b) in indices4() {
        p[x][y][a][b] = ct.pb[x][a][y][b] * ct.pa[x][a];
    }
    CorrelationBox { p }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BlochVector;

    fn sharp(v: BlochVector) -> BinaryPovm {
        BinaryPovm::sharp(v).unwrap()
    }

    fn bb84_preps() -> [[QubitDensity; 2]; 2] {
        let d = |v: BlochVector| QubitDensity::from_bloch(&v).unwrap();
        [
            [d(BlochVector::Z), d(BlochVector::Z.scale(-1.0))],
            [d(BlochVector::X), d(BlochVector::X.scale(-1.0))],
        ]
    }

    fn singlet() -> TwoQubitDensity {
        TwoQubitDensity::canonical(&BlochVector::ZERO, &BlochVector::ZERO, [-1.0; 3]).unwrap()
    }

    #[test]
    fn pm_table_bb84() {
        let t = pm_table(&bb84_preps(), &[sharp(BlochVector::Z), sharp(BlochVector::X)]);
        assert!((t.get(0, 0, 0, 0) - 1.0).abs() < 1e-15);
        assert!((t.get(0, 0, 0, 1) - 0.5).abs() < 1e-15);
        t.validate().unwrap();
    }

    #[test]
    fn pm_table_rac_optimal_events() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let d = |x: f64, y: f64| QubitDensity::from_bloch(&BlochVector::new(x * r, y * r, 0.0)).unwrap();
        let preps = [[d(1.0, 1.0), d(1.0, -1.0)], [d(-1.0, 1.0), d(-1.0, -1.0)]];
        let t = pm_table(&preps, &[sharp(BlochVector::X), sharp(BlochVector::Y)]);
        for (x0, x1, y, _) in indices4().filter(|q| q.3 == 0) {
            let target = if y == 0 { x0 } else { x1 };
            assert!((t.get(target, x0, x1, y) - 0.5 * (1.0 + r)).abs() < 1e-15);
        }
    }

    #[test]
    fn singlet_steering_sharp_z() {
        let alice = [sharp(BlochVector::Z), sharp(BlochVector::X)];
        let asm = steer_assemblage(&singlet(), &alice);
        asm.validate().unwrap();
        // outcome +z on Alice leaves Bob in −z with probability ½
        let down = QubitDensity::from_bloch(&BlochVector::Z.scale(-1.0)).unwrap();
        let up = QubitDensity::from_bloch(&BlochVector::Z).unwrap();
        assert!((asm.sigma[0][0] - down.operator() * nalgebra::Complex::new(0.5, 0.0)).norm() < 1e-15);
        assert!((asm.sigma[0][1] - up.operator() * nalgebra::Complex::new(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn trivial_measurement_gives_half_marginal() {
        let rho = TwoQubitDensity::canonical(
            &BlochVector::new(0.2, 0.0, 0.1),
            &BlochVector::new(0.0, 0.3, 0.0),
            [0.1, -0.2, 0.3],
        )
        .unwrap();
        let asm = steer_assemblage(&rho, &[BinaryPovm::trivial(), BinaryPovm::trivial()]);
        let half_b = rho.partial_trace_first().operator() * nalgebra::Complex::new(0.5, 0.0);
        for x0 in 0..2 {
            for x1 in 0..2 {
                assert!((asm.sigma[x0][x1] - half_b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn maximally_mixed_assemblage() {
        let alice = [
            BinaryPovm::new(0.6, 0.5, BlochVector::X).unwrap(),
            sharp(BlochVector::Y),
        ];
        let asm = steer_assemblage(&TwoQubitDensity::maximally_mixed(), &alice);
        for x0 in 0..2 {
            for x1 in 0..2 {
                let p = asm.probability(x0, x1);
                let expect = identity2() * nalgebra::Complex::new(0.5 * p, 0.0);
                assert!((asm.sigma[x0][x1] - expect).norm() < 1e-15);
            }
        }
        let ct = conditional_table(&asm, &[sharp(BlochVector::Z), sharp(BlochVector::X)]).unwrap();
        assert!(ct.pb.iter().flatten().flatten().flatten().all(|v| (v - 0.5).abs() < 1e-15));
    }

    #[test]
    fn product_state_table_is_uncorrelated() {
        let ra = QubitDensity::from_bloch(&BlochVector::new(0.3, 0.1, -0.5)).unwrap();
        let rb = QubitDensity::from_bloch(&BlochVector::new(-0.2, 0.6, 0.1)).unwrap();
        let rho = TwoQubitDensity::product(&ra, &rb);
        let alice = [sharp(BlochVector::X), sharp(BlochVector::Z)];
        let bob = [sharp(BlochVector::Y), BinaryPovm::new(0.45, 0.8, BlochVector::X).unwrap()];
        let ct = conditional_table(&steer_assemblage(&rho, &alice), &bob).unwrap();
        for (x0, x1, y, b) in indices4() {
            assert!((ct.pb[x0][x1][y][b] - ct.pb[0][0][y][b]).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_conditioning_is_an_error() {
        let pure = QubitDensity::from_bloch(&BlochVector::Z).unwrap();
        let rho = TwoQubitDensity::product(&pure, &QubitDensity::maximally_mixed());
        let asm = steer_assemblage(&rho, &[sharp(BlochVector::Z), sharp(BlochVector::X)]);
        let err = conditional_table(&asm, &[sharp(BlochVector::Z), sharp(BlochVector::X)]).unwrap_err();
        assert_eq!(
            err,
            Error::ZeroConditioningProbability { setting: 0, outcome: 1, probability: 0.0 }
        );
        let bx = box_from_state(&rho, &[sharp(BlochVector::Z), sharp(BlochVector::X)], &[sharp(BlochVector::Z); 2]);
        assert!(matches!(box_to_conditional(&bx), Err(Error::ZeroConditioningProbability { .. })));
    }

    #[test]
    fn box_examples() {
        let u = box_from_state(
            &TwoQubitDensity::maximally_mixed(),
            &[sharp(BlochVector::Z), sharp(BlochVector::X)],
            &[sharp(BlochVector::Y), sharp(BlochVector::X)],
        );
        assert!(u.l1_distance(&CorrelationBox::uniform()) < 1e-15);

        let dir = BlochVector::new(0.6, 0.0, 0.8);
        let s = box_from_state(&singlet(), &[sharp(dir), sharp(BlochVector::X)], &[sharp(dir), sharp(BlochVector::Y)]);
        s.validate().unwrap();
        assert!(s.get(0, 0, 0, 0).abs() < 1e-15 && s.get(1, 1, 0, 0).abs() < 1e-15);
    }

    #[test]
    fn uncorrelated_box_conditional_independent_of_a() {
        let bx = CorrelationBox::product([[0.3, 0.7], [0.6, 0.4]], [[0.2, 0.8], [0.9, 0.1]]).unwrap();
        let ct = box_to_conditional(&bx).unwrap();
        for (x, a, y, b) in indices4() {
            assert!((ct.pb[x][a][y][b] - ct.pb[0][0][y][b]).abs() < 1e-15);
        }
        assert!(conditional_to_box(&ct).l1_distance(&bx) < 1e-15);
    }

    #[test]
    fn labeling_maps_are_inverse() {
        for l in [Labeling::SettingOutcome, Labeling::OutcomeParity] {
            for s in 0..2 {
                for o in 0..2 {
                    let (x0, x1) = l.to_preparation(s, o);
                    assert_eq!(l.to_spatial(x0, x1), (s, o));
                }
            }
        }
        assert_eq!(Labeling::OutcomeParity.to_spatial(0, 1), (1, 0));
        assert_eq!(Labeling::OutcomeParity.to_spatial(1, 0), (1, 1));
        assert_eq!(Labeling::OutcomeParity.to_spatial(1, 1), (0, 1));
    }

    #[test]
    fn invalid_tables_rejected() {
        let mut p = [[[[0.5; 2]; 2]; 2]; 2];
        p[1][0][1] = [0.7, 0.7];
        assert!(SequentialTable::new(p).is_err());
        let mut q = [[[[0.25; 2]; 2]; 2]; 2];
        q[0][0] = [[0.5, 0.0], [0.0, 0.5]];
        q[0][1] = [[0.5, 0.5], [0.0, 0.0]];
        assert!(matches!(CorrelationBox::new(q), Err(Error::InvariantViolation(_))));
    }
}
