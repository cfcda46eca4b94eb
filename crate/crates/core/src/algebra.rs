//! Fixed-size complex linear algebra for one and two qubits.
//!
//! Operators are dense `2×2` / `4×4` complex matrices. Pauli components are
//! always ordered `(σx, σy, σz)`, and in every tensor product the first factor
//! is Alice's qubit.

use nalgebra::{Complex, Matrix2, Matrix4, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
/// Single-qubit operator.
pub type Op2 = Matrix2<C64>;
/// Two-qubit operator, row-major index `2*i_alice + i_bob`.
pub type Op4 = Matrix4<C64>;

/// Tolerance for exact algebraic identities (hermiticity, trace).
pub const ALGEBRA_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as non-negative.
pub const PSD_TOL: f64 = 1e-9;
/// Bloch vectors longer than `1 + BLOCH_TOL` are rejected.
pub const BLOCH_TOL: f64 = 1e-9;

#[inline]
fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn identity2() -> Op2 {
    Op2::identity()
}

pub fn identity4() -> Op4 {
    Op4::identity()
}

/// Pauli matrix `σ_k` for `k ∈ {0, 1, 2}` = `(x, y, z)`.
pub fn pauli(k: usize) -> Op2 {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    match k {
        0 => Op2::new(z, one, one, z),
        1 => Op2::new(z, c(0.0, -1.0), c(0.0, 1.0), z),
        2 => Op2::new(one, z, z, -one),
        _ => panic!("pauli index {k} out of range"),
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &Op2, b: &Op2) -> Op4 {
    Op4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

pub fn is_hermitian<const D: usize>(
    m: &nalgebra::SMatrix<C64, D, D>,
    tol: f64,
) -> bool {
    (m - m.adjoint()).iter().all(|z| z.norm() <= tol)
}

/// Eigenvalues of a Hermitian operator in ascending order.
pub fn hermitian_eigenvalues2(m: &Op2) -> [f64; 2] {
    // Closed form for 2×2: λ = t/2 ± sqrt((a-d)²/4 + |b|²).
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let off = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
    let mid = 0.5 * (a + d);
    let rad = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
    [mid - rad, mid + rad]
}

/// Eigenvalues of a Hermitian 4×4 operator in ascending order.
pub fn hermitian_eigenvalues4(m: &Op4) -> [f64; 4] {
    let herm = (m + m.adjoint()).map(|z| z * 0.5);
    let ev = herm.symmetric_eigenvalues();
    let mut out = [ev[0], ev[1], ev[2], ev[3]];
    out.sort_by(f64::total_cmp);
    out
}

/// Real three-vector in the Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector([0.0; 3]);
    pub const X: BlochVector = BlochVector([1.0, 0.0, 0.0]);
    pub const Y: BlochVector = BlochVector([0.0, 1.0, 0.0]);
    pub const Z: BlochVector = BlochVector([0.0, 0.0, 1.0]);

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector([x, y, z])
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, s: f64) -> BlochVector {
        BlochVector(self.0.map(|v| v * s))
    }

    pub fn add(&self, other: &BlochVector) -> BlochVector {
        BlochVector([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn sub(&self, other: &BlochVector) -> BlochVector {
        self.add(&other.scale(-1.0))
    }

    /// Unit vector along `self`; `None` for the zero vector.
    pub fn normalized(&self) -> Option<BlochVector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// `v · σ⃗`.
    pub fn sigma(&self) -> Op2 {
        pauli(0) * c(self.0[0], 0.0) + pauli(1) * c(self.0[1], 0.0) + pauli(2) * c(self.0[2], 0.0)
    }

    pub fn as_vector3(&self) -> Vector3<f64> {
        Vector3::new(self.0[0], self.0[1], self.0[2])
    }
}

/// A valid single-qubit density operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensity(Op2);

impl QubitDensity {
    /// `½(𝟙 + s·σ⃗)`.
    pub fn from_bloch(s: &BlochVector) -> Result<Self> {
        let norm = s.norm();
        if !s.is_finite() || norm > 1.0 + BLOCH_TOL {
            return Err(Error::BlochOutOfBall { norm });
        }
        Ok(QubitDensity((identity2() + s.sigma()) * c(0.5, 0.0)))
    }

    /// Validates hermiticity, unit trace and positivity.
    pub fn from_operator(op: Op2) -> Result<Self> {
        check_density(&op, 2)?;
        let min = hermitian_eigenvalues2(&op)[0];
        if min < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(QubitDensity(op))
    }

    pub fn maximally_mixed() -> Self {
        QubitDensity(identity2() * c(0.5, 0.0))
    }

    pub fn operator(&self) -> &Op2 {
        &self.0
    }

    /// Components `Tr(ρ σ_k)`.
    pub fn bloch(&self) -> BlochVector {
        BlochVector(std::array::from_fn(|k| (self.0 * pauli(k)).trace().re))
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        hermitian_eigenvalues2(&self.0)
    }
}

fn check_density<const D: usize>(op: &nalgebra::SMatrix<C64, D, D>, dim: usize) -> Result<()> {
    if op.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvariantViolation(format!("non-finite {dim}x{dim} operator entry")));
    }
    if !is_hermitian(op, ALGEBRA_TOL) {
        return Err(Error::InvariantViolation(format!("{dim}x{dim} operator is not Hermitian")));
    }
    let tr = op.trace();
    if (tr.re - 1.0).abs() > ALGEBRA_TOL || tr.im.abs() > ALGEBRA_TOL {
        return Err(Error::InvariantViolation(format!("trace {tr} != 1")));
    }
    Ok(())
}

/// A valid two-qubit density operator (Alice ⊗ Bob).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensity(Op4);

impl TwoQubitDensity {
    pub fn from_operator(op: Op4) -> Result<Self> {
        check_density(&op, 4)?;
        let min = hermitian_eigenvalues4(&op)[0];
        if min < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(TwoQubitDensity(op))
    }

    /// `¼(𝟙⊗𝟙 + a·σ⃗⊗𝟙 + 𝟙⊗b·σ⃗ + Σ c_i σ_i⊗σ_i)`.
    pub fn canonical(a: &BlochVector, b: &BlochVector, corr: [f64; 3]) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || corr.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvariantViolation("non-finite canonical parameters".into()));
        }
        let id = identity2();
        let mut op = identity4() + tensor(&a.sigma(), &id) + tensor(&id, &b.sigma());
        for (k, ck) in corr.iter().enumerate() {
            op += tensor(&pauli(k), &pauli(k)) * c(*ck, 0.0);
        }
        Self::from_operator(op * c(0.25, 0.0))
    }

    pub fn product(alice: &QubitDensity, bob: &QubitDensity) -> Self {
        TwoQubitDensity(tensor(alice.operator(), bob.operator()))
    }

    pub fn maximally_mixed() -> Self {
        TwoQubitDensity(identity4() * c(0.25, 0.0))
    }

    pub fn operator(&self) -> &Op4 {
        &self.0
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues4(&self.0)
    }

    /// Traces out Alice, leaving Bob's reduced state.
    pub fn partial_trace_first(&self) -> QubitDensity {
        QubitDensity(trace_out_first(&self.0))
    }

    /// Traces out Bob, leaving Alice's reduced state.
    pub fn partial_trace_second(&self) -> QubitDensity {
        QubitDensity(trace_out_second(&self.0))
    }

    /// Correlation tensor `T_ij = Tr(ρ σ_i⊗σ_j)`.
    pub fn correlation_tensor(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| (self.0 * tensor(&pauli(i), &pauli(j))).trace().re)
        })
    }
}

/// `Tr_A(X)` for any 4×4 operator.
pub fn trace_out_first(m: &Op4) -> Op2 {
    Op2::from_fn(|r, col| m[(r, col)] + m[(2 + r, 2 + col)])
}

/// `Tr_B(X)` for any 4×4 operator.
pub fn trace_out_second(m: &Op4) -> Op2 {
    Op2::from_fn(|r, col| m[(2 * r, 2 * col)] + m[(2 * r + 1, 2 * col + 1)])
}

/// Two-outcome qubit measurement with effects
/// `M_b = γ_b 𝟙 + (−1)^b (η/2) û·σ⃗`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryPovm {
    pub gamma0: f64,
    pub gamma1: f64,
    pub eta: f64,
    pub direction: BlochVector,
}

impl BinaryPovm {
    pub fn new(gamma0: f64, eta: f64, direction: BlochVector) -> Result<Self> {
        let povm = BinaryPovm {
            gamma0,
            gamma1: 1.0 - gamma0,
            eta,
            direction,
        };
        povm.validate()?;
        Ok(povm)
    }

    /// Projective measurement of `û·σ⃗`; outcome 0 is the `+1` eigenspace.
    pub fn sharp(direction: BlochVector) -> Result<Self> {
        Self::new(0.5, 1.0, direction)
    }

    /// Coin flip independent of the state.
    pub fn trivial() -> Self {
        BinaryPovm {
            gamma0: 0.5,
            gamma1: 0.5,
            eta: 0.0,
            direction: BlochVector::Z,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.gamma0, self.gamma1, self.eta];
        if vals.iter().any(|v| !v.is_finite()) || !self.direction.is_finite() {
            return Err(Error::InvalidPovm("non-finite parameter".into()));
        }
        if (self.gamma0 + self.gamma1 - 1.0).abs() > ALGEBRA_TOL {
            return Err(Error::InvalidPovm(format!(
                "gamma0 + gamma1 = {} != 1",
                self.gamma0 + self.gamma1
            )));
        }
        if (self.direction.norm() - 1.0).abs() > BLOCH_TOL {
            return Err(Error::InvalidPovm(format!(
                "direction norm {} != 1",
                self.direction.norm()
            )));
        }
        for (b, g) in [self.gamma0, self.gamma1].into_iter().enumerate() {
            for e in [g + 0.5 * self.eta, g - 0.5 * self.eta] {
                if !(-PSD_TOL..=1.0 + PSD_TOL).contains(&e) {
                    return Err(Error::InvalidPovm(format!(
                        "effect {b} eigenvalue {e} outside [0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn gamma(&self, outcome: usize) -> f64 {
        if outcome == 0 {
            self.gamma0
        } else {
            self.gamma1
        }
    }

    /// `(M₀, M₁)`.
    pub fn effects(&self) -> (Op2, Op2) {
        let (m0, m1) = (self.effect(0), self.effect(1));
        (m0, m1)
    }

    pub fn effect(&self, outcome: usize) -> Op2 {
        let sign = if outcome == 0 { 1.0 } else { -1.0 };
        identity2() * c(self.gamma(outcome), 0.0)
            + self.direction.sigma() * c(sign * 0.5 * self.eta, 0.0)
    }

    /// `Tr(M_b ½(𝟙 + s·σ⃗)) = γ_b + (−1)^b (η/2) û·s`; valid for subnormalized
    /// vectors as well.
    pub fn probability_from_bloch(&self, outcome: usize, s: &BlochVector) -> f64 {
        let sign = if outcome == 0 { 1.0 } else { -1.0 };
        self.gamma(outcome) + sign * 0.5 * self.eta * self.direction.dot(s)
    }

    /// `Tr(M_b ρ)`.
    pub fn probability(&self, outcome: usize, rho: &Op2) -> f64 {
        (self.effect(outcome) * rho).trace().re
    }
}

pub fn bloch_to_density(s: &BlochVector) -> Result<QubitDensity> {
    QubitDensity::from_bloch(s)
}

pub fn density_to_bloch(rho: &QubitDensity) -> BlochVector {
    rho.bloch()
}

pub fn canonical_two_qubit(a: &BlochVector, b: &BlochVector, corr: [f64; 3]) -> Result<TwoQubitDensity> {
    TwoQubitDensity::canonical(a, b, corr)
}

pub fn povm_effects(m: &BinaryPovm) -> Result<(Op2, Op2)> {
    m.validate()?;
    Ok(m.effects())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close2(a: &Op2, b: &Op2, tol: f64) -> bool {
        (a - b).iter().all(|z| z.norm() <= tol)
    }

    #[test]
    fn bloch_density_examples() {
        let up = QubitDensity::from_bloch(&BlochVector::Z).unwrap();
        let expect = Op2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        assert!(close2(up.operator(), &expect, 1e-15));

        let mixed = QubitDensity::from_bloch(&BlochVector::ZERO).unwrap();
        assert!(close2(mixed.operator(), &(identity2() * c(0.5, 0.0)), 1e-15));

        let r = std::f64::consts::FRAC_1_SQRT_2;
        let diag = QubitDensity::from_bloch(&BlochVector::new(r, r, 0.0)).unwrap();
        let expect = (identity2() + (pauli(0) + pauli(1)) * c(r, 0.0)) * c(0.5, 0.0);
        assert!(close2(diag.operator(), &expect, 1e-15));
        assert!(diag.eigenvalues()[0].abs() < 1e-12);
    }

    #[test]
    fn bloch_outside_ball_rejected() {
        let err = QubitDensity::from_bloch(&BlochVector::new(1.0, 0.1, 0.0)).unwrap_err();
        assert!(matches!(err, Error::BlochOutOfBall { .. }));
        // rounding slack is accepted
        assert!(QubitDensity::from_bloch(&BlochVector::new(1.0 + 1e-13, 0.0, 0.0)).is_ok());
    }

    #[test]
    fn density_to_bloch_examples() {
        assert_eq!(QubitDensity::maximally_mixed().bloch(), BlochVector::ZERO);
        let up = QubitDensity::from_operator(Op2::new(
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ))
        .unwrap();
        assert_eq!(up.bloch(), BlochVector::Z);
        let minus_x = QubitDensity::from_operator((identity2() - pauli(0)) * c(0.5, 0.0)).unwrap();
        assert_eq!(minus_x.bloch(), BlochVector::new(-1.0, 0.0, 0.0));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor(&identity2(), &identity2()), identity4());
        let zz = tensor(&pauli(2), &pauli(2));
        let diag: Vec<f64> = (0..4).map(|i| zz[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
        assert!(zz.iter().enumerate().all(|(k, z)| k % 5 == 0 || z.norm() == 0.0));

        let p = tensor(
            QubitDensity::from_bloch(&BlochVector::Z).unwrap().operator(),
            QubitDensity::from_bloch(&BlochVector::X).unwrap().operator(),
        );
        // rank-1 projector: P² = P, trace 1
        assert!((p * p - p).iter().all(|z| z.norm() < 1e-15));
        assert!((p.trace().re - 1.0).abs() < 1e-15);
        let ev = hermitian_eigenvalues4(&p);
        assert!(ev[..3].iter().all(|v| v.abs() < 1e-12) && (ev[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_examples() {
        let singlet = TwoQubitDensity::canonical(&BlochVector::ZERO, &BlochVector::ZERO, [-1.0; 3])
            .unwrap();
        // |ψ⁻⟩ = (|01⟩ − |10⟩)/√2
        let mut psi = Op4::zeros();
        psi[(1, 1)] = c(0.5, 0.0);
        psi[(2, 2)] = c(0.5, 0.0);
        psi[(1, 2)] = c(-0.5, 0.0);
        psi[(2, 1)] = c(-0.5, 0.0);
        assert!((singlet.operator() - psi).iter().all(|z| z.norm() < 1e-15));

        let mixed = TwoQubitDensity::canonical(&BlochVector::ZERO, &BlochVector::ZERO, [0.0; 3])
            .unwrap();
        assert_eq!(mixed, TwoQubitDensity::maximally_mixed());

        let a = BlochVector::new(0.5, 0.5, 0.0);
        let st = TwoQubitDensity::canonical(&a, &a, [0.5, 0.5, 0.0]).unwrap();
        assert!(st.eigenvalues()[0] >= -1e-12);
        assert!((st.partial_trace_second().bloch().sub(&a)).norm() < 1e-12);
        assert!((st.partial_trace_first().bloch().sub(&a)).norm() < 1e-12);
    }

    #[test]
    fn canonical_rejects_non_positive() {
        let err = TwoQubitDensity::canonical(&BlochVector::ZERO, &BlochVector::ZERO, [1.0, 1.0, 1.0])
            .unwrap_err();
        assert!(matches!(err, Error::NotPositive { .. }));
    }

    #[test]
    fn partial_trace_examples() {
        let m = TwoQubitDensity::maximally_mixed();
        assert_eq!(m.partial_trace_first(), QubitDensity::maximally_mixed());
        let singlet = TwoQubitDensity::canonical(&BlochVector::ZERO, &BlochVector::ZERO, [-1.0; 3])
            .unwrap();
        assert!(singlet.partial_trace_first().bloch().norm() < 1e-15);
        assert!(singlet.partial_trace_second().bloch().norm() < 1e-15);
        let st = TwoQubitDensity::canonical(&BlochVector::new(0.3, 0.0, 0.0), &BlochVector::ZERO, [0.0; 3])
            .unwrap();
        let alice = st.partial_trace_second().bloch();
        assert!(alice.sub(&BlochVector::new(0.3, 0.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn povm_examples() {
        let (m0, m1) = povm_effects(&BinaryPovm::sharp(BlochVector::Z).unwrap()).unwrap();
        assert_eq!(m0, *QubitDensity::from_bloch(&BlochVector::Z).unwrap().operator());
        assert_eq!(m1, *QubitDensity::from_bloch(&BlochVector::Z.scale(-1.0)).unwrap().operator());

        let (t0, t1) = BinaryPovm::new(0.5, 0.0, BlochVector::X).unwrap().effects();
        assert_eq!(t0, identity2() * c(0.5, 0.0));
        assert_eq!(t1, identity2() * c(0.5, 0.0));

        let noisy = BinaryPovm::new(0.6, 0.5, BlochVector::X).unwrap();
        let (e0, e1) = noisy.effects();
        let ev0 = hermitian_eigenvalues2(&e0);
        let ev1 = hermitian_eigenvalues2(&e1);
        assert!((ev0[0] - 0.35).abs() < 1e-12 && (ev0[1] - 0.85).abs() < 1e-12);
        assert!((ev1[0] - 0.15).abs() < 1e-12 && (ev1[1] - 0.65).abs() < 1e-12);
        assert!((e0 + e1 - identity2()).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn povm_positivity_enforced() {
        assert!(matches!(
            BinaryPovm::new(0.9, 0.5, BlochVector::X),
            Err(Error::InvalidPovm(_))
        ));
        assert!(matches!(
            BinaryPovm::new(0.5, 1.0, BlochVector::new(1.0, 1.0, 0.0)),
            Err(Error::InvalidPovm(_))
        ));
    }

    #[test]
    fn bloch_probability_matches_trace() {
        let m = BinaryPovm::new(0.55, 0.7, BlochVector::new(0.6, 0.0, 0.8)).unwrap();
        let s = BlochVector::new(0.1, -0.4, 0.3);
        let rho = QubitDensity::from_bloch(&s).unwrap();
        for b in 0..2 {
            let lhs = m.probability(b, rho.operator());
            assert!((lhs - m.probability_from_bloch(b, &s)).abs() < 1e-15);
        }
    }
}
