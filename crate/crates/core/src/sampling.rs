//! Random physical objects for property tests, benchmarks and sweeps.

use nalgebra::Matrix4;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal, UnitBall, UnitSphere};

use crate::algebra::{BinaryPovm, BlochVector, QubitDensity, TwoQubitDensity, C64};
use crate::families::{cq_state, qc_state};
use crate::scenario::{indices4, CorrelationBox, SequentialTable, Table4};

pub fn random_unit_vector(rng: &mut impl Rng) -> BlochVector {
    BlochVector(UnitSphere.sample(rng))
}

/// Uniform in the Bloch ball.
pub fn random_bloch(rng: &mut impl Rng) -> BlochVector {
    BlochVector(UnitBall.sample(rng))
}

pub fn random_density(rng: &mut impl Rng) -> QubitDensity {
    QubitDensity::from_bloch(&random_bloch(rng)).expect("sample lies in the ball")
}

/// Unsharp binary POVM with uniform sharpness and bias.
pub fn random_povm(rng: &mut impl Rng) -> BinaryPovm {
    let eta: f64 = rng.random();
    let gamma0 = eta / 2.0 + rng.random::<f64>() * (1.0 - eta);
    BinaryPovm::new(gamma0, eta, random_unit_vector(rng)).expect("parameters satisfy effect positivity")
}

/// Mixed two-qubit state `G G† / Tr(G G†)` from a complex Gaussian `G`.
pub fn random_two_qubit_state(rng: &mut impl Rng) -> TwoQubitDensity {
    let g = Matrix4::from_fn(|_, _| {
        C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
    });
    let m = g * g.adjoint();
    let tr = m.trace();
    TwoQubitDensity::from_operator(m / tr).expect("Gram matrix is positive")
}

/// Canonical parameters `(a, b, c)` of a valid state, by rejection.
pub fn random_canonical(rng: &mut impl Rng) -> (BlochVector, BlochVector, [f64; 3]) {
    loop {
        let a = random_bloch(rng);
        let b = random_bloch(rng);
        let c = [0; 3].map(|_| rng.random_range(-1.0..=1.0));
        if TwoQubitDensity::canonical(&a, &b, c).is_ok() {
            return (a, b, c);
        }
    }
}

/// Classical-quantum state with random weight, basis and conditional states.
pub fn random_cq_state(rng: &mut impl Rng) -> TwoQubitDensity {
    let p0 = rng.random();
    let r = random_unit_vector(rng);
    cq_state(p0, &r, &random_density(rng), &random_density(rng)).expect("valid parameters")
}

pub fn random_qc_state(rng: &mut impl Rng) -> TwoQubitDensity {
    let p0 = rng.random();
    let r = random_unit_vector(rng);
    qc_state(p0, &r, &random_density(rng), &random_density(rng)).expect("valid parameters")
}

/// Every entry `p(0|x0x1,y)` uniform in `[0, 1]`.
pub fn random_sequential_table(rng: &mut impl Rng) -> SequentialTable {
    let p0 = [[[0.0; 2]; 2]; 2].map(|a| a.map(|b| b.map(|_: f64| rng.random::<f64>())));
    SequentialTable::from_p0(p0).expect("entries lie in [0, 1]")
}

/// The 24 extremal nonsignaling boxes: 16 deterministic, 8 of PR type.
pub fn nonsignaling_vertices() -> Vec<CorrelationBox> {
    let mut out = Vec::with_capacity(24);
    for s in 0..16usize {
        let (sa, sb) = (s / 4, s % 4);
        let f = |k: usize, input: usize| match k {
            0 => 0,
            1 => 1,
            2 => input,
            _ => 1 - input,
        };
        let mut p = Table4::default();
        for (x, y, a, b) in indices4() {
            p[x][y][a][b] = if a == f(sa, x) && b == f(sb, y) { 1.0 } else { 0.0 };
        }
        out.push(CorrelationBox { p });
    }
    for s in 0..8usize {
        let (al, be, ga) = (s & 1, (s >> 1) & 1, (s >> 2) & 1);
        let mut p = Table4::default();
        for (x, y, a, b) in indices4() {
            let hit = (a ^ b) == ((x & y) ^ (al & x) ^ (be & y) ^ ga);
            p[x][y][a][b] = if hit { 0.5 } else { 0.0 };
        }
        out.push(CorrelationBox { p });
    }
    out
}

/// Random convex combination of the nonsignaling vertices, with weights
/// drawn from a flat Dirichlet distribution over a random subset.
pub fn random_nonsignaling_box(rng: &mut impl Rng) -> CorrelationBox {
    let vertices = nonsignaling_vertices();
    let mut w: Vec<f64> = vertices
        .iter()
        .map(|_| if rng.random_bool(0.3) { -(1.0 - rng.random::<f64>()).ln() } else { 0.0 })
        .collect();
    if w.iter().all(|&v| v == 0.0) {
        let k = rng.random_range(0..w.len());
        w[k] = 1.0;
    }
    let s: f64 = w.iter().sum();
    let mut p = Table4::default();
    for (v, wi) in vertices.iter().zip(&w) {
        for (x, y, a, b) in indices4() {
            p[x][y][a][b] += wi / s * v.p[x][y][a][b];
        }
    }
    CorrelationBox { p }
}
