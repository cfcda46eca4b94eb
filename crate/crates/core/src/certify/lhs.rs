use rand::Rng;

use super::local::deterministic_response;
use super::model::{normalize_weights, split_subnormalized, LhsModel, Model, Response};
use super::seesaw::fit_first_party;
use super::{
    check_box, check_dlambda, classify, random_response, run_restarts, Convergence, ModelSearchReport,
    RestartOutcome, SearchConfig,
};
use crate::algebra::{BinaryPovm, BlochVector};
use crate::error::Result;
use crate::lp::{LinearProgram, Relation, Var};
use crate::scenario::{indices4, CorrelationBox};

const INITIAL_CUTS: usize = 16;
const MAX_CUT_ROUNDS: usize = 60;
/// Violations below this are left to the final projection onto the ball;
/// smaller ones sit inside the solver's own feasibility tolerance.
const CUT_TOL: f64 = 1e-10;

/// Only the components of a hidden Bloch vector along Bob's measurement
/// directions matter; they live in a space of dimension at most two.
struct BobGeometry {
    basis: Vec<BlochVector>,
    /// `coef[y][i] = (η_y / 2) û_y · e_i`
    coef: [Vec<f64>; 2],
    gamma: [[f64; 2]; 2],
}

impl BobGeometry {
    fn new(bob: &[BinaryPovm; 2]) -> Self {
        let mut basis: Vec<BlochVector> = Vec::new();
        for m in bob {
            if m.eta <= 0.0 {
                continue;
            }
            let mut v = m.direction;
            for e in &basis {
                v = v.sub(&e.scale(v.dot(e)));
            }
            if v.norm() > 1e-9 {
                basis.push(v.scale(1.0 / v.norm()));
            }
        }
        let coef = std::array::from_fn(|y| {
            basis.iter().map(|e| 0.5 * bob[y].eta * bob[y].direction.dot(e)).collect()
        });
        let gamma = std::array::from_fn(|y| [bob[y].gamma(0), bob[y].gamma(1)]);
        BobGeometry { basis, coef, gamma }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn embed(&self, t: &[f64]) -> BlochVector {
        self.basis
            .iter()
            .zip(t)
            .fold(BlochVector::ZERO, |acc, (e, c)| acc.add(&e.scale(*c)))
    }

    fn initial_normals(&self) -> Vec<Vec<f64>> {
        match self.dim() {
            0 => Vec::new(),
            1 => vec![vec![1.0], vec![-1.0]],
            _ => (0..INITIAL_CUTS)
                .map(|j| {
                    let th = 2.0 * std::f64::consts::PI * j as f64 / INITIAL_CUTS as f64;
                    vec![th.cos(), th.sin()]
                })
                .collect(),
        }
    }
}

/// With Alice's responses fixed, optimizes the weights and hidden states.
/// The ball constraint `|m_λ| ≤ p_λ` on `m_λ = p_λ r_λ` is imposed by
/// tangent cuts added where the relaxation violates it.
fn fit_hidden_states(
    target: &CorrelationBox,
    alice: &[Response],
    geo: &BobGeometry,
) -> Option<(Vec<f64>, Vec<BlochVector>)> {
    let d = alice.len();
    let k = geo.dim();
    let mut cuts: Vec<Vec<Vec<f64>>> = vec![geo.initial_normals(); d];
    let mut round = 0;
    loop {
        round += 1;
        let mut lp = LinearProgram::new();
        let p: Vec<Var> = (0..d).map(|_| lp.add_var(0.0)).collect();
        let m: Vec<Vec<Var>> = (0..d).map(|_| (0..k).map(|_| lp.add_free_var(0.0)).collect()).collect();
        lp.add_constraint(&p.iter().map(|&v| (v, 1.0)).collect::<Vec<_>>(), Relation::Eq, 1.0);
        for (x, y, a, b) in indices4() {
            let sign = if b == 0 { 1.0 } else { -1.0 };
            let mut row = Vec::with_capacity(d * (k + 1) + 2);
            for l in 0..d {
                row.push((p[l], alice[l][x][a] * geo.gamma[y][b]));
                for i in 0..k {
                    row.push((m[l][i], alice[l][x][a] * sign * geo.coef[y][i]));
                }
            }
            row.push((lp.add_var(1.0), 1.0));
            row.push((lp.add_var(1.0), -1.0));
            lp.add_constraint(&row, Relation::Eq, target.p[x][y][a][b]);
        }
        for l in 0..d {
            for n in &cuts[l] {
                let mut row: Vec<_> = (0..k).map(|i| (m[l][i], n[i])).collect();
                row.push((p[l], -1.0));
                lp.add_constraint(&row, Relation::Le, 0.0);
            }
        }
        let sol = lp.solve().ok()?;
        let pv: Vec<f64> = p.iter().map(|&v| sol.value(v).max(0.0)).collect();
        let mv: Vec<Vec<f64>> = m.iter().map(|ml| ml.iter().map(|&v| sol.value(v)).collect()).collect();
        let mut violated = false;
        for l in 0..d {
            let norm = mv[l].iter().map(|c| c * c).sum::<f64>().sqrt();
            if norm > pv[l] * (1.0 + CUT_TOL) + CUT_TOL {
                cuts[l].push(mv[l].iter().map(|c| c / norm).collect());
                violated = true;
            }
        }
        if !violated || round >= MAX_CUT_ROUNDS {
            return Some(finish(pv, mv, geo));
        }
    }
}

fn finish(mut p: Vec<f64>, m: Vec<Vec<f64>>, geo: &BobGeometry) -> (Vec<f64>, Vec<BlochVector>) {
    let states = p
        .iter()
        .zip(&m)
        .map(|(&pl, ml)| {
            if pl <= 0.0 {
                return BlochVector::ZERO;
            }
            let t: Vec<f64> = ml.iter().map(|c| c / pl).collect();
            let r = geo.embed(&t);
            if r.norm() > 1.0 {
                r.scale(1.0 / r.norm())
            } else {
                r
            }
        })
        .collect();
    normalize_weights(&mut p);
    (p, states)
}

fn lhs_restart(
    bx: &CorrelationBox,
    bob: &[BinaryPovm; 2],
    geo: &BobGeometry,
    dlambda: usize,
    cfg: &SearchConfig,
    restart: usize,
) -> Option<RestartOutcome> {
    let mut rng = cfg.restart_rng(restart);
    let mut alice: Vec<Response> = (0..dlambda)
        .map(|l| {
            if restart == 0 {
                deterministic_response(l % 4)
            } else if restart % 2 == 1 {
                deterministic_response(rng.random_range(0..4))
            } else {
                random_response(&mut rng)
            }
        })
        .collect();
    let mut conv = Convergence::new();
    let mut best: Option<(f64, LhsModel)> = None;
    loop {
        let (weights, states) = fit_hidden_states(bx, &alice, geo)?;
        let model = LhsModel { dlambda, weights, alice_resp: alice.clone(), hidden_states: states };
        let residual = model.to_box(bob).l1_distance(bx);
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, model.clone()));
        }
        if conv.record(residual, cfg) {
            break;
        }
        let bob_resp: Vec<Response> = model
            .hidden_states
            .iter()
            .map(|s| std::array::from_fn(|y| [bob[y].probability_from_bloch(0, s), bob[y].probability_from_bloch(1, s)]))
            .collect();
        alice = split_subnormalized(&fit_first_party(&bx.p, &bob_resp)?).1;
    }
    let (residual, model) = best?;
    Some(RestartOutcome { residual, model: Model::Lhs(model), sweeps: conv.sweeps })
}

/// Multistart search for a local-hidden-state model with `dlambda` hidden
/// states, reproducing the box under Bob's fixed measurements.
pub fn bounded_lhs_search(
    bx: &CorrelationBox,
    bob: &[BinaryPovm; 2],
    dlambda: usize,
    cfg: &SearchConfig,
) -> Result<ModelSearchReport> {
    check_box(bx)?;
    check_dlambda(dlambda)?;
    cfg.validate()?;
    for m in bob {
        m.validate()?;
    }
    let geo = BobGeometry::new(bob);
    let (best, restarts, iterations) = run_restarts(cfg, |r| lhs_restart(bx, bob, &geo, dlambda, cfg, r));
    let residual = best.as_ref().map_or(f64::INFINITY, |b| b.residual);
    Ok(ModelSearchReport {
        verdict: classify(residual, restarts),
        residual,
        model: best.map(|b| b.model),
        dlambda,
        restarts,
        iterations,
        seed: cfg.seed,
        heuristic: true,
    })
}
