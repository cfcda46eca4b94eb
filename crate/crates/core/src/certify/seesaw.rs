use rand::Rng;

use super::model::{split_subnormalized, LocalModel, Model, Response};
use super::{
    check_box, check_dlambda, classify, random_response, run_restarts, Convergence, ModelSearchReport,
    RestartOutcome, SearchConfig,
};
use crate::error::Result;
use crate::lp::{LinearProgram, Relation};
use crate::scenario::{indices4, CorrelationBox, Table4};

use super::local::deterministic_response;

/// Swaps the roles of the two parties.
pub(crate) fn transpose(p: &Table4) -> Table4 {
    let mut t = Table4::default();
    for (x, y, a, b) in indices4() {
        t[y][x][b][a] = p[x][y][a][b];
    }
    t
}

/// With the second party's responses fixed, finds subnormalized first-party
/// rows `u[λ][x][a] = p_λ p(a|x,λ)` minimizing the L¹ distance to `target`.
pub(crate) fn fit_first_party(target: &Table4, other: &[Response]) -> Option<Vec<[[f64; 2]; 2]>> {
    let d = other.len();
    let mut lp = LinearProgram::new();
    let u: Vec<[[_; 2]; 2]> = (0..d)
        .map(|_| std::array::from_fn(|_| std::array::from_fn(|_| lp.add_var(0.0))))
        .collect();
    for ul in &u {
        lp.add_constraint(
            &[(ul[0][0], 1.0), (ul[0][1], 1.0), (ul[1][0], -1.0), (ul[1][1], -1.0)],
            Relation::Eq,
            0.0,
        );
    }
    let total: Vec<_> = u.iter().flat_map(|ul| [(ul[0][0], 1.0), (ul[0][1], 1.0)]).collect();
    lp.add_constraint(&total, Relation::Eq, 1.0);
    for (x, y, a, b) in indices4() {
        let mut row: Vec<_> = (0..d).map(|l| (u[l][x][a], other[l][y][b])).collect();
        row.push((lp.add_var(1.0), 1.0));
        row.push((lp.add_var(1.0), -1.0));
        lp.add_constraint(&row, Relation::Eq, target[x][y][a][b]);
    }
    let sol = lp.solve().ok()?;
    Some(u.iter().map(|ul| ul.map(|r| r.map(|v| sol.value(v)))).collect())
}

fn lhv_restart(bx: &CorrelationBox, dlambda: usize, cfg: &SearchConfig, restart: usize) -> Option<RestartOutcome> {
    let mut rng = cfg.restart_rng(restart);
    let mut bob: Vec<Response> = (0..dlambda)
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
    let target_t = transpose(&bx.p);
    let mut conv = Convergence::new();
    let mut best: Option<(f64, LocalModel)> = None;
    loop {
        let (_, alice) = split_subnormalized(&fit_first_party(&bx.p, &bob)?);
        let (weights, new_bob) = split_subnormalized(&fit_first_party(&target_t, &alice)?);
        bob = new_bob;
        let model = LocalModel { dlambda, weights, alice_resp: alice, bob_resp: bob.clone() };
        let residual = model.to_box().l1_distance(bx);
        if best.as_ref().is_none_or(|(r, _)| residual < *r) {
            best = Some((residual, model));
        }
        if conv.record(residual, cfg) {
            break;
        }
    }
    let (residual, model) = best?;
    Some(RestartOutcome { residual, model: Model::Local(model), sweeps: conv.sweeps })
}

/// Multistart see-saw search for a local model with `dlambda` hidden values.
///
/// Each sweep alternates two exact linear programs: Alice's responses and
/// the weights with Bob's responses fixed, then the reverse.
pub fn bounded_lhv_search(bx: &CorrelationBox, dlambda: usize, cfg: &SearchConfig) -> Result<ModelSearchReport> {
    check_box(bx)?;
    check_dlambda(dlambda)?;
    cfg.validate()?;
    let (best, restarts, iterations) = run_restarts(cfg, |r| lhv_restart(bx, dlambda, cfg, r));
    let residual = best.as_ref().map_or(f64::INFINITY, |b| b.residual);
    let verdict = classify(residual, restarts);
    Ok(ModelSearchReport {
        verdict,
        residual,
        model: best.map(|b| b.model),
        dlambda,
        restarts,
        iterations,
        seed: cfg.seed,
        heuristic: true,
    })
}
