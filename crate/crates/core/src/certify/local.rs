use super::model::{LocalModel, Model, Response};
use super::{check_box, ModelSearchReport, Verdict, FEASIBILITY_TOL};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::scenario::{indices4, CorrelationBox};

/// Deterministic response `s ∈ 0..4`: outputs `0`, `1`, `input`, `1 ⊕ input`.
pub fn deterministic_response(s: usize) -> Response {
    std::array::from_fn(|input| {
        let out = match s {
            0 => 0,
            1 => 1,
            2 => input,
            _ => 1 - input,
        };
        let mut row = [0.0; 2];
        row[out] = 1.0;
        row
    })
}

/// Exact membership test for the local polytope.
///
/// Minimizes the L¹ distance from the box to the convex hull of the sixteen
/// deterministic strategies. The verdict is `ModelFound` with an explicit
/// decomposition, or `Infeasible` with the minimal distance as residual.
pub fn local_membership(bx: &CorrelationBox) -> Result<ModelSearchReport> {
    check_box(bx)?;
    let mut lp = LinearProgram::new();
    let q: Vec<_> = (0..16).map(|_| lp.add_var(0.0)).collect();
    lp.add_constraint(&q.iter().map(|&v| (v, 1.0)).collect::<Vec<_>>(), Relation::Eq, 1.0);
    let det: Vec<Response> = (0..4).map(deterministic_response).collect();
    for (x, y, a, b) in indices4() {
        let up = lp.add_var(1.0);
        let down = lp.add_var(1.0);
        let mut row: Vec<_> = (0..16)
            .map(|k| (q[k], det[k / 4][x][a] * det[k % 4][y][b]))
            .collect();
        row.push((up, 1.0));
        row.push((down, -1.0));
        lp.add_constraint(&row, Relation::Eq, bx.p[x][y][a][b]);
    }
    let sol = lp
        .solve()
        .map_err(|e| Error::InvariantViolation(format!("local polytope LP failed: {e:?}")))?;
    let min_distance = sol.objective.max(0.0);
    if min_distance > FEASIBILITY_TOL {
        return Ok(ModelSearchReport {
            verdict: Verdict::Infeasible,
            residual: min_distance,
            model: None,
            dlambda: 16,
            restarts: 1,
            iterations: sol.pivots,
            seed: 0,
            heuristic: false,
        });
    }
    let mut weights: Vec<f64> = q.iter().map(|&v| sol.value(v).max(0.0)).collect();
    super::model::normalize_weights(&mut weights);
    let support: Vec<usize> = (0..16).filter(|&k| weights[k] > 0.0).collect();
    let model = LocalModel {
        dlambda: support.len(),
        weights: support.iter().map(|&k| weights[k]).collect(),
        alice_resp: support.iter().map(|&k| det[k / 4]).collect(),
        bob_resp: support.iter().map(|&k| det[k % 4]).collect(),
    };
    let residual = model.to_box().l1_distance(bx);
    Ok(ModelSearchReport {
        verdict: if residual <= FEASIBILITY_TOL { Verdict::ModelFound } else { Verdict::Infeasible },
        residual,
        dlambda: model.dlambda,
        model: Some(Model::Local(model)),
        restarts: 1,
        iterations: sol.pivots,
        seed: 0,
        heuristic: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::pr_box;

    #[test]
    fn deterministic_responses_are_distinct_vertices() {
        let all: Vec<Response> = (0..4).map(deterministic_response).collect();
        for i in 0..4 {
            for j in 0..i {
                assert_ne!(all[i], all[j]);
            }
        }
    }

    #[test]
    fn uniform_box_is_local() {
        let r = local_membership(&CorrelationBox::uniform()).unwrap();
        assert_eq!(r.verdict, Verdict::ModelFound);
        assert!(r.residual <= FEASIBILITY_TOL);
    }

    #[test]
    fn pr_box_is_infeasible() {
        let r = local_membership(&pr_box()).unwrap();
        assert_eq!(r.verdict, Verdict::Infeasible);
        // Mixing in half of the uniform box reaches CHSH = 2 at L¹ cost 2,
        // and CHSH changes by at most the L¹ distance.
        assert!((r.residual - 2.0).abs() < 1e-9, "{}", r.residual);
    }
}
