use qcorr_core::certify::{
    bounded_lhs_search, bounded_lhv_search, local_membership, superlocality_verdict, superunsteerability_verdict,
    Model, SearchConfig, SuperlocalityVerdict, SuperunsteerabilityVerdict, Verdict, FEASIBILITY_TOL,
};
use qcorr_core::families::{bell_diagonal_rac_strategy, pr_box, white_noise_bb84_box, wn_bb84_bob};
use qcorr_core::sampling::random_nonsignaling_box;
use qcorr_core::scenario::CorrelationBox;
use qcorr_core::witnesses::chsh_value;
use qcorr_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quick(restarts: usize) -> SearchConfig {
    SearchConfig { restarts, ..SearchConfig::default() }
}

#[test]
fn local_models_reproduce_their_boxes() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for _ in 0..500 {
        let bx = random_nonsignaling_box(&mut rng);
        let r = local_membership(&bx).unwrap();
        match (r.verdict, r.model) {
            (Verdict::ModelFound, Some(Model::Local(m))) => {
                m.validate().unwrap();
                assert!(m.to_box().l1_distance(&bx) <= FEASIBILITY_TOL);
                checked += 1;
            }
            (Verdict::Infeasible, None) => {
                assert!(chsh_value(&bx).value > 2.0);
                // No box is farther than the PR box from the local polytope.
                assert!(r.residual > 0.0 && r.residual <= 2.0 + 1e-9);
                assert!(!r.heuristic);
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }
    assert!(checked > 100);
}

#[test]
fn product_box_needs_one_hidden_value() {
    let bx = CorrelationBox::product([[0.2, 0.8], [0.6, 0.4]], [[0.9, 0.1], [0.3, 0.7]]).unwrap();
    let r = bounded_lhv_search(&bx, 1, &quick(4)).unwrap();
    assert_eq!(r.verdict, Verdict::ModelFound);
    assert!(r.residual <= FEASIBILITY_TOL);
}

#[test]
fn lhs_model_reproduces_white_noise_box() {
    let bob = wn_bb84_bob();
    let bx = white_noise_bb84_box(0.5).unwrap();
    let r = bounded_lhs_search(&bx, &bob, 4, &quick(8)).unwrap();
    assert_eq!(r.verdict, Verdict::ModelFound);
    let Some(Model::Lhs(m)) = r.model else { panic!("expected an LHS model") };
    m.validate().unwrap();
    assert!(m.to_box(&bob).l1_distance(&bx) <= FEASIBILITY_TOL);
    assert_eq!(m.padded(2).to_box(&bob), m.to_box(&bob));
}

#[test]
fn few_restarts_cannot_claim_no_model() {
    let bx = white_noise_bb84_box(0.5).unwrap();
    let r = bounded_lhs_search(&bx, &wn_bb84_bob(), 2, &quick(8)).unwrap();
    assert_eq!(r.verdict, Verdict::Inconclusive);
    assert!(r.heuristic);
    assert!(r.residual > 1e-6);
}

#[test]
fn pr_box_is_not_a_superlocality_candidate() {
    let rep = superlocality_verdict(&pr_box(), 2, &quick(8)).unwrap();
    assert_eq!(rep.verdict, SuperlocalityVerdict::NotApplicableNonlocal);
    assert!(!rep.heuristic);
    assert!(rep.bounded.is_none());
}

#[test]
fn bell_diagonal_box_is_superlocal() {
    let bx = bell_diagonal_rac_strategy().correlation_box().unwrap();
    let rep = superlocality_verdict(&bx, 2, &SearchConfig::default()).unwrap();
    assert_eq!(rep.local.verdict, Verdict::ModelFound);
    assert_eq!(rep.verdict, SuperlocalityVerdict::Superlocal);
    assert!(rep.heuristic);
}

#[test]
fn white_noise_box_steerable_above_threshold() {
    let bx = white_noise_bb84_box(0.9).unwrap();
    let rep = superunsteerability_verdict(&bx, &wn_bb84_bob(), 2, &SearchConfig::default()).unwrap();
    assert_eq!(rep.verdict, SuperunsteerabilityVerdict::Steerable);
    assert_eq!(rep.unbounded.unwrap().verdict, Verdict::NoModelFound);
}

#[test]
fn results_do_not_depend_on_parallelism() {
    let bx = white_noise_bb84_box(0.6).unwrap();
    let bob = wn_bb84_bob();
    let par = SearchConfig::with_seed(3);
    let seq = SearchConfig { parallel: false, ..par.clone() };
    assert_eq!(bounded_lhs_search(&bx, &bob, 2, &par).unwrap(), bounded_lhs_search(&bx, &bob, 2, &seq).unwrap());
    assert_eq!(bounded_lhv_search(&bx, 3, &par).unwrap(), bounded_lhv_search(&bx, 3, &seq).unwrap());
}

#[test]
fn seeds_change_the_search_but_not_the_verdict() {
    let bx = white_noise_bb84_box(0.4).unwrap();
    let bob = wn_bb84_bob();
    for seed in [0, 1, 99] {
        let r = bounded_lhs_search(&bx, &bob, 4, &SearchConfig::with_seed(seed)).unwrap();
        assert_eq!(r.verdict, Verdict::ModelFound);
        assert_eq!(r.seed, seed);
    }
}

#[test]
fn invalid_configurations_are_rejected() {
    let bx = white_noise_bb84_box(0.4).unwrap();
    for d in [0, 5] {
        assert!(matches!(bounded_lhv_search(&bx, d, &quick(1)), Err(Error::ConfigError(_))));
    }
    assert!(matches!(bounded_lhv_search(&bx, 2, &quick(0)), Err(Error::ConfigError(_))));
}
