use chp_pack::builder::{build_from_border, Mode};
use chp_pack::chp::{min_dna, solve_border};
use chp_pack::optimizer::{
    algorithm1, algorithm1_trial, minimize, refine, shell_rotation_search, OptimizerParams, PinSet,
};
use chp_pack::validation::{is_chp_with, CERTIFY_TOL};
use chp_pack::{Error, Sides};

#[test]
fn two_disks_sit_on_opposite_vertices() {
    let c = algorithm1(Sides::Regular(12), 2, &OptimizerParams::default()).unwrap();
    assert!((c.diameter - 2.0).abs() < 1e-6, "{}", c.diameter);
}

#[test]
fn seven_disks_in_a_hexagon_recover_the_chp() {
    let b = solve_border(Sides::Regular(6), 1).unwrap();
    let params = OptimizerParams { seed: 1, ..OptimizerParams::default() };
    let c = algorithm1(Sides::Regular(6), 7, &params).unwrap();
    let r = refine(&c, 2000).unwrap();
    assert!((r.config.diameter - b.d).abs() < 1e-9, "{} vs {}", r.config.diameter, b.d);
    assert_eq!(c.provenance.mode, Mode::Algorithm1);
    assert_eq!(c.provenance.seed, Some(1));
}

#[test]
fn trials_are_reproducible_and_distinct() {
    let params = OptimizerParams { seed: 9, s_final: 1e4, ..OptimizerParams::default() };
    let a = algorithm1_trial(Sides::Circle, 5, &params, 3, &mut |_| {}).unwrap();
    let b = algorithm1_trial(Sides::Circle, 5, &params, 3, &mut |_| {}).unwrap();
    let c = algorithm1_trial(Sides::Circle, 5, &params, 4, &mut |_| {}).unwrap();
    assert_eq!(a.centers, b.centers);
    assert_ne!(a.centers, c.centers);
}

#[test]
fn ladder_observer_sees_every_rung() {
    let params = OptimizerParams { s_final: 1e3, ..OptimizerParams::default() };
    let mut rungs = Vec::new();
    algorithm1_trial(Sides::Regular(18), 6, &params, 0, &mut |r| rungs.push(*r)).unwrap();
    assert_eq!(rungs.len(), params.ladder().len());
    assert!(rungs.windows(2).all(|w| w[1].s > w[0].s));
    assert_eq!(rungs.last().unwrap().s, 1e3);
}

#[test]
fn fully_pinned_minimize_is_a_no_op() {
    let b = solve_border(Sides::Regular(18), 2).unwrap();
    let c = build_from_border(&b, &min_dna(&b)).unwrap();
    let out = minimize(&c, 50.0, b.d * b.d, &PinSet::all(c.n_disks()), &OptimizerParams::default()).unwrap();
    assert_eq!(out.centers, c.centers);
}

#[test]
fn bad_inputs_are_rejected() {
    let params = OptimizerParams::default();
    assert!(matches!(algorithm1(Sides::Regular(12), 1, &params), Err(Error::PreconditionViolated(_))));
    let bad = OptimizerParams { s_factor: 1.0, ..OptimizerParams::default() };
    assert!(matches!(algorithm1(Sides::Regular(12), 5, &bad), Err(Error::PreconditionViolated(_))));
    let b = solve_border(Sides::Regular(12), 1).unwrap();
    let c = build_from_border(&b, &min_dna(&b)).unwrap();
    let pins = PinSet::new([40]);
    assert!(minimize(&c, 10.0, 0.1, &pins, &params).is_err());
}

#[test]
fn shell_rotations_find_other_dodecagon_chps() {
    let sigma = Sides::Regular(12);
    let b = solve_border(sigma, 3).unwrap();
    let start = build_from_border(&b, &min_dna(&b)).unwrap();
    let params = OptimizerParams { seed: 4, ..OptimizerParams::default() };
    let trials = 6;
    let report = shell_rotation_search(&start, sigma, 3, trials, &params).unwrap();
    assert_eq!(report.dnas.len(), report.configurations.len());
    assert_eq!(report.dnas.len() - 1 + report.failed_trials + report.duplicate_trials, trials);
    assert!(report.dnas.len() >= 2, "{:?}", report.dnas.iter().map(|d| &d.letters).collect::<Vec<_>>());
    for c in &report.configurations {
        assert!(is_chp_with(c, &b, CERTIFY_TOL));
    }
}
