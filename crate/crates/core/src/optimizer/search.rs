//! Discovering further CHP configurations by rotating whole shells and
//! letting the shake relax the packing.

use std::f64::consts::PI;

use rand::Rng;

use crate::builder::{build_from_border, extract_with_border, shell_range, PackingConfiguration};
use crate::chp::{solve_border, Dna};
use crate::error::Result;
use crate::geometry::{rotate, Sides};
use crate::validation::{is_chp_with, SEARCH_TOL};

use super::algorithms::{algorithm2_trial, trial_rng};
use super::energy::PinSet;
use super::params::OptimizerParams;
use super::refine::refine_with;

#[derive(Debug, Clone)]
pub struct SearchReport {
    /// Exact rebuilds of every distinct CHP found, the input's own first.
    pub configurations: Vec<PackingConfiguration>,
    pub dnas: Vec<Dna>,
    /// Trials whose result was not a CHP or whose DNA could not be read.
    pub failed_trials: usize,
    /// Trials that only reproduced an already known DNA.
    pub duplicate_trials: usize,
}

/// Runs `trials` shell rotations starting from the CHP `config`.
pub fn shell_rotation_search(
    config: &PackingConfiguration,
    sigma: Sides,
    k: usize,
    trials: usize,
    params: &OptimizerParams,
) -> Result<SearchReport> {
    params.validate()?;
    let border = solve_border(sigma, k)?;
    let mut report =
        SearchReport { configurations: Vec::new(), dnas: Vec::new(), failed_trials: 0, duplicate_trials: 0 };
    let start = extract_with_border(config, &border)?;
    let mut base = build_from_border(&border, &start)?;
    base.provenance = config.provenance.clone();
    report.dnas.push(start);
    report.configurations.push(base);
    if k < 2 {
        return Ok(report);
    }

    let mut rng = trial_rng(params.seed, u64::MAX);
    for t in 0..trials {
        let from = &report.configurations[rng.random_range(0..report.configurations.len())];
        // every kept configuration is an exact rebuild, so indices give shells
        let shell_of: Vec<usize> =
            (0..=k).flat_map(|m| std::iter::repeat_n(m, shell_range(m).len())).collect();
        let m = rng.random_range(1..k);
        let angle = rng.random_range(PI / 18.0..=PI / 6.0);
        let mut centers = from.centers.clone();
        for (p, &s) in centers.iter_mut().zip(&shell_of) {
            if s == m {
                *p = rotate(*p, angle);
            }
        }
        // border and center stay exactly where they are
        let pins = PinSet::new(
            (0..centers.len()).filter(|&i| shell_of[i] == 0 || shell_of[i] == k),
        );
        let mut rotated = from.clone();
        rotated.centers = centers;
        rotated.update_diameter();

        let outcome = algorithm2_trial(&rotated, params, &pins, t as u64, &mut |_| {})?;
        let polished = refine_with(&outcome.config, &pins, 2000, params)?.config;
        if !is_chp_with(&polished, &border, SEARCH_TOL) {
            report.failed_trials += 1;
            continue;
        }
        let dna = match extract_with_border(&polished, &border) {
            Ok(d) => d,
            Err(_) => {
                report.failed_trials += 1;
                continue;
            }
        };
        if report.dnas.iter().any(|d| d.letters == dna.letters) {
            report.duplicate_trials += 1;
            continue;
        }
        let mut exact = build_from_border(&border, &dna)?;
        exact.provenance = polished.provenance.clone();
        report.dnas.push(dna);
        report.configurations.push(exact);
    }
    Ok(report)
}
