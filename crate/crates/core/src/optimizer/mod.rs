//! Stochastic packing: the energy ladder, shaking, guided seeds, shell
//! rotations and a final polish.

mod algorithms;
mod energy;
mod minimize;
mod params;
mod refine;
mod search;

pub use algorithms::{
    algorithm1, algorithm1_trial, algorithm2, algorithm2_trial, seed_guided, trial_rng, ShakeOutcome,
};
pub use energy::{energy, energy_gradient, log_energy, log_energy_and_gradient, PinSet};
pub use minimize::{minimize_in_place, run_ladder, MinimizeStats, RungReport};
pub use params::{LambdaRule, OptimizerParams};
pub use refine::{refine, refine_with, RefineReport};
pub use search::{shell_rotation_search, SearchReport};

use crate::builder::PackingConfiguration;
use crate::error::Result;

/// Minimizes the energy at fixed `(s, lambda)`; see [`minimize_in_place`].
pub fn minimize(
    config: &PackingConfiguration,
    s: f64,
    lambda: f64,
    pins: &PinSet,
    params: &OptimizerParams,
) -> Result<PackingConfiguration> {
    pins.check(config.n_disks())?;
    let mut out = config.clone();
    minimize_in_place(
        &mut out.centers,
        &config.spec,
        s,
        lambda,
        &pins.mask(config.n_disks()),
        params.inner_tol,
        params.max_inner_iters,
    )?;
    out.update_diameter();
    Ok(out)
}
