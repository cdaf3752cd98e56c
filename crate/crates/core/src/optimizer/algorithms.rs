//! Random-start ladder runs, shake-and-compact trials and guided seeds.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::builder::{Mode, PackingConfiguration, Provenance};
use crate::chp::solve_border;
use crate::error::Result;
use crate::geometry::{fundamental_vertex, interior_point, rotate, Point2, PolygonSpec, Sides};
use crate::neighbors::min_distance;

use super::energy::PinSet;
use super::minimize::{run_ladder, RungReport};
use super::params::OptimizerParams;

/// Generator for trial `stream` of `seed`; distinct streams never overlap.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point of the `(t, u)` chart of the inner polygon.
fn random_interior(rng: &mut ChaCha8Rng, sides: Sides) -> Point2 {
    let t = rng.random_range(0.0..FRAC_PI_2);
    let u = rng.random_range(0.0..TAU);
    match sides {
        Sides::Regular(s) => interior_point(t, u, s),
        Sides::Circle => Point2::polar(t.sin().powi(2), u),
    }
}

/// A random start followed by the full ladder.
pub fn algorithm1(sides: Sides, n: usize, params: &OptimizerParams) -> Result<PackingConfiguration> {
    algorithm1_trial(sides, n, params, 0, &mut |_| {})
}

pub fn algorithm1_trial(
    sides: Sides,
    n: usize,
    params: &OptimizerParams,
    trial: u64,
    observer: &mut dyn FnMut(&RungReport),
) -> Result<PackingConfiguration> {
    params.validate()?;
    if n < 2 {
        return Err(crate::Error::PreconditionViolated("need at least two disks".into()));
    }
    let mut rng = trial_rng(params.seed, trial);
    let mut centers: Vec<Point2> = (0..n).map(|_| random_interior(&mut rng, sides)).collect();
    let spec = PolygonSpec::inner(sides);
    run_ladder(&mut centers, &spec, &PinSet::none(), params, observer)?;
    let provenance =
        Provenance { mode: Mode::Algorithm1, seed: Some(params.seed), params: Some(params.clone()) };
    Ok(PackingConfiguration::new(sides, centers, provenance))
}

#[derive(Debug, Clone)]
pub struct ShakeOutcome {
    /// The accepted configuration, or the incoming one.
    pub config: PackingConfiguration,
    pub accepted: bool,
    pub incoming_min_distance: f64,
    pub trial_min_distance: f64,
}

/// One shake: perturb the free disks, rerun the ladder, keep the result only
/// if the minimum distance grew.
pub fn algorithm2(
    config: &PackingConfiguration,
    params: &OptimizerParams,
    pins: &PinSet,
) -> Result<PackingConfiguration> {
    Ok(algorithm2_trial(config, params, pins, 0, &mut |_| {})?.config)
}

pub fn algorithm2_trial(
    config: &PackingConfiguration,
    params: &OptimizerParams,
    pins: &PinSet,
    trial: u64,
    observer: &mut dyn FnMut(&RungReport),
) -> Result<ShakeOutcome> {
    params.validate()?;
    pins.check(config.n_disks())?;
    let incoming = min_distance(&config.centers);
    let mut rng = trial_rng(params.seed, trial);
    let mut centers = config.centers.clone();
    let amp = params.perturb_amplitude * incoming;
    let pinned = pins.mask(centers.len());
    for (p, &pin) in centers.iter_mut().zip(&pinned) {
        let r = amp * rng.random::<f64>().sqrt();
        let a = rng.random_range(0.0..TAU);
        if !pin {
            *p = config.spec.project(*p + Point2::polar(r, a));
        }
    }
    run_ladder(&mut centers, &config.spec, pins, params, observer)?;
    let trial_min = min_distance(&centers);
    if trial_min > incoming {
        let provenance =
            Provenance { mode: Mode::Algorithm2, seed: Some(params.seed), params: Some(params.clone()) };
        let mut out = PackingConfiguration::new(config.sides(), centers, provenance);
        out.k = config.k;
        Ok(ShakeOutcome {
            config: out,
            accepted: true,
            incoming_min_distance: incoming,
            trial_min_distance: trial_min,
        })
    } else {
        Ok(ShakeOutcome {
            config: config.clone(),
            accepted: false,
            incoming_min_distance: incoming,
            trial_min_distance: trial_min,
        })
    }
}

/// Exact border and center of the CHP with `k` shells (pinned), plus a
/// hexagonal patch of `3k(k-1)` interior disks rotated by `theta` with
/// spacing `scale * d`, shrunk until it keeps half a diameter off the border.
pub fn seed_guided(
    sides: Sides,
    k: usize,
    theta: f64,
    scale: f64,
) -> Result<(PackingConfiguration, PinSet)> {
    let border = solve_border(sides, k)?;
    let d = border.d;
    let spec = PolygonSpec::inner(sides);
    let mut centers = vec![Point2::ORIGIN];
    centers.extend(border.border_centers());
    let pins = PinSet::new(0..centers.len());

    let mut lattice = Vec::new();
    let kk = k as i64 - 1;
    for q in -kk..=kk {
        for r in -kk..=kk {
            let ring = q.abs().max(r.abs()).max((q + r).abs());
            if ring >= 1 && ring <= kk {
                let p = Point2::new(q as f64 + 0.5 * r as f64, r as f64 * 3f64.sqrt() / 2.0);
                lattice.push(rotate(p, theta));
            }
        }
    }
    let mut a = scale * d;
    for _ in 0..200 {
        if lattice.iter().all(|p| spec.excess(*p * a) < -0.5 * d) {
            break;
        }
        a *= 0.95;
    }
    centers.extend(lattice.iter().map(|p| *p * a));

    let mut config = PackingConfiguration::new(
        sides,
        centers,
        Provenance { mode: Mode::Algorithm2, seed: None, params: None },
    );
    config.k = Some(k);
    debug_assert!(config.centers[1].dist(fundamental_vertex(sides)) < 1e-12);
    Ok((config, pins))
}
