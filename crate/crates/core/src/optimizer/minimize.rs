//! Projected gradient descent on the log-energy and the `s` ladder around it.

use crate::error::{Error, Result};
use crate::geometry::{Point2, PolygonSpec};
use crate::neighbors::min_distance;
use crate::validation::density_of;

use super::energy::{log_energy_and_gradient, PinSet};
use super::params::OptimizerParams;

const ARMIJO_C: f64 = 1e-4;
const SHRINK: f64 = 0.5;
const MAX_BACKTRACKS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeStats {
    pub iterations: usize,
    pub f_start: f64,
    pub f_end: f64,
}

/// One rung of the ladder, as reported to observers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RungReport {
    pub rung: usize,
    pub s: f64,
    pub min_distance: f64,
    pub density: f64,
}

/// Minimizes `ln sum (lambda / r^2)^s` in place. Free disks are projected
/// back onto the inner polygon after every step; pinned ones never move.
pub fn minimize_in_place(
    centers: &mut [Point2],
    spec: &PolygonSpec,
    s: f64,
    lambda: f64,
    pinned: &[bool],
    tol: f64,
    max_iters: usize,
) -> Result<MinimizeStats> {
    let n = centers.len();
    let (mut f, mut g) = log_energy_and_gradient(centers, s, lambda, pinned)?;
    let f_start = f;
    if !f.is_finite() {
        if n < 2 {
            return Ok(MinimizeStats { iterations: 0, f_start, f_end: f });
        }
        return Err(Error::NonFinite);
    }
    let scale = min_distance(centers);
    let gmax = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if gmax == 0.0 {
        return Ok(MinimizeStats { iterations: 0, f_start, f_end: f });
    }
    let mut alpha = 1e-3 * scale / gmax;
    let mut trial = centers.to_vec();
    let mut iterations = 0;

    while iterations < max_iters {
        iterations += 1;
        let mut step = alpha;
        let mut accepted = None;
        for _ in 0..MAX_BACKTRACKS {
            let mut decrease = 0.0;
            let mut moved: f64 = 0.0;
            for i in 0..n {
                trial[i] = if pinned[i] { centers[i] } else { spec.project(centers[i] - g[i] * step) };
                let dx = trial[i] - centers[i];
                decrease += g[i].dot(dx);
                moved = moved.max(dx.norm());
            }
            if moved == 0.0 {
                break;
            }
            let (f_new, g_new) = match log_energy_and_gradient(&trial, s, lambda, pinned) {
                Ok(v) => v,
                Err(Error::CoincidentPoints(..)) => {
                    step *= SHRINK;
                    continue;
                }
                Err(e) => return Err(e),
            };
            if f_new.is_finite() && f_new <= f + ARMIJO_C * decrease {
                accepted = Some((f_new, g_new, moved, step));
                break;
            }
            step *= SHRINK;
        }
        let Some((f_new, g_new, moved, step)) = accepted else {
            break;
        };

        // Barzilai-Borwein step for the next iteration
        let mut ss = 0.0;
        let mut sy = 0.0;
        for i in 0..n {
            let dx = trial[i] - centers[i];
            ss += dx.norm2();
            sy += dx.dot(g_new[i] - g[i]);
        }
        alpha = if sy > 0.0 { ss / sy } else { 2.0 * step };
        if !alpha.is_finite() || alpha <= 0.0 {
            alpha = step;
        }

        let df = f - f_new;
        centers.copy_from_slice(&trial);
        f = f_new;
        g = g_new;
        if moved <= tol * scale && df <= tol * f.abs().max(1.0) {
            break;
        }
    }
    if !f.is_finite() || centers.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(MinimizeStats { iterations, f_start, f_end: f })
}

/// Runs every rung of the ladder with `lambda` reset to the squared minimum
/// distance at the start of each rung.
pub fn run_ladder(
    centers: &mut [Point2],
    spec: &PolygonSpec,
    pins: &PinSet,
    params: &OptimizerParams,
    observer: &mut dyn FnMut(&RungReport),
) -> Result<()> {
    let pinned = pins.mask(centers.len());
    let n = centers.len();
    for (rung, s) in params.ladder().into_iter().enumerate() {
        if n >= 2 {
            let r = min_distance(centers);
            if r == 0.0 {
                // reports the offending pair
                super::energy::log_energy(centers, 1.0, 1.0)?;
            }
            minimize_in_place(
                centers,
                spec,
                s,
                r * r,
                &pinned,
                params.inner_tol,
                params.max_inner_iters,
            )?;
        }
        let r = min_distance(centers);
        observer(&RungReport { rung, s, min_distance: r, density: density_of(spec.sides, n, r) });
    }
    Ok(())
}
