//! High-precision polish of an optimized packing.
//!
//! Two stages, each kept only if it does not shrink the minimum distance:
//! the last ladder rung repeated with a tighter tolerance, then a contact
//! solve. The contact solve takes the pairs that are (nearly) touching and the
//! disks that (nearly) touch a wall, and solves `r_ij = R` and `n . p = a`
//! for the free coordinates and the common separation `R` with damped
//! Gauss-Newton steps.

use nalgebra::{DMatrix, DVector};

use crate::builder::PackingConfiguration;
use crate::error::Result;
use crate::geometry::{Point2, PolygonSpec};
use crate::neighbors::{close_pairs, min_distance};

use super::energy::PinSet;
use super::minimize::minimize_in_place;
use super::params::OptimizerParams;

#[derive(Debug, Clone)]
pub struct RefineReport {
    pub config: PackingConfiguration,
    /// `|d_out - d_in| / d_in`.
    pub stability: f64,
    pub contact_solve_applied: bool,
}

const FINAL_TOL: f64 = 1e-15;
const ACTIVE_THRESHOLDS: [f64; 4] = [1e-9, 1e-7, 1e-5, 1e-3];
const MAX_UNKNOWNS: usize = 1201;

pub fn refine(config: &PackingConfiguration, max_iters: usize) -> Result<RefineReport> {
    refine_with(config, &PinSet::none(), max_iters, &OptimizerParams::default())
}

pub fn refine_with(
    config: &PackingConfiguration,
    pins: &PinSet,
    max_iters: usize,
    params: &OptimizerParams,
) -> Result<RefineReport> {
    pins.check(config.n_disks())?;
    let d_in = min_distance(&config.centers);
    let mut out = config.clone();
    if config.n_disks() < 2 || !d_in.is_finite() || d_in <= 0.0 {
        return Ok(RefineReport { config: out, stability: 0.0, contact_solve_applied: false });
    }
    let pinned = pins.mask(config.n_disks());

    let mut centers = config.centers.clone();
    minimize_in_place(
        &mut centers,
        &config.spec,
        params.s_final,
        d_in * d_in,
        &pinned,
        FINAL_TOL,
        max_iters.max(1),
    )?;
    let mut best = d_in;
    let mut best_centers = config.centers.clone();
    let d_rung = min_distance(&centers);
    if d_rung >= best {
        best = d_rung;
        best_centers = centers;
    }

    let mut applied = false;
    for thr in ACTIVE_THRESHOLDS {
        if let Some(c) = contact_solve(&best_centers, &config.spec, &pinned, thr) {
            let r = min_distance(&c);
            if r > best {
                best = r;
                best_centers = c;
                applied = true;
            }
        }
    }

    out.centers = best_centers;
    out.diameter = best;
    Ok(RefineReport { config: out, stability: (best - d_in).abs() / d_in, contact_solve_applied: applied })
}

enum Row {
    Pair(usize, usize),
    Wall(usize, Point2),
}

/// Solves the near-active contact system; `None` if it did not converge to a
/// feasible packing.
fn contact_solve(
    centers: &[Point2],
    spec: &PolygonSpec,
    pinned: &[bool],
    thr: f64,
) -> Option<Vec<Point2>> {
    let n = centers.len();
    let r0 = min_distance(centers);
    let mut var = vec![usize::MAX; n];
    let mut nvar = 0;
    for i in 0..n {
        if !pinned[i] {
            var[i] = nvar;
            nvar += 2;
        }
    }
    let r_col = nvar;
    let unknowns = nvar + 1;
    if nvar == 0 || unknowns > MAX_UNKNOWNS {
        return None;
    }

    let mut rows = Vec::new();
    close_pairs(centers, r0 * (1.0 + thr), |i, j, _| rows.push(Row::Pair(i, j)));
    for i in 0..n {
        if !pinned[i] {
            for nrm in spec.near_edges(centers[i], thr * r0) {
                rows.push(Row::Wall(i, nrm));
            }
        }
    }
    if rows.is_empty() {
        return None;
    }
    let apothem = spec.apothem();
    let circle = spec.sides.sigma().is_none();

    let residuals = |x: &[Point2], r: f64| -> DVector<f64> {
        DVector::from_iterator(
            rows.len(),
            rows.iter().map(|row| match *row {
                Row::Pair(i, j) => x[i].dist(x[j]) - r,
                Row::Wall(i, nrm) => {
                    if circle {
                        x[i].norm() - apothem
                    } else {
                        nrm.dot(x[i]) - apothem
                    }
                }
            }),
        )
    };

    let mut x = centers.to_vec();
    let mut r = r0;
    let mut res = residuals(&x, r);
    let mut mu = 1e-6;
    for _ in 0..100 {
        if res.amax() < 1e-15 * r0 {
            break;
        }
        let mut jac = DMatrix::<f64>::zeros(rows.len(), unknowns);
        for (k, row) in rows.iter().enumerate() {
            match *row {
                Row::Pair(i, j) => {
                    let v = x[i] - x[j];
                    let u = v * (1.0 / v.norm());
                    if var[i] != usize::MAX {
                        jac[(k, var[i])] = u.x;
                        jac[(k, var[i] + 1)] = u.y;
                    }
                    if var[j] != usize::MAX {
                        jac[(k, var[j])] = -u.x;
                        jac[(k, var[j] + 1)] = -u.y;
                    }
                    jac[(k, r_col)] = -1.0;
                }
                Row::Wall(i, nrm) => {
                    let g = if circle { x[i] * (1.0 / x[i].norm()) } else { nrm };
                    jac[(k, var[i])] = g.x;
                    jac[(k, var[i] + 1)] = g.y;
                }
            }
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let rhs = -(&jt * &res);
        let mut improved = false;
        for _ in 0..20 {
            let mut a = jtj.clone();
            for d in 0..unknowns {
                a[(d, d)] += mu * (1.0 + jtj[(d, d)]);
            }
            let Some(chol) = a.cholesky() else {
                mu *= 10.0;
                continue;
            };
            let step = chol.solve(&rhs);
            let mut xt = x.clone();
            for i in 0..n {
                if var[i] != usize::MAX {
                    xt[i] = Point2::new(x[i].x + step[var[i]], x[i].y + step[var[i] + 1]);
                }
            }
            let rt = r + step[r_col];
            let res_t = residuals(&xt, rt);
            if res_t.norm() < res.norm() {
                x = xt;
                r = rt;
                res = res_t;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }

    for i in 0..n {
        if !pinned[i] {
            x[i] = spec.project(x[i]);
        }
    }
    let feasible = x.iter().all(|p| p.is_finite() && spec.excess(*p) <= 1e-14);
    (feasible && res.amax() < 1e-12 * r0).then_some(x)
}
