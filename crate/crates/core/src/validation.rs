//! Certification of packings: separation, containment, density, symmetry,
//! CHP structure and equivalence under the container's symmetry group.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_3, PI, TAU};

use serde::Serialize;

use crate::builder::PackingConfiguration;
use crate::chp::{hex_number, solve_border, BorderSolution};
use crate::error::{Error, Result};
use crate::geometry::{fundamental_angle, reflect_across, rotate, Point2, PolygonSpec, Sides};
use crate::neighbors::{close_pairs, min_distance, CellGrid};

/// Relative tolerance for certified results.
pub const CERTIFY_TOL: f64 = 1e-9;
/// Relative tolerance used while filtering stochastic search output.
pub const SEARCH_TOL: f64 = 1e-6;
/// Relative slack under which two disks count as touching.
pub const CONTACT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub min_distance: f64,
    pub worst_containment_violation: f64,
    pub density: f64,
    pub is_valid: bool,
    pub symmetry_residual: f64,
    pub contact_count_histogram: BTreeMap<usize, usize>,
}

/// Smallest center separation.
pub fn packing_radius(config: &PackingConfiguration) -> f64 {
    min_distance(&config.centers)
}

/// Packing fraction using the stored `diameter`.
pub fn density(config: &PackingConfiguration) -> f64 {
    density_of(config.sides(), config.n_disks(), config.diameter)
}

/// `N` disks of diameter `diameter` in the container offset by its radius.
pub fn density_of(sides: Sides, n: usize, diameter: f64) -> f64 {
    let r = 0.5 * diameter;
    n as f64 * PI * r * r / PolygonSpec::new(sides, r).area()
}

/// Largest distance from a rotated center to its nearest original center,
/// over rotations by `pi/3`. Infinite when some image has no center within
/// one diameter.
pub fn symmetry_residual(config: &PackingConfiguration) -> f64 {
    let pts = &config.centers;
    if pts.is_empty() {
        return 0.0;
    }
    let cell = match config.diameter {
        d if d.is_finite() && d > 0.0 => d,
        _ => return if pts.len() == 1 { pts[0].norm() } else { f64::INFINITY },
    };
    let grid = CellGrid::new(pts, cell);
    let mut worst: f64 = 0.0;
    for p in pts {
        let q = rotate(*p, FRAC_PI_3);
        let best = grid.around(q).map(|j| pts[j].dist(q)).fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
    }
    worst
}

/// Number of contacts of every disk (pairs within `CONTACT_TOL` of `diameter`).
pub fn contact_counts(config: &PackingConfiguration) -> Vec<usize> {
    let d = config.diameter;
    let mut counts = vec![0; config.n_disks()];
    close_pairs(&config.centers, d * (1.0 + CONTACT_TOL), |i, j, _| {
        counts[i] += 1;
        counts[j] += 1;
    });
    counts
}

/// Pairs of disks in contact, `i < j`.
pub fn contact_pairs(config: &PackingConfiguration) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    close_pairs(&config.centers, config.diameter * (1.0 + CONTACT_TOL), |i, j, _| {
        out.push((i, j))
    });
    out.sort_unstable();
    out
}

pub fn validate(config: &PackingConfiguration, tol: f64) -> ValidationReport {
    let min_d = packing_radius(config);
    let worst = config
        .centers
        .iter()
        .map(|p| config.spec.excess(*p).max(0.0))
        .fold(0.0, f64::max);
    let mut hist = BTreeMap::new();
    for c in contact_counts(config) {
        *hist.entry(c).or_insert(0) += 1;
    }
    let separated = config.n_disks() < 2 || min_d >= config.diameter * (1.0 - tol);
    ValidationReport {
        min_distance: min_d,
        worst_containment_violation: worst,
        density: density(config),
        is_valid: separated && worst <= tol,
        symmetry_residual: symmetry_residual(config),
        contact_count_histogram: hist,
    }
}

/// Checks the CHP structure of `config` for `(sigma, k)`.
pub fn is_chp(config: &PackingConfiguration, sigma: Sides, k: usize, tol: f64) -> Result<bool> {
    let expected = hex_number(k);
    if config.n_disks() != expected {
        return Err(Error::ShellCountMismatch { k, expected, actual: config.n_disks() });
    }
    let border = solve_border(sigma, k)?;
    Ok(is_chp_with(config, &border, tol))
}

pub fn is_chp_with(config: &PackingConfiguration, border: &BorderSolution, tol: f64) -> bool {
    if config.n_disks() != border.n_disks() || config.sides() != border.sigma {
        return false;
    }
    let d = border.d;
    let abs = tol * d;
    let pts = &config.centers;

    let r = packing_radius(config);
    if (r - d).abs() > abs {
        return false;
    }
    if !pts.iter().any(|p| p.norm() <= abs) {
        return false;
    }
    let mut probe = config.clone();
    probe.diameter = d;
    if symmetry_residual(&probe) > abs {
        return false;
    }
    let spec = PolygonSpec::inner(border.sigma);
    let on_boundary = pts.iter().filter(|p| spec.excess(**p) >= -abs).count();
    if on_boundary != 6 * border.k {
        return false;
    }
    let grid = CellGrid::new(pts, d);
    border.border_centers().iter().all(|b| grid.around(*b).any(|j| pts[j].dist(*b) <= abs))
}

/// Whether some symmetry of the container maps `a` onto `b` within `tol`
/// (absolute, in circumradius units).
pub fn equivalent(a: &PackingConfiguration, b: &PackingConfiguration, tol: f64) -> bool {
    if a.n_disks() != b.n_disks() || a.sides() != b.sides() {
        return false;
    }
    if a.n_disks() == 0 {
        return true;
    }
    let cell = b.diameter.min(a.diameter);
    let cell = if cell.is_finite() && cell > 2.0 * tol { cell } else { 1.0 };
    let grid = CellGrid::new(&b.centers, cell);
    let axis = fundamental_angle(a.sides());
    candidate_rotations(a, b, tol).into_iter().any(|theta| {
        [false, true].iter().any(|&mirror| {
            let map = |p: Point2| {
                let p = if mirror { reflect_across(p, axis) } else { p };
                rotate(p, theta)
            };
            matches(&a.centers, &b.centers, &grid, map, tol)
        })
    })
}

fn candidate_rotations(a: &PackingConfiguration, b: &PackingConfiguration, tol: f64) -> Vec<f64> {
    match a.sides() {
        Sides::Regular(s) => (0..s).map(|j| TAU * j as f64 / s as f64).collect(),
        Sides::Circle => {
            // the circle has a continuous symmetry group: try to send an
            // outermost disk of `a` (or its mirror image) onto each disk of
            // `b` at the same radius
            let anchor = a
                .centers
                .iter()
                .copied()
                .max_by(|p, q| p.norm().total_cmp(&q.norm()))
                .unwrap();
            let mirrored = reflect_across(anchor, fundamental_angle(Sides::Circle));
            let mut out = Vec::new();
            for q in &b.centers {
                if (q.norm() - anchor.norm()).abs() <= tol {
                    out.push(q.angle() - anchor.angle());
                    out.push(q.angle() - mirrored.angle());
                }
            }
            out
        }
    }
}

/// Greedy one-to-one matching; exact as long as `tol` is below half the
/// minimum separation of `b`, since then every image has at most one
/// candidate.
fn matches(
    a: &[Point2],
    b: &[Point2],
    grid: &CellGrid,
    map: impl Fn(Point2) -> Point2,
    tol: f64,
) -> bool {
    let mut used = vec![false; b.len()];
    for p in a {
        let q = map(*p);
        let hit = grid
            .around(q)
            .filter(|&j| !used[j])
            .map(|j| (j, b[j].dist(q)))
            .filter(|&(_, r)| r <= tol)
            .min_by(|x, y| x.1.total_cmp(&y.1));
        match hit {
            Some((j, _)) => used[j] = true,
            None => return false,
        }
    }
    true
}

/// Applies `f` to every center.
pub fn map_centers(config: &PackingConfiguration, f: impl Fn(Point2) -> Point2) -> PackingConfiguration {
    let mut out = config.clone();
    for p in &mut out.centers {
        *p = f(*p);
    }
    out
}
