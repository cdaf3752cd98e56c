//! Deterministic construction of CHP configurations from a DNA, and the
//! inverse: reading the DNA off a configuration.
//!
//! Shells are filled from the border inwards inside the fundamental sector.
//! Between shell `m + 1` and shell `m` lies a strip of rhombi with a single
//! equilateral triangle; the triangle sits on the first shell-`(m + 1)` edge
//! whose direction equals `xi - pi/3`, where `xi` is the DNA chord that
//! crosses the strip. Every interior disk is then the second intersection of
//! two radius-`d` circles around disks that are already placed.

use std::f64::consts::FRAC_PI_3;

use serde::{Deserialize, Serialize};

use crate::chp::dna::canonical_indices;
use crate::chp::{solve_border, BorderSolution, Dna, ANGLE_TOL};
use crate::error::{Error, Result};
use crate::geometry::{fundamental_vertex, rotate, Point2, PolygonSpec, Sides};
use crate::neighbors::{close_pairs, min_distance, CellGrid};
use crate::optimizer::OptimizerParams;

/// How a configuration was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Deterministic,
    Algorithm1,
    Algorithm2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: Option<OptimizerParams>,
}

impl Provenance {
    pub fn deterministic() -> Self {
        Provenance { mode: Mode::Deterministic, seed: None, params: None }
    }
}

/// Disk centers inside the inner polygon of `spec.sides`; `diameter` is the
/// minimum allowed separation.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingConfiguration {
    pub spec: PolygonSpec,
    pub centers: Vec<Point2>,
    pub diameter: f64,
    pub k: Option<usize>,
    pub dna: Option<String>,
    pub provenance: Provenance,
}

impl PackingConfiguration {
    pub fn new(sides: Sides, centers: Vec<Point2>, provenance: Provenance) -> Self {
        let diameter = min_distance(&centers);
        PackingConfiguration {
            spec: PolygonSpec::inner(sides),
            centers,
            diameter,
            k: None,
            dna: None,
            provenance,
        }
    }

    pub fn sides(&self) -> Sides {
        self.spec.sides
    }

    pub fn n_disks(&self) -> usize {
        self.centers.len()
    }

    /// Recomputes `diameter` as the current minimum separation.
    pub fn update_diameter(&mut self) {
        self.diameter = min_distance(&self.centers);
    }
}

/// Index range of shell `m` (`0` is the central disk) in a built configuration.
pub fn shell_range(m: usize) -> std::ops::Range<usize> {
    if m == 0 {
        0..1
    } else {
        3 * m * (m - 1) + 1..3 * m * (m + 1) + 1
    }
}

/// Both intersections of the radius-`d` circles about `c1` and `c2`, the one
/// left of the directed line `c1 -> c2` first.
pub fn circle_pair_intersection(c1: Point2, c2: Point2, d: f64) -> Result<(Point2, Point2)> {
    let v = c2 - c1;
    let dist = v.norm();
    if dist <= f64::EPSILON * d {
        return Err(Error::Coincident);
    }
    let half = 0.5 * dist;
    let h2 = d * d - half * half;
    let mid = c1 + v * 0.5;
    if h2 < 0.0 {
        if dist - 2.0 * d <= 1e-12 * d {
            return Ok((mid, mid));
        }
        return Err(Error::NoIntersection { distance: dist, radius: d });
    }
    let h = h2.sqrt();
    let n = Point2::new(-v.y, v.x) * (h / dist);
    Ok((mid + n, mid - n))
}

/// The intersection of the circles about `a` and `b` that is not `avoid`.
fn other_intersection(a: Point2, b: Point2, avoid: Point2, d: f64) -> Option<Point2> {
    let (p, q) = circle_pair_intersection(a, b, d).ok()?;
    Some(if p.dist(avoid) >= q.dist(avoid) { p } else { q })
}

/// Builds the CHP of `border` encoded by `dna`.
pub fn build_from_border(border: &BorderSolution, dna: &Dna) -> Result<PackingConfiguration> {
    let k = border.k;
    let d = border.d;
    let idx = Dna::from_letters(&dna.letters, border)?.indices();
    let spec = PolygonSpec::inner(border.sigma);

    // sector points of each shell, q[m][0..=m]
    let mut q: Vec<Vec<Point2>> = vec![Vec::new(); k + 1];
    q[k] = border.points.clone();
    let mut edges: Vec<u8> = border.phi_letters();

    // spoke from P1 to the center
    let mut spoke = vec![Point2::ORIGIN; k + 1];
    spoke[k] = fundamental_vertex(border.sigma);
    for j in 1..=k {
        let xi = border.blocks[idx[j - 1] as usize] + FRAC_PI_3;
        spoke[k - j] = spoke[k - j + 1] + Point2::unit(xi) * d;
    }

    for m in (1..k).rev() {
        let letter = idx[k - m - 1];
        let p = edges
            .iter()
            .position(|&e| e == letter)
            .ok_or(Error::ConstructionFailed { shell: m, position: 0 })?;
        let outer = &q[m + 1];
        let mut shell = Vec::with_capacity(m + 1);
        shell.push(spoke[m]);
        for i in 1..=m {
            let prev = shell[i - 1];
            let next = if i <= p {
                other_intersection(prev, outer[i], outer[i - 1], d)
            } else {
                other_intersection(prev, outer[i + 1], outer[i], d)
            };
            let next = next.ok_or(Error::ConstructionFailed { shell: m, position: i })?;
            if !spec.contains(next, 1e-9) {
                return Err(Error::ConstructionFailed { shell: m, position: i });
            }
            shell.push(next);
        }
        let end = rotate(spoke[m], FRAC_PI_3);
        if shell[m].dist(end) > 1e-9 * d.max(1.0) {
            return Err(Error::ConstructionFailed { shell: m, position: m });
        }
        shell[m] = end;
        q[m] = shell;
        edges.remove(p);
    }

    let mut centers = Vec::with_capacity(border.n_disks());
    centers.push(Point2::ORIGIN);
    for (m, shell) in q.iter().enumerate().skip(1) {
        for r in 0..6 {
            let ang = r as f64 * FRAC_PI_3;
            for p in &shell[..m] {
                centers.push(rotate(*p, ang));
            }
        }
    }

    let tol = 1e-9 * d;
    let mut overlap = None;
    close_pairs(&centers, d - tol, |i, j, _| {
        overlap.get_or_insert((i, j));
    });
    if let Some((_, j)) = overlap {
        let shell = (0..=k).find(|&m| shell_range(m).contains(&j)).unwrap_or(k);
        return Err(Error::ConstructionFailed { shell, position: j - shell_range(shell).start });
    }

    Ok(PackingConfiguration {
        spec,
        centers,
        diameter: d,
        k: Some(k),
        dna: Some(dna.letters.clone()),
        provenance: Provenance::deterministic(),
    })
}

/// Builds the CHP for `(sigma, k)` encoded by `dna`.
pub fn build_chp(sigma: Sides, k: usize, dna: &Dna) -> Result<PackingConfiguration> {
    let border = solve_border(sigma, k)?;
    build_from_border(&border, dna)
}

/// Reads the canonical DNA off a CHP-structured configuration.
pub fn extract_dna(config: &PackingConfiguration, sigma: Sides, k: usize) -> Result<Dna> {
    let border = solve_border(sigma, k)?;
    extract_with_border(config, &border)
}

/// Contact tolerance (relative to `d`) for the DNA path search.
const CONTACT_TOL: f64 = 1e-6;
const MAX_PATHS: usize = 64;

pub fn extract_with_border(config: &PackingConfiguration, border: &BorderSolution) -> Result<Dna> {
    let k = border.k;
    let pts = &config.centers;
    let d = border.d;
    let tol = CONTACT_TOL * d;
    if pts.is_empty() {
        return Err(Error::NoPath { k });
    }

    let p1 = fundamental_vertex(border.sigma);
    let grid = CellGrid::new(pts, d);
    let nearest = |target: Point2| {
        grid.around(target)
            .map(|i| (i, pts[i].dist(target)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    };
    let start = match nearest(p1) {
        Some((i, r)) if r <= tol => i,
        _ => return Err(Error::AmbiguousStart),
    };
    let center = match nearest(Point2::ORIGIN) {
        Some((i, r)) if r <= tol => i,
        _ => return Err(Error::NoPath { k }),
    };

    let mut adj = vec![Vec::new(); pts.len()];
    close_pairs(pts, d + 2.0 * tol, |i, j, r| {
        if (r - d).abs() <= tol {
            adj[i].push(j);
            adj[j].push(i);
        }
    });

    // graph distance to the center; only shortest paths are followed
    let mut depth = vec![usize::MAX; pts.len()];
    depth[center] = 0;
    let mut queue = std::collections::VecDeque::from([center]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        }
    }
    if depth[start] != k {
        return Err(Error::NoPath { k });
    }

    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![vec![start]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == center {
            paths.push(path);
            if paths.len() >= MAX_PATHS {
                break;
            }
            continue;
        }
        let mut next: Vec<usize> =
            adj[last].iter().copied().filter(|&v| depth[v] + 1 == depth[last]).collect();
        next.sort_unstable_by(|a, b| b.cmp(a));
        for v in next {
            let mut p = path.clone();
            p.push(v);
            stack.push(p);
        }
    }

    let mut first_err = None;
    let mut best: Option<Vec<u8>> = None;
    for path in &paths {
        let xi: Vec<f64> = path.windows(2).map(|w| (pts[w[1]] - pts[w[0]]).angle()).collect();
        let xi: Vec<f64> = xi.iter().map(|&x| unwrap_near(x, border)).collect();
        match Dna::from_xi(&xi, border, 1e3 * CONTACT_TOL.max(ANGLE_TOL)) {
            Ok(dna) => {
                let c = canonical_indices(&dna.indices(), border);
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    match best {
        Some(c) => Dna::from_indices(&c, border),
        None => Err(first_err.unwrap_or(Error::NoPath { k })),
    }
}

/// Shifts a chord angle by a multiple of `2 pi` into the DNA range.
fn unwrap_near(x: f64, border: &BorderSolution) -> f64 {
    let lo = FRAC_PI_3 - 0.5;
    let hi = FRAC_PI_3 + border.span() + 0.5;
    let tau = std::f64::consts::TAU;
    let mut y = x;
    while y < lo {
        y += tau;
    }
    while y > hi && y - tau >= lo {
        y -= tau;
    }
    y
}
