//! The unique border chain of a curved hexagonal packing.
//!
//! Within the fundamental 60 degree sector, `k` disks of diameter `d` sit on
//! the inner polygon, starting at `P1` and ending (exclusive) at `P1` rotated
//! by `pi/3`. Consecutive disks touch, so the chain is `k` equal chords of the
//! boundary. The chain length grows monotonically with `d`, which makes the
//! outer root-find a plain bisection; each chord is placed analytically by
//! intersecting the circle of radius `d` with the first edge that leaves it.

use std::f64::consts::{FRAC_PI_3, PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{fundamental_angle, fundamental_vertex, rotate, Point2, Sides};

use super::dna::LetterSymmetry;

/// Tolerance used to group equal chord angles and to detect occupied vertices.
pub const ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct BorderSolution {
    #[serde(serialize_with = "crate::io::config::serialize_sides")]
    pub sigma: Sides,
    pub k: usize,
    /// Direction of border chord `j`, radians.
    pub phi: Vec<f64>,
    /// Disk diameter in circumradius units.
    pub d: f64,
    /// Chain points `P1 .. P(k+1)`; the last one is `P1` rotated by `pi/3`.
    pub points: Vec<Point2>,
    pub n_v: usize,
    /// Rotation angles (relative to `P1`) of the occupied vertices.
    pub occupied: Vec<f64>,
    /// Distinct values of `phi`, ascending. Letter `a` is `blocks[0]`.
    pub blocks: Vec<f64>,
    pub degeneracies: Vec<usize>,
    pub eta: u8,
    #[serde(skip)]
    pub(crate) symmetry: LetterSymmetry,
}

impl BorderSolution {
    pub fn n_disks(&self) -> usize {
        hex_number(self.k)
    }

    pub fn building_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Letter index of every border chord, in chain order.
    pub fn phi_letters(&self) -> Vec<u8> {
        self.phi.iter().map(|&p| self.letter_of(p, ANGLE_TOL).expect("phi is a block")).collect()
    }

    /// Letter whose block value is within `tol` of `phi`.
    pub fn letter_of(&self, phi: f64, tol: f64) -> Option<u8> {
        self.blocks
            .iter()
            .position(|&b| (b - phi).abs() <= tol)
            .map(|i| i as u8)
    }

    /// Angular span of the chord directions, `pi/3 - 2 pi/sigma`.
    pub fn span(&self) -> f64 {
        FRAC_PI_3 - 2.0 * self.sigma.half_angle()
    }

    /// All `6k` border centers, sector by sector.
    pub fn border_centers(&self) -> Vec<Point2> {
        let mut out = Vec::with_capacity(6 * self.k);
        for r in 0..6 {
            for p in &self.points[..self.k] {
                out.push(rotate(*p, r as f64 * FRAC_PI_3));
            }
        }
        out
    }
}

/// `N(k) = 3k(k+1) + 1`.
pub fn hex_number(k: usize) -> usize {
    3 * k * (k + 1) + 1
}

/// Solves the border chain for `sigma` sides and `k` shells.
pub fn solve_border(sigma: Sides, k: usize) -> Result<BorderSolution> {
    if k == 0 {
        return Err(Error::ZeroShells);
    }
    let (phi, d, points, occupied) = match sigma {
        Sides::Circle => circle_chain(k),
        Sides::Regular(s) => {
            if s < 6 || s % 6 != 0 {
                return Err(Error::NotMultipleOfSix(s));
            }
            polygon_chain(s, k)?
        }
    };

    let mut sorted = phi.clone();
    sorted.sort_by(f64::total_cmp);
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for v in sorted {
        match groups.last_mut() {
            Some(g) if (v - g[g.len() - 1]).abs() <= ANGLE_TOL => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    let blocks: Vec<f64> = groups.iter().map(|g| g.iter().sum::<f64>() / g.len() as f64).collect();
    let degeneracies: Vec<usize> = groups.iter().map(Vec::len).collect();

    let span = FRAC_PI_3 - 2.0 * sigma.half_angle();
    let symmetry = LetterSymmetry::new(&blocks, &occupied, span)?;
    let eta = symmetry.eta();

    Ok(BorderSolution {
        sigma,
        k,
        phi,
        d,
        points,
        n_v: occupied.len(),
        occupied,
        blocks,
        degeneracies,
        eta,
        symmetry,
    })
}

type Chain = (Vec<f64>, f64, Vec<Point2>, Vec<f64>);

fn circle_chain(k: usize) -> Chain {
    let kf = k as f64;
    let base = fundamental_angle(Sides::Circle);
    let phi = (1..=k).map(|j| (2 * j - 1) as f64 * PI / (6.0 * kf)).collect();
    let d = 2.0 * (PI / (6.0 * kf)).sin();
    let points = (0..=k)
        .map(|j| Point2::unit(base + j as f64 * PI / (3.0 * kf)))
        .collect();
    let occupied = (0..k).map(|t| t as f64 * PI / (3.0 * kf)).collect();
    (phi, d, points, occupied)
}

/// Vertex `t` of the unit polygon counted from `P1`.
fn vertex(sigma: u32, t: usize) -> Point2 {
    Point2::unit(fundamental_angle(Sides::Regular(sigma)) + TAU * t as f64 / sigma as f64)
}

struct March {
    points: Vec<Point2>,
    /// Boundary position of every chain point, in edge units from `P1`.
    positions: Vec<f64>,
}

fn march(verts: &[Point2], k: usize, d: f64) -> Option<March> {
    let mut points = vec![verts[0]];
    let mut positions = vec![0.0];
    let mut edge = 0usize;
    let mut c = verts[0];
    let d2 = d * d;
    for _ in 0..k {
        // distance from c grows along a convex boundary, so the exit edge is
        // the first whose far endpoint is at least d away
        while edge + 1 < verts.len() && (verts[edge + 1] - c).norm2() < d2 {
            edge += 1;
        }
        if edge + 1 >= verts.len() {
            return None;
        }
        let a = verts[edge];
        let w = verts[edge + 1] - a;
        let r = a - c;
        let qa = w.norm2();
        let qb = 2.0 * w.dot(r);
        let qc = r.norm2() - d2;
        let disc = (qb * qb - 4.0 * qa * qc).max(0.0);
        let t = ((-qb + disc.sqrt()) / (2.0 * qa)).clamp(0.0, 1.0);
        c = a + w * t;
        points.push(c);
        positions.push(edge as f64 + t);
    }
    Some(March { points, positions })
}

fn polygon_chain(sigma: u32, k: usize) -> Result<Chain> {
    let m = (sigma / 6) as usize;
    // a few spare vertices past the sector end so trial diameters can overshoot
    let verts: Vec<Point2> = (0..=m + 2 * (m + 1)).map(|t| vertex(sigma, t)).collect();
    let edge = 2.0 * (PI / sigma as f64).sin();
    let total = m as f64 * edge;
    let target = m as f64;

    let end_of = |d: f64| -> Option<f64> { march(&verts, k, d).map(|mm| mm.positions[k]) };

    // chords never exceed the arc they cut, and within a 60 degree sector they
    // are at least cos(30 deg) of it, so these bracket the root (with a little
    // slack on the upper end against rounding when the chain is straight)
    let mut lo = 0.5 * total / k as f64;
    let mut hi = 1.001 * total / k as f64;
    let f_lo = end_of(lo).ok_or(Error::NoSolution { sigma, k })? - target;
    let f_hi = end_of(hi).ok_or(Error::NoSolution { sigma, k })? - target;
    if !(f_lo < 0.0 && f_hi >= 0.0) {
        return Err(Error::NoSolution { sigma, k });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = end_of(mid).ok_or(Error::NoSolution { sigma, k })? - target;
        if f < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = 0.5 * (lo + hi);
    let mm = march(&verts, k, d).ok_or(Error::NoSolution { sigma, k })?;

    let end = rotate(fundamental_vertex(Sides::Regular(sigma)), FRAC_PI_3);
    if mm.points[k].dist(end) > 1e-10 {
        return Err(Error::NoSolution { sigma, k });
    }
    let phi = mm.points.windows(2).map(|w| (w[1] - w[0]).angle()).collect();

    let step = TAU / sigma as f64;
    let occupied = mm.points[..k]
        .iter()
        .filter_map(|p| {
            (0..m)
                .find(|&t| p.dist(verts[t]) <= ANGLE_TOL)
                .map(|t| t as f64 * step)
        })
        .collect();

    Ok((phi, d, mm.points, occupied))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn dodecagon_four_shells_is_full_vertex() {
        let b = solve_border(Sides::Regular(12), 4).unwrap();
        let expect = [0.0, 0.0, PI / 6.0, PI / 6.0];
        for (p, e) in b.phi.iter().zip(expect) {
            assert_abs_diff_eq!(*p, e, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(b.d, (PI / 12.0).sin(), epsilon = 1e-12);
        assert_eq!(b.n_v, 2);
        assert_eq!(b.degeneracies, vec![2, 2]);
        assert_eq!(b.eta, 1);
    }

    #[test]
    fn circle_closed_form() {
        for k in 1..=6 {
            let b = solve_border(Sides::Circle, k).unwrap();
            for (j, p) in b.phi.iter().enumerate() {
                assert_abs_diff_eq!(*p, (2 * j + 1) as f64 * PI / (6 * k) as f64, epsilon = 1e-15);
            }
            assert_eq!(b.n_v, k);
            assert!(b.degeneracies.iter().all(|&n| n == 1));
        }
    }

    #[test]
    fn hexagon_chords_lie_on_one_edge() {
        for k in 1..=6 {
            let b = solve_border(Sides::Regular(6), k).unwrap();
            assert_abs_diff_eq!(b.d, 1.0 / k as f64, epsilon = 1e-13);
            assert!(b.phi.iter().all(|p| p.abs() < 1e-12));
            assert_eq!(b.n_v, 1);
            assert_eq!(b.degeneracies, vec![k]);
        }
    }

    #[test]
    fn invariants_hold() {
        for sigma in (6..=96).step_by(6) {
            for k in 1..=10 {
                let b = solve_border(Sides::Regular(sigma), k).unwrap();
                let sum_cos: f64 = b.phi.iter().map(|p| p.cos()).sum();
                let sum_sin: f64 = b.phi.iter().map(|p| p.sin()).sum();
                let h = PI / sigma as f64;
                let d = (h.sin() + (h + PI / 6.0).cos()) / sum_cos;
                assert_abs_diff_eq!(b.d, d, epsilon = 1e-12);
                let ratio = 4.0 / (h.tan() + 3f64.sqrt()) - 3f64.sqrt();
                assert_abs_diff_eq!(sum_sin / sum_cos, ratio, epsilon = 1e-10);
                // marching the chords from P1 lands on P1 rotated by pi/3
                let mut p = fundamental_vertex(b.sigma);
                for phi in &b.phi {
                    p += Point2::unit(*phi) * b.d;
                }
                let end = rotate(fundamental_vertex(b.sigma), FRAC_PI_3);
                assert!(p.dist(end) < 1e-10, "sigma={sigma} k={k}");
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(solve_border(Sides::Regular(9), 2), Err(Error::NotMultipleOfSix(9))));
        assert!(matches!(solve_border(Sides::Regular(12), 0), Err(Error::ZeroShells)));
    }

    #[test]
    fn phi_is_nondecreasing() {
        for sigma in [12u32, 18, 30, 60] {
            for k in 1..=9 {
                let b = solve_border(Sides::Regular(sigma), k).unwrap();
                assert!(b.phi.windows(2).all(|w| w[1] >= w[0] - 1e-12));
                assert!(b.phi[0] >= -1e-12 && b.phi[k - 1] <= b.span() + 1e-12);
            }
        }
    }
}
