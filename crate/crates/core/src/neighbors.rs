//! Uniform cell grid for short-range pair queries.

use std::collections::HashMap;

use crate::geometry::Point2;

/// Buckets point indices into square cells of side `cell`.
pub struct CellGrid {
    cell: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl CellGrid {
    pub fn new(points: &[Point2], cell: f64) -> Self {
        assert!(cell > 0.0 && cell.is_finite(), "cell size must be positive");
        let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            cells.entry(Self::key_of(*p, cell)).or_default().push(i);
        }
        CellGrid { cell, cells }
    }

    fn key_of(p: Point2, cell: f64) -> (i64, i64) {
        ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64)
    }

    /// Indices in the 3x3 block of cells around `p`. Every point closer than
    /// `cell` to `p` is included.
    pub fn around(&self, p: Point2) -> impl Iterator<Item = usize> + '_ {
        let (cx, cy) = Self::key_of(p, self.cell);
        (-1..=1).flat_map(move |dx| {
            (-1..=1).flat_map(move |dy| {
                self.cells.get(&(cx + dx, cy + dy)).into_iter().flatten().copied()
            })
        })
    }

    /// Calls `f(i, j, r)` once for every pair `i < j` with `r < cell`.
    pub fn for_each_close_pair(&self, points: &[Point2], mut f: impl FnMut(usize, usize, f64)) {
        for (i, p) in points.iter().enumerate() {
            for j in self.around(*p) {
                if j > i {
                    let r = p.dist(points[j]);
                    if r < self.cell {
                        f(i, j, r);
                    }
                }
            }
        }
    }
}

/// Calls `f(i, j, r)` for every pair `i < j` closer than `cutoff`, using a
/// grid for large inputs.
pub fn close_pairs(points: &[Point2], cutoff: f64, mut f: impl FnMut(usize, usize, f64)) {
    if points.len() <= 200 || !(cutoff > 0.0 && cutoff.is_finite()) {
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let r = points[i].dist(points[j]);
                if r < cutoff {
                    f(i, j, r);
                }
            }
        }
    } else {
        CellGrid::new(points, cutoff).for_each_close_pair(points, f);
    }
}

/// Smallest pairwise distance (`inf` for fewer than two points).
pub fn min_distance(points: &[Point2]) -> f64 {
    let n = points.len();
    if n < 2 {
        return f64::INFINITY;
    }
    if n <= 200 {
        return brute_min(points);
    }
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let area = ((hi.x - lo.x) * (hi.y - lo.y)).max(f64::MIN_POSITIVE);
    // about four points per cell for a uniform spread
    let cell = 2.0 * (area / n as f64).sqrt();
    let mut best = f64::INFINITY;
    if cell > 0.0 && cell.is_finite() {
        CellGrid::new(points, cell).for_each_close_pair(points, |_, _, r| best = best.min(r));
    }
    if best.is_finite() {
        best
    } else {
        brute_min(points)
    }
}

fn brute_min(points: &[Point2]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min(points[i].dist(points[j]));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<Point2> = (0..500)
            .map(|_| Point2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        assert_eq!(min_distance(&pts), brute_min(&pts));

        let mut a = Vec::new();
        close_pairs(&pts, 0.05, |i, j, _| a.push((i, j)));
        let mut b = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if pts[i].dist(pts[j]) < 0.05 {
                    b.push((i, j));
                }
            }
        }
        a.sort_unstable();
        assert_eq!(a, b);
    }
}
