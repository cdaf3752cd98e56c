//! Pair energy `sum (lambda / r^2)^s` and its gradient.
//!
//! Terms are accumulated as `exp(t - M)` with `t = s ln(lambda / r^2)` and
//! `M = max t`, so the logarithm of the energy is always finite even when the
//! energy itself would overflow.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::neighbors::close_pairs;

/// Disks whose positions never change.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PinSet {
    pub indices: BTreeSet<usize>,
}

impl PinSet {
    pub fn none() -> Self {
        PinSet::default()
    }

    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        PinSet { indices: indices.into_iter().collect() }
    }

    pub fn all(n: usize) -> Self {
        PinSet::new(0..n)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &i in &self.indices {
            if i < n {
                m[i] = true;
            }
        }
        m
    }

    pub fn check(&self, n: usize) -> Result<()> {
        match self.indices.iter().next_back() {
            Some(&i) if i >= n => Err(Error::PreconditionViolated(format!(
                "pinned index {i} out of range for {n} disks"
            ))),
            _ => Ok(()),
        }
    }
}

/// Squared distance beyond which pairs are dropped on large inputs: there a
/// term is below `1e-16` of a term at `r^2 = lambda`.
fn cutoff2(n: usize, s: f64, lambda: f64) -> f64 {
    if n <= 200 {
        f64::INFINITY
    } else {
        lambda * 10f64.powf((16.0 / s).max(1.0))
    }
}

struct Pair {
    i: usize,
    j: usize,
    t: f64,
}

fn pairs(centers: &[Point2], s: f64, lambda: f64) -> Result<Vec<Pair>> {
    let ln_lambda = lambda.ln();
    let cut = cutoff2(centers.len(), s, lambda).sqrt();
    let mut out = Vec::new();
    let mut coincident = None;
    close_pairs(centers, cut, |i, j, r| {
        if r == 0.0 {
            coincident.get_or_insert((i, j));
        }
        out.push(Pair { i, j, t: s * (ln_lambda - 2.0 * r.ln()) });
    });
    if let Some((i, j)) = coincident {
        return Err(Error::CoincidentPoints(i, j));
    }
    Ok(out)
}

fn log_sum(pairs: &[Pair]) -> f64 {
    let m = pairs.iter().map(|p| p.t).fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + pairs.iter().map(|p| (p.t - m).exp()).sum::<f64>().ln()
}

fn check_args(s: f64, lambda: f64) -> Result<()> {
    if !(s > 0.0 && lambda > 0.0 && s.is_finite() && lambda.is_finite()) {
        return Err(Error::PreconditionViolated("need s > 0 and lambda > 0".into()));
    }
    Ok(())
}

/// `ln sum (lambda / r^2)^s`; `-inf` for fewer than two disks.
pub fn log_energy(centers: &[Point2], s: f64, lambda: f64) -> Result<f64> {
    check_args(s, lambda)?;
    Ok(log_sum(&pairs(centers, s, lambda)?))
}

/// `sum (lambda / r^2)^s`, summed directly while every exponent is moderate
/// and through the log domain otherwise.
pub fn energy(centers: &[Point2], s: f64, lambda: f64) -> Result<f64> {
    check_args(s, lambda)?;
    let p = pairs(centers, s, lambda)?;
    if p.iter().all(|q| q.t.abs() <= 600.0) {
        Ok(p.iter().map(|q| q.t.exp()).sum())
    } else {
        Ok(log_sum(&p).exp())
    }
}

/// Log-energy and its gradient, pinned components zeroed.
pub fn log_energy_and_gradient(
    centers: &[Point2],
    s: f64,
    lambda: f64,
    pinned: &[bool],
) -> Result<(f64, Vec<Point2>)> {
    check_args(s, lambda)?;
    let p = pairs(centers, s, lambda)?;
    let f = log_sum(&p);
    let mut g = vec![Point2::ORIGIN; centers.len()];
    if !f.is_finite() {
        return Ok((f, g));
    }
    for q in &p {
        let w = (q.t - f).exp();
        let v = centers[q.i] - centers[q.j];
        let c = -2.0 * s * w / v.norm2();
        g[q.i] += v * c;
        g[q.j] -= v * c;
    }
    for (gi, &pin) in g.iter_mut().zip(pinned) {
        if pin {
            *gi = Point2::ORIGIN;
        }
    }
    Ok((f, g))
}

/// Gradient of [`energy`] with pinned components set to zero.
pub fn energy_gradient(centers: &[Point2], s: f64, lambda: f64, pins: &PinSet) -> Result<Vec<Point2>> {
    let mask = pins.mask(centers.len());
    let (f, g) = log_energy_and_gradient(centers, s, lambda, &mask)?;
    let e = f.exp();
    Ok(g.into_iter().map(|v| v * e).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_disk_values() {
        let l: f64 = 0.04;
        let pair = [Point2::ORIGIN, Point2::new(l.sqrt(), 0.0)];
        for s in [1.0, 7.5, 1e6] {
            assert_relative_eq!(energy(&pair, s, l).unwrap(), 1.0, epsilon = 1e-12);
        }
        assert_eq!(energy(&[Point2::ORIGIN], 3.0, 1.0).unwrap(), 0.0);
        let a = l.sqrt();
        let tri = [Point2::ORIGIN, Point2::new(a, 0.0), Point2::polar(a, std::f64::consts::FRAC_PI_3)];
        assert_relative_eq!(energy(&tri, 40.0, l).unwrap(), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn coincident_points_are_rejected() {
        let p = [Point2::new(0.1, 0.2), Point2::new(0.1, 0.2)];
        assert!(matches!(energy(&p, 2.0, 1.0), Err(Error::CoincidentPoints(0, 1))));
    }

    #[test]
    fn huge_exponents_stay_finite_in_log_domain() {
        let p = [Point2::ORIGIN, Point2::new(0.5, 0.0)];
        let f = log_energy(&p, 1e8, 1.0).unwrap();
        assert_relative_eq!(f, 1e8 * 4f64.ln(), max_relative = 1e-14);
        assert!(energy(&p, 1e8, 1.0).unwrap().is_infinite());
    }

    #[test]
    fn pinned_and_opposite_gradients() {
        let p = [Point2::new(-0.3, 0.1), Point2::new(0.3, -0.1)];
        let g = energy_gradient(&p, 3.0, 0.2, &PinSet::none()).unwrap();
        assert_relative_eq!(g[0].x, -g[1].x, epsilon = 1e-15);
        assert_relative_eq!(g[0].y, -g[1].y, epsilon = 1e-15);
        let g = energy_gradient(&p, 3.0, 0.2, &PinSet::all(2)).unwrap();
        assert!(g.iter().all(|v| *v == Point2::ORIGIN));
    }
}
