//! Closed-form packing fractions of curved hexagonal packings.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::Sides;

use super::border::{hex_number, solve_border};

/// Density of the CHP with `k` shells, from the solved border diameter.
pub fn chp_density(sigma: Sides, k: usize) -> Result<f64> {
    match sigma {
        Sides::Circle => {
            if k == 0 {
                return Err(Error::ZeroShells);
            }
            Ok(circle_density(k))
        }
        Sides::Regular(s) => {
            let b = solve_border(sigma, k)?;
            Ok(density_from_diameter(s, k, b.d))
        }
    }
}

/// `N pi d^2 cot(pi/sigma) / (sigma (d + 2 cos(pi/sigma))^2)`.
pub fn density_from_diameter(sigma: u32, k: usize, d: f64) -> f64 {
    let h = PI / sigma as f64;
    let n = hex_number(k) as f64;
    n * PI * d * d / (h.tan() * sigma as f64 * (d + 2.0 * h.cos()).powi(2))
}

/// Density when every polygon vertex carries a border disk (`6k/sigma` integer).
pub fn chp_density_full_vertex(sigma: u32, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroShells);
    }
    if sigma == 0 || !(6 * k).is_multiple_of(sigma as usize) {
        return Err(Error::PreconditionViolated(format!(
            "6k/sigma must be an integer (sigma={sigma}, k={k})"
        )));
    }
    let cot = 1.0 / (PI / sigma as f64).tan();
    let s = sigma as f64;
    Ok(PI * hex_number(k) as f64 * s * cot / (6.0 * k as f64 * cot + s).powi(2))
}

/// Hexagonal container: `6 sqrt(3) pi N / (6 sqrt(3) k + 6)^2`.
pub fn hexagon_density(k: usize) -> f64 {
    let r3 = 3f64.sqrt();
    6.0 * r3 * PI * hex_number(k) as f64 / (6.0 * r3 * k as f64 + 6.0).powi(2)
}

/// Circular container: `N sin^2(pi/6k) / (1 + sin(pi/6k))^2`.
pub fn circle_density(k: usize) -> f64 {
    let s = (PI / (6.0 * k as f64)).sin();
    hex_number(k) as f64 * s * s / (1.0 + s).powi(2)
}

/// Large-`k` limit of the full-vertex density, `pi sigma tan(pi/sigma) / 12`.
pub fn density_limit(sigma: u32) -> f64 {
    PI * sigma as f64 * (PI / sigma as f64).tan() / 12.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn circle_one_shell() {
        assert_abs_diff_eq!(chp_density(Sides::Circle, 1).unwrap(), 7.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn hexagon_one_shell() {
        let rho = chp_density(Sides::Regular(6), 1).unwrap();
        assert_abs_diff_eq!(rho, hexagon_density(1), epsilon = 1e-12);
        assert_abs_diff_eq!(rho, 0.8505, epsilon = 1e-4);
    }

    #[test]
    fn full_vertex_requires_divisibility() {
        assert!(matches!(chp_density_full_vertex(12, 3), Err(Error::PreconditionViolated(_))));
        let fv = chp_density_full_vertex(12, 4).unwrap();
        assert_abs_diff_eq!(fv, chp_density(Sides::Regular(12), 4).unwrap(), epsilon = 1e-12);
        assert_abs_diff_eq!(fv, 0.8319, epsilon = 1e-4);
    }

    #[test]
    fn full_vertex_limit() {
        for sigma in [6u32, 12, 18, 24] {
            let big = chp_density_full_vertex(sigma, 10_000 * sigma as usize / 6).unwrap();
            assert!((big - density_limit(sigma)).abs() < 1e-3);
        }
    }

    #[test]
    fn hexagon_specialisation_is_exact() {
        for k in 1..=10 {
            assert_abs_diff_eq!(chp_density_full_vertex(6, k).unwrap(), hexagon_density(k), epsilon = 1e-14);
        }
    }
}
