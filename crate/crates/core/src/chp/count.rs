//! Number of inequivalent CHP configurations.

use num_bigint::BigUint;
use serde::Serialize;

use super::border::BorderSolution;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountInput {
    pub k: usize,
    pub eta: u8,
    pub n_v: usize,
    pub degeneracies: Vec<usize>,
}

impl CountInput {
    pub fn from_border(b: &BorderSolution) -> Self {
        CountInput { k: b.k, eta: b.eta, n_v: b.n_v, degeneracies: b.degeneracies.clone() }
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

/// `max(1, k! / (eta n_V prod n_i!))` in exact integer arithmetic.
pub fn count_configurations(input: &CountInput) -> BigUint {
    debug_assert_eq!(input.degeneracies.iter().sum::<usize>(), input.k);
    let mut den = BigUint::from(input.eta) * BigUint::from(input.n_v.max(1));
    for &n in &input.degeneracies {
        den *= factorial(n);
    }
    let q = factorial(input.k) / den;
    q.max(BigUint::from(1u32))
}

/// Dodecagon closed form `k! / (2 (floor(k/2))!^2)`, for `k >= 2`.
pub fn dodecagon_count(k: usize) -> BigUint {
    let h = factorial(k / 2);
    factorial(k) / (BigUint::from(2u32) * &h * &h)
}
