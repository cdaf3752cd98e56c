//! Classification tables of CHP configurations.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;

use crate::chp::{count_configurations, enumerate_for, solve_border, CountInput};
use crate::error::Result;
use crate::geometry::Sides;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub sigma: u32,
    pub k: usize,
    pub building_blocks: usize,
    pub degeneracies: Vec<usize>,
    pub eta: u8,
    pub n_v: usize,
    pub k_mod: usize,
    /// `None` when the formula count exceeds the enumeration cap.
    pub enumerated_count: Option<usize>,
    #[serde(serialize_with = "serialize_big")]
    pub formula_count: BigUint,
}

fn serialize_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub const CSV_HEADER: &str =
    "sigma,k,building_blocks,degeneracies,eta,n_v,k_mod,enumerated_count,formula_count";

impl TableRow {
    pub fn compute(sigma: u32, k: usize, cap: usize) -> Result<Self> {
        let border = solve_border(Sides::regular(sigma)?, k)?;
        let formula_count = count_configurations(&CountInput::from_border(&border));
        let enumerated_count = if formula_count <= BigUint::from(cap) {
            Some(enumerate_for(&border, cap)?.len())
        } else {
            None
        };
        Ok(TableRow {
            sigma,
            k,
            building_blocks: border.building_blocks(),
            degeneracies: border.degeneracies.clone(),
            eta: border.eta,
            n_v: border.n_v,
            k_mod: k % (sigma as usize / 6),
            enumerated_count,
            formula_count,
        })
    }

    /// One CSV line (no trailing newline); degeneracies are `;`-separated.
    pub fn to_csv(&self) -> String {
        let degs: Vec<String> = self.degeneracies.iter().map(usize::to_string).collect();
        let enumerated = self.enumerated_count.map(|n| n.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.sigma,
            self.k,
            self.building_blocks,
            degs.join(";"),
            self.eta,
            self.n_v,
            self.k_mod,
            enumerated,
            self.formula_count
        )
    }
}

/// Rows for every `sigma` in `sigmas` and `k = 1..=k_max`, in that order.
pub fn compute_tables(sigmas: &[u32], k_max: usize, cap: usize) -> Result<Vec<TableRow>> {
    let jobs: Vec<(u32, usize)> =
        sigmas.iter().flat_map(|&s| (1..=k_max).map(move |k| (s, k))).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        jobs.par_iter().map(|&(s, k)| TableRow::compute(s, k, cap)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        jobs.iter().map(|&(s, k)| TableRow::compute(s, k, cap)).collect()
    }
}

pub fn tables_csv(rows: &[TableRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in rows {
        writeln!(out, "{}", r.to_csv()).unwrap();
    }
    out
}
