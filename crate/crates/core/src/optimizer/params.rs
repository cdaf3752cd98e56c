use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How `lambda` is chosen at the start of each ladder rung.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LambdaRule {
    /// Square of the current minimum pair distance.
    #[default]
    MinDistSq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerParams {
    pub s_initial: f64,
    pub s_factor: f64,
    pub s_final: f64,
    pub lambda_rule: LambdaRule,
    /// Relative projected-gradient norm at which a rung stops.
    pub inner_tol: f64,
    pub max_inner_iters: usize,
    /// Shake radius as a fraction of the current minimum distance.
    pub perturb_amplitude: f64,
    pub seed: u64,
}

impl Default for OptimizerParams {
    fn default() -> Self {
        OptimizerParams {
            s_initial: 10.0,
            s_factor: 1.5,
            s_final: 1e8,
            lambda_rule: LambdaRule::MinDistSq,
            inner_tol: 1e-12,
            max_inner_iters: 5000,
            perturb_amplitude: 0.01,
            seed: 0,
        }
    }
}

impl OptimizerParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::PreconditionViolated(m.into()));
        if !(self.s_initial >= 1.0 && self.s_initial < self.s_final) {
            return bad("need 1 <= s_initial < s_final");
        }
        if self.s_final > 1e9 {
            return bad("s_final must not exceed 1e9");
        }
        if self.s_factor.is_nan() || self.s_factor <= 1.0 {
            return bad("s_factor must be > 1");
        }
        if !(self.perturb_amplitude > 0.0 && self.perturb_amplitude < 0.5) {
            return bad("perturb_amplitude must lie in (0, 0.5)");
        }
        if self.inner_tol.is_nan() || self.inner_tol <= 0.0 || self.max_inner_iters == 0 {
            return bad("inner_tol and max_inner_iters must be positive");
        }
        Ok(())
    }

    /// Exponents of the ladder, from `s_initial` up to and including `s_final`.
    pub fn ladder(&self) -> Vec<f64> {
        let mut out = Vec::new();
        let mut s = self.s_initial;
        while s < self.s_final {
            out.push(s);
            s *= self.s_factor;
        }
        out.push(self.s_final);
        out
    }
}
