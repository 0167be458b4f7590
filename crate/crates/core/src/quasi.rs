//! Quasi-probability weights of the density-operator decomposition into a
//! position part, a momentum part, and a normalized interference term.

use serde::{Deserialize, Serialize};

use crate::error::WignerError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiProbabilities {
    pub w_l: f64,
    pub w_b: f64,
    pub w_inter: f64,
}

impl QuasiProbabilities {
    pub fn new(w_l: f64, w_b: f64, w_inter: f64) -> Result<Self, WignerError> {
        let q = QuasiProbabilities { w_l, w_b, w_inter };
        let sum = q.sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(WignerError::NotNormalized { sum });
        }
        Ok(q)
    }

    pub fn sum(&self) -> f64 {
        self.w_l + self.w_b + self.w_inter
    }

    /// Weights reproducing the equal pure superposition with overlap `s`:
    /// `w_l = w_b = 1/(2(1+s))`, `w_inter = s/(1+s)`.
    pub fn pure_state(s: f64) -> Self {
        let w = 1.0 / (2.0 * (1.0 + s));
        QuasiProbabilities {
            w_l: w,
            w_b: w,
            w_inter: s / (1.0 + s),
        }
    }
}
