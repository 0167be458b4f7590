//! Uniform 1D grids for position and momentum axes.
//!
//! All quantities are in natural units with `hbar = 1`. A grid is a set of
//! `n` cell centers `x_j = x_min + j*dx`; cell `j` owns the interval
//! `[x_j - dx/2, x_j + dx/2)`. Interval integrals weight boundary cells by
//! fractional coverage so that a state constructed on the grid has an exact
//! discrete norm.

use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::units::HBAR;

/// Uniform 1D axis: `n` cells of width `dx`, first center at `x_min`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub dx: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn new(x_min: f64, dx: f64, n: usize) -> Result<Self, GridError> {
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(GridError::BadSpacing { dx });
        }
        if n < 16 {
            return Err(GridError::TooFewPoints { n });
        }
        Ok(GridSpec { x_min, dx, n })
    }

    /// Symmetric grid with `n` cells spanning `[-half_span, half_span]`.
    pub fn symmetric(half_span: f64, n: usize) -> Result<Self, GridError> {
        let dx = 2.0 * half_span / n as f64;
        Self::new(-half_span + 0.5 * dx, dx, n).map(|mut g| {
            // Put a cell center exactly at the origin when n is even.
            if n % 2 == 0 {
                g.x_min = -(n as f64 / 2.0) * dx;
            }
            g
        })
    }

    /// Default grid of the crate: 2^16 cells spanning [-64, 64] in units of
    /// the position box width. Adequate for qualitative work; quantitative
    /// box-pair pipelines should use [`GridSpec::for_box_pair`].
    pub fn default_grid() -> Self {
        Self::symmetric(64.0, 1 << 16).expect("static grid parameters")
    }

    /// Grid sized for simultaneous work with a position box of width `l` and
    /// a momentum box of width `b`.
    ///
    /// The span covers at least `span_factor * max(l, 2*pi*hbar/b)` on each
    /// side and the cell count is nudged so that `b/2` falls on a boundary of
    /// the conjugate momentum grid. Without that alignment the square-root
    /// coverage weighting of the momentum box edge cells inflates coherent
    /// sums (overlaps, interference terms) at first order in `dp/b`.
    pub fn for_box_pair(l: f64, b: f64, span_factor: f64, cells_per_feature: usize) -> Self {
        let feature = l.min(2.0 * std::f64::consts::PI * HBAR / b);
        let span_target = span_factor * l.max(2.0 * std::f64::consts::PI * HBAR / b);
        // dx = l / odd keeps the position box edges on cell boundaries.
        let mut odd = (l / (feature / cells_per_feature as f64)).round() as i64;
        if odd % 2 == 0 {
            odd += 1;
        }
        let dx = l / odd as f64;
        let n_target = (2.0 * span_target / dx).round() as i64;
        // Choose even n near the target minimizing the distance of
        // (b/2)/dp = n*dx*b/(4*pi*hbar) from a half-integer. Stay within a
        // small window of the target so the span is respected.
        let window = (n_target / 10).max(200);
        let mut best_n = n_target + (n_target & 1);
        let mut best_mis = f64::INFINITY;
        let lo = (n_target - window).max(64);
        for n in (lo..n_target + window).filter(|n| n % 2 == 0) {
            let cells = n as f64 * dx * b / (4.0 * std::f64::consts::PI * HBAR);
            let mis = (cells - 0.5 - (cells - 0.5).round()).abs();
            if mis < best_mis {
                best_mis = mis;
                best_n = n;
            }
        }
        let n = best_n as usize;
        GridSpec {
            x_min: -(n as f64 / 2.0) * dx,
            dx,
            n,
        }
    }

    /// Cell center.
    #[inline]
    pub fn point(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    /// Lower edge of the first cell.
    pub fn support_min(&self) -> f64 {
        self.x_min - 0.5 * self.dx
    }

    /// Upper edge of the last cell.
    pub fn support_max(&self) -> f64 {
        self.point(self.n - 1) + 0.5 * self.dx
    }

    pub fn span(&self) -> f64 {
        self.n as f64 * self.dx
    }

    pub fn contains_interval(&self, lo: f64, hi: f64) -> bool {
        lo >= self.support_min() - 1e-12 * self.dx && hi <= self.support_max() + 1e-12 * self.dx
    }

    /// Index of the cell whose center is closest to `x`.
    pub fn index_of(&self, x: f64) -> usize {
        let j = ((x - self.x_min) / self.dx).round();
        (j.max(0.0) as usize).min(self.n - 1)
    }

    /// Fractional coverage of cell `j` by the interval `[lo, hi]`, in `[0, 1]`.
    #[inline]
    pub fn cell_coverage(&self, j: usize, lo: f64, hi: f64) -> f64 {
        let c = self.point(j);
        let a = (c - 0.5 * self.dx).max(lo);
        let b = (c + 0.5 * self.dx).min(hi);
        ((b - a) / self.dx).clamp(0.0, 1.0)
    }

    /// Cells overlapping `[lo, hi]` with their fractional coverage.
    pub fn coverage(&self, lo: f64, hi: f64) -> impl Iterator<Item = (usize, f64)> + '_ {
        let j0 = (((lo - self.support_min()) / self.dx).floor().max(0.0)) as usize;
        let j1 = ((((hi - self.support_min()) / self.dx).ceil()) as usize).min(self.n);
        (j0.min(self.n)..j1).filter_map(move |j| {
            let c = self.cell_coverage(j, lo, hi);
            (c > 0.0).then_some((j, c))
        })
    }

    /// Conjugate momentum grid of the standard unitary Fourier transform:
    /// `n` cells with `dp = 2*pi*hbar/(n*dx)` centered on zero.
    pub fn conjugate(&self) -> GridSpec {
        let dp = 2.0 * std::f64::consts::PI * HBAR / (self.n as f64 * self.dx);
        GridSpec {
            x_min: -((self.n / 2) as f64) * dp,
            dx: dp,
            n: self.n,
        }
    }

    /// Momentum axis natural to the Wigner transform built on this grid:
    /// half the spacing of [`GridSpec::conjugate`], covering the central half
    /// of the Nyquist band. Summing a Wigner distribution over this axis
    /// reproduces the position density exactly.
    pub fn wigner_p_axis(&self) -> GridSpec {
        let dp = std::f64::consts::PI * HBAR / (self.n as f64 * self.dx);
        GridSpec {
            x_min: -((self.n / 2) as f64) * dp,
            dx: dp,
            n: self.n,
        }
    }
}
