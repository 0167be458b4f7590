//! Unitary centered discrete Fourier transform between position and momentum
//! representations.
//!
//! For a grid centered on the origin (`x_min = -(n/2) dx`) the continuum
//! kernel phases reduce to exact parity signs, so the discrete map
//!
//! ```text
//! phi_m = dx/sqrt(2 pi hbar) * sum_j psi_j exp(-i p_m x_j / hbar)
//! ```
//!
//! is implemented as two sign folds around a plain FFT. It is exactly
//! unitary in the weighted norms `sum |psi|^2 dx` and `sum |phi|^2 dp`.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::grid::GridSpec;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

pub(crate) fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(n, direction))
}

fn assert_centered(grid: &GridSpec) {
    let expected = -((grid.n / 2) as f64) * grid.dx;
    debug_assert!(
        (grid.x_min - expected).abs() <= 1e-9 * grid.dx.abs() * grid.n as f64,
        "Fourier transforms require grids centered on the origin"
    );
}

#[inline]
fn parity(i: usize) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Forward map (position -> momentum) on a centered grid. Returns the
/// conjugate grid and the transformed amplitudes.
pub(crate) fn forward(grid: &GridSpec, amps: &[Complex64]) -> (GridSpec, Vec<Complex64>) {
    assert_centered(grid);
    let n = grid.n;
    let mut buf: Vec<Complex64> = amps
        .iter()
        .enumerate()
        .map(|(j, a)| a * parity(j))
        .collect();
    plan(n, FftDirection::Forward).process(&mut buf);
    let conj = grid.conjugate();
    let scale = grid.dx / (2.0 * std::f64::consts::PI).sqrt();
    let half_parity = parity(n / 2);
    for (m, v) in buf.iter_mut().enumerate() {
        *v *= scale * parity(m) * half_parity;
    }
    (conj, buf)
}

/// Inverse map (momentum -> position). `x_grid` must be the grid whose
/// conjugate is `p_grid`; passing it explicitly avoids rounding drift on
/// round trips.
pub(crate) fn backward(p_grid: &GridSpec, amps: &[Complex64], x_grid: &GridSpec) -> Vec<Complex64> {
    assert_centered(p_grid);
    assert_centered(x_grid);
    debug_assert_eq!(p_grid.n, x_grid.n);
    let n = p_grid.n;
    let mut buf: Vec<Complex64> = amps
        .iter()
        .enumerate()
        .map(|(m, a)| a * parity(m))
        .collect();
    plan(n, FftDirection::Inverse).process(&mut buf);
    let scale = p_grid.dx / (2.0 * std::f64::consts::PI).sqrt();
    let half_parity = parity(n / 2);
    for (j, v) in buf.iter_mut().enumerate() {
        *v *= scale * parity(j) * half_parity;
    }
    buf
}
