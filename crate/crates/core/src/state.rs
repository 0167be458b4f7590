//! Wavefunctions on uniform grids: box states, superpositions, overlaps,
//! and interval probabilities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::StateError;
use crate::fourier;
use crate::grid::GridSpec;
use crate::units::HBAR;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Representation {
    Position,
    Momentum,
}

/// Complex amplitudes on a uniform grid, normalized so that
/// `sum |psi_j|^2 dx = 1`.
#[derive(Debug, Clone)]
pub struct Wavefunction {
    pub grid: GridSpec,
    pub representation: Representation,
    pub amplitudes: Vec<Complex64>,
}

/// Result of the closed-form overlap approximation `sqrt(L*B/(2 pi hbar))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapApprox {
    pub value: f64,
    /// Set when `L*B/(2 pi hbar) > 0.1`, where the approximation degrades.
    pub beyond_validity: bool,
}

fn grids_compatible(a: &GridSpec, b: &GridSpec) -> bool {
    a.n == b.n
        && (a.dx - b.dx).abs() <= 1e-9 * a.dx
        && (a.x_min - b.x_min).abs() <= 1e-6 * a.dx
}

impl Wavefunction {
    pub fn new(
        grid: GridSpec,
        representation: Representation,
        amplitudes: Vec<Complex64>,
    ) -> Self {
        assert_eq!(grid.n, amplitudes.len(), "amplitude count must match grid");
        Wavefunction {
            grid,
            representation,
            amplitudes,
        }
    }

    /// `sum |psi_j|^2 dx`.
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.dx
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sq().sqrt();
        if n > 0.0 {
            let inv = 1.0 / n;
            for a in &mut self.amplitudes {
                *a *= inv;
            }
        }
    }

    /// Probability density `|psi_j|^2` on the grid.
    pub fn density(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Switch representation with the unitary centered Fourier transform.
    /// Applying it twice returns the original state.
    pub fn fourier_transform(&self) -> Wavefunction {
        match self.representation {
            Representation::Position => {
                let (g, amps) = fourier::forward(&self.grid, &self.amplitudes);
                Wavefunction::new(g, Representation::Momentum, amps)
            }
            Representation::Momentum => {
                let x_grid = self.grid.conjugate();
                let amps = fourier::backward(&self.grid, &self.amplitudes, &x_grid);
                Wavefunction::new(x_grid, Representation::Position, amps)
            }
        }
    }

    /// The state in position representation (no-op if already there).
    pub fn to_position(&self) -> Wavefunction {
        match self.representation {
            Representation::Position => self.clone(),
            Representation::Momentum => self.fourier_transform(),
        }
    }

    /// The state in momentum representation (no-op if already there).
    pub fn to_momentum(&self) -> Wavefunction {
        match self.representation {
            Representation::Momentum => self.clone(),
            Representation::Position => self.fourier_transform(),
        }
    }

    /// Probability of finding the coordinate in
    /// `[center - width/2, center + width/2]`, with boundary cells weighted
    /// by fractional coverage.
    pub fn interval_probability(&self, center: f64, width: f64) -> Result<f64, StateError> {
        let (lo, hi) = (center - 0.5 * width, center + 0.5 * width);
        if !self.grid.contains_interval(lo, hi) {
            return Err(StateError::IntervalOutsideGrid { lo, hi });
        }
        let p: f64 = self
            .grid
            .coverage(lo, hi)
            .map(|(j, c)| c * self.amplitudes[j].norm_sqr())
            .sum::<f64>()
            * self.grid.dx;
        Ok(p)
    }
}

/// Box state of width `l` in position representation: amplitude
/// `1/sqrt(l)` for `|x| <= l/2`, boundary cells carry square-root coverage
/// so the discrete norm is exactly one.
pub fn box_position(l: f64, grid: &GridSpec) -> Result<Wavefunction, StateError> {
    box_state(l, grid, Representation::Position)
}

/// Box state of width `b` in momentum representation; mirror of
/// [`box_position`]. Its position representation (via
/// [`Wavefunction::fourier_transform`]) approximates
/// `sqrt(b/(2 pi hbar)) * sinc(b x / (2 hbar))`.
pub fn box_momentum(b: f64, grid: &GridSpec) -> Result<Wavefunction, StateError> {
    box_state(b, grid, Representation::Momentum)
}

fn box_state(
    width: f64,
    grid: &GridSpec,
    representation: Representation,
) -> Result<Wavefunction, StateError> {
    if width < 2.0 * grid.dx {
        return Err(StateError::GridTooCoarse {
            width,
            dx: grid.dx,
        });
    }
    if !grid.contains_interval(-0.5 * width, 0.5 * width) {
        return Err(StateError::GridTooNarrow {
            width,
            span: grid.span(),
        });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); grid.n];
    for (j, c) in grid.coverage(-0.5 * width, 0.5 * width) {
        amps[j] = Complex64::new((c / width).sqrt(), 0.0);
    }
    Ok(Wavefunction::new(*grid, representation, amps))
}

/// Normalized Gaussian `exp(-(x-center)^2/(4 sigma^2)) * exp(i p0 x / hbar)`;
/// `sigma` is the standard deviation of the position density.
pub fn gaussian(center: f64, sigma: f64, p0: f64, grid: &GridSpec) -> Wavefunction {
    let mut amps: Vec<Complex64> = grid
        .points()
        .map(|x| {
            let env = (-(x - center).powi(2) / (4.0 * sigma * sigma)).exp();
            Complex64::from_polar(env, p0 * x / HBAR)
        })
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>() * grid.dx;
    let inv = 1.0 / norm.sqrt();
    for a in &mut amps {
        *a *= inv;
    }
    Wavefunction::new(*grid, Representation::Position, amps)
}

/// Discrete inner product `sum conj(a_j) b_j dx`. Operands must share a grid
/// and representation.
pub fn overlap(a: &Wavefunction, b: &Wavefunction) -> Result<Complex64, StateError> {
    if a.representation != b.representation {
        return Err(StateError::RepresentationMismatch);
    }
    if !grids_compatible(&a.grid, &b.grid) {
        return Err(StateError::GridMismatch);
    }
    let s: Complex64 = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(s * a.grid.dx)
}

/// `|<a|psi>|^2`.
pub fn projection_probability(psi: &Wavefunction, onto: &Wavefunction) -> Result<f64, StateError> {
    Ok(overlap(onto, psi)?.norm_sqr())
}

/// Closed-form approximation of the box overlap, `sqrt(L*B/(2 pi hbar))`.
pub fn overlap_approx(l: f64, b: f64) -> OverlapApprox {
    assert!(l > 0.0 && b > 0.0, "box widths must be positive");
    let sigma = l * b / (2.0 * std::f64::consts::PI * HBAR);
    OverlapApprox {
        value: sigma.sqrt(),
        beyond_validity: sigma > 0.1,
    }
}

/// Normalized superposition `(a + e^{i phase} b)/sqrt(2(1 + Re[e^{i phase}<a|b>]))`.
pub fn superpose(
    a: &Wavefunction,
    b: &Wavefunction,
    relative_phase: f64,
) -> Result<Wavefunction, StateError> {
    let s = overlap(a, b)?;
    let rot = Complex64::from_polar(1.0, relative_phase);
    let denominator = 2.0 * (1.0 + (rot * s).re);
    if denominator < 1e-12 {
        return Err(StateError::DegenerateSuperposition { denominator });
    }
    let inv = 1.0 / denominator.sqrt();
    let amps: Vec<Complex64> = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| (x + rot * y) * inv)
        .collect();
    Ok(Wavefunction::new(a.grid, a.representation, amps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn box_position_norm_and_center_value() {
        // dx = 0.01 spanning [-4, 4] with cell edges on the 0.01 lattice, so
        // the box edges at +-0.5 coincide with cell boundaries.
        let grid = GridSpec::new(-3.995, 0.01, 800).unwrap();
        let psi = box_position(1.0, &grid).unwrap();
        assert!(close(psi.norm_sq(), 1.0, 1e-12));
        // <x=0|L> = 1/sqrt(L) = 1 for L = 1
        let j0 = grid.index_of(0.0);
        assert!(close(psi.amplitudes[j0].re, 1.0, 1e-12));
        // full support interval probability
        assert!(close(psi.interval_probability(0.0, 1.0).unwrap(), 1.0, 1e-12));
        // a centered grid with the box edge splitting a cell keeps the norm
        // exact as well
        let centered = GridSpec::symmetric(4.0, 800).unwrap();
        let psi2 = box_position(1.0, &centered).unwrap();
        assert!(close(psi2.norm_sq(), 1.0, 1e-12));
    }

    #[test]
    fn box_errors() {
        let grid = GridSpec::symmetric(4.0, 64).unwrap();
        assert!(matches!(
            box_position(0.1, &grid),
            Err(StateError::GridTooCoarse { .. })
        ));
        assert!(matches!(
            box_position(9.0, &grid),
            Err(StateError::GridTooNarrow { .. })
        ));
    }

    #[test]
    fn box_momentum_center_value() {
        let grid = GridSpec::symmetric(4.0, 512).unwrap();
        let phi = box_momentum(1.0, &grid).unwrap();
        let j0 = grid.index_of(0.0);
        assert!(close(phi.amplitudes[j0].re, 1.0, 1e-12));
    }

    #[test]
    fn interval_outside_grid_errors() {
        let grid = GridSpec::symmetric(4.0, 64).unwrap();
        let psi = box_position(1.0, &grid).unwrap();
        assert!(matches!(
            psi.interval_probability(0.0, 100.0),
            Err(StateError::IntervalOutsideGrid { .. })
        ));
    }

    #[test]
    fn superpose_identical_states_is_identity() {
        let grid = GridSpec::symmetric(4.0, 256).unwrap();
        let psi = box_position(1.0, &grid).unwrap();
        let sup = superpose(&psi, &psi, 0.0).unwrap();
        let diff: f64 = sup
            .amplitudes
            .iter()
            .zip(&psi.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .sum();
        assert!(diff < 1e-9);
    }

    #[test]
    fn superpose_rejects_degenerate() {
        let grid = GridSpec::symmetric(4.0, 256).unwrap();
        let psi = box_position(1.0, &grid).unwrap();
        assert!(matches!(
            superpose(&psi, &psi, std::f64::consts::PI),
            Err(StateError::DegenerateSuperposition { .. })
        ));
    }

    #[test]
    fn overlap_of_disjoint_boxes_is_zero() {
        let grid = GridSpec::symmetric(8.0, 1024).unwrap();
        let mut a = box_position(1.0, &grid).unwrap();
        // shift a by +3 via index rotation (grid symmetric, box well inside)
        let shift = (3.0 / grid.dx).round() as usize;
        a.amplitudes.rotate_right(shift);
        let b = box_position(1.0, &grid).unwrap();
        let s = overlap(&a, &b).unwrap();
        assert!(s.norm() < 1e-12);
    }

    #[test]
    fn overlap_approx_values_and_flag() {
        let near = overlap_approx(1.0, 2.0 * std::f64::consts::PI * 0.0309);
        assert!(close(near.value, 0.1757840, 1e-6));
        assert!(!near.beyond_validity);
        let opt = overlap_approx(1.0, 2.0 * std::f64::consts::PI * 0.024);
        assert!(close(opt.value, 0.1549193, 1e-6));
        let far = overlap_approx(1.0, 2.0 * std::f64::consts::PI * 0.2);
        assert!(far.beyond_validity);
    }

    #[test]
    fn gaussian_momentum_width_is_minimum_uncertainty() {
        let grid = GridSpec::symmetric(32.0, 1 << 12).unwrap();
        let sigma_x = 0.7;
        let psi = gaussian(0.0, sigma_x, 0.0, &grid);
        let phi = psi.to_momentum();
        let dens = phi.density();
        let dp = phi.grid.dx;
        let mean: f64 = phi
            .grid
            .points()
            .zip(&dens)
            .map(|(p, d)| p * d)
            .sum::<f64>()
            * dp;
        let var: f64 = phi
            .grid
            .points()
            .zip(&dens)
            .map(|(p, d)| (p - mean).powi(2) * d)
            .sum::<f64>()
            * dp;
        let expected = HBAR / (2.0 * sigma_x);
        assert!(close(var.sqrt(), expected, 1e-6));
    }

    #[test]
    fn fourier_roundtrip_and_parseval() {
        let grid = GridSpec::symmetric(16.0, 2048).unwrap();
        let psi = gaussian(1.3, 0.9, 2.0, &grid);
        let phi = psi.fourier_transform();
        assert!(close(phi.norm_sq(), 1.0, 1e-12));
        let back = phi.fourier_transform();
        let err: f64 = back
            .amplitudes
            .iter()
            .zip(&psi.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
            * grid.dx.sqrt();
        assert!(err < 1e-12, "roundtrip L2 error {err}");
    }

    #[test]
    fn box_momentum_density_is_sinc_squared() {
        // |<x|B>|^2 = (B/2 pi) sinc^2(Bx/2); check density at x = 0 and the
        // first zero at 2 pi / B on a box-pair grid.
        let sigma = 0.0309;
        let b = 2.0 * std::f64::consts::PI * sigma;
        let grid = GridSpec::for_box_pair(1.0, b, 8.0, 33);
        let phi = box_momentum(b, &grid.conjugate()).unwrap();
        let psi = phi.fourier_transform();
        let j0 = psi.grid.index_of(0.0);
        let center = psi.amplitudes[j0].norm_sqr();
        assert!(close(center, b / (2.0 * std::f64::consts::PI), 1e-2 * center));
        let zero = 2.0 * std::f64::consts::PI / b;
        assert!(close(zero, 32.36, 0.02)); // natural units, L = 1 convention
        let jz = psi.grid.index_of(zero);
        assert!(psi.amplitudes[jz].norm_sqr() < 1e-4 * center);
    }
}
