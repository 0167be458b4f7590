//! Free-space evolution: exact spectral propagation, far-field closed forms,
//! the lens Fourier transform, and the lab-plane/time mapping.

use num_complex::Complex64;

use crate::error::StateError;
use crate::state::{Representation, Wavefunction};
use crate::units::{LabParams, HBAR};

/// Result of [`propagate_free`].
#[derive(Debug, Clone)]
pub struct Evolved {
    pub state: Wavefunction,
    /// Set when the chirp phase advances by more than pi per momentum cell
    /// somewhere on the grid; spectral propagation is then aliased.
    pub aliasing: bool,
}

/// Evolve a free particle of mass `mass` for time `t` by applying
/// `exp(-i p^2 t / (2 m hbar))` in momentum representation. Negative `t`
/// runs the evolution backward. The state returns in its input
/// representation.
pub fn propagate_free(psi: &Wavefunction, t: f64, mass: f64) -> Evolved {
    if t == 0.0 {
        return Evolved {
            state: psi.clone(),
            aliasing: false,
        };
    }
    let input_rep = psi.representation;
    let mut phi = psi.to_momentum();
    let dp = phi.grid.dx;
    let p_max = phi
        .grid
        .support_min()
        .abs()
        .max(phi.grid.support_max().abs());
    // phase gradient d(p^2 t / 2m hbar)/dp = p t / (m hbar)
    let aliasing = p_max * t.abs() / (mass * HBAR) * dp > std::f64::consts::PI;
    for (m, a) in phi.amplitudes.iter_mut().enumerate() {
        let p = phi.grid.point(m);
        *a *= Complex64::from_polar(1.0, -p * p * t / (2.0 * mass * HBAR));
    }
    let state = match input_rep {
        Representation::Momentum => phi,
        Representation::Position => phi.fourier_transform(),
    };
    Evolved { state, aliasing }
}

/// `sin(u)/u` with the removable singularity filled in.
#[inline]
pub fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-8 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Far-field amplitude of [`propagate_free`] applied to a position box of
/// width `l` at time `t > 0`:
/// `sqrt(m l/(2 pi hbar t)) * sinc(m l x/(2 hbar t)) * exp(i(m x^2/(2 hbar t) - pi/4))`.
#[derive(Debug, Clone, Copy)]
pub struct FarField {
    pub amplitude: Complex64,
    /// True when `hbar t/(m l^2) >= 1`, where the closed form is reliable.
    pub in_far_field: bool,
}

pub fn farfield_position_state(x: f64, t: f64, l: f64, mass: f64) -> Result<FarField, StateError> {
    if !(t > 0.0) {
        return Err(StateError::IntervalOutsideGrid {
            lo: t,
            hi: f64::INFINITY,
        });
    }
    let magnitude_scale = (mass * l / (2.0 * std::f64::consts::PI * HBAR * t)).sqrt();
    let envelope = magnitude_scale * sinc(mass * l * x / (2.0 * HBAR * t));
    let phase = mass * x * x / (2.0 * HBAR * t) - std::f64::consts::FRAC_PI_4;
    Ok(FarField {
        amplitude: envelope * Complex64::from_polar(1.0, phase),
        in_far_field: HBAR * t / (mass * l * l) >= 1.0,
    })
}

/// Stationary position amplitude of the momentum box of width `b`:
/// `sqrt(b/(2 pi hbar)) * sinc(b x/(2 hbar))`. Real and even; zeros at
/// `x = 2 pi hbar n / b`.
pub fn stationary_momentum_state(x: f64, b: f64) -> f64 {
    (b / (2.0 * std::f64::consts::PI * HBAR)).sqrt() * sinc(b * x / (2.0 * HBAR))
}

/// Ideal lens Fourier transform: the focal-plane position density is the
/// momentum density under `x_f = f p/(hbar k)`. The input must be in
/// position representation; the focal length is taken from `lab` unless
/// `focal_length` overrides it (meters).
pub fn lens_fourier(
    psi: &Wavefunction,
    focal_length: Option<f64>,
    lab: &LabParams,
) -> Result<Wavefunction, StateError> {
    if psi.representation != Representation::Position {
        return Err(StateError::RepresentationMismatch);
    }
    let f = focal_length.unwrap_or(lab.focal_length_f);
    // x_f = p * scale in natural units; scale = lambda f / (2 pi d^2)
    let scale = lab.wavelength * f / (2.0 * std::f64::consts::PI * lab.slit_width_d.powi(2));
    let phi = psi.to_momentum();
    let grid = crate::grid::GridSpec {
        x_min: phi.grid.x_min * scale,
        dx: phi.grid.dx * scale,
        n: phi.grid.n,
    };
    let inv_sqrt = 1.0 / scale.sqrt();
    let amps = phi.amplitudes.iter().map(|a| a * inv_sqrt).collect();
    Ok(Wavefunction::new(grid, Representation::Position, amps))
}

/// Effective dimensionless propagation time of a detection plane `z` meters
/// downstream of the reference plane.
pub fn lab_plane_to_time(z: f64, lab: &LabParams) -> f64 {
    lab.plane_to_natural_time(z)
}

/// Relative-phase convention for recombining the box-state components at the
/// intermediate plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum PhaseConvention {
    /// Relative phase adjusted so the interference at the origin of the
    /// intermediate plane is fully constructive (the experimental
    /// calibration; reproduces the published ideal-theory numbers).
    #[default]
    CenterConstructive,
    /// No adjustment: the equal superposition prepared at t = 0 is
    /// propagated as is. The quadratic-phase origin offset of the spreading
    /// component then reduces the central interference.
    AsPrepared,
}

/// Density at time `t` of the recombined components
/// `(psi_a + e^{i theta} psi_b)/sqrt(2(1+s))`, with `theta` fixed by the
/// phase convention and `s` the (real) overlap of the two components.
pub fn recombined_density(
    u_a: &Wavefunction,
    u_b: &Wavefunction,
    s: f64,
    convention: PhaseConvention,
) -> Vec<f64> {
    let rot = match convention {
        PhaseConvention::AsPrepared => Complex64::new(1.0, 0.0),
        PhaseConvention::CenterConstructive => {
            let j0 = u_a.grid.index_of(0.0);
            let d0 = u_a.amplitudes[j0] * u_b.amplitudes[j0].conj();
            if d0.norm() > 0.0 {
                (d0 / d0.norm()).conj()
            } else {
                Complex64::new(1.0, 0.0)
            }
        }
    };
    let norm = 1.0 / (2.0 * (1.0 + s));
    u_a.amplitudes
        .iter()
        .zip(&u_b.amplitudes)
        .map(|(a, b)| (a * rot + b).norm_sqr() * norm)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use crate::state::{box_momentum, gaussian};

    #[test]
    fn zero_time_is_identity() {
        let grid = GridSpec::symmetric(16.0, 1024).unwrap();
        let psi = gaussian(0.0, 1.0, 0.5, &grid);
        let out = propagate_free(&psi, 0.0, 1.0);
        assert!(!out.aliasing);
        let diff: f64 = out
            .state
            .amplitudes
            .iter()
            .zip(&psi.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .sum();
        assert_eq!(diff, 0.0);
    }

    #[test]
    fn propagation_is_unitary_and_composes() {
        let grid = GridSpec::symmetric(32.0, 2048).unwrap();
        let psi = gaussian(-2.0, 0.8, 1.5, &grid);
        let once = propagate_free(&psi, 0.7, 1.0).state;
        assert!((once.norm_sq() - 1.0).abs() < 1e-9);
        let twice = propagate_free(&once, 0.5, 1.0).state;
        let direct = propagate_free(&psi, 1.2, 1.0).state;
        let err: f64 = twice
            .amplitudes
            .iter()
            .zip(&direct.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
            * grid.dx.sqrt();
        assert!(err < 1e-9, "composition L2 error {err}");
    }

    #[test]
    fn momentum_density_invariant() {
        let grid = GridSpec::symmetric(32.0, 2048).unwrap();
        let psi = gaussian(0.0, 1.1, -0.7, &grid);
        let before = psi.to_momentum().density();
        let after = propagate_free(&psi, 2.0, 1.0).state.to_momentum().density();
        let l1: f64 = before
            .iter()
            .zip(&after)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * psi.to_momentum().grid.dx;
        assert!(l1 < 1e-12, "momentum density L1 drift {l1}");
    }

    #[test]
    fn momentum_box_barely_evolves_at_t_m() {
        let sigma = 0.0309;
        let b = 2.0 * std::f64::consts::PI * sigma;
        let t_m = 1.0 / b;
        let grid = GridSpec::for_box_pair(1.0, b, 8.0, 33);
        let phi = box_momentum(b, &grid.conjugate()).unwrap();
        let psi = phi.to_position();
        let evolved = propagate_free(&psi, t_m, 1.0).state;
        let l1: f64 = psi
            .density()
            .iter()
            .zip(&evolved.density())
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * grid.dx;
        assert!(l1 < 1e-3, "position density L1 change {l1}");
    }

    #[test]
    fn farfield_center_magnitude_and_phase() {
        let (t, l, mass) = (5.0, 1.0, 1.0);
        let ff = farfield_position_state(0.0, t, l, mass).unwrap();
        let expected = (mass * l / (2.0 * std::f64::consts::PI * HBAR * t)).sqrt();
        assert!((ff.amplitude.norm() - expected).abs() < 1e-12);
        assert!((ff.amplitude.arg() + std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!(ff.in_far_field);
        assert!(!farfield_position_state(0.0, 0.5, l, mass)
            .unwrap()
            .in_far_field);
        assert!(farfield_position_state(0.0, -1.0, l, mass).is_err());
    }

    #[test]
    fn farfield_integrates_to_one() {
        let (t, l, mass) = (5.15, 1.0, 1.0);
        let grid = GridSpec::symmetric(2000.0, 1 << 18).unwrap();
        let total: f64 = grid
            .points()
            .map(|x| {
                farfield_position_state(x, t, l, mass)
                    .unwrap()
                    .amplitude
                    .norm_sqr()
            })
            .sum::<f64>()
            * grid.dx;
        assert!((total - 1.0).abs() < 0.01, "got {total}");
    }

    #[test]
    fn stationary_momentum_state_zeros() {
        let b = 2.0 * std::f64::consts::PI * 0.0309;
        let x0 = 2.0 * std::f64::consts::PI * HBAR / b;
        assert!(stationary_momentum_state(x0, b).abs() < 1e-12);
        let center = stationary_momentum_state(0.0, b);
        assert!((center - (b / (2.0 * std::f64::consts::PI)).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn aliasing_flag_trips_for_absurd_times() {
        let grid = GridSpec::symmetric(8.0, 256).unwrap();
        let psi = gaussian(0.0, 1.0, 0.0, &grid);
        assert!(propagate_free(&psi, 1e6, 1.0).aliasing);
        assert!(!propagate_free(&psi, 0.01, 1.0).aliasing);
    }
}
