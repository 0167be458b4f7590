//! Unit conventions.
//!
//! Internally everything runs in natural units: `hbar = 1`, `mass = 1`, and
//! the position box width as the unit of length. The single dimensionless
//! parameter `sigma = L*B/(2*pi*hbar)` then controls all of the physics.
//! Laboratory quantities (photon wavelength, slit width, focal length) enter
//! only through [`LabParams`].

use serde::{Deserialize, Serialize};

/// Reduced Planck constant in natural units.
pub const HBAR: f64 = 1.0;

/// Natural-unit parameter set for a box pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaturalUnits {
    /// Fixed to 1.
    pub hbar: f64,
    /// Fixed to 1.
    pub mass: f64,
    /// Width of the position interval.
    pub box_l: f64,
    /// Width of the momentum interval.
    pub box_b: f64,
}

impl NaturalUnits {
    /// Box pair with `box_l = 1` and `box_b = 2*pi*sigma`.
    pub fn from_sigma(sigma: f64) -> Self {
        assert!(sigma > 0.0, "sigma must be positive");
        NaturalUnits {
            hbar: HBAR,
            mass: 1.0,
            box_l: 1.0,
            box_b: 2.0 * std::f64::consts::PI * sigma,
        }
    }

    pub fn from_widths(box_l: f64, box_b: f64) -> Self {
        assert!(box_l > 0.0 && box_b > 0.0, "widths must be positive");
        NaturalUnits {
            hbar: HBAR,
            mass: 1.0,
            box_l,
            box_b,
        }
    }

    /// `sigma = L*B/(2*pi*hbar)`.
    pub fn sigma(&self) -> f64 {
        self.box_l * self.box_b / (2.0 * std::f64::consts::PI * self.hbar)
    }

    /// Intermediate time `t_M = m*L/B` at which `B*t_M/m = L`.
    pub fn t_m(&self) -> f64 {
        self.mass * self.box_l / self.box_b
    }

    /// Width `M = L + B*t/m` of the classically allowed interval at time `t`.
    pub fn interval_m(&self, t: f64) -> f64 {
        self.box_l + self.box_b * t / self.mass
    }
}

/// Laboratory parameters of the single-photon realization.
///
/// All fields in SI units (meters).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabParams {
    /// Photon wavelength.
    pub wavelength: f64,
    /// Slit width `d`; also the unit of transverse length.
    pub slit_width_d: f64,
    /// Focal length of the transform lens.
    pub focal_length_f: f64,
}

impl LabParams {
    /// Defaults of the experiment: 810 nm, 50 um slit, 100 mm lens.
    pub fn paper_defaults() -> Self {
        LabParams {
            wavelength: 810e-9,
            slit_width_d: 50e-6,
            focal_length_f: 100e-3,
        }
    }

    /// Wavenumber `k = 2*pi/lambda` (1/m).
    pub fn wavenumber_k(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.wavelength
    }

    /// Momentum interval width produced by Fourier-transforming the slit:
    /// `B = h*d/(lambda*f) = hbar*k*d/f` (SI momentum per hbar_SI omitted —
    /// only ratios enter the natural-unit mapping).
    pub fn sigma(&self) -> f64 {
        self.slit_width_d * self.slit_width_d / (self.wavelength * self.focal_length_f)
    }

    pub fn natural(&self) -> NaturalUnits {
        NaturalUnits::from_sigma(self.sigma())
    }

    /// Distance along the axis corresponding to the intermediate time:
    /// `c*t_M = L_lab*f/d`. With `L_lab = d` this is the focal length.
    pub fn ct_m(&self, l_lab: f64) -> f64 {
        l_lab * self.focal_length_f / self.slit_width_d
    }

    /// First minimum of the slit diffraction pattern in the focal plane:
    /// `lambda*f/d` (m).
    pub fn first_minimum(&self) -> f64 {
        self.wavelength * self.focal_length_f / self.slit_width_d
    }

    /// Natural (dimensionless) time for a detection plane a distance `z`
    /// downstream of the `t = 0` plane. Uses the paraxial photon mapping
    /// with effective mass `hbar*k/c`, i.e. `t_nat = z*lambda/(2*pi*d^2)`.
    pub fn plane_to_natural_time(&self, z: f64) -> f64 {
        z * self.wavelength / (2.0 * std::f64::consts::PI * self.slit_width_d.powi(2))
    }

    /// Convert a natural position to a lab position (m).
    pub fn x_to_lab(&self, x_nat: f64) -> f64 {
        x_nat * self.slit_width_d
    }

    /// Convert a lab position (m) to natural units.
    pub fn x_from_lab(&self, x_lab: f64) -> f64 {
        x_lab / self.slit_width_d
    }

    /// Scale factor mapping natural momentum to the focal-plane position
    /// coordinate `x_f = f*p/(hbar*k)` expressed in natural length units.
    /// Equal to `t_M/m` for `L_lab = d`: the lens performs the quarter-period
    /// rotation of phase space.
    pub fn lens_scale(&self) -> f64 {
        self.wavelength * self.focal_length_f
            / (2.0 * std::f64::consts::PI * self.slit_width_d.powi(2))
    }
}
