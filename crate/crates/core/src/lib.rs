//! Numerical study of free-particle propagation for superpositions of
//! position and momentum box states: grid states and unitary transforms,
//! exact spectral propagation, the Wigner phase-space region calculus, and
//! the particle-propagation inequality.
//!
//! Everything internal runs in natural units (`hbar = 1`, `mass = 1`,
//! position box width as the length unit); laboratory parameters of the
//! single-photon realization enter through [`units::LabParams`].

pub mod error;
mod fourier;
pub mod grid;
pub mod inequality;
pub mod propagation;
pub mod quasi;
pub mod state;
pub mod units;
pub mod wigner;

pub use error::{ConsistencyError, GridError, StateError, WignerError};
pub use grid::GridSpec;
pub use inequality::{
    box_leak_analytic, box_overlap_analytic, defect_probability, defect_sweep, ideal_defect,
    locate_defect_maximum, minimal_joint_probability, wigner_consistency, ConsistencyRecord,
    IdealOutcome, PropagationTriple,
};
pub use propagation::{
    farfield_position_state, lab_plane_to_time, lens_fourier, propagate_free,
    recombined_density, sinc, stationary_momentum_state, Evolved, FarField, PhaseConvention,
};
pub use quasi::QuasiProbabilities;
pub use state::{
    box_momentum, box_position, gaussian, overlap, overlap_approx, projection_probability,
    superpose, OverlapApprox, Representation, Wavefunction,
};
pub use units::{LabParams, NaturalUnits, HBAR};
pub use wigner::{
    negativity_bounds, region_integrals, region_integrals_streaming, shear_evolve,
    wigner_from_mixture, wigner_from_pure, NegativityBounds, OperatorPair, RegionReport,
    WignerGrid, WignerHeader,
};
