//! The particle-propagation inequality: defect probability, consistency with
//! the Wigner region calculus, and the ideal-theory pipeline for the equal
//! superposition of box states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::ConsistencyError;
use crate::grid::GridSpec;
use crate::propagation::{recombined_density, PhaseConvention};
use crate::state::{box_momentum, Representation, Wavefunction};
use crate::units::{NaturalUnits, HBAR};
use crate::wigner::RegionReport;

/// The three measured probabilities with the interval geometry they refer to.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PropagationTriple {
    pub p_l: f64,
    pub p_b: f64,
    pub p_m: f64,
    pub l: f64,
    pub b: f64,
    pub t_m: f64,
}

impl PropagationTriple {
    pub fn new(p_l: f64, p_b: f64, p_m: f64, l: f64, b: f64, t_m: f64) -> Self {
        for (name, p) in [("p_l", p_l), ("p_b", p_b), ("p_m", p_m)] {
            assert!((-1e-9..=1.0 + 1e-9).contains(&p), "{name} = {p} out of [0,1]");
        }
        PropagationTriple {
            p_l,
            p_b,
            p_m,
            l,
            b,
            t_m,
        }
    }

    /// `M = L + B t_M / m` with unit mass.
    pub fn m_interval(&self) -> f64 {
        self.l + self.b * self.t_m
    }
}

/// Largest lower bound on the joint probability of `L` and `B` from the two
/// marginals alone: `max(0, P(L) + P(B) - 1)`.
pub fn minimal_joint_probability(p_l: f64, p_b: f64) -> f64 {
    (p_l + p_b - 1.0).max(0.0)
}

/// `P(L) + P(B) - 1 - P(M)`; positive values are incompatible with straight
/// line motion.
pub fn defect_probability(triple: &PropagationTriple) -> f64 {
    triple.p_l + triple.p_b - 1.0 - triple.p_m
}

/// Cross-check of a directly measured triple against a Wigner region report
/// over the same geometry: the defect must equal `-(W_out + W_diag)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConsistencyRecord {
    pub defect_direct: f64,
    pub defect_from_regions: f64,
    pub difference: f64,
    pub consistent: bool,
    pub tolerance: f64,
}

pub fn wigner_consistency(
    triple: &PropagationTriple,
    report: &RegionReport,
    tolerance: f64,
) -> Result<ConsistencyRecord, ConsistencyError> {
    let geom = [
        ("L interval", triple.l, report.l_interval),
        ("B interval", triple.b, report.b_interval),
        ("t_M", triple.t_m, report.t_m),
    ];
    for (what, a, b) in geom {
        if (a - b).abs() > 1e-9 * a.abs().max(1.0) {
            return Err(ConsistencyError::InconsistentGeometry {
                what: format!("{what}: {a} vs {b}"),
            });
        }
    }
    let defect_direct = defect_probability(triple);
    let defect_from_regions = -(report.w_out + report.w_diag);
    let difference = defect_direct - defect_from_regions;
    Ok(ConsistencyRecord {
        defect_direct,
        defect_from_regions,
        difference,
        consistent: difference.abs() <= tolerance,
        tolerance,
    })
}

/// Sine integral `Si(x) = int_0^x sin(u)/u du` by series; adequate for the
/// small arguments (`x < 2`) used here.
pub fn sine_integral(x: f64) -> f64 {
    debug_assert!(x.abs() < 6.0, "series Si only for small arguments");
    let mut term = x;
    let mut sum = x;
    let x2 = x * x;
    for k in 1..24 {
        let k = k as f64;
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        let contrib = term / (2.0 * k + 1.0);
        sum += contrib;
        if contrib.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Exact overlap of the box pair, `<L|B> = (2/(pi sqrt(sigma))) Si(pi sigma / 2)`.
pub fn box_overlap_analytic(sigma: f64) -> f64 {
    2.0 / (std::f64::consts::PI * sigma.sqrt()) * sine_integral(std::f64::consts::PI * sigma / 2.0)
}

/// Probability mass of the momentum box state inside the position interval
/// of width `L` (equal, by symmetry, to the position box mass inside the
/// momentum interval of width `B`).
pub fn box_leak_analytic(sigma: f64) -> f64 {
    let half = std::f64::consts::PI * sigma / 2.0;
    2.0 / std::f64::consts::PI * (sine_integral(2.0 * half) - half.sin().powi(2) / half)
}

/// Ideal-theory evaluation of the inequality for the equal superposition at
/// a given `sigma`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IdealOutcome {
    pub sigma: f64,
    pub overlap: f64,
    pub p_l: f64,
    pub p_b: f64,
    pub p_m: f64,
    pub defect: f64,
    pub convention: PhaseConvention,
}

/// Evaluate the triple for the equal superposition of the box pair.
///
/// `P(L)` and `P(B)` follow from the closed forms
/// `(1 + 2 s + I)/(2 (1 + s))`; `P(M)` is obtained by full grid propagation
/// of the two components to `t_M` and integrating the recombined density
/// over the interval `M = 2 L`. The grid span is an odd multiple of
/// `pi hbar / B` so the momentum box is exactly resolvable.
pub fn ideal_defect(units: &NaturalUnits, convention: PhaseConvention) -> IdealOutcome {
    let sigma = units.sigma();
    let s = box_overlap_analytic(sigma);
    let leak = box_leak_analytic(sigma);
    let p_side = (1.0 + 2.0 * s + leak) / (2.0 * (1.0 + s));

    let (l, b, mass) = (units.box_l, units.box_b, units.mass);
    let t_m = units.t_m();

    // span = K pi hbar / B with odd K puts the momentum box edges exactly on
    // cell boundaries of the conjugate grid (dp = B/K).
    const K_ODD: f64 = 97.0;
    let span = K_ODD * std::f64::consts::PI * HBAR / b;
    let cells = 32.0;
    let n = ((2.0 * span * cells / l).log2().ceil().exp2() as usize).clamp(1 << 12, 1 << 22);
    let x_grid = GridSpec {
        x_min: -(n as f64 / 2.0) * (2.0 * span / n as f64),
        dx: 2.0 * span / n as f64,
        n,
    };
    let p_grid = x_grid.conjugate();

    // analytic momentum representation of the position box, renormalized on
    // the grid
    let mut phi_l: Vec<Complex64> = p_grid
        .points()
        .map(|p| {
            Complex64::new(
                (l / (2.0 * std::f64::consts::PI * HBAR)).sqrt()
                    * crate::propagation::sinc(l * p / (2.0 * HBAR)),
                0.0,
            )
        })
        .collect();
    let norm: f64 = phi_l.iter().map(|a| a.norm_sqr()).sum::<f64>() * p_grid.dx;
    let inv = 1.0 / norm.sqrt();
    for a in &mut phi_l {
        *a *= inv;
    }
    let mut phi_l = Wavefunction::new(p_grid, Representation::Momentum, phi_l);
    let mut phi_b = box_momentum(b, &p_grid).expect("aligned grid fits the momentum box");

    for phi in [&mut phi_l, &mut phi_b] {
        for (m, a) in phi.amplitudes.iter_mut().enumerate() {
            let p = p_grid.point(m);
            *a *= Complex64::from_polar(1.0, -p * p * t_m / (2.0 * mass * HBAR));
        }
    }
    let u_l = phi_l.fourier_transform();
    let u_b = phi_b.fourier_transform();
    let dens = recombined_density(&u_l, &u_b, s, convention);
    let m_int = units.interval_m(t_m);
    let p_m: f64 = u_l
        .grid
        .coverage(-0.5 * m_int, 0.5 * m_int)
        .map(|(j, c)| c * dens[j])
        .sum::<f64>()
        * u_l.grid.dx;

    IdealOutcome {
        sigma,
        overlap: s,
        p_l: p_side,
        p_b: p_side,
        p_m,
        defect: 2.0 * p_side - 1.0 - p_m,
        convention,
    }
}

/// Evaluate the ideal defect over a sigma lattice.
pub fn defect_sweep(sigmas: &[f64], convention: PhaseConvention) -> Vec<IdealOutcome> {
    sigmas
        .iter()
        .map(|&s| ideal_defect(&NaturalUnits::from_sigma(s), convention))
        .collect()
}

/// Locate the sigma maximizing the ideal defect on `[lo, hi]` with lattice
/// spacing `step`, refined by a parabolic fit through the bracketing points.
pub fn locate_defect_maximum(
    lo: f64,
    hi: f64,
    step: f64,
    convention: PhaseConvention,
) -> (f64, f64) {
    let mut sigmas = Vec::new();
    let mut s = lo;
    while s <= hi + 1e-12 {
        sigmas.push(s);
        s += step;
    }
    let outcomes = defect_sweep(&sigmas, convention);
    let (i, best) = outcomes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.defect.total_cmp(&b.1.defect))
        .expect("non-empty sweep");
    if i == 0 || i == outcomes.len() - 1 {
        return (best.sigma, best.defect);
    }
    let (ya, yb, yc) = (
        outcomes[i - 1].defect,
        best.defect,
        outcomes[i + 1].defect,
    );
    let denom = ya - 2.0 * yb + yc;
    if denom.abs() < 1e-18 {
        return (best.sigma, best.defect);
    }
    let refined = best.sigma + 0.5 * step * (ya - yc) / denom;
    (refined, yb)
}
