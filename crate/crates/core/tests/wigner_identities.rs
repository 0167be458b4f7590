//! Identity tests for the phase-space machinery on random smooth states:
//! marginals, normalization, the defect identity, and the equivalence of
//! shear evolution with spectral propagation.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phasepath_core::{
    defect_probability, gaussian, propagate_free, region_integrals, shear_evolve, superpose,
    wigner_consistency, wigner_from_pure, GridSpec, PropagationTriple, Representation,
    Wavefunction,
};

/// Random superposition of two or three well-separated Gaussian packets,
/// supported well inside the grid and the Wigner momentum band.
fn random_state(rng: &mut ChaCha8Rng, grid: &GridSpec) -> Wavefunction {
    let k = rng.gen_range(2..=3);
    let centers = [-6.0, 0.0, 6.0];
    let mut psi: Option<Wavefunction> = None;
    for i in 0..k {
        let c = centers[i] + rng.gen_range(-1.0..1.0);
        let s = rng.gen_range(0.8..1.5);
        let p = rng.gen_range(-2.0..2.0);
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let g = gaussian(c, s, p, grid);
        psi = Some(match psi {
            None => g,
            Some(prev) => match superpose(&prev, &g, phase) {
                Ok(s) => s,
                Err(_) => prev,
            },
        });
    }
    psi.unwrap()
}

/// Momentum density of `psi` evaluated exactly on the half-spaced Wigner
/// momentum axis, via a zero-padded transform.
fn padded_momentum_density(psi: &Wavefunction, p_axis: &GridSpec) -> Vec<f64> {
    let n = psi.grid.n;
    let mut amps = vec![Complex64::new(0.0, 0.0); 2 * n];
    amps[n / 2..n / 2 + n].copy_from_slice(&psi.amplitudes);
    let pad_grid = GridSpec {
        x_min: -(n as f64) * psi.grid.dx,
        dx: psi.grid.dx,
        n: 2 * n,
    };
    let phi = Wavefunction::new(pad_grid, Representation::Position, amps).to_momentum();
    let start = phi.grid.index_of(p_axis.point(0));
    (0..p_axis.n)
        .map(|m| phi.amplitudes[start + m].norm_sqr())
        .collect()
}

#[test]
fn random_states_satisfy_wigner_identities() {
    let grid = GridSpec::symmetric(32.0, 1024).unwrap();
    let p_axis = grid.wigner_p_axis();
    let mut rng = ChaCha8Rng::seed_from_u64(20260810);
    // Interval geometry with edges deep in the tails of every generated state.
    let (l_int, b_int) = (9.0, 9.0);
    let t_m = 0.6;

    for trial in 0..12 {
        let psi = random_state(&mut rng, &grid);
        let w = wigner_from_pure(&psi, &p_axis).unwrap();

        // normalization
        let total = w.total();
        assert!((total - 1.0).abs() < 1e-6, "trial {trial}: norm {total}");

        // x marginal is exact
        let dens = psi.density();
        let l1_x: f64 = w
            .x_marginal()
            .iter()
            .zip(&dens)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * grid.dx;
        assert!(l1_x < 1e-9, "trial {trial}: x marginal L1 {l1_x}");

        // p marginal matches the padded-transform density
        let ref_p = padded_momentum_density(&psi, &p_axis);
        let l1_p: f64 = w
            .p_marginal()
            .iter()
            .zip(&ref_p)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * p_axis.dx;
        assert!(l1_p < 1e-6, "trial {trial}: p marginal L1 {l1_p}");

        // bounded by 1/(pi hbar)
        assert!(w.max_abs() <= (1.0 + 1e-3) / std::f64::consts::PI);

        // defect identity: direct grid probabilities vs region calculus
        let p_l = psi.interval_probability(0.0, l_int).unwrap();
        let phi = psi.to_momentum();
        let p_b = phi.interval_probability(0.0, b_int).unwrap();
        let evolved = propagate_free(&psi, t_m, 1.0).state;
        let m_int = l_int + b_int * t_m;
        let p_m = evolved.interval_probability(0.0, m_int).unwrap();
        let triple = PropagationTriple::new(p_l, p_b, p_m, l_int, b_int, t_m);
        let report = region_integrals(&w, l_int, b_int, t_m, 1.0).unwrap();

        // region identities hold as computed
        assert!((report.w_in + report.w_out - 1.0).abs() < 1e-12);
        assert!((report.w_in - (report.p_l + report.p_b - report.w_lb)).abs() < 1e-12);
        assert!((report.w_diag - (report.p_m - report.w_lb)).abs() < 1e-12);

        let rec = wigner_consistency(&triple, &report, 1e-6).unwrap();
        assert!(
            rec.consistent,
            "trial {trial}: defect {} vs regions {} (diff {})",
            rec.defect_direct, rec.defect_from_regions, rec.difference
        );

        // shear evolution equals spectral propagation
        let t = 0.3 + 0.1 * trial as f64 / 12.0;
        let w_prop = wigner_from_pure(&propagate_free(&psi, t, 1.0).state, &p_axis).unwrap();
        let w_shear = shear_evolve(&w, t, 1.0).unwrap();
        let l1: f64 = w_prop
            .values
            .iter()
            .zip(&w_shear.values)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            * grid.dx
            * p_axis.dx;
        assert!(l1 < 1e-3, "trial {trial}: shear vs propagation L1 {l1}");
    }
}

#[test]
fn positive_wigner_states_have_no_defect() {
    // Gaussians are Wigner-positive, so the defect is non-positive whatever
    // the intervals.
    let grid = GridSpec::symmetric(32.0, 1024).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..8 {
        let c = rng.gen_range(-2.0..2.0);
        let s = rng.gen_range(0.6..1.8);
        let p = rng.gen_range(-1.5..1.5);
        let psi = gaussian(c, s, p, &grid);
        let w = wigner_from_pure(&psi, &grid.wigner_p_axis()).unwrap();
        assert!(w.values.iter().all(|&v| v >= -1e-9));
        let (l_int, b_int, t_m) = (rng.gen_range(2.0..8.0), rng.gen_range(2.0..6.0), 0.5);
        let p_l = psi.interval_probability(0.0, l_int).unwrap();
        let p_b = psi
            .to_momentum()
            .interval_probability(0.0, b_int)
            .unwrap();
        let m_int = l_int + b_int * t_m;
        let p_m = propagate_free(&psi, t_m, 1.0)
            .state
            .interval_probability(0.0, m_int)
            .unwrap();
        let triple = PropagationTriple::new(p_l, p_b, p_m, l_int, b_int, t_m);
        assert!(
            defect_probability(&triple) <= 1e-9,
            "positive-Wigner state produced a defect"
        );
    }
}
