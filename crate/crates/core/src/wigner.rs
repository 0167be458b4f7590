//! Wigner quasi-probability distributions and the phase-space region
//! calculus.
//!
//! The transform is evaluated per position column as
//! `W(x, p) = (1/pi hbar) * sum_y psi*(x+y) psi(x-y) exp(2 i p y / hbar) dy`
//! with `y` on the state's own grid. On the natural momentum axis
//! ([`GridSpec::wigner_p_axis`]) the position marginal of the result equals
//! the state's position density to machine precision.

use std::io::Write as IoWrite;

use num_complex::Complex64;
use rustfft::FftDirection;
use serde::{Deserialize, Serialize};

use crate::error::WignerError;
use crate::fourier::plan;
use crate::grid::GridSpec;
use crate::quasi::QuasiProbabilities;
use crate::state::{box_momentum, box_position, overlap, Representation, Wavefunction};
use crate::units::HBAR;

/// Real-valued quasi-probability on a rectangular (x, p) grid, stored
/// row-major with the momentum index fastest.
#[derive(Debug, Clone)]
pub struct WignerGrid {
    pub x_axis: GridSpec,
    pub p_axis: GridSpec,
    pub values: Vec<f64>,
}

/// Integrals of a Wigner distribution over the interval regions:
/// strip probabilities, the joint rectangle, and the derived in/out/diagonal
/// quasi-probabilities.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RegionReport {
    pub p_l: f64,
    pub p_b: f64,
    pub p_m: f64,
    pub w_lb: f64,
    pub w_in: f64,
    pub w_out: f64,
    pub w_diag: f64,
    pub l_interval: f64,
    pub b_interval: f64,
    pub m_interval: f64,
    pub t_m: f64,
}

/// Upper bounds implied by `W <= 1/(pi hbar)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct NegativityBounds {
    /// `L*B/(pi hbar)`: maximum of the joint rectangle integral.
    pub w_lb_max: f64,
    /// `1 - P(L) - P(B) + L*B/(pi hbar)`: upper bound on the outside
    /// integral; negative values certify Wigner negativity.
    pub w_out_max: f64,
}

impl WignerGrid {
    #[inline]
    pub fn value(&self, j: usize, m: usize) -> f64 {
        self.values[j * self.p_axis.n + m]
    }

    /// `sum W dx dp`.
    pub fn total(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.x_axis.dx * self.p_axis.dx
    }

    /// Position marginal `int W dp` on the x axis.
    pub fn x_marginal(&self) -> Vec<f64> {
        let np = self.p_axis.n;
        (0..self.x_axis.n)
            .map(|j| self.values[j * np..(j + 1) * np].iter().sum::<f64>() * self.p_axis.dx)
            .collect()
    }

    /// Momentum marginal `int W dx` on the p axis.
    pub fn p_marginal(&self) -> Vec<f64> {
        let np = self.p_axis.n;
        let mut out = vec![0.0; np];
        for j in 0..self.x_axis.n {
            let row = &self.values[j * np..(j + 1) * np];
            for (m, v) in row.iter().enumerate() {
                out[m] += v;
            }
        }
        for v in &mut out {
            *v *= self.x_axis.dx;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }

    /// Sub-grid restricted to a window with optional striding. Marginal
    /// identities do not survive decimation; intended for export.
    pub fn window(
        &self,
        x_range: (f64, f64),
        p_range: (f64, f64),
        stride_x: usize,
        stride_p: usize,
    ) -> WignerGrid {
        let sj: Vec<usize> = (0..self.x_axis.n)
            .filter(|&j| {
                let x = self.x_axis.point(j);
                x >= x_range.0 && x <= x_range.1
            })
            .step_by(stride_x.max(1))
            .collect();
        let sm: Vec<usize> = (0..self.p_axis.n)
            .filter(|&m| {
                let p = self.p_axis.point(m);
                p >= p_range.0 && p <= p_range.1
            })
            .step_by(stride_p.max(1))
            .collect();
        let x_axis = GridSpec {
            x_min: sj.first().map_or(0.0, |&j| self.x_axis.point(j)),
            dx: self.x_axis.dx * stride_x.max(1) as f64,
            n: sj.len(),
        };
        let p_axis = GridSpec {
            x_min: sm.first().map_or(0.0, |&m| self.p_axis.point(m)),
            dx: self.p_axis.dx * stride_p.max(1) as f64,
            n: sm.len(),
        };
        let mut values = Vec::with_capacity(sj.len() * sm.len());
        for &j in &sj {
            for &m in &sm {
                values.push(self.value(j, m));
            }
        }
        WignerGrid {
            x_axis,
            p_axis,
            values,
        }
    }

    /// Dense CSV export with header `x,p,w`.
    pub fn write_csv<W: IoWrite>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "x,p,w")?;
        for j in 0..self.x_axis.n {
            let x = self.x_axis.point(j);
            for m in 0..self.p_axis.n {
                writeln!(out, "{:.9e},{:.9e},{:.9e}", x, self.p_axis.point(m), self.value(j, m))?;
            }
        }
        Ok(())
    }

    /// Row-major little-endian f64 dump; pair with [`WignerHeader`].
    pub fn write_binary<W: IoWrite>(&self, out: &mut W) -> std::io::Result<()> {
        for v in &self.values {
            out.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn header(&self) -> WignerHeader {
        WignerHeader {
            x_axis: self.x_axis,
            p_axis: self.p_axis,
            layout: "row-major, momentum index fastest, f64 little-endian".to_string(),
            units: "natural: hbar = 1, mass = 1, position box width = 1".to_string(),
        }
    }
}

/// JSON sidecar describing a binary Wigner dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WignerHeader {
    pub x_axis: GridSpec,
    pub p_axis: GridSpec,
    pub layout: String,
    pub units: String,
}

/// Mapping from a requested p axis onto the natural Wigner momentum lattice.
struct PAxisMap {
    /// Natural row index of each requested row.
    rows: Vec<usize>,
}

fn map_p_axis(x_grid: &GridSpec, p_axis: &GridSpec) -> Result<PAxisMap, WignerError> {
    let natural = x_grid.wigner_p_axis();
    let dp_nat = natural.dx;
    let limit = 2.0 * std::f64::consts::PI * HBAR / x_grid.span();
    if p_axis.dx > limit * (1.0 + 1e-9) {
        return Err(WignerError::Resolution {
            requested: p_axis.dx,
            natural: dp_nat,
            limit,
        });
    }
    let stride = p_axis.dx / dp_nat;
    if (stride - stride.round()).abs() > 1e-6 || stride.round() < 1.0 {
        return Err(WignerError::Resolution {
            requested: p_axis.dx,
            natural: dp_nat,
            limit,
        });
    }
    let stride = stride.round() as i64;
    let offset = (p_axis.x_min - natural.x_min) / dp_nat;
    if (offset - offset.round()).abs() > 1e-6 {
        return Err(WignerError::Resolution {
            requested: p_axis.dx,
            natural: dp_nat,
            limit,
        });
    }
    let offset = offset.round() as i64;
    let n = x_grid.n as i64;
    let mut rows = Vec::with_capacity(p_axis.n);
    for m in 0..p_axis.n as i64 {
        let idx = offset + stride * m;
        if idx < 0 || idx >= n {
            return Err(WignerError::Resolution {
                requested: p_axis.dx,
                natural: dp_nat,
                limit,
            });
        }
        rows.push(idx as usize);
    }
    Ok(PAxisMap { rows })
}

/// Build a Wigner grid from a column filler: `fill(j, buf)` writes the lag
/// correlation `g_j(k) = <x_j - y_k| rho |x_j + y_k>` into `buf` in FFT
/// ordering with the parity fold applied.
fn build_wigner(
    x_grid: &GridSpec,
    p_axis: &GridSpec,
    mut fill: impl FnMut(usize, &mut [Complex64]),
) -> Result<WignerGrid, WignerError> {
    let map = map_p_axis(x_grid, p_axis)?;
    let n = x_grid.n;
    let fft = plan(n, FftDirection::Inverse);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    let mut values = vec![0.0; n * p_axis.n];
    let scale = x_grid.dx / (std::f64::consts::PI * HBAR);
    for j in 0..n {
        buf.fill(Complex64::new(0.0, 0.0));
        fill(j, &mut buf);
        fft.process(&mut buf);
        let row = &mut values[j * p_axis.n..(j + 1) * p_axis.n];
        for (m, &idx) in map.rows.iter().enumerate() {
            row[m] = buf[idx].re * scale;
        }
    }
    Ok(WignerGrid {
        x_axis: *x_grid,
        p_axis: *p_axis,
        values,
    })
}

#[inline]
fn fft_slot(k: i64, n: usize) -> usize {
    (((k % n as i64) + n as i64) % n as i64) as usize
}

#[inline]
fn lag_parity(k: i64) -> f64 {
    if k & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn fill_pair_column(
    j: usize,
    buf: &mut [Complex64],
    a: &[Complex64],
    b: &[Complex64],
    weight: f64,
) {
    let n = buf.len();
    let kmax = j.min(n - 1 - j) as i64;
    for k in -kmax..=kmax {
        let plus = (j as i64 + k) as usize;
        let minus = (j as i64 - k) as usize;
        let g = 0.5 * (a[plus].conj() * b[minus] + b[plus].conj() * a[minus]);
        buf[fft_slot(k, n)] += g * (weight * lag_parity(k));
    }
}

/// Wigner transform of a pure state in position representation, evaluated on
/// `p_axis`. The axis must lie on the natural conjugate lattice
/// ([`GridSpec::wigner_p_axis`]); pass that axis for exact marginals.
pub fn wigner_from_pure(psi: &Wavefunction, p_axis: &GridSpec) -> Result<WignerGrid, WignerError> {
    if psi.representation != Representation::Position {
        return Err(crate::error::StateError::RepresentationMismatch.into());
    }
    let amps = &psi.amplitudes;
    build_wigner(&psi.grid, p_axis, |j, buf| {
        fill_pair_column(j, buf, amps, amps, 1.0)
    })
}

/// Wigner transform of the mixed state
/// `w_l |L><L| + w_b |B><B| + w_inter (|L><B| + |B><L|)/(2 <B|L>)`
/// built from box states of widths `l` and `b` on `x_grid`.
pub fn wigner_from_mixture(
    weights: &QuasiProbabilities,
    l: f64,
    b: f64,
    x_grid: &GridSpec,
    p_axis: &GridSpec,
) -> Result<WignerGrid, WignerError> {
    let sum = weights.sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(WignerError::NotNormalized { sum });
    }
    let psi_l = box_position(l, x_grid)?;
    let psi_b = box_momentum(b, &x_grid.conjugate())?.to_position();
    let s = overlap(&psi_b, &psi_l)?.re;
    let la = &psi_l.amplitudes;
    let ba = &psi_b.amplitudes;
    let (w_l, w_b, w_x) = (weights.w_l, weights.w_b, weights.w_inter / s);
    build_wigner(x_grid, p_axis, |j, buf| {
        fill_pair_column(j, buf, la, la, w_l);
        fill_pair_column(j, buf, ba, ba, w_b);
        fill_pair_column(j, buf, la, ba, w_x);
    })
}

/// Free evolution of a Wigner distribution: `W'(x, p) = W(x - p t/m, p)`,
/// implemented as a band-limited (trigonometric) shift of each momentum row.
pub fn shear_evolve(w: &WignerGrid, t: f64, mass: f64) -> Result<WignerGrid, WignerError> {
    let nx = w.x_axis.n;
    let np = w.p_axis.n;
    let span = w.x_axis.span();
    // Reject shears that wrap rows carrying weight around the periodic grid.
    let mut max_shift = 0.0_f64;
    for m in 0..np {
        let mut mass_row = 0.0;
        for j in 0..nx {
            mass_row += w.value(j, m).abs();
        }
        if mass_row * w.x_axis.dx * w.p_axis.dx > 1e-12 {
            max_shift = max_shift.max((w.p_axis.point(m) * t / mass).abs());
        }
    }
    if max_shift > 0.5 * span {
        return Err(WignerError::ShearOutOfRange { max_shift, span });
    }
    let fwd = plan(nx, FftDirection::Forward);
    let inv = plan(nx, FftDirection::Inverse);
    let mut values = vec![0.0; nx * np];
    let mut buf = vec![Complex64::new(0.0, 0.0); nx];
    for m in 0..np {
        let shift = w.p_axis.point(m) * t / mass;
        for j in 0..nx {
            buf[j] = Complex64::new(w.value(j, m), 0.0);
        }
        fwd.process(&mut buf);
        for (q, v) in buf.iter_mut().enumerate() {
            let q_signed = if q <= nx / 2 {
                q as f64
            } else {
                q as f64 - nx as f64
            };
            let kappa = 2.0 * std::f64::consts::PI * q_signed / (nx as f64 * w.x_axis.dx);
            *v *= Complex64::from_polar(1.0, -kappa * shift);
        }
        inv.process(&mut buf);
        let inv_n = 1.0 / nx as f64;
        for j in 0..nx {
            values[j * np + m] = buf[j].re * inv_n;
        }
    }
    Ok(WignerGrid {
        x_axis: w.x_axis,
        p_axis: w.p_axis,
        values,
    })
}

/// Region integrals of a dense Wigner grid for position interval `l_int`,
/// momentum interval `b_int`, and the sheared strip at time `t_m`.
pub fn region_integrals(
    w: &WignerGrid,
    l_int: f64,
    b_int: f64,
    t_m: f64,
    mass: f64,
) -> Result<RegionReport, WignerError> {
    if !w.x_axis.contains_interval(-0.5 * l_int, 0.5 * l_int) {
        return Err(WignerError::IntervalOutsideGrid {
            lo: -0.5 * l_int,
            hi: 0.5 * l_int,
        });
    }
    if !w.p_axis.contains_interval(-0.5 * b_int, 0.5 * b_int) {
        return Err(WignerError::IntervalOutsideGrid {
            lo: -0.5 * b_int,
            hi: 0.5 * b_int,
        });
    }
    let m_int = l_int + b_int * t_m / mass;
    let np = w.p_axis.n;
    let cell = w.x_axis.dx * w.p_axis.dx;

    let mut p_l = 0.0;
    let mut p_b = 0.0;
    let mut w_lb = 0.0;
    let mut p_m = 0.0;

    let cov_x: Vec<(usize, f64)> = w.x_axis.coverage(-0.5 * l_int, 0.5 * l_int).collect();
    let cov_p: Vec<(usize, f64)> = w.p_axis.coverage(-0.5 * b_int, 0.5 * b_int).collect();

    for &(j, cx) in &cov_x {
        let row = &w.values[j * np..(j + 1) * np];
        p_l += cx * row.iter().sum::<f64>() * cell;
        for &(m, cp) in &cov_p {
            w_lb += cx * cp * row[m] * cell;
        }
    }
    for &(m, cp) in &cov_p {
        let mut col = 0.0;
        for j in 0..w.x_axis.n {
            col += w.value(j, m);
        }
        p_b += cp * col * cell;
    }
    for m in 0..np {
        let shift = w.p_axis.point(m) * t_m / mass;
        let lo = (-0.5 * m_int - shift).max(w.x_axis.support_min());
        let hi = (0.5 * m_int - shift).min(w.x_axis.support_max());
        if lo >= hi {
            continue;
        }
        for (j, cx) in w.x_axis.coverage(lo, hi) {
            p_m += cx * w.value(j, m) * cell;
        }
    }
    let w_in = p_l + p_b - w_lb;
    Ok(RegionReport {
        p_l,
        p_b,
        p_m,
        w_lb,
        w_in,
        w_out: 1.0 - w_in,
        w_diag: p_m - w_lb,
        l_interval: l_int,
        b_interval: b_int,
        m_interval: m_int,
        t_m,
    })
}

/// Weighted symmetrized operator term for the streaming region pass:
/// `weight * (|a><b| + |b><a|)/2`.
pub struct OperatorPair<'a> {
    pub weight: f64,
    pub a: &'a Wavefunction,
    pub b: &'a Wavefunction,
}

/// Region integrals computed directly from operator components without
/// materializing the Wigner grid. The momentum integrals use the closed-form
/// band kernels of the lag transform, so no momentum quantization enters.
pub fn region_integrals_streaming(
    pairs: &[OperatorPair<'_>],
    l_int: f64,
    b_int: f64,
    t_m: f64,
    mass: f64,
) -> Result<RegionReport, WignerError> {
    assert!(!pairs.is_empty());
    let grid = pairs[0].a.grid;
    for p in pairs {
        assert_eq!(p.a.representation, Representation::Position);
        assert_eq!(p.b.representation, Representation::Position);
        assert_eq!(p.a.grid.n, grid.n);
    }
    if !grid.contains_interval(-0.5 * l_int, 0.5 * l_int) {
        return Err(WignerError::IntervalOutsideGrid {
            lo: -0.5 * l_int,
            hi: 0.5 * l_int,
        });
    }
    let m_int = l_int + b_int * t_m / mass;
    let n = grid.n;
    let dx = grid.dx;
    // sin(b_int y)/(pi y) band kernel for the momentum strip, indexed by lag.
    let ker_b: Vec<f64> = (0..n)
        .map(|k| {
            let y = k as f64 * dx;
            if k == 0 {
                b_int / (std::f64::consts::PI * HBAR)
            } else {
                (b_int * y / HBAR).sin() / (std::f64::consts::PI * y)
            }
        })
        .collect();
    let q_m = 0.5 * m_int * mass / t_m;
    let ker_m: Vec<f64> = (0..n)
        .map(|k| {
            let y = k as f64 * dx;
            if k == 0 {
                2.0 * q_m / (std::f64::consts::PI * HBAR)
            } else {
                (2.0 * q_m * y / HBAR).sin() / (std::f64::consts::PI * y)
            }
        })
        .collect();

    let mut p_l = 0.0;
    let mut p_b = 0.0;
    let mut w_lb = 0.0;
    let mut p_m = 0.0;

    for j in 0..n {
        let x_j = grid.point(j);
        let cov_l = grid.cell_coverage(j, -0.5 * l_int, 0.5 * l_int);
        let kmax = j.min(n - 1 - j);

        let mut g0 = Complex64::new(0.0, 0.0);
        for p in pairs {
            g0 += p.weight * p.a.amplitudes[j].conj() * p.b.amplitudes[j];
        }
        let dens = g0.re;

        // e^{2 i mid y_k} phase recurrence for the sheared strip,
        // mid = -x_j m / t_m.
        let theta = -2.0 * x_j * mass / t_m * dx / HBAR;
        let step = Complex64::from_polar(1.0, theta);
        let mut phase = Complex64::new(1.0, 0.0);

        let mut acc_b = dens * ker_b[0];
        let mut acc_m = dens * ker_m[0];
        for k in 1..=kmax {
            let mut g = Complex64::new(0.0, 0.0);
            for p in pairs {
                g += p.weight
                    * 0.5
                    * (p.a.amplitudes[j + k].conj() * p.b.amplitudes[j - k]
                        + p.b.amplitudes[j + k].conj() * p.a.amplitudes[j - k]);
            }
            phase *= step;
            acc_b += 2.0 * g.re * ker_b[k];
            acc_m += 2.0 * (g * phase).re * ker_m[k];
        }
        let p_b_col = acc_b * dx;
        p_l += cov_l * dens * dx;
        p_b += p_b_col * dx;
        w_lb += cov_l * p_b_col * dx;
        p_m += acc_m * dx * dx;
    }
    let w_in = p_l + p_b - w_lb;
    Ok(RegionReport {
        p_l,
        p_b,
        p_m,
        w_lb,
        w_in,
        w_out: 1.0 - w_in,
        w_diag: p_m - w_lb,
        l_interval: l_int,
        b_interval: b_int,
        m_interval: m_int,
        t_m,
    })
}

/// Bounds from `W <= 1/(pi hbar)`: `W_LB <= L*B/(pi hbar)` and
/// `W_out <= 1 - P(L) - P(B) + L*B/(pi hbar)`.
pub fn negativity_bounds(p_l: f64, p_b: f64, l: f64, b: f64) -> NegativityBounds {
    let w_lb_max = l * b / (std::f64::consts::PI * HBAR);
    NegativityBounds {
        w_lb_max,
        w_out_max: 1.0 - p_l - p_b + w_lb_max,
    }
}
