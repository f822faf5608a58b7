//! Continuum-k effective solution of the edge problem.
//!
//! Relabelling the ladder states as `|k; +> = |2k - 1/2, +>` and
//! `|k; -> = |2k + 1/2, ->` and treating `k` as continuous turns the edge
//! Hamiltonian into a shifted hopping problem in `k`. A unitary `Q` built
//! from quarter-unit shift operators `exp(∓(d/dk)/4)` cancels the diagonal,
//! and expanding to first order in `d/dk` leaves a Dirac-oscillator form
//! `2 sqrt(eps) (a^dag sigma_+ + a sigma_-)` with
//! `a = k / sqrt(eps) + (sqrt(eps)/2) d/dk`. Its spectrum is the
//! graphene-like square-root ladder `sign(n) sqrt(4 eps |n|)` and its
//! eigenstates are shifted harmonic-oscillator doublets.

use ndarray::Array1;
use num_complex::Complex64 as C64;

use crate::edge::{Chirality, EdgeBasis};

/// `sign(n) sqrt(4 eps |n|)`, the effective edge spectrum.
pub fn effective_energy(eps: f64, n: i64) -> f64 {
    assert!(eps > 0.0, "effective spectrum requires eps > 0");
    (n.signum() as f64) * (4.0 * eps * n.unsigned_abs() as f64).sqrt()
}

/// Uniform symmetric `k` grid whose spacing divides 1/4 exactly, so that the
/// quarter-unit shifts of the `Q` transform are pure index offsets and the
/// integer `k` points used for basis mapping lie on the grid.
#[derive(Debug, Clone)]
pub struct KGrid {
    points: Array1<f64>,
    step: f64,
    /// number of grid steps in a shift by 1/4
    quarter_steps: usize,
}

impl KGrid {
    /// Default grid: at least 2048 points spanning `±10 sqrt(eps)`.
    pub fn for_eps(eps: f64) -> Self {
        assert!(eps > 0.0);
        let half_width = 10.0 * eps.sqrt();
        let target = 2.0 * half_width / 2048.0;
        let quarter_steps = (0.25 / target).ceil() as usize;
        let step = 0.25 / quarter_steps as f64;
        let n_half = (half_width / step).ceil() as usize;
        let points =
            Array1::from_iter((-(n_half as i64)..=n_half as i64).map(|i| i as f64 * step));
        Self {
            points,
            step,
            quarter_steps,
        }
    }

    pub fn points(&self) -> &Array1<f64> {
        &self.points
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Grid index of integer `k`, if it lies in the window.
    fn index_of_integer(&self, k: i64) -> Option<usize> {
        let center = (self.points.len() - 1) as i64 / 2;
        let idx = center + k * 4 * self.quarter_steps as i64;
        (idx >= 0 && (idx as usize) < self.points.len()).then_some(idx as usize)
    }

    /// `f(k - quarters/4)` as a pure resampling; values shifted in from
    /// outside the window are zero (all states here decay like a Gaussian).
    fn shift_quarter(&self, values: &Array1<f64>, quarters: i64) -> Array1<f64> {
        let offset = quarters * self.quarter_steps as i64;
        let n = values.len() as i64;
        Array1::from_iter((0..n).map(|i| {
            let src = i - offset;
            if src >= 0 && src < n {
                values[src as usize]
            } else {
                0.0
            }
        }))
    }

    fn quadrature(&self, a: &Array1<f64>, b: &Array1<f64>) -> f64 {
        a.iter().zip(b.iter()).map(|(x, y)| x * y).sum::<f64>() * self.step
    }
}

/// Harmonic-oscillator eigenstate of the ladder operator
/// `a = k / sqrt(eps) + (sqrt(eps)/2) d/dk`, numerically `L2`-normalised.
#[derive(Debug, Clone)]
pub struct OscillatorState {
    pub n: usize,
    pub eps: f64,
    pub values: Array1<f64>,
}

/// `phi_n(k)`: Hermite function of the dimensionless variable
/// `x = k sqrt(2/eps)`; the ground state is `∝ exp(-k^2 / eps)`.
pub fn oscillator_state(eps: f64, n: usize, grid: &KGrid) -> OscillatorState {
    assert!(eps > 0.0);
    let scale = (2.0 / eps).sqrt();
    // orthonormal Hermite-function recurrence, stable to high n
    let mut prev: Option<Array1<f64>> = None;
    let mut cur: Array1<f64> = grid
        .points()
        .mapv(|k| (-(k * scale) * (k * scale) / 2.0).exp());
    for m in 0..n {
        let fm = m as f64;
        let next = Array1::from_iter(grid.points().iter().enumerate().map(|(i, &k)| {
            let x = k * scale;
            let mut v = x * (2.0 / (fm + 1.0)).sqrt() * cur[i];
            if let Some(p) = &prev {
                v -= (fm / (fm + 1.0)).sqrt() * p[i];
            }
            v
        }));
        prev = Some(std::mem::replace(&mut cur, next));
    }
    let norm = grid.quadrature(&cur, &cur).sqrt();
    cur.mapv_inplace(|v| v / norm);
    OscillatorState {
        n,
        eps,
        values: cur,
    }
}

/// Two-component eigenstate of the effective Hamiltonian in the continuum-k
/// representation, with the `Q` transform applied as exact quarter shifts.
#[derive(Debug, Clone)]
pub struct EffectiveEigenstate {
    pub n: i64,
    pub plus: Array1<f64>,
    pub minus: Array1<f64>,
}

/// Eigenstate `n` of the effective edge Hamiltonian:
/// `Q phi_0 |+>` for `n = 0`, and the shifted doublet
/// `Q (sign(n) phi_|n|, phi_{|n|-1}) / sqrt(2)` for `|n| >= 1`.
pub fn effective_eigenstate(eps: f64, n: i64, grid: &KGrid) -> EffectiveEigenstate {
    let (upper, lower): (Array1<f64>, Array1<f64>) = if n == 0 {
        let phi0 = oscillator_state(eps, 0, grid).values;
        let inv_sqrt2 = 1.0 / std::f64::consts::SQRT_2;
        (phi0.mapv(|v| v * inv_sqrt2), phi0.mapv(|v| v * inv_sqrt2))
    } else {
        let phi_n = oscillator_state(eps, n.unsigned_abs() as usize, grid).values;
        let phi_m = oscillator_state(eps, (n.unsigned_abs() - 1) as usize, grid).values;
        let sgn = n.signum() as f64;
        let up = Array1::from_iter(
            phi_n
                .iter()
                .zip(phi_m.iter())
                .map(|(a, b)| 0.5 * (sgn * a - b)),
        );
        let lo = Array1::from_iter(
            phi_n
                .iter()
                .zip(phi_m.iter())
                .map(|(a, b)| 0.5 * (sgn * a + b)),
        );
        (up, lo)
    };
    // Q = (1/sqrt 2) [[e^{-d/4}, -e^{-d/4}], [e^{d/4}, e^{d/4}]]: the upper
    // component is shifted to k - 1/4, the lower to k + 1/4
    EffectiveEigenstate {
        n,
        plus: grid.shift_quarter(&upper, 1),
        minus: grid.shift_quarter(&lower, -1),
    }
}

/// Overlap `∫ (a_+ b_+ + a_- b_-) dk` of two effective eigenstates.
pub fn eigenstate_overlap(a: &EffectiveEigenstate, b: &EffectiveEigenstate, grid: &KGrid) -> f64 {
    grid.quadrature(&a.plus, &b.plus) + grid.quadrature(&a.minus, &b.minus)
}

/// Samples an effective eigenstate on the integer-`k` points of an edge
/// basis, returning normalised coefficients in basis order. The `+` ladder
/// component sits at `j = 2k - 1/2`, the `-` component at `j = 2k + 1/2`.
pub fn eigenstate_on_basis(eps: f64, n: i64, basis: &EdgeBasis, grid: &KGrid) -> Array1<C64> {
    let state = effective_eigenstate(eps, n, grid);
    let mut coeffs = Array1::<C64>::zeros(basis.dim());
    for (i, s) in basis.states.iter().enumerate() {
        let (k_twice, component) = match s.chirality {
            Chirality::Plus => (s.j.twice() + 1, &state.plus),
            Chirality::Minus => (s.j.twice() - 1, &state.minus),
        };
        debug_assert_eq!(k_twice % 4, 0);
        if let Some(idx) = grid.index_of_integer(k_twice / 4) {
            coeffs[i] = C64::from(component[idx]);
        }
    }
    let norm = crate::numerics::norm(&coeffs);
    coeffs.mapv_inplace(|c| c / C64::from(norm));
    coeffs
}
