//! The reduced one-dimensional edge Hamiltonian and its Majorana zero modes.
//!
//! Low-energy edge states of the disk are labelled by a half-integer total
//! angular momentum `j` and a chirality `chi = ±1`; their energy is
//! `-chi j` in units of the edge level spacing `omega_0`. An in-plane Zeeman
//! field of dimensionless strength `eps` adds the Dirac mass term
//! `-2 eps sin(theta - phi) sigma_y`, which couples `|j, chi>` only to
//! `|j ± 1, -chi>`. The coupling graph therefore splits into two decoupled
//! alternating ladders; we diagonalize one of them (`J1`) and obtain the
//! other (`J2`) by angular-momentum inversion.
//!
//! Wavefunctions live on the ring with anti-periodic boundary conditions,
//! `psi(theta + 2 pi) = -psi(theta)`, because `j` is half-integer. Grid
//! representations therefore sample a full `[0, 4 pi)` period so that the
//! anti-periodicity is visible on the grid itself.

use std::f64::consts::PI;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::numerics::{self, eigh, HermitianOperator, NumericsError, SpectralDecomposition};

#[derive(Debug, Error)]
pub enum EdgeError {
    #[error("j_max must be a positive half-odd-integer, got {0}")]
    InvalidJMax(f64),
    #[error("Zeeman strength must be non-negative, got {0}")]
    NegativeZeeman(f64),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Exact half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    /// From twice the value; `twice` may be any integer.
    pub fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    /// From an `f64` that must be an exact multiple of 1/2.
    pub fn try_from_f64(x: f64) -> Option<Self> {
        let twice = (2.0 * x).round();
        if (2.0 * x - twice).abs() < 1e-9 {
            Some(Self { twice: twice as i64 })
        } else {
            None
        }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// True for 1/2, 3/2, ... (and their negatives).
    pub fn is_half_odd(self) -> bool {
        self.twice.rem_euclid(2) == 1 || self.twice.rem_euclid(2) == -1
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Propagation sense of an edge branch; eigenvalue of the chirality operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    pub fn sign(self) -> f64 {
        match self {
            Chirality::Plus => 1.0,
            Chirality::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

/// One edge state `|j, chi>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeState {
    pub j: HalfInt,
    pub chirality: Chirality,
}

/// Which of the two decoupled Zeeman ladders a basis spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subspace {
    J1,
    J2,
}

/// An ordered basis of edge states spanning one decoupled ladder.
///
/// `J1` lists `(j_max, -), (j_max - 1, +), ..., (-j_max + 1, -)`: `j`
/// decreases by one between consecutive entries while the chirality
/// alternates, so the Hamiltonian is tridiagonal in this order and the
/// angular-momentum operator is diagonal. `J2` is the `j -> -j` mirror.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeBasis {
    pub subspace: Subspace,
    pub j_max: HalfInt,
    pub states: Vec<EdgeState>,
}

impl EdgeBasis {
    pub fn subspace_j1(j_max: HalfInt) -> Result<Self, EdgeError> {
        Self::build(j_max, Subspace::J1)
    }

    pub fn subspace_j2(j_max: HalfInt) -> Result<Self, EdgeError> {
        Self::build(j_max, Subspace::J2)
    }

    fn build(j_max: HalfInt, subspace: Subspace) -> Result<Self, EdgeError> {
        if !j_max.is_half_odd() || j_max.twice <= 0 {
            return Err(EdgeError::InvalidJMax(j_max.value()));
        }
        let dim = j_max.twice as usize; // 2 * j_max entries
        let mut states = Vec::with_capacity(dim);
        for i in 0..dim {
            let chirality = if i % 2 == 0 { Chirality::Minus } else { Chirality::Plus };
            let j = match subspace {
                Subspace::J1 => HalfInt::from_twice(j_max.twice - 2 * i as i64),
                Subspace::J2 => HalfInt::from_twice(-j_max.twice + 2 * i as i64),
            };
            states.push(EdgeState { j, chirality });
        }
        Ok(Self {
            subspace,
            j_max,
            states,
        })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// Index of `(j, chi)` in this basis, if present.
    pub fn index_of(&self, j: HalfInt, chirality: Chirality) -> Option<usize> {
        let i = match self.subspace {
            Subspace::J1 => (self.j_max.twice - j.twice) / 2,
            Subspace::J2 => (j.twice + self.j_max.twice) / 2,
        };
        if i < 0 || i as usize >= self.states.len() {
            return None;
        }
        let s = self.states[i as usize];
        (s.j == j && s.chirality == chirality).then_some(i as usize)
    }

    /// Diagonal of the angular-momentum operator `p_theta` in this basis.
    pub fn momentum_diagonal(&self) -> Array1<f64> {
        self.states.iter().map(|s| s.j.value()).collect()
    }
}

/// Builds the edge Hamiltonian block `h = -p_theta sigma_z
/// - 2 eps sin(theta - phi) sigma_y` restricted to `basis`, in units of
/// `omega_0`.
///
/// The diagonal is `-chi j`; expanding the mass term in angular-momentum
/// states yields couplings `<j + d, -chi| h |j, chi> = -d chi eps e^{-i d phi}`
/// for `d = ±1`, so the matrix is tridiagonal with alternating sign pattern.
pub fn build_edge_hamiltonian_at_angle(
    basis: &EdgeBasis,
    eps: f64,
    phi: f64,
) -> Result<HermitianOperator, EdgeError> {
    if eps < 0.0 {
        return Err(EdgeError::NegativeZeeman(eps));
    }
    let n = basis.dim();
    let mut m = Array2::<C64>::zeros((n, n));
    for (i, s) in basis.states.iter().enumerate() {
        m[[i, i]] = C64::from(-s.chirality.sign() * s.j.value());
    }
    let phase = |d: f64| (-C64::i() * (d * phi)).exp();
    for (c, source) in basis.states.iter().enumerate() {
        for d in [-1_i64, 1_i64] {
            let target_j = HalfInt::from_twice(source.j.twice + 2 * d);
            if let Some(r) = basis.index_of(target_j, source.chirality.flipped()) {
                m[[r, c]] =
                    C64::from(-(d as f64) * source.chirality.sign() * eps) * phase(d as f64);
            }
        }
    }
    Ok(HermitianOperator::new(m)?)
}

/// Edge Hamiltonian at field angle zero.
pub fn build_edge_hamiltonian(basis: &EdgeBasis, eps: f64) -> Result<HermitianOperator, EdgeError> {
    build_edge_hamiltonian_at_angle(basis, eps, 0.0)
}

/// Sorted spectrum of the `J1` block at Zeeman strength `eps`.
pub fn edge_spectrum(eps: f64, j_max: HalfInt) -> Result<Array1<f64>, EdgeError> {
    let basis = EdgeBasis::subspace_j1(j_max)?;
    let h = build_edge_hamiltonian(&basis, eps)?;
    Ok(eigh(&h)?.eigenvalues)
}

/// A two-component wavefunction on the ring, either as coefficients over an
/// [`EdgeBasis`] or as samples on a uniform `theta` grid covering `[0, 4 pi)`
/// (one full period of an anti-periodic function).
#[derive(Debug, Clone)]
pub enum AngularSpinor {
    Coefficients {
        basis: EdgeBasis,
        coeffs: Array1<C64>,
    },
    Grid {
        theta: Array1<f64>,
        plus: Array1<C64>,
        minus: Array1<C64>,
    },
}

impl AngularSpinor {
    pub fn from_coefficients(basis: EdgeBasis, coeffs: Array1<C64>) -> Self {
        assert_eq!(basis.dim(), coeffs.len());
        AngularSpinor::Coefficients { basis, coeffs }
    }

    /// Coefficient 2-norm, or the trapezoidal `theta`-integral over one
    /// `2 pi` period for grid data.
    pub fn norm(&self) -> f64 {
        match self {
            AngularSpinor::Coefficients { coeffs, .. } => numerics::norm(coeffs),
            AngularSpinor::Grid { theta, plus, minus } => {
                let d_theta = theta[1] - theta[0];
                let total: f64 = plus
                    .iter()
                    .zip(minus.iter())
                    .map(|(p, m)| p.norm_sqr() + m.norm_sqr())
                    .sum();
                // the grid spans two anti-periods; normalise per 2 pi
                (total * d_theta / 2.0).sqrt()
            }
        }
    }

    /// Samples the spinor on `n_per_period` points per `2 pi`, covering
    /// `[0, 4 pi)`.
    pub fn to_grid(&self, n_per_period: usize) -> AngularSpinor {
        match self {
            AngularSpinor::Grid { .. } => self.clone(),
            AngularSpinor::Coefficients { basis, coeffs } => {
                let n = 2 * n_per_period;
                let theta: Array1<f64> =
                    Array1::from_iter((0..n).map(|m| 4.0 * PI * m as f64 / n as f64));
                let mut plus = Array1::<C64>::zeros(n);
                let mut minus = Array1::<C64>::zeros(n);
                let norm = (2.0 * PI).sqrt();
                for (i, s) in basis.states.iter().enumerate() {
                    let c = coeffs[i] / norm;
                    if c.norm() == 0.0 {
                        continue;
                    }
                    let j = s.j.value();
                    let target = match s.chirality {
                        Chirality::Plus => &mut plus,
                        Chirality::Minus => &mut minus,
                    };
                    for (m, t) in theta.iter().enumerate() {
                        target[m] += c * (C64::i() * (j * t)).exp();
                    }
                }
                AngularSpinor::Grid { theta, plus, minus }
            }
        }
    }

    /// Max deviation from `psi(theta + 2 pi) = -psi(theta)` on the grid.
    /// Zero for coefficient data, which is anti-periodic by construction.
    pub fn antiperiodicity_residual(&self) -> f64 {
        match self {
            AngularSpinor::Coefficients { .. } => 0.0,
            AngularSpinor::Grid { plus, minus, .. } => {
                let n = plus.len();
                let half = n / 2;
                let mut r = 0.0_f64;
                for m in 0..half {
                    r = r.max((plus[m + half] + plus[m]).norm());
                    r = r.max((minus[m + half] + minus[m]).norm());
                }
                r
            }
        }
    }

    /// Spinor value at `theta = 0` (coefficient representation only).
    pub fn value_at_zero(&self) -> (C64, C64) {
        match self {
            AngularSpinor::Grid { plus, minus, .. } => (plus[0], minus[0]),
            AngularSpinor::Coefficients { basis, coeffs } => {
                let norm = (2.0 * PI).sqrt();
                let mut p = C64::new(0.0, 0.0);
                let mut m = C64::new(0.0, 0.0);
                for (i, s) in basis.states.iter().enumerate() {
                    match s.chirality {
                        Chirality::Plus => p += coeffs[i] / norm,
                        Chirality::Minus => m += coeffs[i] / norm,
                    }
                }
                (p, m)
            }
        }
    }
}

/// Result of extracting the mid-gap state of the `J1` block.
#[derive(Debug, Clone)]
pub struct ZeroMode {
    pub energy: f64,
    pub spinor: AngularSpinor,
    /// False when `eps <= 2`: the smallest-|E| state is returned but it is
    /// not an isolated zero mode.
    pub isolated: bool,
    /// `|| sigma_x conj(psi) - psi ||` after phase fixing.
    pub symmetry_residual: f64,
}

/// Smallest-`|E|` eigenpair of the `J1` block, with the global phase fixed so
/// that `sigma_x conj(psi(theta)) = psi(theta)` and `2 Re psi_+(0) > 0`.
pub fn zero_mode(eps: f64, j_max: HalfInt) -> Result<ZeroMode, EdgeError> {
    let basis = EdgeBasis::subspace_j1(j_max)?;
    let h = build_edge_hamiltonian(&basis, eps)?;
    let decomp = eigh(&h)?;
    let idx = select_zero_mode_index(&basis, &decomp);
    let energy = decomp.eigenvalues[idx];
    let raw: Array1<C64> = decomp.eigenvectors.column(idx).to_owned();
    let (coeffs, symmetry_residual) = fix_phase(&basis, raw);
    Ok(ZeroMode {
        energy,
        spinor: AngularSpinor::from_coefficients(basis, coeffs),
        isolated: eps > 2.0,
        symmetry_residual,
    })
}

fn select_zero_mode_index(basis: &EdgeBasis, decomp: &SpectralDecomposition) -> usize {
    let mut best = 0_usize;
    for (i, &e) in decomp.eigenvalues.iter().enumerate() {
        let d = e.abs() - decomp.eigenvalues[best].abs();
        if d < -1e-12 {
            best = i;
        } else if d.abs() <= 1e-12 && i != best {
            // tie-break on the larger Majorana weight at theta = 0
            let weight = |col: usize| -> f64 {
                let v: Array1<C64> = decomp.eigenvectors.column(col).to_owned();
                let spinor = AngularSpinor::from_coefficients(basis.clone(), v);
                let (p, _) = spinor.value_at_zero();
                (2.0 * p.re).abs()
            };
            if weight(i) > weight(best) {
                best = i;
            }
        }
    }
    best
}

/// Action of `sigma_x K` (combined time-reversal and chirality flip) on
/// coefficients: `(j, chi) -> (-j, -chi)` with complex conjugation. The one
/// extremal state whose partner falls outside the truncated ladder is
/// dropped; its amplitude in any mid-gap state is far below roundoff.
pub fn sigma_x_conj(basis: &EdgeBasis, coeffs: &Array1<C64>) -> Array1<C64> {
    let mut out = Array1::<C64>::zeros(coeffs.len());
    for (i, s) in basis.states.iter().enumerate() {
        let partner = basis.index_of(HalfInt::from_twice(-s.j.twice), s.chirality.flipped());
        if let Some(k) = partner {
            out[k] = coeffs[i].conj();
        }
    }
    out
}

fn fix_phase(basis: &EdgeBasis, mut v: Array1<C64>) -> (Array1<C64>, f64) {
    // rotate by half the overlap phase so that psi and sigma_x conj(psi)
    // align, then project onto the symmetric combination
    let w = sigma_x_conj(basis, &v);
    let ov = numerics::inner(&v, &w);
    if ov.norm() > 1e-12 {
        let beta = 0.5 * ov.arg();
        let rot = (C64::i() * beta).exp();
        v.mapv_inplace(|x| x * rot);
    }
    let w = sigma_x_conj(basis, &v);
    let mut sym: Array1<C64> = &v + &w;
    let n = numerics::norm(&sym);
    if n > 1e-8 {
        sym.mapv_inplace(|x| x / C64::from(n));
    } else {
        sym = v;
    }
    // canonical sign: the Majorana profile 2 Re psi_+(0) is positive
    let spinor = AngularSpinor::from_coefficients(basis.clone(), sym.clone());
    let (p0, _) = spinor.value_at_zero();
    if 2.0 * p0.re < 0.0 {
        sym.mapv_inplace(|x| -x);
    }
    let residual = {
        let w = sigma_x_conj(basis, &sym);
        numerics::norm(&(&w - &sym))
    };
    (sym, residual)
}

/// The pair of self-conjugate combinations of the zero modes of the two
/// ladders, sampled on a grid, together with the angular profile
/// `phi(theta) = 2 Re psi_+(theta)` they share.
#[derive(Debug, Clone)]
pub struct MajoranaPair {
    pub theta: Array1<f64>,
    pub psi1m: AngularSpinor,
    pub psi2m: AngularSpinor,
    pub phi_profile: Array1<f64>,
}

/// Builds the Majorana pair `psi_1 = (psi_0 + conj(psi_0)) / sqrt(2)`,
/// `psi_2 = -i (psi_0 - conj(psi_0)) / sqrt(2)` from a phase-fixed zero mode.
///
/// `psi_1` is localised around `theta = 0` and `psi_2` around `theta = pi`;
/// they satisfy `psi_2(theta) = sigma_z psi_1(theta - pi)`.
pub fn majorana_pair(zero_mode: &AngularSpinor, n_per_period: usize) -> MajoranaPair {
    let grid = zero_mode.to_grid(n_per_period);
    let AngularSpinor::Grid { theta, plus, minus } = &grid else {
        unreachable!()
    };
    let s = C64::from(std::f64::consts::SQRT_2);
    let psi1_plus = plus.mapv(|z| C64::from(z.re) * s);
    let psi1_minus = minus.mapv(|z| C64::from(z.re) * s);
    // sign chosen so that psi_2(theta) = sigma_z psi_1(theta - pi) with the
    // canonical phi(0) > 0 phase of the zero mode
    let psi2_plus = plus.mapv(|z| C64::from(-z.im) * s);
    let psi2_minus = minus.mapv(|z| C64::from(-z.im) * s);
    let phi_profile = plus.mapv(|z| 2.0 * z.re);
    MajoranaPair {
        theta: theta.clone(),
        psi1m: AngularSpinor::Grid {
            theta: theta.clone(),
            plus: psi1_plus,
            minus: psi1_minus,
        },
        psi2m: AngularSpinor::Grid {
            theta: theta.clone(),
            plus: psi2_plus,
            minus: psi2_minus,
        },
        phi_profile,
    }
}

/// Closed-form zero-mode profile built from the even Jacobi theta function:
/// the angular-momentum occupation of the zero mode is a Gaussian of width
/// `sqrt(eps)`, and resumming the Fourier series gives
/// `phi(theta) ∝ sum_n q^{(n+1/2)^2} cos((n+1/2) theta)` with
/// `q = exp(-1/(4 eps))`.
#[derive(Debug, Clone)]
pub struct ThetaMode {
    eps: f64,
    norm_const: f64,
}

/// Relative size at which the theta series is truncated.
const THETA_SERIES_CUTOFF: f64 = 1e-14;

impl ThetaMode {
    pub fn new(eps: f64) -> Self {
        assert!(eps > 0.0, "theta-function mode requires eps > 0");
        // normalise the Majorana spinor over one 2 pi period
        let n = 4096_usize;
        let d_theta = 2.0 * PI / n as f64;
        let mut total = 0.0;
        for m in 0..n {
            let t = m as f64 * d_theta;
            let v = theta_series(eps, t);
            total += v * v * d_theta;
        }
        Self {
            eps,
            norm_const: 1.0 / total.sqrt(),
        }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.norm_const * theta_series(self.eps, theta)
    }
}

fn theta_series(eps: f64, theta: f64) -> f64 {
    let mut sum = 0.0_f64;
    let mut n = 0_u32;
    loop {
        let half = n as f64 + 0.5;
        let term = 2.0 * (-half * half / (4.0 * eps)).exp() * (half * theta).cos();
        sum += term;
        let scale = sum.abs().max(1.0);
        if (2.0 * (-((n + 1) as f64 + 0.5).powi(2) / (4.0 * eps)).exp()) < THETA_SERIES_CUTOFF * scale
        {
            break;
        }
        n += 1;
        if n > 10_000 {
            break;
        }
    }
    sum
}

/// Normalised theta-function zero-mode profile at a single angle.
pub fn theta_function_mode(eps: f64, theta: f64) -> f64 {
    ThetaMode::new(eps).eval(theta)
}

/// Gaussian approximation to the zero-mode profile, `phi ∝ exp(-eps theta^2)`,
/// normalised over the real line.
pub fn gaussian_mode(eps: f64, theta: f64) -> f64 {
    assert!(eps > 0.0, "gaussian mode requires eps > 0");
    (2.0 * eps / PI).powf(0.25) * (-eps * theta * theta).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jmax() -> HalfInt {
        HalfInt::try_from_f64(48.5).unwrap()
    }

    #[test]
    fn basis_ordering_and_parity() {
        let b = EdgeBasis::subspace_j1(jmax()).unwrap();
        assert_eq!(b.dim(), 97);
        assert_eq!(b.states[0].j.value(), 48.5);
        assert_eq!(b.states[0].chirality, Chirality::Minus);
        assert_eq!(b.states[1].j.value(), 47.5);
        assert_eq!(b.states[1].chirality, Chirality::Plus);
        assert_eq!(b.states[96].j.value(), -47.5);
        assert_eq!(b.states[96].chirality, Chirality::Minus);
        for w in b.states.windows(2) {
            assert_eq!(w[0].j.twice - w[1].j.twice, 2);
            assert_eq!(w[0].chirality, w[1].chirality.flipped());
        }
        // j = 2k + 1/2 carries chirality -, j = 2k - 1/2 carries +
        for s in &b.states {
            match s.j.twice.rem_euclid(4) {
                1 => assert_eq!(s.chirality, Chirality::Minus),
                3 => assert_eq!(s.chirality, Chirality::Plus),
                _ => panic!("even twice-j in edge basis"),
            }
        }
    }

    #[test]
    fn j2_is_the_mirror() {
        let b = EdgeBasis::subspace_j2(jmax()).unwrap();
        assert_eq!(b.states[0].j.value(), -48.5);
        assert_eq!(b.states[0].chirality, Chirality::Minus);
        assert_eq!(b.states[96].j.value(), 47.5);
        assert_eq!(b.states[96].chirality, Chirality::Minus);
    }

    #[test]
    fn zeeman_free_hamiltonian_is_diagonal() {
        let b = EdgeBasis::subspace_j1(jmax()).unwrap();
        let h = build_edge_hamiltonian(&b, 0.0).unwrap();
        for (i, s) in b.states.iter().enumerate() {
            assert_eq!(h.entries()[[i, i]], C64::from(-s.chirality.sign() * s.j.value()));
            for k in 0..b.dim() {
                if k != i {
                    assert_eq!(h.entries()[[i, k]], C64::new(0.0, 0.0));
                }
            }
        }
        let spec = edge_spectrum(0.0, jmax()).unwrap();
        let mut expected: Vec<f64> = b
            .states
            .iter()
            .map(|s| -s.chirality.sign() * s.j.value())
            .collect();
        expected.sort_by(f64::total_cmp);
        for (a, e) in spec.iter().zip(expected.iter()) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn coupling_sign_pattern() {
        let b = EdgeBasis::subspace_j1(jmax()).unwrap();
        let eps = 3.0;
        let h = build_edge_hamiltonian(&b, eps).unwrap();
        // <j+1, -|h|j, +> = -<j-1, -|h|j, +>, both of magnitude eps
        let j = HalfInt::try_from_f64(5.5).unwrap(); // (11/2, +) is in J1
        let c = b.index_of(j, Chirality::Plus).unwrap();
        let up = b
            .index_of(HalfInt::try_from_f64(6.5).unwrap(), Chirality::Minus)
            .unwrap();
        let down = b
            .index_of(HalfInt::try_from_f64(4.5).unwrap(), Chirality::Minus)
            .unwrap();
        let e_up = h.entries()[[up, c]];
        let e_down = h.entries()[[down, c]];
        assert!((e_up + e_down).norm() < 1e-14);
        assert!((e_up.norm() - eps).abs() < 1e-14);
    }

    #[test]
    fn rejects_negative_zeeman() {
        let b = EdgeBasis::subspace_j1(jmax()).unwrap();
        assert!(matches!(
            build_edge_hamiltonian(&b, -0.5),
            Err(EdgeError::NegativeZeeman(_))
        ));
    }

    #[test]
    fn j1_and_j2_spectra_are_mirrors() {
        // charge conjugation maps one ladder onto the other and anticommutes
        // with the Hamiltonian, so the spectra are exact negatives
        let mut eps = 0.0;
        while eps <= 6.0 {
            let s1 = edge_spectrum(eps, jmax()).unwrap();
            let b2 = EdgeBasis::subspace_j2(jmax()).unwrap();
            let h2 = build_edge_hamiltonian(&b2, eps).unwrap();
            let s2 = eigh(&h2).unwrap().eigenvalues;
            let n = s1.len();
            for i in 0..n {
                assert!(
                    (s1[i] + s2[n - 1 - i]).abs() < 1e-9,
                    "mirror violated at eps = {eps}"
                );
            }
            eps += 0.25;
        }
    }

    #[test]
    fn zero_mode_energy_envelope() {
        for &eps in &[2.5, 3.0, 3.5, 4.0, 4.5, 5.0] {
            let zm = zero_mode(eps, jmax()).unwrap();
            let bound = 0.528 * (-2.66 * eps).exp();
            assert!(
                zm.energy.abs() <= bound,
                "eps = {eps}: |E0| = {:.3e} exceeds {:.3e}",
                zm.energy.abs(),
                bound
            );
            assert!(zm.isolated);
        }
        let zm = zero_mode(5.0, jmax()).unwrap();
        assert!(zm.energy.abs() <= 1e-6);
    }

    #[test]
    fn zero_mode_below_threshold_is_flagged() {
        let zm = zero_mode(1.5, jmax()).unwrap();
        assert!(!zm.isolated);
    }

    #[test]
    fn zero_mode_symmetry_and_normalisation() {
        let zm = zero_mode(5.0, jmax()).unwrap();
        assert!(zm.symmetry_residual < 1e-8);
        assert!((zm.spinor.norm() - 1.0).abs() < 1e-9);
        let grid = zm.spinor.to_grid(512);
        assert!((grid.norm() - 1.0).abs() < 1e-9);
        assert!(grid.antiperiodicity_residual() < 1e-9);
        // sigma_x conj fixed point, checked pointwise on the grid
        let AngularSpinor::Grid { plus, minus, .. } = &grid else {
            unreachable!()
        };
        let mut r = 0.0_f64;
        for (p, m) in plus.iter().zip(minus.iter()) {
            r = r.max((m.conj() - p).norm());
        }
        assert!(r < 1e-8, "pointwise symmetry residual {r:.2e}");
    }

    #[test]
    fn majorana_pair_relations() {
        let zm = zero_mode(5.0, jmax()).unwrap();
        let pair = majorana_pair(&zm.spinor, 512);
        let n = pair.theta.len();
        let d_theta = pair.theta[1] - pair.theta[0];
        let (AngularSpinor::Grid { plus: p1, minus: m1, .. }, AngularSpinor::Grid { plus: p2, minus: m2, .. }) =
            (&pair.psi1m, &pair.psi2m)
        else {
            unreachable!()
        };
        // orthonormal over one 2 pi period
        let dot = |a: &Array1<C64>, b: &Array1<C64>, c: &Array1<C64>, d: &Array1<C64>| -> C64 {
            a.iter()
                .zip(b.iter())
                .zip(c.iter().zip(d.iter()))
                .map(|((x1, y1), (x2, y2))| x1.conj() * x2 + y1.conj() * y2)
                .sum::<C64>()
                * C64::from(d_theta / 2.0)
        };
        assert!((dot(p1, m1, p1, m1).re - 1.0).abs() < 1e-9);
        assert!((dot(p2, m2, p2, m2).re - 1.0).abs() < 1e-9);
        assert!(dot(p1, m1, p2, m2).norm() < 1e-9);
        // psi_2(theta) = sigma_z psi_1(theta - pi)
        let shift = n / 4; // pi in a 4 pi grid
        let mut r = 0.0_f64;
        for m in 0..n {
            let src = (m + n - shift) % n;
            r = r.max((p2[m] - p1[src]).norm());
            r = r.max((m2[m] + m1[src]).norm());
        }
        assert!(r < 1e-9, "sigma_z shift relation residual {r:.2e}");
        // phi is even and peaks at theta = 0
        let mut evenness = 0.0_f64;
        for m in 1..n {
            evenness = evenness.max((pair.phi_profile[m] - pair.phi_profile[n - m]).abs());
        }
        assert!(evenness < 1e-9);
        let peak = pair
            .phi_profile
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .unwrap()
            .0;
        // theta = 0 and theta = 2 pi are the same physical point of |phi|
        assert!(peak == 0 || peak == n / 2, "peak at grid index {peak}");
    }

    #[test]
    fn theta_mode_is_even_and_converged() {
        let tm = ThetaMode::new(5.0);
        for &t in &[0.3, 1.1, 2.9] {
            assert_eq!(tm.eval(t), tm.eval(-t));
        }
        // doubling the truncation threshold exponent changes nothing at
        // working precision
        let default = theta_series(5.0, 0.7);
        let tight = theta_series_with_cutoff(5.0, 0.7, 1e-28);
        assert!((default - tight).abs() < 1e-12 * tight.abs().max(1.0));
    }

    fn theta_series_with_cutoff(eps: f64, theta: f64, cutoff: f64) -> f64 {
        let mut sum = 0.0_f64;
        let mut n = 0_u32;
        loop {
            let half = n as f64 + 0.5;
            sum += 2.0 * (-half * half / (4.0 * eps)).exp() * (half * theta).cos();
            let next = 2.0 * (-((n + 1) as f64 + 0.5).powi(2) / (4.0 * eps)).exp();
            if next < cutoff * sum.abs().max(1.0) {
                break;
            }
            n += 1;
        }
        sum
    }

    #[test]
    fn theta_mode_matches_diagonalised_profile() {
        let zm = zero_mode(5.0, jmax()).unwrap();
        let pair = majorana_pair(&zm.spinor, 1024);
        let tm = ThetaMode::new(5.0);
        let d_theta = pair.theta[1] - pair.theta[0];
        let mut dist2 = 0.0_f64;
        for (t, &phi) in pair.theta.iter().zip(pair.phi_profile.iter()) {
            let diff = phi - tm.eval(*t);
            dist2 += diff * diff * d_theta;
        }
        // squared L2 deviation per 2 pi period (the grid spans two periods);
        // the first-order analytic profile carries a small wavefunction
        // correction, so the squared deviation is the figure of merit
        dist2 /= 2.0;
        assert!(dist2 < 1e-3, "squared L2 distance {dist2:.3e}");
    }

    #[test]
    fn gaussian_matches_theta_mode_near_peak() {
        let tm = ThetaMode::new(5.0);
        let peak = tm.eval(0.0);
        let mut max_dev = 0.0_f64;
        let mut t = -PI / 2.0;
        while t <= PI / 2.0 {
            max_dev = max_dev.max((tm.eval(t) - gaussian_mode(5.0, t)).abs());
            t += 0.01;
        }
        assert!(
            max_dev < 0.02 * peak,
            "max deviation {:.3e} vs peak {:.3e}",
            max_dev,
            peak
        );
    }

    #[test]
    fn gaussian_normalisation_and_width() {
        let eps = 5.0;
        let mut integral = 0.0;
        let mut second_moment = 0.0;
        let h = 1e-3;
        let mut t = -PI;
        while t <= PI {
            let v = gaussian_mode(eps, t);
            integral += v * v * h;
            second_moment += t * t * v * v * h;
            t += h;
        }
        assert!((integral - 1.0).abs() < 1e-9);
        // |phi|^2 has standard deviation 1/(2 sqrt(eps))
        let sigma = (second_moment / integral).sqrt();
        assert!((sigma - 1.0 / (2.0 * eps.sqrt())).abs() < 1e-6);
    }

    #[test]
    fn smallest_positive_level_matches_square_root_law() {
        let spec = edge_spectrum(5.0, jmax()).unwrap();
        let first_positive = spec
            .iter()
            .copied()
            .filter(|&e| e > 0.1)
            .fold(f64::INFINITY, f64::min);
        let expected = (4.0_f64 * 5.0).sqrt();
        assert!(
            (first_positive - expected).abs() / expected < 0.03,
            "first positive level {first_positive:.4} vs {expected:.4}"
        );
    }
}
