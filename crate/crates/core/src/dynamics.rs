//! Driven dynamics of the edge model under a uniformly rotating in-plane
//! field.
//!
//! With the rotation angle `phi = omega t` as the clock, the Schrödinger
//! equation reads `i dpsi/dphi = alpha h(theta - phi) psi`, where
//! `alpha = omega_0 / omega` controls adiabaticity. Passing to the co-moving
//! frame makes the generator static, so the evolution factorises exactly:
//!
//! ```text
//! U^alpha(phi) = exp(-i p_theta phi) exp(-i phi [alpha h(theta) - p_theta])
//! ```
//!
//! The two factors do not commute and are built independently by spectral
//! decomposition. One-cycle diagnostics (the overlap `A_0`, the Floquet
//! quasi-energies of `h_F = alpha h - p_theta + 1/2`) and the second-order
//! perturbative amplitudes in the near-adiabatic regime live here too.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::edge::{
    build_edge_hamiltonian, build_edge_hamiltonian_at_angle, zero_mode, AngularSpinor, EdgeBasis,
    EdgeError, HalfInt,
};
use crate::numerics::{self, eigh, HermitianOperator};

/// Parameters of a uniform one-cycle rotation of the Zeeman field.
#[derive(Debug, Clone, Copy)]
pub struct DriveSettings {
    /// adiabaticity ratio `omega_0 / omega`
    pub alpha: f64,
    /// dimensionless Zeeman strength
    pub eps: f64,
    pub j_max: HalfInt,
    /// total rotation angle; a full cycle is `2 pi`
    pub phi_total: f64,
}

impl DriveSettings {
    pub fn new(alpha: f64, eps: f64, j_max: HalfInt) -> Self {
        Self {
            alpha,
            eps,
            j_max,
            phi_total: 2.0 * PI,
        }
    }

    pub fn with_rotation(mut self, phi_total: f64) -> Self {
        self.phi_total = phi_total;
        self
    }
}

/// Folded quasi-energy spectrum of the one-cycle evolution.
#[derive(Debug, Clone)]
pub struct FloquetResult {
    pub alpha: f64,
    /// eigenvalues of `h_F`, folded into `(-1/2, 1/2]`
    pub quasi_energies: Array1<f64>,
    /// distance of the folded spectrum to zero
    pub gap_at_zero: f64,
    /// whether some folded level sits within [`PI_MODE_TOL`] of `±1/2`
    pub has_pi_mode: bool,
}

/// Detection tolerance for a quasi-energy pinned at 1/2; eigenvalue jitter
/// at these matrix sizes is orders of magnitude smaller.
pub const PI_MODE_TOL: f64 = 1e-3;

/// `exp(-i p phi) exp(-i phi [alpha h - p])` on the given ladder basis.
pub fn evolution_operator_on(
    basis: &EdgeBasis,
    alpha: f64,
    eps: f64,
    phi: f64,
) -> Result<Array2<C64>, EdgeError> {
    let h = build_edge_hamiltonian(basis, eps)?;
    let p = basis.momentum_diagonal();
    let mut generator = h.into_entries();
    generator.mapv_inplace(|z| z * alpha);
    for (i, &j) in p.iter().enumerate() {
        generator[[i, i]] -= C64::from(j);
    }
    let co_moving = HermitianOperator::new(generator)?;
    let mut u = numerics::unitary_exp(&co_moving, phi)?;
    // left factor exp(-i p phi) is diagonal: scale rows
    for (i, &j) in p.iter().enumerate() {
        let f = (-C64::i() * (j * phi)).exp();
        for k in 0..u.ncols() {
            u[[i, k]] *= f;
        }
    }
    Ok(u)
}

/// One-cycle evolution operator in the `J1` ladder.
pub fn evolution_operator(settings: &DriveSettings) -> Result<Array2<C64>, EdgeError> {
    let basis = EdgeBasis::subspace_j1(settings.j_max)?;
    evolution_operator_on(&basis, settings.alpha, settings.eps, settings.phi_total)
}

/// Overlap `<psi_0| U^alpha(phi_total) |psi_0>` with the initial zero mode.
pub fn overlap_a0(settings: &DriveSettings) -> Result<C64, EdgeError> {
    let zm = zero_mode(settings.eps, settings.j_max)?;
    let AngularSpinor::Coefficients { basis, coeffs } = &zm.spinor else {
        unreachable!()
    };
    let u = evolution_operator_on(basis, settings.alpha, settings.eps, settings.phi_total)?;
    Ok(numerics::inner(coeffs, &u.dot(coeffs)))
}

/// One-cycle Majorana return amplitudes implied by `A_0`:
/// `(<m_i|U|m_i>, <m_1|U|m_2>, <m_2|U|m_1>) = (Re A_0, Im A_0, -Im A_0)`.
pub fn majorana_overlaps(a0: C64) -> (f64, f64, f64) {
    (a0.re, a0.im, -a0.im)
}

/// Quasi-energies of the Floquet generator `h_F = alpha h - p + 1/2`.
pub fn floquet_spectrum(settings: &DriveSettings) -> Result<FloquetResult, EdgeError> {
    let basis = EdgeBasis::subspace_j1(settings.j_max)?;
    let h = build_edge_hamiltonian(&basis, settings.eps)?;
    let p = basis.momentum_diagonal();
    let mut hf = h.into_entries();
    hf.mapv_inplace(|z| z * settings.alpha);
    for (i, &j) in p.iter().enumerate() {
        hf[[i, i]] += C64::from(0.5 - j);
    }
    let decomp = eigh(&HermitianOperator::new(hf)?)?;
    let quasi_energies = decomp.eigenvalues.mapv(fold_quasi_energy);
    let gap_at_zero = quasi_energies
        .iter()
        .map(|q| q.abs())
        .fold(f64::INFINITY, f64::min);
    let has_pi_mode = quasi_energies
        .iter()
        .any(|q| (q - 0.5).abs() < PI_MODE_TOL || (q + 0.5).abs() < PI_MODE_TOL);
    Ok(FloquetResult {
        alpha: settings.alpha,
        quasi_energies,
        gap_at_zero,
        has_pi_mode,
    })
}

/// Folds a quasi-energy into `(-1/2, 1/2]`, keeping the `+1/2` endpoint.
pub fn fold_quasi_energy(x: f64) -> f64 {
    let f = x - (x - 0.5).ceil();
    // guard against roundoff placing us just below -1/2
    if f <= -0.5 {
        f + 1.0
    } else {
        f
    }
}

/// Second-order perturbative one-cycle overlap,
/// `A_0 = -1 + sin^2(alpha sqrt(4 eps) pi) / (2 alpha^2)`,
/// valid in the near-adiabatic window (`alpha > 4` at `eps = 5`).
pub fn perturbative_overlap(alpha: f64, eps: f64) -> f64 {
    let gap = (4.0 * eps).sqrt();
    -1.0 + (alpha * gap * PI).sin().powi(2) / (2.0 * alpha * alpha)
}

/// Second-order transition amplitudes of the co-moving evolution after a
/// rotation by `phi`; `a_minus` is the conjugate of `a_plus`.
#[derive(Debug, Clone, Copy)]
pub struct TransitionAmplitudes {
    pub a0: f64,
    pub a_plus: C64,
    pub a_minus: C64,
}

/// `a_0(phi) = 1 - sin^2(alpha e_1 phi / 2) / (2 alpha^2)` and
/// `a_{±1}(phi) = (1 - e^{∓i alpha e_1 phi}) / (2 sqrt(2) alpha)` with
/// `e_1 = sqrt(4 eps)` the gap to the first excited doublet. Requires
/// `alpha > 0`.
pub fn transition_amplitudes(alpha: f64, eps: f64, phi: f64) -> TransitionAmplitudes {
    assert!(alpha > 0.0, "perturbative amplitudes require alpha > 0");
    let e1 = (4.0 * eps).sqrt();
    let x = alpha * e1 * phi;
    let a0 = 1.0 - (x / 2.0).sin().powi(2) / (2.0 * alpha * alpha);
    let a_plus = (C64::from(1.0) - (-C64::i() * x).exp()) / C64::from(2.0 * 2.0_f64.sqrt() * alpha);
    TransitionAmplitudes {
        a0,
        a_plus,
        a_minus: a_plus.conj(),
    }
}

/// Rotation frequency at which the perturbative tunnelling amplitude
/// vanishes after a rotation by `delta_phi`:
/// `omega_nu = sqrt(4 eps) omega_0 delta_phi / (2 pi nu)`.
pub fn high_fidelity_frequency(eps: f64, omega0: f64, delta_phi: f64, nu: u64) -> f64 {
    assert!(nu >= 1);
    (4.0 * eps).sqrt() * omega0 * delta_phi / (2.0 * PI * nu as f64)
}

/// Integer threshold on `nu` for a `2 pi` rotation: the quasi-adiabatic
/// window `alpha > 4` requires `nu > 4 sqrt(4 eps)`, quoted as the next
/// integer up.
pub fn high_fidelity_nu_threshold(eps: f64) -> u64 {
    (4.0 * (4.0 * eps).sqrt()).ceil() as u64
}

/// Smallest index strictly inside the quasi-adiabatic window for a `2 pi`
/// rotation (one past the integer threshold).
pub fn min_high_fidelity_index(eps: f64) -> u64 {
    high_fidelity_nu_threshold(eps) + 1
}

/// Exact spacing `omega_nu - omega_{nu+1}` of adjacent high-fidelity
/// frequencies for a `2 pi` rotation.
pub fn high_fidelity_spacing(eps: f64, omega0: f64, nu: u64) -> f64 {
    high_fidelity_frequency(eps, omega0, 2.0 * PI, nu)
        - high_fidelity_frequency(eps, omega0, 2.0 * PI, nu + 1)
}

/// Large-`nu` approximation `sqrt(4 eps) omega_0 / nu^2` to the spacing.
pub fn high_fidelity_spacing_approx(eps: f64, omega0: f64, nu: u64) -> f64 {
    (4.0 * eps).sqrt() * omega0 / (nu as f64 * nu as f64)
}

/// Edge Hamiltonian at field angle `phi`, scaled by `alpha`: the generator
/// of `i dpsi/dphi` in the lab frame, for time-stepping checks.
pub fn drive_generator(
    basis: &EdgeBasis,
    alpha: f64,
    eps: f64,
    phi: f64,
) -> Result<Array2<C64>, EdgeError> {
    let h = build_edge_hamiltonian_at_angle(basis, eps, phi)?;
    let mut m = h.into_entries();
    m.mapv_inplace(|z| z * alpha);
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::unitarity_error;

    fn jmax() -> HalfInt {
        HalfInt::try_from_f64(48.5).unwrap()
    }

    #[test]
    fn sudden_limit_is_the_identity() {
        let s = DriveSettings::new(0.0, 5.0, jmax());
        let u = evolution_operator(&s).unwrap();
        let n = u.nrows();
        let mut err = 0.0_f64;
        for i in 0..n {
            for k in 0..n {
                let expected = if i == k { C64::from(1.0) } else { C64::from(0.0) };
                err = err.max((u[[i, k]] - expected).norm());
            }
        }
        assert!(err < 1e-10, "sudden-limit deviation {err:.2e}");
    }

    #[test]
    fn evolution_operator_is_unitary() {
        for &alpha in &[0.3, 1.0, 5.0] {
            let s = DriveSettings::new(alpha, 5.0, jmax());
            let u = evolution_operator(&s).unwrap();
            assert!(unitarity_error(&u) < 1e-9);
        }
    }

    #[test]
    fn overlap_limits() {
        let a0 = overlap_a0(&DriveSettings::new(0.0, 5.0, jmax())).unwrap();
        assert!((a0 - C64::from(1.0)).norm() < 1e-9);
        // deep adiabatic regime: the half-integer spin picks up a pi phase
        let a0 = overlap_a0(&DriveSettings::new(30.0, 5.0, jmax())).unwrap();
        assert!((a0.re + 1.0).abs() < 1e-3, "Re A0 = {}", a0.re);
        assert!(a0.norm() <= 1.0 + 1e-9);
    }

    #[test]
    fn majorana_overlap_relations() {
        assert_eq!(majorana_overlaps(C64::from(1.0)), (1.0, 0.0, 0.0));
        assert_eq!(majorana_overlaps(C64::from(-1.0)), (-1.0, 0.0, 0.0));
        let (m11, m12, m21) = majorana_overlaps(C64::new(0.2, -0.4));
        assert_eq!((m11, m12, m21), (0.2, -0.4, 0.4));
    }

    #[test]
    fn floquet_sudden_limit_collapses_to_zero() {
        // h_F = -p + 1/2 has integer eigenvalues for half-integer j, which
        // all fold onto zero
        let r = floquet_spectrum(&DriveSettings::new(0.0, 5.0, jmax())).unwrap();
        for q in r.quasi_energies.iter() {
            assert!(q.abs() < 1e-12);
        }
        assert!(r.gap_at_zero < 1e-12);
    }

    #[test]
    fn floquet_gap_closes_at_unit_alpha_and_pi_mode_appears() {
        let r = floquet_spectrum(&DriveSettings::new(1.0, 5.0, jmax())).unwrap();
        assert!(r.gap_at_zero < 0.02, "gap {:.3}", r.gap_at_zero);
        let r = floquet_spectrum(&DriveSettings::new(1.2, 5.0, jmax())).unwrap();
        assert!(r.has_pi_mode);
    }

    #[test]
    fn folding_convention() {
        assert_eq!(fold_quasi_energy(0.5), 0.5);
        assert_eq!(fold_quasi_energy(-0.5), 0.5);
        assert_eq!(fold_quasi_energy(1.0), 0.0);
        assert!((fold_quasi_energy(0.7) + 0.3).abs() < 1e-12);
        assert!((fold_quasi_energy(-2.3) + 0.3).abs() < 1e-12);
    }

    #[test]
    fn perturbative_overlap_structure() {
        let eps = 5.0;
        let gap = (4.0_f64 * eps).sqrt();
        // exactly -1 at the high-fidelity ratios
        for nu in 19..24_u64 {
            let alpha = nu as f64 / gap;
            assert!((perturbative_overlap(alpha, eps) + 1.0).abs() < 1e-12);
        }
        // approaches -1 like alpha^-2
        let far = perturbative_overlap(200.0, eps);
        assert!((far + 1.0).abs() < 1.0 / (2.0 * 200.0_f64 * 200.0) + 1e-12);
    }

    #[test]
    fn transition_amplitudes_sum_to_unit_probability() {
        let eps = 5.0;
        let t = transition_amplitudes(6.0, eps, 0.0);
        assert_eq!(t.a0, 1.0);
        assert_eq!(t.a_plus, C64::from(0.0));
        for &alpha in &[4.0, 6.0, 9.0] {
            let t = transition_amplitudes(alpha, eps, 2.0 * PI);
            let total = t.a0 * t.a0 + t.a_plus.norm_sqr() + t.a_minus.norm_sqr();
            assert!(
                (total - 1.0).abs() < 2.0 / alpha.powi(4),
                "probability defect {:.2e} at alpha {alpha}",
                (total - 1.0).abs()
            );
            assert_eq!(t.a_minus, t.a_plus.conj());
        }
    }

    #[test]
    fn high_fidelity_bookkeeping() {
        let eps = 5.0;
        assert_eq!(high_fidelity_nu_threshold(eps), 18);
        assert_eq!(min_high_fidelity_index(eps), 19);
        // doubling the rotation angle doubles the frequency
        let w1 = high_fidelity_frequency(eps, 91.2, 2.0 * PI, 19);
        let w2 = high_fidelity_frequency(eps, 91.2, 4.0 * PI, 19);
        assert!((w2 - 2.0 * w1).abs() < 1e-12);
        // the nu^-2 approximation is good to a few percent at nu = 19
        let exact = high_fidelity_spacing(eps, 91.2, 19);
        let approx = high_fidelity_spacing_approx(eps, 91.2, 19);
        assert!(((exact - approx) / exact).abs() < 0.06);
    }
}
