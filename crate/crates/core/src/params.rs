//! Conversion between experimental inputs and the model's dimensionless
//! parameters and operating frequencies.
//!
//! Unit conventions (SI internally, converted at the boundaries):
//!
//! | quantity          | unit in       | unit out  | conversion            |
//! |-------------------|---------------|-----------|-----------------------|
//! | pairing gap       | meV           | eV        | 1e-3                  |
//! | Fermi wavenumber  | 1/angstrom    | 1/m       | 1e10                  |
//! | disk radius       | micrometre    | m         | 1e-6                  |
//! | magnetic moment   | eV/T          | eV/T      | —                     |
//! | frequencies       | —             | MHz (angular, omega/hbar) | hbar = 6.582...e-16 eV s |
//! | fields            | —             | mT        | 1e3                   |

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics;

/// Reduced Planck constant in eV s.
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;
/// Bohr magneton in eV/T, the standard electron magnetic moment here.
pub const MU_B_EV_PER_T: f64 = 5.788_381_806e-5;

#[derive(Debug, Error)]
pub enum ParamsError {
    #[error("all physical inputs must be positive")]
    NonPositiveInput,
    #[error("an isolated zero mode needs eps > 2, got {0}")]
    NeedsZeroMode(f64),
}

/// Experimental inputs for a disk device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// measured superconducting gap, meV
    pub delta_exp_mev: f64,
    /// Fermi wavenumber, 1/angstrom
    pub k_f_per_angstrom: f64,
    /// disk radius, micrometres
    pub radius_um: f64,
    /// electron magnetic moment, eV/T
    pub mu_e_ev_per_t: f64,
    /// Fermi energy measured from the band gap, meV (sets gamma)
    pub fermi_energy_mev: f64,
}

impl PhysicalParams {
    /// Literature estimates for a doped-Bi2Se3 thin-disk device.
    pub fn paper_estimate() -> Self {
        Self {
            delta_exp_mev: 0.6,
            k_f_per_angstrom: 0.1,
            radius_um: 10.0,
            mu_e_ev_per_t: MU_B_EV_PER_T,
            fermi_energy_mev: 200.0,
        }
    }

    fn validate(&self) -> Result<(), ParamsError> {
        let all = [
            self.delta_exp_mev,
            self.k_f_per_angstrom,
            self.radius_um,
            self.mu_e_ev_per_t,
            self.fermi_energy_mev,
        ];
        if all.iter().any(|&x| !(x > 0.0)) {
            return Err(ParamsError::NonPositiveInput);
        }
        Ok(())
    }
}

/// Everything the rotation protocol needs, in device units.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DimensionlessRecord {
    pub eps_target: f64,
    /// `k_F R`
    pub lambda: f64,
    /// `Delta^2 / (2 E_F^2)`
    pub gamma: f64,
    /// edge level spacing `Delta / lambda`, eV
    pub omega0_ev: f64,
    /// `omega_0 / hbar`, angular MHz; rotations faster than this destroy the
    /// zero modes
    pub omega_c_mhz: f64,
    /// field threshold `4 omega_0 / mu_e` for the zero mode to exist, mT
    pub b_threshold_mt: f64,
    /// field realising `eps_target`, mT
    pub b_at_eps_mt: f64,
    /// quasi-adiabatic window `omega < omega_c / 4`, angular MHz
    pub window_max_mhz: f64,
    /// integer threshold on the high-fidelity index for a 2 pi rotation
    pub nu_threshold: u64,
    /// smallest usable high-fidelity index
    pub nu_min: u64,
    /// numerator of the `~ C / nu^2` spacing law, MHz
    pub spacing_coefficient_mhz: f64,
    /// spacing of adjacent high-fidelity frequencies at `nu_min`, MHz
    pub spacing_at_nu_min_mhz: f64,
    /// required source linewidth: a quarter oscillation period at the window
    /// edge, MHz
    pub width_budget_mhz: f64,
}

/// Derives the dimensionless model parameters and the operating-frequency
/// budget for a target Zeeman strength.
pub fn derive_dimensionless(
    p: &PhysicalParams,
    eps_target: f64,
) -> Result<DimensionlessRecord, ParamsError> {
    p.validate()?;
    if eps_target <= 2.0 {
        return Err(ParamsError::NeedsZeroMode(eps_target));
    }
    let k_f_per_m = p.k_f_per_angstrom * 1e10;
    let radius_m = p.radius_um * 1e-6;
    let lambda = k_f_per_m * radius_m;
    let delta_ev = p.delta_exp_mev * 1e-3;
    let fermi_ev = p.fermi_energy_mev * 1e-3;
    let gamma = (delta_ev / fermi_ev).powi(2) / 2.0;
    let omega0_ev = delta_ev / lambda;
    let omega_c_mhz = omega0_ev / HBAR_EV_S / 1e6;
    let b_threshold_mt = 4.0 * omega0_ev / p.mu_e_ev_per_t * 1e3;
    let b_at_eps_mt = 2.0 * eps_target * omega0_ev / p.mu_e_ev_per_t * 1e3;
    let nu_threshold = dynamics::high_fidelity_nu_threshold(eps_target);
    let spacing_coefficient_mhz = (4.0 * eps_target).sqrt() * omega_c_mhz;
    Ok(DimensionlessRecord {
        eps_target,
        lambda,
        gamma,
        omega0_ev,
        omega_c_mhz,
        b_threshold_mt,
        b_at_eps_mt,
        window_max_mhz: omega_c_mhz / 4.0,
        nu_threshold,
        nu_min: dynamics::min_high_fidelity_index(eps_target),
        spacing_coefficient_mhz,
        spacing_at_nu_min_mhz: dynamics::high_fidelity_spacing_approx(
            eps_target,
            omega_c_mhz,
            dynamics::min_high_fidelity_index(eps_target),
        ),
        width_budget_mhz: spacing_coefficient_mhz / (4.0 * (nu_threshold * nu_threshold) as f64),
    })
}

/// Reconstructs physical inputs from dimensionless parameters, the exact
/// inverse of [`derive_dimensionless`] at fixed radius and magnetic moment.
pub fn physical_from_dimensionless(
    lambda: f64,
    gamma: f64,
    omega0_ev: f64,
    radius_um: f64,
    mu_e_ev_per_t: f64,
) -> PhysicalParams {
    let delta_ev = omega0_ev * lambda;
    let fermi_ev = delta_ev / (2.0 * gamma).sqrt();
    PhysicalParams {
        delta_exp_mev: delta_ev * 1e3,
        k_f_per_angstrom: lambda / (radius_um * 1e-6) / 1e10,
        radius_um,
        mu_e_ev_per_t,
        fermi_energy_mev: fermi_ev * 1e3,
    }
}
