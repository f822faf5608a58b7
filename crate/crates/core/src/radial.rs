//! Exact and asymptotic radial profiles of the edge wavefunctions.
//!
//! The two Nambu components of a chiral edge state with angular momentum `j`
//! are Bessel functions of complex argument `lambda kappa_± rho`, where
//! `kappa_± = (1 - gamma ± sqrt(gamma^2 - 2 gamma + E^2))^{1/2}` and the
//! in-gap energy `E = -sqrt(2 gamma) j / lambda` makes the square root
//! imaginary. For `lambda >> 1` every in-gap profile collapses onto a single
//! `j`-independent envelope peaked at the rim,
//! `f(rho) = -(N / sqrt(rho)) e^{lambda sin(xi) rho} sin[lambda cos(xi) (1 - rho)]`,
//! which is what justifies reducing the disk to a one-dimensional ring.

use ndarray::Array1;
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::edge::HalfInt;

#[derive(Debug, Error)]
pub enum RadialError {
    #[error("Bessel argument |z| = {0:.1} is outside the supported range (<= 200)")]
    ArgumentTooLarge(f64),
    #[error("Bessel order {0} is outside the supported range (<= 60); rescale the problem")]
    OrderTooLarge(i64),
    #[error("j = {j} lies outside the gap (|j| < lambda sqrt(1 - gamma/2) = {bound:.2}); the state is embedded in the continuum")]
    OutOfGap { j: f64, bound: f64 },
}

/// Bessel function of the first kind, integer order, complex argument.
///
/// Downward (Miller) recurrence from above the turning point, normalised by
/// the even-order sum rule `J_0 + 2 sum_k J_{2k} = 1`, which stays stable at
/// arguments where the power series has already lost all precision to
/// cancellation. Negative orders use `J_{-n} = (-1)^n J_n`.
pub fn bessel_j_complex(order: i64, z: C64) -> Result<C64, RadialError> {
    let n = order.unsigned_abs() as usize;
    let seq = bessel_j_seq(n, z)?;
    let v = seq[n];
    if order < 0 && n % 2 == 1 {
        Ok(-v)
    } else {
        Ok(v)
    }
}

/// `J_0(z) ... J_{n_max}(z)` in one downward recurrence.
pub fn bessel_j_seq(n_max: usize, z: C64) -> Result<Vec<C64>, RadialError> {
    if z.norm() > 200.0 {
        return Err(RadialError::ArgumentTooLarge(z.norm()));
    }
    if n_max > 60 {
        return Err(RadialError::OrderTooLarge(n_max as i64));
    }
    if z.norm() < 1e-12 {
        let mut out = vec![C64::from(0.0); n_max + 1];
        out[0] = C64::from(1.0);
        return Ok(out);
    }
    let start = (z.norm() + 20.0 + n_max as f64).ceil() as usize;
    let start = start + start % 2; // even starting order
    let mut jp = C64::from(0.0); // J_{k+1}
    let mut jc = C64::from(1.0); // J_k (arbitrary seed)
    let mut out = vec![C64::from(0.0); n_max + 1];
    let mut sum = C64::from(0.0); // accumulates J_0 + 2 sum J_{2k}
    for k in (0..=start).rev() {
        if k <= n_max {
            out[k] = jc;
        }
        if k % 2 == 0 {
            sum += if k == 0 { jc } else { jc * 2.0 };
        }
        if k > 0 {
            let jm = jc * (2.0 * k as f64) / z - jp;
            jp = jc;
            jc = jm;
            // rescale early enough that |sum|^2 in the final division
            // cannot overflow; the sum rule removes the factor
            if jc.norm() > 1e140 {
                let s = 1e-140;
                jc *= s;
                jp *= s;
                sum *= s;
                for v in out.iter_mut() {
                    *v *= s;
                }
            }
        }
    }
    for v in out.iter_mut() {
        *v /= sum;
    }
    Ok(out)
}

/// Exact radial components of one chiral in-gap edge state.
#[derive(Debug, Clone)]
pub struct ExactRadial {
    pub j: HalfInt,
    /// hard-wall in-gap energy used for the momenta
    pub energy: f64,
    pub rho: Array1<f64>,
    /// spin-up component (order `j + 1/2`), unnormalised
    pub f: Array1<f64>,
    /// spin-down component (order `j - 1/2`), unnormalised
    pub g: Array1<f64>,
    /// `(2 pi ∫ (f^2 + g^2) rho drho)^{-1/2}`
    pub norm_const: f64,
}

impl ExactRadial {
    /// `N_j f_j(rho)`, the curve that collapses onto the common envelope.
    pub fn normalised_f(&self) -> Array1<f64> {
        self.f.mapv(|v| v * self.norm_const)
    }

    pub fn normalised_g(&self) -> Array1<f64> {
        self.g.mapv(|v| v * self.norm_const)
    }
}

fn momenta(gamma: f64, energy: f64) -> (C64, C64) {
    let disc = C64::from(gamma * gamma - 2.0 * gamma + energy * energy).sqrt();
    let kappa_p = (C64::from(1.0 - gamma) + disc).sqrt();
    let kappa_m = (C64::from(1.0 - gamma) - disc).sqrt();
    (kappa_p, kappa_m)
}

/// Boundary mismatch of the slower component at the wall: the exact
/// eigenvalue is the energy where this vanishes (the faster component
/// vanishes there identically).
fn wall_mismatch(j: HalfInt, gamma: f64, lambda: f64, energy: f64) -> Result<f64, RadialError> {
    let (kappa_p, kappa_m) = momenta(gamma, energy);
    let order_f = (j.twice() + 1) / 2;
    let order_g = (j.twice() - 1) / 2;
    let a = bessel_j_complex(order_f, kappa_m * lambda)?;
    let b = bessel_j_complex(order_g, kappa_p * lambda)?;
    Ok((kappa_m * (kappa_p * kappa_p - 1.0 - energy) * a * b).im)
}

/// In-gap energy of the chiral edge state `j`: the hard-wall eigenvalue,
/// bisected from the linear-dispersion seed `-sqrt(2 gamma) j / lambda`.
/// Falls back to the seed when no root brackets within half a level spacing.
pub fn in_gap_energy(j: HalfInt, gamma: f64, lambda: f64) -> Result<f64, RadialError> {
    let seed = -(2.0 * gamma).sqrt() * j.value() / lambda;
    let span = 0.45 * (2.0 * gamma).sqrt() / lambda;
    let mut a = seed - span;
    let mut b = seed + span;
    let mut fa = wall_mismatch(j, gamma, lambda, a)?;
    let fb = wall_mismatch(j, gamma, lambda, b)?;
    if fa * fb > 0.0 {
        return Ok(seed);
    }
    for _ in 0..80 {
        let mid = 0.5 * (a + b);
        let fm = wall_mismatch(j, gamma, lambda, mid)?;
        if fa * fm <= 0.0 {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    Ok(0.5 * (a + b))
}

/// Evaluates the exact Bessel-function radial profile of the left-handed
/// chiral edge state `j` on `n_rho` points of `(0, 1]`, at the hard-wall
/// in-gap energy from [`in_gap_energy`].
pub fn exact_radial(
    j: HalfInt,
    gamma: f64,
    lambda: f64,
    n_rho: usize,
) -> Result<ExactRadial, RadialError> {
    let bound = lambda * (1.0 - gamma / 2.0).sqrt();
    if j.value().abs() >= bound {
        return Err(RadialError::OutOfGap {
            j: j.value(),
            bound,
        });
    }
    let energy = in_gap_energy(j, gamma, lambda)?;
    let (kappa_p, kappa_m) = momenta(gamma, energy);

    let order_f = (j.twice() + 1) / 2; // j + 1/2
    let order_g = (j.twice() - 1) / 2; // j - 1/2
    let max_order = order_f.abs().max(order_g.abs()) as usize;

    // constant factor J_{j+1/2}(lambda kappa_-)
    let j_at_km = bessel_j_complex(order_f, kappa_m * lambda)?;
    let pref_f = -C64::from((2.0 * gamma).sqrt()) * kappa_m * kappa_p * j_at_km;
    let pref_g = kappa_m * (kappa_p * kappa_p - 1.0 - energy) * j_at_km;

    let rho = Array1::from_iter((1..=n_rho).map(|i| i as f64 / n_rho as f64));
    let mut f = Array1::<f64>::zeros(n_rho);
    let mut g = Array1::<f64>::zeros(n_rho);
    let sign_f = if order_f < 0 && order_f % 2 != 0 { -1.0 } else { 1.0 };
    let sign_g = if order_g < 0 && order_g % 2 != 0 { -1.0 } else { 1.0 };
    for (i, &r) in rho.iter().enumerate() {
        let seq = bessel_j_seq(max_order, kappa_p * (lambda * r))?;
        let jf = seq[order_f.unsigned_abs() as usize] * sign_f;
        let jg = seq[order_g.unsigned_abs() as usize] * sign_g;
        f[i] = (pref_f * jf).im;
        g[i] = (pref_g * jg).im;
    }

    // 2D normalisation by trapezoidal quadrature of (f^2 + g^2) rho
    let h = 1.0 / n_rho as f64;
    let mut integral = 0.0;
    for i in 0..n_rho {
        let w = if i + 1 == n_rho { 0.5 } else { 1.0 };
        integral += w * (f[i] * f[i] + g[i] * g[i]) * rho[i] * h;
    }
    let norm_const = 1.0 / (2.0 * std::f64::consts::PI * integral).sqrt();
    Ok(ExactRadial {
        j,
        energy,
        rho,
        f,
        g,
        norm_const,
    })
}

/// The `j`-independent asymptotic envelope of the in-gap radial profiles.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    pub gamma: f64,
    pub lambda: f64,
    /// `arctan(sqrt(2 gamma) / (1 - gamma)) / 2`
    pub xi: f64,
    pub rho: Array1<f64>,
    /// normalised so that `∫ f^2 rho drho = 1`
    pub f: Array1<f64>,
}

/// Builds the normalised asymptotic profile on `n_rho` points of `(0, 1]`.
/// Valid for `lambda >> 1` and `gamma << 1`.
pub fn asymptotic_radial(gamma: f64, lambda: f64, n_rho: usize) -> RadialProfile {
    let xi = ((2.0 * gamma).sqrt() / (1.0 - gamma)).atan() / 2.0;
    let rho = Array1::from_iter((1..=n_rho).map(|i| i as f64 / n_rho as f64));
    let decay = lambda * xi.sin();
    let osc = lambda * xi.cos();
    // the 1/sqrt(rho) prefactor cancels against the radial measure
    let h = 1.0 / n_rho as f64;
    let mut integral = 0.0;
    for (i, &r) in rho.iter().enumerate() {
        let w = if i + 1 == n_rho { 0.5 } else { 1.0 };
        let s = (osc * (1.0 - r)).sin();
        integral += w * (2.0 * decay * r).exp() * s * s * h;
    }
    let norm = 1.0 / integral.sqrt();
    let f = rho.mapv(|r| -norm / r.sqrt() * (decay * r).exp() * (osc * (1.0 - r)).sin());
    RadialProfile {
        gamma,
        lambda,
        xi,
        rho,
        f,
    }
}
