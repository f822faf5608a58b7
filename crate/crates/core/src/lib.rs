//! Majorana zero modes on a thin disk of a time-reversal-invariant p-wave
//! superconductor.
//!
//! An in-plane Zeeman field gaps the counter-propagating Majorana edge
//! branches and binds a pair of zero modes to the two points on the rim where
//! the Dirac mass `-2 eps sin(theta)` changes sign. Rotating the field drags
//! the zero modes around the disk; the adiabaticity of that motion is
//! controlled by the ratio `alpha = omega_0 / omega` of the edge level
//! spacing to the rotation frequency.
//!
//! The crate is organised around independent routes to the same physics:
//!
//! - [`edge`] — the reduced one-dimensional edge Hamiltonian in the decoupled
//!   angular-momentum subspace, its zero mode and Majorana pair, and the
//!   closed-form theta-function / Gaussian profiles;
//! - [`effective`] — the continuum-k harmonic-oscillator solution with the
//!   square-root Landau-like spectrum, used as an analytic reference;
//! - [`dynamics`] — the closed-form rotation evolution operator, overlap
//!   diagnostics, Floquet quasi-energies, and second-order perturbative
//!   fidelity formulas;
//! - [`lattice`] — an independent square-lattice Bogoliubov-de Gennes check
//!   on a disk, with a sparse mid-spectrum eigensolver;
//! - [`radial`] — the exact Bessel-function edge wavefunctions and the
//!   asymptotic radial profile that justify the dimensional reduction;
//! - [`params`] — conversion between experimental inputs and the model's
//!   dimensionless parameters and operating frequencies;
//! - [`numerics`] — shared dense Hermitian kernels (eigendecomposition,
//!   unitary exponentials, a Runge-Kutta propagation oracle).

pub mod dynamics;
pub mod edge;
pub mod effective;
pub mod lattice;
pub mod numerics;
pub mod params;
pub mod radial;

pub use num_complex::Complex64;
