//! Dense Hermitian kernels shared by every model in the crate.
//!
//! All generators appearing here are Hermitian, so matrix exponentials are
//! always evaluated through the spectral decomposition rather than a series:
//! the result is unitary up to eigensolver accuracy. Eigenvector bases inside
//! degenerate clusters are unconstrained; downstream code must use projectors
//! or symmetry-fixed combinations, never raw degenerate columns.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};
use num_complex::Complex64 as C64;
use thiserror::Error;

/// Default absolute tolerance on `|H[i][j] - conj(H[j][i])|`.
pub const HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max asymmetry {max_asymmetry:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },
    #[error("eigendecomposition failed: {0}")]
    EighFailure(String),
}

/// A dense complex Hermitian matrix, validated at construction.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    entries: Array2<C64>,
}

impl HermitianOperator {
    /// Wraps a matrix, rejecting it if it is not Hermitian within
    /// [`HERMITICITY_TOL`].
    pub fn new(entries: Array2<C64>) -> Result<Self, NumericsError> {
        Self::with_tolerance(entries, HERMITICITY_TOL)
    }

    /// Same as [`HermitianOperator::new`] with a caller-chosen tolerance.
    pub fn with_tolerance(entries: Array2<C64>, tol: f64) -> Result<Self, NumericsError> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(NumericsError::NotSquare { rows, cols });
        }
        let mut max_asymmetry = 0.0_f64;
        for i in 0..rows {
            for j in i..cols {
                let d = (entries[[i, j]] - entries[[j, i]].conj()).norm();
                max_asymmetry = max_asymmetry.max(d);
            }
        }
        if max_asymmetry > tol {
            return Err(NumericsError::NotHermitian {
                max_asymmetry,
                tolerance: tol,
            });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<C64> {
        self.entries
    }
}

/// Eigenvalues (ascending) and the unitary matrix of eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Array1<f64>,
    pub eigenvectors: Array2<C64>,
}

impl SpectralDecomposition {
    /// Rebuilds `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> Array2<C64> {
        let scaled = scale_columns_re(&self.eigenvectors, &self.eigenvalues);
        scaled.dot(&adjoint(&self.eigenvectors))
    }

    /// `exp(-i s H)` assembled from this decomposition.
    pub fn unitary_exp(&self, s: f64) -> Array2<C64> {
        let phases: Array1<C64> = self
            .eigenvalues
            .mapv(|e| (-C64::i() * (s * e)).exp());
        let scaled = scale_columns(&self.eigenvectors, &phases);
        scaled.dot(&adjoint(&self.eigenvectors))
    }
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn eigh(h: &HermitianOperator) -> Result<SpectralDecomposition, NumericsError> {
    let (eigenvalues, mut eigenvectors) = h
        .entries()
        .eigh(UPLO::Lower)
        .map_err(|e| NumericsError::EighFailure(e.to_string()))?;
    // The LAPACK bridge hands back eigenvectors of the transposed (row-major
    // reinterpreted) matrix, i.e. the conjugate basis; undo that so that
    // columns satisfy H v = lambda v. The reconstruction tests pin this.
    eigenvectors.mapv_inplace(|z| z.conj());
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// `exp(-i s H)` for Hermitian `H`, via the spectral decomposition.
pub fn unitary_exp(h: &HermitianOperator, s: f64) -> Result<Array2<C64>, NumericsError> {
    Ok(eigh(h)?.unitary_exp(s))
}

/// Outcome of a fixed-step Runge-Kutta propagation.
#[derive(Debug, Clone)]
pub struct Rk4Output {
    pub state: Array1<C64>,
    /// `| ||psi(t)|| - ||psi(0)|| |`; exact evolution conserves the norm.
    pub norm_drift: f64,
    /// Set when the drift exceeds 1e-6, signalling an under-resolved step.
    pub norm_warning: bool,
}

/// Classical fourth-order Runge-Kutta integration of
/// `i dpsi/dt = H(t) psi` from `t = 0` to `t_final`.
///
/// This is the independent time-stepping oracle used to validate closed-form
/// evolution operators. Callers are responsible for choosing `steps` large
/// enough that halving the step changes the result below their tolerance.
pub fn rk4_propagate<F>(h_of_t: F, psi0: &Array1<C64>, t_final: f64, steps: usize) -> Rk4Output
where
    F: Fn(f64) -> Array2<C64>,
{
    assert!(steps > 0, "rk4_propagate requires at least one step");
    let dt = t_final / steps as f64;
    let norm0 = norm(psi0);
    let mut psi = psi0.clone();
    let rhs = |h: &Array2<C64>, v: &Array1<C64>| -> Array1<C64> { h.dot(v).mapv(|x| -C64::i() * x) };
    for k in 0..steps {
        let t = k as f64 * dt;
        let h1 = h_of_t(t);
        let h2 = h_of_t(t + 0.5 * dt);
        let h4 = h_of_t(t + dt);
        let k1 = rhs(&h1, &psi);
        let k2 = rhs(&h2, &(&psi + &(&k1 * C64::from(0.5 * dt))));
        let k3 = rhs(&h2, &(&psi + &(&k2 * C64::from(0.5 * dt))));
        let k4 = rhs(&h4, &(&psi + &(&k3 * C64::from(dt))));
        psi = &psi
            + &((k1 + k2.mapv(|x| x * 2.0) + k3.mapv(|x| x * 2.0) + k4)
                .mapv(|x| x * C64::from(dt / 6.0)));
    }
    let norm_drift = (norm(&psi) - norm0).abs();
    Rk4Output {
        state: psi,
        norm_drift,
        norm_warning: norm_drift > 1e-6,
    }
}

/// Conjugate transpose.
pub fn adjoint(m: &Array2<C64>) -> Array2<C64> {
    let mut out = Array2::zeros((m.ncols(), m.nrows()));
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out[[j, i]] = m[[i, j]].conj();
        }
    }
    out
}

/// `max |(U^dagger U - 1)[i][j]|`, a cheap unitarity diagnostic.
pub fn unitarity_error(u: &Array2<C64>) -> f64 {
    let p = adjoint(u).dot(u);
    let n = p.nrows();
    let mut err = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            err = err.max((p[[i, j]] - expected).norm());
        }
    }
    err
}

/// Euclidean norm of a complex vector.
pub fn norm(v: &Array1<C64>) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `<a|b>` with the physics convention (conjugate-linear in the first slot).
pub fn inner(a: &Array1<C64>, b: &Array1<C64>) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

fn scale_columns(v: &Array2<C64>, d: &Array1<C64>) -> Array2<C64> {
    let mut out = v.clone();
    for (j, mut col) in out.columns_mut().into_iter().enumerate() {
        let f = d[j];
        col.mapv_inplace(|x| x * f);
    }
    out
}

fn scale_columns_re(v: &Array2<C64>, d: &Array1<f64>) -> Array2<C64> {
    let mut out = v.clone();
    for (j, mut col) in out.columns_mut().into_iter().enumerate() {
        let f = C64::from(d[j]);
        col.mapv_inplace(|x| x * f);
    }
    out
}
