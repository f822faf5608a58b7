//! Banded complex Cholesky factorisation for the spectral-fold operator.
//!
//! The mid-spectrum solver inverts `K = (H - sigma)^2 + mu` rather than `H`
//! itself: `K` is positive definite, so the factorisation needs no pivoting
//! and the band structure of the disk Hamiltonian (half-width = one lattice
//! row of unknowns) is preserved up to doubling.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::{LatticeError, SparseHermitian};

/// Hermitian lower band, stored row-wise: entry `(i, j)` with
/// `i - bw <= j <= i` lives at `data[i * (bw + 1) + bw - (i - j)]`.
pub struct BandMatrix {
    pub n: usize,
    pub bw: usize,
    pub data: Vec<C64>,
}

impl BandMatrix {
    fn zeros(n: usize, bw: usize) -> Self {
        Self {
            n,
            bw,
            data: vec![C64::from(0.0); n * (bw + 1)],
        }
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut C64 {
        debug_assert!(j <= i && i - j <= self.bw);
        &mut self.data[i * (self.bw + 1) + self.bw - (i - j)]
    }
}

/// Lower band of `(H - sigma)^2 + mu`, assembled sparsely.
pub fn shifted_square_band(h: &SparseHermitian, sigma: f64, mu: f64) -> BandMatrix {
    let bw = 2 * h.bandwidth();
    let mut k = BandMatrix::zeros(h.dim, bw);
    for i in 0..h.dim {
        for a in h.row_ptr[i]..h.row_ptr[i + 1] {
            let l = h.col_idx[a];
            let hil = h.values[a];
            // (H^2)[i][j] over the lower triangle
            for b in h.row_ptr[l]..h.row_ptr[l + 1] {
                let j = h.col_idx[b];
                if j <= i {
                    *k.at_mut(i, j) += hil * h.values[b];
                }
            }
            // -2 sigma H
            if l <= i && sigma != 0.0 {
                *k.at_mut(i, l) -= 2.0 * sigma * hil;
            }
        }
        *k.at_mut(i, i) += C64::from(sigma * sigma + mu);
    }
    k
}

/// In-place banded Cholesky factor `K = L L^dagger`.
pub struct BandCholesky {
    band: BandMatrix,
}

impl BandCholesky {
    /// Right-looking factorisation; the trailing update of each column is
    /// parallelised over rows.
    pub fn factor(mut band: BandMatrix) -> Result<Self, LatticeError> {
        let n = band.n;
        let bw = band.bw;
        let stride = bw + 1;
        let mut col = vec![C64::from(0.0); bw + 1];
        for c in 0..n {
            let reach = bw.min(n - 1 - c);
            let d = band.data[c * stride + bw].re;
            if !(d > 0.0) || !d.is_finite() {
                return Err(LatticeError::FactorisationFailed { row: c, pivot: d });
            }
            let sqrt_d = d.sqrt();
            band.data[c * stride + bw] = C64::from(sqrt_d);
            if reach == 0 {
                continue;
            }
            // raw column below the pivot, pre-scaled to the final L values
            for t in 1..=reach {
                let idx = (c + t) * stride + bw - t;
                col[t] = band.data[idx] / sqrt_d;
            }
            let col_ref = &col[..=reach];
            let tail = &mut band.data[(c + 1) * stride..(c + reach + 1) * stride];
            tail.par_chunks_mut(stride).enumerate().for_each(|(off, row)| {
                let t_i = off + 1;
                let l_ic = col_ref[t_i];
                // write the scaled factor entry
                row[bw - t_i] = l_ic;
                // trailing update K[i][j] -= L[i][c] conj(L[j][c])
                let base = bw - t_i;
                for t_j in 1..=t_i {
                    row[base + t_j] -= l_ic * col_ref[t_j].conj();
                }
            });
        }
        Ok(Self { band })
    }

    pub fn n(&self) -> usize {
        self.band.n
    }

    /// Solves `K x = b` by forward and backward substitution.
    pub fn solve_in_place(&self, x: &mut [C64]) {
        let n = self.band.n;
        let bw = self.band.bw;
        let stride = bw + 1;
        let data = &self.band.data;
        // L y = b
        for i in 0..n {
            let row = &data[i * stride..(i + 1) * stride];
            let reach = bw.min(i);
            let mut acc = x[i];
            for t in 1..=reach {
                acc -= row[bw - t] * x[i - t];
            }
            x[i] = acc / row[bw].re;
        }
        // L^dagger x = y
        for i in (0..n).rev() {
            let row = &data[i * stride..(i + 1) * stride];
            let reach = bw.min(i);
            let xi = x[i] / row[bw].re;
            x[i] = xi;
            for t in 1..=reach {
                x[i - t] -= row[bw - t].conj() * xi;
            }
        }
    }
}
