//! Square-lattice Bogoliubov-de Gennes model on a disk: the independent
//! tight-binding check on the continuum edge theory.
//!
//! One chiral block lives on two Nambu components per site,
//!
//! ```text
//! H_+ = eps_onsite tau_z - u (hops) tau_z + i Delta [(x-hops) tau_y + (y-hops) tau_x]
//! ```
//!
//! with `u = 1/(a k_F)^2`, `Delta = sqrt(2 gamma)/(2 a k_F)`,
//! `eps_onsite = 4u - 1` (energies in units of the Fermi energy). The
//! opposite block is the conjugate partner `H_- = -i tau_y H_+^* i tau_y`,
//! and an in-plane Zeeman field couples the two blocks. Open boundaries are
//! realised by bond omission: hopping simply stops at the rim.

mod banded;
mod eigensolve;

pub use eigensolve::{mid_spectrum_states, EigenPair, SolveOptions};

use std::collections::HashMap;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("matrix is not Hermitian: |A - A^dagger| reaches {0:.3e}")]
    NotHermitian(f64),
    #[error("Cholesky factorisation failed at row {row}: pivot {pivot:.3e}")]
    FactorisationFailed { row: usize, pivot: f64 },
    #[error("eigensolver converged only {achieved} of {wanted} states (worst residual {residual:.3e})")]
    NotConverged {
        achieved: usize,
        wanted: usize,
        residual: f64,
    },
    #[error("Zeeman strength must be non-negative")]
    NegativeZeeman,
}

/// Masked square-lattice disk: all integer sites with
/// `(m a)^2 + (n a)^2 <= R^2`, listed row by row (fixed `n`, increasing `m`).
#[derive(Debug, Clone)]
pub struct LatticeDisk {
    pub radius: f64,
    pub spacing: f64,
    pub sites: Vec<(i32, i32)>,
    index: HashMap<(i32, i32), usize>,
}

impl LatticeDisk {
    pub fn new(radius: f64, spacing: f64) -> Self {
        let reach = (radius / spacing).floor() as i32;
        let mut sites = Vec::new();
        for n in -reach..=reach {
            for m in -reach..=reach {
                let r2 = (m as f64 * spacing).powi(2) + (n as f64 * spacing).powi(2);
                if r2 <= radius * radius {
                    sites.push((m, n));
                }
            }
        }
        let index = sites
            .iter()
            .enumerate()
            .map(|(i, &s)| (s, i))
            .collect();
        Self {
            radius,
            spacing,
            sites,
            index,
        }
    }

    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    pub fn index_of(&self, site: (i32, i32)) -> Option<usize> {
        self.index.get(&site).copied()
    }

    /// Polar angle of a site, in `(-pi, pi]`.
    pub fn theta(&self, site: (i32, i32)) -> f64 {
        (site.1 as f64).atan2(site.0 as f64)
    }

    /// Radius of a site in units of the disk radius.
    pub fn rho(&self, site: (i32, i32)) -> f64 {
        let (m, n) = site;
        ((m as f64 * self.spacing).hypot(n as f64 * self.spacing)) / self.radius
    }
}

/// Dimensionless tight-binding parameters (energies in Fermi-energy units).
#[derive(Debug, Clone, Copy)]
pub struct LatticeParams {
    /// onsite energy `4u - 1`
    pub onsite: f64,
    /// hopping `u = 1/(a k_F)^2`
    pub hopping: f64,
    /// pairing `Delta = sqrt(2 gamma) / (2 a k_F)`
    pub pairing: f64,
    pub gamma: f64,
    /// `k_F R`
    pub lambda: f64,
    /// Zeeman energy `E_Z / E_F`
    pub zeeman: f64,
    /// field angle
    pub field_angle: f64,
}

impl LatticeParams {
    /// Consistent parameter set from the continuum inputs; `a_kf` is the
    /// lattice constant in Fermi wavelengths (`a k_F`).
    pub fn from_continuum(gamma: f64, a_kf: f64, lambda: f64) -> Self {
        let u = 1.0 / (a_kf * a_kf);
        Self {
            onsite: 4.0 * u - 1.0,
            hopping: u,
            pairing: (2.0 * gamma).sqrt() / (2.0 * a_kf),
            gamma,
            lambda,
            zeeman: 0.0,
            field_angle: 0.0,
        }
    }

    /// Sets the Zeeman scale from the dimensionless edge coupling `eps`:
    /// `E_Z / E_F = 2 eps sqrt(2 gamma) / lambda`.
    pub fn with_edge_zeeman(mut self, eps: f64) -> Self {
        self.zeeman = 2.0 * eps * (2.0 * self.gamma).sqrt() / self.lambda;
        self
    }

    pub fn with_field_angle(mut self, phi: f64) -> Self {
        self.field_angle = phi;
        self
    }

    /// Disk radius in lattice units, `R / a = lambda / (a k_F)`.
    pub fn disk_radius(&self, a_kf: f64) -> f64 {
        self.lambda / a_kf
    }
}

/// Compressed sparse rows of a Hermitian operator.
#[derive(Debug, Clone)]
pub struct SparseHermitian {
    pub dim: usize,
    pub row_ptr: Vec<usize>,
    pub col_idx: Vec<usize>,
    pub values: Vec<C64>,
}

impl SparseHermitian {
    /// Builds CSR from triplets, summing duplicates and verifying Hermitian
    /// symmetry to 1e-12.
    pub fn from_triplets(
        dim: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Result<Self, LatticeError> {
        let mut rows: Vec<HashMap<usize, C64>> = vec![HashMap::new(); dim];
        for (r, c, v) in triplets {
            *rows[r].entry(c).or_insert(C64::from(0.0)) += v;
        }
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for row in &rows {
            let mut entries: Vec<(usize, C64)> =
                row.iter().map(|(&c, &v)| (c, v)).collect();
            entries.sort_by_key(|e| e.0);
            for (c, v) in entries {
                if v.norm() > 0.0 {
                    col_idx.push(c);
                    values.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        let out = Self {
            dim,
            row_ptr,
            col_idx,
            values,
        };
        let asym = out.hermiticity_defect();
        if asym > 1e-12 {
            return Err(LatticeError::NotHermitian(asym));
        }
        Ok(out)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    fn get(&self, r: usize, c: usize) -> C64 {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        match self.col_idx[lo..hi].binary_search(&c) {
            Ok(k) => self.values[lo + k],
            Err(_) => C64::from(0.0),
        }
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let c = self.col_idx[k];
                worst = worst.max((self.values[k] - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        use rayon::prelude::*;
        y.par_iter_mut().enumerate().for_each(|(r, out)| {
            let mut acc = C64::from(0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.values[k] * x[self.col_idx[k]];
            }
            *out = acc;
        });
    }

    pub fn matvec_alloc(&self, x: &Array1<C64>) -> Array1<C64> {
        let mut y = Array1::<C64>::zeros(self.dim);
        self.matvec(x.as_slice().unwrap(), y.as_slice_mut().unwrap());
        y
    }

    /// Largest column offset from the diagonal; the band half-width.
    pub fn bandwidth(&self) -> usize {
        let mut bw = 0usize;
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                bw = bw.max(self.col_idx[k].abs_diff(r));
            }
        }
        bw
    }

    pub fn to_dense(&self) -> Array2<C64> {
        let mut m = Array2::<C64>::zeros((self.dim, self.dim));
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[[r, self.col_idx[k]]] = self.values[k];
            }
        }
        m
    }

    /// Infinity-norm estimate used for spectral scaling.
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|r| {
                (self.row_ptr[r]..self.row_ptr[r + 1])
                    .map(|k| self.values[k].norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiralSign {
    Plus,
    Minus,
}

/// 2x2 blocks of one chiral Hamiltonian: onsite, x-hop, y-hop.
fn chiral_blocks(params: &LatticeParams, sign: ChiralSign) -> ([[C64; 2]; 2], [[C64; 2]; 2], [[C64; 2]; 2]) {
    let (e, u, d) = (params.onsite, params.hopping, params.pairing);
    let z = |re: f64, im: f64| C64::new(re, im);
    match sign {
        // H_+: eps tau_z - u tau_z per hop + i Delta [(x) tau_y + (y) tau_x]
        ChiralSign::Plus => (
            [[z(e, 0.0), z(0.0, 0.0)], [z(0.0, 0.0), z(-e, 0.0)]],
            [[z(-u, 0.0), z(d, 0.0)], [z(-d, 0.0), z(u, 0.0)]],
            [[z(-u, 0.0), z(0.0, d)], [z(0.0, d), z(u, 0.0)]],
        ),
        // H_-: sign-flipped tau_z parts, identical pairing
        ChiralSign::Minus => (
            [[z(-e, 0.0), z(0.0, 0.0)], [z(0.0, 0.0), z(e, 0.0)]],
            [[z(u, 0.0), z(d, 0.0)], [z(-d, 0.0), z(-u, 0.0)]],
            [[z(u, 0.0), z(0.0, d)], [z(0.0, d), z(-u, 0.0)]],
        ),
    }
}

/// One chiral Nambu block on the disk, dimension `2 * site_count`.
pub fn build_chiral_block(
    params: &LatticeParams,
    disk: &LatticeDisk,
    sign: ChiralSign,
) -> Result<SparseHermitian, LatticeError> {
    let (onsite, hop_x, hop_y) = chiral_blocks(params, sign);
    let n = disk.site_count();
    let mut triplets = Vec::with_capacity(n * 10);
    let mut push_block = |row_site: usize, col_site: usize, b: &[[C64; 2]; 2]| {
        for (a, row) in b.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v.norm() > 0.0 {
                    triplets.push((2 * row_site + a, 2 * col_site + c, v));
                }
            }
        }
    };
    for (s, &(m, n_c)) in disk.sites.iter().enumerate() {
        push_block(s, s, &onsite);
        // bonds to +x and +y neighbours (with the conjugate direction), so
        // every bond is visited once; missing neighbours are simply omitted
        if let Some(t) = disk.index_of((m + 1, n_c)) {
            push_block(t, s, &hop_x);
            push_block(s, t, &dagger(&hop_x));
        }
        if let Some(t) = disk.index_of((m, n_c + 1)) {
            push_block(t, s, &hop_y);
            push_block(s, t, &dagger(&hop_y));
        }
    }
    SparseHermitian::from_triplets(2 * n, triplets)
}

fn dagger(b: &[[C64; 2]; 2]) -> [[C64; 2]; 2] {
    [
        [b[0][0].conj(), b[1][0].conj()],
        [b[0][1].conj(), b[1][1].conj()],
    ]
}

/// The conjugate-partner construction `H_- = -i tau_y H_+^* i tau_y`, applied
/// blockwise; used to cross-check the expanded form of the minus block.
pub fn conjugate_chiral_block(h_plus: &SparseHermitian) -> SparseHermitian {
    // per 2x2 block [[a, b], [c, d]] -> [[d*, -c*], [-b*, a*]]
    let dim = h_plus.dim;
    let mut triplets = Vec::with_capacity(h_plus.nnz());
    for r in 0..dim {
        for k in h_plus.row_ptr[r]..h_plus.row_ptr[r + 1] {
            let c = h_plus.col_idx[k];
            let v = h_plus.values[k].conj();
            // indices within the 2x2 block
            let (br, bc) = (r % 2, c % 2);
            let (site_r, site_c) = (r - br, c - bc);
            let (nr, nc, nv) = match (br, bc) {
                (0, 0) => (1, 1, v),
                (0, 1) => (1, 0, -v),
                (1, 0) => (0, 1, -v),
                _ => (0, 0, v),
            };
            triplets.push((site_r + nr, site_c + nc, nv));
        }
    }
    SparseHermitian::from_triplets(dim, triplets).expect("conjugation preserves hermiticity")
}

/// Full four-component Hamiltonian `H_+ ⊕ H_- + H_Z(phi)`, dimension
/// `4 * site_count`. Per-site component order: the plus block pair, then the
/// minus block pair; the Zeeman field couples the blocks with phase
/// `e^{±i phi}` on the anti-diagonal.
pub fn build_full_tsc(
    params: &LatticeParams,
    disk: &LatticeDisk,
) -> Result<SparseHermitian, LatticeError> {
    if params.zeeman < 0.0 {
        return Err(LatticeError::NegativeZeeman);
    }
    let (onsite_p, hop_x_p, hop_y_p) = chiral_blocks(params, ChiralSign::Plus);
    let (onsite_m, hop_x_m, hop_y_m) = chiral_blocks(params, ChiralSign::Minus);
    let n = disk.site_count();
    let mut triplets = Vec::with_capacity(n * 24);
    let mut push_block =
        |row_site: usize, col_site: usize, offset: usize, b: &[[C64; 2]; 2]| {
            for (a, row) in b.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    if v.norm() > 0.0 {
                        triplets.push((4 * row_site + offset + a, 4 * col_site + offset + c, v));
                    }
                }
            }
        };
    for (s, &(m, n_c)) in disk.sites.iter().enumerate() {
        push_block(s, s, 0, &onsite_p);
        push_block(s, s, 2, &onsite_m);
        if let Some(t) = disk.index_of((m + 1, n_c)) {
            push_block(t, s, 0, &hop_x_p);
            push_block(s, t, 0, &dagger(&hop_x_p));
            push_block(t, s, 2, &hop_x_m);
            push_block(s, t, 2, &dagger(&hop_x_m));
        }
        if let Some(t) = disk.index_of((m, n_c + 1)) {
            push_block(t, s, 0, &hop_y_p);
            push_block(s, t, 0, &dagger(&hop_y_p));
            push_block(t, s, 2, &hop_y_m);
            push_block(s, t, 2, &dagger(&hop_y_m));
        }
    }
    // Zeeman: couples (plus, a) <-> (minus, b) and (plus, b) <-> (minus, a)
    // with phase e^{i phi}
    let ez = C64::from(params.zeeman) * (C64::i() * params.field_angle).exp();
    if params.zeeman > 0.0 {
        for s in 0..n {
            triplets.push((4 * s, 4 * s + 3, ez));
            triplets.push((4 * s + 3, 4 * s, ez.conj()));
            triplets.push((4 * s + 1, 4 * s + 2, ez));
            triplets.push((4 * s + 2, 4 * s + 1, ez.conj()));
        }
    }
    SparseHermitian::from_triplets(4 * n, triplets)
}

/// Charge conjugation on the four-component lattice spinor; anticommutes
/// with the full Hamiltonian (including the Zeeman term at field angle
/// `phi`) and squares to `+1`.
///
/// Within each chiral block the operation swaps the Nambu components and
/// conjugates; the Zeeman coupling fixes the relative phase of the two
/// blocks to `-e^{-2 i phi}`.
pub fn charge_conjugate(state: &Array1<C64>, field_angle: f64) -> Array1<C64> {
    let n = state.len() / 4;
    let c = -(C64::i() * (-2.0 * field_angle)).exp();
    let mut out = Array1::<C64>::zeros(state.len());
    for s in 0..n {
        out[4 * s] = state[4 * s + 1].conj();
        out[4 * s + 1] = state[4 * s].conj();
        out[4 * s + 2] = c * state[4 * s + 3].conj();
        out[4 * s + 3] = c * state[4 * s + 2].conj();
    }
    out
}

/// Site-resolved probability density `rho_s = sum_components |psi|^2`;
/// sums to one for a normalised state.
pub fn probability_density(state: &Array1<C64>, disk: &LatticeDisk) -> Vec<f64> {
    let ncomp = state.len() / disk.site_count();
    disk.sites
        .iter()
        .enumerate()
        .map(|(s, _)| {
            (0..ncomp)
                .map(|c| state[ncomp * s + c].norm_sqr())
                .sum::<f64>()
        })
        .collect()
}

/// Expectation of the total angular momentum `-i d/dtheta - tau_z / 2` for a
/// two-component chiral-block state, with the angular derivative evaluated
/// by antisymmetrised central differences on the lattice.
pub fn angular_momentum_expectation(state: &Array1<C64>, disk: &LatticeDisk) -> f64 {
    let mut acc = 0.0_f64;
    let ncomp = 2usize;
    for (s, &(m, n)) in disk.sites.iter().enumerate() {
        let x = m as f64;
        let y = n as f64;
        for c in 0..ncomp {
            let here = state[ncomp * s + c];
            // d/dtheta = x d/dy - y d/dx, central differences with bond
            // omission at the rim; antisymmetrised so the expectation is real
            let mut deriv = C64::from(0.0);
            if let (Some(up), Some(dn)) = (disk.index_of((m, n + 1)), disk.index_of((m, n - 1))) {
                deriv += (state[ncomp * up + c] - state[ncomp * dn + c]) * (x / 2.0);
            }
            if let (Some(rp), Some(rm)) = (disk.index_of((m + 1, n)), disk.index_of((m - 1, n))) {
                deriv -= (state[ncomp * rp + c] - state[ncomp * rm + c]) * (y / 2.0);
            }
            acc += (here.conj() * (-C64::i()) * deriv).re;
            // -tau_z / 2
            let tz = if c == 0 { 0.5 } else { -0.5 };
            acc -= tz * here.norm_sqr();
        }
    }
    acc
}

/// Winding number of one spinor component around a rim ring, counted from
/// accumulated phase differences where the amplitude is significant.
pub fn component_winding(state: &Array1<C64>, disk: &LatticeDisk, component: usize) -> i64 {
    let ncomp = 2usize;
    let mut ring: Vec<(f64, C64)> = disk
        .sites
        .iter()
        .enumerate()
        .filter(|(_, &site)| {
            let rho = disk.rho(site);
            rho >= 1.0 - 1.5 * disk.spacing / disk.radius
        })
        .map(|(s, &site)| (disk.theta(site), state[ncomp * s + component]))
        .collect();
    ring.sort_by(|a, b| a.0.total_cmp(&b.0));
    let scale = ring.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max);
    let mut total = 0.0;
    let mut prev: Option<C64> = None;
    let mut first: Option<C64> = None;
    for &(_, v) in ring.iter() {
        if v.norm() < 1e-3 * scale {
            continue;
        }
        if let Some(p) = prev {
            total += (v / p).arg();
        } else {
            first = Some(v);
        }
        prev = Some(v);
    }
    if let (Some(p), Some(f)) = (prev, first) {
        total += (f / p).arg();
    }
    (total / (2.0 * std::f64::consts::PI)).round() as i64
}

/// One classified in-gap edge state.
#[derive(Debug, Clone)]
pub struct EdgeStateInfo {
    pub energy: f64,
    /// expectation of the angular momentum operator
    pub j_expectation: f64,
    /// nearest half-integer
    pub j: f64,
    /// set when the expectation is more than 0.2 away from a half-integer
    pub ambiguous: bool,
    /// relative error against the linear edge dispersion
    pub gamma_c: f64,
}

/// Census of the in-gap edge states of one chiral block.
#[derive(Debug, Clone)]
pub struct EdgeCensus {
    pub edge_states: Vec<EdgeStateInfo>,
    /// smallest |E| among delocalised (bulk) states
    pub bulk_onset: f64,
    pub j_min: f64,
    pub j_max: f64,
}

impl EdgeCensus {
    pub fn count(&self) -> usize {
        self.edge_states.len()
    }
}

/// Classifies chiral-block eigenpairs into rim-localised edge states and
/// bulk states. A state is edge-like when at least half its density sits in
/// the outer rim shell and its energy lies below the bulk onset; `j` is
/// assigned from the angular-momentum expectation.
pub fn classify_edge_states(
    pairs: &[EigenPair],
    disk: &LatticeDisk,
    params: &LatticeParams,
) -> EdgeCensus {
    let rim_weight = |v: &Array1<C64>| -> f64 {
        let density = probability_density(v, disk);
        disk.sites
            .iter()
            .enumerate()
            .filter(|(_, &site)| disk.rho(site) >= 0.8)
            .map(|(s, _)| density[s])
            .sum()
    };
    let mut bulk_onset = f64::INFINITY;
    let mut candidates = Vec::new();
    for p in pairs {
        if rim_weight(&p.vector) >= 0.5 {
            candidates.push(p);
        } else {
            bulk_onset = bulk_onset.min(p.energy.abs());
        }
    }
    let mut edge_states = Vec::new();
    let dispersion = (2.0 * params.gamma).sqrt() / params.lambda;
    for p in candidates {
        if p.energy.abs() >= bulk_onset {
            continue;
        }
        let j_expectation = angular_momentum_expectation(&p.vector, disk);
        let j = (2.0 * j_expectation).round() / 2.0;
        let ambiguous = (j_expectation - j).abs() > 0.2 || (2.0 * j).rem_euclid(2.0) == 0.0;
        let expected = dispersion * j.abs();
        let gamma_c = if expected > 0.0 {
            (p.energy.abs() - expected).abs() / expected
        } else {
            f64::INFINITY
        };
        edge_states.push(EdgeStateInfo {
            energy: p.energy,
            j_expectation,
            j,
            ambiguous,
            gamma_c,
        });
    }
    edge_states.sort_by(|a, b| a.j.total_cmp(&b.j));
    let j_min = edge_states.iter().map(|e| e.j).fold(f64::INFINITY, f64::min);
    let j_max = edge_states
        .iter()
        .map(|e| e.j)
        .fold(f64::NEG_INFINITY, f64::max);
    EdgeCensus {
        edge_states,
        bulk_onset,
        j_min,
        j_max,
    }
}

/// A localised Majorana zero mode of the full model.
#[derive(Debug, Clone)]
pub struct MajoranaMode {
    pub density: Vec<f64>,
    /// circular mean of the density's angular distribution
    pub angular_center: f64,
    /// density fraction in the rim shell `rho >= 0.8`
    pub rim_fraction: f64,
}

/// Combines the two near-zero eigenvectors of the full model into the two
/// self-conjugate Majorana modes, maximally localised at opposite rim angles.
///
/// The raw eigenvectors mix the Majoranas with an arbitrary phase; the
/// physical pair diagonalises the position observable `cos(theta - phi)`
/// within the two-dimensional zero-energy space.
pub fn majorana_modes(
    pairs: &[EigenPair],
    disk: &LatticeDisk,
    field_angle: f64,
) -> Option<(MajoranaMode, MajoranaMode)> {
    let mut by_abs: Vec<&EigenPair> = pairs.iter().collect();
    by_abs.sort_by(|a, b| a.energy.abs().total_cmp(&b.energy.abs()));
    if by_abs.len() < 2 {
        return None;
    }
    let v = &by_abs[0].vector;
    let w = charge_conjugate(v, field_angle);
    // self-conjugate orthonormal combinations
    let sqrt2 = std::f64::consts::SQRT_2;
    let g1: Array1<C64> = (v + &w).mapv(|z| z / C64::from(sqrt2));
    let g2: Array1<C64> = (v - &w).mapv(|z| z * (-C64::i()) / C64::from(sqrt2));
    // position observable within span{g1, g2}
    let ncomp = 4usize;
    let weight = |a: &Array1<C64>, b: &Array1<C64>| -> C64 {
        let mut acc = C64::from(0.0);
        for (s, &site) in disk.sites.iter().enumerate() {
            let c = (disk.theta(site) - field_angle).cos();
            for k in 0..ncomp {
                acc += a[ncomp * s + k].conj() * b[ncomp * s + k] * c;
            }
        }
        acc
    };
    let p11 = weight(&g1, &g1).re;
    let p22 = weight(&g2, &g2).re;
    let p12 = weight(&g1, &g2);
    // 2x2 Hermitian eigenproblem, solved in closed form
    let delta = (p11 - p22) / 2.0;
    let mid = (p11 + p22) / 2.0;
    let r = (delta * delta + p12.norm_sqr()).sqrt();
    let make = |lam: f64| -> Array1<C64> {
        // eigenvector of [[p11, p12], [p12*, p22]] for eigenvalue lam
        let (c1, c2) = if p12.norm() > 1e-14 {
            (p12, C64::from(lam - p11))
        } else if p11 >= p22 {
            (C64::from(1.0), C64::from(0.0))
        } else {
            (C64::from(0.0), C64::from(1.0))
        };
        let norm = (c1.norm_sqr() + c2.norm_sqr()).sqrt();
        let mut out = Array1::<C64>::zeros(g1.len());
        for i in 0..g1.len() {
            out[i] = (g1[i] * c1 + g2[i] * c2) / C64::from(norm);
        }
        out
    };
    let describe = |state: &Array1<C64>| -> MajoranaMode {
        let density = probability_density(state, disk);
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut rim = 0.0;
        for (s, &site) in disk.sites.iter().enumerate() {
            let t = disk.theta(site);
            cx += density[s] * t.cos();
            cy += density[s] * t.sin();
            if disk.rho(site) >= 0.8 {
                rim += density[s];
            }
        }
        MajoranaMode {
            density,
            angular_center: cy.atan2(cx),
            rim_fraction: rim,
        }
    };
    let near = make(mid + r);
    let far = make(mid - r);
    Some((describe(&near), describe(&far)))
}
