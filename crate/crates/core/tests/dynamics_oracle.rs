//! Cross-validation of the closed-form rotation dynamics: a fourth-order
//! time stepper for the lab-frame Schrödinger equation, a direct
//! matrix-element check of the Majorana return amplitudes on the doubled
//! ladder space, and projections onto the effective eigenstates.

use majorana_disk::dynamics::{
    drive_generator, evolution_operator, evolution_operator_on, overlap_a0, perturbative_overlap,
    transition_amplitudes, DriveSettings,
};
use majorana_disk::edge::{zero_mode, AngularSpinor, EdgeBasis, HalfInt};
use majorana_disk::effective::{eigenstate_on_basis, KGrid};
use majorana_disk::numerics::{self, eigh, rk4_propagate, HermitianOperator};
use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

fn jmax() -> HalfInt {
    HalfInt::try_from_f64(48.5).unwrap()
}

fn zero_mode_coeffs(eps: f64) -> (EdgeBasis, Array1<C64>) {
    let zm = zero_mode(eps, jmax()).unwrap();
    let AngularSpinor::Coefficients { basis, coeffs } = zm.spinor else {
        unreachable!()
    };
    (basis, coeffs)
}

/// The closed-form one-cycle operator reproduces direct integration of the
/// lab-frame equation `i dpsi/dphi = alpha h(theta - phi) psi`.
#[test]
fn closed_form_matches_time_stepping() {
    for &(alpha, steps) in &[(5.0, 60_000_usize), (0.5, 8_000_usize)] {
        let eps = 5.0;
        let (basis, psi0) = zero_mode_coeffs(eps);
        let u = evolution_operator(&DriveSettings::new(alpha, eps, jmax())).unwrap();
        let closed = u.dot(&psi0);
        let stepped = rk4_propagate(
            |phi| {
                drive_generator(&basis, alpha, eps, phi)
                    .expect("drive generator")
            },
            &psi0,
            2.0 * PI,
            steps,
        );
        assert!(stepped.norm_drift < 1e-7);
        let diff = numerics::norm(&(&closed - &stepped.state));
        assert!(
            diff < 1e-6,
            "alpha = {alpha}: closed form vs stepping differ by {diff:.2e}"
        );
    }
}

/// `<m_1|U|m_1> = Re A0` etc., checked against explicit matrix elements on
/// the doubled (both-ladder) space, where the Majorana combinations live.
#[test]
fn majorana_overlaps_match_direct_matrix_elements() {
    let eps = 5.0;
    let alpha = 5.0;
    let (basis1, c1) = zero_mode_coeffs(eps);
    let basis2 = EdgeBasis::subspace_j2(jmax()).unwrap();
    // the mirror ladder's zero mode is the conjugate: coefficients conj(c)
    // attached to the j -> -j partner states, which share the same index
    let c2: Array1<C64> = c1.mapv(|z| z.conj());
    let u1 = evolution_operator_on(&basis1, alpha, eps, 2.0 * PI).unwrap();
    let u2 = evolution_operator_on(&basis2, alpha, eps, 2.0 * PI).unwrap();
    let n = basis1.dim();
    // block-diagonal evolution on J1 ⊕ J2
    let mut u = Array2::<C64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        for k in 0..n {
            u[[i, k]] = u1[[i, k]];
            u[[n + i, n + k]] = u2[[i, k]];
        }
    }
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut m1 = Array1::<C64>::zeros(2 * n);
    let mut m2 = Array1::<C64>::zeros(2 * n);
    for i in 0..n {
        m1[i] = c1[i] / sqrt2;
        m1[n + i] = c2[i] / sqrt2;
        m2[i] = -C64::i() * c1[i] / sqrt2;
        m2[n + i] = C64::i() * c2[i] / sqrt2;
    }
    let a0 = overlap_a0(&DriveSettings::new(alpha, eps, jmax())).unwrap();
    let d11 = numerics::inner(&m1, &u.dot(&m1));
    let d12 = numerics::inner(&m1, &u.dot(&m2));
    let d21 = numerics::inner(&m2, &u.dot(&m1));
    assert!((d11 - C64::from(a0.re)).norm() < 1e-8, "m11 {d11}");
    assert!((d12 - C64::from(a0.im)).norm() < 1e-8, "m12 {d12}");
    assert!((d21 + C64::from(a0.im)).norm() < 1e-8, "m21 {d21}");
}

/// The mirror-ladder zero mode really is the conjugate state: check that the
/// mirror Hamiltonian annihilates it as well.
#[test]
fn mirror_zero_mode_is_conjugate() {
    let eps = 5.0;
    let (_, c1) = zero_mode_coeffs(eps);
    let basis2 = EdgeBasis::subspace_j2(jmax()).unwrap();
    let h2 = majorana_disk::edge::build_edge_hamiltonian(&basis2, eps).unwrap();
    let c2 = c1.mapv(|z| z.conj());
    let hv = h2.entries().dot(&c2);
    assert!(numerics::norm(&hv) < 1e-6, "residual {:.2e}", numerics::norm(&hv));
}

/// Perturbative one-cycle overlap against the exact numerics across the
/// near-adiabatic window, and the location of the high-fidelity ratios.
#[test]
fn perturbative_overlap_tracks_numerics() {
    let eps = 5.0;
    let mut alpha = 4.0;
    let mut worst = 0.0_f64;
    let mut re_values = Vec::new();
    while alpha <= 10.0 + 1e-9 {
        let a0 = overlap_a0(&DriveSettings::new(alpha, eps, jmax())).unwrap();
        let pert = perturbative_overlap(alpha, eps);
        worst = worst.max((a0.re - pert).abs());
        re_values.push((alpha, a0.re));
        alpha += 0.1;
    }
    assert!(worst <= 5e-3, "worst deviation {worst:.2e}");
    // spot value from the closed formula
    let direct = -1.0 + ((4.3_f64) * 20.0_f64.sqrt() * PI).sin().powi(2) / (2.0 * 4.3 * 4.3);
    let a0 = overlap_a0(&DriveSettings::new(4.3, eps, jmax())).unwrap();
    assert!((a0.re - direct).abs() <= 5e-3);
}

/// Second-order transition probabilities match projections of the co-moving
/// evolution onto the effective eigenstates.
#[test]
fn transition_amplitudes_match_projection() {
    let eps = 5.0;
    let alpha = 6.0;
    let basis = EdgeBasis::subspace_j1(jmax()).unwrap();
    let h = majorana_disk::edge::build_edge_hamiltonian(&basis, eps).unwrap();
    let p = basis.momentum_diagonal();
    let mut generator = h.into_entries();
    generator.mapv_inplace(|z| z * alpha);
    for (i, &j) in p.iter().enumerate() {
        generator[[i, i]] -= C64::from(j);
    }
    // co-moving evolution (no angle-translation prefactor)
    let u = eigh(&HermitianOperator::new(generator).unwrap())
        .unwrap()
        .unitary_exp(2.0 * PI);
    let (_, psi0) = zero_mode_coeffs(eps);
    let evolved = u.dot(&psi0);
    let grid = KGrid::for_eps(eps);
    let t = transition_amplitudes(alpha, eps, 2.0 * PI);
    for (n, expected) in [(1_i64, t.a_plus), (-1_i64, t.a_minus)] {
        let state = eigenstate_on_basis(eps, n, &basis, &grid);
        let amp = numerics::inner(&state, &evolved);
        let got = amp.norm_sqr();
        let want = expected.norm_sqr();
        assert!(
            (got - want).abs() <= 0.1 * want,
            "n = {n}: projected probability {got:.4e} vs perturbative {want:.4e}"
        );
    }
}

/// Floquet sweep: the quasi-energy gap closes at the critical ratio and the
/// pi mode persists beyond it.
#[test]
fn floquet_transition_sweep() {
    use majorana_disk::dynamics::floquet_spectrum;
    let eps = 5.0;
    let mut alpha = 0.2;
    let mut min_gap = f64::INFINITY;
    let mut argmin = 0.0;
    while alpha <= 1.2 + 1e-9 {
        let r = floquet_spectrum(&DriveSettings::new(alpha, eps, jmax())).unwrap();
        if r.gap_at_zero < min_gap {
            min_gap = r.gap_at_zero;
            argmin = alpha;
        }
        if alpha > 1.02 {
            assert!(r.has_pi_mode, "missing pi mode at alpha = {alpha:.2}");
        }
        alpha += 0.02;
    }
    assert!((argmin - 1.0).abs() <= 0.02 + 1e-9, "gap minimum at {argmin:.2}");
    assert!(min_gap < 0.02, "gap minimum {min_gap:.3}");
}

/// Return amplitude near +1 in the sudden limit and at -1 on the
/// high-fidelity ratios.
#[test]
fn sudden_and_high_fidelity_limits() {
    let eps = 5.0;
    for &alpha in &[0.05, 0.1, 0.15, 0.2] {
        let a0 = overlap_a0(&DriveSettings::new(alpha, eps, jmax())).unwrap();
        assert!((a0.re - 1.0).abs() < 2e-2, "alpha = {alpha}: Re A0 = {}", a0.re);
    }
    let gap = (4.0_f64 * eps).sqrt();
    for nu in [19_u64, 23, 30] {
        let alpha = nu as f64 / gap;
        let a0 = overlap_a0(&DriveSettings::new(alpha, eps, jmax())).unwrap();
        assert!(
            (a0.re + 1.0).abs() < 2e-2,
            "nu = {nu}: Re A0 = {}",
            a0.re
        );
    }
}

/// Local maxima of |Re A0| sit at the high-fidelity ratios nu / sqrt(4 eps).
#[test]
fn high_fidelity_points_are_local_maxima() {
    let eps = 5.0;
    let gap = (4.0_f64 * eps).sqrt();
    let step = 0.01;
    let mut values = Vec::new();
    let mut alpha = 4.0;
    while alpha <= 10.0 + 1e-9 {
        let a0 = overlap_a0(&DriveSettings::new(alpha, eps, jmax())).unwrap();
        values.push((alpha, a0.re.abs()));
        alpha += step;
    }
    let mut found = 0;
    for w in values.windows(3) {
        if w[1].1 > w[0].1 && w[1].1 > w[2].1 {
            let nearest = (w[1].0 * gap).round() / gap;
            assert!(
                (w[1].0 - nearest).abs() <= step + 1e-9,
                "local max at alpha = {:.3} not at a fidelity ratio",
                w[1].0
            );
            found += 1;
        }
    }
    assert!(found >= 20, "expected a comb of maxima, found {found}");
}
