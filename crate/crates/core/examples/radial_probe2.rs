use majorana_disk::dynamics::{evolution_operator, perturbative_overlap, DriveSettings};
use majorana_disk::edge::{zero_mode, AngularSpinor, HalfInt};
use majorana_disk::numerics;

fn main() {
    let jm = HalfInt::try_from_f64(48.5).unwrap();
    let eps = 5.0;
    let zm = zero_mode(eps, jm).unwrap();
    let AngularSpinor::Coefficients { coeffs, .. } = zm.spinor else { unreachable!() };
    let mut worst = (0.0_f64, 0.0_f64);
    let mut alpha = 4.0_f64;
    while alpha <= 10.0 + 1e-9 {
        let u = evolution_operator(&DriveSettings::new(alpha, eps, jm)).unwrap();
        let a0 = numerics::inner(&coeffs, &u.dot(&coeffs));
        let d = (a0.re - perturbative_overlap(alpha, eps)).abs();
        if d > worst.1 {
            worst = (alpha, d);
        }
        if alpha < 4.65 || (alpha - alpha.round()).abs() < 0.049 {
            println!("alpha={alpha:.1}: dev={d:.2e}");
        }
        alpha += 0.1;
    }
    println!("worst at alpha={:.1}: {:.3e}", worst.0, worst.1);
}
