// measure theta-form vs diagonalized profile distances across eps
use majorana_disk::edge::{majorana_pair, zero_mode, HalfInt, ThetaMode};

fn main() {
    let jmax = HalfInt::try_from_f64(48.5).unwrap();
    for &eps in &[2.0, 3.0, 4.0, 5.0] {
        let zm = zero_mode(eps, jmax).unwrap();
        let pair = majorana_pair(&zm.spinor, 1024);
        let tm = ThetaMode::new(eps);
        let d_theta = pair.theta[1] - pair.theta[0];
        let mut dist2 = 0.0_f64;
        for (t, &phi) in pair.theta.iter().zip(pair.phi_profile.iter()) {
            let diff = phi - tm.eval(*t);
            dist2 += diff * diff * d_theta;
        }
        dist2 /= 2.0;
        println!("eps={eps}: |E0|={:.3e} dist={:.4e} dist^2={:.4e}", zm.energy.abs(), dist2.sqrt(), dist2);
    }
}
