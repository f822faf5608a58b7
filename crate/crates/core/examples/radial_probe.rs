// deviation of each exact profile from the shared asymptotic envelope,
// L2 on rho in [0.9, 1], relative to the envelope norm on that window
use majorana_disk::edge::HalfInt;
use majorana_disk::radial::{asymptotic_radial, exact_radial};

fn main() {
    let gamma = 1.0 / 16.0;
    let lambda = 50.0;
    let n = 2000usize;
    let asym = asymptotic_radial(gamma, lambda, n);
    let scale = (4.0 * std::f64::consts::PI).sqrt();
    let lo = (0.9 * n as f64) as usize;
    let mut nb = 0.0;
    for i in lo..n {
        nb += asym.f[i] * asym.f[i];
    }
    let mut twice_j = -29i64; // j = -14.5 .. 8.5
    while twice_j <= 17 {
        let j = HalfInt::from_twice(twice_j);
        let ex = exact_radial(j, gamma, lambda, n).unwrap();
        let nf = ex.normalised_f();
        let mut dot = 0.0;
        for i in lo..n {
            dot += nf[i] * scale * asym.f[i];
        }
        let sign = dot.signum();
        let mut dist2 = 0.0;
        let mut na = 0.0;
        for i in lo..n {
            let d = sign * nf[i] * scale - asym.f[i];
            dist2 += d * d;
            na += nf[i] * nf[i] * scale * scale;
        }
        // shape-only: both restricted curves renormalised on the window
        let cos = sign * dot / (na.sqrt() * nb.sqrt());
        let shape = (2.0 * (1.0 - cos)).sqrt();
        println!("j = {:+.1}: E = {:+.5}, rel dev = {:.2}%, shape-only = {:.2}%, amp ratio = {:.3}",
            j.value(), ex.energy, 100.0 * (dist2 / nb).sqrt(), 100.0 * shape, (na / nb).sqrt());
        twice_j += 2;
    }
}
