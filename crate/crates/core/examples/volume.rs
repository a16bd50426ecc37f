//! Busemann–Hausdorff and Holmes–Thompson volume coefficients as b varies.

use homfinsler::metrics::PhiFamily;
use homfinsler::volume::volume_coefficients;

fn main() -> homfinsler::Result<()> {
    let n = 3;
    println!("{:<12} {:>5} {:>20} {:>20}", "family", "b", "f_bh", "f_ht");
    for phi in [PhiFamily::Randers, PhiFamily::Exponential, PhiFamily::Matsumoto] {
        for b in [0.1, 0.3, 0.5, 0.7, 0.9] {
            match volume_coefficients(&phi, b, n) {
                Ok(v) => println!("{:<12} {b:>5} {:>20.15} {:>20.15}", phi.name(), v.f_bh, v.f_ht),
                Err(e) => println!("{:<12} {b:>5} {e}", phi.name()),
            }
        }
    }
    // Randers BH has the closed form (1 − b²)^{(n+1)/2}
    let b: f64 = 0.5;
    let f = volume_coefficients(&PhiFamily::Randers, b, n)?.f_bh;
    println!("\nRanders BH at b = 0.5: {f:.15} vs {:.15}", (1.0 - b * b).powf((n as f64 + 1.0) / 2.0));
    Ok(())
}
