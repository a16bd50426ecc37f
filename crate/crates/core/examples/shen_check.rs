//! Positivity check `φ(s) > 0`, `φ − sφ′ + (b² − s²)φ″ > 0` on `[−b, b]`.

use homfinsler::metrics::{shen_check, MetricSpec, PhiFamily};

fn main() -> homfinsler::Result<()> {
    let families = [
        PhiFamily::Randers,
        PhiFamily::Matsumoto,
        PhiFamily::Kropina,
        PhiFamily::InfiniteSeries,
        PhiFamily::Exponential,
        PhiFamily::polynomial(&[1.0, 0.0, 0.5]),
    ];
    for phi in families {
        for b in [0.3, 0.5, 0.9] {
            let r = shen_check(&MetricSpec::new(phi.clone(), b)?, 401)?;
            println!(
                "{:<16} b = {b}  holds = {:<5}  min = {:>10.6} at s = {:>6.3}  min φ = {:.6}",
                phi.name(),
                r.holds,
                r.min_value,
                r.argmin_s,
                r.phi_min
            );
        }
    }
    Ok(())
}
