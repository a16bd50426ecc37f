//! Expanded polynomial forms of dA/ds, d²A/ds², dB/ds, d²B/ds² against the
//! derivatives computed from the quotient rule.

use homfinsler::curvature::derivative_audit;

fn main() {
    for (b, n) in [(0.5, 2), (0.3, 3), (0.8, 6)] {
        let r = derivative_audit(b, n, 50);
        println!("b = {b}, n = {n}");
        for e in &r.entries {
            println!(
                "  {:<8} max rel dev {:>10.3e} (s = {:>7.4})  {}",
                e.quantity.as_str(),
                e.max_rel_dev,
                e.worst_s,
                if e.agrees { "agrees" } else { "MISMATCH, derived form used" }
            );
        }
    }
}
