//! Isotropic S-curvature test over the catalog.

use homfinsler::catalog;
use homfinsler::curvature::isotropy_test;
use homfinsler::metrics::{MetricSpec, PhiFamily};

fn main() -> homfinsler::Result<()> {
    for e in catalog::all() {
        for phi in [PhiFamily::Exponential, PhiFamily::InfiniteSeries] {
            let spec = MetricSpec::new(phi, e.v.b)?;
            let r = isotropy_test(&e.model, &e.v, &spec, 64)?;
            println!(
                "{:<22} {:<16} isotropic = {:<5} vanishing = {:<5} c = {:.3e}  max|S| = {:.3e}",
                e.name,
                spec.phi.name(),
                r.isotropic,
                r.vanishing,
                r.c_h,
                r.max_abs_s
            );
        }
    }
    Ok(())
}
