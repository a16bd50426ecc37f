//! S-curvature of the Heisenberg group with an exponential metric, by the
//! closed form, the generic formula and the `r00`/`s0` tensors.

use homfinsler::catalog;
use homfinsler::curvature::{s_curvature, s_curvature_via_tensors, Path};
use homfinsler::metrics::{MetricSpec, PhiFamily};
use nalgebra::DVector;

fn main() -> homfinsler::Result<()> {
    let e = catalog::get("heisenberg3")?;
    for phi in [PhiFamily::Exponential, PhiFamily::InfiniteSeries] {
        let spec = MetricSpec::new(phi, e.v.b)?;
        println!("{} (b = {})", spec.phi.name(), spec.b);
        for ym in [[1.0, 1.0, 1.0], [2.0, -1.0, 0.5], [3.0, 0.0, 1.0]] {
            let y = e.model.to_frame(&DVector::from_row_slice(&ym));
            let closed = s_curvature(&e.model, &e.v, &spec, &y, Path::ClosedForm);
            let generic = s_curvature(&e.model, &e.v, &spec, &y, Path::Generic);
            let tensors = s_curvature_via_tensors(&e.model, &e.v, &spec, &y);
            match (closed, generic, tensors) {
                (Ok(c), Ok(g), Ok(t)) => println!(
                    "  y = {ym:?}  closed {c:>22.15e}  generic {g:>22.15e}  tensors {t:>22.15e}"
                ),
                (c, _, _) => println!("  y = {ym:?}  {}", c.unwrap_err()),
            }
        }
    }
    Ok(())
}
