//! Mean Berwald curvature on the 2-dimensional solvable group, closed form
//! against the finite-difference Hessian of S.

use homfinsler::catalog;
use homfinsler::curvature::{mean_berwald, Path};
use homfinsler::metrics::{MetricSpec, PhiFamily};
use nalgebra::DVector;

fn main() -> homfinsler::Result<()> {
    let e = catalog::get("solvable2")?;
    let y = DVector::from_vec(vec![1.0, 0.3]);
    for phi in [PhiFamily::InfiniteSeries, PhiFamily::Exponential] {
        let spec = MetricSpec::new(phi, e.v.b)?;
        let closed = mean_berwald(&e.model, &e.v, &spec, &y, Path::ClosedForm)?;
        let fd = mean_berwald(&e.model, &e.v, &spec, &y, Path::FiniteDifference)?;
        let dev = (&closed - &fd).abs().max();
        println!("{}: E at y = (1, 0.3)", spec.phi.name());
        println!("closed form{closed}finite difference{fd}max deviation {dev:.3e}\n");
    }
    Ok(())
}
