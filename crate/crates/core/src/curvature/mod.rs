//! S-curvature and mean Berwald curvature at the origin of `G/H`.
//!
//! Every routine takes tangent vectors `y` in the orthonormal frame of the
//! model (see [`crate::algebra::ReductiveModel::to_frame`]).

mod berwald;
mod coefficients;
mod expanded;
mod fd;
mod isotropy;
mod poly;
mod scurv;

pub use berwald::{berwald_workspace, coefficient_a, coefficient_b, mean_berwald, BerwaldWorkspace, ScalarJet};
pub use coefficients::{
    coefficients_closed, coefficients_exponential, coefficients_generic,
    coefficients_infinite_series, CoefficientBundle, SINGULAR_TOL,
};
pub use expanded::{derivative_audit, AuditEntry, AuditReport, AuditedQuantity, AUDIT_TOL};
pub use fd::{hessian, FD_STEP};
pub use isotropy::{isotropy_test, isotropy_test_seeded, random_unit, IsotropyReport, DEFAULT_ISOTROPY_SEED};
pub use scurv::{s_curvature, s_curvature_via_tensors, CurvatureSample, Path, VALIDATION_SHEN_SAMPLES};

use nalgebra::DVector;

use crate::algebra::{InvariantVector, ReductiveModel};
use crate::error::Result;
use crate::metrics::MetricSpec;

/// S and E at `y` in one call. [`Path::ClosedForm`] uses the closed forms
/// for both; any other path uses the generic S and its finite-difference E.
pub fn curvature_sample(
    model: &ReductiveModel,
    v: &InvariantVector,
    spec: &MetricSpec,
    y: &DVector<f64>,
    path: Path,
) -> Result<CurvatureSample> {
    let (s_path, e_path) = match path {
        Path::ClosedForm => (Path::ClosedForm, Path::ClosedForm),
        _ => (Path::Generic, Path::FiniteDifference),
    };
    Ok(CurvatureSample {
        y: y.clone(),
        s_curvature: s_curvature(model, v, spec, y, s_path)?,
        mean_berwald: mean_berwald(model, v, spec, y, e_path)?,
        path: e_path,
    })
}
