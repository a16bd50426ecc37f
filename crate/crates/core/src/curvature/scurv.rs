//! S-curvature at the origin.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::berwald::{coefficient_a, coefficient_b};
use super::coefficients::{
    coefficients_generic, SINGULAR_TOL, LOCUS_DELTA, LOCUS_EXP_Q, LOCUS_INF_Q,
};
use crate::algebra::{origin_tensors, validate_model, InvariantVector, ReductiveModel};
use crate::error::{FinslerError, Result};
use crate::metrics::{shen_check, EvalMode, FamilyTag, MetricSpec};

/// Grid size used by the validated-mode Shen check.
pub const VALIDATION_SHEN_SAMPLES: usize = 401;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    ClosedForm,
    Generic,
    FiniteDifference,
}

impl Path {
    pub fn as_str(self) -> &'static str {
        match self {
            Path::ClosedForm => "closed_form",
            Path::Generic => "generic",
            Path::FiniteDifference => "finite_difference",
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// S and E at one tangent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSample {
    pub y: DVector<f64>,
    pub s_curvature: f64,
    pub mean_berwald: DMatrix<f64>,
    /// Path that produced `mean_berwald`.
    pub path: Path,
}

/// Bracket data at `y` (frame coordinates).
#[derive(Debug, Clone)]
pub(crate) struct Kinematics {
    pub alpha: f64,
    pub s: f64,
    /// `<[v,y]_m, y>`
    pub p: f64,
    /// `<[v,y]_m, v>`
    pub r: f64,
    pub y: DVector<f64>,
    pub v: DVector<f64>,
    /// `ad_v` on m in frame coordinates.
    pub ad_v: DMatrix<f64>,
}

impl Kinematics {
    pub fn new(model: &ReductiveModel, v: &InvariantVector, y: &DVector<f64>) -> Result<Self> {
        let n = model.m_dim();
        if y.len() != n {
            return Err(FinslerError::Structural(format!(
                "y has {} components, expected {n}",
                y.len()
            )));
        }
        let alpha = y.norm();
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(FinslerError::Domain("y must be a nonzero finite vector".into()));
        }
        let vf = v.frame_coords(model);
        let ad_v = model.ad_m(&vf);
        let w = &ad_v * y;
        Ok(Self {
            alpha,
            s: vf.dot(y) / alpha,
            p: w.dot(y),
            r: w.dot(&vf),
            y: y.clone(),
            v: vf,
            ad_v,
        })
    }
}

/// Checks shared by every curvature entry point: `b` must match `|v|`, and
/// validated mode additionally demands a valid model, `b < 1`, a passing
/// Shen check and `s` inside the φ domain.
pub(crate) fn guard(
    model: &ReductiveModel,
    v: &InvariantVector,
    spec: &MetricSpec,
    s: Option<f64>,
) -> Result<()> {
    model.check_vector(v)?;
    if (spec.b - v.b).abs() > 1e-12 {
        return Err(FinslerError::Domain(format!(
            "metric b = {} does not match |v| = {}",
            spec.b, v.b
        )));
    }
    if spec.mode == EvalMode::Formal {
        return Ok(());
    }
    let report = validate_model(model, v)?;
    if let Some(c) = report.failed().next() {
        return Err(FinslerError::Validation(format!(
            "model check `{}` failed (residual {:e})",
            c.name, c.residual
        )));
    }
    if spec.b >= 1.0 {
        return Err(FinslerError::Validation(format!("b = {} is not below 1", spec.b)));
    }
    let shen = shen_check(spec, VALIDATION_SHEN_SAMPLES)?;
    if !shen.holds {
        return Err(FinslerError::Validation(format!(
            "Shen positivity fails for {} with b = {}: minimum {} at s = {}, min φ = {}",
            spec.phi.name(),
            spec.b,
            shen.min_value,
            shen.argmin_s,
            shen.phi_min
        )));
    }
    if let Some(s) = s {
        let domain = spec.phi.domain();
        if !domain.contains(s) {
            return Err(FinslerError::Validation(format!(
                "s = {s} lies outside the {} domain {domain}",
                spec.phi.name()
            )));
        }
    }
    Ok(())
}

/// Generic-path S without guards; used by the finite-difference stencil.
pub(crate) fn s_generic_raw(k: &Kinematics, spec: &MetricSpec, n: usize) -> Result<f64> {
    let c = coefficients_generic(&spec.phi, k.s, spec.b, n)?;
    Ok(c.s_factor()? * (k.p / k.alpha + c.q * k.r))
}

/// Family-specific S, assembled from the A / B coefficient forms.
pub(crate) fn s_closed_raw(k: &Kinematics, spec: &MetricSpec, n: usize) -> Result<f64> {
    let (s, b) = (k.s, spec.b);
    match spec.phi.tag() {
        FamilyTag::InfiniteSeries => {
            if s.abs() < SINGULAR_TOL {
                return Err(FinslerError::singular(LOCUS_INF_Q, s));
            }
            if ((s * s * s - 3.0 * s * s + 2.0 * b * b) / (s * s)).abs() < SINGULAR_TOL {
                return Err(FinslerError::singular(LOCUS_DELTA, s));
            }
            let a = coefficient_a(s, b, n).value;
            Ok(a * (k.p / k.alpha + (1.0 - 2.0 / s) * k.r))
        }
        FamilyTag::Exponential => {
            let u = 1.0 - s;
            if u.abs() < SINGULAR_TOL {
                return Err(FinslerError::singular(LOCUS_EXP_Q, s));
            }
            if ((1.0 + b * b - s * s - s) / (u * u)).abs() < SINGULAR_TOL {
                return Err(FinslerError::singular(LOCUS_DELTA, s));
            }
            let bc = coefficient_b(s, b, n).value;
            Ok(-bc * (k.p / k.alpha + k.r / u))
        }
        _ => Err(FinslerError::NoClosedForm(spec.phi.name().to_string())),
    }
}

/// `S(H, y) = Φ/(2αΔ²) (<[v,y]_m, y> + αQ <[v,y]_m, v>)` with `y` in frame
/// coordinates.
///
/// [`Path::ClosedForm`] uses the family-specific formulas (infinite series
/// and exponential only); [`Path::Generic`] works from φ and its derivatives.
/// When `v = 0` the result is 0 for every family.
pub fn s_curvature(
    model: &ReductiveModel,
    v: &InvariantVector,
    spec: &MetricSpec,
    y: &DVector<f64>,
    path: Path,
) -> Result<f64> {
    let k = Kinematics::new(model, v, y)?;
    guard(model, v, spec, Some(k.s))?;
    if v.is_zero() {
        return Ok(0.0);
    }
    let n = model.m_dim();
    match path {
        Path::ClosedForm => s_closed_raw(&k, spec, n),
        Path::Generic => s_generic_raw(&k, spec, n),
        Path::FiniteDifference => Err(FinslerError::Domain(
            "the finite_difference path applies to mean Berwald curvature only".into(),
        )),
    }
}

/// `S = −Φ/(2αΔ²)(r_00 − 2αQ s_0)` from the origin tensors.
pub fn s_curvature_via_tensors(
    model: &ReductiveModel,
    v: &InvariantVector,
    spec: &MetricSpec,
    y: &DVector<f64>,
) -> Result<f64> {
    let k = Kinematics::new(model, v, y)?;
    guard(model, v, spec, Some(k.s))?;
    if v.is_zero() {
        return Ok(0.0);
    }
    let t = origin_tensors(model, v)?;
    let c = coefficients_generic(&spec.phi, k.s, spec.b, model.m_dim())?;
    let (r00, s0) = (t.r00(y), t.s0(y));
    Ok(-c.s_factor()? * (r00 / k.alpha - 2.0 * c.q * s0))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::algebra::StructureConstants;
    use crate::metrics::PhiFamily;
    use approx::assert_relative_eq;

    fn heisenberg() -> ReductiveModel {
        let c = StructureConstants::from_triples(3, &[(0, 1, 2, 1.0)]).unwrap();
        ReductiveModel::new(c, 0, DMatrix::identity(3, 3), &[0.5, 0.0, 0.0]).unwrap()
    }

    fn solvable2() -> ReductiveModel {
        let c = StructureConstants::from_triples(2, &[(0, 1, 1, 1.0)]).unwrap();
        ReductiveModel::new(c, 0, DMatrix::identity(2, 2), &[0.0, 0.5]).unwrap()
    }

    fn spec(phi: PhiFamily) -> MetricSpec {
        MetricSpec::new(phi, 0.5).unwrap()
    }

    #[test]
    fn heisenberg_exponential_fixture() {
        let m = heisenberg();
        let v = m.invariant_vector();
        let y = m.to_frame(&DVector::from_vec(vec![1.0, 1.0, 1.0]));
        let sp = spec(PhiFamily::Exponential);
        for path in [Path::ClosedForm, Path::Generic] {
            let s = s_curvature(&m, &v, &sp, &y, path).unwrap();
            assert_relative_eq!(s, -0.3271501523760837508, max_relative = 1e-13);
        }
        let s = s_curvature_via_tensors(&m, &v, &sp, &y).unwrap();
        assert_relative_eq!(s, -0.3271501523760837508, max_relative = 1e-13);
    }

    #[test]
    fn solvable2_fixtures() {
        let m = solvable2();
        let v = m.invariant_vector();
        let y = DVector::from_vec(vec![1.0, 0.3]);
        let cases = [
            (PhiFamily::Exponential, 0.48347646124339892282),
            (PhiFamily::InfiniteSeries, 2.9041190739041932340),
        ];
        for (phi, want) in cases {
            let sp = spec(phi);
            for path in [Path::ClosedForm, Path::Generic] {
                let s = s_curvature(&m, &v, &sp, &y, path).unwrap();
                assert_relative_eq!(s, want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn vanishes_at_v_and_for_zero_v() {
        let m = heisenberg();
        let v = m.invariant_vector();
        let sp = spec(PhiFamily::Exponential);
        assert_eq!(s_curvature(&m, &v, &sp, &v.frame_coords(&m), Path::Generic).unwrap(), 0.0);

        let c = StructureConstants::from_triples(3, &[(0, 1, 2, 1.0)]).unwrap();
        let m0 = ReductiveModel::new(c, 0, DMatrix::identity(3, 3), &[0.0; 3]).unwrap();
        let v0 = m0.invariant_vector();
        let sp0 = MetricSpec::new(PhiFamily::InfiniteSeries, 0.0).unwrap();
        let y = DVector::from_vec(vec![1.0, 2.0, 3.0]);
        assert_eq!(s_curvature(&m0, &v0, &sp0, &y, Path::ClosedForm).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        let m = solvable2();
        let v = m.invariant_vector();
        let sp = spec(PhiFamily::InfiniteSeries);
        let y0 = DVector::zeros(2);
        assert!(matches!(
            s_curvature(&m, &v, &sp, &y0, Path::Generic),
            Err(FinslerError::Domain(_))
        ));
        let e = s_curvature(&m, &v, &sp, &DVector::from_vec(vec![1.0, 0.0]), Path::ClosedForm)
            .unwrap_err();
        assert!(e.to_string().contains("s = 0 (infinite series Q)"), "{e}");
        let wrong_b = MetricSpec::new(PhiFamily::Exponential, 0.4).unwrap();
        assert!(s_curvature(&m, &v, &wrong_b, &DVector::from_vec(vec![1.0, 1.0]), Path::Generic).is_err());
        let randers = spec(PhiFamily::Randers);
        assert!(matches!(
            s_curvature(&m, &v, &randers, &DVector::from_vec(vec![1.0, 1.0]), Path::ClosedForm),
            Err(FinslerError::NoClosedForm(_))
        ));
    }

    #[test]
    fn validated_mode_refuses_infinite_series() {
        let m = solvable2();
        let v = m.invariant_vector();
        let y = DVector::from_vec(vec![1.0, 0.3]);
        let sp = spec(PhiFamily::InfiniteSeries).with_mode(EvalMode::Validated);
        assert!(matches!(
            s_curvature(&m, &v, &sp, &y, Path::Generic),
            Err(FinslerError::Validation(_))
        ));
        let sp = spec(PhiFamily::Exponential).with_mode(EvalMode::Validated);
        assert!(s_curvature(&m, &v, &sp, &y, Path::ClosedForm).is_ok());
    }
}
