//! Mean Berwald curvature `E_ij = ½ ∂²S/∂y^i∂y^j` at the origin.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::coefficients::{SINGULAR_TOL, LOCUS_DELTA, LOCUS_EXP_Q, LOCUS_INF_Q};
use super::fd::hessian;
use super::poly::Poly;
use super::scurv::{guard, s_generic_raw, Kinematics, Path};
use crate::algebra::{InvariantVector, ReductiveModel};
use crate::error::{FinslerError, Result};
use crate::metrics::{FamilyTag, MetricSpec};

/// A scalar function of s with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalarJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// `N / (2D²)` and its s-derivatives by the quotient rule.
fn half_ratio_sq(num: &Poly, den: &Poly, s: f64) -> ScalarJet {
    let (nv, n1, n2) = num.jet2(s);
    let (dv, d1, d2) = den.jet2(s);
    let u = n1 * dv - 2.0 * nv * d1;
    let u1 = n2 * dv - n1 * d1 - 2.0 * nv * d2;
    ScalarJet {
        value: nv / (2.0 * dv * dv),
        d1: u / (2.0 * dv * dv * dv),
        d2: (u1 * dv - 3.0 * u * d1) / (2.0 * dv * dv * dv * dv),
    }
}

pub(crate) fn a_numerator(b: f64, n: usize) -> Poly {
    let (b2, n) = (b * b, n as f64);
    Poly(vec![
        0.0,
        4.0 * (2.0 * n - 1.0) * b2,
        2.0 * (2.0 - n) * b2,
        -12.0 * n,
        7.0 * n + 1.0,
        -(n + 1.0),
    ])
}

/// `s³ − 3s² + 2b²`
pub(crate) fn a_denominator(b: f64) -> Poly {
    Poly(vec![2.0 * b * b, 0.0, -3.0, 1.0])
}

pub(crate) fn b_numerator(b: f64, n: usize) -> Poly {
    let (b2, n) = (b * b, n as f64);
    Poly(vec![
        (2.0 + n) * b2 + n + 1.0,
        -(3.0 + 3.0 * n + 2.0 * n * b2),
        n,
        2.0 * n,
    ])
}

/// `1 + b² − s − s²`
pub(crate) fn b_denominator(b: f64) -> Poly {
    Poly(vec![1.0 + b * b, -1.0, -1.0])
}

/// Infinite-series coefficient
/// `A = {−(n+1)s⁵ + (7n+1)s⁴ − 12ns³ + 2(2−n)b²s² + 4(2n−1)b²s} / (2(s³ − 3s² + 2b²)²)`
/// with dA/ds and d²A/ds².
pub fn coefficient_a(s: f64, b: f64, n: usize) -> ScalarJet {
    half_ratio_sq(&a_numerator(b, n), &a_denominator(b), s)
}

/// Exponential coefficient
/// `B = {2ns³ + ns² − (3+3n+2nb²)s + (2+n)b² + n + 1} / (2(1 + b² − s − s²)²)`
/// with dB/ds and d²B/ds².
pub fn coefficient_b(s: f64, b: f64, n: usize) -> ScalarJet {
    half_ratio_sq(&b_numerator(b, n), &b_denominator(b), s)
}

/// Everything the closed-form E needs at one `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct BerwaldWorkspace {
    pub family: FamilyTag,
    pub s: f64,
    pub alpha: f64,
    /// A (infinite series) or B (exponential) with its s-derivatives.
    pub coefficient: ScalarJet,
    /// `∂s/∂y^i = (b_i α − s y_i) / α²`
    pub s_yi: DVector<f64>,
    /// `∂²s/∂y^i∂y^j = {−(b_i y_j + b_j y_i)α + 3s y_i y_j − α² s δ_ij} / α⁴`
    pub s_yiyj: DMatrix<f64>,
    /// `y_i = a_ij y^j`, equal to `y^i` in the orthonormal frame.
    pub y_lowered: DVector<f64>,
}

fn s_derivatives(k: &Kinematics) -> (DVector<f64>, DMatrix<f64>) {
    let n = k.y.len();
    let (a, s) = (k.alpha, k.s);
    let a2 = a * a;
    let bl = &k.v; // b_i = c δ_in
    let s_yi = DVector::from_fn(n, |i, _| (bl[i] * a - s * k.y[i]) / a2);
    let mut s_yiyj = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut x = -(bl[i] * k.y[j] + bl[j] * k.y[i]) * a + 3.0 * s * k.y[i] * k.y[j];
            if i == j {
                x -= a2 * s;
            }
            x /= a2 * a2;
            s_yiyj[(i, j)] = x;
            s_yiyj[(j, i)] = x;
        }
    }
    (s_yi, s_yiyj)
}

fn workspace_from(k: &Kinematics, spec: &MetricSpec, n: usize) -> Result<BerwaldWorkspace> {
    let (s, b) = (k.s, spec.b);
    let family = spec.phi.tag();
    let coefficient = match family {
        FamilyTag::InfiniteSeries => {
            if s.abs() < SINGULAR_TOL {
                return Err(FinslerError::singular(LOCUS_INF_Q, s));
            }
            if (a_denominator(b).eval(s) / (s * s)).abs() < SINGULAR_TOL {
                return Err(FinslerError::singular(LOCUS_DELTA, s));
            }
            coefficient_a(s, b, n)
        }
        FamilyTag::Exponential => {
            let u = 1.0 - s;
            if u.abs() < SINGULAR_TOL {
                return Err(FinslerError::singular(LOCUS_EXP_Q, s));
            }
            if (b_denominator(b).eval(s) / (u * u)).abs() < SINGULAR_TOL {
                return Err(FinslerError::singular(LOCUS_DELTA, s));
            }
            coefficient_b(s, b, n)
        }
        _ => return Err(FinslerError::NoClosedForm(spec.phi.name().to_string())),
    };
    let (s_yi, s_yiyj) = s_derivatives(k);
    Ok(BerwaldWorkspace {
        family,
        s,
        alpha: k.alpha,
        coefficient,
        s_yi,
        s_yiyj,
        y_lowered: k.y.clone(),
    })
}

/// Builds the [`BerwaldWorkspace`] at `y` (frame coordinates). Only the
/// infinite-series and exponential families have one.
pub fn berwald_workspace(
    model: &ReductiveModel,
    v: &InvariantVector,
    spec: &MetricSpec,
    y: &DVector<f64>,
) -> Result<BerwaldWorkspace> {
    let k = Kinematics::new(model, v, y)?;
    guard(model, v, spec, Some(k.s))?;
    workspace_from(&k, spec, model.m_dim())
}

/// `∂²(K P / α)` with `P = <[v,y]_m, y>`.
fn term_p(ws: &BerwaldWorkspace, k: &Kinematics) -> DMatrix<f64> {
    let n = k.y.len();
    let a = k.alpha;
    let (a3, a5) = (a * a * a, a * a * a * a * a);
    let c = ws.coefficient;
    let y = &ws.y_lowered;
    let ki = &ws.s_yi * c.d1;
    let m = &k.ad_v;
    let dp = m * y + m.transpose() * y;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let kij = c.d2 * ws.s_yi[i] * ws.s_yi[j] + c.d1 * ws.s_yiyj[(i, j)];
            let delta = if i == j { 1.0 } else { 0.0 };
            let f_ij = kij / a - y[i] * ki[j] / a3 - y[j] * ki[i] / a3 - c.value * delta / a3
                + 3.0 * c.value * y[i] * y[j] / a5;
            let x = f_ij * k.p
                + (ki[j] / a - c.value * y[j] / a3) * dp[i]
                + (ki[i] / a - c.value * y[i] / a3) * dp[j]
                + c.value / a * (m[(i, j)] + m[(j, i)]);
            out[(i, j)] = x;
            out[(j, i)] = x;
        }
    }
    out
}

/// `∂²(K g R)` with `R = <[v,y]_m, v>` and `g` a function of s.
fn term_r(ws: &BerwaldWorkspace, k: &Kinematics, g: ScalarJet) -> DMatrix<f64> {
    let n = k.y.len();
    let c = ws.coefficient;
    let ki = &ws.s_yi * c.d1;
    let gi = &ws.s_yi * g.d1;
    let ri = k.ad_v.transpose() * &k.v;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let sisj = ws.s_yi[i] * ws.s_yi[j];
            let kij = c.d2 * sisj + c.d1 * ws.s_yiyj[(i, j)];
            let gij = g.d2 * sisj + g.d1 * ws.s_yiyj[(i, j)];
            let x = (g.value * kij + gi[i] * ki[j] + gi[j] * ki[i] + c.value * gij) * k.r
                + (g.value * ki[j] + c.value * gi[j]) * ri[i]
                + (g.value * ki[i] + c.value * gi[i]) * ri[j];
            out[(i, j)] = x;
            out[(j, i)] = x;
        }
    }
    out
}

fn mean_berwald_closed(k: &Kinematics, spec: &MetricSpec, n: usize) -> Result<DMatrix<f64>> {
    let ws = workspace_from(k, spec, n)?;
    let s = ws.s;
    let e = match ws.family {
        FamilyTag::InfiniteSeries => {
            // g = 1 − 2/s
            let g = ScalarJet {
                value: 1.0 - 2.0 / s,
                d1: 2.0 / (s * s),
                d2: -4.0 / (s * s * s),
            };
            (term_p(&ws, k) + term_r(&ws, k, g)) * 0.5
        }
        FamilyTag::Exponential => {
            // h = 1/(1 − s)
            let u = 1.0 / (1.0 - s);
            let h = ScalarJet {
                value: u,
                d1: u * u,
                d2: 2.0 * u * u * u,
            };
            (term_p(&ws, k) + term_r(&ws, k, h)) * -0.5
        }
        _ => unreachable!("workspace exists only for closed-form families"),
    };
    Ok(e)
}

/// Mean Berwald curvature at `y` (frame coordinates).
///
/// [`Path::ClosedForm`] assembles the infinite-series / exponential
/// formulas from a [`BerwaldWorkspace`]; [`Path::FiniteDifference`] (and
/// [`Path::Generic`], which is treated the same way) returns half the
/// Richardson-refined central-difference Hessian of the generic S.
pub fn mean_berwald(
    model: &ReductiveModel,
    v: &InvariantVector,
    spec: &MetricSpec,
    y: &DVector<f64>,
    path: Path,
) -> Result<DMatrix<f64>> {
    let k = Kinematics::new(model, v, y)?;
    guard(model, v, spec, Some(k.s))?;
    let n = model.m_dim();
    if v.is_zero() {
        return Ok(DMatrix::zeros(n, n));
    }
    match path {
        Path::ClosedForm => mean_berwald_closed(&k, spec, n),
        Path::Generic | Path::FiniteDifference => {
            let f = |z: &DVector<f64>| -> Result<f64> {
                let kz = Kinematics::new(model, v, z)?;
                s_generic_raw(&kz, spec, n)
            };
            Ok(hessian(f, y)? * 0.5)
        }
    }
}
