//! Busemann–Hausdorff and Holmes–Thompson volume coefficients `f(b)`, with
//! `dV = f(b) dV_α` for an (α, β)-metric whose β has constant length b.

mod quadrature;

pub use quadrature::{integrate, GaussLegendre, Integral, PANEL_NODES, QUAD_TOL};

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{FinslerError, Result};
use crate::metrics::PhiFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeForm {
    BusemannHausdorff,
    HolmesThompson,
}

impl VolumeForm {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bh" => Ok(VolumeForm::BusemannHausdorff),
            "ht" => Ok(VolumeForm::HolmesThompson),
            other => Err(FinslerError::Config(format!(
                "unknown volume form `{other}`; expected bh or ht"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VolumeForm::BusemannHausdorff => "bh",
            VolumeForm::HolmesThompson => "ht",
        }
    }
}

impl fmt::Display for VolumeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeCoefficients {
    pub b: f64,
    pub n: usize,
    pub f_bh: f64,
    pub f_ht: f64,
    /// Integrand evaluations spent on both forms.
    pub nodes: usize,
}

/// `T(s) = φ (φ − sφ′)^{n−2} {(φ − sφ′) + (b² − s²) φ″}`.
pub fn t_function(phi: &PhiFamily, s: f64, b: f64, n: usize) -> Result<f64> {
    let j = phi.jet(s);
    let d = j.phi - s * j.d1;
    let t = j.phi * d.powi(n as i32 - 2) * (d + (b * b - s * s) * j.d2);
    if !t.is_finite() {
        return Err(FinslerError::Domain(format!(
            "T is not finite at s = {s} for the {} family",
            phi.name()
        )));
    }
    Ok(t)
}

/// `sin^{n−2} t`, through logarithms so large n cannot underflow early.
fn sin_weight(t: f64, n: usize) -> f64 {
    if n == 2 {
        1.0
    } else {
        ((n - 2) as f64 * t.sin().ln()).exp()
    }
}

fn check_args(b: f64, n: usize) -> Result<()> {
    if n < 2 {
        return Err(FinslerError::Domain(format!("n = {n} must be at least 2")));
    }
    if !(b.is_finite() && b >= 0.0) {
        return Err(FinslerError::Domain(format!("b = {b} must be finite and >= 0")));
    }
    Ok(())
}

/// `f(b)` with a Gauss–Legendre rule of `nodes` points per panel; returns
/// the value and the number of integrand evaluations.
pub fn volume_coefficient_with(
    phi: &PhiFamily,
    b: f64,
    n: usize,
    form: VolumeForm,
    nodes: usize,
) -> Result<(f64, usize)> {
    check_args(b, n)?;
    if nodes == 0 {
        return Err(FinslerError::Domain("a quadrature rule needs at least one node".into()));
    }
    let rule = GaussLegendre::new(nodes);
    let base = integrate(|t| sin_weight(t, n), 0.0, PI, QUAD_TOL, &rule)?;
    match form {
        VolumeForm::BusemannHausdorff => {
            let nf = n as f64;
            let den = integrate(
                |t| {
                    let p = phi.phi(b * t.cos());
                    if p > 0.0 {
                        ((n as f64 - 2.0) * t.sin().ln() - nf * p.ln()).exp()
                    } else {
                        sin_weight(t, n) / p.powi(n as i32)
                    }
                },
                0.0,
                PI,
                QUAD_TOL,
                &rule,
            )?;
            Ok((base.value / den.value, base.evaluations + den.evaluations))
        }
        VolumeForm::HolmesThompson => {
            let num = integrate(
                |t| {
                    // a non-finite T surfaces as a quadrature failure at that panel
                    sin_weight(t, n) * t_function(phi, b * t.cos(), b, n).unwrap_or(f64::NAN)
                },
                0.0,
                PI,
                QUAD_TOL,
                &rule,
            )?;
            Ok((num.value / base.value, base.evaluations + num.evaluations))
        }
    }
}

/// `f(b)` for one form with 64-node panels.
///
/// Busemann–Hausdorff: `∫₀^π sin^{n−2}t dt / ∫₀^π sin^{n−2}t / φ(b cos t)^n dt`.
/// Holmes–Thompson: `∫₀^π sin^{n−2}t T(b cos t) dt / ∫₀^π sin^{n−2}t dt`.
pub fn volume_coefficient(phi: &PhiFamily, b: f64, n: usize, form: VolumeForm) -> Result<f64> {
    volume_coefficient_with(phi, b, n, form, PANEL_NODES).map(|(v, _)| v)
}

/// Both volume coefficients.
pub fn volume_coefficients(phi: &PhiFamily, b: f64, n: usize) -> Result<VolumeCoefficients> {
    let (f_bh, e1) = volume_coefficient_with(phi, b, n, VolumeForm::BusemannHausdorff, PANEL_NODES)?;
    let (f_ht, e2) = volume_coefficient_with(phi, b, n, VolumeForm::HolmesThompson, PANEL_NODES)?;
    Ok(VolumeCoefficients {
        b,
        n,
        f_bh,
        f_ht,
        nodes: e1 + e2,
    })
}
