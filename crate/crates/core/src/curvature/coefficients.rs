//! The scalar coefficients `Q, Q′, Q″, Δ, Φ, ψ` entering the S-curvature.

use serde::Serialize;

use crate::error::{FinslerError, Result};
use crate::metrics::{FamilyTag, PhiFamily};

/// Absolute threshold below which a denominator counts as zero.
pub const SINGULAR_TOL: f64 = 1e-12;

pub(crate) const LOCUS_DELTA: &str = "Δ = 0";
pub(crate) const LOCUS_INF_Q: &str = "s = 0 (infinite series Q)";
pub(crate) const LOCUS_EXP_Q: &str = "s = 1 (exponential Q)";
pub(crate) const LOCUS_GENERIC_Q: &str = "φ − sφ′ = 0 (Q)";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientBundle {
    pub s: f64,
    pub b: f64,
    pub n: usize,
    pub q: f64,
    pub qp: f64,
    pub qpp: f64,
    pub delta: f64,
    pub phi: f64,
    /// `Q′ / (2Δ)`; `None` when Δ vanishes.
    pub psi: Option<f64>,
}

impl CoefficientBundle {
    fn assemble(s: f64, b: f64, n: usize, q: f64, qp: f64, qpp: f64) -> Self {
        let delta = delta_from(s, b, q, qp);
        let phi = phi_from(s, b, n, q, qp, qpp, delta);
        Self {
            s,
            b,
            n,
            q,
            qp,
            qpp,
            delta,
            phi,
            psi: psi_from(qp, delta),
        }
    }

    /// Δ recomputed from the stored Q and Q′.
    pub fn delta_recomputed(&self) -> f64 {
        delta_from(self.s, self.b, self.q, self.qp)
    }

    /// Φ recomputed from the stored Q, Q′, Q″ and Δ.
    pub fn phi_recomputed(&self) -> f64 {
        phi_from(self.s, self.b, self.n, self.q, self.qp, self.qpp, self.delta)
    }

    /// `Φ / (2Δ²)`, the common factor of every S-curvature formula.
    pub fn s_factor(&self) -> Result<f64> {
        if self.delta.abs() < SINGULAR_TOL {
            return Err(FinslerError::singular(LOCUS_DELTA, self.s));
        }
        Ok(self.phi / (2.0 * self.delta * self.delta))
    }
}

fn delta_from(s: f64, b: f64, q: f64, qp: f64) -> f64 {
    1.0 + s * q + (b * b - s * s) * qp
}

fn phi_from(s: f64, b: f64, n: usize, q: f64, qp: f64, qpp: f64, delta: f64) -> f64 {
    let n = n as f64;
    let one_sq = 1.0 + s * q;
    -(q - s * qp) * (n * delta + one_sq) - (b * b - s * s) * one_sq * qpp
}

fn psi_from(qp: f64, delta: f64) -> Option<f64> {
    (delta.abs() >= SINGULAR_TOL).then(|| qp / (2.0 * delta))
}

/// Coefficients from φ, φ′, φ″, φ‴ via the quotient rule on
/// `Q = φ′ / (φ − sφ′)`.
pub fn coefficients_generic(phi: &PhiFamily, s: f64, b: f64, n: usize) -> Result<CoefficientBundle> {
    let j = phi.jet(s);
    let d = j.phi - s * j.d1;
    if !d.is_finite() || d.abs() < SINGULAR_TOL {
        return Err(FinslerError::singular(LOCUS_GENERIC_Q, s));
    }
    // D′ = −sφ″, so Q′ = φφ″/D² and Q″ = ((φ′φ″ + φφ‴)D + 2sφφ″²)/D³
    let q = j.d1 / d;
    let qp = j.phi * j.d2 / (d * d);
    let qpp = ((j.d1 * j.d2 + j.phi * j.d3) * d + 2.0 * s * j.phi * j.d2 * j.d2) / (d * d * d);
    Ok(CoefficientBundle::assemble(s, b, n, q, qp, qpp))
}

/// Closed forms for `φ = s²/(s − 1)`.
pub fn coefficients_infinite_series(s: f64, b: f64, n: usize) -> Result<CoefficientBundle> {
    if s.abs() < SINGULAR_TOL {
        return Err(FinslerError::singular(LOCUS_INF_Q, s));
    }
    let (s2, s3) = (s * s, s * s * s);
    let (b2, nf) = (b * b, n as f64);
    let delta = (s3 - 3.0 * s2 + 2.0 * b2) / s2;
    let phi = (-(nf + 1.0) * s2 * s2 + (7.0 * nf + 1.0) * s3 - 12.0 * nf * s2
        + 2.0 * (2.0 - nf) * b2 * s
        + 4.0 * (2.0 * nf - 1.0) * b2)
        / s3;
    let qp = 2.0 / s2;
    Ok(CoefficientBundle {
        s,
        b,
        n,
        q: 1.0 - 2.0 / s,
        qp,
        qpp: -4.0 / s3,
        delta,
        phi,
        psi: psi_from(qp, delta),
    })
}

/// Closed forms for `φ = e^s`.
pub fn coefficients_exponential(s: f64, b: f64, n: usize) -> Result<CoefficientBundle> {
    let u = 1.0 - s;
    if u.abs() < SINGULAR_TOL {
        return Err(FinslerError::singular(LOCUS_EXP_Q, s));
    }
    let (b2, nf) = (b * b, n as f64);
    let u2 = u * u;
    let delta = (1.0 + b2 - s * s - s) / u2;
    let phi = -(2.0 * nf * s * s * s + nf * s * s - (3.0 + 3.0 * nf + 2.0 * nf * b2) * s
        + (2.0 + nf) * b2
        + nf
        + 1.0)
        / (u2 * u2);
    let qp = 1.0 / u2;
    Ok(CoefficientBundle {
        s,
        b,
        n,
        q: 1.0 / u,
        qp,
        qpp: 2.0 / (u2 * u),
        delta,
        phi,
        psi: psi_from(qp, delta),
    })
}

/// Family-specific closed forms, where they exist.
pub fn coefficients_closed(phi: &PhiFamily, s: f64, b: f64, n: usize) -> Result<CoefficientBundle> {
    match phi.tag() {
        FamilyTag::InfiniteSeries => coefficients_infinite_series(s, b, n),
        FamilyTag::Exponential => coefficients_exponential(s, b, n),
        _ => Err(FinslerError::NoClosedForm(phi.name().to_string())),
    }
}
