//! Hand-expanded polynomial forms of dA/ds, d²A/ds², dB/ds and d²B/ds²,
//! audited against the quotient-rule derivatives in [`super::berwald`].
//! The expanded forms are never used for curvature.

use serde::Serialize;

use super::berwald::{a_denominator, b_denominator, coefficient_a, coefficient_b};
use super::poly::Poly;

/// Relative tolerance for an expanded form to count as agreeing.
pub const AUDIT_TOL: f64 = 1e-6;

/// Expanded dA/ds numerator over `2(s³ − 3s² + 2b²)³`.
pub(crate) fn expanded_da_numerator(b: f64, n: usize) -> Poly {
    let (b2, b4, n) = (b * b, b * b * b * b, n as f64);
    Poly(vec![
        8.0 * (2.0 * n - 1.0) * b4,
        8.0 * (2.0 - n) * b4,
        -36.0 * b2,
        4.0 * (n + 13.0) * b2,
        -2.0 * ((n + 13.0) * b2 + 18.0 * n),
        36.0 * n,
        -11.0 * n + 1.0,
        n + 1.0,
    ])
}

/// Expanded d²A/ds² numerator over `2(s³ − 3s² + 2b²)⁴`.
pub(crate) fn expanded_d2a_numerator(b: f64, n: usize) -> Poly {
    let (b2, b4, b6, n) = (b * b, b.powi(4), b.powi(6), n as f64);
    Poly(vec![
        16.0 * (2.0 - n) * b6,
        288.0 * (n - 1.0) * b4,
        48.0 * (13.0 - 5.0 * n) * b4,
        48.0 * ((n - 7.0) * b4 - (n + 9.0) * b2),
        36.0 * (20.0 + 11.0 * n) * b2,
        -4.0 * ((37.0 * n + 114.0) * b2 + 54.0 * n),
        24.0 * ((n + 6.0) * b2 + 12.0 * n),
        -144.0 * n,
        -6.0 * (-5.0 * n + 1.0),
        -2.0 * (n + 1.0),
    ])
}

/// Expanded dB/ds numerator over `2(1 + b² − s − s²)³`.
pub(crate) fn expanded_db_numerator(b: f64, n: usize) -> Poly {
    let (b2, b4, n) = (b * b, b.powi(4), n as f64);
    Poly(vec![
        -(1.0 + n + 3.0 * n * b2 - b2 + 2.0 * n * b4),
        4.0 * (n + 2.0) * b2 + 3.0 * n + 1.0,
        -3.0 * (n + 3.0),
        0.0,
        2.0 * n,
    ])
}

/// Expanded d²B/ds² numerator over `2(1 + b² − s − s²)⁴`.
pub(crate) fn expanded_d2b_numerator(b: f64, n: usize) -> Poly {
    let (b2, b4, n) = (b * b, b.powi(4), n as f64);
    Poly(vec![
        2.0 * ((6.0 - n) * b2 + (4.0 - n) * b4 - 1.0),
        2.0 * (-6.0 * n * b4 - 8.0 * n * b2 + 2.0 * b2 - 3.0 * n - 11.0),
        20.0 * (n + 2.0) * b2 + 6.0 * (2.0 * n - 1.0),
        -4.0 * (n - 2.0 * n * b2 + 8.0),
        -2.0 * n,
        4.0 * n,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditedQuantity {
    DaDs,
    D2aDs2,
    DbDs,
    D2bDs2,
}

impl AuditedQuantity {
    pub const ALL: [AuditedQuantity; 4] = [
        AuditedQuantity::DaDs,
        AuditedQuantity::D2aDs2,
        AuditedQuantity::DbDs,
        AuditedQuantity::D2bDs2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AuditedQuantity::DaDs => "dA/ds",
            AuditedQuantity::D2aDs2 => "d2A/ds2",
            AuditedQuantity::DbDs => "dB/ds",
            AuditedQuantity::D2bDs2 => "d2B/ds2",
        }
    }

    /// `(expanded, derived)` at one point.
    pub fn evaluate(self, s: f64, b: f64, n: usize) -> (f64, f64) {
        match self {
            AuditedQuantity::DaDs => {
                let d = a_denominator(b).eval(s);
                (expanded_da_numerator(b, n).eval(s) / (2.0 * d.powi(3)), coefficient_a(s, b, n).d1)
            }
            AuditedQuantity::D2aDs2 => {
                let d = a_denominator(b).eval(s);
                (expanded_d2a_numerator(b, n).eval(s) / (2.0 * d.powi(4)), coefficient_a(s, b, n).d2)
            }
            AuditedQuantity::DbDs => {
                let d = b_denominator(b).eval(s);
                (expanded_db_numerator(b, n).eval(s) / (2.0 * d.powi(3)), coefficient_b(s, b, n).d1)
            }
            AuditedQuantity::D2bDs2 => {
                let d = b_denominator(b).eval(s);
                (expanded_d2b_numerator(b, n).eval(s) / (2.0 * d.powi(4)), coefficient_b(s, b, n).d2)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntry {
    pub quantity: AuditedQuantity,
    pub samples: usize,
    pub max_rel_dev: f64,
    pub worst_s: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub b: f64,
    pub n: usize,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn get(&self, q: AuditedQuantity) -> &AuditEntry {
        self.entries
            .iter()
            .find(|e| e.quantity == q)
            .expect("every quantity is audited")
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries.iter().filter(|e| !e.agrees)
    }
}

/// Compares each expanded form with its derived counterpart on `samples`
/// points spread over `(−0.9, 0.9)` and `(1.1, 4)` away from poles, for the
/// given `b` and `n`. Mismatches are logged at warn level.
pub fn derivative_audit(b: f64, n: usize, samples: usize) -> AuditReport {
    let points = audit_points(b, samples);
    let entries = AuditedQuantity::ALL
        .iter()
        .map(|&q| {
            let mut worst = (0.0f64, f64::NAN);
            for &s in &points {
                let (expanded, derived) = q.evaluate(s, b, n);
                let dev = (expanded - derived).abs() / derived.abs().max(1e-300);
                if dev.is_nan() || dev > worst.0 {
                    worst = (dev, s);
                }
            }
            let agrees = worst.0 <= AUDIT_TOL;
            if !agrees {
                log::warn!(
                    "expanded {} disagrees with the derived form: max relative deviation {:e} at s = {} (b = {b}, n = {n}); using the derived form",
                    q.as_str(),
                    worst.0,
                    worst.1
                );
            }
            AuditEntry {
                quantity: q,
                samples: points.len(),
                max_rel_dev: worst.0,
                worst_s: worst.1,
                agrees,
            }
        })
        .collect();
    AuditReport { b, n, entries }
}

fn audit_points(b: f64, samples: usize) -> Vec<f64> {
    let near_pole = |s: f64| {
        a_denominator(b).eval(s).abs() < 0.05
            || b_denominator(b).eval(s).abs() < 0.05
            || s.abs() < 0.05
    };
    let mut out = Vec::with_capacity(samples);
    let mut k = 0usize;
    // alternate between the two windows until enough regular points exist
    while out.len() < samples && k < 100 * samples.max(1) {
        let t = (k as f64 + 0.5) / (2 * samples) as f64;
        let s = if k.is_multiple_of(2) { -0.9 + 1.8 * t } else { 1.1 + 2.9 * t };
        if !near_pole(s) {
            out.push(s);
        }
        k += 1;
    }
    out
}
