//! (α, β)-metrics `F = α φ(β/α)` described by the profile function φ.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{FinslerError, Result};

/// Values of φ and its first three derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiJet {
    pub phi: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

/// Open interval `(lo, hi)`; infinite ends allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, s: f64) -> bool {
        s > self.lo && s < self.hi
    }
}

/// Union of open intervals on which `φ > 0` and `φ − sφ′ ≠ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Domain(pub Vec<Interval>);

impl Domain {
    pub fn real_line() -> Self {
        Domain(vec![Interval::new(f64::NEG_INFINITY, f64::INFINITY)])
    }

    pub fn contains(&self, s: f64) -> bool {
        self.0.iter().any(|i| i.contains(s))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("({}, {})", i.lo, i.hi)).collect();
        f.write_str(&parts.join(" ∪ "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Randers,
    Matsumoto,
    Kropina,
    InfiniteSeries,
    Exponential,
    Custom,
}

impl FamilyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyTag::Randers => "randers",
            FamilyTag::Matsumoto => "matsumoto",
            FamilyTag::Kropina => "kropina",
            FamilyTag::InfiniteSeries => "infinite_series",
            FamilyTag::Exponential => "exponential",
            FamilyTag::Custom => "custom",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

type Scalar = dyn Fn(f64) -> f64 + Send + Sync;

/// A user-supplied profile. The caller provides φ and its first three
/// derivatives; nothing is differentiated automatically.
pub struct CustomPhi {
    name: String,
    phi: Box<Scalar>,
    d1: Box<Scalar>,
    d2: Box<Scalar>,
    d3: Box<Scalar>,
    domain: Domain,
    polynomial: Option<Vec<f64>>,
}

impl CustomPhi {
    pub fn new(
        name: impl Into<String>,
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d3: impl Fn(f64) -> f64 + Send + Sync + 'static,
        domain: Domain,
    ) -> Self {
        Self {
            name: name.into(),
            phi: Box::new(phi),
            d1: Box::new(d1),
            d2: Box::new(d2),
            d3: Box::new(d3),
            domain,
            polynomial: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Polynomial coefficients (ascending powers) when built by
    /// [`PhiFamily::polynomial`].
    pub fn polynomial(&self) -> Option<&[f64]> {
        self.polynomial.as_deref()
    }
}

impl fmt::Debug for CustomPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomPhi")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("polynomial", &self.polynomial)
            .finish_non_exhaustive()
    }
}

/// The profile function φ of an (α, β)-metric.
#[derive(Debug, Clone)]
pub enum PhiFamily {
    /// φ = 1 + s
    Randers,
    /// φ = 1 / (1 − s)
    Matsumoto,
    /// φ = 1 / s
    Kropina,
    /// φ = s² / (s − 1), i.e. F = β² / (β − α)
    InfiniteSeries,
    /// φ = e^s
    Exponential,
    Custom(Arc<CustomPhi>),
}

impl PhiFamily {
    pub fn tag(&self) -> FamilyTag {
        match self {
            PhiFamily::Randers => FamilyTag::Randers,
            PhiFamily::Matsumoto => FamilyTag::Matsumoto,
            PhiFamily::Kropina => FamilyTag::Kropina,
            PhiFamily::InfiniteSeries => FamilyTag::InfiniteSeries,
            PhiFamily::Exponential => FamilyTag::Exponential,
            PhiFamily::Custom(_) => FamilyTag::Custom,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            PhiFamily::Custom(c) => c.name(),
            other => other.tag().as_str(),
        }
    }

    /// Looks up a built-in family by its tag name.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "randers" => PhiFamily::Randers,
            "matsumoto" => PhiFamily::Matsumoto,
            "kropina" => PhiFamily::Kropina,
            "infinite_series" => PhiFamily::InfiniteSeries,
            "exponential" => PhiFamily::Exponential,
            "custom" => {
                return Err(FinslerError::Config(
                    "the custom family needs polynomial coefficients".into(),
                ))
            }
            other => {
                return Err(FinslerError::Config(format!(
                    "unknown metric family `{other}`; expected one of randers, matsumoto, \
                     kropina, infinite_series, exponential, custom"
                )))
            }
        })
    }

    /// φ(s) = Σ coeffs[k] s^k with analytic derivatives.
    pub fn polynomial(coeffs: &[f64]) -> Self {
        let c = coeffs.to_vec();
        let eval = move |c: &[f64], order: usize, s: f64| -> f64 {
            let mut acc = 0.0;
            for k in (order..c.len()).rev() {
                let falling: f64 = (0..order).map(|j| (k - j) as f64).product();
                acc = acc * s + c[k] * falling;
            }
            acc
        };
        let (c0, c1, c2, c3) = (c.clone(), c.clone(), c.clone(), c.clone());
        let mut custom = CustomPhi::new(
            "custom",
            move |s| eval(&c0, 0, s),
            move |s| eval(&c1, 1, s),
            move |s| eval(&c2, 2, s),
            move |s| eval(&c3, 3, s),
            Domain::real_line(),
        );
        custom.polynomial = Some(c);
        PhiFamily::Custom(Arc::new(custom))
    }

    /// φ ≡ 1, the Riemannian case.
    pub fn riemannian() -> Self {
        Self::polynomial(&[1.0])
    }

    pub fn jet(&self, s: f64) -> PhiJet {
        match self {
            PhiFamily::Randers => PhiJet {
                phi: 1.0 + s,
                d1: 1.0,
                d2: 0.0,
                d3: 0.0,
            },
            PhiFamily::Matsumoto => {
                let u = 1.0 / (1.0 - s);
                PhiJet {
                    phi: u,
                    d1: u * u,
                    d2: 2.0 * u * u * u,
                    d3: 6.0 * u * u * u * u,
                }
            }
            PhiFamily::Kropina => {
                let u = 1.0 / s;
                PhiJet {
                    phi: u,
                    d1: -u * u,
                    d2: 2.0 * u * u * u,
                    d3: -6.0 * u * u * u * u,
                }
            }
            PhiFamily::InfiniteSeries => {
                // s²/(s−1) = s + 1 + 1/(s−1)
                let u = 1.0 / (s - 1.0);
                PhiJet {
                    phi: s * s * u,
                    d1: 1.0 - u * u,
                    d2: 2.0 * u * u * u,
                    d3: -6.0 * u * u * u * u,
                }
            }
            PhiFamily::Exponential => {
                let e = s.exp();
                PhiJet {
                    phi: e,
                    d1: e,
                    d2: e,
                    d3: e,
                }
            }
            PhiFamily::Custom(c) => PhiJet {
                phi: (c.phi)(s),
                d1: (c.d1)(s),
                d2: (c.d2)(s),
                d3: (c.d3)(s),
            },
        }
    }

    pub fn phi(&self, s: f64) -> f64 {
        self.jet(s).phi
    }

    /// Open intervals where φ > 0 and φ − sφ′ ≠ 0.
    pub fn domain(&self) -> Domain {
        let inf = f64::INFINITY;
        match self {
            PhiFamily::Randers => Domain(vec![Interval::new(-1.0, inf)]),
            // φ − sφ′ = (1 − 2s)/(1 − s)²
            PhiFamily::Matsumoto => Domain(vec![
                Interval::new(-inf, 0.5),
                Interval::new(0.5, 1.0),
            ]),
            PhiFamily::Kropina => Domain(vec![Interval::new(0.0, inf)]),
            // φ > 0 only for s > 1
            PhiFamily::InfiniteSeries => Domain(vec![Interval::new(1.0, inf)]),
            // φ − sφ′ = e^s (1 − s)
            PhiFamily::Exponential => {
                Domain(vec![Interval::new(-inf, 1.0), Interval::new(1.0, inf)])
            }
            PhiFamily::Custom(c) => c.domain.clone(),
        }
    }
}

/// Whether curvature routines refuse metrics that fail the positivity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    /// Evaluate every formula as a rational identity in s.
    #[default]
    Formal,
    /// Require a valid model, `b < 1`, a passing Shen check and s inside
    /// the φ domain before evaluating.
    Validated,
}

impl EvalMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "formal" => Ok(EvalMode::Formal),
            "validated" => Ok(EvalMode::Validated),
            other => Err(FinslerError::Config(format!(
                "unknown mode `{other}`; expected formal or validated"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EvalMode::Formal => "formal",
            EvalMode::Validated => "validated",
        }
    }
}

/// A profile together with the (constant) length `b` of β.
#[derive(Debug, Clone)]
pub struct MetricSpec {
    pub phi: PhiFamily,
    pub b: f64,
    pub mode: EvalMode,
}

impl MetricSpec {
    pub fn new(phi: PhiFamily, b: f64) -> Result<Self> {
        if !(b.is_finite() && b >= 0.0) {
            return Err(FinslerError::Domain(format!("b = {b} must be finite and >= 0")));
        }
        Ok(Self {
            phi,
            b,
            mode: EvalMode::Formal,
        })
    }

    pub fn with_mode(mut self, mode: EvalMode) -> Self {
        self.mode = mode;
        self
    }
}

/// `F = α φ(β/α)`.
pub fn finsler_norm(spec: &MetricSpec, alpha: f64, beta: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(FinslerError::Domain(format!("alpha = {alpha} must be positive")));
    }
    let s = beta / alpha;
    let domain = spec.phi.domain();
    let phi = spec.phi.phi(s);
    if !domain.contains(s) || !phi.is_finite() || phi <= 0.0 {
        return Err(FinslerError::Domain(format!(
            "s = {s} is outside the {} domain {domain} (φ = {phi})",
            spec.phi.name()
        )));
    }
    Ok(alpha * phi)
}

/// `φ(s) − sφ′(s) + (b² − s²)φ″(s)`.
pub fn shen_expression(phi: &PhiFamily, s: f64, b: f64) -> f64 {
    let j = phi.jet(s);
    j.phi - s * j.d1 + (b * b - s * s) * j.d2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShenSample {
    pub s: f64,
    pub phi: f64,
    pub expression: f64,
}

impl ShenSample {
    pub fn ok(&self) -> bool {
        self.phi.is_finite() && self.expression.is_finite() && self.phi > 0.0 && self.expression > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShenReport {
    pub holds: bool,
    /// Minimum of the Shen expression over the finite samples.
    pub min_value: f64,
    pub argmin_s: f64,
    /// Minimum of φ over the finite samples.
    pub phi_min: f64,
    pub samples: Vec<ShenSample>,
}

impl ShenReport {
    /// The sample nearest to `s`.
    pub fn sample_at(&self, s: f64) -> Option<&ShenSample> {
        self.samples
            .iter()
            .min_by(|a, b| (a.s - s).abs().total_cmp(&(b.s - s).abs()))
    }
}

/// Evaluates the positivity condition for `F = αφ(β/α)` on a uniform grid
/// of `samples` points covering `[−b, b]` including both ends. Singular
/// samples count as failures.
pub fn shen_check(spec: &MetricSpec, samples: usize) -> Result<ShenReport> {
    if samples < 3 {
        return Err(FinslerError::Domain(format!("samples = {samples} must be at least 3")));
    }
    let b = spec.b;
    let last = (samples - 1) as f64;
    let grid: Vec<ShenSample> = (0..samples)
        .map(|k| {
            // symmetric about 0; the midpoint lands exactly on 0 for odd counts
            let s = b * (2.0 * k as f64 - last) / last;
            ShenSample {
                s,
                phi: spec.phi.phi(s),
                expression: shen_expression(&spec.phi, s, b),
            }
        })
        .collect();

    let holds = grid.iter().all(ShenSample::ok);
    let (mut min_value, mut argmin_s, mut phi_min) = (f64::NAN, f64::NAN, f64::NAN);
    for g in &grid {
        if g.expression.is_finite() && (min_value.is_nan() || g.expression < min_value) {
            min_value = g.expression;
            argmin_s = g.s;
        }
        if g.phi.is_finite() && (phi_min.is_nan() || g.phi < phi_min) {
            phi_min = g.phi;
        }
    }
    Ok(ShenReport {
        holds,
        min_value,
        argmin_s,
        phi_min,
        samples: grid,
    })
}
