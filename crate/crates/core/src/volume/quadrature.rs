use crate::error::{FinslerError, Result};

/// Nodes per Gauss–Legendre panel.
pub const PANEL_NODES: usize = 64;
/// Absolute tolerance of the adaptive integrator.
pub const QUAD_TOL: f64 = 1e-10;
const MAX_PANELS: usize = 2000;

/// Gauss–Legendre rule on `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_n` by Newton iteration from Chebyshev-like guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule on `[a, b]`.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        sum * half
    }
}

/// `(P_n(x), P_n′(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl Panel {
    /// Two-level estimate: the value over both halves, the error from their
    /// difference with the whole-panel rule.
    fn new<F: Fn(f64) -> f64>(f: &F, rule: &GaussLegendre, lo: f64, hi: f64) -> Self {
        let mid = 0.5 * (lo + hi);
        let whole = rule.apply(f, lo, hi);
        let value = rule.apply(f, lo, mid) + rule.apply(f, mid, hi);
        let error = (value - whole).abs();
        Self {
            lo,
            hi,
            value,
            error: if error.is_finite() && value.is_finite() { error } else { f64::INFINITY },
        }
    }
}

/// Globally adaptive Gauss–Legendre integration: the panel with the largest
/// error estimate is bisected until the summed estimate is within `tol`.
/// On failure the error names the worst remaining panel.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    rule: &GaussLegendre,
) -> Result<Integral> {
    let mut panels = vec![Panel::new(&f, rule, a, b)];
    let mut evaluations = 3 * rule.len();
    loop {
        let total_error: f64 = panels.iter().map(|p| p.error).sum();
        let (worst_idx, worst) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, p)| (i, *p))
            .expect("at least one panel");
        if total_error <= tol {
            return Ok(Integral {
                value: panels.iter().map(|p| p.value).sum(),
                error: total_error,
                evaluations,
            });
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if panels.len() >= MAX_PANELS || !(mid > worst.lo && mid < worst.hi) || worst.error.is_infinite() {
            return Err(FinslerError::Quadrature {
                a: worst.lo,
                b: worst.hi,
                estimate: worst.error,
            });
        }
        panels[worst_idx] = Panel::new(&f, rule, worst.lo, mid);
        panels.push(Panel::new(&f, rule, mid, worst.hi));
        evaluations += 6 * rule.len();
    }
}
