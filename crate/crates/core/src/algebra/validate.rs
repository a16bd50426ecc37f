use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{InvariantVector, ReductiveModel};
use crate::error::{FinslerError, Result};

/// Residual threshold shared by every algebraic check.
pub const CHECK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            passed: residual <= tolerance,
            residual,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{:<24} {:<4} residual {:e}",
                c.name,
                if c.passed { "ok" } else { "FAIL" },
                c.residual
            )?;
        }
        Ok(())
    }
}

/// Runs the algebraic checks on a model and its invariant vector.
///
/// Invariance under `H` is checked at the Lie-algebra level, i.e. for the
/// identity component of `H`.
pub fn validate_model(model: &ReductiveModel, v: &InvariantVector) -> Result<ValidationReport> {
    if v.coords.len() != model.m_dim() {
        return Err(FinslerError::Structural(format!(
            "invariant vector has {} components, expected {}",
            v.coords.len(),
            model.m_dim()
        )));
    }
    let sc = model.structure();
    let h = model.h_dim();
    let n = model.m_dim();
    let dim = model.dim_g();
    let mut checks = Vec::with_capacity(7);

    checks.push(Check::new("antisymmetry", sc.antisymmetry_residual(), CHECK_TOL));
    checks.push(Check::new("jacobi", sc.jacobi_residual(), CHECK_TOL));

    // [h, m] ⊂ m
    let mut reductive = 0.0f64;
    for a in 0..h {
        for i in h..dim {
            for k in 0..h {
                reductive = reductive.max(sc.get(a, i, k).abs());
            }
        }
    }
    checks.push(Check::new("reductivity", reductive, CHECK_TOL));

    let frame = model.frame();
    let gram = frame.transpose() * model.inner_product() * frame;
    let ortho = (gram - DMatrix::<f64>::identity(n, n)).amax();
    checks.push(Check::new("frame_orthonormality", ortho, CHECK_TOL));

    // ad_w on m in frame coordinates, one matrix per h-basis vector
    let ad_h: Vec<DMatrix<f64>> = (0..h)
        .map(|a| {
            let mut w = vec![0.0; dim];
            w[a] = 1.0;
            let mut mat = DMatrix::zeros(n, n);
            for i in 0..n {
                let x = model.lift_m(&frame.column(i).into_owned());
                let br = sc.bracket(&w, &x);
                let col = model.to_frame(&model.project_m(&br));
                mat.set_column(i, &col);
            }
            mat
        })
        .collect();

    let invariance = ad_h
        .iter()
        .map(|a| (a + a.transpose()).amax())
        .fold(0.0f64, f64::max);
    checks.push(Check::new("inner_product_invariance", invariance, CHECK_TOL));

    let vf = model.to_frame(&v.coords);
    let v_inv = ad_h
        .iter()
        .map(|a| (a * &vf).amax())
        .fold(0.0f64, f64::max);
    checks.push(Check::new("vector_invariance", v_inv, CHECK_TOL));

    let len = (v.c * v.c - model.inner(&v.coords, &v.coords)).abs();
    checks.push(Check::new("vector_length", len, CHECK_TOL));

    Ok(ValidationReport { checks })
}

/// `[x, y]_m` for x, y in frame coordinates; see [`ReductiveModel::bracket_m`].
pub fn bracket_m(model: &ReductiveModel, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
    model.bracket_m(x, y)
}
