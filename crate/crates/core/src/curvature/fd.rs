use nalgebra::{DMatrix, DVector};

use crate::error::{FinslerError, Result};

/// Relative step for the Hessian stencil.
pub const FD_STEP: f64 = 1e-4;

/// Central-difference Hessian with one Richardson step,
/// `(4 H(h/2) − H(h)) / 3`, where `h = max(1e−4, 1e−4 ‖y‖)`.
pub fn hessian<F>(f: F, y: &DVector<f64>) -> Result<DMatrix<f64>>
where
    F: Fn(&DVector<f64>) -> Result<f64>,
{
    let h = FD_STEP.max(FD_STEP * y.norm());
    let coarse = central(&f, y, h)?;
    let fine = central(&f, y, 0.5 * h)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

fn central<F>(f: &F, y: &DVector<f64>, h: f64) -> Result<DMatrix<f64>>
where
    F: Fn(&DVector<f64>) -> Result<f64>,
{
    let n = y.len();
    for i in 0..n {
        let moved = (y[i] + 0.5 * h) - y[i];
        if !(moved > 0.0 && moved.is_finite()) {
            return Err(FinslerError::Domain(format!(
                "finite-difference step {h:e} is not resolvable at y[{i}] = {}",
                y[i]
            )));
        }
    }
    let at = |shifts: &[(usize, f64)]| -> Result<f64> {
        let mut z = y.clone();
        for &(i, d) in shifts {
            z[i] += d;
        }
        f(&z)
    };
    let f0 = f(y)?;
    let h2 = h * h;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        let d = (at(&[(i, h)])? - 2.0 * f0 + at(&[(i, -h)])?) / h2;
        out[(i, i)] = d;
        for j in 0..i {
            let x = (at(&[(i, h), (j, h)])? - at(&[(i, h), (j, -h)])?
                - at(&[(i, -h), (j, h)])?
                + at(&[(i, -h), (j, -h)])?)
                / (4.0 * h2);
            out[(i, j)] = x;
            out[(j, i)] = x;
        }
    }
    Ok(out)
}
