//! Bracket-derived tensors at the origin `H` of `G/H`.
//!
//! All indices refer to the orthonormal frame of m whose last vector is
//! `v / c`, so `b_i = c δ_in` and raising/lowering indices is trivial.

use nalgebra::{DMatrix, DVector};

use super::{InvariantVector, ReductiveModel};
use crate::error::Result;

/// Christoffel symbols `Γ^l_ij(H)` stored densely as `[l][i][j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    n: usize,
    data: Vec<f64>,
}

impl Christoffel {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `Γ^l_ij`.
    #[inline]
    pub fn get(&self, l: usize, i: usize, j: usize) -> f64 {
        self.data[(l * self.n + i) * self.n + j]
    }
}

/// The three-term bracket expression for `Γ^l_ij`, valid as written for
/// `i >= j`:
///
/// `½ (−<[v_i,v_j]_m, v_l> + <[v_l,v_i]_m, v_j> + <[v_l,v_j]_m, v_i>)`
pub fn christoffel_formula(model: &ReductiveModel, l: usize, i: usize, j: usize) -> f64 {
    0.5 * (-model.frame_bracket(i, j, l)
        + model.frame_bracket(l, i, j)
        + model.frame_bracket(l, j, i))
}

/// `Γ^l_ij(H)`, evaluated for `i >= j` and mirrored to `i < j`.
pub fn christoffel_origin(model: &ReductiveModel) -> Christoffel {
    let n = model.m_dim();
    let mut data = vec![0.0; n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in 0..=i {
                let g = christoffel_formula(model, l, i, j);
                data[(l * n + i) * n + j] = g;
                data[(l * n + j) * n + i] = g;
            }
        }
    }
    Christoffel { n, data }
}

/// `Γ`, `r_ij` and `s_ij` at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct OriginTensors {
    pub gamma: Christoffel,
    /// Symmetric part of `∇β`.
    pub r: DMatrix<f64>,
    /// Antisymmetric part of `∇β`.
    pub s: DMatrix<f64>,
    /// Length of `v`.
    pub c: f64,
}

impl OriginTensors {
    /// `s_i = c s_ni`.
    pub fn s_lower(&self) -> DVector<f64> {
        let n = self.s.nrows();
        self.s.row(n - 1).transpose() * self.c
    }

    /// `s_0 = s_i y^i`.
    pub fn s0(&self, y: &DVector<f64>) -> f64 {
        self.s_lower().dot(y)
    }

    /// `r_00 = r_ij y^i y^j`.
    pub fn r00(&self, y: &DVector<f64>) -> f64 {
        y.dot(&(&self.r * y))
    }
}

/// Computes `Γ`, `r` and `s` at the origin.
///
/// `s_ij = (c/2) <[v_i,v_j]_m, v_n>` and
/// `r_ij = −(c/2)(<[v_n,v_i]_m, v_j> + <[v_n,v_j]_m, v_i>)`.
/// When `v = 0` both `r` and `s` vanish.
pub fn origin_tensors(model: &ReductiveModel, v: &InvariantVector) -> Result<OriginTensors> {
    model.check_vector(v)?;
    let n = model.m_dim();
    let gamma = christoffel_origin(model);
    let mut r = DMatrix::zeros(n, n);
    let mut s = DMatrix::zeros(n, n);
    if !v.is_zero() {
        let c = v.c;
        let last = n - 1;
        for i in 0..n {
            for j in 0..=i {
                let sij = 0.5 * c * model.frame_bracket(i, j, last);
                s[(i, j)] = sij;
                s[(j, i)] = -sij;
                let rij = -0.5 * c
                    * (model.frame_bracket(last, i, j) + model.frame_bracket(last, j, i));
                r[(i, j)] = rij;
                r[(j, i)] = rij;
            }
            s[(i, i)] = 0.0;
        }
    }
    Ok(OriginTensors {
        gamma,
        r,
        s,
        c: v.c,
    })
}

/// `(s_0, r_00)` straight from brackets: `s_0 = ½<[v,y]_m, v>`,
/// `r_00 = −<[v,y]_m, y>`. `y` is in frame coordinates.
pub fn s0_r00(model: &ReductiveModel, v: &InvariantVector, y: &DVector<f64>) -> Result<(f64, f64)> {
    model.check_vector(v)?;
    let vf = v.frame_coords(model);
    let w = model.bracket_m(&vf, y);
    Ok((0.5 * w.dot(&vf), -w.dot(y)))
}
