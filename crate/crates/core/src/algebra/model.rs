use nalgebra::{DMatrix, DVector};

use super::StructureConstants;
use crate::error::{FinslerError, Result};

/// Rejection threshold for linearly dependent candidates in Gram–Schmidt.
const FRAME_TOL: f64 = 1e-12;

/// A reductive decomposition `g = h + m` together with an inner product on
/// `m` and an orthonormal frame of `m` whose last vector is `v / |v|`.
///
/// The first `h_dim` basis vectors of g span h, the remaining `m_dim` span m.
/// Vectors of m are written either in *m-coordinates* (the basis of g
/// restricted to m) or in *frame coordinates* (components along the
/// orthonormal frame). Curvature routines work in frame coordinates, where
/// the inner product is the identity.
#[derive(Debug, Clone)]
pub struct ReductiveModel {
    structure: StructureConstants,
    h_dim: usize,
    m_dim: usize,
    inner_product: DMatrix<f64>,
    /// Columns are the frame vectors in m-coordinates.
    frame: DMatrix<f64>,
    seed: DVector<f64>,
    /// `[v_a, v_b]_m = sum_c frame_brackets[(a*n + b)*n + c] v_c`
    frame_brackets: Vec<f64>,
}

impl ReductiveModel {
    /// Builds the model and its frame. `v` is the invariant vector in
    /// m-coordinates; it seeds the last frame vector when nonzero.
    pub fn new(
        structure: StructureConstants,
        h_dim: usize,
        inner_product: DMatrix<f64>,
        v: &[f64],
    ) -> Result<Self> {
        let dim_g = structure.dim();
        if h_dim > dim_g {
            return Err(FinslerError::Structural(format!(
                "h_dim = {h_dim} exceeds dim_g = {dim_g}"
            )));
        }
        let m_dim = dim_g - h_dim;
        if m_dim == 0 {
            return Err(FinslerError::Structural("m is zero-dimensional".into()));
        }
        if inner_product.nrows() != m_dim || inner_product.ncols() != m_dim {
            return Err(FinslerError::Structural(format!(
                "inner product is {}x{}, expected {m_dim}x{m_dim}",
                inner_product.nrows(),
                inner_product.ncols()
            )));
        }
        if v.len() != m_dim {
            return Err(FinslerError::Structural(format!(
                "invariant vector has {} components, expected {m_dim}",
                v.len()
            )));
        }
        check_spd(&inner_product)?;

        let seed = DVector::from_column_slice(v);
        let frame = build_frame(&inner_product, &seed)?;
        let mut model = Self {
            structure,
            h_dim,
            m_dim,
            inner_product,
            frame,
            seed,
            frame_brackets: Vec::new(),
        };
        model.frame_brackets = model.compute_frame_brackets();
        Ok(model)
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn h_dim(&self) -> usize {
        self.h_dim
    }

    /// Dimension `n` of m.
    pub fn m_dim(&self) -> usize {
        self.m_dim
    }

    pub fn dim_g(&self) -> usize {
        self.structure.dim()
    }

    pub fn inner_product(&self) -> &DMatrix<f64> {
        &self.inner_product
    }

    /// Frame vectors as columns, in m-coordinates.
    pub fn frame(&self) -> &DMatrix<f64> {
        &self.frame
    }

    /// The invariant vector this model's frame was built around.
    pub fn invariant_vector(&self) -> InvariantVector {
        InvariantVector::new(self, self.seed.as_slice())
            .expect("seed dimension checked at construction")
    }

    /// m-coordinates to frame coordinates.
    pub fn to_frame(&self, x: &DVector<f64>) -> DVector<f64> {
        self.frame.transpose() * (&self.inner_product * x)
    }

    /// Frame coordinates to m-coordinates.
    pub fn from_frame(&self, x: &DVector<f64>) -> DVector<f64> {
        &self.frame * x
    }

    /// `<x, y>` for vectors in m-coordinates.
    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        x.dot(&(&self.inner_product * y))
    }

    /// Embeds an m-coordinate vector into g.
    pub(crate) fn lift_m(&self, x: &DVector<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.dim_g()];
        out[self.h_dim..].copy_from_slice(x.as_slice());
        out
    }

    /// The m-part (m-coordinates) of a vector of g.
    pub(crate) fn project_m(&self, x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(&x[self.h_dim..])
    }

    /// `[x, y]_m` for x, y in m-coordinates; result in m-coordinates.
    pub fn bracket_m_coords(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let full = self.structure.bracket(&self.lift_m(x), &self.lift_m(y));
        self.project_m(&full)
    }

    /// `[x, y]_m` for x, y in frame coordinates; result in frame coordinates.
    pub fn bracket_m(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.m_dim;
        let mut out = DVector::zeros(n);
        for a in 0..n {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                let xy = x[a] * y[b];
                if xy == 0.0 {
                    continue;
                }
                let base = (a * n + b) * n;
                for c in 0..n {
                    out[c] += self.frame_brackets[base + c] * xy;
                }
            }
        }
        out
    }

    /// `<[v_a, v_b]_m, v_c>` in the orthonormal frame.
    #[inline]
    pub fn frame_bracket(&self, a: usize, b: usize, c: usize) -> f64 {
        let n = self.m_dim;
        self.frame_brackets[(a * n + b) * n + c]
    }

    /// Matrix of `ad_x` restricted to m: column `i` holds `[x, v_i]_m`.
    /// `x` is in frame coordinates.
    pub fn ad_m(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.m_dim;
        let mut out = DMatrix::zeros(n, n);
        for a in 0..n {
            if x[a] == 0.0 {
                continue;
            }
            for i in 0..n {
                for c in 0..n {
                    out[(c, i)] += x[a] * self.frame_bracket(a, i, c);
                }
            }
        }
        out
    }

    fn compute_frame_brackets(&self) -> Vec<f64> {
        let n = self.m_dim;
        let mut out = vec![0.0; n * n * n];
        let cols: Vec<DVector<f64>> = (0..n).map(|a| self.frame.column(a).into_owned()).collect();
        for a in 0..n {
            for b in 0..n {
                let z = self.to_frame(&self.bracket_m_coords(&cols[a], &cols[b]));
                out[(a * n + b) * n..(a * n + b + 1) * n].copy_from_slice(z.as_slice());
            }
        }
        out
    }

    /// Checks that `v` is the vector this model's frame was seeded with.
    pub(crate) fn check_vector(&self, v: &InvariantVector) -> Result<()> {
        if v.coords.len() != self.m_dim {
            return Err(FinslerError::Structural(format!(
                "invariant vector has {} components, expected {}",
                v.coords.len(),
                self.m_dim
            )));
        }
        if v.c == 0.0 {
            return Ok(());
        }
        let last = self.frame.column(self.m_dim - 1).into_owned();
        let diff = &v.coords / v.c - last;
        if self.inner(&diff, &diff).sqrt() > 1e-10 {
            return Err(FinslerError::Structural(
                "invariant vector is not aligned with the last frame vector; \
                 build the model from this vector"
                    .into(),
            ));
        }
        Ok(())
    }
}

fn check_spd(g: &DMatrix<f64>) -> Result<()> {
    let n = g.nrows();
    let scale = g.amax().max(1.0);
    for i in 0..n {
        for j in 0..i {
            if (g[(i, j)] - g[(j, i)]).abs() > 1e-12 * scale {
                return Err(FinslerError::Structural(format!(
                    "inner product is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    if g.iter().any(|x| !x.is_finite()) {
        return Err(FinslerError::Structural("inner product has non-finite entries".into()));
    }
    let eig = g.clone().symmetric_eigen();
    let min = eig.eigenvalues.min();
    if min <= FRAME_TOL * scale {
        return Err(FinslerError::Structural(format!(
            "inner product is not positive definite (smallest eigenvalue {min:e})"
        )));
    }
    Ok(())
}

/// Modified Gram–Schmidt in the `g`-inner product, seeded with `v/|v|`, then
/// completed with pivoted identity columns. `v/|v|` ends up as the last column.
fn build_frame(g: &DMatrix<f64>, v: &DVector<f64>) -> Result<DMatrix<f64>> {
    let n = g.nrows();
    let ip = |x: &DVector<f64>, y: &DVector<f64>| x.dot(&(g * y));
    let c = ip(v, v).sqrt();

    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
    if c > FRAME_TOL {
        basis.push(v / c);
    }
    let mut unused: Vec<usize> = (0..n).collect();
    let orthogonalize = |x: &mut DVector<f64>, basis: &[DVector<f64>]| {
        // two passes keep the residual orthogonal to working precision
        for _ in 0..2 {
            for u in basis {
                let p = ip(x, u);
                x.axpy(-p, u, 1.0);
            }
        }
    };
    while basis.len() < n {
        let mut best: Option<(usize, DVector<f64>, f64)> = None;
        for (pos, &k) in unused.iter().enumerate() {
            let mut r = DVector::zeros(n);
            r[k] = 1.0;
            orthogonalize(&mut r, &basis);
            let norm = ip(&r, &r).sqrt();
            if best.as_ref().is_none_or(|b| norm > b.2) {
                best = Some((pos, r, norm));
            }
        }
        let (pos, r, norm) = best.expect("candidates remain while the basis is incomplete");
        if norm < FRAME_TOL {
            return Err(FinslerError::Structural(
                "frame construction hit a dependent candidate".into(),
            ));
        }
        unused.remove(pos);
        basis.push(r / norm);
    }

    let mut frame = DMatrix::zeros(n, n);
    // completion vectors first, seed last
    let (seed, rest) = if c > FRAME_TOL {
        (Some(&basis[0]), &basis[1..])
    } else {
        (None, &basis[..])
    };
    for (a, col) in rest.iter().enumerate() {
        frame.set_column(a, col);
    }
    if let Some(s) = seed {
        frame.set_column(n - 1, s);
    }
    Ok(frame)
}

/// The vector `v` in m corresponding to the invariant 1-form β.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantVector {
    /// m-coordinates.
    pub coords: DVector<f64>,
    /// `|v|` in the inner product of m.
    pub c: f64,
    /// `||β||`; equals `c` in an orthonormal frame.
    pub b: f64,
}

impl InvariantVector {
    pub fn new(model: &ReductiveModel, coords: &[f64]) -> Result<Self> {
        if coords.len() != model.m_dim() {
            return Err(FinslerError::Structural(format!(
                "invariant vector has {} components, expected {}",
                coords.len(),
                model.m_dim()
            )));
        }
        let coords = DVector::from_column_slice(coords);
        let c = model.inner(&coords, &coords).sqrt();
        let c = if c > FRAME_TOL { c } else { 0.0 };
        Ok(Self { coords, c, b: c })
    }

    pub fn is_zero(&self) -> bool {
        self.c == 0.0
    }

    /// `v` in frame coordinates: `c` times the last unit vector.
    pub fn frame_coords(&self, model: &ReductiveModel) -> DVector<f64> {
        let n = model.m_dim();
        let mut out = DVector::zeros(n);
        if self.c > 0.0 {
            out[n - 1] = self.c;
        }
        out
    }
}
