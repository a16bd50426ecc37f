#![allow(dead_code)]

use homfinsler::algebra::{InvariantVector, ReductiveModel, StructureConstants};
use homfinsler::curvature::coefficients_closed;
use homfinsler::metrics::PhiFamily;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

/// Parameters of `R e0 ⋉ R^k` with `[e0, e_i] = Σ_j M_ji e_j`, an SPD inner
/// product `L Lᵀ + ½ I` and `v` rescaled to length `b`.
#[derive(Debug, Clone)]
pub struct SemidirectParams {
    pub k: usize,
    pub m: Vec<f64>,
    pub l: Vec<f64>,
    pub v_dir: Vec<f64>,
    pub b: f64,
}

pub fn semidirect(max_k: usize) -> impl Strategy<Value = SemidirectParams> {
    (1..=max_k).prop_flat_map(|k| {
        let n = k + 1;
        (
            Just(k),
            prop::collection::vec(-2.0..2.0f64, k * k),
            prop::collection::vec(-1.0..1.0f64, n * n),
            prop::collection::vec(-1.0..1.0f64, n),
            0.1..0.9f64,
        )
            .prop_filter("v direction must be nonzero", |(_, _, _, d, _)| {
                d.iter().map(|x| x * x).sum::<f64>() > 1e-2
            })
            .prop_map(|(k, m, l, v_dir, b)| SemidirectParams { k, m, l, v_dir, b })
    })
}

impl SemidirectParams {
    pub fn build(&self) -> (ReductiveModel, InvariantVector) {
        let k = self.k;
        let n = k + 1;
        let mut triples = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let c = self.m[j * k + i];
                if c != 0.0 {
                    triples.push((0, i + 1, j + 1, c));
                }
            }
        }
        let sc = StructureConstants::from_triples(n, &triples).unwrap();
        let l = DMatrix::from_row_slice(n, n, &self.l);
        let g = &l * l.transpose() + DMatrix::identity(n, n) * 0.5;
        let dir = DVector::from_row_slice(&self.v_dir);
        let len = dir.dot(&(&g * &dir)).sqrt();
        let v = dir * (self.b / len);
        let model = ReductiveModel::new(sc, 0, g, v.as_slice()).unwrap();
        let v = model.invariant_vector();
        (model, v)
    }
}

/// `s = β/α` for a frame vector `y`.
pub fn s_of(model: &ReductiveModel, v: &InvariantVector, y: &DVector<f64>) -> f64 {
    v.frame_coords(model).dot(y) / y.norm()
}

/// True when the closed-form coefficients at `s` are comfortably away from
/// every singular locus, so path comparisons are well conditioned.
pub fn well_conditioned(phi: &PhiFamily, s: f64, b: f64, n: usize) -> bool {
    if s.abs() < 0.05 || (1.0 - s).abs() < 0.05 {
        return false;
    }
    match coefficients_closed(phi, s, b, n) {
        Ok(c) => c.delta.abs() >= 0.05 && c.phi.is_finite(),
        Err(_) => false,
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}
