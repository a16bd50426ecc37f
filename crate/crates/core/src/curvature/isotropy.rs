use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::scurv::{guard, s_generic_raw, Kinematics};
use crate::algebra::{InvariantVector, ReductiveModel};
use crate::error::{FinslerError, Result};
use crate::metrics::MetricSpec;

pub const DEFAULT_ISOTROPY_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsotropyReport {
    /// `S ≈ (n+1) c F` holds over the samples.
    pub isotropic: bool,
    /// Least-squares `c(H)`.
    pub c_h: f64,
    /// `S` vanishes on every sample.
    pub vanishing: bool,
    pub residual: f64,
    pub max_abs_s: f64,
    pub samples_used: usize,
}

/// Draws a direction uniformly on the unit sphere of `R^n`.
pub fn random_unit<R: rand::Rng>(rng: &mut R, n: usize) -> DVector<f64> {
    loop {
        let g = DVector::from_fn(n, |_, _| StandardNormal.sample(rng));
        let norm: f64 = g.norm();
        if norm > 1e-12 {
            return g / norm;
        }
    }
}

/// [`isotropy_test_seeded`] with a fixed seed.
pub fn isotropy_test(
    model: &ReductiveModel,
    v: &InvariantVector,
    spec: &MetricSpec,
    sample_count: usize,
) -> Result<IsotropyReport> {
    isotropy_test_seeded(model, v, spec, sample_count, DEFAULT_ISOTROPY_SEED)
}

/// Fits `S(H, y) ≈ (n+1) c F(y)` by least squares over `sample_count`
/// random unit directions plus `y = v`. `F = αφ(s)` is evaluated formally.
/// Directions hitting a coefficient singularity are skipped.
pub fn isotropy_test_seeded(
    model: &ReductiveModel,
    v: &InvariantVector,
    spec: &MetricSpec,
    sample_count: usize,
    seed: u64,
) -> Result<IsotropyReport> {
    let n = model.m_dim();
    if sample_count < n + 1 {
        return Err(FinslerError::Domain(format!(
            "sample_count = {sample_count} must be at least n + 1 = {}",
            n + 1
        )));
    }
    guard(model, v, spec, None)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ys: Vec<DVector<f64>> = (0..sample_count).map(|_| random_unit(&mut rng, n)).collect();
    if !v.is_zero() {
        ys.push(v.frame_coords(model));
    }

    let mut pairs = Vec::with_capacity(ys.len());
    for y in &ys {
        let k = Kinematics::new(model, v, y)?;
        let s = if v.is_zero() {
            0.0
        } else {
            match s_generic_raw(&k, spec, n) {
                Ok(s) => s,
                Err(FinslerError::Singularity { .. }) => continue,
                Err(e) => return Err(e),
            }
        };
        let f = k.alpha * spec.phi.phi(k.s);
        if s.is_finite() && f.is_finite() {
            pairs.push((s, f));
        }
    }
    if pairs.len() < n + 1 {
        return Err(FinslerError::Domain(format!(
            "only {} regular samples out of {}; need at least {}",
            pairs.len(),
            ys.len(),
            n + 1
        )));
    }

    let sf: f64 = pairs.iter().map(|(s, f)| s * f).sum();
    let ff: f64 = pairs.iter().map(|(_, f)| f * f).sum();
    let max_abs_s = pairs.iter().map(|(s, _)| s.abs()).fold(0.0, f64::max);
    if ff == 0.0 && max_abs_s > 0.0 {
        return Err(FinslerError::Domain("F vanishes on every sample".into()));
    }
    let m = (n + 1) as f64;
    let c_h = if ff == 0.0 { 0.0 } else { sf / (m * ff) };
    let residual = pairs
        .iter()
        .map(|(s, f)| (s - m * c_h * f).abs())
        .fold(0.0, f64::max);
    let scale = 1.0 + max_abs_s;
    Ok(IsotropyReport {
        isotropic: residual <= 1e-8 * scale,
        c_h,
        vanishing: max_abs_s <= 1e-10 * scale,
        residual,
        max_abs_s,
        samples_used: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::StructureConstants;
    use crate::metrics::PhiFamily;
    use nalgebra::DMatrix;

    fn model(dim: usize, triples: &[(usize, usize, usize, f64)], v: &[f64]) -> ReductiveModel {
        let c = StructureConstants::from_triples(dim, triples).unwrap();
        ReductiveModel::new(c, 0, DMatrix::identity(dim, dim), v).unwrap()
    }

    #[test]
    fn abelian_and_central_are_isotropic() {
        for m in [
            model(3, &[], &[0.5, 0.0, 0.0]),
            model(3, &[(0, 1, 2, 1.0)], &[0.0, 0.0, 0.5]),
        ] {
            let v = m.invariant_vector();
            for phi in [PhiFamily::Exponential, PhiFamily::InfiniteSeries] {
                let sp = MetricSpec::new(phi, 0.5).unwrap();
                let r = isotropy_test(&m, &v, &sp, 64).unwrap();
                assert!(r.isotropic && r.vanishing, "{r:?}");
                assert_eq!(r.c_h, 0.0);
            }
        }
    }

    #[test]
    fn solvable_is_not_isotropic() {
        let m = model(2, &[(0, 1, 1, 1.0)], &[0.0, 0.5]);
        let v = m.invariant_vector();
        let sp = MetricSpec::new(PhiFamily::Exponential, 0.5).unwrap();
        let r = isotropy_test(&m, &v, &sp, 64).unwrap();
        assert!(!r.isotropic);
        assert!(!r.vanishing);
    }

    #[test]
    fn too_few_samples() {
        let m = model(2, &[(0, 1, 1, 1.0)], &[0.0, 0.5]);
        let sp = MetricSpec::new(PhiFamily::Exponential, 0.5).unwrap();
        assert!(isotropy_test(&m, &m.invariant_vector(), &sp, 2).is_err());
    }

    #[test]
    fn unit_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert!((random_unit(&mut rng, 4).norm() - 1.0).abs() < 1e-15);
        }
    }
}
