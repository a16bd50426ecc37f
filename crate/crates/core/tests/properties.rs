mod common;

use common::{rel_close, s_of, semidirect, well_conditioned};
use homfinsler::algebra::{origin_tensors, s0_r00, validate_model};
use homfinsler::curvature::{
    coefficients_exponential, coefficients_generic, coefficients_infinite_series, mean_berwald,
    s_curvature, s_curvature_via_tensors, Path,
};
use homfinsler::metrics::{finsler_norm, shen_check, MetricSpec, PhiFamily};
use homfinsler::FinslerError;
use nalgebra::DVector;
use proptest::prelude::*;

fn vec3() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, 4)
}

fn frame_vec(n: usize, raw: &[f64]) -> DVector<f64> {
    DVector::from_iterator(n, raw.iter().copied().cycle().take(n))
}

fn closed_families() -> impl Strategy<Value = PhiFamily> {
    prop_oneof![Just(PhiFamily::Exponential), Just(PhiFamily::InfiniteSeries)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bracket_is_antisymmetric(p in semidirect(3), x in vec3(), y in vec3()) {
        let (m, _) = p.build();
        let n = m.m_dim();
        let (x, y) = (frame_vec(n, &x), frame_vec(n, &y));
        let sum = m.bracket_m(&x, &y) + m.bracket_m(&y, &x);
        prop_assert!(sum.amax() <= 1e-12 * (1.0 + x.norm() * y.norm()));
    }

    #[test]
    fn semidirect_products_pass_every_check(p in semidirect(3)) {
        let (m, v) = p.build();
        prop_assert!(m.structure().jacobi_residual() <= 1e-10);
        let r = validate_model(&m, &v).unwrap();
        prop_assert!(r.all_passed(), "{}", r);
    }

    #[test]
    fn tensor_contractions_match_brackets(p in semidirect(3), y in vec3()) {
        let (m, v) = p.build();
        let y = frame_vec(m.m_dim(), &y);
        let t = origin_tensors(&m, &v).unwrap();
        let (s0, r00) = s0_r00(&m, &v, &y).unwrap();
        prop_assert!((t.s0(&y) - s0).abs() <= 1e-10 * (1.0 + s0.abs()));
        prop_assert!((t.r00(&y) - r00).abs() <= 1e-10 * (1.0 + r00.abs()));
        prop_assert!((&t.r - t.r.transpose()).amax() == 0.0);
        prop_assert!((&t.s + t.s.transpose()).amax() == 0.0);
    }

    #[test]
    fn norm_is_positively_homogeneous(
        b in 0.05..0.95f64, alpha in 0.1..10.0f64, t in -1.0..1.0f64, lambda in 0.01..100.0f64,
    ) {
        let spec = MetricSpec::new(PhiFamily::Exponential, b).unwrap();
        let beta = t * b * alpha;
        let f = finsler_norm(&spec, alpha, beta).unwrap();
        let g = finsler_norm(&spec, lambda * alpha, lambda * beta).unwrap();
        prop_assert!(rel_close(g, lambda * f, 1e-14));
    }

    #[test]
    fn phi_derivatives_match_finite_differences(s in -0.8..0.8f64, which in 0usize..5) {
        let (phi, s) = match which {
            0 => (PhiFamily::Randers, s),
            1 => (PhiFamily::Matsumoto, s),
            2 => (PhiFamily::Exponential, s),
            3 => (PhiFamily::InfiniteSeries, 2.0 + s),
            _ => (PhiFamily::polynomial(&[1.0, 0.3, -0.2, 0.05]), s),
        };
        let h = 1e-3;
        // Richardson-extrapolated central differences
        let d = |f: &dyn Fn(f64) -> f64| {
            let c = |h: f64| (f(s + h) - f(s - h)) / (2.0 * h);
            (4.0 * c(h / 2.0) - c(h)) / 3.0
        };
        let j = phi.jet(s);
        prop_assert!(rel_close(d(&|x| phi.jet(x).phi), j.d1, 1e-7));
        prop_assert!(rel_close(d(&|x| phi.jet(x).d1), j.d2, 1e-7));
        prop_assert!(rel_close(d(&|x| phi.jet(x).d2), j.d3, 1e-7));
    }

    #[test]
    fn randers_always_passes_shen(b in 0.0..0.999f64) {
        let r = shen_check(&MetricSpec::new(PhiFamily::Randers, b).unwrap(), 201).unwrap();
        prop_assert!(r.holds);
    }

    #[test]
    fn closed_coefficients_match_generic(
        s in prop_oneof![1.1..5.0f64, -2.0..-0.1f64], t in -0.9..0.9f64, b in 0.01..0.99f64, n in 2usize..=10,
    ) {
        let pairs = [
            (coefficients_infinite_series(s, b, n).unwrap(), coefficients_generic(&PhiFamily::InfiniteSeries, s, b, n).unwrap()),
            (coefficients_exponential(t, b, n).unwrap(), coefficients_generic(&PhiFamily::Exponential, t, b, n).unwrap()),
        ];
        for (c, g) in pairs {
            for (x, y) in [(c.q, g.q), (c.qp, g.qp), (c.qpp, g.qpp), (c.delta, g.delta), (c.phi, g.phi)] {
                prop_assert!((x - y).abs() <= 1e-10 * y.abs().max(1e-300), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn s_paths_agree_and_scale(p in semidirect(3), y in vec3(), phi in closed_families(), lambda in prop::sample::select(vec![0.5, 2.0, 10.0])) {
        let (m, v) = p.build();
        let n = m.m_dim();
        let y = frame_vec(n, &y);
        prop_assume!(y.norm() > 0.1);
        prop_assume!(well_conditioned(&phi, s_of(&m, &v, &y), v.b, n));
        let spec = MetricSpec::new(phi, v.b).unwrap();
        let closed = s_curvature(&m, &v, &spec, &y, Path::ClosedForm).unwrap();
        let generic = s_curvature(&m, &v, &spec, &y, Path::Generic).unwrap();
        let tensors = s_curvature_via_tensors(&m, &v, &spec, &y).unwrap();
        prop_assert!(rel_close(closed, generic, 1e-10), "{closed} vs {generic}");
        prop_assert!(rel_close(tensors, generic, 1e-10), "{tensors} vs {generic}");
        let scaled = s_curvature(&m, &v, &spec, &(&y * lambda), Path::ClosedForm).unwrap();
        prop_assert!((scaled - lambda * closed).abs() <= 1e-10 * (lambda * closed).abs().max(1e-12));
    }

    #[test]
    fn mean_berwald_is_symmetric_and_scales(p in semidirect(3), y in vec3(), phi in closed_families(), lambda in prop::sample::select(vec![0.5, 2.0, 10.0])) {
        let (m, v) = p.build();
        let n = m.m_dim();
        let y = frame_vec(n, &y);
        prop_assume!(y.norm() > 0.1);
        prop_assume!(well_conditioned(&phi, s_of(&m, &v, &y), v.b, n));
        let spec = MetricSpec::new(phi, v.b).unwrap();
        let e = mean_berwald(&m, &v, &spec, &y, Path::ClosedForm).unwrap();
        let scale = 1.0 + e.amax();
        prop_assert!((&e - e.transpose()).amax() <= 1e-12 * scale);
        let scaled = mean_berwald(&m, &v, &spec, &(&y * lambda), Path::ClosedForm).unwrap();
        prop_assert!((scaled * lambda - &e).amax() <= 1e-8 * scale);
        // Euler: E y = 0 for a degree −1 Hessian of a degree 1 function
        prop_assert!((&e * &y).amax() <= 1e-9 * scale * y.norm());
    }

    #[test]
    fn s_vanishes_along_v(p in semidirect(3), phi in closed_families(), lambda in 0.1..10.0f64) {
        let (m, v) = p.build();
        let y = v.frame_coords(&m) * lambda;
        let spec = MetricSpec::new(phi, v.b).unwrap();
        for path in [Path::ClosedForm, Path::Generic] {
            match s_curvature(&m, &v, &spec, &y, path) {
                Ok(x) => prop_assert!(x.abs() <= 1e-12, "{x}"),
                Err(FinslerError::Singularity { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        prop_assert!(s_curvature_via_tensors(&m, &v, &spec, &y).map_or(true, |x| x.abs() <= 1e-12));
    }
}
