//! Invariants that must hold across the whole parameter space, checked on
//! randomized inputs: deviation growth, kappa bounds and invariances,
//! characteristic function basics, density normalization, and agreement
//! between independent computation routes.

use kappa_core::analytic::{cubic_kappa, cubic_sum_pdf, lognormal_cumulants};
use kappa_core::pearson::pearson_fit;
use kappa_core::{
    closed_mad, equivalent_sample_size, kappa, mad_from_cf, mc_run_planner, DistributionSpec,
    EquivalenceMethod, Preference, QuadratureConfig, RunPlan,
};
use proptest::prelude::*;

fn closed_specs() -> impl Strategy<Value = DistributionSpec> {
    prop_oneof![
        (0.1f64..4.0).prop_map(|sigma| DistributionSpec::Gaussian { mu: 0.0, sigma }),
        (0.2f64..5.0).prop_map(|scale| DistributionSpec::StudentT { alpha: 3.0, scale }),
        (0.2f64..4.0).prop_map(|lambda| DistributionSpec::Exponential { lambda }),
        ((0.5f64..6.0), (0.2f64..3.0))
            .prop_map(|(shape, rate)| DistributionSpec::Gamma { shape, rate }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// M grows with n, and never faster than linearly: M(n) <= n M(1).
    #[test]
    fn deviation_growth(spec in closed_specs(), n in 2u64..200) {
        let m1 = closed_mad(&spec, 1).unwrap();
        let ma = closed_mad(&spec, n).unwrap();
        let mb = closed_mad(&spec, n + 1).unwrap();
        prop_assert!(ma < mb);
        prop_assert!(ma <= n as f64 * m1 * (1.0 + 1e-12));
    }

    /// kappa(1, n) stays at or below 1 and the pair is scale invariant.
    #[test]
    fn kappa_bounds_and_scale_invariance(
        spec in closed_specs(),
        n in 2u64..100,
        factor in 0.1f64..10.0,
    ) {
        let k = kappa(&spec, 1, n, Preference::Auto, None).unwrap().kappa;
        prop_assert!(k <= 1.0);
        let scaled = spec.scaled_by(factor).unwrap();
        let ks = kappa(&scaled, 1, n, Preference::Auto, None).unwrap().kappa;
        prop_assert!((k - ks).abs() < 1e-9, "{k} vs {ks}");
    }

    /// Shifting a spec moves its mean but not its kappa.
    #[test]
    fn kappa_translation_invariance(
        sigma in 0.2f64..3.0,
        shift in -5.0f64..5.0,
        n in 2u64..50,
    ) {
        let spec = DistributionSpec::Gaussian { mu: 0.0, sigma };
        let moved = spec.shifted_by(shift).unwrap();
        let a = kappa(&spec, 1, n, Preference::Auto, None).unwrap().kappa;
        let b = kappa(&moved, 1, n, Preference::Auto, None).unwrap().kappa;
        prop_assert_eq!(a, b);
    }

    /// Characteristic function basics: phi(0) = 1, |phi| <= 1, conjugate
    /// symmetry.
    #[test]
    fn cf_basics(spec in closed_specs(), t in -50.0f64..50.0) {
        let at_zero = spec.cf(0.0).unwrap();
        prop_assert!((at_zero.re - 1.0).abs() < 1e-12 && at_zero.im.abs() < 1e-12);
        let plus = spec.cf(t).unwrap();
        let minus = spec.cf(-t).unwrap();
        prop_assert!(plus.norm() <= 1.0 + 1e-12);
        prop_assert!((plus.re - minus.re).abs() < 1e-12);
        prop_assert!((plus.im + minus.im).abs() < 1e-12);
    }

    /// The summed density is symmetric, nonnegative, and decreasing away
    /// from the center.
    #[test]
    fn cubic_sum_density_shape(n in 1u64..12, y in 0.0f64..40.0) {
        let here = cubic_sum_pdf(y, n).unwrap();
        let mirrored = cubic_sum_pdf(-y, n).unwrap();
        prop_assert!(here >= 0.0);
        prop_assert!((here - mirrored).abs() <= 1e-12 * here.max(1e-300));
        let farther = cubic_sum_pdf(y + 0.5, n).unwrap();
        prop_assert!(farther <= here * (1.0 + 1e-9));
    }

    /// Deterministic sampling: the same (seed, stream) reproduces draws,
    /// different streams decorrelate them.
    #[test]
    fn sampling_is_reproducible(seed in 0u64..1000, stream in 0u64..8) {
        let spec = DistributionSpec::Lognormal { mu: 0.0, sigma: 1.0 };
        let a = spec.sample(32, seed, stream).unwrap();
        let b = spec.sample(32, seed, stream).unwrap();
        prop_assert_eq!(&a, &b);
        let c = spec.sample(32, seed, stream + 1).unwrap();
        prop_assert!(a != c);
    }

    /// Stable deviations follow the exact n^(1/alpha) scaling.
    #[test]
    fn stable_scaling(alpha_tilde in 1.05f64..2.0, n in 2u64..500) {
        let spec = DistributionSpec::Stable { alpha_tilde, beta: 0.0, mu: 0.0, sigma: 1.0 };
        let m1 = closed_mad(&spec, 1).unwrap();
        let mn = closed_mad(&spec, n).unwrap();
        let expected = (n as f64).powf(1.0 / alpha_tilde) * m1;
        prop_assert!((mn - expected).abs() <= 1e-10 * expected);
    }

    /// The Pearson coefficients reproduce the first four cumulants of the
    /// target through the moment recursion (checked via the fitted mean and
    /// the recursion residual at k = 1).
    #[test]
    fn pearson_fit_matches_cumulants(
        sigma in 0.05f64..0.3,
        n in 1u64..20,
    ) {
        let fit = pearson_fit(0.0, sigma, n).unwrap();
        let c = lognormal_cumulants(0.0, sigma, n).unwrap();
        prop_assert!((fit.m - c.k1).abs() <= 1e-8 * c.k1.abs());
        // Recursion at k = 1: mu2 (1 - 3 b2) = b0 + (2 b1 - a0) mu1, in
        // raw moments.
        let mu1 = c.k1;
        let mu2 = c.k2 + c.k1 * c.k1;
        let lhs = mu2 * (1.0 - 3.0 * fit.b2);
        let rhs = fit.b0 + (2.0 * fit.b1 - fit.a0) * mu1;
        prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs().max(1.0), "{lhs} vs {rhs}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Closed-form and quadrature routes agree on the same kappa.
    #[test]
    fn method_agreement(n in 2u64..40, scale in 0.5f64..3.0) {
        let spec = DistributionSpec::StudentT { alpha: 3.0, scale };
        let closed = kappa(&spec, 1, n, Preference::ClosedForm, None).unwrap().kappa;
        let by_cf = kappa(&spec, 1, n, Preference::Cf, None).unwrap().kappa;
        prop_assert!((closed - by_cf).abs() < 1e-6, "{closed} vs {by_cf}");
        prop_assert!((closed - cubic_kappa(n).unwrap()).abs() < 1e-10);
    }

    /// The quadrature deviation matches the closed form across families.
    #[test]
    fn cf_route_matches_closed(n in 1u64..30, sigma in 0.5f64..2.0) {
        let spec = DistributionSpec::Gaussian { mu: 0.0, sigma };
        let quad = QuadratureConfig::default();
        let closed = closed_mad(&spec, n).unwrap();
        let by_cf = mad_from_cf(&spec, n, &quad).unwrap().value;
        prop_assert!((closed - by_cf).abs() <= 1e-8 * closed);
    }

    /// The exact matching size never exceeds the approximations built on
    /// early kappa values, and the planner's answer is minimal.
    #[test]
    fn equivalence_ordering_and_planner_minimality(
        n_g in 4u64..60,
        lambda in 0.5f64..2.0,
    ) {
        let spec = DistributionSpec::Exponential { lambda };
        let exact =
            equivalent_sample_size(&spec, n_g, EquivalenceMethod::ExactMadMatch, None).unwrap();
        let by_k1n =
            equivalent_sample_size(&spec, n_g, EquivalenceMethod::ApproxKappa1N, None).unwrap();
        let by_k1 =
            equivalent_sample_size(&spec, n_g, EquivalenceMethod::ApproxKappa1, None).unwrap();
        prop_assert!(exact.n_nu <= by_k1n.n_nu.ceil());
        prop_assert!(by_k1n.n_nu <= by_k1.n_nu * (1.0 + 1e-12));
        prop_assert!(exact.n_nu >= n_g as f64);

        let target = (n_g as f64).powf(-0.5);
        match mc_run_planner(&spec, target, None).unwrap() {
            RunPlan::Runs(n) => {
                let m1 = closed_mad(&spec, 1).unwrap();
                let risk = |n: u64| closed_mad(&spec, n).unwrap() / (n as f64 * m1);
                prop_assert!(risk(n) <= target);
                prop_assert!(n == 1 || risk(n - 1) > target);
            }
            RunPlan::Unbounded => prop_assert!(false, "spec has finite kappa"),
        }
    }
}
