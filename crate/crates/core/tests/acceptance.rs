//! Acceptance gate: one numbered criterion per test, one PASS/FAIL line
//! printed per criterion. Expected values are the published reference
//! digits for the two-family kappa table; tolerances are stated inline.
//! Run with --nocapture to see every line.

use kappa_core::analytic::{
    cubic_kappa, cubic_sum_pdf, exponential_kappa_n, kappa1_exponential, kappa1_lognormal_approx,
    kappa1_pareto, kappa1_student, lognormal_cumulants, lognormal_kappa_star, mean_mixture_kappa1,
    mixture_kurtosis,
};
use kappa_core::pearson::{pearson_fit, pearson_kappa1};
use kappa_core::quad::{integrate_to_inf, QuadratureConfig};
use kappa_core::{
    closed_mad, equivalent_sample_size, kappa, kappa_grid, DistributionSpec, EquivalenceMethod,
    McConfig, Preference,
};

const ALPHAS: [f64; 12] =
    [1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0, 3.25, 3.5, 3.75, 4.0];

// Expected kappa(1,2), kappa(1,30), kappa(1,100) per tail exponent.
const PARETO_K1: [f64; 12] =
    [0.829, 0.724, 0.65, 0.594, 0.551, 0.517, 0.488, 0.465, 0.445, 0.428, 0.413, 0.4];
const PARETO_K30: [f64; 12] =
    [0.787, 0.65, 0.556, 0.484, 0.431, 0.386, 0.356, 0.3246, 0.305, 0.284, 0.263, 0.2532];
const PARETO_K100: [f64; 12] =
    [0.771, 0.631, 0.53, 0.449, 0.388, 0.341, 0.307, 0.281, 0.258, 0.235, 0.222, 0.211];
const STUDENT_K1: [f64; 12] =
    [0.792, 0.647, 0.543, 0.465, 0.406, 0.359, 0.321, 0.29, 0.265, 0.243, 0.225, 0.209];
const STUDENT_K30: [f64; 12] =
    [0.765, 0.609, 0.483, 0.387, 0.316, 0.256, 0.224, 0.191, 0.167, 0.149, 0.13, 0.126];
const STUDENT_K100: [f64; 12] =
    [0.756, 0.587, 0.451, 0.352, 0.282, 0.227, 0.189, 0.159, 0.138, 0.121, 0.10, 0.093];

fn report(criterion: &str, ok: bool, detail: &str) {
    println!("criterion {criterion}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {criterion}: {detail}");
}

fn mc(samples: u64) -> McConfig {
    McConfig { samples, batches: 64, seed: 1, antithetic: false }
}

fn pareto(alpha: f64) -> DistributionSpec {
    DistributionSpec::Pareto { alpha, xmin: 1.0 }
}

fn student(alpha: f64) -> DistributionSpec {
    DistributionSpec::StudentT { alpha, scale: 1.0 }
}

#[test]
fn criterion_1_pair_kappa_closed_forms() {
    let quad = QuadratureConfig::default();
    let mut worst: (f64, String) = (0.0, String::new());
    let mut failures = Vec::new();
    for (i, &alpha) in ALPHAS.iter().enumerate() {
        for (label, got, expected) in [
            ("student", kappa1_student(alpha).unwrap(), STUDENT_K1[i]),
            ("pareto", kappa1_pareto(alpha, &quad).unwrap(), PARETO_K1[i]),
        ] {
            let err = (got - expected).abs();
            if err > worst.0 {
                worst = (err, format!("{label} alpha={alpha}: {got:.4} vs {expected}"));
            }
            if err > 0.005 {
                failures.push(format!("{label} alpha={alpha}: {got:.4} vs {expected}"));
            }
        }
    }
    report(
        "1 (kappa(1,2) closed forms, 24 values, tol 0.005)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("largest gap {:.2e} at {}", worst.0, worst.1)
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_2_tabled_kappa_columns_by_sampling() {
    let config = mc(10_000_000);
    let mut failures = Vec::new();
    let mut worst: (f64, String) = (0.0, String::new());
    for (i, &alpha) in ALPHAS.iter().enumerate() {
        for (label, spec, e30, e100) in [
            ("pareto", pareto(alpha), PARETO_K30[i], PARETO_K100[i]),
            ("student", student(alpha), STUDENT_K30[i], STUDENT_K100[i]),
        ] {
            let rows = kappa_grid(&spec, 1, &[30, 100], &config).unwrap();
            let tol = if label == "pareto" && alpha <= 1.5 { 0.03 } else { 0.02 };
            for (row, expected, n) in [(&rows[0], e30, 30), (&rows[1], e100, 100)] {
                let err = (row.kappa - expected).abs();
                let tag = format!(
                    "{label} alpha={alpha} n={n}: {:.4} (se {:.4}) vs {expected}",
                    row.kappa, row.std_error
                );
                if err > worst.0 {
                    worst = (err, tag.clone());
                }
                if err > tol {
                    failures.push(tag);
                }
            }
        }
    }
    report(
        "2 (kappa(1,30) and kappa(1,100) by MC, 48 values, 1e7 replicates, seed 1)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("largest gap {:.3} at {}", worst.0, worst.1)
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_3_cross_formula_identities() {
    let mut failures = Vec::new();
    let a = cubic_kappa(2).unwrap();
    let b = kappa1_student(3.0).unwrap();
    if (a - b).abs() > 1e-10 {
        failures.push(format!("cubic pair {a} vs student pair {b}"));
    }
    let a = exponential_kappa_n(2).unwrap();
    let b = kappa1_exponential();
    if (a - b).abs() > 1e-12 {
        failures.push(format!("exponential pair {a} vs {b}"));
    }
    for sigma in [0.1, 1.0, 5.0] {
        let a = lognormal_kappa_star(sigma, 2).unwrap();
        let b = kappa1_lognormal_approx(sigma).unwrap();
        if (a - b).abs() > 1e-12 {
            failures.push(format!("lognormal sigma={sigma}: {a} vs {b}"));
        }
    }
    report(
        "3 (cross-formula identities at n=2)",
        failures.is_empty(),
        &if failures.is_empty() { "all three identities hold".into() } else { failures.join("; ") },
    );
}

#[test]
fn criterion_4_matching_sample_sizes() {
    let mut failures = Vec::new();

    let r = equivalent_sample_size(&student(3.0), 30, EquivalenceMethod::ApproxKappa1, None)
        .unwrap();
    if !(r.n_nu >= 115.0 && r.n_nu <= 125.0) {
        failures.push(format!("student alpha=3 approximate match {:.1} outside [115, 125]", r.n_nu));
    }

    let r = equivalent_sample_size(
        &pareto(3.0),
        30,
        EquivalenceMethod::ExactMadMatch,
        Some(&mc(1_000_000)),
    )
    .unwrap();
    if !(r.n_nu >= 489.0 && r.n_nu <= 597.0) {
        failures.push(format!(
            "pareto alpha=3 deviation-matched size {} outside [489, 597]: the risk ratio \
             M(n)/(n M(1)) falls below 30^(-1/2) near n=62, so the matching threshold \
             sits an order of magnitude under the expected range",
            r.n_nu
        ));
    }

    let r = equivalent_sample_size(&pareto(1.14), 30, EquivalenceMethod::ApproxKappa1, None)
        .unwrap();
    if !(r.n_nu > 1e9) {
        failures.push(format!("pareto alpha=1.14 approximate match {} not above 1e9", r.n_nu));
    }

    report(
        "4 (matching sample sizes vs a Gaussian of 30)",
        failures.is_empty(),
        &if failures.is_empty() { "all three claims hold".into() } else { failures.join("; ") },
    );
}

#[test]
fn criterion_5_scaled_kappa_limits() {
    let mut failures = Vec::new();

    let grid = [100u64, 10_000, 1_000_000, 100_000_000];
    let cubic: Vec<f64> =
        grid.iter().map(|&n| (n as f64).ln() * cubic_kappa(n).unwrap()).collect();
    if !cubic.windows(2).all(|w| w[0] < w[1]) {
        failures.push(format!("cubic scaled sequence not monotone: {cubic:?}"));
    }
    let target = std::f64::consts::PI.powi(2) / 4.0;
    let last = cubic[3];
    if !((last - target).abs() <= 0.15 * target) {
        failures.push(format!(
            "cubic log(n)*kappa at n=1e8 is {last:.4}, outside 15% of {target:.4}; the \
             sequence {cubic:?} climbs toward 2 ln(pi/2) = {:.4} instead",
            2.0 * (std::f64::consts::PI / 2.0).ln()
        ));
    }

    let grid = [100u64, 10_000, 1_000_000];
    let expo: Vec<f64> =
        grid.iter().map(|&n| (n as f64).ln() * exponential_kappa_n(n).unwrap()).collect();
    let target = 4.0 - 2.0 * (2.0 * std::f64::consts::PI).ln();
    if !expo.windows(2).all(|w| w[0] < w[1]) {
        failures.push(format!("exponential scaled sequence not monotone: {expo:?}"));
    }
    if !((expo[2] - target).abs() <= 0.20 * target) {
        failures.push(format!(
            "exponential log(n)*kappa at n=1e6 is {:.4}, outside 20% of {target:.4}",
            expo[2]
        ));
    }

    report(
        "5 (scaled large-n limits)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("exponential {:.4} -> {target:.4}; cubic sequence monotone", expo[2])
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_6_stable_basin_flatness() {
    let mut failures = Vec::new();
    let mut worst: (f64, String) = (0.0, String::new());
    for alpha_tilde in [1.25, 1.5, 1.75, 2.0] {
        let samples = match alpha_tilde {
            1.25 => 8_000_000,
            2.0 => 1_000_000,
            _ => 2_000_000,
        };
        for beta in [0.0, 0.5, 1.0] {
            let spec = DistributionSpec::Stable { alpha_tilde, beta, mu: 0.0, sigma: 1.0 };
            let rows = kappa_grid(&spec, 1, &[2, 10, 100], &mc(samples)).unwrap();
            for row in &rows {
                let expected = 2.0 - alpha_tilde;
                let err = (row.kappa - expected).abs();
                let tag = format!(
                    "alpha_tilde={alpha_tilde} beta={beta} n={}: {:.4} (se {:.4}) vs {expected}",
                    row.n, row.kappa, row.std_error
                );
                if err > worst.0 {
                    worst = (err, tag.clone());
                }
                if err > 0.03 {
                    failures.push(tag);
                }
            }
        }
    }
    report(
        "6 (stable basin: kappa flat at 2 - alpha_tilde for every beta)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!("36 values within 0.03; largest gap {:.3} at {}", worst.0, worst.1)
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_7_lognormal_regimes() {
    let mut failures = Vec::new();

    let thin = DistributionSpec::Lognormal { mu: 0.0, sigma: 0.1 };
    let k_thin = kappa(&thin, 1, 2, Preference::Auto, Some(&mc(1_000_000))).unwrap();
    if !(k_thin.kappa < 0.05) {
        failures.push(format!("sigma=0.1 pair kappa {:.4} not below 0.05", k_thin.kappa));
    }

    let star5 = lognormal_kappa_star(5.0, 2).unwrap();
    if !(star5 > 0.99) {
        failures.push(format!("sigma=5 kappa* {star5:.5} not above 0.99"));
    }

    let mid = DistributionSpec::Lognormal { mu: 0.0, sigma: 2.0 };
    let k_mid = kappa(&mid, 1, 2, Preference::Auto, Some(&mc(4_000_000))).unwrap();
    let fitted = pearson_kappa1(0.0, 2.0).unwrap();
    let star2 = lognormal_kappa_star(2.0, 2).unwrap();
    let (lo, hi) = (fitted.min(star2), fitted.max(star2));
    if !(k_mid.kappa >= lo && k_mid.kappa <= hi) {
        failures.push(format!(
            "sigma=2 sampled kappa {:.4} (se {:.4}) outside [{lo:.4}, {hi:.4}] \
             (four-moment fit {fitted:.4}, kappa* {star2:.4})",
            k_mid.kappa, k_mid.std_error
        ));
    }

    report(
        "7 (lognormal regimes: thin, saturated, sandwiched middle)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!(
                "sigma=0.1 kappa {:.4}; sigma=5 kappa* {star5:.5}; sigma=2 kappa {:.4} in \
                 [{lo:.4}, {hi:.4}]",
                k_thin.kappa, k_mid.kappa
            )
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_8_negative_kappa_mixtures() {
    let mut failures = Vec::new();

    let closed = mean_mixture_kappa1(10.0, 1.0).unwrap();
    if !(closed < 0.0) {
        failures.push(format!("separation 10 pair kappa {closed:.4} not negative"));
    }

    let spec = DistributionSpec::GaussianMeanMix {
        mu1: 5.0,
        mu2: -5.0,
        sigma1: 1.0,
        sigma2: 1.0,
        p: 0.5,
    };
    let sampled = kappa(&spec, 1, 2, Preference::Mc, Some(&mc(1_000_000))).unwrap();
    if !(sampled.kappa + 4.0 * sampled.std_error < 0.0) {
        failures.push(format!(
            "sampled pair kappa {:.4} (se {:.4}) does not confirm the negative sign at 4 SE",
            sampled.kappa, sampled.std_error
        ));
    }

    let d = 6f64.powf(0.25) * (2.0f64.powi(2) - 1.0).sqrt();
    let boundary = mixture_kurtosis(d, 0.0, 2.0, 1.0);
    if !((boundary - 3.0).abs() < 1e-10) {
        failures.push(format!("boundary kurtosis {boundary} not 3 within 1e-10"));
    }

    report(
        "8 (negative kappa for separated mean mixtures)",
        failures.is_empty(),
        &if failures.is_empty() {
            format!(
                "closed {closed:.4}; sampled {:.4} (se {:.4}); boundary kurtosis restored to 3",
                sampled.kappa, sampled.std_error
            )
        } else {
            failures.join("; ")
        },
    );
}

#[test]
fn criterion_9_invariant_sweep() {
    let mut failures = Vec::new();
    let specs = [
        DistributionSpec::Gaussian { mu: 0.5, sigma: 1.3 },
        DistributionSpec::StudentT { alpha: 3.0, scale: 2.0 },
        DistributionSpec::Exponential { lambda: 0.7 },
        DistributionSpec::Gamma { shape: 2.5, rate: 1.1 },
    ];
    let ns = [2u64, 3, 5, 8, 13, 21, 40, 80];

    for spec in &specs {
        let m1 = closed_mad(spec, 1).unwrap();
        let mut prev = m1;
        for &n in &ns {
            let m = closed_mad(spec, n).unwrap();
            if !(m > prev) {
                failures.push(format!("{spec:?}: M not increasing at n={n}"));
            }
            if !(m <= n as f64 * m1 * (1.0 + 1e-12)) {
                failures.push(format!("{spec:?}: M({n}) above n*M(1)"));
            }
            prev = m;

            let k = kappa(spec, 1, n, Preference::Auto, None).unwrap().kappa;
            if !(k <= 1.0) {
                failures.push(format!("{spec:?}: kappa(1,{n}) = {k} above 1"));
            }
            let scaled = spec.scaled_by(3.7).unwrap();
            let ks = kappa(&scaled, 1, n, Preference::Auto, None).unwrap().kappa;
            if !((k - ks).abs() < 1e-9) {
                failures.push(format!("{spec:?}: kappa not scale invariant at n={n}"));
            }
        }
    }

    let moved = DistributionSpec::Gaussian { mu: 40.0, sigma: 1.3 };
    let a = kappa(&specs[0], 1, 7, Preference::Auto, None).unwrap().kappa;
    let b = kappa(&moved, 1, 7, Preference::Auto, None).unwrap().kappa;
    if a != b {
        failures.push("kappa not translation invariant".into());
    }

    let quad = QuadratureConfig::default();
    for n in [1u64, 2, 5] {
        let half = integrate_to_inf(|y| cubic_sum_pdf(y, n).unwrap(), 0.0, &quad).unwrap().value;
        if !((2.0 * half - 1.0).abs() < 1e-6) {
            failures.push(format!("summed density mass {} at n={n}", 2.0 * half));
        }
    }
    for y in [0.3, 1.7, 9.0] {
        let a = cubic_sum_pdf(y, 3).unwrap();
        let b = cubic_sum_pdf(-y, 3).unwrap();
        if (a - b).abs() > 1e-12 * a {
            failures.push(format!("summed density asymmetric at {y}"));
        }
    }

    let fit = pearson_fit(0.0, 0.2, 10).unwrap();
    let c = lognormal_cumulants(0.0, 0.2, 10).unwrap();
    let mu2 = c.k2 + c.k1 * c.k1;
    let lhs = mu2 * (1.0 - 3.0 * fit.b2);
    let rhs = fit.b0 + (2.0 * fit.b1 - fit.a0) * c.k1;
    if !((fit.m - c.k1).abs() < 1e-8 * c.k1 && (lhs - rhs).abs() < 1e-8 * lhs.abs()) {
        failures.push("four-moment fit does not satisfy the moment recursion".into());
    }

    let spec = student(3.0);
    let by_closed = kappa(&spec, 1, 7, Preference::ClosedForm, None).unwrap().kappa;
    let by_cf = kappa(&spec, 1, 7, Preference::Cf, None).unwrap().kappa;
    let by_mc = kappa(&spec, 1, 7, Preference::Mc, Some(&mc(256_000))).unwrap();
    if !((by_closed - by_cf).abs() < 1e-6) {
        failures.push(format!("closed {by_closed} vs quadrature {by_cf}"));
    }
    if !((by_closed - by_mc.kappa).abs() < (5.0 * by_mc.std_error).max(0.02)) {
        failures.push(format!(
            "closed {by_closed} vs sampled {} (se {})",
            by_mc.kappa, by_mc.std_error
        ));
    }

    report(
        "9 (invariant sweep: growth, bounds, invariances, density shape, fit recursion, \
         method agreement)",
        failures.is_empty(),
        &if failures.is_empty() { "all invariants hold".into() } else { failures.join("; ") },
    );
}
