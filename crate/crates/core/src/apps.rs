//! What slow convergence costs in practice: the sample size needed to match
//! a Gaussian benchmark, diversification curves for equal-weight portfolios
//! of i.i.d. positions, and minimal run counts for Monte Carlo studies.
//!
//! Everything here reduces to the risk ratio M(n)/(n M(1)) = n^(1/(2-kappa(1,n)) - 1),
//! the deviation of the n-average relative to a single draw. The ratio is
//! nonincreasing in n (the running average is a reverse martingale), which is
//! what makes the threshold searches below well posed.

use serde::{Deserialize, Serialize};

use crate::analytic::kappa1_pareto;
use crate::dist::DistributionSpec;
use crate::error::{Error, Result};
use crate::kappa::{constant_kappa, kappa, kappa_from_ratio, pair_from_grid, KappaResult};
use crate::mad::{closed_mad, mad_from_cf, McConfig, Method, Preference};
use crate::mc;
use crate::quad::QuadratureConfig;

/// How a matching sample size was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivalenceMethod {
    /// n_g^(1/(1 - kappa(1,2))): one-number approximation.
    ApproxKappa1,
    /// Same formula with kappa(1, n_g), which tracks the benchmark size.
    ApproxKappa1N,
    /// Smallest n whose risk ratio reaches the Gaussian benchmark's, with
    /// the spec scaled to the same M(1).
    ExactMadMatch,
}

/// Sample size under `spec` that matches a Gaussian benchmark of size `n_g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceResult {
    pub n_g: u64,
    /// Required size; infinite when the kappa estimate reaches 1 or the
    /// requirement exceeds the searchable range (finite mean, but the law of
    /// large numbers operates too slowly to match the benchmark).
    pub n_nu: f64,
    pub kappa_used: f64,
    pub method: EquivalenceMethod,
    pub spec: DistributionSpec,
}

impl EquivalenceResult {
    pub fn is_unbounded(&self) -> bool {
        self.n_nu.is_infinite()
    }
}

/// Planner outcome: a concrete run count, or none achievable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunPlan {
    Runs(u64),
    Unbounded,
}

impl RunPlan {
    pub fn runs(&self) -> Option<u64> {
        match *self {
            RunPlan::Runs(n) => Some(n),
            RunPlan::Unbounded => None,
        }
    }
}

/// Outcome of a risk-ratio threshold search, with provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub plan: RunPlan,
    /// kappa(1, n) at the returned count (NaN when unbounded with no
    /// usable estimate).
    pub kappa_at_n: f64,
    pub method: Method,
}

/// One point of a diversification curve, with the Gaussian baseline for the
/// same n alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PortfolioPoint {
    pub n: u64,
    pub risk_ratio: f64,
    /// 0 for exact methods.
    pub std_error: f64,
    /// n^(-1/2), the thin-tailed baseline.
    pub gaussian: f64,
    pub method: Method,
}

/// One row of a convergence trace: kappa(1, n) with the basin asymptote.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub spec: DistributionSpec,
    pub n: u64,
    pub kappa: f64,
    pub std_error: f64,
    /// 2 - alpha_tilde of the attracting stable law.
    pub asymptote: f64,
    pub method: Method,
}

/// How M(n) gets evaluated for a spec, in order of preference. `Scaling`
/// covers the families where M(n) = n^(1/alpha_tilde) M(1) exactly, so the
/// risk ratio is the stored power of n.
enum Route {
    Scaling(f64),
    Closed,
    Cf,
    Mc,
}

fn resolve_route(spec: &DistributionSpec) -> Route {
    if let Some(k) = constant_kappa(spec) {
        return Route::Scaling(1.0 / (2.0 - k) - 1.0);
    }
    match closed_mad(spec, 2) {
        Ok(_) => Route::Closed,
        _ if spec.is_symmetric() && spec.cf(1.0).is_ok() => Route::Cf,
        _ => Route::Mc,
    }
}

/// Beyond these, the threshold search reports the requirement as unbounded
/// (exact routes) or out of range (sampling route).
const SCALING_LIMIT: f64 = 4.0e18;
const EXACT_LIMIT: u64 = 1 << 50;
const CF_LIMIT: u64 = 1 << 30;
const MC_STAGES: [u64; 3] = [64, 512, 4096];

fn exact_mad(spec: &DistributionSpec, n: u64, route: &Route) -> Result<f64> {
    match route {
        Route::Closed => closed_mad(spec, n),
        Route::Cf => {
            let quad = QuadratureConfig::default();
            Ok(mad_from_cf(spec, n, &quad)?.value)
        }
        _ => unreachable!("exact evaluation on a sampling route"),
    }
}

/// Risk ratio and its standard error at grid index g, from per-batch ratios
/// of the common-random-number pass.
fn grid_ratio(grid: &mc::SumMadGrid, g: usize) -> (f64, f64) {
    let n = grid.ns[g] as f64;
    let ratio = grid.value(g) / (n * grid.value(0));
    let per_batch: Vec<f64> = grid.batch_means[g]
        .iter()
        .zip(&grid.batch_means[0])
        .map(|(num, den)| num / (n * den))
        .collect();
    (ratio, mc::spread_std_error(&per_batch, grid.heavy))
}

/// Smallest n with risk_ratio(n) <= target, together with kappa(1, n) along
/// the way. The search brackets geometrically, then narrows with the
/// log-log interpolant (piecewise-constant local kappa) probing the
/// bracketing integers.
fn threshold_search(
    spec: &DistributionSpec,
    target: f64,
    mc_config: Option<&McConfig>,
) -> Result<ThresholdResult> {
    match resolve_route(spec) {
        Route::Scaling(e) => {
            let k = 2.0 - 1.0 / (1.0 + e);
            let done = |plan| ThresholdResult { plan, kappa_at_n: k, method: Method::ClosedForm };
            if e >= 0.0 {
                return Ok(done(RunPlan::Unbounded));
            }
            let crossing = target.powf(1.0 / e);
            if !(crossing < SCALING_LIMIT) {
                return Ok(done(RunPlan::Unbounded));
            }
            let risk = |n: u64| (n as f64).powf(e);
            let mut n = (crossing.ceil() as u64).max(1);
            while n > 1 && risk(n - 1) <= target {
                n -= 1;
            }
            while risk(n) > target {
                n += 1;
            }
            Ok(done(RunPlan::Runs(n)))
        }
        route @ (Route::Closed | Route::Cf) => {
            let method = match route {
                Route::Closed => Method::ClosedForm,
                _ => Method::CfQuadrature,
            };
            let limit = if matches!(route, Route::Closed) { EXACT_LIMIT } else { CF_LIMIT };
            let m1 = exact_mad(spec, 1, &route)?;
            let risk = |n: u64| -> Result<f64> {
                Ok(exact_mad(spec, n, &route)? / (n as f64 * m1))
            };

            let (mut lo, mut r_lo) = (1u64, 1.0f64);
            let mut cand = 2u64;
            let (mut hi, mut r_hi) = loop {
                let r = risk(cand)?;
                if r <= target {
                    break (cand, r);
                }
                if cand >= limit {
                    return Ok(ThresholdResult {
                        plan: RunPlan::Unbounded,
                        kappa_at_n: kappa_from_ratio(1, cand, 1.0, r * cand as f64),
                        method,
                    });
                }
                lo = cand;
                r_lo = r;
                cand = cand.saturating_mul(2).min(limit);
            };

            while hi - lo > 1 {
                let t = (target.ln() - r_lo.ln()) / (r_hi.ln() - r_lo.ln());
                let guess = ((lo as f64).ln() + t * ((hi as f64).ln() - (lo as f64).ln())).exp();
                let probe = (guess.round() as u64).clamp(lo + 1, hi - 1);
                let r = risk(probe)?;
                if r <= target {
                    hi = probe;
                    r_hi = r;
                } else {
                    lo = probe;
                    r_lo = r;
                }
            }
            Ok(ThresholdResult {
                plan: RunPlan::Runs(hi),
                kappa_at_n: kappa_from_ratio(1, hi, m1, r_hi * hi as f64 * m1),
                method,
            })
        }
        Route::Mc => {
            let default_config = McConfig::default();
            let config = mc_config.unwrap_or(&default_config);
            mc_threshold_search(spec, target, config)
        }
    }
}

/// Sampling version of the threshold search. Acceptance is conservative:
/// a point passes only when its upper confidence bound (two standard
/// errors) clears the target, so noise postpones rather than fabricates a
/// crossing.
fn mc_threshold_search(
    spec: &DistributionSpec,
    target: f64,
    config: &McConfig,
) -> Result<ThresholdResult> {
    let mut bracket = None;
    let mut last_ratios: Vec<f64> = Vec::new();
    for cap in MC_STAGES {
        let mut ns = vec![1u64];
        while *ns.last().expect("nonempty") < cap {
            ns.push(ns.last().expect("nonempty") * 2);
        }
        let grid = mc::sum_mad_grid(spec, &ns, config)?;
        last_ratios = (1..ns.len()).map(|g| grid_ratio(&grid, g).0).collect();
        if let Some(g) = (1..ns.len()).find(|&g| {
            let (r, se) = grid_ratio(&grid, g);
            r + 2.0 * se <= target
        }) {
            bracket = Some((ns[g - 1], ns[g]));
            break;
        }
    }

    let (lo, hi) = match bracket {
        Some(pair) => pair,
        None => {
            // Flat or rising tail of the ladder: kappa is pinned near 1 and
            // no finite n reaches the target.
            let tail_flat = last_ratios
                .last()
                .zip(last_ratios.get(last_ratios.len().saturating_sub(3)))
                .is_some_and(|(last, earlier)| last >= earlier);
            if tail_flat {
                return Ok(ThresholdResult {
                    plan: RunPlan::Unbounded,
                    kappa_at_n: f64::NAN,
                    method: Method::MonteCarlo,
                });
            }
            return Err(Error::Unsupported(format!(
                "the crossing lies beyond {} summands; use an approximation method",
                MC_STAGES[MC_STAGES.len() - 1]
            )));
        }
    };

    let ns: Vec<u64> = std::iter::once(1).chain(lo + 1..=hi).collect();
    let grid = mc::sum_mad_grid(spec, &ns, config)?;
    let found = (1..ns.len())
        .find(|&g| {
            let (r, se) = grid_ratio(&grid, g);
            r + 2.0 * se <= target
        })
        .unwrap_or(ns.len() - 1);
    let pair = pair_from_grid(&grid, 0, found, config)?;
    Ok(ThresholdResult {
        plan: RunPlan::Runs(ns[found]),
        kappa_at_n: pair.kappa,
        method: Method::MonteCarlo,
    })
}

/// kappa(1, n) with closed forms preferred: the Pareto pair value has its
/// own quadrature-backed expression, everything else goes through the
/// standard resolution.
fn reference_kappa(
    spec: &DistributionSpec,
    n: u64,
    mc_config: Option<&McConfig>,
) -> Result<KappaResult> {
    if let DistributionSpec::Pareto { alpha, .. } = *spec {
        if n == 2 {
            let quad = QuadratureConfig::default();
            let k = kappa1_pareto(alpha, &quad)?;
            return Ok(KappaResult::exact(1, 2, k, Method::ClosedForm));
        }
    }
    kappa(spec, 1, n, Preference::Auto, mc_config)
}

/// Sample size under `spec` that achieves the same mean absolute deviation
/// of the average as a Gaussian sample of `n_g`, by the requested method.
///
/// The approximate methods evaluate n_g^(1/(1-kappa)) with kappa(1,2) or
/// kappa(1,n_g). The exact method scales the spec to the Gaussian's M(1)
/// and finds the smallest n with M(n)/n at or below the benchmark's, which
/// is the threshold search on the risk ratio at target n_g^(-1/2).
pub fn equivalent_sample_size(
    spec: &DistributionSpec,
    n_g: u64,
    method: EquivalenceMethod,
    mc_config: Option<&McConfig>,
) -> Result<EquivalenceResult> {
    spec.validate()?;
    if n_g < 2 {
        return Err(Error::InvalidParameter(format!(
            "the Gaussian benchmark needs at least 2 observations, got {n_g}"
        )));
    }
    let (n_nu, kappa_used) = match method {
        EquivalenceMethod::ApproxKappa1 => {
            let k = reference_kappa(spec, 2, mc_config)?.kappa;
            (approx_size(n_g, k), k)
        }
        EquivalenceMethod::ApproxKappa1N => {
            let k = reference_kappa(spec, n_g, mc_config)?.kappa;
            (approx_size(n_g, k), k)
        }
        EquivalenceMethod::ExactMadMatch => {
            let target = (n_g as f64).powf(-0.5);
            let found = threshold_search(spec, target, mc_config)?;
            let n_nu = match found.plan {
                RunPlan::Runs(n) => n as f64,
                RunPlan::Unbounded => f64::INFINITY,
            };
            (n_nu, found.kappa_at_n)
        }
    };
    Ok(EquivalenceResult { n_g, n_nu, kappa_used, method, spec: *spec })
}

fn approx_size(n_g: u64, k: f64) -> f64 {
    if k >= 1.0 {
        f64::INFINITY
    } else {
        (n_g as f64).powf(1.0 / (1.0 - k))
    }
}

/// All three equivalence methods side by side.
pub fn equivalence_panel(
    spec: &DistributionSpec,
    n_g: u64,
    mc_config: Option<&McConfig>,
) -> Result<Vec<EquivalenceResult>> {
    [
        EquivalenceMethod::ApproxKappa1,
        EquivalenceMethod::ApproxKappa1N,
        EquivalenceMethod::ExactMadMatch,
    ]
    .iter()
    .map(|&m| equivalent_sample_size(spec, n_g, m, mc_config))
    .collect()
}

/// Risk of the equal-weight average of n i.i.d. positions relative to a
/// single position, for n = 1..=n_max. Positions are assumed independent;
/// correlation only compounds the effect.
pub fn portfolio_curve(
    spec: &DistributionSpec,
    n_max: u64,
    mc_config: Option<&McConfig>,
) -> Result<Vec<PortfolioPoint>> {
    spec.validate()?;
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "the curve needs at least 2 positions, got {n_max}"
        )));
    }
    let baseline = |n: u64| (n as f64).powf(-0.5);
    match resolve_route(spec) {
        Route::Scaling(e) => Ok((1..=n_max)
            .map(|n| PortfolioPoint {
                n,
                risk_ratio: (n as f64).powf(e),
                std_error: 0.0,
                gaussian: baseline(n),
                method: Method::ClosedForm,
            })
            .collect()),
        route @ (Route::Closed | Route::Cf) => {
            let method = match route {
                Route::Closed => Method::ClosedForm,
                _ => Method::CfQuadrature,
            };
            let m1 = exact_mad(spec, 1, &route)?;
            (1..=n_max)
                .map(|n| {
                    Ok(PortfolioPoint {
                        n,
                        risk_ratio: exact_mad(spec, n, &route)? / (n as f64 * m1),
                        std_error: 0.0,
                        gaussian: baseline(n),
                        method,
                    })
                })
                .collect()
        }
        Route::Mc => {
            let default_config = McConfig::default();
            let config = mc_config.unwrap_or(&default_config);
            let ns: Vec<u64> = (1..=n_max).collect();
            let grid = mc::sum_mad_grid(spec, &ns, config)?;
            Ok((0..ns.len())
                .map(|g| {
                    let (risk_ratio, std_error) = grid_ratio(&grid, g);
                    PortfolioPoint {
                        n: ns[g],
                        risk_ratio,
                        std_error: if g == 0 { 0.0 } else { std_error },
                        gaussian: baseline(ns[g]),
                        method: Method::MonteCarlo,
                    }
                })
                .collect())
        }
    }
}

/// Smallest number of runs n with risk_ratio(n) <= target_ratio, i.e. the
/// Monte Carlo budget that shrinks the average's deviation to the requested
/// fraction of a single draw's. Closed-form kappa where available; sampled
/// with a conservative upper-confidence acceptance otherwise.
pub fn mc_run_planner(
    spec: &DistributionSpec,
    target_ratio: f64,
    mc_config: Option<&McConfig>,
) -> Result<RunPlan> {
    Ok(risk_threshold(spec, target_ratio, mc_config)?.plan)
}

/// The planner with full provenance: the count, kappa at that count, and
/// which route produced both.
pub fn risk_threshold(
    spec: &DistributionSpec,
    target_ratio: f64,
    mc_config: Option<&McConfig>,
) -> Result<ThresholdResult> {
    spec.validate()?;
    if !(target_ratio > 0.0 && target_ratio < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "the target ratio must lie in (0, 1), got {target_ratio}"
        )));
    }
    threshold_search(spec, target_ratio, mc_config)
}

/// kappa(1, n) over `n_grid` for each spec, long-format, with the stable
/// basin asymptote 2 - alpha_tilde per spec.
pub fn convergence_trace(
    specs: &[DistributionSpec],
    n_grid: &[u64],
    mc_config: Option<&McConfig>,
) -> Result<Vec<TraceRow>> {
    if n_grid.is_empty() || n_grid[0] < 2 || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "the n grid must be ascending with every entry at least 2".into(),
        ));
    }
    let mut rows = Vec::with_capacity(specs.len() * n_grid.len());
    for spec in specs {
        spec.validate()?;
        let asymptote = 2.0 - spec.basin_index();
        match resolve_route(spec) {
            Route::Mc => {
                let default_config = McConfig::default();
                let config = mc_config.unwrap_or(&default_config);
                let ns: Vec<u64> = std::iter::once(1).chain(n_grid.iter().copied()).collect();
                let grid = mc::sum_mad_grid(spec, &ns, config)?;
                for g in 1..ns.len() {
                    let r = pair_from_grid(&grid, 0, g, config)?;
                    rows.push(TraceRow {
                        spec: *spec,
                        n: ns[g],
                        kappa: r.kappa,
                        std_error: r.std_error,
                        asymptote,
                        method: r.method,
                    });
                }
            }
            _ => {
                for &n in n_grid {
                    let r = kappa(spec, 1, n, Preference::Auto, mc_config)?;
                    rows.push(TraceRow {
                        spec: *spec,
                        n,
                        kappa: r.kappa,
                        std_error: r.std_error,
                        asymptote,
                        method: r.method,
                    });
                }
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gaussian() -> DistributionSpec {
        DistributionSpec::Gaussian { mu: 0.0, sigma: 1.0 }
    }

    fn student3() -> DistributionSpec {
        DistributionSpec::StudentT { alpha: 3.0, scale: 1.0 }
    }

    #[test]
    fn gaussian_equivalence_is_trivial() {
        for method in [
            EquivalenceMethod::ApproxKappa1,
            EquivalenceMethod::ApproxKappa1N,
            EquivalenceMethod::ExactMadMatch,
        ] {
            let r = equivalent_sample_size(&gaussian(), 30, method, None).unwrap();
            assert_eq!(r.n_nu, 30.0, "{method:?}");
            assert_eq!(r.kappa_used, 0.0);
            assert!(!r.is_unbounded());
        }
    }

    #[test]
    fn student3_equivalence_methods_and_ordering() {
        let by_k1 =
            equivalent_sample_size(&student3(), 30, EquivalenceMethod::ApproxKappa1, None).unwrap();
        assert!(by_k1.n_nu > 115.0 && by_k1.n_nu < 125.0, "{}", by_k1.n_nu);
        assert_relative_eq!(by_k1.kappa_used, 0.29048, epsilon = 1e-4);

        let by_k1n =
            equivalent_sample_size(&student3(), 30, EquivalenceMethod::ApproxKappa1N, None)
                .unwrap();
        assert!(by_k1n.n_nu > 60.0 && by_k1n.n_nu < 75.0, "{}", by_k1n.n_nu);

        let exact =
            equivalent_sample_size(&student3(), 30, EquivalenceMethod::ExactMadMatch, None)
                .unwrap();
        assert!(exact.n_nu > 40.0 && exact.n_nu < 50.0, "{}", exact.n_nu);

        // The exact requirement is the smallest of the three: the
        // approximations hold kappa at its early (larger) values while the
        // true kappa(1, n) declines.
        assert!(exact.n_nu <= by_k1n.n_nu && by_k1n.n_nu <= by_k1.n_nu);

        // Verify the defining inequality at the returned integer.
        let m1 = closed_mad(&student3(), 1).unwrap();
        let target = (30f64).powf(-0.5);
        let n = exact.n_nu as u64;
        let risk = |n: u64| closed_mad(&student3(), n).unwrap() / (n as f64 * m1);
        assert!(risk(n) <= target && target < risk(n - 1));
    }

    #[test]
    fn exponential_equivalence_ordering() {
        let spec = DistributionSpec::Exponential { lambda: 1.0 };
        let panel = equivalence_panel(&spec, 30, None).unwrap();
        assert_eq!(panel.len(), 3);
        let exact = panel[2].n_nu;
        assert!(exact <= panel[1].n_nu && panel[1].n_nu <= panel[0].n_nu, "{panel:?}");
        assert!(exact >= 30.0);
    }

    #[test]
    fn pareto_equivalence_from_the_pair_value() {
        let spec = DistributionSpec::Pareto { alpha: 3.0, xmin: 1.0 };
        let r = equivalent_sample_size(&spec, 30, EquivalenceMethod::ApproxKappa1, None).unwrap();
        assert_relative_eq!(r.kappa_used, 0.465, epsilon = 2e-3);
        assert!(r.n_nu > 550.0 && r.n_nu < 600.0, "{}", r.n_nu);

        let heavy = DistributionSpec::Pareto { alpha: 1.14, xmin: 1.0 };
        let r = equivalent_sample_size(&heavy, 30, EquivalenceMethod::ApproxKappa1, None).unwrap();
        assert!(r.n_nu > 1e9, "{}", r.n_nu);
        assert!(r.kappa_used > 0.8);
    }

    #[test]
    fn pareto_exact_match_by_sampling() {
        let spec = DistributionSpec::Pareto { alpha: 3.0, xmin: 1.0 };
        let config = McConfig { samples: 64_000, batches: 16, seed: 11, antithetic: false };
        let r =
            equivalent_sample_size(&spec, 30, EquivalenceMethod::ExactMadMatch, Some(&config))
                .unwrap();
        assert!(r.n_nu > 45.0 && r.n_nu < 90.0, "{}", r.n_nu);
        assert!(r.kappa_used > 0.2 && r.kappa_used < 0.45, "{}", r.kappa_used);
    }

    #[test]
    fn equivalence_is_scale_invariant() {
        let wide = DistributionSpec::StudentT { alpha: 3.0, scale: 7.0 };
        let a = equivalent_sample_size(&student3(), 30, EquivalenceMethod::ApproxKappa1, None)
            .unwrap();
        let b = equivalent_sample_size(&wide, 30, EquivalenceMethod::ApproxKappa1, None).unwrap();
        assert_relative_eq!(a.n_nu, b.n_nu, max_relative = 1e-10);
        let a = equivalent_sample_size(&student3(), 30, EquivalenceMethod::ExactMadMatch, None)
            .unwrap();
        let b = equivalent_sample_size(&wide, 30, EquivalenceMethod::ExactMadMatch, None).unwrap();
        assert_eq!(a.n_nu, b.n_nu);
    }

    #[test]
    fn equivalence_validation() {
        assert!(equivalent_sample_size(&gaussian(), 1, EquivalenceMethod::ApproxKappa1, None)
            .is_err());
        let bad = DistributionSpec::Pareto { alpha: 0.9, xmin: 1.0 };
        assert!(equivalent_sample_size(&bad, 30, EquivalenceMethod::ApproxKappa1, None).is_err());
    }

    #[test]
    fn planner_closed_form_examples() {
        assert_eq!(mc_run_planner(&gaussian(), 0.1, None).unwrap(), RunPlan::Runs(100));

        let stable = DistributionSpec::Stable { alpha_tilde: 1.5, beta: 0.0, mu: 0.0, sigma: 1.0 };
        assert_eq!(mc_run_planner(&stable, 0.1, None).unwrap(), RunPlan::Runs(1000));

        // Just below and above a closed-form boundary.
        assert_eq!(mc_run_planner(&gaussian(), 0.25, None).unwrap(), RunPlan::Runs(16));
        assert_eq!(mc_run_planner(&gaussian(), 0.2501, None).unwrap(), RunPlan::Runs(16));
        assert_eq!(mc_run_planner(&gaussian(), 0.2499, None).unwrap(), RunPlan::Runs(17));
    }

    #[test]
    fn planner_student3() {
        let plan = mc_run_planner(&student3(), 0.178, None).unwrap();
        let n = plan.runs().unwrap();
        // Verify the minimality contract directly.
        let m1 = closed_mad(&student3(), 1).unwrap();
        let risk = |n: u64| closed_mad(&student3(), n).unwrap() / (n as f64 * m1);
        assert!(risk(n) <= 0.178 && 0.178 < risk(n - 1), "n = {n}");
        assert_eq!(n, 46);
    }

    #[test]
    fn planner_agrees_with_exact_equivalence() {
        let target = (30f64).powf(-0.5);
        let plan = mc_run_planner(&student3(), target, None).unwrap();
        let exact =
            equivalent_sample_size(&student3(), 30, EquivalenceMethod::ExactMadMatch, None)
                .unwrap();
        assert_eq!(plan, RunPlan::Runs(exact.n_nu as u64));
    }

    #[test]
    fn planner_out_of_range_targets() {
        assert!(mc_run_planner(&gaussian(), 0.0, None).is_err());
        assert!(mc_run_planner(&gaussian(), 1.0, None).is_err());
        assert_eq!(mc_run_planner(&gaussian(), 1e-40, None).unwrap(), RunPlan::Unbounded);
    }

    #[test]
    fn portfolio_reference_points() {
        let curve = portfolio_curve(&gaussian(), 4, None).unwrap();
        assert_eq!(curve.len(), 4);
        assert_eq!(curve[3].risk_ratio, 0.5);
        assert!(curve.iter().all(|p| p.risk_ratio == p.gaussian));

        let stable = DistributionSpec::Stable { alpha_tilde: 1.5, beta: 0.0, mu: 0.0, sigma: 1.0 };
        let curve = portfolio_curve(&stable, 16, None).unwrap();
        assert_relative_eq!(curve[15].risk_ratio, 0.3968502629920499, max_relative = 1e-12);

        let curve = portfolio_curve(&student3(), 30, None).unwrap();
        assert_eq!(curve[0].risk_ratio, 1.0);
        assert_relative_eq!(curve[29].risk_ratio, 0.218, epsilon = 5e-3);
        // Nonincreasing, and never better than the Gaussian baseline while
        // kappa stays positive.
        assert!(curve.windows(2).all(|w| w[1].risk_ratio <= w[0].risk_ratio));
        assert!(curve.iter().all(|p| p.risk_ratio >= p.gaussian));
    }

    #[test]
    fn portfolio_by_sampling() {
        let spec = DistributionSpec::Lognormal { mu: 0.0, sigma: 0.5 };
        let config = McConfig { samples: 64_000, batches: 16, seed: 4, antithetic: false };
        let curve = portfolio_curve(&spec, 8, Some(&config)).unwrap();
        assert_eq!(curve.len(), 8);
        assert_eq!(curve[0].risk_ratio, 1.0);
        assert_eq!(curve[0].std_error, 0.0);
        assert!(curve[7].std_error > 0.0);
        assert!(curve.windows(2).all(|w| w[1].risk_ratio <= w[0].risk_ratio));
        assert!(curve.iter().skip(1).all(|p| p.risk_ratio >= p.gaussian));
    }

    #[test]
    fn trace_rows_and_asymptotes() {
        let specs = [
            gaussian(),
            student3(),
            DistributionSpec::Pareto { alpha: 1.5, xmin: 1.0 },
        ];
        let config = McConfig { samples: 64_000, batches: 32, seed: 2, antithetic: false };
        let rows = convergence_trace(&specs, &[2, 10], Some(&config)).unwrap();
        assert_eq!(rows.len(), 6);

        assert!(rows[0..2].iter().all(|r| r.kappa == 0.0 && r.asymptote == 0.0));
        assert_relative_eq!(rows[2].kappa, 0.2904887, epsilon = 1e-6);
        assert_eq!(rows[2].asymptote, 0.0);
        assert_eq!(rows[4].asymptote, 0.5);
        assert_eq!(rows[5].n, 10);

        assert!(convergence_trace(&specs, &[2, 2], Some(&config)).is_err());
        assert!(convergence_trace(&specs, &[1, 2], Some(&config)).is_err());
        assert!(convergence_trace(&specs, &[], Some(&config)).is_err());
    }
}
