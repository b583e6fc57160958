//! The kappa metric: kappa(n0, n) = 2 - (log n - log n0)/log(M(n)/M(n0)),
//! where M is the expected absolute deviation of the n-summand sum. Zero for
//! the Gaussian, 2 - alpha_tilde throughout the stable basin, approaching 1
//! for maximally fat tails, and occasionally negative (bimodal mean
//! mixtures).
//!
//! Also here: the local decomposition chain kappa(i, i+1), the stable
//! benchmark, and a block estimator for raw data.

use rand::RngExt;
use serde::{Deserialize, Serialize};

use crate::dist::DistributionSpec;
use crate::error::{Error, Result};
use crate::mad::{closed_mad, mad_from_cf, McConfig, Method, Preference};
use crate::mc;
use crate::quad::QuadratureConfig;
use crate::rng::stream_rng;

const BOOTSTRAP_ROUNDS: usize = 200;

/// kappa(n0, n) with how it was obtained and an error bar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KappaResult {
    pub n0: u64,
    pub n: u64,
    pub kappa: f64,
    pub method: Method,
    /// Delta-method (or bootstrap) standard error; 0 for exact methods.
    pub std_error: f64,
    /// Set when the estimated M(n) did not exceed M(n0), so no kappa exists;
    /// `kappa` is NaN in that case.
    pub degenerate: bool,
    pub seed: Option<u64>,
    pub samples_used: Option<u64>,
}

impl KappaResult {
    pub(crate) fn exact(n0: u64, n: u64, kappa: f64, method: Method) -> Self {
        KappaResult {
            n0,
            n,
            kappa,
            method,
            std_error: 0.0,
            degenerate: false,
            seed: None,
            samples_used: None,
        }
    }

    fn degenerate(n0: u64, n: u64, method: Method, seed: Option<u64>, samples: Option<u64>) -> Self {
        KappaResult {
            n0,
            n,
            kappa: f64::NAN,
            method,
            std_error: f64::NAN,
            degenerate: true,
            seed,
            samples_used: samples,
        }
    }
}

pub(crate) fn kappa_from_ratio(n0: u64, n: u64, m0: f64, m1: f64) -> f64 {
    2.0 - (n as f64 / n0 as f64).ln() / (m1 / m0).ln()
}

/// Families whose kappa is a constant independent of (n0, n): the Gaussian
/// (0) and the stable laws (2 - alpha_tilde, for every beta, since
/// M(n) = n^(1/alpha_tilde) M(1) regardless of skew).
pub(crate) fn constant_kappa(spec: &DistributionSpec) -> Option<f64> {
    match *spec {
        DistributionSpec::Gaussian { .. } => Some(0.0),
        DistributionSpec::Stable { alpha_tilde, .. } => Some(2.0 - alpha_tilde),
        _ => None,
    }
}

fn check_pair(n0: u64, n: u64) -> Result<()> {
    if n0 >= 1 && n > n0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("need n > n0 >= 1, got n0 = {n0}, n = {n}")))
    }
}

/// kappa(n0, n) for a catalog spec. Both M values come from the same
/// method: closed form, CF quadrature, or one common-random-number Monte
/// Carlo pass, in that order of preference under `Auto`.
pub fn kappa(
    spec: &DistributionSpec,
    n0: u64,
    n: u64,
    preference: Preference,
    mc_config: Option<&McConfig>,
) -> Result<KappaResult> {
    spec.validate()?;
    check_pair(n0, n)?;

    if matches!(preference, Preference::Auto | Preference::ClosedForm) {
        if let Some(k) = constant_kappa(spec) {
            return Ok(KappaResult::exact(n0, n, k, Method::ClosedForm));
        }
    }

    match preference {
        Preference::ClosedForm => {
            let m0 = closed_mad(spec, n0)?;
            let m1 = closed_mad(spec, n)?;
            exact_pair(n0, n, m0, m1, Method::ClosedForm)
        }
        Preference::Cf => {
            let quad = QuadratureConfig::default();
            let m0 = mad_from_cf(spec, n0, &quad)?.value;
            let m1 = mad_from_cf(spec, n, &quad)?.value;
            exact_pair(n0, n, m0, m1, Method::CfQuadrature)
        }
        Preference::Mc => {
            let config = mc_config.ok_or_else(|| {
                Error::InvalidConfig("Monte Carlo preference needs an explicit McConfig".into())
            })?;
            mc_kappa(spec, n0, n, config)
        }
        Preference::Auto => {
            match (closed_mad(spec, n0), closed_mad(spec, n)) {
                (Ok(m0), Ok(m1)) => return exact_pair(n0, n, m0, m1, Method::ClosedForm),
                (Err(Error::FallbackRequired(_)), _) | (_, Err(Error::FallbackRequired(_))) => {}
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
            if spec.is_symmetric() && spec.cf(1.0).is_ok() {
                let quad = QuadratureConfig::default();
                let m0 = mad_from_cf(spec, n0, &quad)?.value;
                let m1 = mad_from_cf(spec, n, &quad)?.value;
                return exact_pair(n0, n, m0, m1, Method::CfQuadrature);
            }
            let default_config = McConfig::default();
            mc_kappa(spec, n0, n, mc_config.unwrap_or(&default_config))
        }
    }
}

fn exact_pair(n0: u64, n: u64, m0: f64, m1: f64, method: Method) -> Result<KappaResult> {
    if !(m1 > m0 && m0 > 0.0) {
        return Err(Error::Numerical(format!(
            "deviations are not strictly increasing: M({n0}) = {m0}, M({n}) = {m1}"
        )));
    }
    Ok(KappaResult::exact(n0, n, kappa_from_ratio(n0, n, m0, m1), method))
}

fn mc_kappa(spec: &DistributionSpec, n0: u64, n: u64, config: &McConfig) -> Result<KappaResult> {
    let grid = mc::sum_mad_grid(spec, &[n0, n], config)?;
    pair_from_grid(&grid, 0, 1, config)
}

pub(crate) fn pair_from_grid(grid: &mc::SumMadGrid, g0: usize, g1: usize, config: &McConfig) -> Result<KappaResult> {
    let (n0, n) = (grid.ns[g0], grid.ns[g1]);
    let (m0, m1) = (grid.value(g0), grid.value(g1));
    if !(m1 > m0 && m0 > 0.0) {
        return Ok(KappaResult::degenerate(
            n0,
            n,
            Method::MonteCarlo,
            Some(config.seed),
            Some(config.samples),
        ));
    }
    Ok(KappaResult {
        n0,
        n,
        kappa: kappa_from_ratio(n0, n, m0, m1),
        method: Method::MonteCarlo,
        std_error: delta_std_error(grid, g0, g1),
        degenerate: false,
        seed: Some(config.seed),
        samples_used: Some(config.samples),
    })
}

/// First-order propagation of the two M uncertainties into kappa,
/// keeping the common-random-number correlation between the batch means.
fn delta_std_error(grid: &mc::SumMadGrid, g0: usize, g1: usize) -> f64 {
    let (m0, m1) = (grid.value(g0), grid.value(g1));
    let (se0, se1) = (grid.std_error(g0), grid.std_error(g1));
    let rho = correlation(&grid.batch_means[g0], &grid.batch_means[g1]);
    let l = (grid.ns[g1] as f64 / grid.ns[g0] as f64).ln();
    let log_ratio = (m1 / m0).ln();
    let scale = l / (log_ratio * log_ratio);
    let rel_var = (se1 / m1).powi(2) + (se0 / m0).powi(2) - 2.0 * rho * se0 * se1 / (m0 * m1);
    scale.abs() * rel_var.max(0.0).sqrt()
}

fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let mx = mc::mean(xs);
    let my = mc::mean(ys);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx > 0.0 && syy > 0.0 {
        (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
    } else {
        0.0
    }
}

/// The local kappas kappa(i, i+1) for i = 1..n_max-1, with the composed
/// kappa(1, n_max) appended last. All M values come from one method (and,
/// for Monte Carlo, one common-random-number pass over the whole grid), so
/// the composition identity
///   kappa(1, n) = 2 - log n / sum_i (log(i+1) - log i)/(2 - kappa(i, i+1))
/// holds to rounding for the exact methods; the appended entry is computed
/// through that sum.
pub fn kappa_chain(
    spec: &DistributionSpec,
    n_max: u64,
    preference: Preference,
    mc_config: Option<&McConfig>,
) -> Result<Vec<KappaResult>> {
    spec.validate()?;
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!("n_max must be >= 2, got {n_max}")));
    }

    if matches!(preference, Preference::Auto | Preference::ClosedForm) {
        if let Some(k) = constant_kappa(spec) {
            let mut out: Vec<KappaResult> = (1..n_max)
                .map(|i| KappaResult::exact(i, i + 1, k, Method::ClosedForm))
                .collect();
            out.push(KappaResult::exact(1, n_max, k, Method::ClosedForm));
            return Ok(out);
        }
    }

    let ns: Vec<u64> = (1..=n_max).collect();

    let exact_mads: Option<(Vec<f64>, Method)> = match preference {
        Preference::ClosedForm => {
            let mads: Result<Vec<f64>> = ns.iter().map(|&k| closed_mad(spec, k)).collect();
            Some((mads?, Method::ClosedForm))
        }
        Preference::Cf => {
            let quad = QuadratureConfig::default();
            let mads: Result<Vec<f64>> =
                ns.iter().map(|&k| mad_from_cf(spec, k, &quad).map(|e| e.value)).collect();
            Some((mads?, Method::CfQuadrature))
        }
        Preference::Mc => None,
        Preference::Auto => {
            let closed: Result<Vec<f64>> = ns.iter().map(|&k| closed_mad(spec, k)).collect();
            match closed {
                Ok(mads) => Some((mads, Method::ClosedForm)),
                Err(Error::FallbackRequired(_)) => {
                    if spec.is_symmetric() && spec.cf(1.0).is_ok() {
                        let quad = QuadratureConfig::default();
                        let mads: Result<Vec<f64>> = ns
                            .iter()
                            .map(|&k| mad_from_cf(spec, k, &quad).map(|e| e.value))
                            .collect();
                        Some((mads?, Method::CfQuadrature))
                    } else {
                        None
                    }
                }
                Err(e) => return Err(e),
            }
        }
    };

    if let Some((mads, method)) = exact_mads {
        let mut out = Vec::with_capacity(ns.len());
        let mut chain_sum = 0.0;
        for i in 0..ns.len() - 1 {
            let local = exact_pair(ns[i], ns[i + 1], mads[i], mads[i + 1], method)?;
            chain_sum += ((ns[i + 1] as f64).ln() - (ns[i] as f64).ln()) / (2.0 - local.kappa);
            out.push(local);
        }
        let composed = 2.0 - (n_max as f64).ln() / chain_sum;
        out.push(KappaResult::exact(1, n_max, composed, method));
        return Ok(out);
    }

    let config = match (preference, mc_config) {
        (Preference::Mc, None) => {
            return Err(Error::InvalidConfig(
                "Monte Carlo preference needs an explicit McConfig".into(),
            ))
        }
        (_, c) => c.copied().unwrap_or_default(),
    };
    let grid = mc::sum_mad_grid(spec, &ns, &config)?;
    let mut out = Vec::with_capacity(ns.len());
    for i in 0..ns.len() - 1 {
        out.push(pair_from_grid(&grid, i, i + 1, &config)?);
    }
    out.push(pair_from_grid(&grid, 0, ns.len() - 1, &config)?);
    Ok(out)
}

/// kappa(n0, n) for every n in `ns`, all estimated from one
/// common-random-number sampling pass so the values share draws and their
/// errors co-move. This is the economical way to fill a table column.
pub fn kappa_grid(
    spec: &DistributionSpec,
    n0: u64,
    ns: &[u64],
    config: &McConfig,
) -> Result<Vec<KappaResult>> {
    spec.validate()?;
    if n0 < 1 || ns.is_empty() || ns[0] <= n0 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "grid targets must be ascending and above the base size".into(),
        ));
    }
    let all: Vec<u64> = std::iter::once(n0).chain(ns.iter().copied()).collect();
    let grid = mc::sum_mad_grid(spec, &all, config)?;
    (1..all.len()).map(|g| pair_from_grid(&grid, 0, g, config)).collect()
}

/// The stable-basin benchmark: kappa = 2 - alpha_tilde for every (n0, n).
pub fn stable_kappa(alpha_tilde: f64) -> Result<f64> {
    if !(alpha_tilde.is_finite() && alpha_tilde > 1.0 && alpha_tilde <= 2.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha_tilde must lie in (1, 2], got {alpha_tilde}"
        )));
    }
    Ok(2.0 - alpha_tilde)
}

/// Block layout for `empirical_kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockStrategy {
    Disjoint,
    CircularBootstrap,
}

/// kappa(n0, n) from raw observations: M(k) is estimated by averaging
/// |block sum - k * grand mean| over blocks of length k. `Disjoint`
/// partitions the data once and bootstraps the block deviations for the
/// error bar; `CircularBootstrap` resamples wrap-around blocks at random
/// positions and reports the resampling mean and spread.
pub fn empirical_kappa(
    data: &[f64],
    n0: u64,
    n: u64,
    blocks: BlockStrategy,
    seed: u64,
) -> Result<KappaResult> {
    check_pair(n0, n)?;
    if data.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("data contains non-finite values".into()));
    }
    if (data.len() as u64) < 10 * n {
        return Err(Error::InsufficientData(format!(
            "need at least {} observations for n = {n}, got {}",
            10 * n,
            data.len()
        )));
    }
    let grand_mean = data.iter().sum::<f64>() / data.len() as f64;
    let mut rng = stream_rng(seed, 0);
    let samples = Some(data.len() as u64);

    match blocks {
        BlockStrategy::Disjoint => {
            let d0 = block_deviations(data, n0 as usize, grand_mean);
            let d1 = block_deviations(data, n as usize, grand_mean);
            let m0 = mc::mean(&d0);
            let m1 = mc::mean(&d1);
            if !(m1 > m0 && m0 > 0.0) {
                return Ok(KappaResult::degenerate(n0, n, Method::Empirical, Some(seed), samples));
            }
            let mut kappas = Vec::with_capacity(BOOTSTRAP_ROUNDS);
            for _ in 0..BOOTSTRAP_ROUNDS {
                let b0 = resampled_mean(&d0, &mut rng);
                let b1 = resampled_mean(&d1, &mut rng);
                if b1 > b0 && b0 > 0.0 {
                    kappas.push(kappa_from_ratio(n0, n, b0, b1));
                }
            }
            Ok(KappaResult {
                n0,
                n,
                kappa: kappa_from_ratio(n0, n, m0, m1),
                method: Method::Empirical,
                std_error: if kappas.len() >= 2 { sample_sd(&kappas) } else { f64::NAN },
                degenerate: false,
                seed: Some(seed),
                samples_used: samples,
            })
        }
        BlockStrategy::CircularBootstrap => {
            let count0 = data.len() / n0 as usize;
            let count1 = data.len() / n as usize;
            let mut kappas = Vec::with_capacity(BOOTSTRAP_ROUNDS);
            for _ in 0..BOOTSTRAP_ROUNDS {
                let b0 = circular_block_mean(data, n0 as usize, count0, grand_mean, &mut rng);
                let b1 = circular_block_mean(data, n as usize, count1, grand_mean, &mut rng);
                if b1 > b0 && b0 > 0.0 {
                    kappas.push(kappa_from_ratio(n0, n, b0, b1));
                }
            }
            if kappas.len() < 2 {
                return Ok(KappaResult::degenerate(n0, n, Method::Empirical, Some(seed), samples));
            }
            Ok(KappaResult {
                n0,
                n,
                kappa: mc::mean(&kappas),
                method: Method::Empirical,
                std_error: sample_sd(&kappas),
                degenerate: false,
                seed: Some(seed),
                samples_used: samples,
            })
        }
    }
}

fn block_deviations(data: &[f64], k: usize, center: f64) -> Vec<f64> {
    data.chunks_exact(k)
        .map(|block| (block.iter().sum::<f64>() - k as f64 * center).abs())
        .collect()
}

fn resampled_mean(xs: &[f64], rng: &mut impl rand::Rng) -> f64 {
    let m = xs.len();
    (0..m).map(|_| xs[rng.random_range(0..m)]).sum::<f64>() / m as f64
}

fn circular_block_mean(
    data: &[f64],
    k: usize,
    count: usize,
    center: f64,
    rng: &mut impl rand::Rng,
) -> f64 {
    let len = data.len();
    let mut total = 0.0;
    for _ in 0..count {
        let start = rng.random_range(0..len);
        let mut sum = 0.0;
        for j in 0..k {
            sum += data[(start + j) % len];
        }
        total += (sum - k as f64 * center).abs();
    }
    total / count as f64
}

fn sample_sd(xs: &[f64]) -> f64 {
    let m = mc::mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}
