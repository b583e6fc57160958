//! M(n) = E|S_n - E S_n| for n i.i.d. summands, by the best available method.
//!
//! Three routes exist: exact closed forms (Gaussian, symmetric stable, Student
//! t at alpha = 3, exponential and gamma through the gamma-sum identity),
//! characteristic-function quadrature for symmetric families with a known CF,
//! and seeded Monte Carlo for everything else. `mad` resolves the routing;
//! the individual engines are also public for callers that need one
//! specifically.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::analytic::cubic_mad;
use crate::dist::DistributionSpec;
use crate::error::{Error, Result};
use crate::mc;
use crate::quad::{integrate, QuadratureConfig};
use crate::special::ln_gamma;

/// How an estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    CfQuadrature,
    MonteCarlo,
    Empirical,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::CfQuadrature => "cf_quadrature",
            Method::MonteCarlo => "monte_carlo",
            Method::Empirical => "empirical",
        }
    }
}

/// Method preference for `mad` and `kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    Auto,
    ClosedForm,
    Cf,
    Mc,
}

/// Monte Carlo run configuration.
///
/// `samples` counts replicates of the full sum S_n; `batches` divides them
/// into equally sized batches for the batch-means standard error. The default
/// is 10^6 replicates in 64 batches with seed 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub batches: u64,
    pub seed: u64,
    pub antithetic: bool,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig { samples: 1_000_000, batches: 64, seed: 0, antithetic: false }
    }
}

impl McConfig {
    pub fn with_samples(samples: u64) -> Self {
        McConfig { samples, ..Self::default() }
    }

    /// Check the configuration against a spec. Heavy-tailed specs (tail
    /// exponent below 2) need at least 31 batches so the median-of-means
    /// error bar is meaningful.
    pub fn validate(&self, spec: &DistributionSpec) -> Result<()> {
        if self.samples == 0 || self.batches == 0 {
            return Err(Error::InvalidConfig("samples and batches must be positive".into()));
        }
        if self.batches < 16 {
            return Err(Error::InvalidConfig(format!(
                "need at least 16 batches for batch-means errors, got {}",
                self.batches
            )));
        }
        if self.samples % self.batches != 0 {
            return Err(Error::InvalidConfig(format!(
                "samples ({}) must be divisible by batches ({})",
                self.samples, self.batches
            )));
        }
        if spec.tail_exponent().is_some_and(|a| a < 2.0) && self.batches < 31 {
            return Err(Error::InvalidConfig(format!(
                "heavy-tailed spec needs at least 31 batches for median-of-means errors, got {}",
                self.batches
            )));
        }
        if self.antithetic {
            if !spec.is_symmetric() {
                return Err(Error::InvalidConfig(
                    "antithetic sampling is only offered for symmetric families".into(),
                ));
            }
            if (self.samples / self.batches) % 2 != 0 {
                return Err(Error::InvalidConfig(
                    "antithetic sampling needs an even number of replicates per batch".into(),
                ));
            }
        }
        Ok(())
    }
}

/// The result of a mean-absolute-deviation computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MadEstimate {
    pub value: f64,
    pub n: u64,
    pub method: Method,
    /// Monte Carlo standard error; 0 for exact methods.
    pub std_error: f64,
    pub samples_used: u64,
    pub seed: Option<u64>,
    /// Relative tolerance bound for the quadrature path.
    pub tolerance: Option<f64>,
    /// Set when the spec's tail exponent is below 2 and the Monte Carlo
    /// estimator may have infinite variance.
    pub heavy_tail_warning: bool,
}

impl MadEstimate {
    fn exact(value: f64, n: u64) -> Self {
        MadEstimate {
            value,
            n,
            method: Method::ClosedForm,
            std_error: 0.0,
            samples_used: 0,
            seed: None,
            tolerance: None,
            heavy_tail_warning: false,
        }
    }
}

/// Exact M(n) where a closed form exists for the whole family, or for n = 1
/// where only the single-summand deviation is closed form.
pub fn closed_mad(spec: &DistributionSpec, n: u64) -> Result<f64> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    match *spec {
        DistributionSpec::Gaussian { sigma, .. } => Ok(sigma * (2.0 * n as f64 / PI).sqrt()),
        DistributionSpec::StudentT { alpha, scale } if alpha == 3.0 => {
            Ok(scale * cubic_mad(n)?)
        }
        DistributionSpec::Exponential { lambda } => Ok(gamma_sum_mad(n as f64, lambda)),
        DistributionSpec::Gamma { shape, rate } => Ok(gamma_sum_mad(n as f64 * shape, rate)),
        DistributionSpec::Stable { alpha_tilde, .. } if spec.is_symmetric() => {
            Ok((n as f64).powf(1.0 / alpha_tilde) * spec.mad1()?)
        }
        _ if n == 1 => spec.mad1(),
        _ => Err(Error::FallbackRequired(format!(
            "no closed form for the {}-fold sum of {}",
            n,
            spec.family_name()
        ))),
    }
}

/// M(1) for a Gamma(a, rate) variable: 2 a^a e^-a / (rate Gamma(a)).
/// Sums of gammas are gammas, so this covers M(n) for the exponential
/// (a = n) and gamma (a = n * shape) families.
fn gamma_sum_mad(a: f64, rate: f64) -> f64 {
    (2.0_f64.ln() + a * (a.ln() - 1.0) - ln_gamma(a)).exp() / rate
}

/// M(n) by numerical inversion of the characteristic function, using
/// E|Y| = (2/pi) int_0^inf (1 - Re cf_Y(t)) / t^2 dt for the centered sum Y.
///
/// Only symmetric specs are accepted; the centered CF is then real and the
/// integrand is free of phase cancellation.
pub fn mad_from_cf(spec: &DistributionSpec, n: u64, quad: &QuadratureConfig) -> Result<MadEstimate> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if n > i32::MAX as u64 {
        return Err(Error::InvalidParameter(format!("n = {n} is too large for the CF path")));
    }
    if !spec.is_symmetric() {
        return Err(Error::Unsupported(format!(
            "CF quadrature needs a symmetric spec, {} is not",
            spec.family_name()
        )));
    }
    spec.cf(1.0)?;

    let mu = spec.mean();
    let centered = |t: f64| -> f64 {
        let c = spec.cf(t).expect("cf availability already probed");
        (c * num_complex::Complex64::new(0.0, -mu * t).exp()).re
    };
    let ni = n as i32;
    // 1 - c^n without cancellation when c is close to 1.
    let one_minus_pow = move |c: f64| -> f64 {
        if c > 0.5 {
            -(ni as f64 * c.ln()).exp_m1()
        } else {
            1.0 - c.powi(ni)
        }
    };
    let integrand = move |t: f64| one_minus_pow(centered(t)) / (t * t);

    // Truncation point: push T out until the centered CF power is negligible.
    // The envelope is probed at several incommensurate multiples of T so an
    // oscillating CF cannot fake decay with a single lucky zero. Mixtures
    // with a zero-variance regime plateau at a positive level, so the
    // doubling is capped and the remainder handled by the tail estimate.
    let envelope = |t: f64| -> f64 {
        [1.0, 1.19, 1.43, 1.77].iter().map(|&k| centered(k * t).abs()).fold(0.0, f64::max)
    };
    let pow_env = |e: f64| -> f64 {
        if e <= 0.0 {
            0.0
        } else {
            (ni as f64 * e.ln()).exp().min(1.0)
        }
    };
    let mut t_max = 1.0_f64;
    let cap = 2.0_f64.powi(40);
    while t_max < cap && pow_env(envelope(t_max)) > 1e-16 {
        t_max *= 2.0;
    }

    let mut value = 0.0;
    let mut abs_err = 0.0;

    let heavy = spec.tail_exponent().is_some_and(|a| a < 2.0);
    let split = 1.0_f64.min(t_max);
    if heavy {
        // The integrand carries a t^(alpha-2) singularity at the origin,
        // and once 1 - c(t) falls below ~1e-7 its direct evaluation loses
        // every digit to cancellation exactly where the integrand peaks.
        // Head: anchor the known local law 1 - c = a t^alpha just above
        // that floor and integrate the model 1 - exp(-n a t^alpha) there.
        // Past the head, substitute t = y^(1/(alpha-1)) so the singular
        // weight becomes a bounded factor.
        let alpha = spec.tail_exponent().expect("heavy implies a tail exponent");
        let nf = n as f64;
        let p = 1.0 / (alpha - 1.0);
        let mut t0 = split;
        let mut d0 = 1.0 - centered(t0);
        while d0 > 1e-7 && t0 > 1e-200 {
            t0 *= 0.5;
            d0 = 1.0 - centered(t0);
        }
        if d0 > 0.0 {
            let a = d0 / t0.powf(alpha);
            let model = move |t: f64| {
                if t <= 0.0 {
                    return 0.0;
                }
                -(-(nf * a * t.powf(alpha))).exp_m1() / (t * t)
            };
            let g = move |y: f64| {
                let t = y.powf(p);
                model(t) * p * y.powf(p - 1.0)
            };
            let q = integrate(g, 0.0, t0.powf(1.0 / p), quad)?;
            value += q.value;
            abs_err += q.abs_error + 2.0 * d0 * q.value;
        }
        let g = |y: f64| {
            let t = y.powf(p);
            integrand(t) * p * y.powf(p - 1.0)
        };
        let q = integrate(g, t0.powf(1.0 / p), split.powf(1.0 / p), quad)?;
        value += q.value;
        abs_err += q.abs_error;
    } else {
        let q = integrate(&integrand, 0.0, split, quad)?;
        value += q.value;
        abs_err += q.abs_error;
    }
    if t_max > split {
        let q = integrate(&integrand, split, t_max, quad)?;
        value += q.value;
        abs_err += q.abs_error;
    }

    // Tail beyond T: the centered CF power is below 1e-16 (or pinned at a
    // plateau), so int_T^inf (1 - c^n)/t^2 is (1 - c(T)^n)/T up to a
    // residual bounded by the envelope power.
    let tail_level = one_minus_pow(centered(t_max));
    value += tail_level / t_max;
    abs_err += 2.0 * pow_env(envelope(t_max)) / t_max;

    let value = value * 2.0 / PI;
    let abs_err = abs_err * 2.0 / PI;
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::Numerical(format!(
            "CF quadrature produced a non-positive deviation ({value}) for {}",
            spec.family_name()
        )));
    }
    Ok(MadEstimate {
        value,
        n,
        method: Method::CfQuadrature,
        std_error: 0.0,
        samples_used: 0,
        seed: None,
        tolerance: Some(abs_err / value),
        heavy_tail_warning: false,
    })
}

/// M(n) by seeded Monte Carlo over batches of replicates of S_n.
pub fn mad_monte_carlo(spec: &DistributionSpec, n: u64, config: &McConfig) -> Result<MadEstimate> {
    let grid = mc::sum_mad_grid(spec, &[n], config)?;
    Ok(grid.estimate(0, config))
}

/// M(n) by the preferred route. `Auto` tries closed form, then CF
/// quadrature, then Monte Carlo with the supplied (or default) config.
pub fn mad(
    spec: &DistributionSpec,
    n: u64,
    preference: Preference,
    mc_config: Option<&McConfig>,
) -> Result<MadEstimate> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    match preference {
        Preference::ClosedForm => closed_mad(spec, n).map(|v| MadEstimate::exact(v, n)),
        Preference::Cf => mad_from_cf(spec, n, &QuadratureConfig::default()),
        Preference::Mc => {
            let config = mc_config.ok_or_else(|| {
                Error::InvalidConfig("Monte Carlo preference needs an explicit McConfig".into())
            })?;
            mad_monte_carlo(spec, n, config)
        }
        Preference::Auto => {
            match closed_mad(spec, n) {
                Ok(v) => return Ok(MadEstimate::exact(v, n)),
                Err(Error::FallbackRequired(_)) => {}
                Err(e) => return Err(e),
            }
            if spec.is_symmetric() && spec.cf(1.0).is_ok() {
                return mad_from_cf(spec, n, &QuadratureConfig::default());
            }
            let default_config = McConfig::default();
            mad_monte_carlo(spec, n, mc_config.unwrap_or(&default_config))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cubic() -> DistributionSpec {
        DistributionSpec::StudentT { alpha: 3.0, scale: 1.0 }
    }

    #[test]
    fn closed_values() {
        let gauss = DistributionSpec::Gaussian { mu: 0.0, sigma: 1.0 };
        assert_relative_eq!(closed_mad(&gauss, 4).unwrap(), 1.5957691216057308, max_relative = 1e-14);

        assert_relative_eq!(closed_mad(&cubic(), 2).unwrap(), 1.6539866862653763, max_relative = 1e-12);
        // M(2) = 1.5 M(1) for the cubic Student.
        assert_relative_eq!(
            closed_mad(&cubic(), 2).unwrap() / closed_mad(&cubic(), 1).unwrap(),
            1.5,
            max_relative = 1e-12
        );

        let stable = DistributionSpec::Stable { alpha_tilde: 1.5, beta: 0.0, mu: 0.0, sigma: 1.0 };
        assert_relative_eq!(
            closed_mad(&stable, 8).unwrap(),
            4.0 * closed_mad(&stable, 1).unwrap(),
            max_relative = 1e-13
        );

        let expo = DistributionSpec::Exponential { lambda: 1.0 };
        assert_relative_eq!(closed_mad(&expo, 5).unwrap(), 1.7546736976785068, max_relative = 1e-12);
        // Same value through the explicit form 2 e^-5 5^5 / Gamma(5).
        let direct = 2.0 * (-5.0_f64).exp() * 5.0_f64.powi(5) / 24.0;
        assert_relative_eq!(closed_mad(&expo, 5).unwrap(), direct, max_relative = 1e-12);

        // Gamma(shape k, rate l) at n matches Exponential(l) at n*k when k is integral.
        let gamma = DistributionSpec::Gamma { shape: 3.0, rate: 2.0 };
        assert_relative_eq!(
            closed_mad(&gamma, 4).unwrap(),
            closed_mad(&DistributionSpec::Exponential { lambda: 2.0 }, 12).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn closed_fallback_signals() {
        let pareto = DistributionSpec::Pareto { alpha: 3.0, xmin: 1.0 };
        assert!(closed_mad(&pareto, 1).is_ok());
        assert!(matches!(closed_mad(&pareto, 2), Err(Error::FallbackRequired(_))));
        let skewed = DistributionSpec::Stable { alpha_tilde: 1.5, beta: 0.5, mu: 1.0, sigma: 1.0 };
        assert!(matches!(closed_mad(&skewed, 2), Err(Error::FallbackRequired(_))));
    }

    #[test]
    fn cf_matches_closed_forms() {
        let quad = QuadratureConfig::default();
        let gauss = DistributionSpec::Gaussian { mu: 0.0, sigma: 1.0 };
        let est = mad_from_cf(&gauss, 1, &quad).unwrap();
        assert_relative_eq!(est.value, 0.7978845608028654, max_relative = 1e-8);
        assert_eq!(est.method, Method::CfQuadrature);
        assert_eq!(est.std_error, 0.0);
        assert!(est.tolerance.unwrap() < 1e-8);

        let est = mad_from_cf(&cubic(), 1, &quad).unwrap();
        assert_relative_eq!(est.value, 1.1026577908435842, max_relative = 1e-8);

        let est = mad_from_cf(&cubic(), 50, &quad).unwrap();
        assert_relative_eq!(est.value, closed_mad(&cubic(), 50).unwrap(), max_relative = 1e-6);

        // Mean-shifted Gaussian: centering must remove the phase entirely.
        let moved = DistributionSpec::Gaussian { mu: 25.0, sigma: 2.0 };
        let est = mad_from_cf(&moved, 3, &quad).unwrap();
        assert_relative_eq!(est.value, closed_mad(&moved, 3).unwrap(), max_relative = 1e-8);
    }

    #[test]
    fn cf_handles_the_stable_singularity() {
        let quad = QuadratureConfig::default();
        for alpha_tilde in [1.25, 1.5, 1.9] {
            let spec = DistributionSpec::Stable { alpha_tilde, beta: 0.0, mu: 0.0, sigma: 1.0 };
            for n in [1, 4] {
                let est = mad_from_cf(&spec, n, &quad).unwrap();
                assert_relative_eq!(
                    est.value,
                    closed_mad(&spec, n).unwrap(),
                    max_relative = 1e-7
                );
            }
        }
    }

    #[test]
    fn cf_handles_oscillating_centered_cfs() {
        // Symmetric two-point mean mixture: centered CF has negative lobes.
        let mix = DistributionSpec::GaussianMeanMix {
            mu1: -3.0,
            mu2: 3.0,
            sigma1: 1.0,
            sigma2: 1.0,
            p: 0.5,
        };
        let quad = QuadratureConfig::default();
        let est = mad_from_cf(&mix, 1, &quad).unwrap();
        assert_relative_eq!(est.value, mix.mad1().unwrap(), max_relative = 1e-8);
    }

    #[test]
    fn cf_handles_a_plateau() {
        // Zero-variance second regime: the centered CF tends to 1 - p, not 0.
        let mix = DistributionSpec::GaussianVarianceMix { sigma2: 1.0, a: 1.0, p: 0.5 };
        let quad = QuadratureConfig::default();
        let est = mad_from_cf(&mix, 1, &quad).unwrap();
        assert_relative_eq!(est.value, mix.mad1().unwrap(), max_relative = 1e-7);
    }

    #[test]
    fn cf_rejects_asymmetric_specs() {
        let expo = DistributionSpec::Exponential { lambda: 1.0 };
        assert!(matches!(
            mad_from_cf(&expo, 2, &QuadratureConfig::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn router_prefers_exact_paths() {
        let gauss = DistributionSpec::Gaussian { mu: 0.0, sigma: 1.0 };
        assert_eq!(mad(&gauss, 10, Preference::Auto, None).unwrap().method, Method::ClosedForm);

        let mix = DistributionSpec::GaussianVarianceMix { sigma2: 1.0, a: 0.5, p: 0.3 };
        assert_eq!(mad(&mix, 3, Preference::Auto, None).unwrap().method, Method::CfQuadrature);

        let t25 = DistributionSpec::StudentT { alpha: 2.5, scale: 1.0 };
        let est = mad(&t25, 2, Preference::Auto, Some(&McConfig::with_samples(64_000))).unwrap();
        assert_eq!(est.method, Method::MonteCarlo);

        assert!(matches!(
            mad(&gauss, 2, Preference::Mc, None),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn config_validation() {
        let gauss = DistributionSpec::Gaussian { mu: 0.0, sigma: 1.0 };
        let pareto15 = DistributionSpec::Pareto { alpha: 1.5, xmin: 1.0 };
        let expo = DistributionSpec::Exponential { lambda: 1.0 };

        let bad_batches = McConfig { batches: 8, samples: 800, ..Default::default() };
        assert!(bad_batches.validate(&gauss).is_err());

        let indivisible = McConfig { batches: 17, samples: 1000, ..Default::default() };
        assert!(indivisible.validate(&gauss).is_err());

        let heavy_few = McConfig { batches: 20, samples: 1000, ..Default::default() };
        assert!(heavy_few.validate(&pareto15).is_err());
        assert!(heavy_few.validate(&gauss).is_ok());

        let anti = McConfig { antithetic: true, samples: 1_280_000, ..Default::default() };
        assert!(anti.validate(&gauss).is_ok());
        assert!(anti.validate(&expo).is_err());

        let anti_odd = McConfig { antithetic: true, ..Default::default() };
        assert!(anti_odd.validate(&gauss).is_err());
    }
}
