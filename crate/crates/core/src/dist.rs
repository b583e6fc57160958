//! The distribution catalog: parametric families with finite mean.
//!
//! Every family carries exact closed forms for its mean and, where available,
//! its mean absolute deviation at n=1 and its characteristic function. Where a
//! closed form does not exist the accessor says so explicitly instead of
//! silently substituting a numeric estimate; the engine modules decide how to
//! fall back.

use num_complex::Complex64;
use rand::{Rng, RngExt};
use rand_distr::{
    Distribution, Exp, Gamma as GammaDist, LogNormal, Normal, Open01,
    Pareto as ParetoDist, StandardNormal, StudentT as StudentTDist,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::special::{erf, ln_gamma};

fn default_scale() -> f64 {
    1.0
}

/// A univariate distribution with finite mean.
///
/// Serializes as `{"family": "...", "params": {...}}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum DistributionSpec {
    Gaussian {
        mu: f64,
        sigma: f64,
    },
    /// Student t with `alpha` degrees of freedom (= tail exponent), `alpha` > 1.
    StudentT {
        alpha: f64,
        #[serde(default = "default_scale")]
        scale: f64,
    },
    /// One-tailed Pareto: survival (x/xmin)^-alpha on [xmin, inf), `alpha` > 1.
    Pareto {
        alpha: f64,
        #[serde(default = "default_scale")]
        xmin: f64,
    },
    Exponential {
        lambda: f64,
    },
    Gamma {
        shape: f64,
        rate: f64,
    },
    Lognormal {
        mu: f64,
        sigma: f64,
    },
    /// Alpha-stable law, characteristic function
    /// exp(i mu t - |sigma t|^alpha_tilde (1 - i beta tan(pi alpha_tilde/2) sgn t)),
    /// restricted to alpha_tilde in (1, 2] so the mean exists.
    Stable {
        alpha_tilde: f64,
        beta: f64,
        mu: f64,
        sigma: f64,
    },
    /// Zero-mean Gaussian whose variance is sigma2 + a with probability p and
    /// sigma2 - a p/(1-p) with probability 1-p (variance-preserving mix).
    GaussianVarianceMix {
        sigma2: f64,
        a: f64,
        p: f64,
    },
    /// Two-component Gaussian mixture: N(mu1, sigma1^2) w.p. p, else N(mu2, sigma2^2).
    GaussianMeanMix {
        mu1: f64,
        mu2: f64,
        sigma1: f64,
        sigma2: f64,
        p: f64,
    },
}

impl DistributionSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::StudentT { .. } => "student_t",
            Self::Pareto { .. } => "pareto",
            Self::Exponential { .. } => "exponential",
            Self::Gamma { .. } => "gamma",
            Self::Lognormal { .. } => "lognormal",
            Self::Stable { .. } => "stable",
            Self::GaussianVarianceMix { .. } => "gaussian_variance_mix",
            Self::GaussianMeanMix { .. } => "gaussian_mean_mix",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")))
            }
        };
        let positive = |name: &str, v: f64| -> Result<()> {
            finite(name, v)?;
            if v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be > 0, got {v}")))
            }
        };
        match *self {
            Self::Gaussian { mu, sigma } => {
                finite("mu", mu)?;
                positive("sigma", sigma)
            }
            Self::StudentT { alpha, scale } => {
                finite("alpha", alpha)?;
                positive("scale", scale)?;
                if alpha > 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "student_t needs alpha > 1 for a finite mean, got {alpha}"
                    )))
                }
            }
            Self::Pareto { alpha, xmin } => {
                finite("alpha", alpha)?;
                positive("xmin", xmin)?;
                if alpha > 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!(
                        "pareto needs alpha > 1 for a finite mean, got {alpha}"
                    )))
                }
            }
            Self::Exponential { lambda } => positive("lambda", lambda),
            Self::Gamma { shape, rate } => {
                positive("shape", shape)?;
                positive("rate", rate)
            }
            Self::Lognormal { mu, sigma } => {
                finite("mu", mu)?;
                positive("sigma", sigma)
            }
            Self::Stable { alpha_tilde, beta, mu, sigma } => {
                finite("alpha_tilde", alpha_tilde)?;
                finite("beta", beta)?;
                finite("mu", mu)?;
                positive("sigma", sigma)?;
                if !(alpha_tilde > 1.0 && alpha_tilde <= 2.0) {
                    return Err(Error::InvalidParameter(format!(
                        "stable needs alpha_tilde in (1, 2], got {alpha_tilde}"
                    )));
                }
                if !(-1.0..=1.0).contains(&beta) {
                    return Err(Error::InvalidParameter(format!(
                        "stable needs beta in [-1, 1], got {beta}"
                    )));
                }
                Ok(())
            }
            Self::GaussianVarianceMix { sigma2, a, p } => {
                positive("sigma2", sigma2)?;
                finite("a", a)?;
                finite("p", p)?;
                if a < 0.0 {
                    return Err(Error::InvalidParameter(format!("a must be >= 0, got {a}")));
                }
                if !(p > 0.0 && p < 1.0) {
                    return Err(Error::InvalidParameter(format!("p must be in (0, 1), got {p}")));
                }
                if sigma2 - a * p / (1.0 - p) < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "second regime variance sigma2 - a p/(1-p) = {} is negative",
                        sigma2 - a * p / (1.0 - p)
                    )));
                }
                Ok(())
            }
            Self::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => {
                finite("mu1", mu1)?;
                finite("mu2", mu2)?;
                positive("sigma1", sigma1)?;
                positive("sigma2", sigma2)?;
                finite("p", p)?;
                if p > 0.0 && p < 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("p must be in (0, 1), got {p}")))
                }
            }
        }
    }

    /// Exact mean, available for every family.
    pub fn mean(&self) -> f64 {
        match *self {
            Self::Gaussian { mu, .. } => mu,
            Self::StudentT { .. } => 0.0,
            Self::Pareto { alpha, xmin } => alpha * xmin / (alpha - 1.0),
            Self::Exponential { lambda } => 1.0 / lambda,
            Self::Gamma { shape, rate } => shape / rate,
            Self::Lognormal { mu, sigma } => (mu + 0.5 * sigma * sigma).exp(),
            Self::Stable { mu, .. } => mu,
            Self::GaussianVarianceMix { .. } => 0.0,
            Self::GaussianMeanMix { mu1, mu2, p, .. } => p * mu1 + (1.0 - p) * mu2,
        }
    }

    /// Exact E|X - EX| where a closed form exists.
    ///
    /// Student t away from alpha = 3 and skewed stable laws have no closed
    /// form here and return `FallbackRequired` so the caller can route to the
    /// numeric engines instead.
    pub fn mad1(&self) -> Result<f64> {
        match *self {
            Self::Gaussian { sigma, .. } => Ok(sigma * (2.0 / PI).sqrt()),
            Self::StudentT { alpha, scale } => {
                if alpha == 3.0 {
                    Ok(scale * 2.0 * 3.0_f64.sqrt() / PI)
                } else {
                    Err(Error::FallbackRequired(format!(
                        "student_t mean deviation has a closed form only at alpha = 3, got {alpha}"
                    )))
                }
            }
            Self::Pareto { alpha, xmin } => {
                Ok(2.0 * xmin * (alpha - 1.0).powf(alpha - 2.0) * alpha.powf(1.0 - alpha))
            }
            Self::Exponential { lambda } => Ok(2.0 / (std::f64::consts::E * lambda)),
            Self::Gamma { shape, rate } => {
                let k = shape;
                Ok((2.0_f64.ln() + k * k.ln() - k - ln_gamma(k)).exp() / rate)
            }
            Self::Lognormal { mu, sigma } => {
                Ok(2.0 * (mu + 0.5 * sigma * sigma).exp() * erf(sigma / (2.0 * SQRT_2)))
            }
            Self::Stable { alpha_tilde, beta, sigma, .. } => {
                // beta is inert at alpha_tilde = 2 (the law is Gaussian).
                if beta == 0.0 || alpha_tilde == 2.0 {
                    Ok(2.0 / PI * (ln_gamma(1.0 - 1.0 / alpha_tilde)).exp() * sigma)
                } else {
                    Err(Error::FallbackRequired(format!(
                        "skewed stable (beta = {beta}) mean deviation is not closed form here"
                    )))
                }
            }
            Self::GaussianVarianceMix { p, .. } => {
                let (sa, sb) = self.variance_mix_sds();
                Ok((2.0 / PI).sqrt() * (p * sa + (1.0 - p) * sb))
            }
            Self::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => {
                let m = self.mean();
                Ok(p * folded_abs_mean(mu1 - m, sigma1)
                    + (1.0 - p) * folded_abs_mean(mu2 - m, sigma2))
            }
        }
    }

    /// Probability density at x. The stable family is not supported (no
    /// closed-form density exists away from special points).
    pub fn pdf(&self, x: f64) -> Result<f64> {
        match *self {
            Self::Gaussian { mu, sigma } => Ok(normal_pdf(x, mu, sigma)),
            Self::StudentT { alpha, scale } => {
                let z = x / scale;
                let log_norm = ln_gamma((alpha + 1.0) / 2.0)
                    - ln_gamma(alpha / 2.0)
                    - 0.5 * (alpha * PI).ln();
                let log_kernel = -(alpha + 1.0) / 2.0 * (z * z / alpha).ln_1p();
                Ok((log_norm + log_kernel).exp() / scale)
            }
            Self::Pareto { alpha, xmin } => {
                if x < xmin {
                    Ok(0.0)
                } else {
                    Ok(alpha * xmin.powf(alpha) * x.powf(-alpha - 1.0))
                }
            }
            Self::Exponential { lambda } => {
                if x < 0.0 {
                    Ok(0.0)
                } else {
                    Ok(lambda * (-lambda * x).exp())
                }
            }
            Self::Gamma { shape, rate } => {
                if x < 0.0 {
                    return Ok(0.0);
                }
                if x == 0.0 {
                    return Ok(match shape {
                        k if k > 1.0 => 0.0,
                        k if k == 1.0 => rate,
                        _ => f64::INFINITY,
                    });
                }
                Ok((shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - ln_gamma(shape)).exp())
            }
            Self::Lognormal { mu, sigma } => {
                if x <= 0.0 {
                    Ok(0.0)
                } else {
                    let z = (x.ln() - mu) / sigma;
                    Ok((-0.5 * z * z).exp() / (x * sigma * (2.0 * PI).sqrt()))
                }
            }
            Self::Stable { .. } => Err(Error::Unsupported(
                "stable density evaluation is not provided".into(),
            )),
            Self::GaussianVarianceMix { p, .. } => {
                let (sa, sb) = self.variance_mix_sds();
                if sb == 0.0 {
                    return Err(Error::Unsupported(
                        "variance mix with a zero-variance regime has an atom at 0, no density"
                            .into(),
                    ));
                }
                Ok(p * normal_pdf(x, 0.0, sa) + (1.0 - p) * normal_pdf(x, 0.0, sb))
            }
            Self::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => {
                Ok(p * normal_pdf(x, mu1, sigma1) + (1.0 - p) * normal_pdf(x, mu2, sigma2))
            }
        }
    }

    /// Characteristic function E exp(itX) for the families that have one in
    /// closed form: Gaussian, Student t at alpha = 3, Exponential, Gamma,
    /// Stable, and the two Gaussian mixtures.
    pub fn cf(&self, t: f64) -> Result<Complex64> {
        match *self {
            Self::Gaussian { mu, sigma } => {
                Ok(Complex64::new(-0.5 * sigma * sigma * t * t, mu * t).exp())
            }
            Self::StudentT { alpha, scale } => {
                if alpha == 3.0 {
                    let u = 3.0_f64.sqrt() * scale * t.abs();
                    Ok(Complex64::new((1.0 + u) * (-u).exp(), 0.0))
                } else {
                    Err(Error::Unsupported(format!(
                        "student_t characteristic function is only available at alpha = 3, got {alpha}"
                    )))
                }
            }
            Self::Exponential { lambda } => {
                Ok(Complex64::new(1.0, 0.0) / Complex64::new(1.0, -t / lambda))
            }
            Self::Gamma { shape, rate } => {
                let base = Complex64::new(1.0, -t / rate);
                Ok((-shape * base.ln()).exp())
            }
            Self::Stable { alpha_tilde, beta, mu, sigma } => {
                let at = (sigma * t).abs().powf(alpha_tilde);
                let skew = beta * stable_skew_tan(alpha_tilde) * t.signum();
                Ok(Complex64::new(-at, mu * t + at * skew).exp())
            }
            Self::Lognormal { .. } => Err(Error::Unsupported(
                "lognormal characteristic function has no usable closed form".into(),
            )),
            Self::Pareto { .. } => Err(Error::Unsupported(
                "pareto characteristic function is not provided".into(),
            )),
            Self::GaussianVarianceMix { p, .. } => {
                let (sa, sb) = self.variance_mix_sds();
                let re = p * (-0.5 * sa * sa * t * t).exp()
                    + (1.0 - p) * (-0.5 * sb * sb * t * t).exp();
                Ok(Complex64::new(re, 0.0))
            }
            Self::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => {
                let c1 = Complex64::new(-0.5 * sigma1 * sigma1 * t * t, mu1 * t).exp();
                let c2 = Complex64::new(-0.5 * sigma2 * sigma2 * t * t, mu2 * t).exp();
                Ok(p * c1 + (1.0 - p) * c2)
            }
        }
    }

    /// Whether the law is symmetric about its mean.
    pub fn is_symmetric(&self) -> bool {
        match *self {
            Self::Gaussian { .. } | Self::StudentT { .. } | Self::GaussianVarianceMix { .. } => {
                true
            }
            Self::Stable { alpha_tilde, beta, .. } => beta == 0.0 || alpha_tilde == 2.0,
            Self::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => {
                mu1 == mu2 || (p == 0.5 && sigma1 == sigma2)
            }
            _ => false,
        }
    }

    /// Power-law tail exponent, where the survival function decays like
    /// x^-alpha. None for families with lighter-than-power tails (and for the
    /// Gaussian stable endpoint).
    pub fn tail_exponent(&self) -> Option<f64> {
        match *self {
            Self::StudentT { alpha, .. } => Some(alpha),
            Self::Pareto { alpha, .. } => Some(alpha),
            Self::Stable { alpha_tilde, .. } if alpha_tilde < 2.0 => Some(alpha_tilde),
            _ => None,
        }
    }

    /// Index of the stable basin the n-fold sum converges to: min(alpha, 2)
    /// for power-law tails, 2 otherwise.
    pub fn basin_index(&self) -> f64 {
        self.tail_exponent().map_or(2.0, |a| a.min(2.0))
    }

    /// The same law scaled by c > 0, when the family is closed under scaling.
    pub fn scaled_by(&self, c: f64) -> Option<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return None;
        }
        Some(match *self {
            Self::Gaussian { mu, sigma } => Self::Gaussian { mu: c * mu, sigma: c * sigma },
            Self::StudentT { alpha, scale } => Self::StudentT { alpha, scale: c * scale },
            Self::Pareto { alpha, xmin } => Self::Pareto { alpha, xmin: c * xmin },
            Self::Exponential { lambda } => Self::Exponential { lambda: lambda / c },
            Self::Gamma { shape, rate } => Self::Gamma { shape, rate: rate / c },
            Self::Lognormal { mu, sigma } => Self::Lognormal { mu: mu + c.ln(), sigma },
            Self::Stable { alpha_tilde, beta, mu, sigma } => {
                Self::Stable { alpha_tilde, beta, mu: c * mu, sigma: c * sigma }
            }
            Self::GaussianVarianceMix { sigma2, a, p } => {
                Self::GaussianVarianceMix { sigma2: c * c * sigma2, a: c * c * a, p }
            }
            Self::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => Self::GaussianMeanMix {
                mu1: c * mu1,
                mu2: c * mu2,
                sigma1: c * sigma1,
                sigma2: c * sigma2,
                p,
            },
        })
    }

    /// The same law shifted by d, for families closed under translation.
    pub fn shifted_by(&self, d: f64) -> Option<Self> {
        if !d.is_finite() {
            return None;
        }
        Some(match *self {
            Self::Gaussian { mu, sigma } => Self::Gaussian { mu: mu + d, sigma },
            Self::Stable { alpha_tilde, beta, mu, sigma } => {
                Self::Stable { alpha_tilde, beta, mu: mu + d, sigma }
            }
            Self::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => Self::GaussianMeanMix {
                mu1: mu1 + d,
                mu2: mu2 + d,
                sigma1,
                sigma2,
                p,
            },
            _ => return None,
        })
    }

    /// i.i.d. draws, bit-for-bit reproducible for a fixed (seed, stream) pair.
    pub fn sample(&self, count: usize, seed: u64, stream: u64) -> Result<Vec<f64>> {
        self.validate()?;
        if count == 0 {
            return Err(Error::InvalidParameter("count must be >= 1".into()));
        }
        let sampler = Sampler::new(self)?;
        let mut rng = stream_rng(seed, stream);
        Ok((0..count).map(|_| sampler.draw(&mut rng)).collect())
    }

    fn variance_mix_sds(&self) -> (f64, f64) {
        match *self {
            Self::GaussianVarianceMix { sigma2, a, p } => {
                ((sigma2 + a).sqrt(), (sigma2 - a * p / (1.0 - p)).max(0.0).sqrt())
            }
            _ => unreachable!("variance_mix_sds on a non-mix spec"),
        }
    }
}

fn normal_pdf(x: f64, mu: f64, sigma: f64) -> f64 {
    let z = (x - mu) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
}

/// E|N(d, sigma^2)| via the folded normal mean; even in d.
fn folded_abs_mean(d: f64, sigma: f64) -> f64 {
    sigma * (2.0 / PI).sqrt() * (-d * d / (2.0 * sigma * sigma)).exp()
        + d * erf(d / (sigma * SQRT_2))
}

/// tan(pi a / 2) with the exact zero at a = 2 (tan(pi) would round to -1e-16).
fn stable_skew_tan(alpha_tilde: f64) -> f64 {
    if alpha_tilde == 2.0 {
        0.0
    } else {
        (PI * alpha_tilde / 2.0).tan()
    }
}

/// Prepared per-family sampler, shared by the Monte Carlo engine.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Sampler {
    Gaussian(Normal<f64>),
    StudentT { t: StudentTDist<f64>, scale: f64 },
    Pareto(ParetoDist<f64>),
    Exponential(Exp<f64>),
    Gamma(GammaDist<f64>),
    Lognormal(LogNormal<f64>),
    Stable(StableSampler),
    VarianceMix { p: f64, sd_a: f64, sd_b: f64 },
    MeanMix { p: f64, n1: Normal<f64>, n2: Normal<f64> },
}

impl Sampler {
    pub(crate) fn new(spec: &DistributionSpec) -> Result<Self> {
        let bad = |e: &dyn std::fmt::Debug| Error::InvalidParameter(format!("{e:?}"));
        Ok(match *spec {
            DistributionSpec::Gaussian { mu, sigma } => {
                Self::Gaussian(Normal::new(mu, sigma).map_err(|e| bad(&e))?)
            }
            DistributionSpec::StudentT { alpha, scale } => Self::StudentT {
                t: StudentTDist::new(alpha).map_err(|e| bad(&e))?,
                scale,
            },
            DistributionSpec::Pareto { alpha, xmin } => {
                Self::Pareto(ParetoDist::new(xmin, alpha).map_err(|e| bad(&e))?)
            }
            DistributionSpec::Exponential { lambda } => {
                Self::Exponential(Exp::new(lambda).map_err(|e| bad(&e))?)
            }
            DistributionSpec::Gamma { shape, rate } => {
                Self::Gamma(GammaDist::new(shape, 1.0 / rate).map_err(|e| bad(&e))?)
            }
            DistributionSpec::Lognormal { mu, sigma } => {
                Self::Lognormal(LogNormal::new(mu, sigma).map_err(|e| bad(&e))?)
            }
            DistributionSpec::Stable { alpha_tilde, beta, mu, sigma } => {
                Self::Stable(StableSampler::new(alpha_tilde, beta, mu, sigma))
            }
            DistributionSpec::GaussianVarianceMix { p, .. } => {
                let (sd_a, sd_b) = spec.variance_mix_sds();
                Self::VarianceMix { p, sd_a, sd_b }
            }
            DistributionSpec::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => Self::MeanMix {
                p,
                n1: Normal::new(mu1, sigma1).map_err(|e| bad(&e))?,
                n2: Normal::new(mu2, sigma2).map_err(|e| bad(&e))?,
            },
        })
    }

    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Gaussian(d) => d.sample(rng),
            Self::StudentT { t, scale } => scale * t.sample(rng),
            Self::Pareto(d) => d.sample(rng),
            Self::Exponential(d) => d.sample(rng),
            Self::Gamma(d) => d.sample(rng),
            Self::Lognormal(d) => d.sample(rng),
            Self::Stable(s) => s.draw(rng),
            Self::VarianceMix { p, sd_a, sd_b } => {
                let sd = if rng.random::<f64>() < p { sd_a } else { sd_b };
                let z: f64 = StandardNormal.sample(rng);
                sd * z
            }
            Self::MeanMix { p, n1, n2 } => {
                if rng.random::<f64>() < p {
                    n1.sample(rng)
                } else {
                    n2.sample(rng)
                }
            }
        }
    }
}

/// Chambers-Mallows-Stuck sampler for the stable law, specialized to
/// alpha in (1, 2]. With b = arctan(beta tan(pi alpha/2))/alpha the argument
/// of the second cosine stays strictly inside (-pi/2, pi/2), so both powf
/// bases below are strictly positive.
#[derive(Debug, Clone, Copy)]
pub(crate) struct StableSampler {
    alpha: f64,
    b: f64,
    s: f64,
    inv_alpha: f64,
    c2: f64,
    mu: f64,
    sigma: f64,
}

impl StableSampler {
    fn new(alpha_tilde: f64, beta: f64, mu: f64, sigma: f64) -> Self {
        let tb = beta * stable_skew_tan(alpha_tilde);
        StableSampler {
            alpha: alpha_tilde,
            b: tb.atan() / alpha_tilde,
            s: (1.0 + tb * tb).powf(0.5 / alpha_tilde),
            inv_alpha: 1.0 / alpha_tilde,
            c2: (1.0 - alpha_tilde) / alpha_tilde,
            mu,
            sigma,
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = Open01.sample(rng);
        let v = PI * (u - 0.5);
        let e: f64 = Open01.sample(rng);
        let w = -e.ln();
        let avb = self.alpha * (v + self.b);
        let x = self.s * avb.sin() / v.cos().powf(self.inv_alpha)
            * ((v - avb).cos() / w).powf(self.c2);
        self.mu + self.sigma * x
    }
}
