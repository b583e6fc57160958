//! Closed-form and semi-closed-form results for specific families: the
//! two-summand kappa formulas, the full cubic-Student and exponential/gamma
//! sum machinery, lognormal cumulants and bounds, and the mean-mixture
//! negative-kappa case.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadratureConfig};
use crate::special::{erf, exp_en_neg, ln_gamma, q_nn};

const SQRT_3: f64 = 1.7320508075688772;

fn check(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

/// kappa(1,2) for the Student t with tail exponent alpha > 1.
///
/// The two-summand deviation ratio is M(2)/M(1) =
/// 2^(2-alpha) sqrt(pi) Gamma(alpha - 1/2) / Gamma(alpha/2)^2.
pub fn kappa1_student(alpha: f64) -> Result<f64> {
    check(alpha.is_finite() && alpha > 1.0, format!("alpha must be > 1, got {alpha}"))?;
    let log_ratio =
        (2.0 - alpha) * LN_2 + 0.5 * PI.ln() + ln_gamma(alpha - 0.5) - 2.0 * ln_gamma(alpha / 2.0);
    Ok(2.0 - 2.0 * LN_2 / (2.0 * log_ratio))
}

/// kappa(1,2) for the exponential (any rate): 2 - log 2 / (2 log 2 - 1).
pub fn kappa1_exponential() -> f64 {
    2.0 - LN_2 / (2.0 * LN_2 - 1.0)
}

/// kappa(1,2) for the one-tailed Pareto with tail exponent alpha > 1,
/// by direct quadrature of the two-summand convolution.
///
/// With xmin = 1 (kappa is scale free), mean m = alpha/(alpha-1) and
/// c = 2m, splitting E(S-c)+ at the point where the conditional summand
/// range leaves the support gives
///   E(S-c)+ = m int_1^(c-1) x^(-alpha-1) (c-x)^(1-alpha) dx
///           + alpha (c-1)^(1-alpha)/(alpha-1) - m (c-1)^(-alpha),
/// and M(2) = 2 E(S-c)+ because S - c is centered.
pub fn kappa1_pareto(alpha: f64, quad: &QuadratureConfig) -> Result<f64> {
    check(alpha.is_finite() && alpha > 1.0, format!("alpha must be > 1, got {alpha}"))?;
    let m = alpha / (alpha - 1.0);
    let c = 2.0 * m;
    let conv = integrate(
        |x| x.powf(-alpha - 1.0) * (c - x).powf(1.0 - alpha),
        1.0,
        c - 1.0,
        quad,
    )?;
    let e_plus = m * conv.value + alpha * (c - 1.0).powf(1.0 - alpha) / (alpha - 1.0)
        - m * (c - 1.0).powf(-alpha);
    let mad2 = 2.0 * e_plus;
    let mad1 = 2.0 * (alpha - 1.0).powf(alpha - 2.0) * alpha.powf(1.0 - alpha);
    let ratio = mad2 / mad1;
    if !(ratio.is_finite() && ratio > 1.0) {
        return Err(Error::Numerical(format!(
            "pareto deviation ratio came out as {ratio} at alpha = {alpha}"
        )));
    }
    Ok(2.0 - LN_2 / ratio.ln())
}

/// The same kappa(1,2) through the incomplete-beta representation of the
/// convolution (the beta integrals are evaluated by direct quadrature since
/// their parameters are negative). Slower and less robust than
/// `kappa1_pareto`; kept as an independent cross-check of that derivation.
pub fn kappa1_pareto_beta_form(alpha: f64, quad: &QuadratureConfig) -> Result<f64> {
    check(alpha.is_finite() && alpha > 1.0, format!("alpha must be > 1, got {alpha}"))?;
    let span = 2.0 / (alpha - 1.0);
    let inner_quad = QuadratureConfig { rel_tol: 1e-11, ..*quad };
    let outer = integrate(
        |y| {
            let beta_piece = integrate(
                |t| t.powf(-alpha - 1.0) * (1.0 - t).powf(-alpha),
                1.0 / (y + 2.0),
                (y + 1.0) / (y + 2.0),
                &inner_quad,
            )
            .map(|q| q.value)
            .unwrap_or(f64::NAN);
            2.0 * alpha * alpha * (y + 2.0).powf(-2.0 * alpha - 1.0) * (span - y) * beta_piece
        },
        0.0,
        span,
        quad,
    )?;
    let ratio = (alpha - 1.0).powf(2.0 - alpha) * alpha.powf(alpha - 1.0) * outer.value;
    if !(ratio.is_finite() && ratio > 1.0) {
        return Err(Error::Numerical(format!(
            "pareto beta-form ratio came out as {ratio} at alpha = {alpha}"
        )));
    }
    Ok(2.0 - LN_2 / ratio.ln())
}

/// kappa(1,2) for the zero-mean Gaussian whose variance switches to
/// sigma^2 + a with probability p (and to the variance-preserving complement
/// otherwise). sigma is the base standard deviation.
pub fn kappa1_switching_variance(sigma: f64, a: f64, p: f64) -> Result<f64> {
    check(sigma.is_finite() && sigma > 0.0, format!("sigma must be > 0, got {sigma}"))?;
    check(a.is_finite() && a >= 0.0, format!("a must be >= 0, got {a}"))?;
    check(p.is_finite() && p > 0.0 && p < 1.0, format!("p must be in (0, 1), got {p}"))?;
    let s2 = sigma * sigma;
    let vb = s2 - a * p / (1.0 - p);
    check(vb >= 0.0, format!("complement variance sigma^2 - a p/(1-p) = {vb} is negative"))?;
    let sa = (s2 + a).sqrt();
    let sb = vb.sqrt();
    // Two-summand regimes (A,A), (A,B), (B,B); sqrt(2/pi) cancels in the ratio.
    let m2 = p * p * std::f64::consts::SQRT_2 * sa
        + 2.0 * p * (1.0 - p) * (sa * sa + sb * sb).sqrt()
        + (1.0 - p) * (1.0 - p) * std::f64::consts::SQRT_2 * sb;
    let m1 = p * sa + (1.0 - p) * sb;
    Ok(2.0 - LN_2 / (m2 / m1).ln())
}

/// kappa(1,2) for the lognormal by the conserved-density approximation;
/// identical to `lognormal_kappa_star` at n = 2.
pub fn kappa1_lognormal_approx(sigma: f64) -> Result<f64> {
    lognormal_kappa_star(sigma, 2)
}

/// M(n) for sums of the cubic Student t (alpha = 3, unit scale).
///
/// M(n) = (2 sqrt(3)/pi) n! e^n n^-n P[Poisson(n) <= n-1], evaluated in log
/// space; the Poisson probability switches to an asymptotic expansion at
/// large n, so the formula is stable from n = 1 up past 10^8.
pub fn cubic_mad(n: u64) -> Result<f64> {
    check(n >= 1, "n must be >= 1")?;
    let nf = n as f64;
    let growth = ln_gamma(nf + 1.0) + nf - nf * nf.ln();
    Ok(2.0 * SQRT_3 / PI * growth.exp() * q_nn(n))
}

/// kappa(1,n) for the cubic Student t.
pub fn cubic_kappa(n: u64) -> Result<f64> {
    check(n >= 2, "n must be >= 2")?;
    let nf = n as f64;
    let log_ratio = ln_gamma(nf + 1.0) + nf - nf * nf.ln() + q_nn(n).ln();
    Ok(2.0 - nf.ln() / log_ratio)
}

/// Density of the n-fold sum of the cubic Student t at y, through the
/// generalized exponential integral: p(y) = Re[e^z E_-n(z)] / (sqrt(3) pi)
/// with z = n + i y/sqrt(3). Exact up to rounding; cost grows linearly in n.
pub fn cubic_sum_pdf(y: f64, n: u64) -> Result<f64> {
    check(n >= 1, "n must be >= 1")?;
    check(y.is_finite(), format!("y must be finite, got {y}"))?;
    let z = Complex64::new(n as f64, y / SQRT_3);
    let w = exp_en_neg(n, z);
    let p = w.re / (SQRT_3 * PI);
    if p < 0.0 {
        if p > -1e-10 {
            return Ok(0.0);
        }
        return Err(Error::Numerical(format!(
            "cubic sum density came out negative ({p}) at y = {y}, n = {n}"
        )));
    }
    Ok(p)
}

/// kappa(1,n) for the exponential (any rate):
/// 2 - log n / (n log n - n - log Gamma(n) + 1).
pub fn exponential_kappa_n(n: u64) -> Result<f64> {
    check(n >= 2, "n must be >= 2")?;
    let nf = n as f64;
    Ok(2.0 - nf.ln() / (nf * nf.ln() - nf - ln_gamma(nf) + 1.0))
}

/// First four cumulants of the n-fold lognormal sum, with the derived shape
/// measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LognormalCumulants {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    pub n: u64,
    pub mu: f64,
    pub sigma: f64,
}

pub fn lognormal_cumulants(mu: f64, sigma: f64, n: u64) -> Result<LognormalCumulants> {
    check(mu.is_finite(), format!("mu must be finite, got {mu}"))?;
    check(sigma.is_finite() && sigma > 0.0, format!("sigma must be > 0, got {sigma}"))?;
    check(n >= 1, "n must be >= 1")?;
    let nf = n as f64;
    let s2 = sigma * sigma;
    let w = s2.exp();
    let k1 = nf * (mu + 0.5 * s2).exp();
    let k2 = nf * (w - 1.0) * (2.0 * mu + s2).exp();
    let k3 = nf * (w - 1.0).powi(2) * (w + 2.0) * (3.0 * mu + 1.5 * s2).exp();
    let k4_shape = w * w * (w * (w + 2.0) + 3.0) - 6.0;
    let k4 = nf * k4_shape * (w - 1.0).powi(2) * (4.0 * mu + 2.0 * s2).exp();
    Ok(LognormalCumulants {
        k1,
        k2,
        k3,
        k4,
        skewness: (w - 1.0).sqrt() * (w + 2.0) / nf.sqrt(),
        kurtosis: 3.0 + k4_shape / nf,
        n,
        mu,
        sigma,
    })
}

/// kappa(1,n) for the lognormal under the approximation that sums stay
/// lognormal with matched mean and variance:
/// 2 - log n / log(n erf(sqrt(log((n + w - 1)/n))/(2 sqrt 2)) / erf(sigma/(2 sqrt 2)))
/// with w = e^(sigma^2). Lies in [0, 1] and increases in sigma.
pub fn lognormal_kappa_star(sigma: f64, n: u64) -> Result<f64> {
    check(sigma.is_finite() && sigma > 0.0, format!("sigma must be > 0, got {sigma}"))?;
    check(n >= 2, "n must be >= 2")?;
    let nf = n as f64;
    let s2 = sigma * sigma;
    // log((n + w - 1)/n) without overflow for large sigma: log1p((w-1)/n)
    // when w is representable, s2 - log n beyond that.
    let log_arg = if s2 < 700.0 {
        (s2.exp_m1() / nf).ln_1p()
    } else {
        s2 - nf.ln()
    };
    let num = nf * erf(log_arg.sqrt() / (2.0 * std::f64::consts::SQRT_2));
    let den = erf(sigma / (2.0 * std::f64::consts::SQRT_2));
    Ok(2.0 - nf.ln() / (num / den).ln())
}

/// Kurtosis of the equal-weight two-Gaussian mixture as a function of the
/// mean gap and the component standard deviations.
pub fn mixture_kurtosis(mu1: f64, mu2: f64, sigma1: f64, sigma2: f64) -> f64 {
    let d2 = (mu1 - mu2) * (mu1 - mu2);
    let v_diff = sigma1 * sigma1 - sigma2 * sigma2;
    let denom = d2 + 2.0 * (sigma1 * sigma1 + sigma2 * sigma2);
    3.0 - 2.0 * (d2 * d2 - 6.0 * v_diff * v_diff) / (denom * denom)
}

/// kappa(1,2) for the equal-weight mixture of N(mu1, sigma^2) and
/// N(mu2, sigma^2) as a function of d = mu1 - mu2. Negative for wide d.
///
/// Evaluated as 2 + log 4 / (log pi - 2 log R) with the common exp(d^2/(4 s^2))
/// factor cancelled from the ratio R so large d cannot overflow.
pub fn mean_mixture_kappa1(d: f64, sigma: f64) -> Result<f64> {
    check(d.is_finite(), format!("d must be finite, got {d}"))?;
    check(sigma.is_finite() && sigma > 0.0, format!("sigma must be > 0, got {sigma}"))?;
    let d = d.abs();
    let s = sigma;
    let num = PI.sqrt() * d * erf(d / (2.0 * s))
        + 2.0 * s * (1.0 + (-d * d / (4.0 * s * s)).exp());
    let den = d * erf(d / (2.0 * std::f64::consts::SQRT_2 * s))
        + 2.0 * (2.0 / PI).sqrt() * s * (-d * d / (8.0 * s * s)).exp();
    let log_denom = PI.ln() - 2.0 * (num / den).ln();
    if log_denom == 0.0 {
        return Err(Error::Numerical("degenerate ratio in the mixture kappa".into()));
    }
    Ok(2.0 + 2.0 * LN_2 / log_denom)
}
