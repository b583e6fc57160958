//! Four-cumulant Pearson fit to summed-lognormal densities, with the
//! De Moivre shortcut for the mean absolute deviation of the fitted law.
//!
//! The fit serves the small-sigma regime (roughly sigma < 0.3) where four
//! moments pin the density well. The coefficients put the quadratic's roots
//! on the real line for those targets, so the solution exponent integrates
//! to a log branch rather than an arctan; both branches are handled, and the
//! support is whichever interval around the mean keeps the quadratic
//! positive.

use serde::{Deserialize, Serialize};
use std::f64::consts::LN_2;

use crate::analytic::lognormal_cumulants;
use crate::error::{Error, Result};
use crate::quad::{integrate_to_inf, QuadratureConfig};
use crate::special::ln_gamma;

fn ln_beta(p: f64, q: f64) -> f64 {
    ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q)
}

/// Coefficients of the fitted Pearson ODE
/// f'(x) = -(a0 + a1 x)/(b0 + b1 x + b2 x^2) f(x), with a1 = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PearsonIVFit {
    pub a0: f64,
    pub a1: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    /// Mean of the fitted density: (b1 - a0)/(1 - 2 b2).
    pub m: f64,
    /// Density value at the mean; pdf(x) = normalization * exp(shape(x))
    /// with shape relative to the mean point.
    pub normalization: f64,
    /// (mu, sigma, n) of the summed lognormal being approximated.
    pub target: (f64, f64, u64),
    /// Set when sigma exceeds the recommended range for this approximation.
    pub sigma_warning: bool,
}

impl PearsonIVFit {
    fn quadratic(&self, x: f64) -> f64 {
        self.b0 + x * (self.b1 + x * self.b2)
    }

    /// Support endpoints: the maximal interval containing the mean on which
    /// the quadratic stays positive.
    fn support(&self) -> (f64, f64) {
        let disc = self.b1 * self.b1 - 4.0 * self.b0 * self.b2;
        if disc <= 0.0 {
            return (f64::NEG_INFINITY, f64::INFINITY);
        }
        let root = disc.sqrt();
        let lo = (-self.b1 - root) / (2.0 * self.b2);
        let hi = (-self.b1 + root) / (2.0 * self.b2);
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        if self.m > hi {
            (hi, f64::INFINITY)
        } else if self.m < lo {
            (f64::NEG_INFINITY, lo)
        } else {
            (lo, hi)
        }
    }

    /// log f(x) - log f(m): minus the integral of (a0 + t)/Q(t) from m to x,
    /// via the closed-form antiderivative on the branch the roots dictate.
    fn shape(&self, x: f64) -> f64 {
        let g = |x: f64| {
            let log_part = self.quadratic(x).ln() / (2.0 * self.b2);
            let disc = 4.0 * self.b0 * self.b2 - self.b1 * self.b1;
            let lin = self.a0 - self.b1 / (2.0 * self.b2);
            let rational = if disc > 0.0 {
                let root = disc.sqrt();
                2.0 / root * ((2.0 * self.b2 * x + self.b1) / root).atan()
            } else {
                let root = (-disc).sqrt();
                let u = 2.0 * self.b2 * x + self.b1;
                ((u - root) / (u + root)).abs().ln() / root
            };
            log_part + lin * rational
        };
        g(self.m) - g(x)
    }

    /// Density of the fitted law.
    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if x <= lo || x >= hi {
            return 0.0;
        }
        let s = self.shape(x);
        if s.is_finite() {
            self.normalization * s.exp()
        } else {
            0.0
        }
    }
}

/// Fit the Pearson coefficients to the first four cumulants of the n-fold
/// lognormal(mu, sigma) sum, per the closed-form parameter expressions, and
/// normalize the implied density numerically.
pub fn pearson_fit(mu: f64, sigma: f64, n: u64) -> Result<PearsonIVFit> {
    let cum = lognormal_cumulants(mu, sigma, n)?;
    let nf = n as f64;
    let s2 = sigma * sigma;
    let w = s2.exp();
    let e1 = (mu + 0.5 * s2).exp();
    let d = 2.0 * (6.0 * (nf - 1.0) + w * w * (w * (5.0 * w + 4.0) - 3.0));

    let a0 = e1
        * (-12.0 * nf * nf + (3.0 - 10.0 * nf) * w.powi(4) + 6.0 * (nf - 1.0) * w
            + 12.0 * (nf - 1.0) * w * w
            - (8.0 * nf + 1.0) * w.powi(3)
            + 3.0 * w.powi(5)
            + w.powi(6)
            + 12.0)
        / d;
    let b2 = w * w * (w - 1.0) * (2.0 * w + 3.0) / d;
    let b1 = (w - 1.0)
        * e1
        * (w * (w * (w * (-4.0 * nf + w * (w + 4.0) + 7.0) - 6.0 * nf + 6.0) + 6.0 * (nf - 1.0))
            + 12.0 * (nf - 1.0))
        / d;
    let b0 = -nf
        * (w - 1.0)
        * (2.0 * (mu + s2)).exp()
        * (w * (-2.0 * (nf - 1.0) * w - 3.0 * nf + w.powi(3) + 3.0) + 6.0 * (nf - 1.0))
        / d;

    if !(b2 > 0.0 && b2 < 1.0) {
        return Err(Error::Numerical(format!(
            "fitted density is not integrable: b2 = {b2} outside (0, 1)"
        )));
    }
    if (1.0 - 2.0 * b2).abs() < 1e-12 {
        return Err(Error::Numerical("degenerate fit: a1 - 2 b2 is zero".into()));
    }
    let m = (b1 - a0) / (1.0 - 2.0 * b2);

    let mut fit = PearsonIVFit {
        a0,
        a1: 1.0,
        b0,
        b1,
        b2,
        m,
        normalization: 1.0,
        target: (mu, sigma, n),
        sigma_warning: sigma > 0.3,
    };
    if !(fit.quadratic(m) > 0.0) {
        return Err(Error::Numerical(format!(
            "fitted quadratic is not positive at the mean ({m})"
        )));
    }
    // Sanity: the fit reproduces the target mean by construction.
    if ((m - cum.k1) / cum.k1).abs() > 1e-8 {
        return Err(Error::Numerical(format!(
            "fit mean {m} drifted from the target mean {}",
            cum.k1
        )));
    }

    // Normalization. With real roots the solution is the two-power kernel
    // |x - r1|^ea |x - r2|^eb, whose integral over the half-line support is
    // an exact beta function; quadrature is hopeless there once an endpoint
    // exponent sits within a hair of -1 (sigma near 2 puts it at -0.9999).
    // Complex roots keep the numeric route.
    let disc = b1 * b1 - 4.0 * b0 * b2;
    if disc > 0.0 {
        let root = disc.sqrt();
        let r1 = (-b1 - root) / (2.0 * b2);
        let r2 = (-b1 + root) / (2.0 * b2);
        let ea = -(a0 + r1) / (b2 * (r1 - r2));
        let eb = -(a0 + r2) / (b2 * (r2 - r1));
        if !(ea + eb < -1.0 && if m > r2 { eb > -1.0 } else { ea > -1.0 }) {
            return Err(Error::Numerical(format!(
                "fitted density is not integrable: endpoint exponents ({ea}, {eb})"
            )));
        }
        // log of the normalization integral, anchored so the kernel is 1
        // at the mean (the convention shape() uses).
        let ln_total = if m > r2 {
            (ea + eb + 1.0) * (r2 - r1).ln() + ln_beta(eb + 1.0, -ea - eb - 1.0)
                - ea * (m - r1).ln()
                - eb * (m - r2).ln()
        } else {
            (ea + eb + 1.0) * (r2 - r1).ln() + ln_beta(ea + 1.0, -ea - eb - 1.0)
                - ea * (r1 - m).ln()
                - eb * (r2 - m).ln()
        };
        if !ln_total.is_finite() {
            return Err(Error::Numerical(format!(
                "normalization came out as exp({ln_total}) for sigma = {sigma}, n = {n}"
            )));
        }
        fit.normalization = (-ln_total).exp();
        return Ok(fit);
    }

    let quad = QuadratureConfig { rel_tol: 1e-11, ..QuadratureConfig::default() };
    let kernel = |x: f64| {
        let s = fit.shape(x);
        if s.is_finite() {
            s.exp()
        } else {
            0.0
        }
    };
    let total = integrate_to_inf(kernel, m, &quad)?.value
        + integrate_to_inf(move |u| kernel(2.0 * m - u), m, &quad)?.value;
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::Numerical(format!(
            "normalization integral came out as {total} for sigma = {sigma}, n = {n}"
        )));
    }
    fit.normalization = 1.0 / total;
    Ok(fit)
}

/// Mean absolute deviation of the fitted density about its mean, by the
/// De Moivre identity E|X - m| = 2 (b0 + b1 m + b2 m^2) f(m) / (a1 - 2 b2).
pub fn pearson_mad(fit: &PearsonIVFit) -> Result<f64> {
    if fit.b2 >= 0.5 {
        return Err(Error::Numerical(format!(
            "fitted density has no finite mean deviation: b2 = {} >= 1/2",
            fit.b2
        )));
    }
    Ok(2.0 * fit.quadratic(fit.m) * fit.normalization / (fit.a1 - 2.0 * fit.b2))
}

/// kappa(1, 2) for the lognormal through the Pearson route: fit the single
/// variable and the two-summand sum, then compare deviations.
pub fn pearson_kappa1(mu: f64, sigma: f64) -> Result<f64> {
    let m1 = pearson_mad(&pearson_fit(mu, sigma, 1)?)?;
    let m2 = pearson_mad(&pearson_fit(mu, sigma, 2)?)?;
    if !(m2 > m1 && m1 > 0.0) {
        return Err(Error::Numerical(format!(
            "fitted deviations are not increasing: {m1} then {m2}"
        )));
    }
    Ok(2.0 - LN_2 / (m2 / m1).ln())
}
