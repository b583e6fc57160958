//! Distribution specs from the command line.
//!
//! The compact form is `family:key=value,key=value`, case-insensitive,
//! with underscores and dashes in keys ignored: `pareto:alpha=2.5`,
//! `stable:alpha_tilde=1.5,beta=1`. Keys left out fall back to the
//! family's defaults; unknown keys are rejected. A spec starting with
//! `{` is parsed as inline JSON instead, and one ending in `.json` is
//! read from that file.

use std::collections::BTreeMap;

use kappa_core::{DistributionSpec, Error, Result};

pub fn parse_spec(text: &str) -> Result<DistributionSpec> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::InvalidParameter("empty distribution spec".into()));
    }
    if trimmed.starts_with('{') {
        let spec: DistributionSpec = serde_json::from_str(trimmed)
            .map_err(|e| Error::InvalidParameter(format!("spec JSON: {e}")))?;
        spec.validate()?;
        return Ok(spec);
    }
    if trimmed.ends_with(".json") {
        let body = std::fs::read_to_string(trimmed)
            .map_err(|e| Error::InvalidParameter(format!("spec file {trimmed}: {e}")))?;
        let spec: DistributionSpec = serde_json::from_str(&body)
            .map_err(|e| Error::InvalidParameter(format!("spec file {trimmed}: {e}")))?;
        spec.validate()?;
        return Ok(spec);
    }
    parse_compact(trimmed)
}

fn norm(s: &str) -> String {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

fn parse_compact(text: &str) -> Result<DistributionSpec> {
    let (family, params) = match text.split_once(':') {
        Some((f, p)) => (f, p),
        None => (text, ""),
    };
    let mut map = BTreeMap::new();
    for pair in params.split(',').filter(|p| !p.trim().is_empty()) {
        let (key, value) = pair.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!("expected key=value in spec, got '{pair}'"))
        })?;
        let value: f64 = value.trim().parse().map_err(|_| {
            Error::InvalidParameter(format!("'{}' is not a number in spec key '{}'", value.trim(), key.trim()))
        })?;
        map.insert(norm(key), value);
    }

    let mut take = |key: &str, default: f64| map.remove(key).unwrap_or(default);
    let spec = match norm(family).as_str() {
        "gaussian" | "normal" => DistributionSpec::Gaussian {
            mu: take("mu", 0.0),
            sigma: take("sigma", 1.0),
        },
        "studentt" | "student" | "t" => DistributionSpec::StudentT {
            alpha: take("alpha", 3.0),
            scale: take("scale", 1.0),
        },
        "cubic" => DistributionSpec::StudentT { alpha: 3.0, scale: take("scale", 1.0) },
        "pareto" => DistributionSpec::Pareto {
            alpha: take("alpha", 2.0),
            xmin: take("xmin", 1.0),
        },
        "exponential" | "exp" => DistributionSpec::Exponential { lambda: take("lambda", 1.0) },
        "gamma" => DistributionSpec::Gamma {
            shape: take("shape", 1.0),
            rate: take("rate", 1.0),
        },
        "lognormal" => DistributionSpec::Lognormal {
            mu: take("mu", 0.0),
            sigma: take("sigma", 1.0),
        },
        "stable" => DistributionSpec::Stable {
            alpha_tilde: take("alphatilde", 1.5),
            beta: take("beta", 0.0),
            mu: take("mu", 0.0),
            sigma: take("sigma", 1.0),
        },
        "variancemix" | "gaussianvariancemix" => DistributionSpec::GaussianVarianceMix {
            sigma2: take("sigma2", 1.0),
            a: take("a", 0.5),
            p: take("p", 0.1),
        },
        "meanmix" | "gaussianmeanmix" => DistributionSpec::GaussianMeanMix {
            mu1: take("mu1", 0.0),
            mu2: take("mu2", 0.0),
            sigma1: take("sigma1", 1.0),
            sigma2: take("sigma2", 1.0),
            p: take("p", 0.5),
        },
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown family '{other}'; expected one of gaussian, studentt, pareto, \
                 exponential, gamma, lognormal, stable, variancemix, meanmix"
            )));
        }
    };
    if let Some(stray) = map.keys().next() {
        return Err(Error::InvalidParameter(format!(
            "spec key '{stray}' does not apply to {}",
            spec.family_name()
        )));
    }
    spec.validate()?;
    Ok(spec)
}

/// Canonical one-line rendering, round-trippable through `parse_spec`.
pub fn spec_label(spec: &DistributionSpec) -> String {
    match *spec {
        DistributionSpec::Gaussian { mu, sigma } => format!("gaussian:mu={mu},sigma={sigma}"),
        DistributionSpec::StudentT { alpha, scale } => {
            format!("studentt:alpha={alpha},scale={scale}")
        }
        DistributionSpec::Pareto { alpha, xmin } => format!("pareto:alpha={alpha},xmin={xmin}"),
        DistributionSpec::Exponential { lambda } => format!("exponential:lambda={lambda}"),
        DistributionSpec::Gamma { shape, rate } => format!("gamma:shape={shape},rate={rate}"),
        DistributionSpec::Lognormal { mu, sigma } => format!("lognormal:mu={mu},sigma={sigma}"),
        DistributionSpec::Stable { alpha_tilde, beta, mu, sigma } => {
            format!("stable:alpha_tilde={alpha_tilde},beta={beta},mu={mu},sigma={sigma}")
        }
        DistributionSpec::GaussianVarianceMix { sigma2, a, p } => {
            format!("variancemix:sigma2={sigma2},a={a},p={p}")
        }
        DistributionSpec::GaussianMeanMix { mu1, mu2, sigma1, sigma2, p } => {
            format!("meanmix:mu1={mu1},mu2={mu2},sigma1={sigma1},sigma2={sigma2},p={p}")
        }
    }
}
