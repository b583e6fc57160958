//! Preasymptotic fat-tailedness metrics for univariate distributions.
//!
//! The central quantity is kappa(n0, n) = 2 - (log n - log n0) / log(M(n)/M(n0)),
//! where M(n) = E|S_n - E S_n| is the mean absolute deviation of an n-fold
//! i.i.d. sum. kappa is 0 for the Gaussian, 2 - alpha_tilde for stable laws,
//! and approaches 1 for the fattest finite-mean cases, which makes it a usable
//! measure of how far a distribution is from Gaussian behavior at the sample
//! sizes one actually works with.
//!
//! The crate provides:
//! - a catalog of finite-mean families ([`DistributionSpec`]),
//! - M(n) by closed form, characteristic-function quadrature, or Monte Carlo,
//! - kappa itself plus the local decomposition chain and an empirical estimator,
//! - closed-form kappa results for specific families (Student t, Pareto,
//!   exponential and gamma, lognormal, Gaussian mixtures),
//! - applications: sample-size equivalence between distributions, portfolio
//!   diversification curves, and Monte Carlo run planning.

pub mod analytic;
pub mod apps;
pub mod dist;
pub mod error;
pub mod kappa;
pub mod mad;
mod mc;
pub mod pearson;
pub mod quad;
pub mod rng;
pub mod special;

pub use analytic::LognormalCumulants;
pub use apps::{
    convergence_trace, equivalence_panel, equivalent_sample_size, mc_run_planner, portfolio_curve,
    risk_threshold, EquivalenceMethod, EquivalenceResult, PortfolioPoint, RunPlan, ThresholdResult,
    TraceRow,
};
pub use dist::DistributionSpec;
pub use error::{Error, Result};
pub use kappa::{
    empirical_kappa, kappa, kappa_chain, kappa_grid, stable_kappa, BlockStrategy, KappaResult,
};
pub use mad::{
    closed_mad, mad, mad_from_cf, mad_monte_carlo, MadEstimate, McConfig, Method, Preference,
};
pub use pearson::{pearson_fit, pearson_kappa1, pearson_mad, PearsonIVFit};
pub use quad::{Quadrature, QuadratureConfig};
