//! kappa: preasymptotic fat-tailedness from the command line.
//!
//! Every subcommand prints long-format rows (CSV by default, JSON lines
//! with `--output json`), one row per numeric fact, each carrying the
//! method, seed, sample count, and tool version that produced it. Runs
//! with identical configuration produce byte-identical output.
//!
//! Exit codes: 0 on success, 2 for usage and domain errors, 3 when a
//! numerical routine fails to converge. Errors are a single JSON object
//! on stderr.

mod emit;
mod spec_lang;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kappa_core::analytic::{
    kappa1_exponential, kappa1_lognormal_approx, kappa1_pareto, kappa1_student,
    kappa1_switching_variance, lognormal_kappa_star,
};
use kappa_core::{
    convergence_trace, empirical_kappa, equivalence_panel, equivalent_sample_size, kappa,
    kappa_chain, kappa_grid, mad, pearson_fit, pearson_mad, risk_threshold, BlockStrategy,
    DistributionSpec, EquivalenceMethod, EquivalenceResult, Error, McConfig, Preference,
    QuadratureConfig, Result, RunPlan,
};

use emit::{emit, Format, Row};
use spec_lang::{parse_spec, spec_label};

#[derive(Parser)]
#[command(
    name = "kappa",
    version,
    about = "Preasymptotic fat-tailedness: kappa, deviation growth, and what they imply",
    max_term_width = 100
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    output: Format,
    /// Write rows to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads; the KAPPA_THREADS variable applies when absent.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// kappa(n0, n) for a distribution spec.
    Kappa(KappaArgs),
    /// Mean absolute deviation of the n-summand sum.
    Mad(MadArgs),
    /// Local kappa(i, i+1) chain up to n, with the composed kappa(1, n).
    Chain(ChainArgs),
    /// Rebuild the reference tables.
    Tables(TablesArgs),
    /// Sample size with the same deviation of the average as a Gaussian benchmark.
    Equiv(EquivArgs),
    /// Risk of the equal-weight n-position portfolio against the Gaussian baseline.
    Portfolio(PortfolioArgs),
    /// Smallest Monte Carlo run count whose average reaches a target risk ratio.
    Plan(PlanArgs),
    /// kappa(1, n) over an n grid for one or more specs.
    Trace(TraceArgs),
    /// Lognormal sigma sweep: the closed curve, the four-moment fit, and sampling.
    Lognormal(LognormalArgs),
    /// Block-based kappa from a data file.
    Empirical(EmpiricalArgs),
    /// Reproducible draws from a spec.
    Sample(SampleArgs),
}

#[derive(Args)]
struct McOpts {
    /// Monte Carlo replicates; scientific notation like 1e7 is accepted.
    #[arg(long, value_parser = parse_count, default_value = "1000000")]
    samples: u64,
    /// Independent batches for error estimation.
    #[arg(long, value_parser = parse_count, default_value = "64")]
    batches: u64,
    /// RNG seed, recorded in every row it influenced.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Mirror each draw around the mean (symmetric specs only).
    #[arg(long)]
    antithetic: bool,
}

impl McOpts {
    fn config(&self) -> McConfig {
        McConfig {
            samples: self.samples,
            batches: self.batches,
            seed: self.seed,
            antithetic: self.antithetic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Closed,
    Cf,
    Mc,
}

impl MethodArg {
    fn preference(self) -> Preference {
        match self {
            MethodArg::Auto => Preference::Auto,
            MethodArg::Closed => Preference::ClosedForm,
            MethodArg::Cf => Preference::Cf,
            MethodArg::Mc => Preference::Mc,
        }
    }
}

fn parse_count(text: &str) -> std::result::Result<u64, String> {
    let cleaned = text.replace('_', "");
    if let Ok(v) = cleaned.parse::<u64>() {
        return Ok(v);
    }
    match cleaned.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 1.0 && v.fract() == 0.0 && v < 1.8e19 => Ok(v as u64),
        _ => Err(format!("'{text}' is not a whole count")),
    }
}

#[derive(Args)]
struct KappaArgs {
    /// Distribution spec: family:key=value,... or JSON.
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 1)]
    n0: u64,
    #[arg(long)]
    n: u64,
    /// Computation route.
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Args)]
struct MadArgs {
    #[arg(long)]
    spec: String,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Args)]
struct ChainArgs {
    #[arg(long)]
    spec: String,
    /// Chain endpoint; local links cover 1..=n.
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichTable {
    /// Pair kappa for the closed-form catalog families.
    Table1,
    /// Pareto against Student t: kappa1, kappa(1,30), kappa(1,100) per tail index.
    #[value(name = "pareto_vs_student", alias = "pareto-vs-student")]
    ParetoVsStudent,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(value_enum)]
    which: WhichTable,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Clone, Copy, ValueEnum)]
enum EquivMethodArg {
    /// n_g^(1/(1-kappa)) with the pair value kappa(1, 2).
    Kappa1,
    /// n_g^(1/(1-kappa)) with kappa(1, n_g).
    Kappa1N,
    /// Smallest n whose deviation of the average matches the benchmark's.
    Exact,
}

impl EquivMethodArg {
    fn method(self) -> EquivalenceMethod {
        match self {
            EquivMethodArg::Kappa1 => EquivalenceMethod::ApproxKappa1,
            EquivMethodArg::Kappa1N => EquivalenceMethod::ApproxKappa1N,
            EquivMethodArg::Exact => EquivalenceMethod::ExactMadMatch,
        }
    }
}

fn equivalence_method_name(method: EquivalenceMethod) -> &'static str {
    match method {
        EquivalenceMethod::ApproxKappa1 => "approx_kappa1",
        EquivalenceMethod::ApproxKappa1N => "approx_kappa1n",
        EquivalenceMethod::ExactMadMatch => "exact_mad_match",
    }
}

#[derive(Args)]
struct EquivArgs {
    #[arg(long)]
    spec: String,
    /// Gaussian benchmark sample size.
    #[arg(long)]
    ng: u64,
    /// Equivalence method; all three when absent.
    #[arg(long, value_enum)]
    method: Option<EquivMethodArg>,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Args)]
struct PortfolioArgs {
    #[arg(long)]
    spec: String,
    /// Largest position count on the curve.
    #[arg(long)]
    nmax: u64,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    spec: String,
    /// Target for M(n)/(n M(1)), in (0, 1).
    #[arg(long)]
    target: f64,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Args)]
struct TraceArgs {
    /// Distribution spec; repeat the flag for several.
    #[arg(long = "spec", required = true)]
    specs: Vec<String>,
    /// Ascending n grid.
    #[arg(long = "n", value_delimiter = ',', default_value = "2,5,10,30,100")]
    ns: Vec<u64>,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Args)]
struct LognormalArgs {
    /// Sigma grid, either start:stop:step or a comma list.
    #[arg(long, default_value = "0.1:5:0.1")]
    sigma_grid: String,
    #[arg(long, default_value_t = 2)]
    n: u64,
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    #[command(flatten)]
    mc: McOpts,
}

#[derive(Clone, Copy, ValueEnum)]
enum BlocksArg {
    Disjoint,
    Circular,
}

#[derive(Args)]
struct EmpiricalArgs {
    /// Data file, whitespace-separated numbers.
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = 1)]
    n0: u64,
    #[arg(long)]
    n: u64,
    /// Block scheme for the deviation estimates.
    #[arg(long, value_enum, default_value = "disjoint")]
    blocks: BlocksArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    spec: String,
    #[arg(long, value_parser = parse_count, default_value = "10")]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent substream index for the same seed.
    #[arg(long, default_value_t = 0)]
    stream: u64,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            let payload =
                serde_json::json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            eprintln!("{payload}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    init_threads(cli.threads)?;
    let rows = match &cli.command {
        Command::Kappa(args) => cmd_kappa(args)?,
        Command::Mad(args) => cmd_mad(args)?,
        Command::Chain(args) => cmd_chain(args)?,
        Command::Tables(args) => cmd_tables(args)?,
        Command::Equiv(args) => cmd_equiv(args)?,
        Command::Portfolio(args) => cmd_portfolio(args)?,
        Command::Plan(args) => cmd_plan(args)?,
        Command::Trace(args) => cmd_trace(args)?,
        Command::Lognormal(args) => cmd_lognormal(args)?,
        Command::Empirical(args) => cmd_empirical(args)?,
        Command::Sample(args) => cmd_sample(args)?,
    };
    emit(&rows, cli.output, cli.out.as_deref())
}

fn init_threads(explicit: Option<usize>) -> Result<()> {
    let requested = explicit.or_else(|| {
        std::env::var("KAPPA_THREADS").ok().and_then(|v| v.trim().parse().ok())
    });
    if let Some(n) = requested {
        if n == 0 {
            return Err(Error::InvalidConfig("thread count must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn cmd_kappa(args: &KappaArgs) -> Result<Vec<Row>> {
    let spec = parse_spec(&args.spec)?;
    let config = args.mc.config();
    let r = kappa(&spec, args.n0, args.n, args.method.preference(), Some(&config))?;
    let mut row = Row::new("kappa", spec_label(&spec), "kappa");
    row.n0 = Some(r.n0);
    row.n = Some(r.n);
    row.value = r.kappa;
    row.std_error = r.std_error;
    row.method = r.method.name().into();
    row.seed = r.seed.or(Some(config.seed));
    row.samples = r.samples_used;
    Ok(vec![row])
}

fn cmd_mad(args: &MadArgs) -> Result<Vec<Row>> {
    let spec = parse_spec(&args.spec)?;
    let config = args.mc.config();
    let est = mad(&spec, args.n, args.method.preference(), Some(&config))?;
    let mut row = Row::new("mad", spec_label(&spec), "mad");
    row.n = Some(est.n);
    row.value = est.value;
    row.std_error = est.std_error;
    row.method = est.method.name().into();
    row.seed = est.seed.or(Some(config.seed));
    row.samples = (est.samples_used > 0).then_some(est.samples_used);
    Ok(vec![row])
}

fn cmd_chain(args: &ChainArgs) -> Result<Vec<Row>> {
    let spec = parse_spec(&args.spec)?;
    let config = args.mc.config();
    let links = kappa_chain(&spec, args.n, args.method.preference(), Some(&config))?;
    let label = spec_label(&spec);
    let last = links.len() - 1;
    Ok(links
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let quantity = if i == last { "kappa_composed" } else { "kappa_local" };
            let mut row = Row::new("chain", label.clone(), quantity);
            row.n0 = Some(r.n0);
            row.n = Some(r.n);
            row.value = r.kappa;
            row.std_error = r.std_error;
            row.method = r.method.name().into();
            row.seed = r.seed.or(Some(config.seed));
            row.samples = r.samples_used;
            row
        })
        .collect())
}

fn closed_row(spec: &DistributionSpec, param: f64, kappa1: f64) -> Row {
    let mut row = Row::new("tables", spec_label(spec), "kappa1");
    row.n0 = Some(1);
    row.n = Some(2);
    row.param = Some(param);
    row.value = kappa1;
    row.method = "closed_form".into();
    row
}

fn cmd_tables(args: &TablesArgs) -> Result<Vec<Row>> {
    match args.which {
        WhichTable::Table1 => table1(),
        WhichTable::ParetoVsStudent => pareto_vs_student(&args.mc.config()),
    }
}

fn table1() -> Result<Vec<Row>> {
    let quad = QuadratureConfig::default();
    let mut rows = Vec::new();
    for alpha in [2.0, 3.0, 4.0] {
        let spec = DistributionSpec::StudentT { alpha, scale: 1.0 };
        rows.push(closed_row(&spec, alpha, kappa1_student(alpha)?));
    }
    rows.push(closed_row(
        &DistributionSpec::Exponential { lambda: 1.0 },
        1.0,
        kappa1_exponential(),
    ));
    for alpha in [1.5, 2.0, 3.0] {
        let spec = DistributionSpec::Pareto { alpha, xmin: 1.0 };
        rows.push(closed_row(&spec, alpha, kappa1_pareto(alpha, &quad)?));
    }
    rows.push(closed_row(
        &DistributionSpec::GaussianVarianceMix { sigma2: 1.0, a: 0.5, p: 0.1 },
        0.1,
        kappa1_switching_variance(1.0, 0.5, 0.1)?,
    ));
    for sigma in [0.5, 1.0, 2.0] {
        let spec = DistributionSpec::Lognormal { mu: 0.0, sigma };
        rows.push(closed_row(&spec, sigma, kappa1_lognormal_approx(sigma)?));
    }
    Ok(rows)
}

fn pareto_vs_student(config: &McConfig) -> Result<Vec<Row>> {
    const ALPHAS: [f64; 12] =
        [1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0, 3.25, 3.5, 3.75, 4.0];
    let quad = QuadratureConfig::default();
    let mut rows = Vec::new();
    for alpha in ALPHAS {
        let pareto = DistributionSpec::Pareto { alpha, xmin: 1.0 };
        let student = DistributionSpec::StudentT { alpha, scale: 1.0 };
        rows.push(closed_row(&pareto, alpha, kappa1_pareto(alpha, &quad)?));
        sampled_columns(&mut rows, &pareto, alpha, config)?;
        rows.push(closed_row(&student, alpha, kappa1_student(alpha)?));
        sampled_columns(&mut rows, &student, alpha, config)?;
    }
    Ok(rows)
}

fn sampled_columns(
    rows: &mut Vec<Row>,
    spec: &DistributionSpec,
    alpha: f64,
    config: &McConfig,
) -> Result<()> {
    for r in kappa_grid(spec, 1, &[30, 100], config)? {
        let mut row = Row::new("tables", spec_label(spec), "kappa1_n");
        row.n0 = Some(r.n0);
        row.n = Some(r.n);
        row.param = Some(alpha);
        row.value = r.kappa;
        row.std_error = r.std_error;
        row.method = r.method.name().into();
        row.seed = r.seed.or(Some(config.seed));
        row.samples = r.samples_used;
        rows.push(row);
    }
    Ok(())
}

fn equivalence_rows(result: &EquivalenceResult, config: &McConfig) -> Vec<Row> {
    let label = spec_label(&result.spec);
    let method = equivalence_method_name(result.method);
    let mut size = Row::new("equiv", label.clone(), "equivalent_size");
    size.n = Some(result.n_g);
    size.value = result.n_nu;
    size.method = method.into();
    size.seed = Some(config.seed);
    let mut used = Row::new("equiv", label, "kappa_used");
    used.n = Some(result.n_g);
    used.value = result.kappa_used;
    used.method = method.into();
    used.seed = Some(config.seed);
    vec![size, used]
}

fn cmd_equiv(args: &EquivArgs) -> Result<Vec<Row>> {
    let spec = parse_spec(&args.spec)?;
    let config = args.mc.config();
    let results = match args.method {
        Some(m) => vec![equivalent_sample_size(&spec, args.ng, m.method(), Some(&config))?],
        None => equivalence_panel(&spec, args.ng, Some(&config))?,
    };
    Ok(results.iter().flat_map(|r| equivalence_rows(r, &config)).collect())
}

fn cmd_portfolio(args: &PortfolioArgs) -> Result<Vec<Row>> {
    let spec = parse_spec(&args.spec)?;
    let config = args.mc.config();
    let points = kappa_core::portfolio_curve(&spec, args.nmax, Some(&config))?;
    let label = spec_label(&spec);
    let mut rows = Vec::with_capacity(points.len() * 2);
    for p in &points {
        let mut risk = Row::new("portfolio", label.clone(), "risk_ratio");
        risk.n = Some(p.n);
        risk.value = p.risk_ratio;
        risk.std_error = p.std_error;
        risk.method = p.method.name().into();
        risk.seed = Some(config.seed);
        rows.push(risk);
        let mut base = Row::new("portfolio", label.clone(), "gaussian_baseline");
        base.n = Some(p.n);
        base.value = p.gaussian;
        base.method = "closed_form".into();
        base.seed = Some(config.seed);
        rows.push(base);
    }
    Ok(rows)
}

fn cmd_plan(args: &PlanArgs) -> Result<Vec<Row>> {
    let spec = parse_spec(&args.spec)?;
    let config = args.mc.config();
    let found = risk_threshold(&spec, args.target, Some(&config))?;
    let label = spec_label(&spec);
    let n = found.plan.runs();
    let mut runs = Row::new("plan", label.clone(), "min_runs");
    runs.param = Some(args.target);
    runs.value = match found.plan {
        RunPlan::Runs(n) => n as f64,
        RunPlan::Unbounded => f64::INFINITY,
    };
    runs.method = found.method.name().into();
    runs.seed = Some(config.seed);
    let mut at = Row::new("plan", label, "kappa_at_min");
    at.n0 = Some(1);
    at.n = n;
    at.param = Some(args.target);
    at.value = found.kappa_at_n;
    at.method = found.method.name().into();
    at.seed = Some(config.seed);
    Ok(vec![runs, at])
}

fn cmd_trace(args: &TraceArgs) -> Result<Vec<Row>> {
    let specs: Vec<DistributionSpec> =
        args.specs.iter().map(|s| parse_spec(s)).collect::<Result<_>>()?;
    let config = args.mc.config();
    let rows = convergence_trace(&specs, &args.ns, Some(&config))?;
    Ok(rows
        .iter()
        .map(|t| {
            let mut row = Row::new("trace", spec_label(&t.spec), "kappa");
            row.n0 = Some(1);
            row.n = Some(t.n);
            row.param = Some(t.asymptote);
            row.value = t.kappa;
            row.std_error = t.std_error;
            row.method = t.method.name().into();
            row.seed = Some(config.seed);
            row
        })
        .collect())
}

fn parse_sigma_grid(text: &str) -> Result<Vec<f64>> {
    let bad = |t: &str| Error::InvalidParameter(format!("bad sigma grid '{t}'"));
    let values: Vec<f64> = if text.contains(':') {
        let parts: Vec<f64> = text
            .split(':')
            .map(|p| p.trim().parse().map_err(|_| bad(text)))
            .collect::<Result<_>>()?;
        let [start, stop, step] = parts[..] else {
            return Err(bad(text));
        };
        if !(step > 0.0 && stop >= start && start > 0.0) {
            return Err(bad(text));
        }
        let count = ((stop - start) / step + 0.5).floor() as usize;
        (0..=count).map(|i| start + step * i as f64).collect()
    } else {
        text.split(',')
            .map(|p| p.trim().parse().map_err(|_| bad(text)))
            .collect::<Result<_>>()?
    };
    if values.is_empty() || values.iter().any(|&s| !(s > 0.0)) {
        return Err(bad(text));
    }
    Ok(values)
}

/// The sweep pairs the closed kappa-star curve with the four-moment fit
/// where the fit is trustworthy (sigma up to about 2) and with sampling
/// in the band where both alternatives deserve a check. Small sigma is
/// left to the fit: sampling resolves nothing there, kappa is within
/// noise of 0.
fn cmd_lognormal(args: &LognormalArgs) -> Result<Vec<Row>> {
    if args.n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {}", args.n)));
    }
    let sigmas = parse_sigma_grid(&args.sigma_grid)?;
    let config = args.mc.config();
    let mut rows = Vec::new();
    for &sigma in &sigmas {
        let spec = DistributionSpec::Lognormal { mu: args.mu, sigma };
        let label = spec_label(&spec);

        let mut star = Row::new("lognormal", label.clone(), "kappa_star");
        star.n0 = Some(1);
        star.n = Some(args.n);
        star.param = Some(sigma);
        star.value = lognormal_kappa_star(sigma, args.n)?;
        star.method = "closed_form".into();
        star.seed = Some(config.seed);
        rows.push(star);

        if sigma <= 2.0 {
            let m1 = pearson_mad(&pearson_fit(args.mu, sigma, 1)?)?;
            let mn = pearson_mad(&pearson_fit(args.mu, sigma, args.n)?)?;
            let mut fitted = Row::new("lognormal", label.clone(), "kappa_fitted");
            fitted.n0 = Some(1);
            fitted.n = Some(args.n);
            fitted.param = Some(sigma);
            fitted.value = 2.0 - (args.n as f64).ln() / (mn / m1).ln();
            fitted.method = "moment_fit".into();
            fitted.seed = Some(config.seed);
            rows.push(fitted);
        }

        if (0.3..=2.0).contains(&sigma) {
            let r = kappa(&spec, 1, args.n, Preference::Mc, Some(&config))?;
            let mut sampled = Row::new("lognormal", label.clone(), "kappa_sampled");
            sampled.n0 = Some(1);
            sampled.n = Some(args.n);
            sampled.param = Some(sigma);
            sampled.value = r.kappa;
            sampled.std_error = r.std_error;
            sampled.method = r.method.name().into();
            sampled.seed = r.seed.or(Some(config.seed));
            sampled.samples = r.samples_used;
            rows.push(sampled);
        }
    }
    Ok(rows)
}

fn cmd_empirical(args: &EmpiricalArgs) -> Result<Vec<Row>> {
    let text = std::fs::read_to_string(&args.data).map_err(|e| {
        Error::InvalidParameter(format!("reading {}: {e}", args.data.display()))
    })?;
    let data: Vec<f64> = text
        .split_whitespace()
        .map(|token| {
            token.parse().map_err(|_| {
                Error::InvalidParameter(format!(
                    "'{token}' in {} is not a number",
                    args.data.display()
                ))
            })
        })
        .collect::<Result<_>>()?;
    let strategy = match args.blocks {
        BlocksArg::Disjoint => BlockStrategy::Disjoint,
        BlocksArg::Circular => BlockStrategy::CircularBootstrap,
    };
    let r = empirical_kappa(&data, args.n0, args.n, strategy, args.seed)?;
    let mut row = Row::new(
        "empirical",
        format!("file:{}", args.data.display()),
        "kappa",
    );
    row.n0 = Some(r.n0);
    row.n = Some(r.n);
    row.value = r.kappa;
    row.std_error = r.std_error;
    row.method = r.method.name().into();
    row.seed = r.seed.or(Some(args.seed));
    row.samples = Some(data.len() as u64);
    Ok(vec![row])
}

fn cmd_sample(args: &SampleArgs) -> Result<Vec<Row>> {
    let spec = parse_spec(&args.spec)?;
    let draws = spec.sample(args.count as usize, args.seed, args.stream)?;
    let label = spec_label(&spec);
    Ok(draws
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut row = Row::new("sample", label.clone(), "draw");
            row.n = Some(i as u64 + 1);
            row.value = x;
            row.method = "sampler".into();
            row.seed = Some(args.seed);
            row.samples = Some(args.count);
            row
        })
        .collect())
}
