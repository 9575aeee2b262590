//! Command-line front end: run credible-set tests on a data file, compute
//! intervals, and run Monte Carlo power studies.
//!
//! Exit codes: 0 on success, 2 for malformed flags/config/data, 3 for
//! domain errors reported by the library.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use credset::cli::{
    parse_region, power_csv, read_data, scenario_from_parts, IntervalSummary, PowerConfigFile,
    RunResult,
};
use credset::{
    central_evidence, central_interval, composite_bayes_test, credible_bound, evidence_report,
    fbst_evidence, fbst_tangent_set, hpd_set, mew_test, posterior_from_data, power_study,
    region_probability, three_decision_test, BoundSide, ContinuousPosterior, Error, MewLoss,
    PowerStudyConfig, Sample, Scenario, TestKind, TestOutcome,
};

#[derive(Parser)]
#[command(
    name = "credset",
    version,
    about = "Bayesian tests by inverting credible sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test a point or composite null hypothesis on observed data.
    Test(TestArgs),
    /// Compute a credible set from observed data.
    Interval(IntervalArgs),
    /// Estimate frequentist size and power by Monte Carlo, emitting CSV.
    Power(PowerArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Sampling scenario: normal-variance | exponential-rate | gamma-rate |
    /// inverse-gamma-rate | weibull-rate | uniform-upper.
    #[arg(long)]
    scenario: String,
    /// Known mean (normal-variance).
    #[arg(long)]
    known_mean: Option<f64>,
    /// Known shape (gamma-rate, inverse-gamma-rate, weibull-rate).
    #[arg(long)]
    known_shape: Option<f64>,
    /// Pareto prior minimum (uniform-upper).
    #[arg(long)]
    pareto_m: Option<f64>,
    /// Pareto prior index (uniform-upper).
    #[arg(long)]
    pareto_k: Option<f64>,
}

impl ScenarioArgs {
    fn build(&self) -> Result<Scenario, Failure> {
        scenario_from_parts(
            &self.scenario,
            self.known_mean,
            self.known_shape,
            self.pareto_m,
            self.pareto_k,
        )
        .map_err(Failure::Lib)
    }
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    /// Data file: one observation per line, '#' comments ignored.
    #[arg(long)]
    data: PathBuf,
    /// Null value of the tested parameter.
    #[arg(long)]
    theta0: f64,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// central | hpd | three-decision | fbst | mew | one-sided-lower |
    /// one-sided-upper | composite.
    #[arg(long)]
    method: String,
    /// Loss constant a (method = mew).
    #[arg(long)]
    mew_a: Option<f64>,
    /// Loss constant b (method = mew).
    #[arg(long)]
    mew_b: Option<f64>,
    /// Loss constant c (method = mew).
    #[arg(long)]
    mew_c: Option<f64>,
    /// Composite null region "lo1:hi1,lo2:hi2" on the posterior parameter
    /// scale; inf/-inf allowed (method = composite).
    #[arg(long, allow_hyphen_values = true)]
    region: Option<String>,
    /// Loss for false rejection (method = composite).
    #[arg(long)]
    loss_a: Option<f64>,
    /// Loss for false acceptance (method = composite).
    #[arg(long)]
    loss_b: Option<f64>,
}

#[derive(Args)]
struct IntervalArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// central | hpd | lower | upper.
    #[arg(long)]
    kind: String,
}

#[derive(Args)]
struct PowerArgs {
    /// TOML config carrying every study field; exclusive with the
    /// individual study flags.
    #[arg(long, conflicts_with_all = [
        "scenario", "known_mean", "known_shape", "pareto_m", "pareto_k",
        "theta0", "theta_grid", "sample_size", "replications", "alpha",
        "tests", "seed",
    ])]
    config: Option<PathBuf>,
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    known_mean: Option<f64>,
    #[arg(long)]
    known_shape: Option<f64>,
    #[arg(long)]
    pareto_m: Option<f64>,
    #[arg(long)]
    pareto_k: Option<f64>,
    #[arg(long)]
    theta0: Option<f64>,
    /// Comma-separated list of true parameter values.
    #[arg(long)]
    theta_grid: Option<String>,
    #[arg(long)]
    sample_size: Option<usize>,
    #[arg(long)]
    replications: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated subset of {central, hpd}; default both.
    #[arg(long)]
    tests: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output path for the CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(Error::Data(_)) => 2,
            Failure::Lib(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(msg) => format!("error: {msg}"),
            Failure::Lib(e) => format!("error: {e}"),
        }
    }
}

fn load_sample(path: &PathBuf) -> Result<Sample, Failure> {
    let file = File::open(path)
        .map_err(|e| Failure::Lib(Error::data(format!("{}: {e}", path.display()))))?;
    let values = read_data(BufReader::new(file))?;
    Ok(Sample::new(values)?)
}

fn base_result(
    command: &str,
    args_scenario: &ScenarioArgs,
    alpha: f64,
    post: &ContinuousPosterior,
) -> RunResult {
    RunResult {
        command: command.to_string(),
        scenario: args_scenario.scenario.clone(),
        alpha,
        posterior_family: post.family().name().to_string(),
        posterior_params: post.params(),
        ..RunResult::default()
    }
}

fn outcome_text(outcome: TestOutcome) -> String {
    outcome.name().to_string()
}

fn run_test(args: &TestArgs) -> Result<String, Failure> {
    let scenario = args.scenario.build()?;
    let sample = load_sample(&args.data)?;
    let post = posterior_from_data(&scenario, &sample)?;
    let theta0 = scenario.map_null(args.theta0)?;
    let alpha = args.alpha;

    let mut result = base_result("test", &args.scenario, alpha, &post);
    result.method = Some(args.method.clone());
    result.theta0 = Some(args.theta0);

    match args.method.as_str() {
        "central" => {
            let set = central_interval(&post, alpha)?;
            let accept = set.contains(theta0);
            result.decision = Some(if accept { "accept" } else { "reject" }.into());
            result.ev_central = Some(central_evidence(&post, theta0));
            result.interval = Some(IntervalSummary::from_set(&set, &post));
        }
        "hpd" => {
            let set = hpd_set(&post, alpha)?;
            let accept = set.contains(theta0);
            result.decision = Some(if accept { "accept" } else { "reject" }.into());
            result.ev_hpd = fbst_evidence(&post, theta0).ok();
            result.interval = Some(IntervalSummary::from_set(&set, &post));
        }
        "three-decision" => {
            let phi = three_decision_test(&post, theta0, alpha)?;
            result.decision = Some(phi.value().to_string());
            result.ev_central = Some(central_evidence(&post, theta0));
            let set = central_interval(&post, alpha)?;
            result.interval = Some(IntervalSummary::from_set(&set, &post));
        }
        "fbst" => {
            let report = evidence_report(&post, theta0)?;
            let accept = report.ev_hpd >= alpha;
            result.decision = Some(if accept { "accept" } else { "reject" }.into());
            result.ev_hpd = Some(report.ev_hpd);
            result.ev_central = Some(report.ev_central);
            let tangent = fbst_tangent_set(&post, theta0)?;
            result.interval = Some(IntervalSummary::from_set(&tangent, &post));
        }
        "mew" => {
            let (a, b, c) = match (args.mew_a, args.mew_b, args.mew_c) {
                (Some(a), Some(b), Some(c)) => (a, b, c),
                _ => {
                    return Err(Failure::Usage(
                        "method mew requires --mew-a, --mew-b and --mew-c".into(),
                    ))
                }
            };
            let loss = MewLoss::new(a, b, c)?;
            let outcome = mew_test(&post, theta0, &loss)?;
            result.decision = Some(outcome_text(outcome));
            result.threshold = Some(loss.threshold());
            result.ev_hpd = Some(fbst_evidence(&post, theta0)?);
        }
        "one-sided-lower" | "one-sided-upper" => {
            let side = if args.method == "one-sided-lower" {
                BoundSide::Lower
            } else {
                BoundSide::Upper
            };
            let set = credible_bound(&post, alpha, side)?;
            let accept = set.contains(theta0);
            result.decision = Some(if accept { "accept" } else { "reject" }.into());
            result.interval = Some(IntervalSummary::from_set(&set, &post));
        }
        "composite" => {
            let region_text = args
                .region
                .as_ref()
                .ok_or_else(|| Failure::Usage("method composite requires --region".into()))?;
            let (a, b) = match (args.loss_a, args.loss_b) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    return Err(Failure::Usage(
                        "method composite requires --loss-a and --loss-b".into(),
                    ))
                }
            };
            let region = parse_region(region_text)?;
            let outcome = composite_bayes_test(&post, &region, a, b)?;
            result.decision = Some(outcome_text(outcome));
            result.region_probability = Some(region_probability(&post, &region)?);
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown method '{other}' (expected central, hpd, three-decision, fbst, mew, \
                 one-sided-lower, one-sided-upper or composite)"
            )))
        }
    }
    Ok(result.to_record())
}

fn run_interval(args: &IntervalArgs) -> Result<String, Failure> {
    let scenario = args.scenario.build()?;
    let sample = load_sample(&args.data)?;
    let post = posterior_from_data(&scenario, &sample)?;

    let set = match args.kind.as_str() {
        "central" => central_interval(&post, args.alpha)?,
        "hpd" => hpd_set(&post, args.alpha)?,
        "lower" => credible_bound(&post, args.alpha, BoundSide::Lower)?,
        "upper" => credible_bound(&post, args.alpha, BoundSide::Upper)?,
        other => {
            return Err(Failure::Usage(format!(
                "unknown interval kind '{other}' (expected central, hpd, lower or upper)"
            )))
        }
    };
    let mut result = base_result("interval", &args.scenario, args.alpha, &post);
    result.interval = Some(IntervalSummary::from_set(&set, &post));
    Ok(result.to_record())
}

fn run_power(args: &PowerArgs) -> Result<(Option<PathBuf>, String), Failure> {
    let cfg: PowerStudyConfig = if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Lib(Error::data(format!("{}: {e}", path.display()))))?;
        PowerConfigFile::parse(&text)?.into_study_config()?
    } else {
        let scenario_name = args
            .scenario
            .as_ref()
            .ok_or_else(|| Failure::Usage("power requires --config or --scenario".into()))?;
        let scenario = scenario_from_parts(
            scenario_name,
            args.known_mean,
            args.known_shape,
            args.pareto_m,
            args.pareto_k,
        )?;
        let theta0 = args
            .theta0
            .ok_or_else(|| Failure::Usage("power requires --theta0".into()))?;
        let grid_text = args
            .theta_grid
            .as_ref()
            .ok_or_else(|| Failure::Usage("power requires --theta-grid".into()))?;
        let theta_grid = grid_text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::data(format!("cannot parse grid value '{t}'")))
            })
            .collect::<Result<Vec<f64>, Error>>()?;
        let tests = match &args.tests {
            None => vec![TestKind::Central, TestKind::Hpd],
            Some(text) => text
                .split(',')
                .map(|t| TestKind::from_name(t.trim()))
                .collect::<Result<Vec<_>, Error>>()?,
        };
        PowerStudyConfig {
            scenario,
            theta0,
            theta_grid,
            sample_size: args
                .sample_size
                .ok_or_else(|| Failure::Usage("power requires --sample-size".into()))?,
            replications: args
                .replications
                .ok_or_else(|| Failure::Usage("power requires --replications".into()))?,
            alpha: args.alpha.unwrap_or(0.05),
            tests,
            seed: args.seed.unwrap_or(0),
        }
    };
    let curves = power_study(&cfg)?;
    Ok((args.out.clone(), power_csv(&cfg, &curves)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Test(args) => run_test(args).map(|record| (None, record)),
        Command::Interval(args) => run_interval(args).map(|record| (None, record)),
        Command::Power(args) => run_power(args),
    };
    match outcome {
        Ok((None, text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok((Some(path), text)) => {
            match File::create(&path).and_then(|mut f| f.write_all(text.as_bytes())) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    ExitCode::from(2)
                }
            }
        }
        Err(failure) => {
            eprintln!("{}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
