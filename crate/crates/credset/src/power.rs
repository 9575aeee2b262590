//! Monte Carlo estimation of frequentist size and power for the
//! central-interval and HPD tests.
//!
//! Every replication draws a fresh sample from the scenario's sampling
//! distribution at the true parameter, derives the posterior, and rejects
//! the null iff it falls outside the requested 1 − α credible set (closed
//! endpoints, ties accept). Each (test, grid point, replication) triple uses
//! its own counter-based substream, so results are bit-identical no matter
//! how the work is scheduled.

use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Gamma, Normal, Weibull};
use rayon::prelude::*;

use crate::conjugate::{posterior_from_data, Sample, Scenario};
use crate::credible::validate_alpha;
use crate::dist::ContinuousPosterior;
use crate::error::{Error, Result};
use crate::substream::substream;
use crate::testing::{central_evidence, fbst_evidence};

/// Which credible set drives the rejection decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestKind {
    Central,
    Hpd,
}

impl TestKind {
    pub fn name(self) -> &'static str {
        match self {
            TestKind::Central => "central",
            TestKind::Hpd => "hpd",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "central" => Ok(TestKind::Central),
            "hpd" => Ok(TestKind::Hpd),
            other => Err(Error::domain(format!("unknown test kind '{other}'"))),
        }
    }

    fn stream_id(self) -> u64 {
        match self {
            TestKind::Central => 1,
            TestKind::Hpd => 2,
        }
    }
}

/// Configuration of a power study.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerStudyConfig {
    pub scenario: Scenario,
    /// Null value stated on the scenario's user-facing parameter.
    pub theta0: f64,
    /// True parameter values to simulate at.
    pub theta_grid: Vec<f64>,
    pub sample_size: usize,
    pub replications: usize,
    pub alpha: f64,
    pub tests: Vec<TestKind>,
    pub seed: u64,
}

impl PowerStudyConfig {
    pub fn validate(&self) -> Result<()> {
        self.scenario.validate()?;
        validate_alpha(self.alpha)?;
        if !self.scenario.theta_valid(self.theta0) {
            return Err(Error::domain(format!(
                "theta0 = {} is not a valid parameter for scenario {}",
                self.theta0,
                self.scenario.name()
            )));
        }
        if self.theta_grid.is_empty() {
            return Err(Error::domain("theta grid must be nonempty"));
        }
        for &theta in &self.theta_grid {
            if !self.scenario.theta_valid(theta) {
                return Err(Error::domain(format!(
                    "grid value {theta} is not a valid parameter for scenario {}",
                    self.scenario.name()
                )));
            }
        }
        if self.sample_size == 0 {
            return Err(Error::domain("sample size must be at least 1"));
        }
        if self.replications < 100 {
            return Err(Error::domain(format!(
                "at least 100 replications required, got {}",
                self.replications
            )));
        }
        if self.tests.is_empty() {
            return Err(Error::domain("at least one test must be requested"));
        }
        Ok(())
    }
}

/// Rejection rates over the grid for one test, with binomial standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerCurve {
    pub test: TestKind,
    pub theta_values: Vec<f64>,
    pub rejection_rates: Vec<f64>,
    pub standard_errors: Vec<f64>,
}

/// Draw `n` observations from the scenario's sampling distribution.
fn draw_observations(
    scenario: &Scenario,
    theta: f64,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    let bad = |e: String| Error::domain(format!("sampling distribution: {e}"));
    let mut out = Vec::with_capacity(n);
    match *scenario {
        Scenario::NormalVarianceKnownMean { mean } => {
            let dist = Normal::new(mean, theta.sqrt()).map_err(|e| bad(e.to_string()))?;
            out.extend((0..n).map(|_| dist.sample(rng)));
        }
        Scenario::ExponentialRate => {
            let dist = Exp::new(theta).map_err(|e| bad(e.to_string()))?;
            out.extend((0..n).map(|_| dist.sample(rng)));
        }
        Scenario::GammaRateKnownShape { shape } => {
            let dist = Gamma::new(shape, 1.0 / theta).map_err(|e| bad(e.to_string()))?;
            out.extend((0..n).map(|_| dist.sample(rng)));
        }
        Scenario::InverseGammaRateKnownShape { shape } => {
            let dist = Gamma::new(shape, 1.0 / theta).map_err(|e| bad(e.to_string()))?;
            out.extend((0..n).map(|_| 1.0 / dist.sample(rng)));
        }
        Scenario::WeibullRateKnownShape { shape } => {
            let dist = Weibull::new(theta, shape).map_err(|e| bad(e.to_string()))?;
            out.extend((0..n).map(|_| dist.sample(rng)));
        }
        Scenario::UniformUpperPareto { .. } => {
            // 1 − U keeps draws strictly positive (U is uniform on [0, 1)).
            out.extend((0..n).map(|_| {
                let u: f64 = rand::Rng::random(rng);
                (1.0 - u) * theta
            }));
        }
    }
    Ok(out)
}

/// Does the test reject the (mapped) null for this posterior?
///
/// Works through the evidence measures, which coincide exactly with the set
/// containment rules: θ₀ is outside the central 1 − α interval iff the
/// central evidence is below α, and outside the 1 − α HPD set iff the
/// tangent evidence is below α (a null outside the support closure is
/// outside every credible subset of the support).
fn test_rejects(
    post: &ContinuousPosterior,
    test: TestKind,
    theta0_mapped: f64,
    alpha: f64,
) -> Result<bool> {
    match test {
        TestKind::Central => Ok(central_evidence(post, theta0_mapped) < alpha),
        TestKind::Hpd => {
            let support = post.support();
            if theta0_mapped < support.lo || theta0_mapped > support.hi {
                return Ok(true);
            }
            Ok(fbst_evidence(post, theta0_mapped)? < alpha)
        }
    }
}

fn replication_rejects(
    cfg: &PowerStudyConfig,
    test: TestKind,
    theta_true: f64,
    theta0_mapped: f64,
    rep: u64,
) -> Result<bool> {
    let mut rng = substream(cfg.seed, &[test.stream_id(), theta_true.to_bits(), rep]);
    let obs = draw_observations(&cfg.scenario, theta_true, cfg.sample_size, &mut rng)?;
    let post = posterior_from_data(&cfg.scenario, &Sample::new(obs)?)?;
    test_rejects(&post, test, theta0_mapped, cfg.alpha)
}

/// Estimate the rejection rate of one test at one true parameter value.
///
/// Returns the rejection fraction and its binomial standard error
/// √(p̂(1−p̂)/R). Deterministic given (seed, test, theta_true).
pub fn simulate_rejection_rate(
    cfg: &PowerStudyConfig,
    test: TestKind,
    theta_true: f64,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    if !cfg.scenario.theta_valid(theta_true) {
        return Err(Error::domain(format!(
            "theta_true = {theta_true} is not a valid parameter for scenario {}",
            cfg.scenario.name()
        )));
    }
    let theta0_mapped = cfg.scenario.map_null(cfg.theta0)?;
    let r = cfg.replications;
    let rejections: Result<u64> = (0..r as u64)
        .into_par_iter()
        .map(|rep| replication_rejects(cfg, test, theta_true, theta0_mapped, rep).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b));
    let k = rejections?;
    let rate = k as f64 / r as f64;
    let se = (rate * (1.0 - rate) / r as f64).sqrt();
    Ok((rate, se))
}

/// Run the full study: one curve per requested test over the grid.
pub fn power_study(cfg: &PowerStudyConfig) -> Result<Vec<PowerCurve>> {
    cfg.validate()?;
    cfg.tests
        .iter()
        .map(|&test| {
            let mut rates = Vec::with_capacity(cfg.theta_grid.len());
            let mut ses = Vec::with_capacity(cfg.theta_grid.len());
            for &theta in &cfg.theta_grid {
                let (rate, se) = simulate_rejection_rate(cfg, test, theta)?;
                rates.push(rate);
                ses.push(se);
            }
            Ok(PowerCurve {
                test,
                theta_values: cfg.theta_grid.clone(),
                rejection_rates: rates,
                standard_errors: ses,
            })
        })
        .collect()
}

/// Power difference statistics (central − hpd) on one side of the null.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideComparison {
    pub max_diff: f64,
    pub mean_diff: f64,
}

/// Side-split comparison of the two tests' curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonSummary {
    /// Statistics over grid points with θ < θ₀ (None if that side is empty).
    pub below: Option<SideComparison>,
    /// Statistics over grid points with θ > θ₀.
    pub above: Option<SideComparison>,
    /// Estimated sizes at θ₀, when θ₀ is a grid point.
    pub size_central: Option<f64>,
    pub size_hpd: Option<f64>,
}

/// Summarize a pair of curves (both tests over the same grid).
pub fn summarize_comparison(curves: &[PowerCurve], theta0: f64) -> Result<ComparisonSummary> {
    let central = curves
        .iter()
        .find(|c| c.test == TestKind::Central)
        .ok_or_else(|| Error::domain("summary requires a central-test curve"))?;
    let hpd = curves
        .iter()
        .find(|c| c.test == TestKind::Hpd)
        .ok_or_else(|| Error::domain("summary requires an hpd-test curve"))?;
    if central.theta_values != hpd.theta_values {
        return Err(Error::domain("curves were computed on different grids"));
    }

    let mut below = Vec::new();
    let mut above = Vec::new();
    let mut size_central = None;
    let mut size_hpd = None;
    for (i, &theta) in central.theta_values.iter().enumerate() {
        let diff = central.rejection_rates[i] - hpd.rejection_rates[i];
        if theta < theta0 {
            below.push(diff);
        } else if theta > theta0 {
            above.push(diff);
        } else {
            size_central = Some(central.rejection_rates[i]);
            size_hpd = Some(hpd.rejection_rates[i]);
        }
    }
    let side = |diffs: &[f64]| {
        if diffs.is_empty() {
            None
        } else {
            Some(SideComparison {
                max_diff: diffs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
                mean_diff: diffs.iter().sum::<f64>() / diffs.len() as f64,
            })
        }
    };
    Ok(ComparisonSummary {
        below: side(&below),
        above: side(&above),
        size_central,
        size_hpd,
    })
}
