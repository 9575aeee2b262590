//! Posterior derivation for the testing scenarios: the Jeffreys prior for
//! a scale/rate parameter (∝ 1/θ) for the normal-variance, exponential,
//! gamma, inverse-gamma and transformed-Weibull rate models, and the
//! conjugate Pareto prior for the upper endpoint of a uniform.
//!
//! Every scenario reduces to a gamma, inverse-gamma or Pareto posterior
//! through its sufficient statistic:
//!
//! | scenario                        | posterior                              |
//! |---------------------------------|----------------------------------------|
//! | normal, known mean μ, θ = σ²    | inverse_gamma(n/2, Σ(xᵢ−μ)²/2)         |
//! | exponential rate                | gamma(n, Σxᵢ)                          |
//! | gamma rate, known shape k       | gamma(nk, Σxᵢ)                         |
//! | inverse-gamma rate, known k     | gamma(nk, Σ 1/xᵢ)                      |
//! | Weibull, known shape k, η = λ⁻ᵏ | gamma(n, Σxᵢᵏ)                         |
//! | U(0, θ), Pareto(m, k) prior     | pareto(max(m, max xᵢ), k + n)          |
//!
//! The Weibull model is handled on the transformed rate η = λ⁻ᵏ (yᵢ = xᵢᵏ is
//! exponential with rate η); a null λ₀ maps to η₀ = λ₀⁻ᵏ, which preserves
//! quantile-based set membership.

use crate::dist::ContinuousPosterior;
use crate::error::{Error, Result};

/// A sampling model plus its known constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    /// X ~ N(μ, σ²) with μ known; the tested parameter is σ².
    NormalVarianceKnownMean { mean: f64 },
    /// X ~ Exp(λ); the tested parameter is the rate λ.
    ExponentialRate,
    /// X ~ Gamma(k, θ) with shape k known; the tested parameter is the rate θ.
    GammaRateKnownShape { shape: f64 },
    /// X ~ InvGamma(k, β) with shape k known; the tested parameter is β.
    InverseGammaRateKnownShape { shape: f64 },
    /// X ~ Weibull(k, λ) with shape k known; tested on the rate η = λ⁻ᵏ.
    WeibullRateKnownShape { shape: f64 },
    /// X ~ U(0, θ) with a Pareto(m, k) prior on θ.
    UniformUpperPareto { prior_min: f64, prior_index: f64 },
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::NormalVarianceKnownMean { .. } => "normal-variance",
            Scenario::ExponentialRate => "exponential-rate",
            Scenario::GammaRateKnownShape { .. } => "gamma-rate",
            Scenario::InverseGammaRateKnownShape { .. } => "inverse-gamma-rate",
            Scenario::WeibullRateKnownShape { .. } => "weibull-rate",
            Scenario::UniformUpperPareto { .. } => "uniform-upper",
        }
    }

    /// Validate the scenario's fixed constants.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Scenario::NormalVarianceKnownMean { mean } => {
                if !mean.is_finite() {
                    return Err(Error::domain(format!(
                        "known mean must be finite, got {mean}"
                    )));
                }
            }
            Scenario::ExponentialRate => {}
            Scenario::GammaRateKnownShape { shape }
            | Scenario::InverseGammaRateKnownShape { shape }
            | Scenario::WeibullRateKnownShape { shape } => {
                if !(shape.is_finite() && shape > 0.0) {
                    return Err(Error::domain(format!(
                        "known shape must be positive, got {shape}"
                    )));
                }
            }
            Scenario::UniformUpperPareto {
                prior_min,
                prior_index,
            } => {
                if !(prior_min.is_finite() && prior_min > 0.0) {
                    return Err(Error::domain(format!(
                        "pareto prior min must be positive, got {prior_min}"
                    )));
                }
                if !(prior_index.is_finite() && prior_index > 0.0) {
                    return Err(Error::domain(format!(
                        "pareto prior index must be positive, got {prior_index}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Do the observations have to be strictly positive?
    pub fn requires_positive_data(&self) -> bool {
        !matches!(self, Scenario::NormalVarianceKnownMean { .. })
    }

    /// Map a null value stated on the user-facing parameter onto the
    /// parameter of the derived posterior (identity except for Weibull,
    /// where λ₀ becomes η₀ = λ₀⁻ᵏ).
    pub fn map_null(&self, theta0: f64) -> Result<f64> {
        match *self {
            Scenario::WeibullRateKnownShape { shape } => {
                if !(theta0.is_finite() && theta0 > 0.0) {
                    return Err(Error::domain(format!(
                        "weibull null scale must be positive, got {theta0}"
                    )));
                }
                Ok(theta0.powf(-shape))
            }
            _ => Ok(theta0),
        }
    }

    /// Is `theta` a valid value of the scenario's true parameter?
    pub fn theta_valid(&self, theta: f64) -> bool {
        theta.is_finite() && theta > 0.0
    }
}

/// An observed sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::data("empty sample"));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::data(format!("non-finite observation {bad}")));
        }
        Ok(Sample { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

/// Derive the posterior distribution of the tested parameter.
pub fn posterior_from_data(scenario: &Scenario, data: &Sample) -> Result<ContinuousPosterior> {
    scenario.validate()?;
    let n = data.n() as f64;
    if scenario.requires_positive_data() {
        if let Some(bad) = data.values().iter().find(|v| **v <= 0.0) {
            return Err(Error::data(format!(
                "scenario {} requires strictly positive observations, got {bad}",
                scenario.name()
            )));
        }
    }
    match *scenario {
        Scenario::NormalVarianceKnownMean { mean } => {
            let ss: f64 = data.values().iter().map(|x| (x - mean) * (x - mean)).sum();
            if ss <= 0.0 {
                return Err(Error::data(
                    "all observations equal the known mean; the posterior scale would be zero",
                ));
            }
            ContinuousPosterior::inverse_gamma(n / 2.0, ss / 2.0)
        }
        Scenario::ExponentialRate => {
            let sum: f64 = data.values().iter().sum();
            ContinuousPosterior::gamma(n, sum)
        }
        Scenario::GammaRateKnownShape { shape } => {
            let sum: f64 = data.values().iter().sum();
            ContinuousPosterior::gamma(n * shape, sum)
        }
        Scenario::InverseGammaRateKnownShape { shape } => {
            let sum_inv: f64 = data.values().iter().map(|x| 1.0 / x).sum();
            ContinuousPosterior::gamma(n * shape, sum_inv)
        }
        Scenario::WeibullRateKnownShape { shape } => {
            let sum_pow: f64 = data.values().iter().map(|x| x.powf(shape)).sum();
            ContinuousPosterior::gamma(n, sum_pow)
        }
        Scenario::UniformUpperPareto {
            prior_min,
            prior_index,
        } => {
            let max = data
                .values()
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            ContinuousPosterior::pareto(prior_min.max(max), prior_index + n)
        }
    }
}
