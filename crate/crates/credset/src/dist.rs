//! The family of continuous posteriors: normal, exponential, gamma,
//! inverse-gamma, Weibull and Pareto, each with consistent log-density, CDF
//! and quantile function plus a shape classification used by the HPD
//! constructors.
//!
//! Values are immutable after construction and all methods are pure, so a
//! posterior can be shared freely across threads.

use crate::error::{Error, Result};
use crate::special;

/// The distribution families available as posteriors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Normal,
    Exponential,
    Gamma,
    InverseGamma,
    Weibull,
    Pareto,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Normal => "normal",
            Family::Exponential => "exponential",
            Family::Gamma => "gamma",
            Family::InverseGamma => "inverse_gamma",
            Family::Weibull => "weibull",
            Family::Pareto => "pareto",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "normal" => Ok(Family::Normal),
            "exponential" => Ok(Family::Exponential),
            "gamma" => Ok(Family::Gamma),
            "inverse_gamma" => Ok(Family::InverseGamma),
            "weibull" => Ok(Family::Weibull),
            "pareto" => Ok(Family::Pareto),
            other => Err(Error::domain(format!(
                "unknown distribution family '{other}'"
            ))),
        }
    }
}

/// Qualitative shape of a density, which decides how level sets are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    SymmetricUnimodal,
    UnimodalInteriorMode,
    MonotoneDecreasing,
    MonotoneIncreasing,
}

/// Support interval; endpoints may be ±∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Params {
    Normal { mean: f64, sd: f64 },
    Exponential { rate: f64 },
    Gamma { shape: f64, rate: f64 },
    InverseGamma { shape: f64, scale: f64 },
    Weibull { shape: f64, scale: f64 },
    Pareto { min: f64, index: f64 },
}

/// An absolutely continuous posterior distribution on a real interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousPosterior {
    params: Params,
}

fn require_positive(family: &str, name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(format!(
            "{family} requires {name} > 0, got {name} = {value}"
        )))
    }
}

fn require_finite(family: &str, name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(format!(
            "{family} requires finite {name}, got {name} = {value}"
        )))
    }
}

impl ContinuousPosterior {
    /// Build a posterior from a family tag and its parameter list.
    ///
    /// Parameter counts and constraints per family: normal(mean, sd>0),
    /// exponential(rate>0), gamma(shape>0, rate>0), inverse_gamma(shape>0,
    /// scale>0), weibull(shape>0, scale>0), pareto(min>0, index>0).
    pub fn make_distribution(family: Family, params: &[f64]) -> Result<Self> {
        let expect = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::domain(format!(
                    "{} takes {n} parameters, got {}",
                    family.name(),
                    params.len()
                )))
            }
        };
        match family {
            Family::Normal => {
                expect(2)?;
                Self::normal(params[0], params[1])
            }
            Family::Exponential => {
                expect(1)?;
                Self::exponential(params[0])
            }
            Family::Gamma => {
                expect(2)?;
                Self::gamma(params[0], params[1])
            }
            Family::InverseGamma => {
                expect(2)?;
                Self::inverse_gamma(params[0], params[1])
            }
            Family::Weibull => {
                expect(2)?;
                Self::weibull(params[0], params[1])
            }
            Family::Pareto => {
                expect(2)?;
                Self::pareto(params[0], params[1])
            }
        }
    }

    pub fn normal(mean: f64, sd: f64) -> Result<Self> {
        require_finite("normal", "mean", mean)?;
        require_positive("normal", "sd", sd)?;
        Ok(Self {
            params: Params::Normal { mean, sd },
        })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        require_positive("exponential", "rate", rate)?;
        Ok(Self {
            params: Params::Exponential { rate },
        })
    }

    pub fn gamma(shape: f64, rate: f64) -> Result<Self> {
        require_positive("gamma", "shape", shape)?;
        require_positive("gamma", "rate", rate)?;
        Ok(Self {
            params: Params::Gamma { shape, rate },
        })
    }

    pub fn inverse_gamma(shape: f64, scale: f64) -> Result<Self> {
        require_positive("inverse_gamma", "shape", shape)?;
        require_positive("inverse_gamma", "scale", scale)?;
        Ok(Self {
            params: Params::InverseGamma { shape, scale },
        })
    }

    pub fn weibull(shape: f64, scale: f64) -> Result<Self> {
        require_positive("weibull", "shape", shape)?;
        require_positive("weibull", "scale", scale)?;
        Ok(Self {
            params: Params::Weibull { shape, scale },
        })
    }

    pub fn pareto(min: f64, index: f64) -> Result<Self> {
        require_positive("pareto", "min", min)?;
        require_positive("pareto", "index", index)?;
        Ok(Self {
            params: Params::Pareto { min, index },
        })
    }

    pub fn family(&self) -> Family {
        match self.params {
            Params::Normal { .. } => Family::Normal,
            Params::Exponential { .. } => Family::Exponential,
            Params::Gamma { .. } => Family::Gamma,
            Params::InverseGamma { .. } => Family::InverseGamma,
            Params::Weibull { .. } => Family::Weibull,
            Params::Pareto { .. } => Family::Pareto,
        }
    }

    /// Parameters in the order accepted by [`Self::make_distribution`].
    pub fn params(&self) -> Vec<f64> {
        match self.params {
            Params::Normal { mean, sd } => vec![mean, sd],
            Params::Exponential { rate } => vec![rate],
            Params::Gamma { shape, rate } => vec![shape, rate],
            Params::InverseGamma { shape, scale } => vec![shape, scale],
            Params::Weibull { shape, scale } => vec![shape, scale],
            Params::Pareto { min, index } => vec![min, index],
        }
    }

    pub fn support(&self) -> Support {
        match self.params {
            Params::Normal { .. } => Support {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            },
            Params::Exponential { .. }
            | Params::Gamma { .. }
            | Params::InverseGamma { .. }
            | Params::Weibull { .. } => Support {
                lo: 0.0,
                hi: f64::INFINITY,
            },
            Params::Pareto { min, .. } => Support {
                lo: min,
                hi: f64::INFINITY,
            },
        }
    }

    pub fn shape_class(&self) -> ShapeClass {
        match self.params {
            Params::Normal { .. } => ShapeClass::SymmetricUnimodal,
            Params::Exponential { .. } => ShapeClass::MonotoneDecreasing,
            Params::Gamma { shape, .. } => {
                if shape > 1.0 {
                    ShapeClass::UnimodalInteriorMode
                } else {
                    ShapeClass::MonotoneDecreasing
                }
            }
            Params::InverseGamma { .. } => ShapeClass::UnimodalInteriorMode,
            Params::Weibull { shape, .. } => {
                if shape > 1.0 {
                    ShapeClass::UnimodalInteriorMode
                } else {
                    ShapeClass::MonotoneDecreasing
                }
            }
            Params::Pareto { .. } => ShapeClass::MonotoneDecreasing,
        }
    }

    /// Location of the density maximum. For monotone shapes this is the
    /// support endpoint the density is attached to.
    pub fn mode(&self) -> f64 {
        match self.params {
            Params::Normal { mean, .. } => mean,
            Params::Exponential { .. } => 0.0,
            Params::Gamma { shape, rate } => {
                if shape > 1.0 {
                    (shape - 1.0) / rate
                } else {
                    0.0
                }
            }
            Params::InverseGamma { shape, scale } => scale / (shape + 1.0),
            Params::Weibull { shape, scale } => {
                if shape > 1.0 {
                    scale * ((shape - 1.0) / shape).powf(1.0 / shape)
                } else {
                    0.0
                }
            }
            Params::Pareto { min, .. } => min,
        }
    }

    /// Cumulative distribution function, exact per family; values outside
    /// the support clamp to 0 or 1.
    pub fn cdf(&self, t: f64) -> f64 {
        match self.params {
            Params::Normal { mean, sd } => special::standard_normal_cdf((t - mean) / sd),
            Params::Exponential { rate } => {
                if t <= 0.0 {
                    0.0
                } else {
                    -(-rate * t).exp_m1()
                }
            }
            Params::Gamma { shape, rate } => {
                if t <= 0.0 {
                    0.0
                } else {
                    special::gamma_inc_pair(shape, rate * t)
                        .map(|(p, _)| p)
                        .unwrap_or(1.0)
                }
            }
            Params::InverseGamma { shape, scale } => {
                if t <= 0.0 {
                    0.0
                } else {
                    special::gamma_inc_pair(shape, scale / t)
                        .map(|(_, q)| q)
                        .unwrap_or(1.0)
                }
            }
            Params::Weibull { shape, scale } => {
                if t <= 0.0 {
                    0.0
                } else {
                    -(-(t / scale).powf(shape)).exp_m1()
                }
            }
            Params::Pareto { min, index } => {
                if t <= min {
                    0.0
                } else {
                    -(index * (min / t).ln()).exp_m1()
                }
            }
        }
    }

    /// Quantile function; the inverse of [`Self::cdf`] on the support.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!(
                "quantile requires p in (0,1), got p = {p}"
            )));
        }
        Ok(match self.params {
            Params::Normal { mean, sd } => mean + sd * special::standard_normal_quantile(p)?,
            Params::Exponential { rate } => -(-p).ln_1p() / rate,
            Params::Gamma { shape, rate } => special::inv_reg_lower_inc_gamma(shape, p)? / rate,
            Params::InverseGamma { shape, scale } => {
                // F(t) = Q(shape, scale/t); the upper inverse keeps both
                // tails relatively accurate.
                scale / special::inv_reg_upper_inc_gamma(shape, p)?
            }
            Params::Weibull { shape, scale } => scale * (-(-p).ln_1p()).powf(1.0 / shape),
            Params::Pareto { min, index } => min * (1.0 - p).powf(-1.0 / index),
        })
    }

    /// Natural log of the density; −∞ outside the support.
    pub fn log_pdf(&self, t: f64) -> f64 {
        match self.params {
            Params::Normal { mean, sd } => {
                special::standard_normal_log_pdf((t - mean) / sd) - sd.ln()
            }
            Params::Exponential { rate } => {
                if t <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    rate.ln() - rate * t
                }
            }
            Params::Gamma { shape, rate } => {
                if t <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    shape * rate.ln() - special::log_gamma_unchecked(shape) + (shape - 1.0) * t.ln()
                        - rate * t
                }
            }
            Params::InverseGamma { shape, scale } => {
                if t <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    shape * scale.ln()
                        - special::log_gamma_unchecked(shape)
                        - (shape + 1.0) * t.ln()
                        - scale / t
                }
            }
            Params::Weibull { shape, scale } => {
                if t <= 0.0 {
                    f64::NEG_INFINITY
                } else {
                    shape.ln() - shape * scale.ln() + (shape - 1.0) * t.ln()
                        - (t / scale).powf(shape)
                }
            }
            Params::Pareto { min, index } => {
                if t < min {
                    f64::NEG_INFINITY
                } else {
                    index.ln() + index * min.ln() - (index + 1.0) * t.ln()
                }
            }
        }
    }

    /// Density (convenience wrapper over [`Self::log_pdf`]).
    pub fn pdf(&self, t: f64) -> f64 {
        self.log_pdf(t).exp()
    }
}
