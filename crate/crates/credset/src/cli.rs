//! Machine-readable input/output for the command-line front end: data-file
//! ingestion, the key=value result record and its parser, the power-study
//! CSV schema, and the TOML study configuration.
//!
//! Records are one `key=value` pair per line. Floats are rendered with
//! Rust's shortest round-trip formatting, so parsing an emitted record
//! reproduces every field exactly; infinite endpoints appear as `inf` /
//! `-inf`.

use std::io::BufRead;

use serde::Deserialize;

use crate::conjugate::Scenario;
use crate::credible::{CredibleSet, Interval};
use crate::dist::ContinuousPosterior;
use crate::error::{Error, Result};
use crate::power::{PowerCurve, PowerStudyConfig, TestKind};
use crate::testing::HypothesisRegion;

/// Read observations: one real per line, blank lines and '#'-prefixed
/// comment lines ignored, locale-independent decimal parsing.
pub fn read_data<R: BufRead>(reader: R) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::data(format!("line {}: {e}", idx + 1)))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let value: f64 = trimmed.parse().map_err(|_| {
            Error::data(format!(
                "line {}: cannot parse '{trimmed}' as a real",
                idx + 1
            ))
        })?;
        values.push(value);
    }
    Ok(values)
}

/// Parse a composite region given as `lo1:hi1,lo2:hi2,...` with `inf` /
/// `-inf` sentinels for unbounded endpoints.
pub fn parse_region(text: &str) -> Result<HypothesisRegion> {
    let mut intervals = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (lo, hi) = part.split_once(':').ok_or_else(|| {
            Error::data(format!("region interval '{part}' is not of the form lo:hi"))
        })?;
        let lo: f64 = lo
            .trim()
            .parse()
            .map_err(|_| Error::data(format!("cannot parse region endpoint '{lo}'")))?;
        let hi: f64 = hi
            .trim()
            .parse()
            .map_err(|_| Error::data(format!("cannot parse region endpoint '{hi}'")))?;
        intervals.push(Interval::new(lo, hi));
    }
    HypothesisRegion::new(intervals)
}

/// Summary of a credible set as it appears in a result record.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSummary {
    pub kind: String,
    pub lo: f64,
    pub hi: f64,
    pub nominal_credibility: f64,
    pub achieved_mass: f64,
    pub density_level: Option<f64>,
    pub one_sided: Option<bool>,
}

impl IntervalSummary {
    /// Flatten a credible set; `one_sided` is reported for HPD sets that
    /// attach to a support endpoint of the posterior.
    pub fn from_set(set: &CredibleSet, d: &ContinuousPosterior) -> Self {
        let iv = set.intervals[0];
        let one_sided = match set.kind {
            crate::credible::SetKind::Hpd => {
                let support = d.support();
                Some(iv.lo == support.lo || iv.hi == support.hi)
            }
            _ => None,
        };
        IntervalSummary {
            kind: set.kind.name().to_string(),
            lo: iv.lo,
            hi: iv.hi,
            nominal_credibility: set.nominal_credibility,
            achieved_mass: set.achieved_mass,
            density_level: set.density_level,
            one_sided,
        }
    }
}

/// One structured result record, as emitted by `credset test` and
/// `credset interval`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunResult {
    pub command: String,
    pub method: Option<String>,
    pub scenario: String,
    pub theta0: Option<f64>,
    pub alpha: f64,
    pub posterior_family: String,
    pub posterior_params: Vec<f64>,
    pub decision: Option<String>,
    pub ev_hpd: Option<f64>,
    pub ev_central: Option<f64>,
    pub threshold: Option<f64>,
    pub region_probability: Option<f64>,
    pub interval: Option<IntervalSummary>,
}

fn fmt_float(x: f64) -> String {
    format!("{x}")
}

fn fmt_floats(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| fmt_float(*x))
        .collect::<Vec<_>>()
        .join(",")
}

impl RunResult {
    /// Render the record: one `key=value` per line in a fixed order.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        let mut push = |k: &str, v: String| {
            out.push_str(k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        };
        push("command", self.command.clone());
        if let Some(m) = &self.method {
            push("method", m.clone());
        }
        push("scenario", self.scenario.clone());
        if let Some(t) = self.theta0 {
            push("theta0", fmt_float(t));
        }
        push("alpha", fmt_float(self.alpha));
        push("posterior_family", self.posterior_family.clone());
        push("posterior_params", fmt_floats(&self.posterior_params));
        if let Some(d) = &self.decision {
            push("decision", d.clone());
        }
        if let Some(v) = self.ev_hpd {
            push("ev_hpd", fmt_float(v));
        }
        if let Some(v) = self.ev_central {
            push("ev_central", fmt_float(v));
        }
        if let Some(v) = self.threshold {
            push("threshold", fmt_float(v));
        }
        if let Some(v) = self.region_probability {
            push("region_probability", fmt_float(v));
        }
        if let Some(iv) = &self.interval {
            push("interval_kind", iv.kind.clone());
            push("interval_lo", fmt_float(iv.lo));
            push("interval_hi", fmt_float(iv.hi));
            push("nominal_credibility", fmt_float(iv.nominal_credibility));
            push("achieved_mass", fmt_float(iv.achieved_mass));
            if let Some(level) = iv.density_level {
                push("density_level", fmt_float(level));
            }
            if let Some(flag) = iv.one_sided {
                push("one_sided", flag.to_string());
            }
        }
        out
    }

    /// Parse a record emitted by [`Self::to_record`].
    pub fn parse_record(text: &str) -> Result<RunResult> {
        let mut result = RunResult::default();
        let mut interval: Option<IntervalSummary> = None;
        let float = |v: &str| -> Result<f64> {
            v.parse()
                .map_err(|_| Error::data(format!("cannot parse '{v}' as a real")))
        };
        fn iv(interval: &mut Option<IntervalSummary>) -> &mut IntervalSummary {
            interval.get_or_insert_with(|| IntervalSummary {
                kind: String::new(),
                lo: f64::NAN,
                hi: f64::NAN,
                nominal_credibility: f64::NAN,
                achieved_mass: f64::NAN,
                density_level: None,
                one_sided: None,
            })
        }
        let mut saw_alpha = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::data(format!("record line '{line}' has no '='")))?;
            match key {
                "command" => result.command = value.to_string(),
                "method" => result.method = Some(value.to_string()),
                "scenario" => result.scenario = value.to_string(),
                "theta0" => result.theta0 = Some(float(value)?),
                "alpha" => {
                    result.alpha = float(value)?;
                    saw_alpha = true;
                }
                "posterior_family" => result.posterior_family = value.to_string(),
                "posterior_params" => {
                    result.posterior_params =
                        value.split(',').map(float).collect::<Result<Vec<f64>>>()?;
                }
                "decision" => result.decision = Some(value.to_string()),
                "ev_hpd" => result.ev_hpd = Some(float(value)?),
                "ev_central" => result.ev_central = Some(float(value)?),
                "threshold" => result.threshold = Some(float(value)?),
                "region_probability" => result.region_probability = Some(float(value)?),
                "interval_kind" => iv(&mut interval).kind = value.to_string(),
                "interval_lo" => iv(&mut interval).lo = float(value)?,
                "interval_hi" => iv(&mut interval).hi = float(value)?,
                "nominal_credibility" => iv(&mut interval).nominal_credibility = float(value)?,
                "achieved_mass" => iv(&mut interval).achieved_mass = float(value)?,
                "density_level" => iv(&mut interval).density_level = Some(float(value)?),
                "one_sided" => {
                    iv(&mut interval).one_sided =
                        Some(value.parse().map_err(|_| {
                            Error::data(format!("cannot parse '{value}' as a boolean"))
                        })?)
                }
                other => return Err(Error::data(format!("unknown record key '{other}'"))),
            }
        }
        if result.command.is_empty() {
            return Err(Error::data("record has no 'command' field"));
        }
        if !saw_alpha {
            return Err(Error::data("record has no 'alpha' field"));
        }
        result.interval = interval;
        Ok(result)
    }
}

/// Render a float with exactly 10 significant digits (CSV schema).
pub fn fmt_sig10(x: f64) -> String {
    format!("{x:.9e}")
}

/// The power-study CSV: fixed header, one row per (grid point, test),
/// numeric fields with 10 significant digits.
pub fn power_csv(cfg: &PowerStudyConfig, curves: &[PowerCurve]) -> String {
    let mut out = String::from("theta,test,rejection_rate,std_error,n,R,alpha,seed\n");
    for (i, &theta) in cfg.theta_grid.iter().enumerate() {
        for curve in curves {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                fmt_sig10(theta),
                curve.test.name(),
                fmt_sig10(curve.rejection_rates[i]),
                fmt_sig10(curve.standard_errors[i]),
                cfg.sample_size,
                cfg.replications,
                fmt_sig10(cfg.alpha),
                cfg.seed
            ));
        }
    }
    out
}

/// Assemble a scenario from its name and the constants supplied by flags or
/// a config file.
pub fn scenario_from_parts(
    name: &str,
    known_mean: Option<f64>,
    known_shape: Option<f64>,
    pareto_m: Option<f64>,
    pareto_k: Option<f64>,
) -> Result<Scenario> {
    let need = |opt: Option<f64>, what: &str| {
        opt.ok_or_else(|| Error::data(format!("scenario {name} requires {what}")))
    };
    let scenario = match name {
        "normal-variance" => Scenario::NormalVarianceKnownMean {
            mean: need(known_mean, "--known-mean")?,
        },
        "exponential-rate" => Scenario::ExponentialRate,
        "gamma-rate" => Scenario::GammaRateKnownShape {
            shape: need(known_shape, "--known-shape")?,
        },
        "inverse-gamma-rate" => Scenario::InverseGammaRateKnownShape {
            shape: need(known_shape, "--known-shape")?,
        },
        "weibull-rate" => Scenario::WeibullRateKnownShape {
            shape: need(known_shape, "--known-shape")?,
        },
        "uniform-upper" => Scenario::UniformUpperPareto {
            prior_min: need(pareto_m, "--pareto-m")?,
            prior_index: need(pareto_k, "--pareto-k")?,
        },
        other => {
            return Err(Error::data(format!(
                "unknown scenario '{other}' (expected one of normal-variance, \
                 exponential-rate, gamma-rate, inverse-gamma-rate, weibull-rate, uniform-upper)"
            )))
        }
    };
    scenario.validate()?;
    Ok(scenario)
}

/// The on-disk study configuration (TOML). Unknown keys are fatal and named
/// in the error.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerConfigFile {
    pub scenario: String,
    pub known_mean: Option<f64>,
    pub known_shape: Option<f64>,
    pub pareto_m: Option<f64>,
    pub pareto_k: Option<f64>,
    pub theta0: f64,
    pub theta_grid: Vec<f64>,
    pub sample_size: usize,
    pub replications: usize,
    pub alpha: f64,
    pub tests: Vec<String>,
    pub seed: u64,
}

impl PowerConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::data(format!("config file: {e}")))
    }

    pub fn into_study_config(self) -> Result<PowerStudyConfig> {
        let scenario = scenario_from_parts(
            &self.scenario,
            self.known_mean,
            self.known_shape,
            self.pareto_m,
            self.pareto_k,
        )?;
        let tests = self
            .tests
            .iter()
            .map(|t| TestKind::from_name(t))
            .collect::<Result<Vec<_>>>()?;
        let cfg = PowerStudyConfig {
            scenario,
            theta0: self.theta0,
            theta_grid: self.theta_grid,
            sample_size: self.sample_size,
            replications: self.replications,
            alpha: self.alpha,
            tests,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_reader_skips_comments_and_blanks() {
        let text = "# observations\n1.0\n\n  2.5\n# done\n-0.75\n";
        let values = read_data(text.as_bytes()).unwrap();
        assert_eq!(values, vec![1.0, 2.5, -0.75]);
    }

    #[test]
    fn data_reader_reports_line_numbers() {
        let text = "1.0\nnot-a-number\n";
        let err = read_data(text.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Data(_)));
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn region_parsing_with_infinities() {
        let region = parse_region("-inf:0.5,2:inf").unwrap();
        assert_eq!(region.intervals().len(), 2);
        assert!(region.intervals()[0].lo.is_infinite());
        assert_eq!(region.intervals()[0].hi, 0.5);
        assert_eq!(region.intervals()[1].lo, 2.0);
        assert!(parse_region("1:2,1.5:3").is_err());
        assert!(parse_region("nonsense").is_err());
    }

    #[test]
    fn record_round_trip_is_exact() {
        let result = RunResult {
            command: "test".into(),
            method: Some("mew".into()),
            scenario: "exponential-rate".into(),
            theta0: Some(1.0 / 3.0),
            alpha: 0.05,
            posterior_family: "gamma".into(),
            posterior_params: vec![3.0, 4.5000000001],
            decision: Some("reject".into()),
            ev_hpd: Some(0.012345678901234567),
            ev_central: Some(0.09),
            threshold: Some(0.05),
            region_probability: None,
            interval: Some(IntervalSummary {
                kind: "hpd".into(),
                lo: 0.06744456860505,
                hi: f64::INFINITY,
                nominal_credibility: 0.95,
                achieved_mass: 0.9499999999999,
                density_level: Some(0.23),
                one_sided: Some(true),
            }),
        };
        let text = result.to_record();
        let parsed = RunResult::parse_record(&text).unwrap();
        assert_eq!(parsed, result);
    }

    #[test]
    fn record_parser_rejects_unknown_keys() {
        assert!(RunResult::parse_record("command=test\nalpha=0.05\nwat=1\n").is_err());
        assert!(RunResult::parse_record("alpha=0.05\n").is_err());
    }

    #[test]
    fn sig10_rendering() {
        assert_eq!(fmt_sig10(0.05), "5.000000000e-2");
        assert_eq!(fmt_sig10(0.12345678949), "1.234567895e-1");
    }

    #[test]
    fn csv_schema() {
        use crate::conjugate::Scenario;
        let cfg = PowerStudyConfig {
            scenario: Scenario::ExponentialRate,
            theta0: 1.0,
            theta_grid: vec![0.5, 1.0],
            sample_size: 20,
            replications: 400,
            alpha: 0.05,
            tests: vec![TestKind::Central, TestKind::Hpd],
            seed: 11,
        };
        let curves = vec![
            PowerCurve {
                test: TestKind::Central,
                theta_values: vec![0.5, 1.0],
                rejection_rates: vec![0.25, 0.05],
                standard_errors: vec![0.02, 0.01],
            },
            PowerCurve {
                test: TestKind::Hpd,
                theta_values: vec![0.5, 1.0],
                rejection_rates: vec![0.30, 0.055],
                standard_errors: vec![0.02, 0.011],
            },
        ];
        let csv = power_csv(&cfg, &curves);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "theta,test,rejection_rate,std_error,n,R,alpha,seed"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("5.000000000e-1,central,"), "{row}");
        assert!(row.ends_with(",20,400,5.000000000e-2,11"), "{row}");
        assert_eq!(csv.lines().count(), 1 + 4);
    }

    #[test]
    fn config_file_parsing() {
        let text = r#"
scenario = "normal-variance"
known_mean = 0.0
theta0 = 1.0
theta_grid = [0.5, 1.0, 2.0]
sample_size = 20
replications = 500
alpha = 0.05
tests = ["central", "hpd"]
seed = 99
"#;
        let cfg = PowerConfigFile::parse(text)
            .unwrap()
            .into_study_config()
            .unwrap();
        assert_eq!(cfg.sample_size, 20);
        assert_eq!(cfg.tests, vec![TestKind::Central, TestKind::Hpd]);

        let bad = text.replace("seed = 99", "seed = 99\nbogus_key = 1");
        let err = PowerConfigFile::parse(&bad).unwrap_err();
        assert!(err.to_string().contains("bogus_key"), "{err}");
    }

    #[test]
    fn scenario_assembly_names_missing_constants() {
        let err = scenario_from_parts("gamma-rate", None, None, None, None).unwrap_err();
        assert!(err.to_string().contains("--known-shape"), "{err}");
        assert!(scenario_from_parts("exponential-rate", None, None, None, None).is_ok());
        assert!(scenario_from_parts("no-such", None, None, None, None).is_err());
    }
}
