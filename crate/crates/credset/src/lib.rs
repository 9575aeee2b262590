//! Bayesian hypothesis testing by inversion of credible sets.
//!
//! A point null θ = θ₀ is tested by checking whether θ₀ lies in a posterior
//! credible set: the central 1 − α interval, the highest-posterior-density
//! set, or a one-sided credible bound. The crate provides
//!
//! - the posterior families and special functions behind them ([`dist`],
//!   [`special`]),
//! - conjugate posterior derivation for six scale/rate testing scenarios
//!   under noninformative priors ([`conjugate`]),
//! - credible-set constructors and containment queries ([`credible`]),
//! - the decision rules: the three-decision test with its expected-loss
//!   oracle, tangent-set evidence and the loss-based HPD test, and weighted
//!   0–1 tests for composite hypotheses ([`testing`]),
//! - a deterministic Monte Carlo harness comparing the frequentist power of
//!   the central and HPD tests ([`power`]),
//! - the CLI record/CSV formats ([`cli`]).

pub mod cli;
pub mod conjugate;
pub mod credible;
pub mod dist;
pub mod error;
pub mod power;
pub mod special;
pub mod substream;
pub mod testing;

pub use conjugate::{posterior_from_data, Sample, Scenario};
pub use credible::{
    central_interval, credible_bound, hpd_set, BoundSide, CredibleSet, Interval, SetKind,
};
pub use dist::{ContinuousPosterior, Family, ShapeClass, Support};
pub use error::{Error, Result};
pub use power::{
    power_study, simulate_rejection_rate, summarize_comparison, ComparisonSummary, PowerCurve,
    PowerStudyConfig, TestKind,
};
pub use testing::{
    central_evidence, composite_bayes_test, evidence_report, expected_posterior_loss_l1,
    fbst_evidence, fbst_tangent_set, mew_test, region_probability, three_decision_test,
    EvidenceReport, HypothesisRegion, MewLoss, TestOutcome, ThreeWayDecision,
};
