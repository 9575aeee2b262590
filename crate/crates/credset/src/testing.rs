//! Decision rules for point-null and composite hypotheses: the
//! three-decision test with its expected-loss oracle, tangent-set evidence
//! with the sample-dependent-loss test it justifies, and weighted 0–1 Bayes
//! tests for composite hypotheses.
//!
//! Boundary ties resolve to acceptance throughout: every rejection condition
//! is a strict inequality.

use crate::credible::{bisect_log_density, CredibleSet, Interval, SetKind};
use crate::dist::{ContinuousPosterior, ShapeClass};
use crate::error::{Error, Result};

/// Outcome of a two-way accept/reject test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestOutcome {
    Accept,
    Reject,
}

impl TestOutcome {
    pub fn name(self) -> &'static str {
        match self {
            TestOutcome::Accept => "accept",
            TestOutcome::Reject => "reject",
        }
    }
}

/// The three-decision value: conclude θ < θ₀, accept θ = θ₀, or conclude
/// θ > θ₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeWayDecision {
    /// Accept {θ < θ₀} (value −1).
    Less,
    /// Accept {θ = θ₀} (value 0).
    Null,
    /// Accept {θ > θ₀} (value +1).
    Greater,
}

impl ThreeWayDecision {
    pub fn value(self) -> i32 {
        match self {
            ThreeWayDecision::Less => -1,
            ThreeWayDecision::Null => 0,
            ThreeWayDecision::Greater => 1,
        }
    }

    pub fn from_value(v: i32) -> Result<Self> {
        match v {
            -1 => Ok(ThreeWayDecision::Less),
            0 => Ok(ThreeWayDecision::Null),
            1 => Ok(ThreeWayDecision::Greater),
            other => Err(Error::domain(format!(
                "three-way decision value must be -1, 0 or 1, got {other}"
            ))),
        }
    }
}

/// Constants of the sample-dependent loss whose Bayes rule inverts HPD sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MewLoss {
    a: f64,
    b: f64,
    c: f64,
}

impl MewLoss {
    /// All three constants must be positive and the implied rejection
    /// threshold (b+c)/(a+c) must lie in (0, 1).
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(format!(
                    "loss constant {name} must be positive, got {v}"
                )));
            }
        }
        let loss = MewLoss { a, b, c };
        let t = loss.threshold();
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::domain(format!(
                "rejection threshold (b+c)/(a+c) = {t} must lie in (0,1)"
            )));
        }
        Ok(loss)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// The evidence level below which the null is rejected.
    pub fn threshold(&self) -> f64 {
        (self.b + self.c) / (self.a + self.c)
    }
}

/// Evidence against a point null from both set geometries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvidenceReport {
    pub theta0: f64,
    /// P(θ ∉ T(x) | x): mass outside the tangent HPD set.
    pub ev_hpd: f64,
    /// P(θ ∉ S(x) | x): mass outside the largest central interval
    /// excluding θ₀.
    pub ev_central: f64,
}

/// A composite null hypothesis: a finite union of disjoint intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisRegion {
    intervals: Vec<Interval>,
}

impl HypothesisRegion {
    /// Intervals must be nonempty, each with lo ≤ hi, sorted, and with
    /// non-overlapping interiors.
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::domain("hypothesis region must be nonempty"));
        }
        for iv in &intervals {
            if iv.lo.is_nan() || iv.hi.is_nan() || iv.lo > iv.hi {
                return Err(Error::domain(format!(
                    "invalid interval [{}, {}]",
                    iv.lo, iv.hi
                )));
            }
        }
        for w in intervals.windows(2) {
            if w[1].lo < w[0].hi {
                return Err(Error::domain(format!(
                    "overlapping intervals [{}, {}] and [{}, {}]",
                    w[0].lo, w[0].hi, w[1].lo, w[1].hi
                )));
            }
        }
        Ok(HypothesisRegion { intervals })
    }

    /// The one-sided region {θ ≤ θ₀}.
    pub fn at_most(theta0: f64) -> Result<Self> {
        Self::new(vec![Interval::new(f64::NEG_INFINITY, theta0)])
    }

    /// The one-sided region {θ ≥ θ₀}.
    pub fn at_least(theta0: f64) -> Result<Self> {
        Self::new(vec![Interval::new(theta0, f64::INFINITY)])
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }
}

fn check_theta0_in_support(d: &ContinuousPosterior, theta0: f64) -> Result<()> {
    let support = d.support();
    if !theta0.is_finite() || theta0 < support.lo || theta0 > support.hi {
        return Err(Error::domain(format!(
            "theta0 = {theta0} lies outside the support closure [{}, {}]",
            support.lo, support.hi
        )));
    }
    Ok(())
}

/// Posterior expected loss of the three-decision loss function at decision
/// `phi`: α/2 for φ = 0 and the mass of the opposing alternative otherwise.
pub fn expected_posterior_loss_l1(
    d: &ContinuousPosterior,
    theta0: f64,
    alpha: f64,
    phi: ThreeWayDecision,
) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    Ok(match phi {
        ThreeWayDecision::Null => alpha / 2.0,
        // Choosing −i loses 1 on Θ_i ∪ Θ₀, whose posterior mass equals
        // P(θ ∈ Θ_i | x) under an absolutely continuous posterior.
        ThreeWayDecision::Less => 1.0 - d.cdf(theta0),
        ThreeWayDecision::Greater => d.cdf(theta0),
    })
}

/// The Bayes rule of the three-decision problem: accept the null iff θ₀
/// lies in the central 1 − α interval, otherwise conclude the side the
/// posterior favours. Ties at the interval endpoints accept.
pub fn three_decision_test(
    d: &ContinuousPosterior,
    theta0: f64,
    alpha: f64,
) -> Result<ThreeWayDecision> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    let f = d.cdf(theta0);
    Ok(if f < alpha / 2.0 {
        // q_{α/2} > θ₀: the posterior sits above the null.
        ThreeWayDecision::Greater
    } else if f > 1.0 - alpha / 2.0 {
        ThreeWayDecision::Less
    } else {
        ThreeWayDecision::Null
    })
}

/// The tangent set T(x) = {θ: π(θ|x) > π(θ₀|x)} — the most credible HPD set
/// not containing θ₀. When θ₀ is the mode the set is empty and is returned
/// as a zero-length interval at the mode with mass 0.
pub fn fbst_tangent_set(d: &ContinuousPosterior, theta0: f64) -> Result<CredibleSet> {
    check_theta0_in_support(d, theta0)?;
    let mode = d.mode();

    let degenerate = |at: f64| CredibleSet {
        kind: SetKind::Hpd,
        intervals: vec![Interval::new(at, at)],
        nominal_credibility: 0.0,
        achieved_mass: 0.0,
        density_level: Some(d.pdf(at)),
    };

    let (l, r) = match d.shape_class() {
        ShapeClass::MonotoneDecreasing => {
            if theta0 <= d.support().lo {
                return Ok(degenerate(d.support().lo));
            }
            (d.support().lo, theta0)
        }
        ShapeClass::MonotoneIncreasing => {
            if theta0 >= d.support().hi {
                return Ok(degenerate(d.support().hi));
            }
            (theta0, d.support().hi)
        }
        ShapeClass::SymmetricUnimodal => {
            if theta0 == mode {
                return Ok(degenerate(mode));
            }
            // Equal-density partner by reflection.
            let mirrored = 2.0 * mode - theta0;
            (theta0.min(mirrored), theta0.max(mirrored))
        }
        ShapeClass::UnimodalInteriorMode => {
            if theta0 == mode {
                return Ok(degenerate(mode));
            }
            // Only the equal-density partner on the far side of the mode is
            // unknown; the near endpoint is θ₀ itself.
            let log_level = d.log_pdf(theta0);
            if theta0 < mode {
                let bracket_hi = d.quantile(1.0 - 1e-13)?;
                let r = if d.log_pdf(bracket_hi) >= log_level {
                    bracket_hi
                } else {
                    bisect_log_density(d, log_level, mode, bracket_hi)
                };
                (theta0, r)
            } else {
                let bracket_lo = d.quantile(1e-13)?;
                let l = if d.log_pdf(bracket_lo) >= log_level {
                    bracket_lo
                } else {
                    bisect_log_density(d, log_level, bracket_lo, mode)
                };
                (l, theta0)
            }
        }
    };

    let mass = (d.cdf(r) - d.cdf(l)).clamp(0.0, 1.0);
    Ok(CredibleSet {
        kind: SetKind::Hpd,
        intervals: vec![Interval::new(l, r)],
        nominal_credibility: mass,
        achieved_mass: mass,
        density_level: Some(d.pdf(theta0)),
    })
}

/// Tangent-set evidence P(θ ∉ T(x) | x): the smallest α at which θ₀ leaves
/// the 1 − α HPD set. Values near 0 speak against the null.
pub fn fbst_evidence(d: &ContinuousPosterior, theta0: f64) -> Result<f64> {
    Ok(1.0 - fbst_tangent_set(d, theta0)?.achieved_mass)
}

/// Central-interval evidence P(θ ∉ S(x) | x) = 2·min(F(θ₀), 1 − F(θ₀)),
/// where S(x) is the largest central interval not containing θ₀.
pub fn central_evidence(d: &ContinuousPosterior, theta0: f64) -> f64 {
    let f = d.cdf(theta0);
    (2.0 * f.min(1.0 - f)).clamp(0.0, 1.0)
}

/// Both evidence measures for a point null.
pub fn evidence_report(d: &ContinuousPosterior, theta0: f64) -> Result<EvidenceReport> {
    Ok(EvidenceReport {
        theta0,
        ev_hpd: fbst_evidence(d, theta0)?,
        ev_central: central_evidence(d, theta0),
    })
}

/// The Bayes rule of the sample-dependent loss: reject the null iff the
/// tangent-set evidence falls strictly below (b+c)/(a+c). With a = 0.975
/// and b = c = 0.025 the threshold is 0.05, i.e. inverting the 95% HPD set.
pub fn mew_test(d: &ContinuousPosterior, theta0: f64, loss: &MewLoss) -> Result<TestOutcome> {
    let threshold = loss.threshold();
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::domain(format!(
            "rejection threshold {threshold} must lie in (0,1)"
        )));
    }
    Ok(if fbst_evidence(d, theta0)? < threshold {
        TestOutcome::Reject
    } else {
        TestOutcome::Accept
    })
}

/// Posterior probability of a composite region as a sum of CDF differences.
pub fn region_probability(d: &ContinuousPosterior, region: &HypothesisRegion) -> Result<f64> {
    let mut mass = 0.0;
    for iv in region.intervals() {
        mass += d.cdf(iv.hi) - d.cdf(iv.lo);
    }
    Ok(mass.clamp(0.0, 1.0))
}

/// Weighted 0–1 Bayes test for a composite null: accept iff
/// P(θ ∈ Θ₀ | x) ≥ b/(a+b), with boundary equality accepting.
///
/// The instance (a, b) = (1−α, α) is the one-sided test with threshold α
/// (equivalent to inverting the lower-bound credible set); (a, b) =
/// (α, 1−α) with α < 1/2 is the general composite test with threshold 1−α.
pub fn composite_bayes_test(
    d: &ContinuousPosterior,
    region: &HypothesisRegion,
    loss_a: f64,
    loss_b: f64,
) -> Result<TestOutcome> {
    for (name, v) in [("a", loss_a), ("b", loss_b)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::domain(format!(
                "loss constant {name} must be positive, got {v}"
            )));
        }
    }
    let mass = region_probability(d, region)?;
    if mass <= 1e-12 || mass >= 1.0 - 1e-12 {
        return Err(Error::domain(format!(
            "region mass {mass} is degenerate; both hypotheses need positive probability"
        )));
    }
    Ok(if mass >= loss_b / (loss_a + loss_b) {
        TestOutcome::Accept
    } else {
        TestOutcome::Reject
    })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::dist::ContinuousPosterior;

    fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
        assert!(
            (actual - expected).abs() <= tol,
            "{what}: got {actual}, expected {expected}"
        );
    }

    #[test]
    fn expected_loss_examples() {
        let n01 = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        assert_eq!(
            expected_posterior_loss_l1(&n01, 0.0, 0.05, ThreeWayDecision::Null).unwrap(),
            0.025
        );
        assert_close(
            expected_posterior_loss_l1(&n01, 0.0, 0.05, ThreeWayDecision::Greater).unwrap(),
            0.5,
            1e-15,
            "phi=1 at the median",
        );
        let g = ContinuousPosterior::gamma(3.0, 4.5).unwrap();
        assert_close(
            expected_posterior_loss_l1(&g, 1.0, 0.05, ThreeWayDecision::Less).unwrap(),
            1.0 - g.cdf(1.0),
            1e-15,
            "phi=-1 complement",
        );
        assert!(expected_posterior_loss_l1(&n01, 0.0, 1.5, ThreeWayDecision::Null).is_err());
    }

    #[test]
    fn three_decision_directional_conclusions() {
        let above = ContinuousPosterior::normal(3.0, 1.0).unwrap();
        assert_eq!(
            three_decision_test(&above, 0.0, 0.05).unwrap(),
            ThreeWayDecision::Greater
        );

        let centred = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        for alpha in [0.01, 0.05, 0.2, 0.9] {
            assert_eq!(
                three_decision_test(&centred, 0.0, alpha).unwrap(),
                ThreeWayDecision::Null
            );
        }

        let below = ContinuousPosterior::normal(-3.0, 1.0).unwrap();
        assert_eq!(
            three_decision_test(&below, 0.0, 0.05).unwrap(),
            ThreeWayDecision::Less
        );
    }

    #[test]
    fn three_decision_tie_goes_to_null() {
        let d = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        // theta0 exactly at q_{alpha/2}: F = alpha/2, not < alpha/2.
        let alpha = 0.05;
        let q = d.quantile(alpha / 2.0).unwrap();
        let f = d.cdf(q);
        // Adjust alpha so the comparison is an exact tie.
        assert_eq!(
            three_decision_test(&d, q, 2.0 * f).unwrap(),
            ThreeWayDecision::Null
        );
    }

    #[test]
    fn tangent_set_at_mode_is_empty() {
        let d = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        let t = fbst_tangent_set(&d, 0.0).unwrap();
        assert_eq!(t.achieved_mass, 0.0);
        assert_eq!(t.intervals[0].lo, t.intervals[0].hi);
        assert_eq!(fbst_evidence(&d, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn tangent_set_symmetric_level() {
        let d = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        let z = 1.959_963_984_540_054;
        let t = fbst_tangent_set(&d, z).unwrap();
        assert_close(t.intervals[0].lo, -z, 1e-12, "lo");
        assert_close(t.intervals[0].hi, z, 1e-12, "hi");
        assert_close(t.achieved_mass, 0.95, 1e-10, "mass");
        assert_close(fbst_evidence(&d, z).unwrap(), 0.05, 1e-10, "evidence");
    }

    #[test]
    fn tangent_set_monotone_posterior() {
        let d = ContinuousPosterior::pareto(2.0, 4.0).unwrap();
        let t = fbst_tangent_set(&d, 3.0).unwrap();
        assert_eq!(t.intervals[0].lo, 2.0);
        assert_eq!(t.intervals[0].hi, 3.0);
        assert_close(t.achieved_mass, d.cdf(3.0), 1e-14, "mass");
        // theta0 at the support minimum has maximal density: empty set.
        assert_eq!(fbst_evidence(&d, 2.0).unwrap(), 1.0);
        // Below the support closure: domain error.
        assert!(fbst_tangent_set(&d, 1.0).is_err());
    }

    #[test]
    fn tangent_set_interior_mode_matches_density_level() {
        let d = ContinuousPosterior::gamma(3.0, 4.5).unwrap();
        let theta0 = 1.2;
        let t = fbst_tangent_set(&d, theta0).unwrap();
        let iv = t.intervals[0];
        assert_eq!(iv.hi, theta0);
        assert!((d.log_pdf(iv.lo) - d.log_pdf(theta0)).abs() < 1e-9);
        // Evidence vanishes toward the support boundary.
        assert!(fbst_evidence(&d, 1e-9).unwrap() < 1e-6);
    }

    #[test]
    fn central_evidence_examples() {
        let d = ContinuousPosterior::gamma(3.0, 4.5).unwrap();
        let median = d.quantile(0.5).unwrap();
        assert_close(central_evidence(&d, median), 1.0, 1e-10, "median");

        let n01 = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        assert_close(
            central_evidence(&n01, 1.959_963_984_540_054),
            0.05,
            1e-10,
            "z975",
        );
        assert_close(
            central_evidence(&d, 1.0),
            2.0 * (1.0 - d.cdf(1.0)).min(d.cdf(1.0)),
            1e-15,
            "gamma at 1",
        );
    }

    #[test]
    fn mew_threshold_and_decisions() {
        let loss = MewLoss::new(0.975, 0.025, 0.025).unwrap();
        assert_close(loss.threshold(), 0.05, 1e-15, "threshold");

        let n01 = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        assert_eq!(mew_test(&n01, 0.0, &loss).unwrap(), TestOutcome::Accept);
        // Evidence at 2.5 is 2(1 − Φ(2.5)) ≈ 0.0124 < 0.05.
        assert_eq!(mew_test(&n01, 2.5, &loss).unwrap(), TestOutcome::Reject);
        assert_close(
            fbst_evidence(&n01, 2.5).unwrap(),
            0.012_419_330_651_552_27,
            1e-10,
            "evidence at 2.5",
        );

        // b >= a puts the threshold at or above 1.
        assert!(MewLoss::new(0.5, 0.5, 0.1).is_err());
        assert!(MewLoss::new(0.5, -0.1, 0.1).is_err());
    }

    #[test]
    fn region_probability_examples() {
        let n01 = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        let half = HypothesisRegion::at_most(0.0).unwrap();
        assert_close(
            region_probability(&n01, &half).unwrap(),
            0.5,
            1e-15,
            "half line",
        );

        let central = HypothesisRegion::new(vec![Interval::new(
            -1.959_963_984_540_054,
            1.959_963_984_540_054,
        )])
        .unwrap();
        assert_close(
            region_probability(&n01, &central).unwrap(),
            0.95,
            1e-10,
            "95%",
        );

        let g = ContinuousPosterior::gamma(3.0, 4.5).unwrap();
        let union = HypothesisRegion::new(vec![
            Interval::new(0.5, 1.0),
            Interval::new(2.0, f64::INFINITY),
        ])
        .unwrap();
        // Frozen from the closed-form CDF; cross-checked by quadrature in
        // tests/oracles.rs.
        assert_close(
            region_probability(&g, &union).unwrap(),
            0.441_993_391_194_619_48,
            1e-12,
            "union",
        );

        assert!(
            HypothesisRegion::new(vec![Interval::new(0.0, 2.0), Interval::new(1.0, 3.0)]).is_err()
        );
    }

    #[test]
    fn composite_test_canonical_weightings() {
        let n01 = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        let half = HypothesisRegion::at_most(0.0).unwrap();
        // One-sided instance: threshold alpha = 0.05; P = 0.5 accepts.
        assert_eq!(
            composite_bayes_test(&n01, &half, 0.95, 0.05).unwrap(),
            TestOutcome::Accept
        );
        // General instance: threshold 1 - alpha = 0.95; P = 0.5 rejects.
        assert_eq!(
            composite_bayes_test(&n01, &half, 0.05, 0.95).unwrap(),
            TestOutcome::Reject
        );

        // Equivalence with lower-bound inversion for a skewed posterior.
        let g = ContinuousPosterior::gamma(3.0, 4.5).unwrap();
        let region = HypothesisRegion::at_most(1.0).unwrap();
        let outcome = composite_bayes_test(&g, &region, 0.95, 0.05).unwrap();
        let bound =
            crate::credible::credible_bound(&g, 0.05, crate::credible::BoundSide::Lower).unwrap();
        let equivalent = if bound.contains(1.0) {
            TestOutcome::Accept
        } else {
            TestOutcome::Reject
        };
        assert_eq!(outcome, equivalent);
    }

    #[test]
    fn composite_test_degenerate_region() {
        let n01 = ContinuousPosterior::normal(0.0, 1.0).unwrap();
        let far = HypothesisRegion::new(vec![Interval::new(50.0, 60.0)]).unwrap();
        assert!(composite_bayes_test(&n01, &far, 0.5, 0.5).is_err());
        let everything =
            HypothesisRegion::new(vec![Interval::new(f64::NEG_INFINITY, f64::INFINITY)]).unwrap();
        assert!(composite_bayes_test(&n01, &everything, 0.5, 0.5).is_err());
    }
}
