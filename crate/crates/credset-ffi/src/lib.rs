//! C ABI over the credset library.
//!
//! Posteriors are opaque handles created by `credset_posterior_new` or
//! `credset_posterior_from_data` and released with `credset_posterior_free`.
//! Every fallible call returns a status code and writes its result through
//! out-pointers; `credset_last_error_message` returns a thread-local
//! description of the most recent failure.
//!
//! Credible sets cross the boundary as a flat struct (the supported
//! families always produce a single interval; ±infinity endpoints mark
//! one-sided sets).

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use credset::{
    central_evidence, central_interval, composite_bayes_test, credible_bound, fbst_evidence,
    hpd_set, mew_test, posterior_from_data, region_probability, three_decision_test, BoundSide,
    ContinuousPosterior, CredibleSet, Error, Family, HypothesisRegion, Interval, MewLoss, Sample,
    Scenario, SetKind, TestOutcome,
};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CredsetStatus {
    CredsetOk = 0,
    /// An argument violated a mathematical precondition.
    CredsetDomainError = 1,
    /// Observed data violated the scenario's support.
    CredsetDataError = 2,
    /// The operation is undefined for the posterior's shape class.
    CredsetCapabilityError = 3,
    /// An iterative routine failed to converge.
    CredsetNumericalError = 4,
    /// A required pointer argument was null.
    CredsetNullPointer = 5,
    /// An enum argument was out of range.
    CredsetInvalidArgument = 6,
    /// The library panicked; state is still consistent.
    CredsetInternalError = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_from(err: &Error) -> CredsetStatus {
    set_error(&err.to_string());
    match err {
        Error::Domain(_) => CredsetStatus::CredsetDomainError,
        Error::Data(_) => CredsetStatus::CredsetDataError,
        Error::Capability(_) => CredsetStatus::CredsetCapabilityError,
        Error::Numerical(_) => CredsetStatus::CredsetNumericalError,
    }
}

fn guard<F: FnOnce() -> CredsetStatus>(f: F) -> CredsetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            CredsetStatus::CredsetInternalError
        }
    }
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn credset_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Distribution families for `credset_posterior_new`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CredsetFamily {
    CredsetFamilyNormal = 0,
    CredsetFamilyExponential = 1,
    CredsetFamilyGamma = 2,
    CredsetFamilyInverseGamma = 3,
    CredsetFamilyWeibull = 4,
    CredsetFamilyPareto = 5,
}

impl CredsetFamily {
    fn to_family(self) -> Family {
        match self {
            CredsetFamily::CredsetFamilyNormal => Family::Normal,
            CredsetFamily::CredsetFamilyExponential => Family::Exponential,
            CredsetFamily::CredsetFamilyGamma => Family::Gamma,
            CredsetFamily::CredsetFamilyInverseGamma => Family::InverseGamma,
            CredsetFamily::CredsetFamilyWeibull => Family::Weibull,
            CredsetFamily::CredsetFamilyPareto => Family::Pareto,
        }
    }
}

/// Sampling scenarios for posterior derivation from data.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CredsetScenarioKind {
    /// Normal with known mean; tested parameter is the variance.
    CredsetScenarioNormalVariance = 0,
    /// Exponential; tested parameter is the rate.
    CredsetScenarioExponentialRate = 1,
    /// Gamma with known shape; tested parameter is the rate.
    CredsetScenarioGammaRate = 2,
    /// Inverse gamma with known shape; tested parameter is the rate.
    CredsetScenarioInverseGammaRate = 3,
    /// Weibull with known shape; tested on the transformed rate.
    CredsetScenarioWeibullRate = 4,
    /// Uniform on (0, θ) with a Pareto prior on θ.
    CredsetScenarioUniformUpper = 5,
}

/// A scenario plus its known constants; fields not used by the kind are
/// ignored.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CredsetScenario {
    pub kind: CredsetScenarioKind,
    pub known_mean: f64,
    pub known_shape: f64,
    pub pareto_min: f64,
    pub pareto_index: f64,
}

impl CredsetScenario {
    fn to_scenario(self) -> Scenario {
        match self.kind {
            CredsetScenarioKind::CredsetScenarioNormalVariance => {
                Scenario::NormalVarianceKnownMean {
                    mean: self.known_mean,
                }
            }
            CredsetScenarioKind::CredsetScenarioExponentialRate => Scenario::ExponentialRate,
            CredsetScenarioKind::CredsetScenarioGammaRate => Scenario::GammaRateKnownShape {
                shape: self.known_shape,
            },
            CredsetScenarioKind::CredsetScenarioInverseGammaRate => {
                Scenario::InverseGammaRateKnownShape {
                    shape: self.known_shape,
                }
            }
            CredsetScenarioKind::CredsetScenarioWeibullRate => Scenario::WeibullRateKnownShape {
                shape: self.known_shape,
            },
            CredsetScenarioKind::CredsetScenarioUniformUpper => Scenario::UniformUpperPareto {
                prior_min: self.pareto_min,
                prior_index: self.pareto_index,
            },
        }
    }
}

/// Opaque posterior handle.
pub struct CredsetPosterior {
    inner: ContinuousPosterior,
}

/// Kinds of credible set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CredsetSetKind {
    CredsetSetCentral = 0,
    CredsetSetHpd = 1,
    CredsetSetLowerBound = 2,
    CredsetSetUpperBound = 3,
}

/// A credible set flattened for the C boundary. `lo`/`hi` may be ±infinity
/// for one-sided sets; `density_level` is meaningful only when
/// `has_density_level` is true (HPD sets).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CredsetCredibleSet {
    pub kind: CredsetSetKind,
    pub lo: f64,
    pub hi: f64,
    pub nominal_credibility: f64,
    pub achieved_mass: f64,
    pub density_level: f64,
    pub has_density_level: bool,
}

/// A closed interval for composite hypothesis regions.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CredsetInterval {
    pub lo: f64,
    pub hi: f64,
}

/// Side selector for credible bounds.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CredsetBoundSide {
    /// {θ ≥ q_α}: a lower bound for the parameter.
    CredsetBoundLower = 0,
    /// {θ ≤ q_{1−α}}: an upper bound for the parameter.
    CredsetBoundUpper = 1,
}

fn flatten_set(set: &CredibleSet) -> CredsetCredibleSet {
    let iv = set.intervals[0];
    CredsetCredibleSet {
        kind: match set.kind {
            SetKind::Central => CredsetSetKind::CredsetSetCentral,
            SetKind::Hpd => CredsetSetKind::CredsetSetHpd,
            SetKind::LowerBound => CredsetSetKind::CredsetSetLowerBound,
            SetKind::UpperBound => CredsetSetKind::CredsetSetUpperBound,
        },
        lo: iv.lo,
        hi: iv.hi,
        nominal_credibility: set.nominal_credibility,
        achieved_mass: set.achieved_mass,
        density_level: set.density_level.unwrap_or(f64::NAN),
        has_density_level: set.density_level.is_some(),
    }
}

unsafe fn posterior_ref<'a>(p: *const CredsetPosterior) -> Option<&'a ContinuousPosterior> {
    p.as_ref().map(|h| &h.inner)
}

fn null_pointer() -> CredsetStatus {
    set_error("null pointer argument");
    CredsetStatus::CredsetNullPointer
}

unsafe fn slice_arg<'a, T>(ptr: *const T, len: usize) -> Option<&'a [T]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(ptr, len))
    }
}

/// Create a posterior from a family tag and its parameter array.
///
/// Parameter order: normal(mean, sd), exponential(rate), gamma(shape,
/// rate), inverse_gamma(shape, scale), weibull(shape, scale), pareto(min,
/// index).
///
/// # Safety
/// `params` must point to `n_params` doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn credset_posterior_new(
    family: CredsetFamily,
    params: *const f64,
    n_params: usize,
    out: *mut *mut CredsetPosterior,
) -> CredsetStatus {
    guard(|| {
        let Some(params) = slice_arg(params, n_params) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        match ContinuousPosterior::make_distribution(family.to_family(), params) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CredsetPosterior { inner }));
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

/// Derive the posterior of a scenario's tested parameter from observations.
///
/// # Safety
/// `data` must point to `n_data` doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn credset_posterior_from_data(
    scenario: CredsetScenario,
    data: *const f64,
    n_data: usize,
    out: *mut *mut CredsetPosterior,
) -> CredsetStatus {
    guard(|| {
        let Some(data) = slice_arg(data, n_data) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        let build = || -> Result<ContinuousPosterior, Error> {
            let sample = Sample::new(data.to_vec())?;
            posterior_from_data(&scenario.to_scenario(), &sample)
        };
        match build() {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(CredsetPosterior { inner }));
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

/// Release a posterior handle; a null pointer is a no-op.
///
/// # Safety
/// `p` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn credset_posterior_free(p: *mut CredsetPosterior) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Map a null value stated on the scenario's user-facing parameter onto the
/// derived posterior's parameter (identity except for the Weibull scenario).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_scenario_map_null(
    scenario: CredsetScenario,
    theta0: f64,
    out: *mut f64,
) -> CredsetStatus {
    guard(|| {
        if out.is_null() {
            return null_pointer();
        }
        match scenario.to_scenario().map_null(theta0) {
            Ok(v) => {
                *out = v;
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

unsafe fn scalar_query(
    p: *const CredsetPosterior,
    out: *mut f64,
    f: impl FnOnce(&ContinuousPosterior) -> Result<f64, Error>,
) -> CredsetStatus {
    guard(|| {
        let Some(d) = posterior_ref(p) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        match f(d) {
            Ok(v) => {
                *out = v;
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

/// Cumulative distribution function at `t`.
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_posterior_cdf(
    p: *const CredsetPosterior,
    t: f64,
    out: *mut f64,
) -> CredsetStatus {
    scalar_query(p, out, |d| Ok(d.cdf(t)))
}

/// Quantile function at probability `prob` in (0, 1).
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_posterior_quantile(
    p: *const CredsetPosterior,
    prob: f64,
    out: *mut f64,
) -> CredsetStatus {
    scalar_query(p, out, |d| d.quantile(prob))
}

/// Natural log of the density at `t` (−infinity outside the support).
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_posterior_log_pdf(
    p: *const CredsetPosterior,
    t: f64,
    out: *mut f64,
) -> CredsetStatus {
    scalar_query(p, out, |d| Ok(d.log_pdf(t)))
}

/// Tangent-set evidence P(θ ∉ T(x) | x) against the point null `theta0`.
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_fbst_evidence(
    p: *const CredsetPosterior,
    theta0: f64,
    out: *mut f64,
) -> CredsetStatus {
    scalar_query(p, out, |d| fbst_evidence(d, theta0))
}

/// Central-interval evidence P(θ ∉ S(x) | x) against the point null.
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_central_evidence(
    p: *const CredsetPosterior,
    theta0: f64,
    out: *mut f64,
) -> CredsetStatus {
    scalar_query(p, out, |d| Ok(central_evidence(d, theta0)))
}

/// The central 1 − α credible interval.
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_central_interval(
    p: *const CredsetPosterior,
    alpha: f64,
    out: *mut CredsetCredibleSet,
) -> CredsetStatus {
    guard(|| {
        let Some(d) = posterior_ref(p) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        match central_interval(d, alpha) {
            Ok(set) => {
                *out = flatten_set(&set);
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

/// The 1 − α highest-posterior-density set.
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_hpd_set(
    p: *const CredsetPosterior,
    alpha: f64,
    out: *mut CredsetCredibleSet,
) -> CredsetStatus {
    guard(|| {
        let Some(d) = posterior_ref(p) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        match hpd_set(d, alpha) {
            Ok(set) => {
                *out = flatten_set(&set);
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

/// A one-sided 1 − α credible bound.
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_credible_bound(
    p: *const CredsetPosterior,
    alpha: f64,
    side: CredsetBoundSide,
    out: *mut CredsetCredibleSet,
) -> CredsetStatus {
    guard(|| {
        let Some(d) = posterior_ref(p) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        let side = match side {
            CredsetBoundSide::CredsetBoundLower => BoundSide::Lower,
            CredsetBoundSide::CredsetBoundUpper => BoundSide::Upper,
        };
        match credible_bound(d, alpha, side) {
            Ok(set) => {
                *out = flatten_set(&set);
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

/// Containment with closed endpoints: true iff lo ≤ theta0 ≤ hi.
#[no_mangle]
pub extern "C" fn credset_set_contains(set: CredsetCredibleSet, theta0: f64) -> bool {
    theta0 >= set.lo && theta0 <= set.hi
}

/// The three-decision test: writes −1 (conclude θ < θ₀), 0 (accept the
/// null) or +1 (conclude θ > θ₀).
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_three_decision_test(
    p: *const CredsetPosterior,
    theta0: f64,
    alpha: f64,
    out: *mut c_int,
) -> CredsetStatus {
    guard(|| {
        let Some(d) = posterior_ref(p) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        match three_decision_test(d, theta0, alpha) {
            Ok(phi) => {
                *out = phi.value() as c_int;
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

/// The loss-based HPD test with constants (a, b, c): writes 1 to reject the
/// null, 0 to accept.
///
/// # Safety
/// `p` must be a live posterior handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn credset_mew_test(
    p: *const CredsetPosterior,
    theta0: f64,
    loss_a: f64,
    loss_b: f64,
    loss_c: f64,
    out: *mut c_int,
) -> CredsetStatus {
    guard(|| {
        let Some(d) = posterior_ref(p) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        let run = || -> Result<TestOutcome, Error> {
            let loss = MewLoss::new(loss_a, loss_b, loss_c)?;
            mew_test(d, theta0, &loss)
        };
        match run() {
            Ok(outcome) => {
                *out = (outcome == TestOutcome::Reject) as c_int;
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

fn region_from(intervals: &[CredsetInterval]) -> Result<HypothesisRegion, Error> {
    HypothesisRegion::new(
        intervals
            .iter()
            .map(|iv| Interval::new(iv.lo, iv.hi))
            .collect(),
    )
}

/// Posterior probability of a union of disjoint intervals.
///
/// # Safety
/// `intervals` must point to `n_intervals` entries; `p`, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn credset_region_probability(
    p: *const CredsetPosterior,
    intervals: *const CredsetInterval,
    n_intervals: usize,
    out: *mut f64,
) -> CredsetStatus {
    guard(|| {
        let Some(d) = posterior_ref(p) else {
            return null_pointer();
        };
        let Some(intervals) = slice_arg(intervals, n_intervals) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        let run = || -> Result<f64, Error> {
            let region = region_from(intervals)?;
            region_probability(d, &region)
        };
        match run() {
            Ok(v) => {
                *out = v;
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}

/// Weighted 0–1 Bayes test of a composite null region: writes 1 to reject,
/// 0 to accept. The instance (a, b) = (1−α, α) is the one-sided test with
/// threshold α; (α, 1−α) with α < 1/2 is the general composite test.
///
/// # Safety
/// `intervals` must point to `n_intervals` entries; `p`, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn credset_composite_test(
    p: *const CredsetPosterior,
    intervals: *const CredsetInterval,
    n_intervals: usize,
    loss_a: f64,
    loss_b: f64,
    out: *mut c_int,
) -> CredsetStatus {
    guard(|| {
        let Some(d) = posterior_ref(p) else {
            return null_pointer();
        };
        let Some(intervals) = slice_arg(intervals, n_intervals) else {
            return null_pointer();
        };
        if out.is_null() {
            return null_pointer();
        }
        let run = || -> Result<TestOutcome, Error> {
            let region = region_from(intervals)?;
            composite_bayes_test(d, &region, loss_a, loss_b)
        };
        match run() {
            Ok(outcome) => {
                *out = (outcome == TestOutcome::Reject) as c_int;
                CredsetStatus::CredsetOk
            }
            Err(e) => status_from(&e),
        }
    })
}
