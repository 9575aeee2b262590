#ifndef CREDSET_H
#define CREDSET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum {
  CREDSET_OK = 0,
  /**
   * An argument violated a mathematical precondition.
   */
  CREDSET_DOMAIN_ERROR = 1,
  /**
   * Observed data violated the scenario's support.
   */
  CREDSET_DATA_ERROR = 2,
  /**
   * The operation is undefined for the posterior's shape class.
   */
  CREDSET_CAPABILITY_ERROR = 3,
  /**
   * An iterative routine failed to converge.
   */
  CREDSET_NUMERICAL_ERROR = 4,
  /**
   * A required pointer argument was null.
   */
  CREDSET_NULL_POINTER = 5,
  /**
   * An enum argument was out of range.
   */
  CREDSET_INVALID_ARGUMENT = 6,
  /**
   * The library panicked; state is still consistent.
   */
  CREDSET_INTERNAL_ERROR = 7,
} CredsetStatus;

/**
 * Distribution families for `credset_posterior_new`.
 */
typedef enum {
  CREDSET_FAMILY_NORMAL = 0,
  CREDSET_FAMILY_EXPONENTIAL = 1,
  CREDSET_FAMILY_GAMMA = 2,
  CREDSET_FAMILY_INVERSE_GAMMA = 3,
  CREDSET_FAMILY_WEIBULL = 4,
  CREDSET_FAMILY_PARETO = 5,
} CredsetFamily;

/**
 * Sampling scenarios for posterior derivation from data.
 */
typedef enum {
  /**
   * Normal with known mean; tested parameter is the variance.
   */
  CREDSET_SCENARIO_NORMAL_VARIANCE = 0,
  /**
   * Exponential; tested parameter is the rate.
   */
  CREDSET_SCENARIO_EXPONENTIAL_RATE = 1,
  /**
   * Gamma with known shape; tested parameter is the rate.
   */
  CREDSET_SCENARIO_GAMMA_RATE = 2,
  /**
   * Inverse gamma with known shape; tested parameter is the rate.
   */
  CREDSET_SCENARIO_INVERSE_GAMMA_RATE = 3,
  /**
   * Weibull with known shape; tested on the transformed rate.
   */
  CREDSET_SCENARIO_WEIBULL_RATE = 4,
  /**
   * Uniform on (0, θ) with a Pareto prior on θ.
   */
  CREDSET_SCENARIO_UNIFORM_UPPER = 5,
} CredsetScenarioKind;

/**
 * Kinds of credible set.
 */
typedef enum {
  CREDSET_SET_CENTRAL = 0,
  CREDSET_SET_HPD = 1,
  CREDSET_SET_LOWER_BOUND = 2,
  CREDSET_SET_UPPER_BOUND = 3,
} CredsetSetKind;

/**
 * Side selector for credible bounds.
 */
typedef enum {
  /**
   * {θ ≥ q_α}: a lower bound for the parameter.
   */
  CREDSET_BOUND_LOWER = 0,
  /**
   * {θ ≤ q_{1−α}}: an upper bound for the parameter.
   */
  CREDSET_BOUND_UPPER = 1,
} CredsetBoundSide;

/**
 * Opaque posterior handle.
 */
typedef struct CredsetPosterior CredsetPosterior;

/**
 * A scenario plus its known constants; fields not used by the kind are
 * ignored.
 */
typedef struct {
  CredsetScenarioKind kind;
  double known_mean;
  double known_shape;
  double pareto_min;
  double pareto_index;
} CredsetScenario;

/**
 * A credible set flattened for the C boundary. `lo`/`hi` may be ±infinity
 * for one-sided sets; `density_level` is meaningful only when
 * `has_density_level` is true (HPD sets).
 */
typedef struct {
  CredsetSetKind kind;
  double lo;
  double hi;
  double nominal_credibility;
  double achieved_mass;
  double density_level;
  bool has_density_level;
} CredsetCredibleSet;

/**
 * A closed interval for composite hypothesis regions.
 */
typedef struct {
  double lo;
  double hi;
} CredsetInterval;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *credset_last_error_message(void);

/**
 * Create a posterior from a family tag and its parameter array.
 *
 * Parameter order: normal(mean, sd), exponential(rate), gamma(shape,
 * rate), inverse_gamma(shape, scale), weibull(shape, scale), pareto(min,
 * index).
 *
 * # Safety
 * `params` must point to `n_params` doubles and `out` must be valid.
 */
CredsetStatus credset_posterior_new(CredsetFamily family,
                                    const double *params,
                                    uintptr_t n_params,
                                    CredsetPosterior **out);

/**
 * Derive the posterior of a scenario's tested parameter from observations.
 *
 * # Safety
 * `data` must point to `n_data` doubles and `out` must be valid.
 */
CredsetStatus credset_posterior_from_data(CredsetScenario scenario,
                                          const double *data,
                                          uintptr_t n_data,
                                          CredsetPosterior **out);

/**
 * Release a posterior handle; a null pointer is a no-op.
 *
 * # Safety
 * `p` must have come from this library and not been freed before.
 */
void credset_posterior_free(CredsetPosterior *p);

/**
 * Map a null value stated on the scenario's user-facing parameter onto the
 * derived posterior's parameter (identity except for the Weibull scenario).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
CredsetStatus credset_scenario_map_null(CredsetScenario scenario, double theta0, double *out);

/**
 * Cumulative distribution function at `t`.
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_posterior_cdf(const CredsetPosterior *p, double t, double *out);

/**
 * Quantile function at probability `prob` in (0, 1).
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_posterior_quantile(const CredsetPosterior *p, double prob, double *out);

/**
 * Natural log of the density at `t` (−infinity outside the support).
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_posterior_log_pdf(const CredsetPosterior *p, double t, double *out);

/**
 * Tangent-set evidence P(θ ∉ T(x) | x) against the point null `theta0`.
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_fbst_evidence(const CredsetPosterior *p, double theta0, double *out);

/**
 * Central-interval evidence P(θ ∉ S(x) | x) against the point null.
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_central_evidence(const CredsetPosterior *p, double theta0, double *out);

/**
 * The central 1 − α credible interval.
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_central_interval(const CredsetPosterior *p,
                                       double alpha,
                                       CredsetCredibleSet *out);

/**
 * The 1 − α highest-posterior-density set.
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_hpd_set(const CredsetPosterior *p, double alpha, CredsetCredibleSet *out);

/**
 * A one-sided 1 − α credible bound.
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_credible_bound(const CredsetPosterior *p,
                                     double alpha,
                                     CredsetBoundSide side,
                                     CredsetCredibleSet *out);

/**
 * Containment with closed endpoints: true iff lo ≤ theta0 ≤ hi.
 */
bool credset_set_contains(CredsetCredibleSet set, double theta0);

/**
 * The three-decision test: writes −1 (conclude θ < θ₀), 0 (accept the
 * null) or +1 (conclude θ > θ₀).
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_three_decision_test(const CredsetPosterior *p,
                                          double theta0,
                                          double alpha,
                                          int *out);

/**
 * The loss-based HPD test with constants (a, b, c): writes 1 to reject the
 * null, 0 to accept.
 *
 * # Safety
 * `p` must be a live posterior handle and `out` a valid pointer.
 */
CredsetStatus credset_mew_test(const CredsetPosterior *p,
                               double theta0,
                               double loss_a,
                               double loss_b,
                               double loss_c,
                               int *out);

/**
 * Posterior probability of a union of disjoint intervals.
 *
 * # Safety
 * `intervals` must point to `n_intervals` entries; `p`, `out` valid.
 */
CredsetStatus credset_region_probability(const CredsetPosterior *p,
                                         const CredsetInterval *intervals,
                                         uintptr_t n_intervals,
                                         double *out);

/**
 * Weighted 0–1 Bayes test of a composite null region: writes 1 to reject,
 * 0 to accept. The instance (a, b) = (1−α, α) is the one-sided test with
 * threshold α; (α, 1−α) with α < 1/2 is the general composite test.
 *
 * # Safety
 * `intervals` must point to `n_intervals` entries; `p`, `out` valid.
 */
CredsetStatus credset_composite_test(const CredsetPosterior *p,
                                     const CredsetInterval *intervals,
                                     uintptr_t n_intervals,
                                     double loss_a,
                                     double loss_b,
                                     int *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CREDSET_H */
