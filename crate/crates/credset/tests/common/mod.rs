//! Shared helpers for the integration suites: adaptive quadrature, an
//! independent HPD oracle, and random posterior generation.

#![allow(dead_code)]

use credset::{ContinuousPosterior, Family};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: got {actual}, expected {expected} (|diff| = {:.3e} > {tol:.1e})",
        (actual - expected).abs()
    );
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (the [DERIVED] oracle for integrals).
// ---------------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    budget: &mut u64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    *budget = budget.saturating_sub(2);
    if depth == 0 || *budget == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1, budget)
            + simpson_step(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1, budget)
    }
}

/// Adaptive Simpson integration of `f` over [a, b] to absolute tolerance.
///
/// Integrands must be free of power singularities on [a, b]; use
/// [`adaptive_simpson_log`] for positive-support densities that blow up at
/// the origin. A 4M-evaluation budget bounds the recursion.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut budget: u64 = 4_000_000;
    simpson_step(f, a, b, fa, fb, fm, whole, tol, 50, &mut budget)
}

/// Integrate `f` over [a, b] with 0 < a < b through the substitution
/// t = e^s, which turns power behaviour near the origin into smooth
/// exponential decay.
pub fn adaptive_simpson_log<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    assert!(a > 0.0 && b > a, "log substitution needs 0 < a < b");
    let g = |s: f64| {
        let t = s.exp();
        f(t) * t
    };
    adaptive_simpson(&g, a.ln(), b.ln(), tol)
}

// ---------------------------------------------------------------------------
// Independent HPD oracle: bisection on the LEFT ENDPOINT (the implementation
// bisects on the density level, so the two routes are independent).
// ---------------------------------------------------------------------------

/// Given a left endpoint below the mode, find the equal-density partner on
/// the right of the mode by bisection on the density itself.
fn matching_right_endpoint(d: &ContinuousPosterior, left: f64, far_right: f64) -> f64 {
    let target = d.log_pdf(left);
    let mode = d.mode();
    let (mut a, mut b) = (mode, far_right);
    for _ in 0..300 {
        let m = 0.5 * (a + b);
        if d.log_pdf(m) >= target {
            a = m;
        } else {
            b = m;
        }
        if (b - a).abs() <= 1e-15 * b.abs().max(1.0) {
            break;
        }
    }
    0.5 * (a + b)
}

/// 1 − α HPD interval of a unimodal density by endpoint bisection.
pub fn hpd_oracle(d: &ContinuousPosterior, alpha: f64) -> (f64, f64, f64) {
    let target = 1.0 - alpha;
    let mode = d.mode();
    let far_left = d.quantile(1e-12).unwrap();
    let far_right = d.quantile(1.0 - 1e-12).unwrap();
    let (mut a, mut b) = (far_left, mode);
    let mut best = (far_left, far_right, f64::NAN);
    for _ in 0..300 {
        let l = 0.5 * (a + b);
        let r = matching_right_endpoint(d, l, far_right);
        let mass = d.cdf(r) - d.cdf(l);
        best = (l, r, mass);
        if (mass - target).abs() <= 1e-12 {
            break;
        }
        if mass > target {
            a = l;
        } else {
            b = l;
        }
        if (b - a).abs() <= 1e-15 * b.abs().max(1e-12) {
            break;
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Random posteriors.
// ---------------------------------------------------------------------------

pub fn rng(seed: u64, lane: u64) -> ChaCha8Rng {
    credset::substream::substream(seed, &[lane])
}

/// A random posterior across all six families with well-behaved parameters.
pub fn random_posterior(rng: &mut ChaCha8Rng) -> ContinuousPosterior {
    match rng.random_range(0..6u32) {
        0 => {
            let mean = rng.random_range(-5.0..5.0);
            let sd = rng.random_range(0.2..5.0);
            ContinuousPosterior::normal(mean, sd).unwrap()
        }
        1 => ContinuousPosterior::exponential(rng.random_range(0.1..5.0)).unwrap(),
        2 => {
            let shape = rng.random_range(0.3..50.0);
            let rate = rng.random_range(0.1..10.0);
            ContinuousPosterior::gamma(shape, rate).unwrap()
        }
        3 => {
            let shape = rng.random_range(0.5..30.0);
            let scale = rng.random_range(0.2..10.0);
            ContinuousPosterior::inverse_gamma(shape, scale).unwrap()
        }
        4 => {
            let shape = rng.random_range(0.4..8.0);
            let scale = rng.random_range(0.2..10.0);
            ContinuousPosterior::weibull(shape, scale).unwrap()
        }
        _ => {
            let min = rng.random_range(0.2..5.0);
            let index = rng.random_range(0.5..10.0);
            ContinuousPosterior::pareto(min, index).unwrap()
        }
    }
}

/// A random posterior with an interior mode (for HPD endpoint checks).
pub fn random_interior_mode_posterior(rng: &mut ChaCha8Rng) -> ContinuousPosterior {
    match rng.random_range(0..4u32) {
        0 => {
            let mean = rng.random_range(-5.0..5.0);
            let sd = rng.random_range(0.2..5.0);
            ContinuousPosterior::normal(mean, sd).unwrap()
        }
        1 => {
            let shape = rng.random_range(1.3..50.0);
            let rate = rng.random_range(0.1..10.0);
            ContinuousPosterior::gamma(shape, rate).unwrap()
        }
        2 => {
            let shape = rng.random_range(1.0..30.0);
            let scale = rng.random_range(0.2..10.0);
            ContinuousPosterior::inverse_gamma(shape, scale).unwrap()
        }
        _ => {
            let shape = rng.random_range(1.3..8.0);
            let scale = rng.random_range(0.2..10.0);
            ContinuousPosterior::weibull(shape, scale).unwrap()
        }
    }
}

/// A point inside the support, drawn through the quantile function.
pub fn random_theta0(d: &ContinuousPosterior, rng: &mut ChaCha8Rng) -> f64 {
    let u = rng.random_range(0.001..0.999);
    d.quantile(u).unwrap()
}

/// Integration window covering all but ~1e-12 of the posterior mass.
pub fn integration_window(d: &ContinuousPosterior) -> (f64, f64) {
    let lo = if d.family() == Family::Pareto {
        d.support().lo
    } else {
        d.quantile(1e-13).unwrap()
    };
    (lo, d.quantile(1.0 - 1e-12).unwrap())
}

/// Log of likelihood × prior for each scenario, up to an additive constant;
/// the independent route the conjugate mapping is checked against.
pub fn log_unnormalized_posterior(scenario: &credset::Scenario, data: &[f64], theta: f64) -> f64 {
    use credset::Scenario;
    match *scenario {
        Scenario::NormalVarianceKnownMean { mean } => {
            let n = data.len() as f64;
            let ss: f64 = data.iter().map(|x| (x - mean) * (x - mean)).sum();
            -0.5 * n * theta.ln() - ss / (2.0 * theta) - theta.ln()
        }
        Scenario::ExponentialRate => {
            let n = data.len() as f64;
            let sum: f64 = data.iter().sum();
            n * theta.ln() - theta * sum - theta.ln()
        }
        Scenario::GammaRateKnownShape { shape } => {
            let n = data.len() as f64;
            let sum: f64 = data.iter().sum();
            n * shape * theta.ln() - theta * sum - theta.ln()
        }
        Scenario::InverseGammaRateKnownShape { shape } => {
            let n = data.len() as f64;
            let sum_inv: f64 = data.iter().map(|x| 1.0 / x).sum();
            n * shape * theta.ln() - theta * sum_inv - theta.ln()
        }
        Scenario::WeibullRateKnownShape { shape } => {
            // On the transformed rate η: yᵢ = xᵢᵏ are Exp(η).
            let n = data.len() as f64;
            let sum_pow: f64 = data.iter().map(|x| x.powf(shape)).sum();
            n * theta.ln() - theta * sum_pow - theta.ln()
        }
        Scenario::UniformUpperPareto {
            prior_min,
            prior_index,
        } => {
            let n = data.len() as f64;
            let max = data.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if theta < prior_min.max(max) {
                f64::NEG_INFINITY
            } else {
                -(n + prior_index + 1.0) * theta.ln()
            }
        }
    }
}

/// Check one scenario's conjugate mapping against normalized grid
/// integration of likelihood × prior (relative density error bound at every
/// one of 2000 grid points).
pub fn check_posterior_against_grid_integration(
    scenario: &credset::Scenario,
    data: &[f64],
    rel_tol: f64,
) {
    let sample = credset::Sample::new(data.to_vec()).unwrap();
    let post = credset::posterior_from_data(scenario, &sample).unwrap();

    let (win_lo, win_hi) = integration_window(&post);
    let peak = log_unnormalized_posterior(scenario, data, post.mode().max(win_lo));
    let u = |theta: f64| (log_unnormalized_posterior(scenario, data, theta) - peak).exp();
    let coarse: f64 = adaptive_simpson_log(&u, win_lo, win_hi, 1e-6);
    let z = adaptive_simpson_log(&u, win_lo, win_hi, coarse * 1e-11);

    let grid_lo = if post.family() == Family::Pareto {
        post.support().lo
    } else {
        post.quantile(5e-4).unwrap()
    };
    let grid_hi = post.quantile(1.0 - 5e-4).unwrap();
    for i in 0..2000 {
        let theta = grid_lo + (grid_hi - grid_lo) * (i as f64 + 0.5) / 2000.0;
        let oracle = u(theta) / z;
        let implemented = post.pdf(theta);
        assert!(
            (implemented - oracle).abs() <= rel_tol * oracle.abs(),
            "{}: density mismatch at theta = {theta}: {implemented} vs oracle {oracle}",
            scenario.name()
        );
    }
}
