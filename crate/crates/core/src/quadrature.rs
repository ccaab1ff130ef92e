//! Double-exponential quadrature.
//!
//! Finite intervals use the tanh-sinh map, the half line uses exp-sinh. Both
//! are open rules: the integrand is never evaluated at an endpoint, so
//! algebraic endpoint singularities `|x - a|^(-alpha)`, `alpha < 1`, need no
//! special treatment. Each level halves the step and reuses the previous
//! nodes; the difference between successive levels is the error estimate.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};

/// Maximum number of step halvings after the initial level.
pub const MAX_LEVELS: u32 = 12;

const INITIAL_STEP: f64 = 0.5;
// Outward scan stops once terms fall this far below the largest term seen.
const TAIL_CUTOFF: f64 = 1e-20;
const MAX_ABSCISSA: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// An abscissa inside `(a, b)` together with its distances to both endpoints.
///
/// `from_a` and `to_b` are computed directly from the transformation, so
/// they keep full relative precision even where `x` itself rounds to an
/// endpoint. Singular factors such as `(b - x)^(-1/2)` should use them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub from_a: f64,
    pub to_b: f64,
}

/// ∫ₐᵇ f over a finite interval with possible algebraic endpoint singularities.
pub fn integrate_finite_singular<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(Node) -> f64,
{
    check_tol(tol)?;
    if !(a.is_finite() && b.is_finite()) || !(a < b) {
        return Err(domain(format!(
            "finite quadrature requires a < b, got [{a}, {b}]"
        )));
    }
    let half = 0.5 * (b - a);
    let width = b - a;
    let term = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        // 1 - |tanh u| without cancellation
        let comp = 2.0 / (1.0 + (2.0 * u.abs()).exp());
        if comp == 0.0 {
            return None;
        }
        let near = half * comp;
        let far = width - near;
        if near == 0.0 {
            return None;
        }
        let node = if t >= 0.0 {
            Node {
                x: b - near,
                from_a: far,
                to_b: near,
            }
        } else {
            Node {
                x: a + near,
                from_a: near,
                to_b: far,
            }
        };
        // dx/dt = half · (π/2) cosh t / cosh²u, with 1/cosh²u = comp (2 - comp)
        let weight = half * FRAC_PI_2 * t.cosh() * comp * (2.0 - comp);
        Some(weight * f(node))
    };
    double_exponential(term, tol)
}

/// Convenience wrapper for integrands that do not need endpoint distances.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    integrate_finite_singular(|n: Node| f(n.x), a, b, tol)
}

/// ∫₀^∞ f(y) dy for integrands decaying at infinity, with at worst an
/// integrable algebraic singularity at the origin.
pub fn integrate_semiinfinite<F>(f: F, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let scaled = |ln_y: f64| {
        let y = ln_y.exp();
        if y == 0.0 || y.is_infinite() {
            f64::NAN
        } else {
            y * f(y)
        }
    };
    integrate_log_measure(scaled, tol, true)
}

/// ∫₀^∞ f(y) dy where the caller supplies `g(ln y) = y · f(y)`.
///
/// Working in `ln y` lets origin singularities close to `y^(-1)` be resolved
/// far below the smallest representable `y`.
pub fn integrate_semiinfinite_log<G>(g: G, tol: f64) -> Result<QuadResult>
where
    G: Fn(f64) -> f64,
{
    integrate_log_measure(g, tol, false)
}

fn integrate_log_measure<G>(g: G, tol: f64, nan_ends_scan: bool) -> Result<QuadResult>
where
    G: Fn(f64) -> f64,
{
    check_tol(tol)?;
    // exp-sinh: ln y = (π/2) sinh t
    let term = |t: f64| {
        let ln_y = FRAC_PI_2 * t.sinh();
        let value = g(ln_y);
        if nan_ends_scan && value.is_nan() {
            return None;
        }
        Some(FRAC_PI_2 * t.cosh() * value)
    };
    double_exponential(term, tol)
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "quadrature tolerance must lie in (0, 1), got {tol}"
        )))
    }
}

/// Trapezoidal sums of `term` over `t ∈ ℝ` with successively halved steps.
/// `term` returns `None` where the transformed abscissa is not representable.
fn double_exponential<T>(term: T, tol: f64) -> Result<QuadResult>
where
    T: Fn(f64) -> Option<f64>,
{
    let mut evaluations = 0usize;
    let mut eval = |t: f64| -> Result<Option<f64>> {
        evaluations += 1;
        match term(t) {
            Some(v) if !v.is_finite() => Err(domain(format!(
                "integrand is not finite at transformed abscissa t = {t}"
            ))),
            other => Ok(other),
        }
    };

    let centre = eval(0.0)?.ok_or_else(|| domain("integrand undefined at interval centre"))?;
    let mut sum = centre;
    let mut abs_sum = centre.abs();
    let mut largest = centre.abs();

    // Level 0: walk outwards to find where the terms become negligible.
    let mut limits = [0.0f64; 2];
    for (limit, sign) in limits.iter_mut().zip([1.0, -1.0]) {
        let mut small_run = 0;
        let mut k = 1;
        loop {
            let t = sign * k as f64 * INITIAL_STEP;
            if t.abs() > MAX_ABSCISSA {
                break;
            }
            let Some(v) = eval(t)? else { break };
            *limit = t;
            sum += v;
            abs_sum += v.abs();
            largest = largest.max(v.abs());
            if v.abs() <= TAIL_CUTOFF * largest {
                small_run += 1;
                if small_run >= 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
            k += 1;
        }
    }
    let [t_hi, t_lo] = limits;

    let mut step = INITIAL_STEP;
    let mut estimate = step * sum;
    let mut error = f64::INFINITY;
    for _ in 0..MAX_LEVELS {
        step *= 0.5;
        let mut t = t_lo + step;
        while t < t_hi {
            if let Some(v) = eval(t)? {
                sum += v;
                abs_sum += v.abs();
            }
            t += 2.0 * step;
        }
        let next = step * sum;
        error = (next - estimate).abs();
        estimate = next;
        let roundoff = 64.0 * f64::EPSILON * step * abs_sum;
        if error <= tol * estimate.abs() || error <= roundoff {
            return Ok(QuadResult {
                value: estimate,
                error_estimate: error.max(roundoff),
                evaluations,
            });
        }
    }
    Err(Error::Accuracy {
        message: format!("double-exponential quadrature not converged after {MAX_LEVELS} levels"),
        estimate,
        error,
    })
}
