//! Scalar implicit scheme `x_{n+1} = x_n - alpha_n u_n` with
//! `u_n = A(x_{n+1})` for the uniformly accretive operator
//! `A(x) = phi(|x|) sign(x)` (zero at the origin). Each step solves
//! `y + alpha_n A(y) = x_n` by bisection; the residual map is strictly
//! increasing, so the bracket is genuine.

use super::mann::PowerLaw;
use super::subgradient::DescentError;
use crate::seq::Seq;
use crate::value::Float;

fn residual(phi: &PowerLaw, alpha: f64, y: f64, target: f64) -> f64 {
    y + alpha * phi.eval_f64(y.abs()) * y.signum() - target
}

/// Solves `y + alpha A(y) = target` to absolute residual tolerance.
fn implicit_step(phi: &PowerLaw, alpha: f64, target: f64, tol: f64) -> Result<f64, DescentError> {
    let mut lo = target.min(0.0);
    let mut hi = target.max(0.0);
    // expand geometrically until the residual changes sign (monotone A
    // makes failure impossible; reported defensively)
    let mut width = (hi - lo).max(1.0);
    let mut guard = 0;
    while residual(phi, alpha, lo, target) > 0.0 {
        lo -= width;
        width *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(DescentError::InvalidParameter(
                "bisection bracket failure".into(),
            ));
        }
    }
    while residual(phi, alpha, hi, target) < 0.0 {
        hi += width;
        width *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(DescentError::InvalidParameter(
                "bisection bracket failure".into(),
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let res = residual(phi, alpha, mid, target);
        if res.abs() <= tol {
            return Ok(mid);
        }
        if res < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Runs the implicit scheme from `x0` for `horizon` steps, solving each
/// step to `solver_tol` on the residual. Returns the scalar iterates
/// `x_0 ..= x_horizon`.
pub fn run_accretive_implicit(
    phi: &PowerLaw,
    alpha: &Seq<Float>,
    x0: f64,
    horizon: u64,
    solver_tol: f64,
) -> Result<Vec<f64>, DescentError> {
    let mut xs = Vec::with_capacity(horizon as usize + 1);
    xs.push(x0);
    let mut x = x0;
    for n in 0..horizon {
        let a = alpha.at(n);
        // NaN-safe: a non-finite step size must be rejected too
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(a > 0.0) {
            return Err(DescentError::InvalidParameter(format!(
                "alpha({n}) = {a} must be positive"
            )));
        }
        x = implicit_step(phi, a, x, solver_tol)?;
        if !x.is_finite() {
            return Err(DescentError::NonFinite { step: n + 1 });
        }
        xs.push(x);
    }
    Ok(xs)
}
