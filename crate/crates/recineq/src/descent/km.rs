//! Krasnoselskii-Mann iteration `x_{n+1} = (1 - alpha_n) x_n + alpha_n T x_n`
//! and the closed-form rate for the sine map, which is weakly contractive on
//! `[0, 1]` with contraction gauge `t^3/8`.

use num_traits::Zero;

use super::subgradient::DescentError;
use crate::ratecalc::case2_rate;
use crate::rates::{ConvergenceRate, DivergenceRate, Modulus};
use crate::seq::Seq;
use crate::value::{rat, Exact, Float, Nat};

/// Runs the combination scheme for `horizon` steps; `alpha` must stay in
/// `[0, 1]` for the combination to remain convex.
pub fn run_km(
    map: impl Fn(&[f64]) -> Vec<f64>,
    alpha: &Seq<Float>,
    x0: &[f64],
    horizon: u64,
) -> Result<Vec<Vec<f64>>, DescentError> {
    let mut points = Vec::with_capacity(horizon as usize + 1);
    points.push(x0.to_vec());
    let mut x = x0.to_vec();
    for n in 0..horizon {
        let a = alpha.at(n);
        if !(0.0..=1.0).contains(&a) {
            return Err(DescentError::InvalidParameter(format!(
                "alpha({n}) = {a} outside [0, 1]"
            )));
        }
        let tx = map(&x);
        if tx.len() != x.len() {
            return Err(DescentError::InvalidParameter(
                "map changed dimension".into(),
            ));
        }
        x = x
            .iter()
            .zip(&tx)
            .map(|(xi, ti)| (1.0 - a) * xi + a * ti)
            .collect();
        if x.iter().any(|v| !v.is_finite()) {
            return Err(DescentError::NonFinite { step: n + 1 });
        }
        points.push(x.clone());
    }
    Ok(points)
}

/// The scalar sine trajectory from `x0` (dimension 1, `alpha = 1`).
pub fn sine_trajectory(x0: f64, horizon: u64) -> Vec<f64> {
    let points = run_km(|x| vec![x[0].sin()], &Seq::constant(1.0), &[x0], horizon)
        .expect("sine iteration cannot fail");
    points.into_iter().map(|p| p[0]).collect()
}

/// Rate of convergence for `x_{n+1} = sin x_n -> 0` from `x0 in (0, 1]`:
/// the vanishing-ratio rate with constant step rate, zero error rate,
/// modulus `omega(t) = t^3/16` and `c = alpha = 1`, which evaluates to
/// `ceil(256/eps^3)`.
pub fn wc_rate_sine(eps: &Exact) -> Nat {
    assert!(eps > &Exact::zero() && eps <= &Exact::from_integer(1.into()));
    case2_rate(
        &DivergenceRate::constant(rat(1, 1)),
        &ConvergenceRate::zero(),
        &Modulus::new(|t| t * t * t / rat(16, 1)),
        &rat(1, 1),
        &rat(1, 1),
        eps,
    )
}
