//! Rate of convergence for Mann-type schemes over asymptotically weakly
//! contractive mapping families, with the divergence-rate argument given by
//! the closed-form integral `int dt / psi(t)` for power-law gauges.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::rates::{DivergenceRate, RateError, SigmaModulus};
use crate::value::{rat, Exact, Nat};

/// `psi(t) = coeff * t^exponent` with integer exponent, so the closed-form
/// antiderivative stays rational.
#[derive(Debug, Clone)]
pub struct PowerLaw {
    pub coeff: Exact,
    pub exponent: u32,
}

impl PowerLaw {
    pub fn new(coeff: Exact, exponent: u32) -> PowerLaw {
        assert!(coeff.is_positive());
        PowerLaw { coeff, exponent }
    }

    pub fn eval(&self, t: &Exact) -> Exact {
        &self.coeff * t.pow(self.exponent as i32)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        <f64 as crate::value::Value>::from_ratio(&self.coeff) * t.powi(self.exponent as i32)
    }
}

/// Default floor the integral is clamped to when `eps/2d >= c` leaves it
/// empty or inverted.
pub fn default_integral_floor() -> Exact {
    Exact::new(BigInt::one(), BigInt::from(1_000_000))
}

#[derive(Debug, Clone)]
pub struct MannRate {
    pub bound: Nat,
    /// Set when the integral range was empty and the clamp floor was used.
    pub integral_clamped: bool,
    /// The exact value handed to the divergence rate's second argument.
    pub integral_arg: Exact,
}

/// The rate
/// `Phi(eps) = r(sigma((1/2d) min{psi(eps/2d), eps/abar}, c),
///             2d int_{eps/2d}^{c} dt/psi(t)) + 1`.
///
/// The integral is evaluated in closed form,
/// `int dt/(a t^p) = t^{1-p} / (a (1-p))`, which requires `p > 1`
/// (general gauges are out of scope). When `eps/2d >= c` the range is
/// empty; any positive value at most the true integral keeps the bound
/// sound for rates monotone in their second argument, so the integral is
/// clamped below at `floor` and the clamp is flagged.
#[allow(clippy::too_many_arguments)]
pub fn mann_rate(
    psi: &PowerLaw,
    sigma: &SigmaModulus,
    r: &DivergenceRate,
    c: &Exact,
    d: &Exact,
    alpha_bar: &Exact,
    eps: &Exact,
    floor: &Exact,
) -> Result<MannRate, RateError> {
    if psi.exponent <= 1 {
        return Err(RateError::InvalidParameter(
            "power-law exponent must exceed 1 for the closed-form integral".into(),
        ));
    }
    if !(c.is_positive() && d.is_positive() && alpha_bar.is_positive() && eps.is_positive()) {
        return Err(RateError::InvalidParameter(
            "c, d, alpha_bar, eps must be positive".into(),
        ));
    }
    let two_d = rat(2, 1) * d;
    let lower = eps / &two_d;
    let p_minus_1 = (psi.exponent - 1) as i32;
    // int_{lower}^{c} dt/(a t^p) = (lower^{1-p} - c^{1-p}) / (a (p-1))
    let raw = (lower.pow(-p_minus_1) - c.pow(-p_minus_1))
        / (&psi.coeff * Exact::from_integer(BigInt::from(p_minus_1)));
    let (integral, clamped) = if raw.is_positive() && &raw >= floor {
        (raw, false)
    } else {
        (floor.clone(), true)
    };
    let arg = &two_d * &integral;
    let inner = (psi.eval(&lower)).min(eps / alpha_bar) / &two_d;
    let bound = r.at(&sigma.at(&inner, c), &arg) + Nat::one();
    Ok(MannRate {
        bound,
        integral_clamped: clamped,
        integral_arg: arg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::nat_to_u64;

    #[test]
    fn hand_evaluated_sine_gauge() {
        // psi(t) = t^3/8, d = 1, c = 1, abar = 1, sigma = 0, unit-step rate,
        // eps = 1: integral = int_{1/2}^{1} 8/t^3 dt = 12, arg = 24,
        // Phi = r(0, 24) + 1 = 25.
        let psi = PowerLaw::new(rat(1, 8), 3);
        let out = mann_rate(
            &psi,
            &SigmaModulus::zero(),
            &DivergenceRate::constant(rat(1, 1)),
            &rat(1, 1),
            &rat(1, 1),
            &rat(1, 1),
            &rat(1, 1),
            &default_integral_floor(),
        )
        .unwrap();
        assert_eq!(out.bound, Nat::from(25u32));
        assert_eq!(out.integral_arg, rat(24, 1));
        assert!(!out.integral_clamped);
    }

    #[test]
    fn empty_integral_is_clamped_and_flagged() {
        // eps = 2dc collapses the range to a point
        let psi = PowerLaw::new(rat(1, 8), 3);
        let out = mann_rate(
            &psi,
            &SigmaModulus::zero(),
            &DivergenceRate::constant(rat(1, 1)),
            &rat(1, 1),
            &rat(1, 1),
            &rat(1, 1),
            &rat(2, 1),
            &default_integral_floor(),
        )
        .unwrap();
        assert!(out.integral_clamped);
        assert_eq!(out.integral_arg, rat(2, 1) * default_integral_floor());
        assert!(out.bound >= Nat::one());
    }

    #[test]
    fn rejects_linear_gauges() {
        let psi = PowerLaw::new(rat(1, 2), 1);
        let err = mann_rate(
            &psi,
            &SigmaModulus::zero(),
            &DivergenceRate::constant(rat(1, 1)),
            &rat(1, 1),
            &rat(1, 1),
            &rat(1, 1),
            &rat(1, 1),
            &default_integral_floor(),
        );
        assert!(matches!(err, Err(RateError::InvalidParameter(_))));
    }

    #[test]
    fn bound_is_nonincreasing_in_eps_on_a_grid() {
        let psi = PowerLaw::new(rat(1, 8), 3);
        let grid = [rat(1, 8), rat(1, 4), rat(1, 2), rat(1, 1), rat(3, 2)];
        let values: Vec<u64> = grid
            .iter()
            .map(|eps| {
                let out = mann_rate(
                    &psi,
                    &SigmaModulus::zero(),
                    &DivergenceRate::constant(rat(1, 1)),
                    &rat(1, 1),
                    &rat(1, 1),
                    &rat(1, 1),
                    eps,
                    &default_integral_floor(),
                )
                .unwrap();
                nat_to_u64(&out.bound).unwrap()
            })
            .collect();
        for w in values.windows(2) {
            assert!(w[0] >= w[1], "{values:?}");
        }
    }
}
