//! Scalar backends.
//!
//! All sequence machinery is generic over [`Value`], with two concrete
//! backends: arbitrary-precision rationals ([`Exact`]) for everything that
//! must be certified bit-exactly, and `f64` ([`Float`]) for descent
//! trajectories where transcendental functions rule exactness out.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact backend scalar: arbitrary-precision rational.
pub type Exact = BigRational;

/// Float backend scalar.
pub type Float = f64;

/// Arbitrary-precision index, for rate formulas whose outputs overflow
/// native words (the metastability bounds grow like `c^k`).
pub type Nat = BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

/// Scalar type a [`crate::seq::Seq`] can range over.
///
/// `num_traits::Signed` brings the ring operations, `abs` and comparisons
/// with zero; the extra methods cover conversion from the rational
/// constants that thresholds and tolerances are specified in.
pub trait Value: Clone + PartialOrd + Signed + Send + Sync + std::fmt::Debug + 'static {
    const BACKEND: Backend;

    /// Injects a rational constant into the backend (rounding for floats).
    fn from_ratio(r: &BigRational) -> Self;

    /// False only for non-finite floats.
    fn is_finite_value(&self) -> bool;

    /// Canonical, deterministic rendering for reports.
    fn render(&self) -> String;
}

impl Value for BigRational {
    const BACKEND: Backend = Backend::Exact;

    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Value for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_ratio(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// Default absolute tolerance for float-backend checks (2^-40).
pub const DEFAULT_FLOAT_TOL: f64 = 9.094947017729282e-13;

/// Shorthand for small rational literals.
pub fn rat(p: i64, q: i64) -> Exact {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The rational `n/1` for an index.
pub fn rat_u64(n: u64) -> Exact {
    BigRational::from_integer(BigInt::from(n))
}

/// Ceiling of a rational, clamped below at zero, as a big natural.
pub fn ceil_nat(r: &Exact) -> Nat {
    if r.is_negative() || r.is_zero() {
        return Nat::zero();
    }
    r.ceil()
        .to_integer()
        .to_biguint()
        .expect("ceil of a positive rational is positive")
}

/// `Nat` to `u64`, when it fits.
pub fn nat_to_u64(n: &Nat) -> Option<u64> {
    n.to_u64()
}

/// Errors from parsing rationals in configs and CLIs.
#[derive(Debug, thiserror::Error)]
#[error("not a rational: {0:?} (expected `p/q`, an integer, or a finite decimal)")]
pub struct ParseRatioError(pub String);

/// Parses `p/q`, plain integers, and finite decimals like `0.25`.
pub fn parse_ratio(s: &str) -> Result<Exact, ParseRatioError> {
    let s = s.trim();
    let bad = || ParseRatioError(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = frac.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigRational::new(num, den);
        let int_part = BigRational::from_integer(int);
        return Ok(if neg {
            int_part - frac_part
        } else {
            int_part + frac_part
        });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}
