//! Moduli: rates of convergence, divergence and metastability, adversarial
//! window functions, and the moduli linking `beta` to `mu`.
//!
//! Rate outputs are arbitrary-precision naturals throughout; iterated bounds
//! overflow 64-bit words at modest parameters.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::value::{ceil_nat, nat_to_u64, rat_u64, Exact, Nat};

type DivergenceFn = Arc<dyn Fn(&Nat, &Exact) -> Nat + Send + Sync>;
type MetaFn = Arc<dyn Fn(&Exact, &Counterexample) -> Nat + Send + Sync>;
type SigmaFn = Arc<dyn Fn(&Exact, &Exact) -> Nat + Send + Sync>;

#[derive(Debug, thiserror::Error)]
pub enum RateError {
    #[error("index {0} does not fit in a machine word, cannot be used here")]
    IndexOverflow(Nat),
    #[error("divergence rate returned {returned} < {base} at a probed point (malformed rate)")]
    NegativeWindow { base: Nat, returned: Nat },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Rate of divergence for a series `sum b_i = oo`: a function `(n, x)` to an
/// index `N` with `sum_{i=n}^{N} b_i >= x`, assumed monotone in `n`.
#[derive(Clone)]
pub struct DivergenceRate {
    f: DivergenceFn,
}

impl DivergenceRate {
    pub fn new(f: impl Fn(&Nat, &Exact) -> Nat + Send + Sync + 'static) -> Self {
        DivergenceRate { f: Arc::new(f) }
    }

    pub fn at(&self, n: &Nat, x: &Exact) -> Nat {
        (self.f)(n, x)
    }

    /// Evaluation with both ends confined to machine words.
    pub fn at_small(&self, n: u64, x: &Exact) -> Result<u64, RateError> {
        let out = self.at(&Nat::from(n), x);
        nat_to_u64(&out).ok_or(RateError::IndexOverflow(out))
    }

    /// Canonical rate for `alpha_n = 1/(n+1)`: `r(n,x) = ceil((n+1) e^x)`,
    /// with `e^x` over-approximated by a rational (see [`exp_upper`]); the
    /// over-approximation only enlarges the rate, which stays sound.
    pub fn harmonic() -> Self {
        DivergenceRate::new(|n, x| {
            let bound = (rat_u64_nat(n) + Exact::one()) * exp_upper(x);
            ceil_nat(&bound)
        })
    }

    /// Canonical rate for the constant sequence `alpha_n = a`:
    /// `r(n,x) = n + ceil(x/a)`.
    pub fn constant(a: Exact) -> Self {
        assert!(a.is_positive(), "constant divergence rate needs a > 0");
        DivergenceRate::new(move |n, x| n + ceil_nat(&(x / &a)))
    }

    /// Degenerate rate `r(n,x) = n`, sound when single terms already exceed
    /// every requested `x` (test plumbing).
    pub fn identity() -> Self {
        DivergenceRate::new(|n, _| n.clone())
    }

    /// Monotonization in the first argument:
    /// `r~(n,x) = max{ r(k,x) | k <= n }`.
    ///
    /// Scans all `k <= n`, so the first argument must fit in a machine word;
    /// intended for user-supplied desk-scale rates.
    pub fn monotonized(&self) -> Self {
        let f = Arc::clone(&self.f);
        DivergenceRate::new(move |n, x| {
            let n = nat_to_u64(n)
                .unwrap_or_else(|| panic!("monotonized rate evaluated at first argument {n}"));
            (0..=n)
                .map(|k| f(&Nat::from(k), x))
                .max()
                .expect("range 0..=n is nonempty")
        })
    }
}

/// Rate of convergence: `eps -> N` with `|a_n - a| <= eps` for all `n >= N`.
#[derive(Clone)]
pub struct ConvergenceRate {
    f: Arc<dyn Fn(&Exact) -> Nat + Send + Sync>,
}

impl ConvergenceRate {
    pub fn new(f: impl Fn(&Exact) -> Nat + Send + Sync + 'static) -> Self {
        ConvergenceRate { f: Arc::new(f) }
    }

    pub fn at(&self, eps: &Exact) -> Nat {
        (self.f)(eps)
    }

    pub fn at_small(&self, eps: &Exact) -> Result<u64, RateError> {
        let out = self.at(eps);
        nat_to_u64(&out).ok_or(RateError::IndexOverflow(out))
    }

    /// The constant rate 0 (for sequences that are identically within every
    /// tolerance, e.g. `gamma = 0` feeding a `gamma_n/alpha_n` rate).
    pub fn zero() -> Self {
        ConvergenceRate::new(|_| Nat::zero())
    }

    /// `eps -> ceil(k/eps)`.
    pub fn ceil_inverse(k: u64) -> Self {
        ConvergenceRate::new(move |eps| ceil_nat(&(rat_u64(k) / eps)))
    }
}

/// Counterexample function `g`: the adversarial window length in
/// metastability statements.
#[derive(Clone)]
pub struct Counterexample {
    f: Arc<dyn Fn(&Nat) -> Nat + Send + Sync>,
}

impl Counterexample {
    pub fn new(f: impl Fn(&Nat) -> Nat + Send + Sync + 'static) -> Self {
        Counterexample { f: Arc::new(f) }
    }

    pub fn at(&self, n: &Nat) -> Nat {
        (self.f)(n)
    }

    pub fn at_small(&self, n: u64) -> Result<u64, RateError> {
        let out = self.at(&Nat::from(n));
        nat_to_u64(&out).ok_or(RateError::IndexOverflow(out))
    }

    pub fn zero() -> Self {
        GSpec::Constant(0).to_counterexample()
    }
}

/// The declared family of counterexample functions accepted in configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GSpec {
    /// `g(n) = k`
    Constant(u64),
    /// `g(n) = n + k`
    Linear(u64),
    /// `g(n) = a*n + b`
    Affine(u64, u64),
}

impl GSpec {
    pub fn to_counterexample(self) -> Counterexample {
        match self {
            GSpec::Constant(k) => Counterexample::new(move |_| Nat::from(k)),
            GSpec::Linear(k) => Counterexample::new(move |n| n + Nat::from(k)),
            GSpec::Affine(a, b) => Counterexample::new(move |n| n * Nat::from(a) + Nat::from(b)),
        }
    }

    /// Parses `const:k`, `linear:k` or `affine:a,b`.
    pub fn parse(s: &str) -> Result<GSpec, RateError> {
        let bad = || RateError::InvalidParameter(format!("bad g descriptor: {s:?}"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "const" => Ok(GSpec::Constant(args.trim().parse().map_err(|_| bad())?)),
            "linear" => Ok(GSpec::Linear(args.trim().parse().map_err(|_| bad())?)),
            "affine" => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                Ok(GSpec::Affine(
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                ))
            }
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for GSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GSpec::Constant(k) => write!(f, "const:{k}"),
            GSpec::Linear(k) => write!(f, "linear:{k}"),
            GSpec::Affine(a, b) => write!(f, "affine:{a},{b}"),
        }
    }
}

/// Rate of metastability: `(eps, g) -> N` bounding a witness `n` whose
/// window `[n, n+g(n)]` has the eps-property.
#[derive(Clone)]
pub struct MetaRate {
    f: MetaFn,
}

impl MetaRate {
    pub fn new(f: impl Fn(&Exact, &Counterexample) -> Nat + Send + Sync + 'static) -> Self {
        MetaRate { f: Arc::new(f) }
    }

    pub fn at(&self, eps: &Exact, g: &Counterexample) -> Nat {
        (self.f)(eps, g)
    }
}

/// Modulus `omega` with `beta_n <= omega(eps) => mu_n <= eps` (or the
/// successor variant, or the reverse direction `omega~`; which contract a
/// given modulus satisfies is up to the call site).
#[derive(Clone)]
pub struct Modulus {
    f: Arc<dyn Fn(&Exact) -> Exact + Send + Sync>,
}

impl Modulus {
    pub fn new(f: impl Fn(&Exact) -> Exact + Send + Sync + 'static) -> Self {
        Modulus { f: Arc::new(f) }
    }

    pub fn at(&self, eps: &Exact) -> Exact {
        (self.f)(eps)
    }

    pub fn identity() -> Self {
        Modulus::new(|eps| eps.clone())
    }
}

/// Two-argument modulus `(delta, b) -> N` used by asymptotic contraction
/// bounds.
#[derive(Clone)]
pub struct SigmaModulus {
    f: SigmaFn,
}

impl SigmaModulus {
    pub fn new(f: impl Fn(&Exact, &Exact) -> Nat + Send + Sync + 'static) -> Self {
        SigmaModulus { f: Arc::new(f) }
    }

    pub fn at(&self, delta: &Exact, b: &Exact) -> Nat {
        (self.f)(delta, b)
    }

    pub fn zero() -> Self {
        SigmaModulus::new(|_, _| Nat::zero())
    }
}

fn rat_u64_nat(n: &Nat) -> Exact {
    Exact::from_integer(n.clone().into())
}

/// Rational upper bound on `e^x` for rational `x >= 0`.
///
/// Truncated Taylor series plus a rigorous geometric remainder bound, so the
/// result always over-approximates. The remainder is driven below 2^-64 of
/// the partial sum, which keeps `ceil((n+1) e^x)` at its true value for the
/// ranges rate formulas touch.
pub fn exp_upper(x: &Exact) -> Exact {
    assert!(!x.is_negative(), "exp_upper needs x >= 0");
    if x.is_zero() {
        return Exact::one();
    }
    let mut sum = Exact::one();
    let mut term = Exact::one();
    let mut k: u64 = 0;
    loop {
        k += 1;
        term = term * x / rat_u64(k);
        sum += &term;
        // remainder <= term_{k+1} / (1 - x/(k+2)) once x/(k+2) < 1
        let ratio = x / rat_u64(k + 2);
        if ratio < rat_u64(1) {
            let next = &term * x / rat_u64(k + 1);
            let remainder = &next / (Exact::one() - ratio);
            let threshold = &sum / Exact::from_integer((BigUint::one() << 64u8).into());
            if remainder <= threshold {
                return sum + remainder;
            }
        }
    }
}
