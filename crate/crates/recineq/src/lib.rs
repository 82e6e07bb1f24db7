//! Executable rates for the recursive inequality
//! `mu_{n+1} <= mu_n - alpha_n beta_n + gamma_n` over nonnegative reals.
//!
//! The library evaluates extracted rates of convergence, divergence and
//! metastability exactly (arbitrary-precision rationals and indices),
//! validates claimed moduli against concrete sequences on finite data,
//! builds the computability-theoretic counterexample sequences (Specker
//! sequences over a fixed machine enumeration, block padding), and runs the
//! optimization schemes the inequality governs at desk scale: projected
//! subgradient descent, Krasnoselskii-Mann iteration, and a scalar
//! accretive implicit scheme.
//!
//! Two scalar backends are used throughout: [`value::Exact`]
//! (arbitrary-precision rational) for everything that is certified
//! bit-exactly, and [`value::Float`] (`f64`) with explicit tolerances for
//! descent trajectories. Bound formulas always evaluate exactly; a
//! float-observed witness index is compared against an exact bound as
//! integers.

pub mod certify;
pub mod descent;
pub mod pathology;
pub mod ratecalc;
pub mod rates;
pub mod seq;
pub mod synth;
pub mod value;

pub use certify::{
    check_convergence_rate, check_divergence_rate, find_metastable_witness, Certificate,
    CheckStatus, PremiseReport, Verdict, WitnessResult,
};
pub use ratecalc::{
    case1_beta_meta, case1_beta_rate, case1_subsequence_bound, case1_window_certify,
    case1_window_certify_simplified, case2_meta_certify, case2_meta_defaults, case2_rate,
    case2_subsequence_bound, case2b_rate, compose_beta_rate, modulus_from_monotone,
    series_meta_rate, series_meta_rate_fn, star_check, CaseTwoVariant, StarConstants, StarInstance,
};
pub use rates::{
    exp_upper, ConvergenceRate, Counterexample, DivergenceRate, GSpec, MetaRate, Modulus,
    RateError, SigmaModulus,
};
pub use seq::{partial_sum, CumSum, Seq};
pub use value::{
    ceil_nat, nat_to_u64, parse_ratio, rat, rat_u64, Backend, Exact, Float, Nat, Value,
    DEFAULT_FLOAT_TOL,
};
