//! The two vanishing-ratio counterexample instances built on the Specker
//! sequence. Both satisfy the recursive inequality exactly, with computable
//! data all round, yet the `mu` they carry converges with no computable
//! rate.

use std::sync::Arc;

use num_traits::One;

use super::specker::{SpeckerError, SpeckerSeq};
use crate::ratecalc::{StarConstants, StarInstance};
use crate::seq::Seq;
use crate::value::{rat, rat_u64, Exact};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpeckerVariant {
    /// `mu_n = beta_n = s_n`, `alpha_n = 1`, `gamma_n = s_{n+1}`; the
    /// identity modulus works and the inequality holds with equality.
    A,
    /// `mu_n = s_n` over the base `a_n = 1/(n+1)`, `alpha_n = n + 1`,
    /// `beta_n = 1/(n+1)^2`, `gamma_n = 2`; here `gamma_n/alpha_n = 2/(n+1)`
    /// converges with the computable rate `ceil(2/eps)`.
    B,
}

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error(transparent)]
    Specker(#[from] SpeckerError),
    #[error("variant B fixes the base sequence a_n = 1/(n+1); {0}")]
    WrongBase(String),
}

/// Builds the chosen instance. Variant A accepts any strictly decreasing
/// positive base `a`; variant B requires `a_n = 1/(n+1)` (spot-checked) so
/// that `s_n <= 1`.
pub fn case2_counterexample(
    variant: SpeckerVariant,
    a: Seq<Exact>,
) -> Result<StarInstance<Exact>, InstanceError> {
    match variant {
        SpeckerVariant::A => {
            let sp = SpeckerSeq::new(a.clone())?;
            let s = sp.seq();
            let gamma = {
                let s = s.clone();
                Seq::from_fn(move |n| s.at(n + 1))
            };
            Ok(StarInstance {
                mu: s.clone(),
                alpha: Seq::constant(Exact::one()),
                beta: s,
                gamma,
                consts: StarConstants {
                    c: Some(a.at(0)),
                    alpha_bar: Some(Exact::one()),
                    ..Default::default()
                },
            })
        }
        SpeckerVariant::B => {
            for n in 0..64 {
                let expect = Exact::one() / rat_u64(n + 1);
                if a.at(n) != expect {
                    return Err(InstanceError::WrongBase(format!("a({n}) = {}", a.at(n))));
                }
            }
            let sp = SpeckerSeq::new(a)?;
            Ok(StarInstance {
                mu: sp.seq(),
                alpha: Seq::from_fn(|n| rat_u64(n + 1)),
                beta: Seq::from_fn(|n| Exact::one() / (rat_u64(n + 1) * rat_u64(n + 1))),
                gamma: Seq::constant(rat(2, 1)),
                consts: StarConstants {
                    c: Some(Exact::one()),
                    // alpha_n = n + 1 is unbounded; the instance is kept
                    // exactly as stated and the discrepancy with the bounded
                    // preamble is flagged instead of repaired.
                    alpha_bar: None,
                    notes: vec![
                        "alpha_n = n+1 is unbounded, contradicting the bounded-alpha preamble; \
                         instance kept as stated"
                            .into(),
                    ],
                    ..Default::default()
                },
            })
        }
    }
}

/// The witnessing machine index for each value of a fresh variant-A Specker
/// sequence, for dump-style output: `(n, s_n, m or None)`.
pub fn specker_rows(
    a: &Seq<Exact>,
    count: u64,
) -> Result<Vec<(u64, Exact, Option<u64>)>, SpeckerError> {
    let sp = SpeckerSeq::new(a.clone())?;
    Ok((0..count)
        .map(|n| (n, sp.value(n), sp.witness(n)))
        .collect())
}

/// Convenience: `Arc`ed Specker sequence over `a_n = 1/(n+1)`.
pub fn harmonic_specker() -> Arc<SpeckerSeq> {
    SpeckerSeq::new(Seq::from_fn(|n| Exact::one() / rat_u64(n + 1)))
        .expect("1/(n+1) is strictly decreasing and positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{check_convergence_rate, Verdict};
    use crate::ratecalc::star_check;
    use crate::rates::ConvergenceRate;
    use crate::value::ceil_nat;
    use num_traits::Zero;

    fn harmonic_base() -> Seq<Exact> {
        Seq::from_fn(|n| Exact::one() / rat_u64(n + 1))
    }

    #[test]
    fn variant_a_holds_with_equality() {
        let inst = case2_counterexample(SpeckerVariant::A, harmonic_base()).unwrap();
        for n in 0..200u64 {
            let lhs = inst.mu.at(n + 1);
            let rhs = inst.mu.at(n) - inst.alpha.at(n) * inst.beta.at(n) + inst.gamma.at(n);
            assert_eq!(lhs, rhs);
        }
        assert!(star_check(&inst, 200, &Exact::zero()).passed());
        // identity modulus: beta = mu makes it immediate on any grid
        for n in 0..200u64 {
            for eps in [rat(1, 4), rat(1, 2), rat(1, 1)] {
                if inst.beta.at(n) <= eps {
                    assert!(inst.mu.at(n) <= eps);
                }
            }
        }
    }

    #[test]
    fn variant_b_inequality_chain() {
        let inst = case2_counterexample(SpeckerVariant::B, harmonic_base()).unwrap();
        // mu_n - alpha_n beta_n + gamma_n = s_n - 1/(n+1) + 2 >= s_n + 1 >= s_{n+1}
        for n in 0..200u64 {
            let slack = inst.mu.at(n) - inst.alpha.at(n) * inst.beta.at(n) + inst.gamma.at(n);
            assert!(slack >= inst.mu.at(n) + Exact::one());
            assert!(slack >= inst.mu.at(n + 1));
        }
        let cert = star_check(&inst, 200, &Exact::zero());
        assert!(cert.passed(), "{}", cert.render());
        assert!(cert.notes.iter().any(|n| n.contains("unbounded")));
    }

    #[test]
    fn variant_b_ratio_has_computable_rate() {
        let inst = case2_counterexample(SpeckerVariant::B, harmonic_base()).unwrap();
        let ratio = {
            let gamma = inst.gamma.clone();
            let alpha = inst.alpha.clone();
            Seq::from_fn(move |n| gamma.at(n) / alpha.at(n))
        };
        assert_eq!(ratio.at(0), rat(2, 1));
        let phi = ConvergenceRate::new(|eps| ceil_nat(&(rat(2, 1) / eps)));
        let cert = check_convergence_rate(
            &ratio,
            &Exact::zero(),
            &phi,
            &[rat(1, 1), rat(1, 2), rat(1, 5), rat(2, 3)],
            400,
        );
        assert_eq!(cert.verdict, Verdict::Certified);
    }

    #[test]
    fn variant_b_demands_the_harmonic_base() {
        let wrong = Seq::from_fn(|n| Exact::one() / rat_u64(2 * n + 2));
        assert!(matches!(
            case2_counterexample(SpeckerVariant::B, wrong),
            Err(InstanceError::WrongBase(_))
        ));
    }

    #[test]
    fn specker_rows_align_with_the_sequence() {
        let rows = specker_rows(&harmonic_base(), 120).unwrap();
        let sp = harmonic_specker();
        for (n, value, witness) in rows {
            assert_eq!(value, sp.value(n));
            assert_eq!(witness, sp.witness(n));
            match witness {
                Some(m) => assert_eq!(value, rat(1, 1) / rat_u64(m + 1)),
                None => assert!(value.is_zero()),
            }
        }
    }
}
