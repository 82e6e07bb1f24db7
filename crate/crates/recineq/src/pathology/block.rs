//! Block padding: interpolates a sequence `s` into a sequence `beta` whose
//! consecutive gaps obey `|beta_k - beta_{k+1}| <= theta * alpha_k`, by
//! inserting slope-bounded ramps between the `s` values, together with the
//! matching majorant `mu`.
//!
//! Block starts are defined recursively: `l(0) = 0` and `l(n+1) = k + 1`
//! for the least `k >= l(n)` with
//! `sum_{i=l(n)}^{k} alpha_i >= |s_n - s_{n+1}| / theta`; inside a block,
//! `beta_{l(n)} = s_n` and
//! `beta_k = s_n + sgn(s_{n+1} - s_n) * theta * sum_{i=l(n)}^{k-1} alpha_i`.

use num_traits::{Signed, Zero};

use crate::seq::Seq;
use crate::value::Exact;

#[derive(Debug, thiserror::Error)]
pub enum BlockError {
    #[error("least-index search for block {block} exceeded {cap} summands (is sum alpha = oo?)")]
    SearchCapExceeded { block: u64, cap: u64 },
    #[error("{what} violated at index {index}")]
    Precondition { what: String, index: u64 },
}

/// Default cap on the least-index search per block.
pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000;

/// The populated construction: block starts and the padded sequence,
/// materialized on `0..=horizon`, with the inputs kept alongside.
pub struct BlockConstruction {
    pub s: Seq<Exact>,
    pub alpha: Seq<Exact>,
    pub theta: Exact,
    pub horizon: u64,
    /// `starts[n] = l(n)`; the last entry is the first block start past the
    /// horizon.
    pub starts: Vec<u64>,
    /// `beta[k]` for `k in 0..=horizon`.
    pub beta: Vec<Exact>,
}

impl BlockConstruction {
    pub fn beta_seq(&self) -> Seq<Exact> {
        Seq::from_values(self.beta.clone())
    }

    /// Number of blocks with a start at or below the horizon.
    pub fn covered_blocks(&self) -> u64 {
        self.starts.len() as u64 - 1
    }

    /// Exact right-hand side of the summability bound over the blocks
    /// covering the horizon: `2 (c/theta + abar) * sum s_n`, with `c` the
    /// max of the touched `s` values and `abar` the max of the touched
    /// `alpha` values.
    pub fn summability_bound(&self) -> Exact {
        let t = self.covered_blocks(); // blocks 0..t-1 start at or below horizon
        let mut s_sum = Exact::zero();
        let mut c = Exact::zero();
        for n in 0..=t {
            let v = self.s.at(n);
            if v > c {
                c = v.clone();
            }
            s_sum += v;
        }
        let mut abar = Exact::zero();
        let last = *self.starts.last().unwrap();
        for i in 0..last.max(1) {
            let v = self.alpha.at(i);
            if v > abar {
                abar = v;
            }
        }
        (c / &self.theta + abar) * Exact::from_integer(2.into()) * s_sum
    }
}

/// Runs the padding construction up to `horizon` (inclusive).
///
/// The least-index search terminates only because `sum alpha` diverges,
/// which no finite program can verify; it is capped at `search_cap`
/// summands per block and failure is reported with the offending block.
pub fn block_padding(
    s: &Seq<Exact>,
    alpha: &Seq<Exact>,
    theta: &Exact,
    horizon: u64,
    search_cap: u64,
) -> Result<BlockConstruction, BlockError> {
    if !theta.is_positive() {
        return Err(BlockError::Precondition {
            what: "theta > 0".into(),
            index: 0,
        });
    }
    let mut starts = vec![0u64];
    let mut beta: Vec<Exact> = Vec::with_capacity(horizon as usize + 1);
    let mut n: u64 = 0;
    while *starts.last().unwrap() <= horizon {
        let start = *starts.last().unwrap();
        let s_here = s.at(n);
        let s_next = s.at(n + 1);
        if s_here.is_negative() {
            return Err(BlockError::Precondition {
                what: "s nonnegative".into(),
                index: n,
            });
        }
        let threshold = (&s_here - &s_next).abs() / theta;
        // least k >= l(n) with sum_{i=l(n)}^{k} alpha_i >= threshold
        let mut acc = Exact::zero();
        let mut k = start;
        loop {
            let a = alpha.at(k);
            if a.is_negative() {
                return Err(BlockError::Precondition {
                    what: "alpha nonnegative".into(),
                    index: k,
                });
            }
            acc += a;
            if acc >= threshold {
                break;
            }
            k += 1;
            if k - start >= search_cap {
                return Err(BlockError::SearchCapExceeded {
                    block: n,
                    cap: search_cap,
                });
            }
        }
        let next_start = k + 1;
        // beta on [start, next_start): the ramp from s_n toward s_{n+1}
        if start <= horizon {
            beta.push(s_here.clone());
        }
        let sign = (&s_next - &s_here).signum();
        let mut ramp = Exact::zero();
        for j in (start + 1)..next_start.min(horizon + 1) {
            ramp += alpha.at(j - 1);
            beta.push(&s_here + &sign * theta * &ramp);
        }
        starts.push(next_start);
        n += 1;
    }
    debug_assert_eq!(beta.len() as u64, horizon + 1);
    Ok(BlockConstruction {
        s: s.clone(),
        alpha: alpha.clone(),
        theta: theta.clone(),
        horizon,
        starts,
        beta,
    })
}

/// The majorant built on top of a padding: `mu_0 = L + nu_0` and
/// `mu_{n+1} = L + nu_{n+1} - sum_{i=0}^{n} alpha_i beta_i`, returned for
/// `n in 0..=horizon+1`.
///
/// Requires `nu` nonincreasing and nonnegative on the horizon and
/// `L >= sum_{i=0}^{horizon} alpha_i beta_i` (checked exactly); under those
/// conditions `mu_{n+1} <= mu_n - alpha_n beta_n` and `mu_n >= 0` hold
/// bit-exactly.
pub fn block_mu(
    bc: &BlockConstruction,
    big_l: &Exact,
    nu: &Seq<Exact>,
    horizon: u64,
) -> Result<Vec<Exact>, BlockError> {
    assert!(horizon <= bc.horizon, "mu horizon exceeds the padded range");
    for n in 0..=horizon {
        let here = nu.at(n);
        if here.is_negative() {
            return Err(BlockError::Precondition {
                what: "nu nonnegative".into(),
                index: n,
            });
        }
        if nu.at(n + 1) > here {
            return Err(BlockError::Precondition {
                what: "nu nonincreasing".into(),
                index: n,
            });
        }
    }
    let mut products = Exact::zero();
    let mut mu = vec![big_l + nu.at(0)];
    for n in 0..=horizon {
        products += bc.alpha.at(n) * bc.beta[n as usize].clone();
        mu.push(big_l + nu.at(n + 1) - &products);
    }
    if big_l < &products {
        return Err(BlockError::Precondition {
            what: format!("L >= sum alpha_i beta_i = {}", products),
            index: horizon,
        });
    }
    Ok(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{rat, rat_u64};
    use num_traits::One;

    #[test]
    fn constant_s_collapses_to_unit_blocks() {
        let s = Seq::constant(rat(2, 3));
        let alpha = Seq::constant(rat(1, 2));
        let bc = block_padding(&s, &alpha, &rat(1, 1), 20, DEFAULT_SEARCH_CAP).unwrap();
        for (n, &start) in bc.starts.iter().enumerate() {
            assert_eq!(start, n as u64);
        }
        for b in &bc.beta {
            assert_eq!(*b, rat(2, 3));
        }
    }

    #[test]
    fn hand_evaluated_step_block() {
        // s = (1, 0, 0, ...), alpha = 1/4, theta = 1: l(1) = 4 and
        // beta = (1, 3/4, 1/2, 1/4, 0, ...), gaps exactly theta*alpha
        let s = Seq::from_fn(|n| if n == 0 { rat(1, 1) } else { rat(0, 1) });
        let alpha = Seq::constant(rat(1, 4));
        let bc = block_padding(&s, &alpha, &rat(1, 1), 8, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(bc.starts[0], 0);
        assert_eq!(bc.starts[1], 4);
        let expect = [
            rat(1, 1),
            rat(3, 4),
            rat(1, 2),
            rat(1, 4),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
            rat(0, 1),
        ];
        assert_eq!(bc.beta, expect);
        for k in 0..8usize {
            let gap = (&bc.beta[k] - &bc.beta[k + 1]).abs();
            assert!(gap <= rat(1, 4));
        }
    }

    #[test]
    fn single_term_threshold_keeps_beta_equal_to_s() {
        // s_n = 1/(n+1), alpha = 1, theta = 1: each |s_n - s_{n+1}| <= 1,
        // so l(n) = n and beta = s
        let s = Seq::from_fn(|n| Exact::one() / rat_u64(n + 1));
        let alpha = Seq::constant(rat(1, 1));
        let bc = block_padding(&s, &alpha, &rat(1, 1), 30, DEFAULT_SEARCH_CAP).unwrap();
        for n in 0..=30u64 {
            assert_eq!(bc.starts[n as usize], n);
            assert_eq!(bc.beta[n as usize], s.at(n));
        }
    }

    #[test]
    fn search_cap_failure_is_reported() {
        let s = Seq::from_fn(|n| if n == 0 { rat(1, 1) } else { rat(0, 1) });
        let alpha = Seq::zero();
        let err = block_padding(&s, &alpha, &rat(1, 1), 10, 50);
        assert!(matches!(
            err,
            Err(BlockError::SearchCapExceeded { block: 0, cap: 50 })
        ));
    }

    #[test]
    fn block_mu_examples() {
        // beta = 0: mu is constantly L
        let s = Seq::zero();
        let alpha = Seq::constant(rat(1, 1));
        let bc = block_padding(&s, &alpha, &rat(1, 1), 10, DEFAULT_SEARCH_CAP).unwrap();
        let mu = block_mu(&bc, &rat(1, 1), &Seq::zero(), 10).unwrap();
        assert!(mu.iter().all(|v| *v == rat(1, 1)));

        // the step example with L = total of alpha*beta: mu telescopes to 0
        let s = Seq::from_fn(|n| if n == 0 { rat(1, 1) } else { rat(0, 1) });
        let alpha = Seq::constant(rat(1, 4));
        let bc = block_padding(&s, &alpha, &rat(1, 1), 10, DEFAULT_SEARCH_CAP).unwrap();
        let total: Exact = (0..=10u64)
            .map(|i| bc.alpha.at(i) * bc.beta[i as usize].clone())
            .sum();
        let mu = block_mu(&bc, &total, &Seq::zero(), 10).unwrap();
        assert_eq!(mu[0], total);
        assert_eq!(*mu.last().unwrap(), rat(0, 1));
        for n in 0..=10usize {
            let decrease = &mu[n] - &mu[n + 1];
            assert_eq!(decrease, bc.alpha.at(n as u64) * bc.beta[n].clone());
        }

        // nonincreasing nu only strengthens the decrease
        let nu = Seq::from_fn(|n| Exact::one() / rat_u64(n + 1));
        let mu = block_mu(&bc, &rat(2, 1), &nu, 10).unwrap();
        for n in 0..=10usize {
            assert!(mu[n + 1] <= mu[n].clone() - bc.alpha.at(n as u64) * bc.beta[n].clone());
            assert!(!mu[n].is_negative());
        }
    }

    #[test]
    fn block_mu_rejects_bad_inputs() {
        let s = Seq::constant(rat(1, 1));
        let alpha = Seq::constant(rat(1, 1));
        let bc = block_padding(&s, &alpha, &rat(1, 1), 5, DEFAULT_SEARCH_CAP).unwrap();
        // L too small
        assert!(matches!(
            block_mu(&bc, &rat(1, 1), &Seq::zero(), 5),
            Err(BlockError::Precondition { .. })
        ));
        // nu increasing
        let nu = Seq::from_fn(rat_u64);
        assert!(matches!(
            block_mu(&bc, &rat(100, 1), &nu, 5),
            Err(BlockError::Precondition { .. })
        ));
    }
}
