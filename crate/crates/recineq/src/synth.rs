//! Seeded random instance generators for the randomized checks: summable
//! sequences, block-padding inputs, and conforming/sabotaged window
//! instances. Denominators are kept to powers of two so exact partial sums
//! stay small over long horizons.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::rates::{Counterexample, DivergenceRate, GSpec};
use crate::seq::{CumSum, Seq};
use crate::value::{rat, Exact};

pub type SynthRng = ChaCha8Rng;

/// Random positive rational with numerator below `num_max` and a power-of-
/// two denominator up to `2^den_pow_max`.
pub fn random_pos_ratio(rng: &mut SynthRng, num_max: i64, den_pow_max: u32) -> Exact {
    rat(
        rng.gen_range(1..=num_max),
        1 << rng.gen_range(0..=den_pow_max),
    )
}

/// Random nonnegative finitely-supported sequence with exact total at most
/// `b` (scaled to a random fraction of it).
pub fn random_summable(rng: &mut SynthRng, b: &Exact, max_len: usize) -> Vec<Exact> {
    let len = rng.gen_range(1..=max_len);
    let raw: Vec<Exact> = (0..len)
        .map(|_| rat(rng.gen_range(0..16), 1 << rng.gen_range(0..5)))
        .collect();
    let total: Exact = raw.iter().cloned().sum();
    if total.is_zero() {
        return raw;
    }
    let scale = b / &total * rat(rng.gen_range(1..=4), 4);
    raw.into_iter().map(|v| v * &scale).collect()
}

/// Random counterexample function from the declared family, values
/// bounded by `max_k`.
pub fn random_g(rng: &mut SynthRng, max_k: u64) -> GSpec {
    match rng.gen_range(0..3) {
        0 => GSpec::Constant(rng.gen_range(0..=max_k)),
        1 => GSpec::Linear(rng.gen_range(0..=max_k)),
        _ => GSpec::Affine(rng.gen_range(0..3), rng.gen_range(0..=max_k)),
    }
}

/// Random inputs for the block-padding construction: a positive `s` with a
/// rough random head and a constant tail, a positive bounded periodic
/// `alpha`, and `theta`. Denominators stay powers of two so every derived
/// value keeps a bounded denominator across long horizons.
pub fn random_block_inputs(rng: &mut SynthRng) -> (Seq<Exact>, Seq<Exact>, Exact) {
    let head_len = rng.gen_range(8..96usize);
    let head: Vec<Exact> = (0..head_len).map(|_| random_pos_ratio(rng, 8, 6)).collect();
    let last = head.last().unwrap().clone();
    let s = Seq::from_fn(move |n| {
        head.get(n as usize)
            .cloned()
            .unwrap_or_else(|| last.clone())
    });
    // alpha: periodic positive pattern, small enough that ramps span many
    // indices
    let pat: Vec<Exact> = (0..rng.gen_range(1..6usize))
        .map(|_| random_pos_ratio(rng, 2, 6))
        .collect();
    let alpha = Seq::from_fn(move |n| pat[n as usize % pat.len()].clone());
    let theta = random_pos_ratio(rng, 4, 2);
    (s, alpha, theta)
}

/// A window-certification scenario: constant steps `alpha = a`, a `beta`
/// with exact stepwise regularity and summable products, the matching rate,
/// and a start index `n1` found by exact search so the tail premise holds.
pub struct WindowInstance {
    pub alpha: Seq<Exact>,
    pub beta: Seq<Exact>,
    pub r: DivergenceRate,
    pub theta: Exact,
    pub eps: Exact,
    pub g: Counterexample,
    pub n1: u64,
}

/// Builds a conforming instance; `n1` is the first index whose tail sum
/// meets the premise threshold. Two families, both with the regularity
/// condition holding exactly:
///
/// - a `beta` ramping linearly to zero with slope exactly `theta * alpha`
///   and staying there, and
/// - a block padding of a random positive sequence with finite support,
///   whose gap invariant `|beta_k - beta_{k+1}| <= theta alpha_k` is the
///   regularity condition.
pub fn random_window_instance(rng: &mut SynthRng) -> WindowInstance {
    let a = random_pos_ratio(rng, 3, 3);
    let alpha = Seq::constant(a.clone());
    let theta = rat(rng.gen_range(1..4), 1 << rng.gen_range(0..2));
    let beta = if rng.gen_bool(0.5) {
        let start = rat(rng.gen_range(1..6), 1);
        let drop = &theta * &a;
        Seq::from_fn(move |n| {
            let v = &start - &drop * Exact::from_integer(n.into());
            if v.is_positive() {
                v
            } else {
                Exact::zero()
            }
        })
    } else {
        let support = rng.gen_range(2..24usize);
        let values: Vec<Exact> = (0..support).map(|_| random_pos_ratio(rng, 6, 4)).collect();
        let s = Seq::from_fn(move |n| values.get(n as usize).cloned().unwrap_or_else(Exact::zero));
        // blocks past the support are all unit blocks at zero, so the
        // padded beta is finitely supported too; the ramps total at most
        // sum |s_n - s_{n+1}| / (theta a) <= 288 * 16 indices for these
        // parameter ranges, so horizon 8192 covers everything the
        // certifier can touch
        let bc = crate::pathology::block_padding(&s, &alpha, &theta, 8192, 1 << 20)
            .expect("positive alpha keeps the least-index search finite");
        let beta = bc.beta;
        Seq::from_fn(move |n| beta.get(n as usize).cloned().unwrap_or_else(Exact::zero))
    };
    let r = DivergenceRate::constant(a.clone());
    let eps = rat(rng.gen_range(1..3), 1 << rng.gen_range(0..3));
    let g = random_g(rng, 8).to_counterexample();

    // exact search for n1: tail of alpha*beta over the range the premise
    // touches must be at most eps^2 / 8 theta
    let threshold = &eps * &eps / (rat(8, 1) * &theta);
    let r_x = &eps / (rat(4, 1) * &theta);
    let prod = {
        let alpha = alpha.clone();
        let beta = beta.clone();
        Seq::from_fn(move |i| alpha.at(i) * beta.at(i))
    };
    let mut sums = CumSum::new(prod);
    let mut n1 = 0u64;
    loop {
        let end = r
            .at_small(n1 + g.at_small(n1).unwrap(), &r_x)
            .expect("desk-scale rate");
        if sums.range(n1, end) <= threshold {
            break;
        }
        n1 += 1;
    }
    WindowInstance {
        alpha,
        beta,
        r,
        theta,
        eps,
        g,
        n1,
    }
}

/// Sabotages a conforming instance: a spike of `2 eps` plus enough excess
/// to violate the pairwise regularity premise is inserted at the window
/// start, so the checker must answer premise-failed (and the conclusion is
/// genuinely false there, exercising the no-false-certificates property).
pub fn sabotage_window_instance(inst: &WindowInstance) -> WindowInstance {
    let n = inst.n1;
    let spike_at = n;
    let spike = rat(2, 1) * &inst.eps + rat(10, 1) + &inst.theta * inst.alpha.at(n);
    let base = inst.beta.clone();
    let beta = Seq::from_fn(move |k| {
        if k == spike_at {
            spike.clone()
        } else {
            base.at(k)
        }
    });
    WindowInstance {
        alpha: inst.alpha.clone(),
        beta,
        r: inst.r.clone(),
        theta: inst.theta.clone(),
        eps: inst.eps.clone(),
        g: inst.g.clone(),
        n1: inst.n1,
    }
}
