//! Lazily evaluated infinite sequences and exact partial sums.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::value::Value;

/// A sequence `index -> value`, evaluated on demand.
///
/// Evaluation must be deterministic: `at(n)` called twice returns identical
/// values. Memoization, when enabled, is internally synchronized, so a `Seq`
/// can be shared across concurrent checkers.
pub struct Seq<V> {
    inner: Arc<Inner<V>>,
}

struct Inner<V> {
    eval: Box<dyn Fn(u64) -> V + Send + Sync>,
    memo: Option<Mutex<HashMap<u64, V>>>,
}

impl<V> Clone for Seq<V> {
    fn clone(&self) -> Self {
        Seq {
            inner: Arc::clone(&self.inner),
        }
    }
}

impl<V: Value> Seq<V> {
    pub fn from_fn(f: impl Fn(u64) -> V + Send + Sync + 'static) -> Self {
        Seq {
            inner: Arc::new(Inner {
                eval: Box::new(f),
                memo: None,
            }),
        }
    }

    /// Like [`Seq::from_fn`] but with an index-keyed cache.
    pub fn memoized(f: impl Fn(u64) -> V + Send + Sync + 'static) -> Self {
        Seq {
            inner: Arc::new(Inner {
                eval: Box::new(f),
                memo: Some(Mutex::new(HashMap::new())),
            }),
        }
    }

    pub fn constant(v: V) -> Self {
        Seq::from_fn(move |_| v.clone())
    }

    pub fn zero() -> Self {
        Seq::constant(V::zero())
    }

    /// A finite prefix; evaluation past the end panics.
    pub fn from_values(values: Vec<V>) -> Self {
        Seq::from_fn(move |n| {
            values
                .get(n as usize)
                .unwrap_or_else(|| {
                    panic!("sequence evaluated at {n}, defined up to {}", values.len())
                })
                .clone()
        })
    }

    /// A finite prefix continued with its last value (frozen tail, e.g. a
    /// halted trajectory).
    pub fn from_values_frozen(values: Vec<V>) -> Self {
        assert!(!values.is_empty());
        Seq::from_fn(move |n| {
            values
                .get(n as usize)
                .unwrap_or_else(|| values.last().unwrap())
                .clone()
        })
    }

    pub fn at(&self, n: u64) -> V {
        if let Some(memo) = &self.inner.memo {
            if let Some(v) = memo.lock().unwrap().get(&n) {
                return v.clone();
            }
            let v = (self.inner.eval)(n);
            memo.lock().unwrap().insert(n, v.clone());
            return v;
        }
        (self.inner.eval)(n)
    }

    /// First index in `0..=upto` holding a negative value, if any.
    pub fn first_negative(&self, upto: u64) -> Option<(u64, V)> {
        (0..=upto).find_map(|n| {
            let v = self.at(n);
            if v < V::zero() {
                Some((n, v))
            } else {
                None
            }
        })
    }
}

/// `sum_{i=m}^{n} s(i)`, with the empty-sum convention: 0 when `n < m`.
pub fn partial_sum<V: Value>(s: &Seq<V>, m: u64, n: u64) -> V {
    if n < m {
        return V::zero();
    }
    let mut acc = V::zero();
    for i in m..=n {
        acc = acc + s.at(i);
    }
    acc
}

/// Growable prefix-sum table over a sequence, so repeated range sums cost
/// one subtraction instead of a rescan.
pub struct CumSum<V> {
    seq: Seq<V>,
    // sums[k] = sum of s(0..k), so sums[0] = 0
    sums: Vec<V>,
}

impl<V: Value> CumSum<V> {
    pub fn new(seq: Seq<V>) -> Self {
        CumSum {
            seq,
            sums: vec![V::zero()],
        }
    }

    fn grow_to(&mut self, len: u64) {
        while (self.sums.len() as u64) <= len {
            let i = self.sums.len() as u64 - 1;
            let next = self.sums.last().unwrap().clone() + self.seq.at(i);
            self.sums.push(next);
        }
    }

    /// Inclusive range sum with the same empty-sum convention as
    /// [`partial_sum`].
    pub fn range(&mut self, m: u64, n: u64) -> V {
        if n < m {
            return V::zero();
        }
        self.grow_to(n + 1);
        self.sums[(n + 1) as usize].clone() - self.sums[m as usize].clone()
    }

    /// `sum_{i<n} s(i)`.
    pub fn prefix(&mut self, n: u64) -> V {
        self.grow_to(n);
        self.sums[n as usize].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{rat, rat_u64, Exact};
    use proptest::prelude::*;

    #[test]
    fn constant_sum() {
        let s: Seq<Exact> = Seq::constant(rat(1, 1));
        assert_eq!(partial_sum(&s, 0, 4), rat(5, 1));
    }

    #[test]
    fn harmonic_slice() {
        let s: Seq<Exact> = Seq::from_fn(|i| rat(1, 1) / rat_u64(i + 1));
        assert_eq!(partial_sum(&s, 1, 2), rat(5, 6));
    }

    #[test]
    fn empty_sum_convention() {
        let s: Seq<Exact> = Seq::from_fn(rat_u64);
        assert_eq!(partial_sum(&s, 3, 2), rat(0, 1));
        let mut cs = CumSum::new(s);
        assert_eq!(cs.range(3, 2), rat(0, 1));
    }

    #[test]
    fn memoized_evaluation_is_deterministic() {
        let s: Seq<Exact> = Seq::memoized(|i| rat_u64(i * i));
        assert_eq!(s.at(7), s.at(7));
        assert_eq!(s.at(7), rat_u64(49));
    }

    #[test]
    fn memoized_seq_is_shareable_across_threads() {
        let s: Seq<Exact> = Seq::memoized(|i| rat_u64(i) * rat(1, 3));
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let s = s.clone();
                std::thread::spawn(move || {
                    for i in 0..200u64 {
                        s.at(i + t);
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert_eq!(s.at(100), rat_u64(100) * rat(1, 3));
    }

    #[test]
    fn first_negative_finds_the_first() {
        let s: Seq<Exact> = Seq::from_fn(|i| if i >= 3 { rat(-1, 2) } else { rat_u64(i) });
        assert_eq!(s.first_negative(10), Some((3, rat(-1, 2))));
        assert_eq!(s.first_negative(2), None);
    }

    proptest! {
        // partial_sum(s, m, n) = partial_sum(s, m, k) + partial_sum(s, k+1, n), bit-exact.
        #[test]
        fn partial_sum_splits(m in 0u64..30, len in 0u64..30, cut in 0u64..30) {
            let s: Seq<Exact> = Seq::from_fn(|i| rat(1, 1) / rat_u64(i + 1));
            let n = m + len;
            let k = (m + cut % (len + 1)).min(n);
            let whole = partial_sum(&s, m, n);
            let split = partial_sum(&s, m, k) + partial_sum(&s, k + 1, n);
            prop_assert_eq!(whole, split);
        }

        #[test]
        fn cumsum_matches_partial_sum(m in 0u64..40, n in 0u64..40) {
            let s: Seq<Exact> = Seq::from_fn(|i| rat(1, 3) * rat_u64(i % 7));
            let mut cs = CumSum::new(s.clone());
            prop_assert_eq!(cs.range(m, n), partial_sum(&s, m, n));
        }
    }
}
