//! The recursive inequality `mu_{n+1} <= mu_n - alpha_n beta_n + gamma_n`
//! and every rate formula extracted for it, as executable functionals, plus
//! certificate checkers that validate each theorem's premises on finite data
//! before asserting (and cross-checking) its conclusion.
//!
//! Premise checks are finite by design: a premise quantified over all `n` is
//! checked up to the range the bound formula itself touches, and the
//! certificate records that range.

use std::sync::{Arc, Mutex};

use num_traits::{One, Signed, Zero};

use crate::certify::{Certificate, PremiseReport, Verdict};
use crate::rates::{ConvergenceRate, Counterexample, DivergenceRate, MetaRate, Modulus, RateError};
use crate::seq::{CumSum, Seq};
use crate::value::{ceil_nat, nat_to_u64, rat, Exact, Nat, Value};

/// Declared constants accompanying one instance of the recursive inequality.
#[derive(Clone, Default)]
pub struct StarConstants {
    /// Upper bound on `mu_n`.
    pub c: Option<Exact>,
    /// Upper bound on `alpha_n`.
    pub alpha_bar: Option<Exact>,
    /// Regularity constant: `beta_n - beta_{n+1} <= theta * alpha_n`.
    pub theta: Option<Exact>,
    /// Upper bound on `sum gamma_i`.
    pub gamma_total: Option<Exact>,
    /// Free-form remarks carried into certificates.
    pub notes: Vec<String>,
}

/// One instance of the inequality: the quadruple of sequences plus its
/// declared constants.
#[derive(Clone)]
pub struct StarInstance<V> {
    pub mu: Seq<V>,
    pub alpha: Seq<V>,
    pub beta: Seq<V>,
    pub gamma: Seq<V>,
    pub consts: StarConstants,
}

/// Checks the recursive inequality itself, nonnegativity of all four
/// sequences, and every declared constant bound, for all `n < horizon`.
///
/// `tol` is the lenient slack for float-backend data (pass zero for exact):
/// inequalities are accepted up to `+ tol`.
pub fn star_check<V: Value>(inst: &StarInstance<V>, horizon: u64, tol: &V) -> Certificate {
    let mut cert = Certificate::new("star-check");
    let range = format!("n in [0, {horizon})");
    let neg_tol = -tol.clone();

    let mut star_viol: Option<String> = None;
    for n in 0..horizon {
        let lhs = inst.mu.at(n + 1);
        let rhs = inst.mu.at(n) - inst.alpha.at(n) * inst.beta.at(n) + inst.gamma.at(n);
        if lhs > rhs.clone() + tol.clone() {
            star_viol = Some(format!(
                "n={n}: mu(n+1) = {} > {}",
                lhs.render(),
                rhs.render()
            ));
            break;
        }
    }
    cert.premises.push(match star_viol {
        None => PremiseReport::pass("star-inequality", range.clone()),
        Some(v) => PremiseReport::fail("star-inequality", range.clone(), v),
    });

    let mut neg_viol: Option<String> = None;
    'outer: for n in 0..=horizon {
        for (name, s) in [
            ("mu", &inst.mu),
            ("alpha", &inst.alpha),
            ("beta", &inst.beta),
            ("gamma", &inst.gamma),
        ] {
            let v = s.at(n);
            if v < neg_tol {
                neg_viol = Some(format!("{name}({n}) = {}", v.render()));
                break 'outer;
            }
        }
    }
    let nn_range = format!("n in [0, {horizon}]");
    cert.premises.push(match neg_viol {
        None => PremiseReport::pass("nonnegativity", nn_range.clone()),
        Some(v) => PremiseReport::fail("nonnegativity", nn_range.clone(), v),
    });

    let bound_premise = |name: &str, s: &Seq<V>, bound: &Exact| {
        let b = V::from_ratio(bound);
        let viol = (0..=horizon).find_map(|n| {
            let v = s.at(n);
            if v > b.clone() + tol.clone() {
                Some(format!("{name}({n}) = {}", v.render()))
            } else {
                None
            }
        });
        match viol {
            None => PremiseReport::pass(format!("{name}-bound"), nn_range.clone()),
            Some(v) => PremiseReport::fail(format!("{name}-bound"), nn_range.clone(), v),
        }
    };
    if let Some(c) = &inst.consts.c {
        let p = bound_premise("mu", &inst.mu, c);
        cert.premises.push(p);
    }
    if let Some(a) = &inst.consts.alpha_bar {
        let p = bound_premise("alpha", &inst.alpha, a);
        cert.premises.push(p);
    }
    if let Some(theta) = &inst.consts.theta {
        let th = V::from_ratio(theta);
        let viol = (0..horizon).find_map(|n| {
            let drop = inst.beta.at(n) - inst.beta.at(n + 1);
            let cap = th.clone() * inst.alpha.at(n);
            if drop > cap.clone() + tol.clone() {
                Some(format!(
                    "n={n}: beta(n)-beta(n+1) = {} > theta*alpha(n) = {}",
                    drop.render(),
                    cap.render()
                ))
            } else {
                None
            }
        });
        cert.premises.push(match viol {
            None => PremiseReport::pass("theta-regularity", range.clone()),
            Some(v) => PremiseReport::fail("theta-regularity", range.clone(), v),
        });
    }
    if let Some(total) = &inst.consts.gamma_total {
        let mut sums = CumSum::new(inst.gamma.clone());
        let got = sums.range(0, horizon);
        let cap = V::from_ratio(total);
        cert.premises.push(if got <= cap.clone() + tol.clone() {
            PremiseReport::pass("gamma-sum", nn_range.clone())
        } else {
            PremiseReport::fail(
                "gamma-sum",
                nn_range.clone(),
                format!("partial sum {} exceeds {}", got.render(), cap.render()),
            )
        });
    }

    cert.notes.extend(inst.consts.notes.iter().cloned());
    cert.settle_from_premises();
    cert
}

/// Rate of metastability for a nonnegative series with total at most `b`:
/// `Phi(eps, g) = g~^(ceil(b/eps))(0)` where `g~(n) = n + g(n) + 1`.
///
/// Guarantee (exercised by the oracle tests): any nonnegative sequence with
/// total sum at most `b` admits `n <= Phi` with window sum
/// `sum_{i=n}^{n+g(n)} <= eps`.
pub fn series_meta_rate(b: &Exact, eps: &Exact, g: &Counterexample) -> Nat {
    assert!(b.is_positive() && eps.is_positive());
    let iters = nat_to_u64(&ceil_nat(&(b / eps)))
        .expect("iteration count must fit in a machine word to be evaluable");
    let mut n = Nat::zero();
    for _ in 0..iters {
        n = &n + g.at(&n) + Nat::one();
    }
    n
}

/// [`series_meta_rate`] packaged as a [`MetaRate`].
pub fn series_meta_rate_fn(b: Exact) -> MetaRate {
    MetaRate::new(move |eps, g| series_meta_rate(&b, eps, g))
}

/// Rate of convergence for `beta_n -> 0` from a Cauchy rate `phi` for
/// `sum alpha_i beta_i` under the regularity condition with constant
/// `theta`: `psi(eps) = phi(eps^2 / 4 theta)`.
pub fn case1_beta_rate(phi: &ConvergenceRate, theta: &Exact, eps: &Exact) -> Nat {
    phi.at(&(eps * eps / (rat(4, 1) * theta)))
}

/// Rate of metastability for `beta_n -> 0` from a metastability rate for
/// `sum alpha_i beta_i < oo`: `Psi(eps, g) = Phi(eps^2/4theta, h)` with
/// `h(n) = r(n + g(n), eps/2theta) - n`.
///
/// Rejects a malformed `r` that returns a value below its first argument at
/// any probed point.
pub fn case1_beta_meta(
    meta: &MetaRate,
    r: &DivergenceRate,
    theta: &Exact,
    eps: &Exact,
    g: &Counterexample,
) -> Result<Nat, RateError> {
    let inner_eps = eps * eps / (rat(4, 1) * theta);
    let x = eps / (rat(2, 1) * theta);
    let bad: Arc<Mutex<Option<(Nat, Nat)>>> = Arc::new(Mutex::new(None));
    let h = {
        let r = r.clone();
        let g = g.clone();
        let bad = Arc::clone(&bad);
        Counterexample::new(move |n| {
            let rv = r.at(&(n + g.at(n)), &x);
            if rv < *n {
                let mut slot = bad.lock().unwrap();
                if slot.is_none() {
                    *slot = Some((n.clone(), rv));
                }
                Nat::zero()
            } else {
                rv - n
            }
        })
    };
    let out = meta.at(&inner_eps, &h);
    let seen = bad.lock().unwrap().take();
    match seen {
        Some((base, returned)) => Err(RateError::NegativeWindow { base, returned }),
        None => Ok(out),
    }
}

/// Index bound from the constants of the summable-error regime: some
/// `k in [n, r(n, (c + gamma_total)/eps)]` has `beta_k <= eps`.
pub fn case1_subsequence_bound(
    r: &DivergenceRate,
    c: &Exact,
    gamma_total: &Exact,
    eps: &Exact,
    n: u64,
) -> Nat {
    r.at(&Nat::from(n), &((c + gamma_total) / eps))
}

/// Index bound for the vanishing-ratio regime: some
/// `k in [n0, r(n0, 2c/eps)]` has `beta_k <= eps`, provided
/// `gamma_n/alpha_n <= eps/2` from `n0` on.
pub fn case2_subsequence_bound(r: &DivergenceRate, c: &Exact, eps: &Exact, n0: u64) -> Nat {
    r.at(&Nat::from(n0), &(rat(2, 1) * c / eps))
}

/// How the premise-2 regularity condition is checked by the window
/// certifier.
#[derive(Clone, Copy, PartialEq, Eq)]
enum RegularityMode {
    /// `beta_n - beta_m <= theta * sum_{i=n}^{m-1} alpha_i + slack` over all
    /// pairs `n2 <= n < m <= M`.
    Pairwise,
    /// `beta_n - beta_{n+1} <= theta * alpha_n` for all checked `n`.
    Consecutive,
}

struct WindowParams {
    n1: u64,
    n2: u64,
    theta: Exact,
    eps: Exact,
    /// Additive slack in the regularity premise.
    slack: Exact,
    /// Threshold for the tail-sum premise.
    tail_threshold: Exact,
    /// Second argument handed to the divergence rate.
    r_x: Exact,
    mode: RegularityMode,
}

fn window_certify_engine(
    alpha: &Seq<Exact>,
    beta: &Seq<Exact>,
    r: &DivergenceRate,
    g: &Counterexample,
    params: WindowParams,
) -> Result<Certificate, RateError> {
    let WindowParams {
        n1,
        n2,
        theta,
        eps,
        slack,
        tail_threshold,
        r_x,
        mode,
    } = params;
    let mut cert = Certificate::new("window-certify");
    let n = n1.max(n2);
    let g_n = g.at_small(n)?;
    let window_end = n
        .checked_add(g_n)
        .ok_or_else(|| RateError::InvalidParameter("window end overflows".into()))?;
    let m_end = r.at_small(window_end, &r_x)?;
    cert.bound = Some(Nat::from(m_end));

    let check_upto = m_end.max(window_end);
    cert.premises.push(crate::certify::nonnegative_premise(
        "alpha", alpha, check_upto,
    ));
    cert.premises.push(crate::certify::nonnegative_premise(
        "beta", beta, check_upto,
    ));

    // premise 1: tail of sum alpha_i beta_i
    let prod = {
        let alpha = alpha.clone();
        let beta = beta.clone();
        Seq::from_fn(move |i| alpha.at(i) * beta.at(i))
    };
    let mut prod_sums = CumSum::new(prod);
    let tail = prod_sums.range(n1, m_end);
    let p1_range = format!("i in [{n1}, {m_end}]");
    cert.premises.push(if tail <= tail_threshold {
        PremiseReport::pass("tail-sum", p1_range)
    } else {
        PremiseReport::fail(
            "tail-sum",
            p1_range,
            format!(
                "sum = {} > threshold {}",
                tail.render(),
                tail_threshold.render()
            ),
        )
    });

    // premise 2: regularity
    match mode {
        RegularityMode::Pairwise => {
            // beta_n - beta_m - theta*sum_{i=n}^{m-1} alpha_i = v_n - v_m
            // for v_k = beta_k + theta * (sum of alpha below k), so one
            // forward scan with a running max suffices.
            let mut alpha_sums = CumSum::new(alpha.clone());
            let range = format!("{n2} <= n < m <= {m_end}");
            let mut best: Option<(u64, Exact)> = None;
            let mut viol: Option<String> = None;
            for m in n2..=m_end {
                let v_m = beta.at(m) + theta.clone() * alpha_sums.prefix(m);
                if let Some((bn, bv)) = &best {
                    let excess = bv - &v_m;
                    if excess > slack {
                        viol = Some(format!(
                            "(n,m)=({bn},{m}): excess {} > slack {}",
                            excess.render(),
                            slack.render()
                        ));
                        break;
                    }
                }
                if best.as_ref().is_none_or(|(_, bv)| v_m > *bv) {
                    best = Some((m, v_m));
                }
            }
            cert.premises.push(match viol {
                None => PremiseReport::pass("regularity", range),
                Some(v) => PremiseReport::fail("regularity", range, v),
            });
        }
        RegularityMode::Consecutive => {
            let range = format!("n in [0, {m_end})");
            let viol = (0..m_end).find_map(|k| {
                let drop = beta.at(k) - beta.at(k + 1);
                let cap = theta.clone() * alpha.at(k);
                if drop > cap {
                    Some(format!(
                        "n={k}: beta drop {} > {}",
                        drop.render(),
                        cap.render()
                    ))
                } else {
                    None
                }
            });
            cert.premises.push(match viol {
                None => PremiseReport::pass("regularity", range),
                Some(v) => PremiseReport::fail("regularity", range, v),
            });
        }
    }

    cert.settle_from_premises();
    if cert.verdict != Verdict::Certified {
        return Ok(cert);
    }

    // Premises hold: the conclusion beta_k <= eps on [N, N+g(N)] is asserted
    // by the theorem; cross-check it. A violation here is a soundness alarm.
    let conclusion_viol = (n..=window_end).find_map(|k| {
        let v = beta.at(k);
        if v > eps {
            Some(format!("beta({k}) = {} > eps", v.render()))
        } else {
            None
        }
    });
    match conclusion_viol {
        None => {
            cert.witness = Some(n);
            cert.premises.push(PremiseReport::pass(
                "conclusion",
                format!("n in [{n}, {window_end}]"),
            ));
        }
        Some(v) => {
            cert.verdict = Verdict::SoundnessAlarm;
            cert.premises.push(PremiseReport::fail(
                "conclusion",
                format!("n in [{n}, {window_end}]"),
                v,
            ));
        }
    }
    Ok(cert)
}

/// Window certifier for the summable-products regime: with
/// `N = max(N1, N2)` and `M = r(N + g(N), eps/4theta)`, checks
///
/// 1. `sum_{i=N1}^{M} alpha_i beta_i <= eps^2 / 8 theta`, and
/// 2. `beta_n - beta_m <= theta * sum_{i=n}^{m-1} alpha_i + eps/4`
///    for all `N2 <= n < m <= M`,
///
/// and on success asserts and cross-checks `beta_n <= eps` on
/// `[N, N + g(N)]`. A conclusion failure with passing premises is reported
/// as a soundness alarm and must never occur.
#[allow(clippy::too_many_arguments)]
pub fn case1_window_certify(
    alpha: &Seq<Exact>,
    beta: &Seq<Exact>,
    r: &DivergenceRate,
    theta: &Exact,
    n1: u64,
    n2: u64,
    eps: &Exact,
    g: &Counterexample,
) -> Result<Certificate, RateError> {
    window_certify_engine(
        alpha,
        beta,
        r,
        g,
        WindowParams {
            n1,
            n2,
            theta: theta.clone(),
            eps: eps.clone(),
            slack: eps / rat(4, 1),
            tail_threshold: eps * eps / (rat(8, 1) * theta),
            r_x: eps / (rat(4, 1) * theta),
            mode: RegularityMode::Pairwise,
        },
    )
}

/// Simplified window certifier for instances with stepwise regularity
/// `beta_n - beta_{n+1} <= theta * alpha_n`: premise 1 becomes
/// `sum_{i=N}^{r(N+g(N), eps/2theta)} alpha_i beta_i <= eps^2/4theta` and
/// premise 2 is checked consecutively with no slack.
pub fn case1_window_certify_simplified(
    alpha: &Seq<Exact>,
    beta: &Seq<Exact>,
    r: &DivergenceRate,
    theta: &Exact,
    n: u64,
    eps: &Exact,
    g: &Counterexample,
) -> Result<Certificate, RateError> {
    window_certify_engine(
        alpha,
        beta,
        r,
        g,
        WindowParams {
            n1: n,
            n2: 0,
            theta: theta.clone(),
            eps: eps.clone(),
            slack: Exact::zero(),
            tail_threshold: eps * eps / (rat(4, 1) * theta),
            r_x: eps / (rat(2, 1) * theta),
            mode: RegularityMode::Consecutive,
        },
    )
}

/// Builds the modulus `omega(eps) = psi(eps)/2` from a nondecreasing `psi`
/// with `psi(0) = 0` and `psi(t) > 0` for `t > 0`; those properties are
/// checked on the supplied sample grid.
pub fn modulus_from_monotone(
    psi: impl Fn(&Exact) -> Exact + Send + Sync + 'static,
    grid: &[Exact],
) -> Result<Modulus, RateError> {
    if !psi(&Exact::zero()).is_zero() {
        return Err(RateError::InvalidParameter("psi(0) != 0".into()));
    }
    let mut pts: Vec<Exact> = grid.to_vec();
    pts.sort();
    for w in pts.windows(2) {
        if psi(&w[0]) > psi(&w[1]) {
            return Err(RateError::InvalidParameter(format!(
                "psi decreases between {} and {}",
                w[0].render(),
                w[1].render()
            )));
        }
    }
    for t in &pts {
        if t.is_positive() && !psi(t).is_positive() {
            return Err(RateError::InvalidParameter(format!(
                "psi({}) is not positive",
                t.render()
            )));
        }
    }
    Ok(Modulus::new(move |eps| psi(eps) / rat(2, 1)))
}

/// Rate composition: when `mu_n <= omega~(eps)` forces `beta_n <= eps` and
/// `phi` is a rate for `mu_n -> 0`, `phi . omega~` is a rate for
/// `beta_n -> 0`.
pub fn compose_beta_rate(phi: &ConvergenceRate, omega_tilde: &Modulus, eps: &Exact) -> Nat {
    phi.at(&omega_tilde.at(eps))
}

/// Rate of convergence for `mu_n -> 0` in the vanishing-ratio regime:
/// `Phi(eps) = r(phi(min{omega(eps/2)/2, eps/2alpha}), 2c/omega(eps/2))`.
pub fn case2_rate(
    r: &DivergenceRate,
    phi: &ConvergenceRate,
    omega: &Modulus,
    c: &Exact,
    alpha_bar: &Exact,
    eps: &Exact,
) -> Nat {
    let w = omega.at(&(eps / rat(2, 1)));
    let inner = (w.clone() / rat(2, 1)).min(eps / (rat(2, 1) * alpha_bar));
    r.at(&phi.at(&inner), &(rat(2, 1) * c / w))
}

/// Successor-variant rate: with `beta_n <= omega(eps) => mu_{n+1} <= eps`,
/// `Phi(eps) = r(phi(omega(eps)/2), 2c/omega(eps)) + 1`.
pub fn case2b_rate(
    r: &DivergenceRate,
    phi: &ConvergenceRate,
    omega: &Modulus,
    c: &Exact,
    eps: &Exact,
) -> Nat {
    let w = omega.at(eps);
    r.at(&phi.at(&(w.clone() / rat(2, 1))), &(rat(2, 1) * c / w)) + Nat::one()
}

/// Which modulus contract a vanishing-ratio certificate uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTwoVariant {
    /// `beta_n <= delta => mu_n <= eps/2`; witness bound `r(p, 2c/delta)`.
    MuN,
    /// `beta_n <= delta => mu_{n+1} <= eps`; witness bound
    /// `r(m, 2c/delta) + 1`.
    MuSucc,
}

/// The helper defaults for `delta` and `p` mirroring the corollary proofs:
/// `delta = omega(eps/2)`, `p = phi(min{delta/2, eps/2alpha})` for the
/// `MuN` variant, and `delta = omega(eps)`, `p = phi(delta/2)` for
/// `MuSucc`.
pub fn case2_meta_defaults(
    variant: CaseTwoVariant,
    omega: &Modulus,
    phi: &ConvergenceRate,
    alpha_bar: Option<&Exact>,
    eps: &Exact,
) -> Result<(Exact, u64), RateError> {
    match variant {
        CaseTwoVariant::MuN => {
            let alpha_bar = alpha_bar.ok_or_else(|| {
                RateError::InvalidParameter("alpha_bar required for the mu_n variant".into())
            })?;
            let delta = omega.at(&(eps / rat(2, 1)));
            let inner = (delta.clone() / rat(2, 1)).min(eps / (rat(2, 1) * alpha_bar));
            let p = phi.at_small(&inner)?;
            Ok((delta, p))
        }
        CaseTwoVariant::MuSucc => {
            let delta = omega.at(eps);
            let p = phi.at_small(&(delta.clone() / rat(2, 1)))?;
            Ok((delta, p))
        }
    }
}

/// `g~(i) = max{ j + g(j) | j <= i }`.
fn g_tilde_max(g: &Counterexample, i: u64) -> Result<u64, RateError> {
    let mut best = 0u64;
    for j in 0..=i {
        let w = j
            .checked_add(g.at_small(j)?)
            .ok_or_else(|| RateError::InvalidParameter("window end overflows".into()))?;
        best = best.max(w);
    }
    Ok(best)
}

/// Metastability certifier for the vanishing-ratio regime.
///
/// With `h(delta, m) = g~(r(m, 2c/delta))`, checks the ratio premise
/// `gamma_n/alpha_n <=` (`min{delta/2, eps/2alpha}` for [`CaseTwoVariant::MuN`],
/// `delta/2` for [`CaseTwoVariant::MuSucc`]) on `[m, h(delta, m)]` and the
/// modulus premise up to `h(delta, p)`, then searches for
/// `N <=` the variant's witness bound with `mu_n <= eps` on
/// `[N, N + g(N)]`. Premises must hold with margin `tol` on the float
/// backend; absence of a witness with passing premises is a soundness alarm.
#[allow(clippy::too_many_arguments)]
pub fn case2_meta_certify<V: Value>(
    inst: &StarInstance<V>,
    r: &DivergenceRate,
    eps: &Exact,
    g: &Counterexample,
    delta: &Exact,
    p: u64,
    m: u64,
    variant: CaseTwoVariant,
    tol: &V,
) -> Result<Certificate, RateError> {
    if m > p {
        return Err(RateError::InvalidParameter(format!("m = {m} > p = {p}")));
    }
    let c = inst.consts.c.clone().ok_or_else(|| {
        RateError::InvalidParameter("instance must declare the bound c on mu".into())
    })?;
    let mut cert = Certificate::new(match variant {
        CaseTwoVariant::MuN => "case2-metastable",
        CaseTwoVariant::MuSucc => "case2-metastable-succ",
    });
    cert.notes.extend(inst.consts.notes.iter().cloned());
    if variant == CaseTwoVariant::MuN {
        cert.notes
            .push("positivity preamble relaxed: checked nonnegativity plus alpha_n > 0".into());
    }

    let x = rat(2, 1) * &c / delta;
    let r_m = r.at_small(m, &x)?;
    let r_p = r.at_small(p, &x)?;
    let h_m = g_tilde_max(g, r_m)?;
    let h_p = g_tilde_max(g, r_p)?;
    let search_bound = match variant {
        CaseTwoVariant::MuN => r_p,
        CaseTwoVariant::MuSucc => r_m + 1,
    };
    cert.bound = Some(Nat::from(search_bound));
    let deep = g_tilde_max(g, search_bound)?.max(h_p).max(h_m) + 1;

    // ratio premise
    let ratio_threshold = match variant {
        CaseTwoVariant::MuN => {
            let alpha_bar = inst.consts.alpha_bar.clone().ok_or_else(|| {
                RateError::InvalidParameter(
                    "instance must declare alpha_bar for mu_n variant".into(),
                )
            })?;
            (delta.clone() / rat(2, 1)).min(eps / (rat(2, 1) * alpha_bar))
        }
        CaseTwoVariant::MuSucc => delta / rat(2, 1),
    };
    let thr = V::from_ratio(&ratio_threshold) - tol.clone();
    let ratio_range = format!("n in [{m}, {h_m}]");
    let mut ratio_viol: Option<String> = None;
    for n in m..=h_m {
        let a = inst.alpha.at(n);
        if !a.is_positive() {
            ratio_viol = Some(format!("alpha({n}) = {} is not positive", a.render()));
            break;
        }
        let q = inst.gamma.at(n) / a;
        if q > thr {
            ratio_viol = Some(format!("gamma/alpha at {n} = {}", q.render()));
            break;
        }
    }
    cert.premises.push(match ratio_viol {
        None => PremiseReport::pass("gamma-ratio", ratio_range),
        Some(v) => PremiseReport::fail("gamma-ratio", ratio_range, v),
    });

    // modulus premise
    let delta_v = V::from_ratio(delta) + tol.clone();
    let mu_cap = match variant {
        CaseTwoVariant::MuN => V::from_ratio(&(eps / rat(2, 1))) - tol.clone(),
        CaseTwoVariant::MuSucc => V::from_ratio(eps) - tol.clone(),
    };
    let mod_range = format!("n in [0, {h_p}]");
    let mut mod_viol: Option<String> = None;
    for n in 0..=h_p {
        if inst.beta.at(n) <= delta_v {
            let target = match variant {
                CaseTwoVariant::MuN => inst.mu.at(n),
                CaseTwoVariant::MuSucc => inst.mu.at(n + 1),
            };
            if target > mu_cap {
                mod_viol = Some(format!(
                    "beta({n}) <= delta but mu = {} exceeds the cap",
                    target.render()
                ));
                break;
            }
        }
    }
    cert.premises.push(match mod_viol {
        None => PremiseReport::pass("modulus", mod_range),
        Some(v) => PremiseReport::fail("modulus", mod_range, v),
    });

    // instance sanity on the touched range
    let star = star_check(inst, deep, tol);
    cert.premises.extend(star.premises);

    cert.settle_from_premises();
    if cert.verdict != Verdict::Certified {
        return Ok(cert);
    }

    // conclusion: search the witness window
    let eps_v = V::from_ratio(eps) + tol.clone();
    let mut found = None;
    'search: for n in 0..=search_bound {
        let end = n
            .checked_add(g.at_small(n)?)
            .ok_or_else(|| RateError::InvalidParameter("window end overflows".into()))?;
        for k in n..=end {
            if inst.mu.at(k) > eps_v {
                continue 'search;
            }
        }
        found = Some(n);
        break;
    }
    match found {
        Some(n) => {
            cert.witness = Some(n);
            cert.premises.push(PremiseReport::pass(
                "conclusion",
                format!("witness {n} <= bound {search_bound}"),
            ));
        }
        None => {
            cert.verdict = Verdict::SoundnessAlarm;
            cert.premises.push(PremiseReport::fail(
                "conclusion",
                format!("n in [0, {search_bound}]"),
                "no metastable window located below the bound",
            ));
        }
    }
    Ok(cert)
}
