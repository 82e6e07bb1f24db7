//! Machine-checkable certificates and the generic finite-data checkers.
//!
//! A checker validates a claimed modulus against a concrete sequence on a
//! finite range and reports what it saw; violations are data, not errors.
//! All checkers are pure: identical inputs yield identical certificates.

use crate::rates::{ConvergenceRate, Counterexample, DivergenceRate};
use crate::seq::{CumSum, Seq};
use crate::value::{nat_to_u64, Exact, Nat, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check could not be decided on the available range (e.g. a rate
    /// value beyond the horizon). Distinct from failure.
    Inconclusive,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "fail"),
            CheckStatus::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// One premise (or sub-check) of a certificate.
#[derive(Debug, Clone)]
pub struct PremiseReport {
    pub name: String,
    /// Human-readable description of the range actually checked.
    pub range: String,
    pub status: CheckStatus,
    pub first_violation: Option<String>,
}

impl PremiseReport {
    pub fn pass(name: impl Into<String>, range: impl Into<String>) -> Self {
        PremiseReport {
            name: name.into(),
            range: range.into(),
            status: CheckStatus::Pass,
            first_violation: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        range: impl Into<String>,
        violation: impl Into<String>,
    ) -> Self {
        PremiseReport {
            name: name.into(),
            range: range.into(),
            status: CheckStatus::Fail,
            first_violation: Some(violation.into()),
        }
    }

    pub fn inconclusive(
        name: impl Into<String>,
        range: impl Into<String>,
        why: impl Into<String>,
    ) -> Self {
        PremiseReport {
            name: name.into(),
            range: range.into(),
            status: CheckStatus::Inconclusive,
            first_violation: Some(why.into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    PremiseFailed,
    Inconclusive,
    /// Premises passed but the certified conclusion failed. Must never
    /// occur; treated as a hard failure everywhere.
    SoundnessAlarm,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Certified => write!(f, "certified"),
            Verdict::PremiseFailed => write!(f, "premise-failed"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
            Verdict::SoundnessAlarm => write!(f, "soundness-alarm"),
        }
    }
}

/// A machine-checkable report: premises verified on finite data, the bound
/// value, the witness index when applicable, and the overall verdict.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub id: String,
    pub premises: Vec<PremiseReport>,
    pub bound: Option<Nat>,
    pub witness: Option<u64>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(id: impl Into<String>) -> Self {
        Certificate {
            id: id.into(),
            premises: Vec::new(),
            bound: None,
            witness: None,
            verdict: Verdict::Inconclusive,
            notes: Vec::new(),
        }
    }

    /// Verdict from the collected premises alone: certified iff every
    /// premise passed.
    pub fn settle_from_premises(&mut self) {
        self.verdict = if self.premises.iter().any(|p| p.status == CheckStatus::Fail) {
            Verdict::PremiseFailed
        } else if self
            .premises
            .iter()
            .any(|p| p.status == CheckStatus::Inconclusive)
        {
            Verdict::Inconclusive
        } else {
            Verdict::Certified
        };
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// True iff the named premise was checked and failed.
    pub fn premise_failed(&self, name: &str) -> bool {
        self.premises
            .iter()
            .any(|p| p.name == name && p.status == CheckStatus::Fail)
    }

    /// Stable plain-text rendering (reports are byte-reproducible).
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("[certificate {}]\n", self.id));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(bound) = &self.bound {
            out.push_str(&format!("bound: {bound}\n"));
        }
        if let Some(witness) = self.witness {
            out.push_str(&format!("witness: {witness}\n"));
        }
        for p in &self.premises {
            out.push_str(&format!("premise {}: {} ({})", p.name, p.status, p.range));
            if let Some(v) = &p.first_violation {
                out.push_str(&format!(" -- {v}"));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// Validates a divergence rate against a concrete nonnegative sequence on
/// sampled `(n, x)` points: checks the partial-sum property
/// `sum_{i=n}^{r(n,x)} alpha_i >= x` and monotonicity of `r` in `n` across
/// the samples.
pub fn check_divergence_rate<V: Value>(
    alpha: &Seq<V>,
    r: &DivergenceRate,
    samples: &[(u64, Exact)],
) -> Certificate {
    let mut cert = Certificate::new("divergence-rate");
    let mut sums = CumSum::new(alpha.clone());
    let range = format!("{} samples", samples.len());

    let mut sum_viol: Option<String> = None;
    let mut evaluated: Vec<(u64, Exact, u64)> = Vec::new();
    for (n, x) in samples {
        match r.at_small(*n, x) {
            Ok(end) => {
                let total = sums.range(*n, end);
                if total < V::from_ratio(x) {
                    sum_viol.get_or_insert_with(|| {
                        format!(
                            "sum_{{i={n}}}^{{{end}}} = {} < x = {}",
                            total.render(),
                            x.render()
                        )
                    });
                }
                evaluated.push((*n, x.clone(), end));
            }
            Err(_) => {
                cert.premises.push(PremiseReport::inconclusive(
                    "partial-sum",
                    range.clone(),
                    format!("r({n}, {}) exceeds machine range", x.render()),
                ));
            }
        }
    }
    cert.premises.push(match sum_viol {
        None => PremiseReport::pass("partial-sum", range.clone()),
        Some(v) => PremiseReport::fail("partial-sum", range.clone(), v),
    });

    let mut mono_viol: Option<String> = None;
    for (n1, x1, r1) in &evaluated {
        for (n2, x2, r2) in &evaluated {
            if x1 == x2 && n1 <= n2 && r1 > r2 {
                mono_viol.get_or_insert_with(|| {
                    format!(
                        "r({n1},{}) = {r1} > r({n2},{}) = {r2}",
                        x1.render(),
                        x2.render()
                    )
                });
            }
        }
    }
    cert.premises.push(match mono_viol {
        None => PremiseReport::pass("monotone-in-n", range),
        Some(v) => PremiseReport::fail("monotone-in-n", range, v),
    });

    cert.settle_from_premises();
    cert
}

/// Validates a convergence rate against a sequence and its limit on a grid
/// of tolerances, up to a finite horizon. Grid entries whose rate value
/// exceeds the horizon are flagged inconclusive, separately from failure.
pub fn check_convergence_rate<V: Value>(
    s: &Seq<V>,
    limit: &V,
    phi: &ConvergenceRate,
    grid: &[Exact],
    horizon: u64,
) -> Certificate {
    let mut cert = Certificate::new("convergence-rate");
    for eps in grid {
        let name = format!("eps={}", eps.render());
        let start = match phi.at_small(eps) {
            Ok(n) if n <= horizon => n,
            _ => {
                cert.premises.push(PremiseReport::inconclusive(
                    name,
                    format!("horizon {horizon}"),
                    "phi(eps) beyond horizon",
                ));
                continue;
            }
        };
        let range = format!("n in [{start}, {horizon}]");
        let eps_v = V::from_ratio(eps);
        let viol = (start..=horizon).find_map(|n| {
            let gap = (s.at(n) - limit.clone()).abs();
            if gap > eps_v {
                Some(format!("|s({n}) - limit| = {}", gap.render()))
            } else {
                None
            }
        });
        cert.premises.push(match viol {
            None => PremiseReport::pass(name, range),
            Some(v) => PremiseReport::fail(name, range, v),
        });
    }
    cert.settle_from_premises();
    cert
}

/// Result of a bounded metastable-witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessResult {
    Found { n: u64 },
    NotFound { scanned_to: u64 },
}

impl WitnessResult {
    pub fn found(&self) -> Option<u64> {
        match self {
            WitnessResult::Found { n } => Some(*n),
            WitnessResult::NotFound { .. } => None,
        }
    }
}

/// Finds the smallest `n <= min(bound, scan_cap)` whose whole window
/// `[n, n+g(n)]` stays within `eps` of the limit; the extracted bound may
/// astronomically exceed the range we are willing to evaluate, which is what
/// `scan_cap` is for.
///
/// With `g = 0` the window degenerates to a point and this is first-entry
/// search.
pub fn find_metastable_witness<V: Value>(
    s: &Seq<V>,
    limit: &V,
    eps: &Exact,
    g: &Counterexample,
    bound: &Nat,
    scan_cap: u64,
) -> WitnessResult {
    let cap = nat_to_u64(bound).map_or(scan_cap, |b| b.min(scan_cap));
    let eps_v = V::from_ratio(eps);
    // violations is the sorted list of indices seen so far with
    // |s(k) - limit| > eps; a window [n, w] is clean iff it contains none.
    let mut violations: Vec<u64> = Vec::new();
    let mut next_to_eval: u64 = 0;
    for n in 0..=cap {
        let w = match g.at_small(n).ok().and_then(|gn| n.checked_add(gn)) {
            Some(w) => w,
            None => return WitnessResult::NotFound { scanned_to: n },
        };
        while next_to_eval <= w {
            if (s.at(next_to_eval) - limit.clone()).abs() > eps_v {
                violations.push(next_to_eval);
            }
            next_to_eval += 1;
        }
        let pos = violations.partition_point(|&v| v < n);
        if violations.get(pos).is_none_or(|&v| v > w) {
            return WitnessResult::Found { n };
        }
    }
    WitnessResult::NotFound { scanned_to: cap }
}

/// Nonnegativity report for the sequences playing the `mu/alpha/beta/gamma`
/// roles (finite prefix).
pub fn nonnegative_premise<V: Value>(name: &str, s: &Seq<V>, upto: u64) -> PremiseReport {
    match s.first_negative(upto) {
        None => PremiseReport::pass(format!("{name}-nonnegative"), format!("n in [0, {upto}]")),
        Some((n, v)) => PremiseReport::fail(
            format!("{name}-nonnegative"),
            format!("n in [0, {upto}]"),
            format!("{name}({n}) = {}", v.render()),
        ),
    }
}

/// Truth of `value <= threshold (+ tol on the lenient side)`.
pub fn within<V: Value>(value: &V, threshold: &V, tol: &V) -> bool {
    value.clone() <= threshold.clone() + tol.clone()
}
