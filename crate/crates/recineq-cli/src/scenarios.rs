//! The scenario registry: each scenario exercises one construction or
//! theorem end-to-end and emits a structured report.

use anyhow::{bail, Result};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};

use recineq::descent::{
    check_abstract_conditions, gradient_meta_bound, l1_box_problem, projective_constants,
    quadratic_problem, run_accretive_implicit, run_plain_gradient, run_projected_subgradient,
    star_instance_of_trajectory, wc_rate_sine, ConditionData, GradientConstants, PowerLaw,
    Trajectory,
};
use recineq::pathology::{
    block_mu, block_padding, case2_counterexample, harmonic_specker, BlockConstruction,
    SpeckerVariant, DEFAULT_SEARCH_CAP,
};
use recineq::synth::{
    random_block_inputs, random_g, random_summable, random_window_instance,
    sabotage_window_instance, SynthRng,
};
use recineq::{
    case1_window_certify, case2b_rate, ceil_nat, check_convergence_rate, find_metastable_witness,
    nat_to_u64, rat, rat_u64, series_meta_rate, star_check, Certificate, ConvergenceRate, CumSum,
    DivergenceRate, Exact, Float, Modulus, Nat, Seq, Value, Verdict, WitnessResult,
    DEFAULT_FLOAT_TOL,
};

use crate::config::Params;
use crate::report::Report;

pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub run: fn(Params) -> Result<Report>,
}

/// The registry, in stable order.
pub fn registry() -> Vec<Scenario> {
    vec![
        Scenario {
            name: "sine-rate",
            description: "closed-form rate for x_{n+1} = sin x_n, checked against the trajectory",
            run: sine_rate,
        },
        Scenario {
            name: "subgradient-meta",
            description: "projected subgradient on l1-box-5: witnesses below the exact metastability bound",
            run: subgradient_meta,
        },
        Scenario {
            name: "block-invariants",
            description: "randomized block-padding constructions hold their invariants bit-exactly",
            run: block_invariants,
        },
        Scenario {
            name: "specker-dump",
            description: "the Specker sequence over encoding v1 with witnessing machine indices",
            run: specker_dump,
        },
        Scenario {
            name: "series-meta-oracle",
            description: "randomized summable sequences: brute-force witnesses below the series metastability rate",
            run: series_meta_oracle,
        },
        Scenario {
            name: "counterexample-a",
            description: "vanishing-ratio counterexample (identity modulus variant), checked exactly",
            run: counterexample_a,
        },
        Scenario {
            name: "counterexample-b",
            description: "vanishing-ratio counterexample (computable-ratio-rate variant), checked exactly",
            run: counterexample_b,
        },
        Scenario {
            name: "accretive-rate",
            description: "scalar accretive implicit scheme bounded by the successor-variant rate",
            run: accretive_rate,
        },
        Scenario {
            name: "abstract-conditions",
            description: "the six gradient-framework conditions pass and single sabotages are detected",
            run: abstract_conditions,
        },
    ]
}

pub fn find(name: &str) -> Option<Scenario> {
    registry().into_iter().find(|s| s.name == name)
}

fn harmonic_alpha() -> Seq<Float> {
    Seq::from_fn(|n| 1.0 / (n as f64 + 1.0))
}

fn exact_harmonic() -> Seq<Exact> {
    Seq::from_fn(|n| Exact::one() / rat_u64(n + 1))
}

// ---------------------------------------------------------------- sine-rate

fn sine_rate(mut params: Params) -> Result<Report> {
    let eps_grid = params.ratio_list("eps", &["1/10"])?;
    let tail_window = params.u64("tail_window", 10_000)?;
    let max_steps = params.u64("max_steps", 10_000_000)?;
    params.finish()?;

    let mut report = Report::new("sine-rate");
    report.param("tail_window", tail_window);

    let mut ends = Vec::new();
    for eps in &eps_grid {
        if !eps.is_positive() || eps > &Exact::one() {
            bail!("sine-rate needs eps in (0, 1], got {}", eps.render());
        }
        let bound = wc_rate_sine(eps);
        let Some(b) = nat_to_u64(&bound).filter(|b| b + tail_window <= max_steps) else {
            bail!("bound for eps = {} exceeds max_steps", eps.render());
        };
        report.param("eps", eps.render());
        report.result(&format!("bound[eps={}]", eps.render()), &bound);
        ends.push((eps.clone(), b));
    }
    let horizon = ends.iter().map(|(_, b)| b + tail_window).max().unwrap_or(0);
    let xs = recineq::descent::sine_trajectory(1.0, horizon);
    for (eps, b) in ends {
        let eps_f = <f64 as Value>::from_ratio(&eps);
        let violations = (b..=b + tail_window)
            .filter(|&n| xs[n as usize].abs() > eps_f)
            .count();
        report.result(&format!("violations[eps={}]", eps.render()), violations);
        report.result(
            &format!("x_at_bound[eps={}]", eps.render()),
            format!("{:?}", xs[b as usize]),
        );
        if violations > 0 {
            report.fail(format!(
                "{violations} points above eps = {} in the certified window",
                eps.render()
            ));
        }
    }
    Ok(report)
}

// -------------------------------------------------------- subgradient-meta

/// The fixed l1-box-5 setup: dimension 5, unit box, harmonic steps, zero
/// slack, declared constants (rho, mu, L, K) = (3, 1, 2, 5).
pub fn l1_box_5_setup() -> (
    recineq::descent::ConvexProblem,
    Seq<Float>,
    GradientConstants,
) {
    let prob = l1_box_problem(5, 1.0, 3.0);
    let alpha = harmonic_alpha();
    let consts = projective_constants(&rat(3, 1), &rat(1, 1), &rat(2, 1), &rat(5, 1));
    (prob, alpha, consts)
}

pub fn run_l1_box_5(horizon: u64) -> Trajectory {
    let (prob, alpha, _) = l1_box_5_setup();
    run_projected_subgradient(&prob, &alpha, &Seq::zero(), 1.0, &[1.0; 5], horizon)
        .expect("the l1 box run cannot fail")
}

fn subgradient_meta(mut params: Params) -> Result<Report> {
    let eps_grid = params.ratio_list("eps", &["1", "2"])?;
    let gs = params.g_list("g", &["const:0", "linear:0"])?;
    let scan_cap = params.u64("scan_cap", 100_000)?;
    let star_horizon = params.u64("star_horizon", 5_000)?;
    let csv = params.bool("csv", false)?;
    params.finish()?;

    let mut report = Report::new("subgradient-meta");
    report.param("scan_cap", scan_cap);
    let (prob, alpha, consts) = l1_box_5_setup();
    report.result("e", consts.e.render());
    report.result("theta", consts.theta.render());

    let traj = run_l1_box_5(2 * scan_cap + 8);
    let f_seq = traj.f_seq();
    let r = DivergenceRate::harmonic();
    for eps in &eps_grid {
        for g_spec in &gs {
            let g = g_spec.to_counterexample();
            let bound = gradient_meta_bound(&consts.e, &consts.theta, &r, eps, &g);
            let label = format!("eps={},g={}", eps.render(), g_spec);
            report.result(&format!("bound[{label}]"), &bound);
            match find_metastable_witness(&f_seq, &prob.f_star, eps, &g, &bound, scan_cap) {
                WitnessResult::Found { n } => {
                    report.result(&format!("witness[{label}]"), n);
                    if Nat::from(n) > bound {
                        report.fail(format!("witness {n} above the bound for {label}"));
                    }
                }
                WitnessResult::NotFound { scanned_to } => {
                    report.fail(format!(
                        "no witness for {label} within scan cap {scanned_to}"
                    ));
                }
            }
        }
    }

    // the induced instance of the recursive inequality along the trajectory
    let data = ConditionData::projective(&alpha, 3.0, 1.0);
    let inst = star_instance_of_trajectory(&traj, &prob, &consts, &data);
    let mut star = star_check(
        &inst,
        star_horizon.min(traj.horizon() - 1),
        &DEFAULT_FLOAT_TOL,
    );
    star.id = "star-emergence".into();
    report.certificate(star);

    if csv {
        let head = 5_000.min(traj.steps.len());
        let mut short = traj.clone();
        short.steps.truncate(head);
        report.csv("trajectory", short.to_csv());
    }
    Ok(report)
}

// -------------------------------------------------------- block-invariants

/// All bit-exact invariants of a padded construction; returns violations.
pub fn verify_block_invariants(bc: &BlockConstruction) -> Vec<String> {
    let mut bad = Vec::new();
    for (n, w) in bc.starts.windows(2).enumerate() {
        if w[1] <= w[0] {
            bad.push(format!("starts not strictly increasing at block {n}"));
        }
        if w[0] < n as u64 {
            bad.push(format!("l({n}) = {} < {n}", w[0]));
        }
    }
    for (n, &start) in bc.starts.iter().enumerate() {
        if start <= bc.horizon && bc.beta[start as usize] != bc.s.at(n as u64) {
            bad.push(format!("beta(l({n})) != s({n})"));
        }
    }
    for k in 0..bc.horizon as usize {
        let gap = (&bc.beta[k] - &bc.beta[k + 1]).abs();
        let cap = &bc.theta * bc.alpha.at(k as u64);
        if gap > cap {
            bad.push(format!("|beta({k}) - beta({})| exceeds theta alpha", k + 1));
            break;
        }
    }
    // block-range bound: beta stays between the endpoints' s values
    let t = bc.covered_blocks() as usize;
    for n in 0..t {
        let lo_s = bc.s.at(n as u64);
        let hi_s = bc.s.at(n as u64 + 1);
        let (lo, hi) = if lo_s <= hi_s {
            (lo_s, hi_s)
        } else {
            (hi_s, lo_s)
        };
        let end = bc.starts[n + 1].min(bc.horizon + 1);
        for k in bc.starts[n]..end {
            let b = &bc.beta[k as usize];
            if b < &lo || b > &hi {
                bad.push(format!("beta({k}) outside its block's s-range"));
                break;
            }
        }
    }
    // exact summability bound over covering blocks
    let total: Exact = (0..=bc.horizon)
        .map(|i| bc.alpha.at(i) * bc.beta[i as usize].clone())
        .sum();
    let rhs = bc.summability_bound();
    if total > rhs {
        bad.push(format!(
            "sum alpha beta = {} exceeds the summability bound {}",
            total.render(),
            rhs.render()
        ));
    }
    bad
}

/// Checks the majorant invariants; returns violations.
pub fn verify_block_mu(bc: &BlockConstruction, mu: &[Exact], horizon: u64) -> Vec<String> {
    let mut bad = Vec::new();
    for n in 0..=horizon as usize {
        if mu[n].is_negative() || mu[n + 1].is_negative() {
            bad.push(format!("mu({n}) negative"));
            break;
        }
        let rhs = &mu[n] - bc.alpha.at(n as u64) * bc.beta[n].clone();
        if mu[n + 1] > rhs {
            bad.push(format!("mu({}) > mu({n}) - alpha beta", n + 1));
            break;
        }
    }
    bad
}

/// One seeded trial: build, pad, check, and run both majorant branches.
pub fn block_trial(rng: &mut SynthRng, horizon: u64) -> Vec<String> {
    let (s, alpha, theta) = random_block_inputs(rng);
    let bc = match block_padding(&s, &alpha, &theta, horizon, DEFAULT_SEARCH_CAP) {
        Ok(bc) => bc,
        Err(e) => return vec![format!("padding failed: {e}")],
    };
    let mut bad = verify_block_invariants(&bc);
    let total: Exact = (0..=horizon)
        .map(|i| bc.alpha.at(i) * bc.beta[i as usize].clone())
        .sum();
    // both majorant branches: nu = 0, and nu decreasing to a limit
    for (name, nu) in [
        ("nu-zero", Seq::zero()),
        ("nu-decreasing", exact_harmonic()),
    ] {
        match block_mu(&bc, &total, &nu, horizon) {
            Ok(mu) => {
                for v in verify_block_mu(&bc, &mu, horizon) {
                    bad.push(format!("{name}: {v}"));
                }
            }
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    bad
}

fn block_invariants(mut params: Params) -> Result<Report> {
    let trials = params.u64("trials", 10)?;
    let horizon = params.u64("horizon", 2_000)?;
    let seed = params.u64("seed", 1)?;
    params.finish()?;

    let mut report = Report::new("block-invariants");
    report.param("trials", trials);
    report.param("horizon", horizon);
    report.param("seed", seed);
    let mut rng = SynthRng::seed_from_u64(seed);
    let mut failures = 0u64;
    for trial in 0..trials {
        let bad = block_trial(&mut rng, horizon);
        if !bad.is_empty() {
            failures += 1;
            report.fail(format!("trial {trial}: {}", bad.join("; ")));
        }
    }
    report.result("failures", failures);
    Ok(report)
}

// ------------------------------------------------------------ specker-dump

fn specker_dump(mut params: Params) -> Result<Report> {
    let count = params.u64("count", 500)?;
    params.finish()?;

    let mut report = Report::new("specker-dump");
    report.param("count", count);
    report.param("encoding", recineq::pathology::ENCODING_VERSION);
    let sp = harmonic_specker();
    let mut csv = String::from("n,s,witness\n");
    let mut nonzero = 0u64;
    let mut bad = 0u64;
    for n in 0..count {
        let value = sp.value(n);
        let witness = sp.witness(n);
        csv.push_str(&format!(
            "{n},{},{}\n",
            value.render(),
            witness.map_or(-1i64, |m| m as i64)
        ));
        match witness {
            Some(m) => {
                nonzero += 1;
                let consistent = recineq::pathology::halts_in(m, n).halted_at() == Some(n)
                    && value == Exact::one() / rat_u64(m + 1)
                    && (0..m).all(|e| recineq::pathology::halts_in(e, n).halted_at() != Some(n));
                if !consistent {
                    bad += 1;
                }
            }
            None => {
                if !value.is_zero() {
                    bad += 1;
                }
            }
        }
        // budget extension changes nothing
        if n % 97 == 0 && sp.value_with_budget(n, 2 * n + 50) != value {
            bad += 1;
        }
    }
    report.result("nonzero", nonzero);
    report.result("inconsistencies", bad);
    if bad > 0 {
        report.fail(format!("{bad} inconsistent rows"));
    }
    report.csv("rows", csv);
    Ok(report)
}

// ------------------------------------------------------- series-meta-oracle

/// Runs `trials` randomized oracle checks; returns (failures, trials).
pub fn series_meta_trials(trials: u64, seed: u64) -> (u64, u64) {
    let mut rng = SynthRng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let b = rat(rng.gen_range(1..8), rng.gen_range(1..4));
        let vals = random_summable(&mut rng, &b, 60);
        let eps = rat(rng.gen_range(1..5), rng.gen_range(1..9));
        let g = random_g(&mut rng, 50).to_counterexample();
        let bound = series_meta_rate(&b, &eps, &g);
        let seq: Seq<Exact> =
            Seq::from_fn(move |n| vals.get(n as usize).cloned().unwrap_or_else(Exact::zero));
        let mut sums = CumSum::new(seq);
        let witness = (0u64..)
            .find(|&n| {
                let end = n + g.at_small(n).expect("family g fits");
                sums.range(n, end) <= eps
            })
            .expect("finitely supported sequences always admit a witness");
        if Nat::from(witness) > bound {
            failures += 1;
        }
    }
    (failures, trials)
}

fn series_meta_oracle(mut params: Params) -> Result<Report> {
    let trials = params.u64("trials", 1_000)?;
    let seed = params.u64("seed", 1)?;
    params.finish()?;

    let mut report = Report::new("series-meta-oracle");
    report.param("trials", trials);
    report.param("seed", seed);
    let (failures, ran) = series_meta_trials(trials, seed);
    report.result("trials_run", ran);
    report.result("failures", failures);
    if failures > 0 {
        report.fail(format!("{failures} witnesses above the extracted bound"));
    }
    Ok(report)
}

// --------------------------------------------------------- counterexamples

fn counterexample_a(mut params: Params) -> Result<Report> {
    let horizon = params.u64("horizon", 2_000)?;
    let eps_grid = params.ratio_list("eps", &["1", "1/2", "1/4"])?;
    params.finish()?;

    let mut report = Report::new("counterexample-a");
    report.param("horizon", horizon);
    let inst = case2_counterexample(SpeckerVariant::A, exact_harmonic())?;
    let cert = star_check(&inst, horizon, &Exact::zero());
    report.certificate(cert);
    // the identity modulus on the horizon: beta_n <= eps forces mu_n <= eps
    let mut violations = 0u64;
    for eps in &eps_grid {
        for n in 0..=horizon {
            if inst.beta.at(n) <= *eps && inst.mu.at(n) > *eps {
                violations += 1;
            }
        }
    }
    report.result("modulus_violations", violations);
    if violations > 0 {
        report.fail("identity modulus violated");
    }
    Ok(report)
}

fn counterexample_b(mut params: Params) -> Result<Report> {
    let horizon = params.u64("horizon", 2_000)?;
    let eps_grid = params.ratio_list("eps", &["1", "1/2", "1/5"])?;
    params.finish()?;

    let mut report = Report::new("counterexample-b");
    report.param("horizon", horizon);
    let inst = case2_counterexample(SpeckerVariant::B, exact_harmonic())?;
    let cert = star_check(&inst, horizon, &Exact::zero());
    report.certificate(cert);
    // gamma_n / alpha_n = 2/(n+1) converges with rate ceil(2/eps)
    let ratio = {
        let gamma = inst.gamma.clone();
        let alpha = inst.alpha.clone();
        Seq::from_fn(move |n| gamma.at(n) / alpha.at(n))
    };
    let phi = ConvergenceRate::new(|eps| ceil_nat(&(rat(2, 1) / eps)));
    let mut cert = check_convergence_rate(&ratio, &Exact::zero(), &phi, &eps_grid, horizon);
    cert.id = "gamma-ratio-rate".into();
    report.certificate(cert);
    Ok(report)
}

// ----------------------------------------------------------- accretive-rate

fn accretive_rate(mut params: Params) -> Result<Report> {
    let eps_grid = params.ratio_list("eps", &["1", "1/2", "1/4", "1/8"])?;
    let window = params.u64("window", 1_000)?;
    let solver_tol = params.f64("solver_tol", 1e-14)?;
    let float_tol = params.f64("float_tol", 1e-9)?;
    params.finish()?;

    let mut report = Report::new("accretive-rate");
    report.param("window", window);
    let phi_acc = PowerLaw::new(rat(1, 1), 2);
    let omega = Modulus::new(|e| e * e / rat(2, 1));
    let r = DivergenceRate::constant(rat(1, 1));
    let mut bounds = Vec::new();
    for eps in &eps_grid {
        let bound = case2b_rate(&r, &ConvergenceRate::zero(), &omega, &rat(1, 1), eps);
        report.result(&format!("bound[eps={}]", eps.render()), &bound);
        let b = nat_to_u64(&bound).expect("desk-scale bound");
        bounds.push((eps.clone(), b));
    }
    let horizon = bounds.iter().map(|(_, b)| b + window).max().unwrap_or(0);
    let xs = run_accretive_implicit(&phi_acc, &Seq::constant(1.0), 1.0, horizon, solver_tol)?;
    for (eps, b) in bounds {
        let eps_f = <f64 as Value>::from_ratio(&eps) + float_tol;
        let violations = (b..=b + window)
            .filter(|&n| xs[n as usize].abs() > eps_f)
            .count();
        report.result(&format!("violations[eps={}]", eps.render()), violations);
        if violations > 0 {
            report.fail(format!(
                "trajectory above eps = {} past its bound",
                eps.render()
            ));
        }
    }
    Ok(report)
}

// ------------------------------------------------------ abstract-conditions

/// The quadratic demo: plain gradient steps on `|x|^2/2` from (1, 1) with
/// `alpha_n = 1/(n+2)` and constants `(a, p, theta) = (1, 3/2, 9/4)`,
/// `b = d = 0`, `c_n = (3/2) alpha_n`.
pub fn quadratic_setup() -> (
    Trajectory,
    recineq::descent::ConvexProblem,
    GradientConstants,
    ConditionData,
    Vec<Vec<f64>>,
) {
    let prob = quadratic_problem(2, 1.5);
    let alpha: Seq<Float> = Seq::from_fn(|n| 1.0 / (n as f64 + 2.0));
    let traj = run_plain_gradient(&prob, &alpha, &[1.0, 1.0], 400).expect("finite run");
    let consts = recineq::descent::abstract_constants(
        rat(1, 1),
        rat(3, 2),
        rat(9, 4),
        rat(0, 1),
        rat(9, 4),
        rat(0, 1),
        rat(2, 1),
    );
    let data = ConditionData {
        b: Seq::zero(),
        c: {
            let alpha = alpha.clone();
            Seq::from_fn(move |n| 1.5 * alpha.at(n))
        },
        d: Seq::zero(),
        alpha,
    };
    let mut ys = vec![prob.x_star.clone(), vec![1.0, 1.0], vec![-0.5, 2.0]];
    for k in [0usize, 1, 5, 50, 200] {
        ys.push(traj.points[k].clone());
    }
    (traj, prob, consts, data, ys)
}

/// Applies the six single-condition sabotages to the quadratic setup and
/// reports, per condition name, whether the checker flagged exactly that
/// premise.
pub fn sabotage_outcomes() -> Vec<(&'static str, bool)> {
    let (traj, prob, consts, data, ys) = quadratic_setup();
    let tol = DEFAULT_FLOAT_TOL;
    let detected = |cert: &Certificate, name: &str| cert.premise_failed(name);
    let mut out = Vec::new();

    let mut bad_prob = prob.clone();
    bad_prob.x_star = vec![0.5, 0.5];
    let cert = check_abstract_conditions(&traj, &bad_prob, &consts, &data, &ys, 400, tol);
    out.push(("i-minimizer", detected(&cert, "i-minimizer")));

    let mut bad_traj = traj.clone();
    for s in &mut bad_traj.steps {
        for v in &mut s.u {
            *v = -*v;
        }
    }
    let cert = check_abstract_conditions(&bad_traj, &prob, &consts, &data, &ys, 400, tol);
    out.push(("ii-gradient", detected(&cert, "ii-gradient")));

    let mut bad_data = data.clone();
    bad_data.c = {
        let c = data.c.clone();
        Seq::from_fn(move |n| 0.5 * c.at(n))
    };
    let cert = check_abstract_conditions(&traj, &prob, &consts, &bad_data, &ys, 400, tol);
    out.push(("iii-descent-step", detected(&cert, "iii-descent-step")));

    let mut bad_consts = consts.clone();
    bad_consts.a = rat(1, 2);
    let cert = check_abstract_conditions(&traj, &prob, &bad_consts, &data, &ys, 400, tol);
    out.push(("iv-descent-inner", detected(&cert, "iv-descent-inner")));

    let mut bad_consts = consts.clone();
    bad_consts.p = rat(3, 4);
    let cert = check_abstract_conditions(&traj, &prob, &bad_consts, &data, &ys, 400, tol);
    out.push(("v-gradient-bound", detected(&cert, "v-gradient-bound")));

    let mut bad_consts = consts.clone();
    bad_consts.theta = rat(9, 8);
    let cert = check_abstract_conditions(&traj, &prob, &bad_consts, &data, &ys, 400, tol);
    out.push(("vi-coefficients", detected(&cert, "vi-coefficients")));
    out
}

fn abstract_conditions(mut params: Params) -> Result<Report> {
    let l1_horizon = params.u64("l1_horizon", 3_000)?;
    params.finish()?;

    let mut report = Report::new("abstract-conditions");
    // (a) the quadratic instance
    let (traj, prob, consts, data, ys) = quadratic_setup();
    let mut cert =
        check_abstract_conditions(&traj, &prob, &consts, &data, &ys, 400, DEFAULT_FLOAT_TOL);
    cert.id = "quadratic-2".into();
    report.certificate(cert);

    // (b) the l1 trajectory with the projective constants
    let (prob, alpha, consts) = l1_box_5_setup();
    let traj = run_l1_box_5(l1_horizon);
    let data = ConditionData::projective(&alpha, 3.0, 1.0);
    let mut ys = vec![prob.x_star.clone(), vec![1.0; 5], vec![-1.0; 5]];
    for k in [0u64, 1, 10, 100, 1000] {
        ys.push(traj.points[k.min(l1_horizon) as usize].clone());
    }
    let mut cert = check_abstract_conditions(
        &traj,
        &prob,
        &consts,
        &data,
        &ys,
        l1_horizon - 1,
        DEFAULT_FLOAT_TOL,
    );
    cert.id = "l1-box-5".into();
    report.certificate(cert);

    // sabotage detection, one position at a time
    for (name, detected) in sabotage_outcomes() {
        report.result(
            &format!("sabotage[{name}]"),
            if detected { "detected" } else { "missed" },
        );
        if !detected {
            report.fail(format!("sabotage of {name} was not detected"));
        }
    }
    Ok(report)
}

// --------------------------------------------------------------- utilities

/// Randomized conforming and sabotaged window-certification trials (shared
/// with the acceptance suite). Returns human-readable failures.
pub fn window_certify_trials(trials: u64, seed: u64) -> Vec<String> {
    let mut rng = SynthRng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for trial in 0..trials {
        let w = random_window_instance(&mut rng);
        match case1_window_certify(&w.alpha, &w.beta, &w.r, &w.theta, w.n1, 0, &w.eps, &w.g) {
            Ok(cert) => match cert.verdict {
                Verdict::Certified => {}
                v => bad.push(format!("trial {trial}: conforming instance got {v}")),
            },
            Err(e) => bad.push(format!("trial {trial}: {e}")),
        }
        let s = sabotage_window_instance(&w);
        match case1_window_certify(&s.alpha, &s.beta, &s.r, &s.theta, s.n1, 0, &s.eps, &s.g) {
            Ok(cert) => match cert.verdict {
                Verdict::PremiseFailed => {}
                v => bad.push(format!("trial {trial}: sabotaged instance got {v}")),
            },
            Err(e) => bad.push(format!("trial {trial}: sabotage check {e}")),
        }
    }
    bad
}
