//! Acceptance suite: every criterion below runs at its stated size and
//! tolerance and reports one pass/fail line (the test outcome).

use std::time::Instant;

use num_traits::{One, Zero};
use rand::SeedableRng;

use recineq::descent::{
    check_abstract_conditions, gradient_meta_bound, run_accretive_implicit, sine_trajectory,
    wc_rate_sine, ConditionData, PowerLaw,
};
use recineq::pathology::{case2_counterexample, halts_in, harmonic_specker, SpeckerVariant};
use recineq::synth::SynthRng;
use recineq::{
    case2_rate, case2b_rate, ceil_nat, check_convergence_rate, find_metastable_witness, nat_to_u64,
    rat, rat_u64, star_check, ConvergenceRate, DivergenceRate, Exact, GSpec, Modulus, Nat, Seq,
    Value, Verdict, WitnessResult, DEFAULT_FLOAT_TOL,
};
use recineq_cli::config::Config;
use recineq_cli::scenarios;

fn exact_harmonic() -> Seq<Exact> {
    Seq::from_fn(|n| Exact::one() / rat_u64(n + 1))
}

/// Criterion 1: the closed-form sine rate is exactly 256000 at eps = 1/10,
/// and the double-precision trajectory honors the certified window
/// [256000, 266000] with zero violations, in under a second.
#[test]
fn criterion_01_sine_rate() {
    let start = Instant::now();
    assert_eq!(wc_rate_sine(&rat(1, 10)), Nat::from(256000u32));
    let xs = sine_trajectory(1.0, 266_000);
    let violations = (256_000..=266_000)
        .filter(|&n| xs[n as usize].abs() > 0.1)
        .count();
    assert_eq!(violations, 0);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1 (sine rate): PASS in {elapsed:?}");
}

/// Criterion 2: on l1-box-5 with (rho, mu, L, K) = (3, 1, 2, 5), hence
/// e = 49/2 and theta = 4 exactly, witnesses exist within scan cap 10^5 for
/// eps in {1, 2} x g in {0, n} and sit below the exact big-integer bounds,
/// in under ten seconds.
#[test]
fn criterion_02_subgradient_metastability() {
    let start = Instant::now();
    let (prob, _, consts) = scenarios::l1_box_5_setup();
    assert_eq!(consts.e, rat(49, 2));
    assert_eq!(consts.theta, rat(4, 1));
    let scan_cap = 100_000u64;
    let traj = scenarios::run_l1_box_5(2 * scan_cap + 8);
    let f_seq = traj.f_seq();
    let r = DivergenceRate::harmonic();
    let ten_twenty = Nat::from(10u32).pow(20);
    let mut some_bound_exceeds_1e20 = false;
    for eps in [rat(1, 1), rat(2, 1)] {
        for g_spec in [GSpec::Constant(0), GSpec::Linear(0)] {
            let g = g_spec.to_counterexample();
            let bound = gradient_meta_bound(&consts.e, &consts.theta, &r, &eps, &g);
            some_bound_exceeds_1e20 |= bound > ten_twenty;
            match find_metastable_witness(&f_seq, &prob.f_star, &eps, &g, &bound, scan_cap) {
                WitnessResult::Found { n } => {
                    assert!(
                        Nat::from(n) <= bound,
                        "witness {n} above bound for eps={}, g={g_spec}",
                        eps.render()
                    );
                }
                WitnessResult::NotFound { scanned_to } => {
                    panic!(
                        "no witness within {scanned_to} for eps={}, g={g_spec}",
                        eps.render()
                    )
                }
            }
        }
    }
    assert!(
        some_bound_exceeds_1e20,
        "the extracted bounds are expected to overflow 64-bit ranges"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("criterion 2 (subgradient metastability): PASS in {elapsed:?}");
}

/// Criterion 3: 1000 randomized exact-rational nonnegative sequences with
/// total at most b, against counterexample functions from the config
/// family: the brute-force scan always finds a window witness at or below
/// the extracted rate. Zero tolerance, zero failures.
#[test]
fn criterion_03_series_metastability_oracle() {
    let (failures, trials) = scenarios::series_meta_trials(1000, 0xA11CE);
    assert_eq!(trials, 1000);
    assert_eq!(failures, 0);
    println!("criterion 3 (series metastability oracle): PASS over {trials} trials");
}

/// Criterion 4: 200 randomized instances with exact stepwise regularity
/// certify and their certified windows genuinely satisfy the conclusion
/// (zero soundness alarms); 200 sabotaged instances all come back
/// premise-failed, never a false certificate.
#[test]
fn criterion_04_window_theorem() {
    let bad = scenarios::window_certify_trials(200, 0xB10C);
    assert!(
        bad.is_empty(),
        "{} deviations, first: {}",
        bad.len(),
        bad[0]
    );
    println!("criterion 4 (window certification): PASS over 200 + 200 instances");
}

/// Criterion 5: 100 randomized (s, alpha, theta) at horizon 10^4: block
/// starts strictly increase with l(n) >= n, beta interpolates s exactly,
/// consecutive gaps respect theta*alpha bit-exactly, both majorant branches
/// satisfy their inequalities bit-exactly, and the summability bound holds
/// exactly over the covering blocks.
#[test]
fn criterion_05_block_construction() {
    let mut rng = SynthRng::seed_from_u64(0xB10CC);
    for trial in 0..100 {
        let bad = scenarios::block_trial(&mut rng, 10_000);
        assert!(bad.is_empty(), "trial {trial}: {}", bad.join("; "));
    }
    println!("criterion 5 (block construction): PASS over 100 instances at horizon 10^4");
}

/// Criterion 6: under encoding v1, for all n <= 2000 the Specker value is
/// either 0 or a_m for some m <= n; every nonzero value is confirmed by
/// independent re-simulation (exact halting step, minimal witness); and the
/// output is invariant under simulation-budget extension.
#[test]
fn criterion_06_specker_structure() {
    let n_max = 2000u64;
    let sp = harmonic_specker();
    // independent oracle: one fresh simulation per machine at full budget
    let halting_step: Vec<Option<u64>> = (0..=n_max)
        .map(|m| halts_in(m, n_max).halted_at())
        .collect();
    let mut nonzero = 0u64;
    for n in 0..=n_max {
        let value = sp.value(n);
        match sp.witness(n) {
            None => {
                assert!(value.is_zero(), "n={n}");
                // the oracle agrees nobody halts at exactly n
                assert!(
                    (0..=n).all(|m| halting_step[m as usize] != Some(n)),
                    "n={n}: a witness exists but was not reported"
                );
            }
            Some(m) => {
                nonzero += 1;
                assert!(m <= n);
                assert_eq!(value, Exact::one() / rat_u64(m + 1), "n={n}");
                assert_eq!(halts_in(m, n).halted_at(), Some(n), "n={n}, m={m}");
                for earlier in 0..m {
                    assert_ne!(
                        halting_step[earlier as usize],
                        Some(n),
                        "n={n}: {earlier} beats the reported witness {m}"
                    );
                }
            }
        }
    }
    assert!(nonzero > 0, "the enumeration never halts on itself?");
    // budget extension is invisible, also from a cold cache
    let fresh = harmonic_specker();
    for n in (0..=n_max).step_by(41) {
        assert_eq!(sp.value(n), fresh.value_with_budget(n, 2 * n + 64));
    }
    println!("criterion 6 (Specker structure): PASS up to n = 2000 ({nonzero} nonzero values)");
}

/// Criterion 7: both counterexample instances pass the exact instance check
/// on horizon 2000; variant (a) satisfies the identity modulus on the
/// horizon; variant (b)'s gamma/alpha passes the convergence-rate check
/// with phi(eps) = ceil(2/eps).
#[test]
fn criterion_07_case2_counterexamples() {
    let horizon = 2000u64;
    let a = case2_counterexample(SpeckerVariant::A, exact_harmonic()).unwrap();
    let cert = star_check(&a, horizon, &Exact::zero());
    assert!(cert.passed(), "{}", cert.render());
    for eps in [rat(1, 1), rat(1, 2), rat(1, 4), rat(1, 100)] {
        for n in 0..=horizon {
            if a.beta.at(n) <= eps {
                assert!(a.mu.at(n) <= eps, "modulus violated at n={n}");
            }
        }
    }

    let b = case2_counterexample(SpeckerVariant::B, exact_harmonic()).unwrap();
    let cert = star_check(&b, horizon, &Exact::zero());
    assert!(cert.passed(), "{}", cert.render());
    let ratio = {
        let gamma = b.gamma.clone();
        let alpha = b.alpha.clone();
        Seq::from_fn(move |n| gamma.at(n) / alpha.at(n))
    };
    let phi = ConvergenceRate::new(|eps| ceil_nat(&(rat(2, 1) / eps)));
    let cert = check_convergence_rate(
        &ratio,
        &Exact::zero(),
        &phi,
        &[rat(1, 1), rat(1, 2), rat(1, 5), rat(2, 300)],
        horizon,
    );
    assert_eq!(cert.verdict, Verdict::Certified, "{}", cert.render());
    println!("criterion 7 (counterexample instances): PASS on horizon 2000");
}

/// Criterion 8: the vanishing-ratio rates hold end-to-end on synthetic
/// instances with known (r, phi, omega, c, alpha): mu_n <= eps for every n
/// in [Phi(eps), Phi(eps) + 10^3] over a 4-point grid, exactly where the
/// data is rational and within 10^-9 where trajectories are float.
#[test]
fn criterion_08_case2_rates_end_to_end() {
    let window = 1000u64;
    let r = DivergenceRate::constant(rat(1, 1));
    let phi0 = ConvergenceRate::zero();

    // exact: mu_n = 1/(n+1), beta the telescoping difference,
    // omega(eps) = eps^2/(1+eps)
    let mu = exact_harmonic();
    let omega = Modulus::new(|e| e * e / (Exact::one() + e));
    for eps in [rat(1, 1), rat(1, 2), rat(1, 4), rat(1, 8)] {
        let bound = case2_rate(&r, &phi0, &omega, &rat(1, 1), &rat(1, 1), &eps);
        let b = nat_to_u64(&bound).unwrap();
        for n in b..=b + window {
            assert!(mu.at(n) <= eps, "harmonic: n={n}, eps={}", eps.render());
        }
    }

    // exact: mu_n = (9/10)^n, beta_n = mu_n/10, omega(eps) = eps/10
    let omega = Modulus::new(|e| e / rat(10, 1));
    for eps in [rat(1, 1), rat(1, 2), rat(1, 4), rat(1, 8)] {
        let bound = case2_rate(&r, &phi0, &omega, &rat(1, 1), &rat(1, 1), &eps);
        let b = nat_to_u64(&bound).unwrap();
        let mut power = rat(9, 10).pow(b as i32);
        for n in b..=b + window {
            assert!(power <= eps, "geometric: n={n}, eps={}", eps.render());
            power *= rat(9, 10);
        }
    }

    // float: the sine trajectory against its cubic-modulus rate
    let omega = Modulus::new(|e| e * e * e / rat(16, 1));
    let grid = [rat(1, 1), rat(1, 2), rat(1, 3), rat(1, 4)];
    let bounds: Vec<u64> = grid
        .iter()
        .map(|eps| {
            let bound = case2_rate(&r, &phi0, &omega, &rat(1, 1), &rat(1, 1), eps);
            assert_eq!(bound, wc_rate_sine(eps));
            nat_to_u64(&bound).unwrap()
        })
        .collect();
    let horizon = bounds.iter().max().unwrap() + window;
    let xs = sine_trajectory(1.0, horizon);
    for (eps, b) in grid.iter().zip(&bounds) {
        let cap = <f64 as Value>::from_ratio(eps) + 1e-9;
        for n in *b..=*b + window {
            assert!(xs[n as usize].abs() <= cap, "sine: n={n}");
        }
    }

    // float: the accretive scalar demo against the successor-variant rate
    let omega = Modulus::new(|e| e * e / rat(2, 1));
    let grid = [rat(1, 1), rat(1, 2), rat(1, 4), rat(1, 8)];
    let bounds: Vec<u64> = grid
        .iter()
        .map(|eps| nat_to_u64(&case2b_rate(&r, &phi0, &omega, &rat(1, 1), eps)).unwrap())
        .collect();
    let horizon = bounds.iter().max().unwrap() + window;
    let xs = run_accretive_implicit(
        &PowerLaw::new(rat(1, 1), 2),
        &Seq::constant(1.0),
        1.0,
        horizon,
        1e-14,
    )
    .unwrap();
    for (eps, b) in grid.iter().zip(&bounds) {
        let cap = <f64 as Value>::from_ratio(eps) + 1e-9;
        for n in *b..=*b + window {
            assert!(xs[n as usize].abs() <= cap, "accretive: n={n}");
        }
    }
    println!("criterion 8 (vanishing-ratio rates end-to-end): PASS on 4 instances");
}

/// Criterion 9: all six abstract gradient conditions pass on the quadratic
/// instance and on the l1-box-5 trajectory with the projective constants;
/// sabotaging any single condition is detected at that position.
#[test]
fn criterion_09_abstract_gradient_conditions() {
    let (traj, prob, consts, data, ys) = scenarios::quadratic_setup();
    let cert = check_abstract_conditions(&traj, &prob, &consts, &data, &ys, 400, DEFAULT_FLOAT_TOL);
    assert_eq!(cert.verdict, Verdict::Certified, "{}", cert.render());

    let (prob, alpha, consts) = scenarios::l1_box_5_setup();
    let traj = scenarios::run_l1_box_5(3000);
    let data = ConditionData::projective(&alpha, 3.0, 1.0);
    let mut ys = vec![prob.x_star.clone(), vec![1.0; 5], vec![-1.0; 5]];
    for k in [0u64, 1, 10, 100, 1000] {
        ys.push(traj.points[k as usize].clone());
    }
    let cert =
        check_abstract_conditions(&traj, &prob, &consts, &data, &ys, 2999, DEFAULT_FLOAT_TOL);
    assert_eq!(cert.verdict, Verdict::Certified, "{}", cert.render());

    for (name, detected) in scenarios::sabotage_outcomes() {
        assert!(detected, "sabotage of {name} went undetected");
    }
    println!("criterion 9 (abstract gradient conditions): PASS with all six sabotages detected");
}

/// Criterion 10: every scenario report is byte-identical across two runs
/// with the same config and seed.
#[test]
fn criterion_10_report_determinism() {
    let toml = r#"
        [sine-rate]
        eps = ["1/4"]
        tail_window = 2000

        [subgradient-meta]
        scan_cap = 20000
        star_horizon = 2000
        csv = true

        [block-invariants]
        trials = 4
        horizon = 1500
        seed = 7

        [specker-dump]
        count = 400

        [series-meta-oracle]
        trials = 300
        seed = 7

        [counterexample-a]
        horizon = 500

        [counterexample-b]
        horizon = 500

        [accretive-rate]
        window = 300

        [abstract-conditions]
        l1_horizon = 1200
    "#;
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("determinism.toml");
    std::fs::write(&cfg_path, toml).unwrap();
    let config = Config::load(Some(&cfg_path)).unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for s in scenarios::registry() {
        let first = recineq_cli::run_and_write(s.name, &config, &out_a).unwrap();
        recineq_cli::run_and_write(s.name, &config, &out_b).unwrap();
        assert!(first.passed(), "{}:\n{}", s.name, first.render());
    }
    // byte-identical output trees, CSV sidecars included
    let mut names: Vec<String> = std::fs::read_dir(&out_a)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert!(names.iter().any(|n| n.ends_with(".csv")));
    assert_eq!(names.len(), scenarios::registry().len() + 2, "{names:?}");
    for name in names {
        let a = std::fs::read(out_a.join(&name)).unwrap();
        let b = std::fs::read(out_b.join(&name)).unwrap();
        assert_eq!(a, b, "{name} differs between runs");
    }
    println!("criterion 10 (report determinism): PASS across all scenarios");
}
