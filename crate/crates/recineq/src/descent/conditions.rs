//! The abstract gradient-descent framework: the six conditions a trajectory
//! must satisfy, the derived constants, and the metastability bound for
//! `f(x_n) -> f(x*)`.

use num_traits::One;

use super::geometry::{dist, dot, norm, sub};
use super::subgradient::{ConvexProblem, Trajectory};
use crate::certify::{Certificate, PremiseReport};
use crate::rates::{Counterexample, DivergenceRate};
use crate::seq::Seq;
use crate::value::{ceil_nat, nat_to_u64, rat, Exact, Float, Nat};

/// Constants of one instantiation of the framework, kept exact so derived
/// bounds never pick up rounding.
#[derive(Debug, Clone)]
pub struct GradientConstants {
    /// Scaling in the descent property (ii of the two descent conditions).
    pub a: Exact,
    /// Norm bound on the gradient surrogates.
    pub p: Exact,
    /// Regularity constant: `p c_n + b_n <= theta alpha_n`.
    pub theta: Exact,
    /// Bound on `sum alpha_i b_i`.
    pub b_total: Exact,
    /// Bound on `sum c_i^2`.
    pub c_total: Exact,
    /// Bound on `sum d_i`.
    pub d_total: Exact,
    /// Bound on `|x_0 - x*|^2`.
    pub k_bound: Exact,
    /// `e = a (c + K)/2 + b + d`, the series bound the metastability rate
    /// consumes.
    pub e: Exact,
}

/// Constants from first principles: `e = a(c + K)/2 + b + d`.
pub fn abstract_constants(
    a: Exact,
    p: Exact,
    theta: Exact,
    b_total: Exact,
    c_total: Exact,
    d_total: Exact,
    k_bound: Exact,
) -> GradientConstants {
    let e = &a * (&c_total + &k_bound) / rat(2, 1) + &b_total + &d_total;
    GradientConstants {
        a,
        p,
        theta,
        b_total,
        c_total,
        d_total,
        k_bound,
        e,
    }
}

/// Constants for the projected subgradient method with oracle norm bound
/// `rho > 1`, slack constant `mu_slack`, `L >= sum alpha_i^2` and
/// `K >= |x_0 - x*|^2`:
/// `e = rho (L + K)/2 + (mu + 2 rho) L` and `theta = rho + mu`, realized by
/// `(a, b, c, d, p) = (rho, mu L, L, 2 rho L, rho)`.
pub fn projective_constants(
    rho: &Exact,
    mu_slack: &Exact,
    l_bound: &Exact,
    k_bound: &Exact,
) -> GradientConstants {
    assert!(*rho > Exact::one(), "the oracle norm bound needs rho > 1");
    GradientConstants {
        a: rho.clone(),
        p: rho.clone(),
        theta: rho + mu_slack,
        b_total: mu_slack * l_bound,
        c_total: l_bound.clone(),
        d_total: rat(2, 1) * rho * l_bound,
        k_bound: k_bound.clone(),
        e: rho * (l_bound + k_bound) / rat(2, 1) + (mu_slack + rat(2, 1) * rho) * l_bound,
    }
}

/// Metastability bound for `f(x_n) <= f(x*) + eps` on a window:
/// `Phi(eps, g) = h~^(ceil(4 theta e / eps^2))(0)` with
/// `h~(n) = r(n + g(n), eps / 2 theta) + 1`, evaluated in exact arithmetic
/// with arbitrary-precision indices.
pub fn gradient_meta_bound(
    e: &Exact,
    theta: &Exact,
    r: &DivergenceRate,
    eps: &Exact,
    g: &Counterexample,
) -> Nat {
    let iters = nat_to_u64(&ceil_nat(&(rat(4, 1) * theta * e / (eps * eps))))
        .expect("iteration count must fit in a machine word to be evaluable");
    let x = eps / (rat(2, 1) * theta);
    let mut n = Nat::from(0u32);
    for _ in 0..iters {
        n = r.at(&(&n + g.at(&n)), &x) + Nat::one();
    }
    n
}

/// Per-step sequences `(b_n, c_n, d_n)` accompanying a trajectory.
#[derive(Clone)]
pub struct ConditionData {
    pub b: Seq<Float>,
    pub c: Seq<Float>,
    pub d: Seq<Float>,
    pub alpha: Seq<Float>,
}

impl ConditionData {
    /// The sequences realizing the projective constants:
    /// `b_n = mu alpha_n`, `c_n = alpha_n`, `d_n = 2 rho alpha_n^2`.
    pub fn projective(alpha: &Seq<Float>, rho: f64, mu_slack: f64) -> ConditionData {
        let b = {
            let alpha = alpha.clone();
            Seq::from_fn(move |n| mu_slack * alpha.at(n))
        };
        let c = alpha.clone();
        let d = {
            let alpha = alpha.clone();
            Seq::from_fn(move |n| 2.0 * rho * alpha.at(n) * alpha.at(n))
        };
        ConditionData {
            b,
            c,
            d,
            alpha: alpha.clone(),
        }
    }
}

/// Verifies the six framework conditions along a trajectory, each within
/// `tol`:
///
/// 1. `f(x*) <= f(x_n)` (x* acts as a minimizer)
/// 2. `f(x_n) - f(y) <= <u_n, x_n - y> + b_n` on the sampled `y` (u acts
///    as a gradient)
/// 3. `|x_{n+1} - x_n| <= c_n` (descent property I)
/// 4. `<alpha_n u_n, x_n - x*> <= a <x_n - x_{n+1}, x_n - x*> + d_n`
///    (descent property II)
/// 5. `|u_n| <= p` (bounded gradients)
/// 6. `p c_n + b_n <= theta alpha_n` (coefficient compatibility)
pub fn check_abstract_conditions(
    traj: &Trajectory,
    prob: &ConvexProblem,
    consts: &GradientConstants,
    data: &ConditionData,
    sample_ys: &[Vec<f64>],
    horizon: u64,
    tol: f64,
) -> Certificate {
    let mut cert = Certificate::new("abstract-gradient-conditions");
    assert!(horizon < traj.points.len() as u64);
    let range = format!("n in [0, {horizon}]");
    let step_range = format!("n in [0, {horizon})");
    let a = <f64 as crate::value::Value>::from_ratio(&consts.a);
    let p = <f64 as crate::value::Value>::from_ratio(&consts.p);
    let theta = <f64 as crate::value::Value>::from_ratio(&consts.theta);
    let f_star = prob.f(&prob.x_star);

    let mut push = |name: &str, range: &str, viol: Option<String>| {
        cert.premises.push(match viol {
            None => PremiseReport::pass(name, range),
            Some(v) => PremiseReport::fail(name, range, v),
        });
    };

    // (i) minimizer
    let viol = (0..=horizon).find_map(|n| {
        let f_n = traj.steps[n as usize].f;
        (f_star > f_n + tol).then(|| format!("f(x*) = {f_star} > f(x_{n}) = {f_n}"))
    });
    push("i-minimizer", &range, viol);

    // (ii) subgradient inequality on the sample set
    let viol = (0..=horizon).find_map(|n| {
        let s = &traj.steps[n as usize];
        let x = &traj.points[n as usize];
        sample_ys.iter().enumerate().find_map(|(j, y)| {
            let lhs = s.f - prob.f(y);
            let rhs = dot(&s.u, &sub(x, y)) + data.b.at(n);
            (lhs > rhs + tol).then(|| format!("n={n}, sample {j}: {lhs} > {rhs}"))
        })
    });
    push("ii-gradient", &range, viol);

    // (iii) step size bounded by c_n
    let viol = (0..horizon).find_map(|n| {
        let step = dist(&traj.points[n as usize + 1], &traj.points[n as usize]);
        let cap = data.c.at(n);
        (step > cap + tol).then(|| format!("n={n}: |x_{{n+1}} - x_n| = {step} > c_n = {cap}"))
    });
    push("iii-descent-step", &step_range, viol);

    // (iv) inner-product descent property
    let viol = (0..horizon).find_map(|n| {
        let x = &traj.points[n as usize];
        let x_next = &traj.points[n as usize + 1];
        let to_min = sub(x, &prob.x_star);
        let s = &traj.steps[n as usize];
        let lhs = s.alpha * dot(&s.u, &to_min);
        let rhs = a * dot(&sub(x, x_next), &to_min) + data.d.at(n);
        (lhs > rhs + tol).then(|| format!("n={n}: {lhs} > {rhs}"))
    });
    push("iv-descent-inner", &step_range, viol);

    // (v) bounded gradients
    let viol = (0..=horizon).find_map(|n| {
        let u_norm = norm(&traj.steps[n as usize].u);
        (u_norm > p + tol).then(|| format!("n={n}: |u_n| = {u_norm} > p = {p}"))
    });
    push("v-gradient-bound", &range, viol);

    // (vi) coefficient compatibility
    let viol = (0..=horizon).find_map(|n| {
        let lhs = p * data.c.at(n) + data.b.at(n);
        let rhs = theta * data.alpha.at(n);
        (lhs > rhs + tol).then(|| format!("n={n}: p c_n + b_n = {lhs} > theta alpha_n = {rhs}"))
    });
    push("vi-coefficients", &range, viol);

    cert.settle_from_premises();
    cert
}

/// The induced instance of the recursive inequality along a trajectory:
/// `mu_n = (a/2)|x_n - x*|^2`, `beta_n = f(x_n) - f*`,
/// `gamma_n = a c_n^2/2 + alpha_n b_n + d_n`.
pub fn star_instance_of_trajectory(
    traj: &Trajectory,
    prob: &ConvexProblem,
    consts: &GradientConstants,
    data: &ConditionData,
) -> crate::ratecalc::StarInstance<Float> {
    let a = <f64 as crate::value::Value>::from_ratio(&consts.a);
    let mu = {
        let d = traj.dist_seq();
        Seq::from_fn(move |n| 0.5 * a * d.at(n) * d.at(n))
    };
    let f_star = prob.f_star;
    let beta = {
        let f = traj.f_seq();
        Seq::from_fn(move |n| f.at(n) - f_star)
    };
    let gamma = {
        let data = data.clone();
        Seq::from_fn(move |n| {
            let c = data.c.at(n);
            0.5 * a * c * c + data.alpha.at(n) * data.b.at(n) + data.d.at(n)
        })
    };
    crate::ratecalc::StarInstance {
        mu,
        alpha: data.alpha.clone(),
        beta,
        gamma,
        consts: crate::ratecalc::StarConstants::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::Verdict;
    use crate::descent::subgradient::{
        l1_box_problem, quadratic_problem, run_plain_gradient, run_projected_subgradient,
    };
    use crate::ratecalc::star_check;
    use crate::rates::GSpec;
    use crate::value::DEFAULT_FLOAT_TOL;

    #[test]
    fn projective_constants_formulas() {
        let c = projective_constants(&rat(3, 1), &rat(1, 1), &rat(2, 1), &rat(5, 1));
        assert_eq!(c.e, rat(49, 2));
        assert_eq!(c.theta, rat(4, 1));
        assert_eq!(c.b_total, rat(2, 1));
        assert_eq!(c.d_total, rat(12, 1));
        // L = 0 degenerates to e = rho K / 2
        let c = projective_constants(&rat(3, 1), &rat(1, 1), &rat(0, 1), &rat(5, 1));
        assert_eq!(c.e, rat(15, 2));
        // doubling K adds rho K / 2
        let base = projective_constants(&rat(3, 1), &rat(1, 1), &rat(2, 1), &rat(5, 1));
        let doubled = projective_constants(&rat(3, 1), &rat(1, 1), &rat(2, 1), &rat(10, 1));
        assert_eq!(doubled.e - base.e, rat(15, 2));
    }

    #[test]
    fn gradient_meta_bound_hand_value() {
        // theta = 4, e = 49/2, eps = 20, g = 0, harmonic rate:
        // ceil(4*4*24.5/400) = 1 iteration, h~(0) = ceil(e^{5/2}) + 1 = 14
        let r = DivergenceRate::harmonic();
        let got = gradient_meta_bound(
            &rat(49, 2),
            &rat(4, 1),
            &r,
            &rat(20, 1),
            &Counterexample::zero(),
        );
        assert_eq!(got, Nat::from(14u32));
    }

    #[test]
    fn gradient_meta_bound_trivial_iteration() {
        // huge eps with the identity rate: one iteration lands on 1
        let got = gradient_meta_bound(
            &rat(1, 1),
            &rat(1, 1),
            &DivergenceRate::identity(),
            &rat(100, 1),
            &Counterexample::zero(),
        );
        assert_eq!(got, Nat::one());
    }

    #[test]
    fn gradient_meta_bound_matches_independent_loop() {
        // theta = 4, e = 49/2, eps = 7, g = 0: 8 iterations of
        // n -> ceil((n+1) e^{7/8}) + 1
        let r = DivergenceRate::harmonic();
        let eps = rat(7, 1);
        let theta = rat(4, 1);
        let e = rat(49, 2);
        let got = gradient_meta_bound(&e, &theta, &r, &eps, &Counterexample::zero());
        let iters = ceil_nat(&(rat(4, 1) * &theta * &e / (&eps * &eps)));
        assert_eq!(iters, Nat::from(8u32));
        let x = &eps / (rat(2, 1) * &theta);
        let mut n = Nat::from(0u32);
        for _ in 0..8 {
            n = r.at(&n, &x) + Nat::one();
        }
        assert_eq!(got, n);
    }

    fn quadratic_setup() -> (
        Trajectory,
        ConvexProblem,
        GradientConstants,
        ConditionData,
        Vec<Vec<f64>>,
    ) {
        // exact gradient descent on |x|^2/2 from (1,1) with alpha_n = 1/(n+2):
        // b_n = d_n = 0, c_n = (3/2) alpha_n, a = 1, p = 3/2, theta = 9/4
        let prob = quadratic_problem(2, 1.5);
        let alpha: Seq<Float> = Seq::from_fn(|n| 1.0 / (n as f64 + 2.0));
        let traj = run_plain_gradient(&prob, &alpha, &[1.0, 1.0], 400).unwrap();
        let consts = abstract_constants(
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
            alpha: alpha.clone(),
        };
        let mut ys = vec![prob.x_star.clone(), vec![1.0, 1.0], vec![-0.5, 2.0]];
        for k in [0usize, 1, 5, 50, 200] {
            ys.push(traj.points[k].clone());
        }
        (traj, prob, consts, data, ys)
    }

    #[test]
    fn quadratic_instance_passes_all_six() {
        let (traj, prob, consts, data, ys) = quadratic_setup();
        let cert =
            check_abstract_conditions(&traj, &prob, &consts, &data, &ys, 400, DEFAULT_FLOAT_TOL);
        assert_eq!(cert.verdict, Verdict::Certified, "{}", cert.render());
    }

    #[test]
    fn sabotage_is_detected_in_each_position() {
        let (traj, prob, consts, data, ys) = quadratic_setup();
        let tol = DEFAULT_FLOAT_TOL;
        let failed = |cert: &Certificate, name: &str| {
            cert.premises
                .iter()
                .any(|p| p.name == name && p.status == crate::certify::CheckStatus::Fail)
        };

        // (i): claim a non-minimizing x*
        let mut bad = prob.clone();
        bad.x_star = vec![0.5, 0.5];
        let cert = check_abstract_conditions(&traj, &bad, &consts, &data, &ys, 400, tol);
        assert!(failed(&cert, "i-minimizer"));

        // (ii): negate the recorded gradients
        let mut bad_traj = traj.clone();
        for s in &mut bad_traj.steps {
            for v in &mut s.u {
                *v = -*v;
            }
        }
        let cert = check_abstract_conditions(&bad_traj, &prob, &consts, &data, &ys, 400, tol);
        assert!(failed(&cert, "ii-gradient"));

        // (iii): halve c_n
        let mut bad_data = data.clone();
        bad_data.c = {
            let c = data.c.clone();
            Seq::from_fn(move |n| 0.5 * c.at(n))
        };
        let cert = check_abstract_conditions(&traj, &prob, &consts, &bad_data, &ys, 400, tol);
        assert!(failed(&cert, "iii-descent-step"));

        // (iv): halve a
        let mut bad_consts = consts.clone();
        bad_consts.a = rat(1, 2);
        let cert = check_abstract_conditions(&traj, &prob, &bad_consts, &data, &ys, 400, tol);
        assert!(failed(&cert, "iv-descent-inner"));

        // (v): halve p
        let mut bad_consts = consts.clone();
        bad_consts.p = rat(3, 4);
        let cert = check_abstract_conditions(&traj, &prob, &bad_consts, &data, &ys, 400, tol);
        assert!(failed(&cert, "v-gradient-bound"));

        // (vi): halve theta
        let mut bad_consts = consts.clone();
        bad_consts.theta = rat(9, 8);
        let cert = check_abstract_conditions(&traj, &prob, &bad_consts, &data, &ys, 400, tol);
        assert!(failed(&cert, "vi-coefficients"));
    }

    #[test]
    fn star_inequality_emerges_from_l1_trajectory() {
        let prob = l1_box_problem(5, 1.0, 3.0);
        let alpha: Seq<Float> = Seq::from_fn(|n| 1.0 / (n as f64 + 1.0));
        let traj =
            run_projected_subgradient(&prob, &alpha, &Seq::zero(), 1.0, &[1.0; 5], 3000).unwrap();
        let consts = projective_constants(&rat(3, 1), &rat(1, 1), &rat(2, 1), &rat(5, 1));
        let data = ConditionData::projective(&alpha, 3.0, 1.0);
        let inst = star_instance_of_trajectory(&traj, &prob, &consts, &data);
        let cert = star_check(&inst, 2999, &DEFAULT_FLOAT_TOL);
        assert!(cert.passed(), "{}", cert.render());
    }

    #[test]
    fn witness_stays_below_gradient_meta_bound() {
        let prob = l1_box_problem(5, 1.0, 3.0);
        let alpha: Seq<Float> = Seq::from_fn(|n| 1.0 / (n as f64 + 1.0));
        let traj =
            run_projected_subgradient(&prob, &alpha, &Seq::zero(), 1.0, &[1.0; 5], 4000).unwrap();
        let f = traj.f_seq();
        let consts = projective_constants(&rat(3, 1), &rat(1, 1), &rat(2, 1), &rat(5, 1));
        let r = DivergenceRate::harmonic();
        let g = GSpec::Constant(3).to_counterexample();
        let eps = rat(2, 1);
        let bound = gradient_meta_bound(&consts.e, &consts.theta, &r, &eps, &g);
        let witness = crate::certify::find_metastable_witness(&f, &0.0, &eps, &g, &bound, 1000);
        let n = witness.found().expect("witness must exist within the cap");
        assert!(Nat::from(n) <= bound);
    }
}
