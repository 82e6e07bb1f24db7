//! Projected approximate-subgradient descent
//! `x_{n+1} = P_C(x_n - (alpha_n / nu_n) u_n)` with
//! `u_n` an `eps_n`-subgradient at `x_n` and `nu_n = max(1, |u_n|)`,
//! halting if the oracle ever returns the zero vector.

use std::sync::Arc;

use super::geometry::{dist, dot, norm, project, FeasibleSet, GeometryError};
use crate::seq::Seq;
use crate::value::Float;

#[derive(Debug, thiserror::Error)]
pub enum DescentError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("non-finite value at step {step}")]
    NonFinite { step: u64 },
    #[error("starting point is not feasible")]
    InfeasibleStart,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type ObjectiveFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type SubgradientFn = Arc<dyn Fn(&[f64], f64) -> Vec<f64> + Send + Sync>;

/// A convex objective with an approximate-subgradient oracle and a known
/// minimizer, plus the declared norm bound `rho > 1` for the oracle output.
#[derive(Clone)]
pub struct ConvexProblem {
    pub name: String,
    pub dim: usize,
    pub objective: ObjectiveFn,
    /// `(x, eps)` to some `u` in the `eps`-subdifferential at `x`.
    pub subgradient: SubgradientFn,
    pub set: FeasibleSet,
    pub x_star: Vec<f64>,
    pub f_star: f64,
    pub rho: f64,
}

impl ConvexProblem {
    pub fn f(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }
}

#[derive(Debug, Clone)]
pub struct StepRecord {
    pub u: Vec<f64>,
    pub alpha: f64,
    pub eps_slack: f64,
    pub f: f64,
    pub dist_to_min: f64,
}

/// Iterates plus per-step records; when the oracle halts the run, the
/// remaining iterates are frozen at the halt point (converged from that
/// index onward) so downstream sequence views stay total.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub points: Vec<Vec<f64>>,
    pub steps: Vec<StepRecord>,
    pub halted_at: Option<u64>,
}

impl Trajectory {
    pub fn horizon(&self) -> u64 {
        self.points.len() as u64 - 1
    }

    /// `n -> f(x_n)` as a sequence (panics past the horizon).
    pub fn f_seq(&self) -> Seq<Float> {
        Seq::from_values(self.steps.iter().map(|s| s.f).collect())
    }

    /// `n -> |x_n - x*|` as a sequence.
    pub fn dist_seq(&self) -> Seq<Float> {
        Seq::from_values(self.steps.iter().map(|s| s.dist_to_min).collect())
    }

    /// CSV rows `n,f,dist,alpha,eps_slack,halt`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,f,dist,alpha,eps_slack,halt\n");
        for (n, s) in self.steps.iter().enumerate() {
            let halted = self.halted_at.is_some_and(|h| h <= n as u64);
            out.push_str(&format!(
                "{n},{:?},{:?},{:?},{:?},{}\n",
                s.f, s.dist_to_min, s.alpha, s.eps_slack, halted as u8
            ));
        }
        out
    }
}

/// Runs the projected subgradient recursion for `horizon` steps.
///
/// `eps_slack(n) <= mu_slack * alpha(n)` is required for every step taken,
/// matching the slack regime the metastability constants assume.
pub fn run_projected_subgradient(
    prob: &ConvexProblem,
    alpha: &Seq<Float>,
    eps_slack: &Seq<Float>,
    mu_slack: f64,
    x0: &[f64],
    horizon: u64,
) -> Result<Trajectory, DescentError> {
    if x0.len() != prob.dim {
        return Err(DescentError::InvalidParameter("x0 dimension".into()));
    }
    if !prob.set.contains(x0, 1e-12) {
        return Err(DescentError::InfeasibleStart);
    }
    let mut points = Vec::with_capacity(horizon as usize + 1);
    let mut steps = Vec::with_capacity(horizon as usize + 1);
    let mut halted_at = None;
    points.push(x0.to_vec());
    let mut x = x0.to_vec();
    for n in 0..=horizon {
        let a = alpha.at(n);
        let eps = eps_slack.at(n);
        // NaN-safe: a non-finite slack must also be rejected
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(eps <= mu_slack * a) {
            return Err(DescentError::InvalidParameter(format!(
                "eps_slack({n}) = {eps} exceeds mu_slack * alpha({n})"
            )));
        }
        let u = if halted_at.is_some() {
            vec![0.0; prob.dim]
        } else {
            (prob.subgradient)(&x, eps)
        };
        let f = prob.f(&x);
        if !f.is_finite() || u.iter().any(|v| !v.is_finite()) {
            return Err(DescentError::NonFinite { step: n });
        }
        steps.push(StepRecord {
            u: u.clone(),
            alpha: a,
            eps_slack: eps,
            f,
            dist_to_min: dist(&x, &prob.x_star),
        });
        if halted_at.is_none() && u.iter().all(|v| *v == 0.0) {
            halted_at = Some(n);
        }
        if n == horizon {
            break;
        }
        if halted_at.is_none() {
            let nu = norm(&u).max(1.0);
            let z: Vec<f64> = x
                .iter()
                .zip(&u)
                .map(|(xi, ui)| xi - (a / nu) * ui)
                .collect();
            x = project(&prob.set, &z)?;
            if x.iter().any(|v| !v.is_finite()) {
                return Err(DescentError::NonFinite { step: n + 1 });
            }
        }
        points.push(x.clone());
    }
    Ok(Trajectory {
        points,
        steps,
        halted_at,
    })
}

/// Plain (unnormalized, unprojected) gradient iteration
/// `x_{n+1} = x_n - alpha_n u_n` with the exact oracle, for problems whose
/// feasible set is effectively all of the space.
pub fn run_plain_gradient(
    prob: &ConvexProblem,
    alpha: &Seq<Float>,
    x0: &[f64],
    horizon: u64,
) -> Result<Trajectory, DescentError> {
    if x0.len() != prob.dim {
        return Err(DescentError::InvalidParameter("x0 dimension".into()));
    }
    let mut points = Vec::with_capacity(horizon as usize + 1);
    let mut steps = Vec::with_capacity(horizon as usize + 1);
    points.push(x0.to_vec());
    let mut x = x0.to_vec();
    for n in 0..=horizon {
        let a = alpha.at(n);
        let u = (prob.subgradient)(&x, 0.0);
        let f = prob.f(&x);
        if !f.is_finite() || u.iter().any(|v| !v.is_finite()) {
            return Err(DescentError::NonFinite { step: n });
        }
        steps.push(StepRecord {
            u: u.clone(),
            alpha: a,
            eps_slack: 0.0,
            f,
            dist_to_min: dist(&x, &prob.x_star),
        });
        if n == horizon {
            break;
        }
        x = x.iter().zip(&u).map(|(xi, ui)| xi - a * ui).collect();
        if x.iter().any(|v| !v.is_finite()) {
            return Err(DescentError::NonFinite { step: n + 1 });
        }
        points.push(x.clone());
    }
    Ok(Trajectory {
        points,
        steps,
        halted_at: None,
    })
}

/// `f(x) = |x|_1` on the box `[-w, w]^dim`, minimizer 0. The subgradient
/// picks `sign(x_i)` per coordinate with the tie at 0 broken to 0, which
/// minimizes the oracle norm among valid choices.
pub fn l1_box_problem(dim: usize, half_width: f64, rho: f64) -> ConvexProblem {
    ConvexProblem {
        name: format!("l1-box-{dim}"),
        dim,
        objective: Arc::new(|x| x.iter().map(|v| v.abs()).sum()),
        subgradient: Arc::new(|x, _| {
            x.iter()
                .map(|v| if *v == 0.0 { 0.0 } else { v.signum() })
                .collect()
        }),
        set: FeasibleSet::Box {
            lo: vec![-half_width; dim],
            hi: vec![half_width; dim],
        },
        x_star: vec![0.0; dim],
        f_star: 0.0,
        rho,
    }
}

/// `f(x) = |x|^2 / 2` on all of `R^dim` (modelled as a huge box), exact
/// gradient `x`, minimizer 0.
pub fn quadratic_problem(dim: usize, rho: f64) -> ConvexProblem {
    ConvexProblem {
        name: format!("quadratic-{dim}"),
        dim,
        objective: Arc::new(|x| 0.5 * dot(x, x)),
        subgradient: Arc::new(|x, _| x.to_vec()),
        set: FeasibleSet::Box {
            lo: vec![-1e12; dim],
            hi: vec![1e12; dim],
        },
        x_star: vec![0.0; dim],
        f_star: 0.0,
        rho,
    }
}
