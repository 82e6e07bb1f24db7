//! The named demo zoo: each entry runs its scheme with the documented
//! default parameters and returns a trajectory exportable as CSV.

use super::accretive::run_accretive_implicit;
use super::km::run_km;
use super::mann::PowerLaw;
use super::subgradient::{
    l1_box_problem, quadratic_problem, run_plain_gradient, run_projected_subgradient, DescentError,
    StepRecord, Trajectory,
};
use crate::seq::Seq;
use crate::value::{rat, Float};

pub const ZOO_NAMES: [&str; 4] = ["l1-box-5", "quadratic-2", "sine-km", "accretive-square"];

fn scalar_trajectory(xs: Vec<f64>, alpha: &Seq<Float>) -> Trajectory {
    let steps = xs
        .iter()
        .enumerate()
        .map(|(n, x)| StepRecord {
            u: Vec::new(),
            alpha: alpha.at(n as u64),
            eps_slack: 0.0,
            f: x.abs(),
            dist_to_min: x.abs(),
        })
        .collect();
    Trajectory {
        points: xs.into_iter().map(|x| vec![x]).collect(),
        steps,
        halted_at: None,
    }
}

/// Runs a named demo for `horizon` steps. Names: `l1-box-5` (projected
/// subgradient on the unit box), `quadratic-2` (plain gradient on
/// `|x|^2/2`), `sine-km` (the sine iteration from 1), `accretive-square`
/// (the scalar implicit scheme for `A(x) = x|x|`).
pub fn run_named_demo(name: &str, horizon: u64) -> Result<Trajectory, DescentError> {
    match name {
        "l1-box-5" => {
            let prob = l1_box_problem(5, 1.0, 3.0);
            let alpha = Seq::from_fn(|n| 1.0 / (n as f64 + 1.0));
            run_projected_subgradient(&prob, &alpha, &Seq::zero(), 1.0, &[1.0; 5], horizon)
        }
        "quadratic-2" => {
            let prob = quadratic_problem(2, 1.5);
            let alpha = Seq::from_fn(|n| 1.0 / (n as f64 + 2.0));
            run_plain_gradient(&prob, &alpha, &[1.0, 1.0], horizon)
        }
        "sine-km" => {
            let alpha = Seq::constant(1.0);
            let points = run_km(|x| vec![x[0].sin()], &alpha, &[1.0], horizon)?;
            Ok(scalar_trajectory(
                points.into_iter().map(|p| p[0]).collect(),
                &alpha,
            ))
        }
        "accretive-square" => {
            let alpha = Seq::constant(1.0);
            let xs =
                run_accretive_implicit(&PowerLaw::new(rat(1, 1), 2), &alpha, 1.0, horizon, 1e-14)?;
            Ok(scalar_trajectory(xs, &alpha))
        }
        _ => Err(DescentError::InvalidParameter(format!(
            "unknown demo {name:?} (known: {})",
            ZOO_NAMES.join(", ")
        ))),
    }
}
