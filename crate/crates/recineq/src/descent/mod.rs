//! Desk-scale optimization demos tied back to the recursive inequality:
//! projected subgradient descent with its metastability bound, the abstract
//! gradient-condition checker, Krasnoselskii-Mann iteration, the Mann-type
//! rate with the integral argument, and the scalar accretive implicit
//! scheme.

pub mod accretive;
pub mod conditions;
pub mod geometry;
pub mod km;
pub mod mann;
pub mod subgradient;
pub mod zoo;

pub use accretive::run_accretive_implicit;
pub use conditions::{
    abstract_constants, check_abstract_conditions, gradient_meta_bound, projective_constants,
    star_instance_of_trajectory, ConditionData, GradientConstants,
};
pub use geometry::{dist, dot, norm, project, sub, FeasibleSet, GeometryError};
pub use km::{run_km, sine_trajectory, wc_rate_sine};
pub use mann::{default_integral_floor, mann_rate, MannRate, PowerLaw};
pub use subgradient::{
    l1_box_problem, quadratic_problem, run_plain_gradient, run_projected_subgradient,
    ConvexProblem, DescentError, StepRecord, Trajectory,
};
pub use zoo::{run_named_demo, ZOO_NAMES};
