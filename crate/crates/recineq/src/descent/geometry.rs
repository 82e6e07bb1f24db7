//! Finite-dimensional Euclidean plumbing: vector helpers and orthogonal
//! projections onto boxes, balls and halfspaces.

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("malformed set descriptor: {0}")]
    Malformed(String),
    #[error("dimension mismatch: point has {point}, set has {set}")]
    Dimension { point: usize, set: usize },
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

/// Closed convex feasible-set descriptor.
#[derive(Debug, Clone)]
pub enum FeasibleSet {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Halfspace { normal: Vec<f64>, offset: f64 },
}

impl FeasibleSet {
    pub fn dim(&self) -> usize {
        match self {
            FeasibleSet::Box { lo, .. } => lo.len(),
            FeasibleSet::Ball { center, .. } => center.len(),
            FeasibleSet::Halfspace { normal, .. } => normal.len(),
        }
    }

    fn validate(&self, point_dim: usize) -> Result<(), GeometryError> {
        if self.dim() != point_dim {
            return Err(GeometryError::Dimension {
                point: point_dim,
                set: self.dim(),
            });
        }
        match self {
            FeasibleSet::Box { lo, hi } => {
                if lo.len() != hi.len() || lo.iter().zip(hi).any(|(l, h)| l > h) {
                    return Err(GeometryError::Malformed("box needs lo <= hi".into()));
                }
            }
            FeasibleSet::Ball { radius, .. } =>
            {
                #[allow(clippy::neg_cmp_op_on_partial_ord)]
                if !(*radius > 0.0) {
                    return Err(GeometryError::Malformed("ball needs radius > 0".into()));
                }
            }
            FeasibleSet::Halfspace { normal, .. } => {
                if dot(normal, normal) == 0.0 {
                    return Err(GeometryError::Malformed(
                        "halfspace needs a nonzero normal".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        match self {
            FeasibleSet::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(v, (l, h))| *v >= l - tol && *v <= h + tol),
            FeasibleSet::Ball { center, radius } => dist(x, center) <= radius + tol,
            FeasibleSet::Halfspace { normal, offset } => dot(normal, x) <= offset + tol,
        }
    }
}

/// Euclidean-nearest point of the set: coordinatewise clamp for boxes,
/// radial shrink for balls, and for the halfspace `<a, x> <= b` the shift
/// `z - max(0, (<a,z> - b)/|a|^2) a`.
pub fn project(set: &FeasibleSet, z: &[f64]) -> Result<Vec<f64>, GeometryError> {
    set.validate(z.len())?;
    Ok(match set {
        FeasibleSet::Box { lo, hi } => z
            .iter()
            .zip(lo.iter().zip(hi))
            .map(|(v, (l, h))| v.max(*l).min(*h))
            .collect(),
        FeasibleSet::Ball { center, radius } => {
            let off = sub(z, center);
            let d = norm(&off);
            if d <= *radius {
                z.to_vec()
            } else {
                let scale = radius / d;
                center
                    .iter()
                    .zip(&off)
                    .map(|(c, o)| c + o * scale)
                    .collect()
            }
        }
        FeasibleSet::Halfspace { normal, offset } => {
            let excess = dot(normal, z) - offset;
            if excess <= 0.0 {
                z.to_vec()
            } else {
                let scale = excess / dot(normal, normal);
                z.iter().zip(normal).map(|(v, a)| v - scale * a).collect()
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn members_are_fixed() {
        let boxy = FeasibleSet::Box {
            lo: vec![-1.0, -1.0],
            hi: vec![1.0, 1.0],
        };
        assert_eq!(project(&boxy, &[0.25, -0.5]).unwrap(), vec![0.25, -0.5]);
        let ball = FeasibleSet::Ball {
            center: vec![0.0, 0.0],
            radius: 2.0,
        };
        assert_eq!(project(&ball, &[1.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        let half = FeasibleSet::Halfspace {
            normal: vec![1.0, 0.0],
            offset: 0.0,
        };
        assert_eq!(project(&half, &[-3.0, 5.0]).unwrap(), vec![-3.0, 5.0]);
    }

    #[test]
    fn box_clamps() {
        let boxy = FeasibleSet::Box {
            lo: vec![-1.0, -1.0],
            hi: vec![1.0, 1.0],
        };
        assert_eq!(project(&boxy, &[2.0, 0.0]).unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn ball_shrinks_radially() {
        let ball = FeasibleSet::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        };
        let p = project(&ball, &[3.0, 4.0]).unwrap();
        assert!(dist(&p, &[0.6, 0.8]) < 1e-15);
    }

    #[test]
    fn halfspace_subtracts_excess() {
        let half = FeasibleSet::Halfspace {
            normal: vec![0.0, 2.0],
            offset: 2.0,
        };
        let p = project(&half, &[7.0, 3.0]).unwrap();
        assert_eq!(p, vec![7.0, 1.0]);
    }

    #[test]
    fn malformed_descriptors_are_rejected() {
        let boxy = FeasibleSet::Box {
            lo: vec![1.0],
            hi: vec![-1.0],
        };
        assert!(project(&boxy, &[0.0]).is_err());
        let ball = FeasibleSet::Ball {
            center: vec![0.0],
            radius: 0.0,
        };
        assert!(project(&ball, &[0.0]).is_err());
        let half = FeasibleSet::Halfspace {
            normal: vec![0.0],
            offset: 1.0,
        };
        assert!(project(&half, &[0.0]).is_err());
    }

    fn arb_point() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(-10.0f64..10.0, 3)
    }

    fn arb_set() -> impl Strategy<Value = FeasibleSet> {
        prop_oneof![
            Just(FeasibleSet::Box {
                lo: vec![-1.0, -2.0, 0.0],
                hi: vec![1.0, 0.5, 3.0],
            }),
            (0.5f64..4.0).prop_map(|radius| FeasibleSet::Ball {
                center: vec![0.5, -0.5, 1.0],
                radius,
            }),
            Just(FeasibleSet::Halfspace {
                normal: vec![1.0, -2.0, 0.5],
                offset: 0.25,
            }),
        ]
    }

    proptest! {
        // idempotence and nonexpansiveness, both up to roundoff
        #[test]
        fn projection_is_idempotent_and_nonexpansive(
            set in arb_set(),
            z in arb_point(),
            w in arb_point(),
        ) {
            let pz = project(&set, &z).unwrap();
            let pw = project(&set, &w).unwrap();
            let again = project(&set, &pz).unwrap();
            prop_assert!(dist(&again, &pz) <= 1e-9);
            prop_assert!(dist(&pz, &pw) <= dist(&z, &w) + 1e-9);
            prop_assert!(set.contains(&pz, 1e-9));
        }
    }
}
