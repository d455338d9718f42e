use super::lattice::Lattice;
use crate::error::{Result, WalkError};
use crate::scalar::Scalar;

/// One of the four walk regimes together with its coin angles (radians).
#[derive(Debug, Clone, PartialEq)]
pub enum WalkSpec<T> {
    Homogeneous {
        theta: T,
    },
    /// One coin angle per lattice site, indexed like the lattice.
    SpatialDisorder {
        theta_x: Vec<T>,
    },
    /// One coin angle per step; step `t` uses `theta_t[t]`.
    TemporalDisorder {
        theta_t: Vec<T>,
    },
    /// `θ2−` acts at sites `x < interface`, `θ2+` at `x >= interface`.
    SplitStep {
        theta1: T,
        theta2_minus: T,
        theta2_plus: T,
        interface: i64,
    },
}

impl<T: Scalar> WalkSpec<T> {
    pub fn split_step(theta1: T, theta2_minus: T, theta2_plus: T) -> Self {
        WalkSpec::SplitStep {
            theta1,
            theta2_minus,
            theta2_plus,
            interface: 0,
        }
    }

    pub fn kind(&self) -> WalkKind {
        match self {
            WalkSpec::Homogeneous { .. } => WalkKind::Homogeneous,
            WalkSpec::SpatialDisorder { .. } => WalkKind::SpatialDisorder,
            WalkSpec::TemporalDisorder { .. } => WalkKind::TemporalDisorder,
            WalkSpec::SplitStep { .. } => WalkKind::SplitStep,
        }
    }

    /// Checks angle finiteness and table lengths for a run of `steps` steps.
    pub fn validate(&self, lattice: Lattice, steps: usize) -> Result<()> {
        let finite = |name: &'static str, v: &[T]| -> Result<()> {
            match v.iter().position(|a| !a.is_finite()) {
                None => Ok(()),
                Some(i) => Err(WalkError::InvalidParameter {
                    name,
                    reason: format!("entry {i} is not finite"),
                }),
            }
        };
        match self {
            WalkSpec::Homogeneous { theta } => finite("theta", &[*theta]),
            WalkSpec::SpatialDisorder { theta_x } => {
                if theta_x.len() != lattice.site_count() {
                    return Err(WalkError::AngleTableMissing(format!(
                        "spatial table has {} entries for {} sites",
                        theta_x.len(),
                        lattice.site_count()
                    )));
                }
                finite("theta_x", theta_x)
            }
            WalkSpec::TemporalDisorder { theta_t } => {
                if theta_t.len() < steps {
                    return Err(WalkError::AngleTableMissing(format!(
                        "temporal table has {} entries for {} steps",
                        theta_t.len(),
                        steps
                    )));
                }
                finite("theta_t", theta_t)
            }
            WalkSpec::SplitStep {
                theta1,
                theta2_minus,
                theta2_plus,
                ..
            } => finite("split-step angles", &[*theta1, *theta2_minus, *theta2_plus]),
        }
    }

    /// Coin angle at site index `site` during step `t`, for the coin-then-shift
    /// walks. `None` for split-step.
    pub fn coin_angle(&self, site: usize, t: usize) -> Result<Option<T>> {
        match self {
            WalkSpec::Homogeneous { theta } => Ok(Some(*theta)),
            WalkSpec::SpatialDisorder { theta_x } => theta_x
                .get(site)
                .copied()
                .map(Some)
                .ok_or_else(|| WalkError::AngleTableMissing(format!("no angle for site {site}"))),
            WalkSpec::TemporalDisorder { theta_t } => theta_t
                .get(t)
                .copied()
                .map(Some)
                .ok_or_else(|| WalkError::AngleTableMissing(format!("no angle for step {t}"))),
            WalkSpec::SplitStep { .. } => Ok(None),
        }
    }

    /// Second split-step rotation angle at coordinate `x`.
    pub fn theta2_at(&self, x: i64) -> Option<T> {
        match self {
            WalkSpec::SplitStep {
                theta2_minus,
                theta2_plus,
                interface,
                ..
            } => Some(if x < *interface {
                *theta2_minus
            } else {
                *theta2_plus
            }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WalkKind {
    Homogeneous,
    SpatialDisorder,
    TemporalDisorder,
    SplitStep,
}

impl WalkKind {
    pub fn is_disordered(self) -> bool {
        matches!(self, WalkKind::SpatialDisorder | WalkKind::TemporalDisorder)
    }

    pub fn short_name(self) -> &'static str {
        match self {
            WalkKind::Homogeneous => "hqw",
            WalkKind::SpatialDisorder => "sqw",
            WalkKind::TemporalDisorder => "tqw",
            WalkKind::SplitStep => "split-step",
        }
    }
}
