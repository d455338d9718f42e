use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("amplitude {magnitude:e} at site {site} would leave the lattice (half width {half_width})")]
    BoundaryOverflow {
        site: i64,
        half_width: usize,
        magnitude: f64,
    },

    #[error("angle table missing or too short: {0}")]
    AngleTableMissing(String),

    #[error("lattice half width {half_width} is smaller than the step count {steps}")]
    LatticeTooSmall { half_width: usize, steps: usize },

    #[error("norm drifted by {drift:e} during step {step}")]
    NormDrift { step: usize, drift: f64 },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("realization {index}: {source}")]
    Realization {
        index: usize,
        #[source]
        source: Box<WalkError>,
    },
}

pub type Result<T> = std::result::Result<T, WalkError>;
