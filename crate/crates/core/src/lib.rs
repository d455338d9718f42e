//! Discrete-time quantum walks on a line with coherence, entanglement and
//! localization measures.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below are what the command-line runner uses.

pub mod disorder;
pub mod error;
pub mod measures;
pub mod scalar;
pub mod symmetry;
pub mod walk;

pub use disorder::{
    run_ensemble, run_ensemble_with, sample_spatial_angles, sample_temporal_angles, EnsembleConfig, EnsembleOutput,
    RealizationSeed, WalkTemplate,
};
pub use error::{Result, WalkError};
pub use measures::{DensityMatrix, MeasureRecord};
pub use scalar::Scalar;
pub use symmetry::{build_step_unitary, chiral_report, chirality_residual, ChiralOperator, StepUnitary};
pub use walk::{apply_split_step, apply_step, evolve, InitialCoinState, Lattice, Spin, WalkKind, WalkSpec, WalkState};

pub type WalkState64 = WalkState<f64>;
pub type WalkState32 = WalkState<f32>;
pub type WalkSpec64 = WalkSpec<f64>;
pub type InitialCoinState64 = InitialCoinState<f64>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type MeasureRecord64 = MeasureRecord<f64>;
pub type EnsembleConfig64 = EnsembleConfig<f64>;
pub type WalkTemplate64 = WalkTemplate<f64>;
pub type StepUnitary64 = StepUnitary<f64>;
