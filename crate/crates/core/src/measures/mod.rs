//! Density matrices and the coherence, entropy, interference and spread
//! measures computed from walk states.

mod coherence;
mod density;
mod eigen;
mod entropy;
mod interference;
mod record;
mod spread;

pub use coherence::{
    l1_coherence, l1_coherence_normalized, position_coherence, pure_state_coherence, NormalizedCoherence,
};
pub use density::{
    full_density, reduce_to_coin, reduce_to_position, trace_out_coin, trace_out_position, DensityMatrix,
};
pub use eigen::hermitian_eigenvalues;
pub use entropy::{
    correlated_coherence, entanglement, relative_entropy_coherence, shannon_bits, von_neumann_entropy,
    CorrelatedCoherence,
};
pub use interference::{degree_of_interference, interference_for_step, split_step_interference};
pub use record::{measure_record, measure_trajectory, MeasureRecord};
pub use spread::{localization_indicator, std_dev};
