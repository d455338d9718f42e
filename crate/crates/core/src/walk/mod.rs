//! Walk states and the four one-step evolution maps.

mod coin;
mod lattice;
mod spec;
mod state;
mod step;

pub use coin::{coin_matrix, rotation_matrix, Coin};
pub use lattice::{flat_index, Lattice, Spin};
pub use spec::{WalkKind, WalkSpec};
pub use state::{InitialCoinState, WalkState};
pub use step::{apply_split_step, apply_step, evolve, evolve_with};
