//! Periodic pseudospectral solver for the 2D vorticity equations.

pub mod diagnostics;
pub mod initial;
pub mod snapshot;
pub mod solver;

pub use diagnostics::{diagnostics, refined_sup, Diagnostics};
pub use initial::{eigenfunction, random_rough_vorticity};
pub use snapshot::{read_snapshot, write_snapshot, SnapshotHeader};
pub use solver::{admissible_dt, biot_savart, evolve, rhs, step, trajectory, FlowState, Integrator, CFL};
