//! Littlewood–Paley toolkit: partition, blocks, norms, paraproducts and commutators.

pub mod audits;
pub mod blocks;
pub mod bony;
pub mod commutator;
pub mod norms;
pub mod partition;

pub use audits::{bernstein_audit, shell_cz_audit, spread, BernsteinAudit, ShellRatio};
pub use blocks::{band, dyadic_block, highpass, lowpass, shell_decomposition};
pub use bony::{bony_residual, paraproduct, remainder, BonyResidual};
pub use commutator::{commutator_apply, commutator_sup, r_n, tau_n, Commutator};
pub use norms::{besov_b0, besov_norm, shell_norms, zygmund_norm, BesovSpec};
pub use partition::{build_partition, chi, phi, DyadicPartition};
