//! Littlewood–Paley analysis and a periodic vorticity solver for auditing the
//! vanishing-viscosity limit of 2D Navier–Stokes with bounded vorticity.
//!
//! Fields live on the `2π`-periodic torus and are stored as Fourier
//! amplitudes ([`SpectralField`]); every product is formed on a 3/2-padded
//! grid so bilinear identities hold to round-off.

pub mod error;
pub mod field;
pub mod flow;
pub mod grid;
pub mod harness;
pub mod lp;

pub use error::{Error, Result};
pub use field::{Exponent, Field, GradientField, SpectralField, VectorField};
pub use grid::Grid2D;
