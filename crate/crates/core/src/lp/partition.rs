//! Smooth dyadic partition of unity.

use crate::error::{Error, Result};
use crate::grid::Grid2D;

const INNER: f64 = 0.75;
const OUTER: f64 = 4.0 / 3.0;

#[inline]
fn bump(x: f64) -> f64 {
    if x > 0.0 {
        (-1.0 / x).exp()
    } else {
        0.0
    }
}

/// Smooth radial cutoff: 1 on `[0, 3/4]`, 0 on `[4/3, ∞)`, nonincreasing.
pub fn chi(r: f64) -> f64 {
    if r <= INNER {
        return 1.0;
    }
    if r >= OUTER {
        return 0.0;
    }
    let a = bump(OUTER - r);
    let b = bump(r - INNER);
    a / (a + b)
}

/// Shell profile `φ(r) = χ(r/2) − χ(r)`, supported in `[3/4, 8/3]`.
pub fn phi(r: f64) -> f64 {
    chi(0.5 * r) - chi(r)
}

/// The dyadic partition sized to a grid.
///
/// Shell `j` carries the symbol `φ(2^{-j}|k|)`. On the `N`-point torus the
/// nonzero lattice frequencies run from 1 to `N/√2` (the corners), so the
/// shells `j_min = −1 … j_max = log₂N − 1` reproduce every mean-zero field
/// exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DyadicPartition {
    j_min: i32,
    j_max: i32,
}

/// Partition whose shells cover the whole lattice of `grid`.
pub fn build_partition(grid: &Grid2D) -> Result<DyadicPartition> {
    DyadicPartition::for_grid(grid)
}

impl DyadicPartition {
    pub fn for_grid(grid: &Grid2D) -> Result<Self> {
        let n = grid.n();
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        let j_max = n.trailing_zeros() as i32 - 1;
        let part = DyadicPartition { j_min: -1, j_max };
        if part.shell_count() < 3 {
            return Err(Error::Config(format!("grid of size {n} hosts fewer than 3 shells")));
        }
        Ok(part)
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    pub fn shells(&self) -> std::ops::RangeInclusive<i32> {
        self.j_min..=self.j_max
    }

    pub fn shell_count(&self) -> usize {
        (self.j_max - self.j_min + 1) as usize
    }

    pub fn chi(&self, r: f64) -> f64 {
        chi(r)
    }

    pub fn phi(&self, r: f64) -> f64 {
        phi(r)
    }

    /// `φ_j(r) = φ(2^{-j} r)`.
    pub fn phi_j(&self, j: i32, r: f64) -> f64 {
        phi(r * (-j as f64).exp2())
    }

    /// Low-pass symbol `ψ_n(r) = 1 − Σ_{j≥n} φ_j(r) = χ(2^{-n} r)`.
    pub fn psi(&self, n: i32, r: f64) -> f64 {
        chi(r * (-n as f64).exp2())
    }

    /// Inhomogeneous block symbol: `ψ_0` at `j = −1`, `φ_j` above, zero below.
    pub fn inhomogeneous(&self, j: i32, r: f64) -> f64 {
        match j {
            j if j < -1 => 0.0,
            -1 => chi(r),
            j => self.phi_j(j, r),
        }
    }

    /// Shells whose symbol can be nonzero at radius `r`.
    pub fn shells_at(&self, r: f64) -> impl Iterator<Item = i32> + '_ {
        self.shells().filter(move |&j| self.phi_j(j, r) != 0.0)
    }
}
