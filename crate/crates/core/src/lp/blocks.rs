//! Frequency-localization operators as Fourier multipliers.

use crate::field::Field;
use crate::lp::partition::DyadicPartition;

/// `Δ̇_j f` (homogeneous) or `Δ_j f` (inhomogeneous).
///
/// The inhomogeneous block at `j = −1` is `ψ_0` and keeps the mean; blocks
/// below `−1` vanish.
pub fn dyadic_block<F: Field>(f: &F, j: i32, part: &DyadicPartition, homogeneous: bool) -> F {
    if homogeneous {
        f.map(|c| c.radial_multiplier(|r| part.phi_j(j, r)))
    } else {
        f.map(|c| c.radial_multiplier(|r| part.inhomogeneous(j, r)))
    }
}

/// `S_n f`, multiplier `ψ_n(|k|)`.
pub fn lowpass<F: Field>(f: &F, n: i32, part: &DyadicPartition) -> F {
    f.map(|c| c.radial_multiplier(|r| part.psi(n, r)))
}

/// `(Id − S_n) f`.
pub fn highpass<F: Field>(f: &F, n: i32, part: &DyadicPartition) -> F {
    f.map(|c| c.radial_multiplier(|r| 1.0 - part.psi(n, r)))
}

/// `(S_b − S_a) f`, i.e. `Σ_{a≤j<b} Δ̇_j f`.
pub fn band<F: Field>(f: &F, a: i32, b: i32, part: &DyadicPartition) -> F {
    f.map(|c| c.radial_multiplier(|r| part.psi(b, r) - part.psi(a, r)))
}

/// All blocks over the partition's shell range, paired with their index.
pub fn shell_decomposition<F: Field>(
    f: &F,
    part: &DyadicPartition,
    homogeneous: bool,
) -> Vec<(i32, F)> {
    let first = if homogeneous { part.j_min() } else { -1 };
    (first..=part.j_max())
        .map(|j| (j, dyadic_block(f, j, part, homogeneous)))
        .collect()
}
