//! Paraproduct, remainder and the Bony decomposition `fg = T_f g + T_g f + R(f, g)`.

use serde::Serialize;

use crate::error::Result;
use crate::field::{product, Field, ProductSum, SpectralField};
use crate::lp::blocks::{dyadic_block, lowpass};
use crate::lp::partition::DyadicPartition;

fn inhomogeneous_blocks(f: &SpectralField, part: &DyadicPartition) -> Vec<SpectralField> {
    (-1..=part.j_max())
        .map(|j| dyadic_block(f, j, part, false))
        .collect()
}

/// `T_f g = Σ_{j≥1} S_{j−1} f · Δ_j g`, truncated at the top shell.
pub fn paraproduct(f: &SpectralField, g: &SpectralField, part: &DyadicPartition) -> Result<SpectralField> {
    f.grid().ensure_same(g.grid())?;
    let mut sum = ProductSum::new(f.grid());
    for j in 1..=part.j_max() {
        let gj = dyadic_block(g, j, part, false);
        if gj.is_zero() {
            continue;
        }
        sum.add(&lowpass(f, j - 1, part), &gj);
    }
    Ok(sum.finish())
}

/// `R(f, g) = Σ_{|i−j|≤1} Δ_i f · Δ_j g`.
///
/// Accumulated as `Σ_i Δ_i f Δ_i g + (Δ_i f Δ_{i+1} g + Δ_{i+1} f Δ_i g)` so
/// that swapping the arguments reproduces the result bit for bit.
pub fn remainder(f: &SpectralField, g: &SpectralField, part: &DyadicPartition) -> Result<SpectralField> {
    f.grid().ensure_same(g.grid())?;
    let grid = f.grid();
    let samples = |h: &SpectralField| -> Vec<Vec<f64>> {
        inhomogeneous_blocks(h, part)
            .iter()
            .map(SpectralField::padded_samples)
            .collect()
    };
    let fb = samples(f);
    let gb = samples(g);
    let mut acc = vec![0.0; fb[0].len()];
    for i in 0..fb.len() {
        for (s, (a, b)) in acc.iter_mut().zip(fb[i].iter().zip(&gb[i])) {
            *s += a * b;
        }
        if i + 1 < fb.len() {
            let (a0, a1, b0, b1) = (&fb[i], &fb[i + 1], &gb[i], &gb[i + 1]);
            for (k, s) in acc.iter_mut().enumerate() {
                *s += a0[k] * b1[k] + a1[k] * b0[k];
            }
        }
    }
    SpectralField::from_coeffs(grid, grid.padded_forward(&acc))
}

/// Outcome of a Bony identity check.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BonyResidual {
    pub residual: f64,
    /// False when `fg = 0` and the absolute residual is reported instead.
    pub relative: bool,
}

/// `‖fg − T_f g − T_g f − R(f,g)‖_∞ / ‖fg‖_∞`.
pub fn bony_residual(f: &SpectralField, g: &SpectralField, part: &DyadicPartition) -> Result<BonyResidual> {
    let fg = product(f, g)?;
    let mut parts = paraproduct(f, g, part)?;
    parts += &paraproduct(g, f, part)?;
    parts += &remainder(f, g, part)?;
    let abs = (&fg - &parts).sup_norm();
    let scale = fg.sup_norm();
    Ok(if scale > 0.0 {
        BonyResidual {
            residual: abs / scale,
            relative: true,
        }
    } else {
        BonyResidual {
            residual: abs,
            relative: false,
        }
    })
}
