//! Initial vorticity fields.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::SpectralField;
use crate::grid::Grid2D;

/// Mean-free field with `|ω̂(k)| ∝ |k|^{-slope}` for `1 ≤ |k| ≤ cutoff` and
/// uniformly random phases, scaled so that the grid maximum of `|ω|` is 1.
///
/// The generator is consumed in lattice order over one half-plane, so the
/// field is a pure function of `(seed, slope, cutoff, N)`.
pub fn random_rough_vorticity(seed: u64, slope: f64, cutoff: usize, grid: &Grid2D) -> Result<SpectralField> {
    let limit = grid.n() / 3;
    if cutoff < 1 || cutoff > limit {
        return Err(Error::Config(format!(
            "cutoff must lie in 1..={limit} for N = {}, got {cutoff}",
            grid.n()
        )));
    }
    if !slope.is_finite() {
        return Err(Error::Config(format!("slope must be finite, got {slope}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex64::default(); grid.len()];
    let kmax = cutoff as i64;
    let r2max = kmax * kmax;
    for ky in 0..=kmax {
        for kx in -kmax..=kmax {
            let upper = ky > 0 || kx > 0;
            let r2 = kx * kx + ky * ky;
            if !upper || r2 > r2max {
                continue;
            }
            let amp = (r2 as f64).sqrt().powf(-slope);
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            let c = Complex64::from_polar(amp, theta);
            let at = grid.index_of(kx, ky).expect("cutoff is inside the lattice");
            let conj = grid.index_of(-kx, -ky).expect("cutoff is inside the lattice");
            coeffs[at] = c;
            coeffs[conj] = c.conj();
        }
    }
    let field = SpectralField::from_coeffs(grid, coeffs)?;
    let peak = field.max_abs();
    Ok(field.scale(1.0 / peak))
}

/// `sin x sin y`, a steady Euler state and an eigenfunction of the Laplacian.
pub fn eigenfunction(grid: &Grid2D) -> SpectralField {
    let mut f = SpectralField::from_fn(grid, |x, y| x.sin() * y.sin());
    f.symmetrize();
    f
}
