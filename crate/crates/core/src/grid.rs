//! The periodic grid on `[0, 2π)²` together with its cached transforms.
//!
//! Spectral coefficients are stored as amplitudes: a field is
//! `f(x) = Σ_k f̂(k) e^{i k·x}` over the lattice `k ∈ {−N/2+1, …, N/2}²`.
//! Arrays are row-major with the row index running along `y`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

struct Plan2d {
    size: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Plan2d {
    fn new(planner: &mut FftPlanner<f64>, size: usize) -> Self {
        Plan2d {
            size,
            forward: planner.plan_fft_forward(size),
            inverse: planner.plan_fft_inverse(size),
        }
    }

    /// Unnormalized 2D transform, in place.
    fn process(&self, data: &mut [Complex64], inverse: bool) {
        debug_assert_eq!(data.len(), self.size * self.size);
        let fft = if inverse { &self.inverse } else { &self.forward };
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        fft.process_with_scratch(data, &mut scratch);
        transpose(data, self.size);
        fft.process_with_scratch(data, &mut scratch);
        transpose(data, self.size);
    }
}

fn transpose(data: &mut [Complex64], size: usize) {
    const TILE: usize = 16;
    for rb in (0..size).step_by(TILE) {
        for cb in (rb..size).step_by(TILE) {
            for r in rb..(rb + TILE).min(size) {
                let start = if cb == rb { r + 1 } else { cb };
                for c in start..(cb + TILE).min(size) {
                    data.swap(r * size + c, c * size + r);
                }
            }
        }
    }
}

/// Signed wavenumber of array index `i` on a lattice of `size` points.
#[inline]
pub fn wavenumber(i: usize, size: usize) -> i64 {
    if i <= size / 2 {
        i as i64
    } else {
        i as i64 - size as i64
    }
}

#[inline]
fn lattice_index(k: i64, size: usize) -> usize {
    k.rem_euclid(size as i64) as usize
}

/// Square periodic grid with `N` points per side and period `2π`.
#[derive(Clone)]
pub struct Grid2D {
    n: usize,
    plain: Arc<Plan2d>,
    padded: Arc<Plan2d>,
}

impl fmt::Debug for Grid2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid2D").field("n", &self.n).finish()
    }
}

impl PartialEq for Grid2D {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Grid2D {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        let mut planner = FftPlanner::new();
        let plain = Plan2d::new(&mut planner, n);
        let padded = Plan2d::new(&mut planner, 3 * n / 2);
        Ok(Grid2D {
            n,
            plain: Arc::new(plain),
            padded: Arc::new(padded),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of lattice points, `N²`.
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Side of the 3/2-padded grid used for products.
    pub fn padded_n(&self) -> usize {
        3 * self.n / 2
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Quadrature weight of one grid cell.
    pub fn cell_area(&self) -> f64 {
        let h = self.spacing();
        h * h
    }

    /// Total area of the torus, `(2π)²`.
    pub fn area(&self) -> f64 {
        4.0 * PI * PI
    }

    /// Physical coordinates of flat index `idx`.
    pub fn point(&self, idx: usize) -> (f64, f64) {
        let h = self.spacing();
        ((idx % self.n) as f64 * h, (idx / self.n) as f64 * h)
    }

    /// Integer wavenumber `(k_x, k_y)` stored at flat index `idx`.
    pub fn wavevector(&self, idx: usize) -> (i64, i64) {
        (wavenumber(idx % self.n, self.n), wavenumber(idx / self.n, self.n))
    }

    /// Flat index holding wavenumber `(kx, ky)`, or `None` outside the lattice.
    pub fn index_of(&self, kx: i64, ky: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        let inside = |k: i64| k > -half && k <= half;
        if inside(kx) && inside(ky) {
            Some(lattice_index(ky, self.n) * self.n + lattice_index(kx, self.n))
        } else {
            None
        }
    }

    /// True where either component of the wavevector sits on the Nyquist line.
    pub fn is_nyquist(&self, idx: usize) -> bool {
        let half = self.n / 2;
        idx % self.n == half || idx / self.n == half
    }

    /// Flat index of `−k` for the wavevector stored at `idx`.
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let (c, r) = (idx % self.n, idx / self.n);
        ((self.n - r) % self.n) * self.n + (self.n - c) % self.n
    }

    pub fn ensure_same(&self, other: &Grid2D) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Physical samples to amplitude coefficients.
    pub fn forward(&self, samples: &[f64]) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.plain.process(&mut data, false);
        let norm = 1.0 / self.len() as f64;
        data.iter_mut().for_each(|c| *c *= norm);
        data
    }

    /// Amplitude coefficients to physical samples (real part).
    pub fn inverse(&self, coeffs: &[Complex64]) -> Vec<f64> {
        let mut data = coeffs.to_vec();
        self.plain.process(&mut data, true);
        data.into_iter().map(|c| c.re).collect()
    }

    /// Two real fields through a single complex transform.
    pub fn inverse_pair(&self, a: &[Complex64], b: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
        let i = Complex64::new(0.0, 1.0);
        let mut data: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x + i * y).collect();
        self.plain.process(&mut data, true);
        data.into_iter().map(|c| (c.re, c.im)).unzip()
    }

    fn pad(&self, a: &[Complex64], b: Option<&[Complex64]>) -> Vec<Complex64> {
        let m = self.padded_n();
        let mut out = vec![Complex64::default(); m * m];
        let i = Complex64::new(0.0, 1.0);
        for idx in 0..self.len() {
            if self.is_nyquist(idx) {
                continue;
            }
            let (kx, ky) = self.wavevector(idx);
            let dst = lattice_index(ky, m) * m + lattice_index(kx, m);
            out[dst] = match b {
                Some(b) => a[idx] + i * b[idx],
                None => a[idx],
            };
        }
        out
    }

    /// Samples of a field on the 3/2-padded grid (Nyquist modes dropped).
    pub fn padded_inverse(&self, a: &[Complex64]) -> Vec<f64> {
        let mut data = self.pad(a, None);
        self.padded.process(&mut data, true);
        data.into_iter().map(|c| c.re).collect()
    }

    /// Two fields on the padded grid through one complex transform.
    pub fn padded_inverse_pair(&self, a: &[Complex64], b: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
        let mut data = self.pad(a, Some(b));
        self.padded.process(&mut data, true);
        data.into_iter().map(|c| (c.re, c.im)).unzip()
    }

    /// Padded-grid samples back to coefficients on this lattice.
    ///
    /// Modes outside `|k_x|, |k_y| < N/2` are discarded, so the result is the
    /// exact Galerkin projection of a product of two fields from this lattice.
    pub fn padded_forward(&self, samples: &[f64]) -> Vec<Complex64> {
        let m = self.padded_n();
        debug_assert_eq!(samples.len(), m * m);
        let mut data: Vec<Complex64> = samples.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.padded.process(&mut data, false);
        let norm = 1.0 / (m * m) as f64;
        let mut out = vec![Complex64::default(); self.len()];
        for (idx, slot) in out.iter_mut().enumerate() {
            if self.is_nyquist(idx) {
                continue;
            }
            let (kx, ky) = self.wavevector(idx);
            *slot = data[lattice_index(ky, m) * m + lattice_index(kx, m)] * norm;
        }
        out
    }
}
