//! Real fields on the periodic grid, stored by their Fourier amplitudes.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid2D;

/// Lebesgue / summation exponent in `[1, ∞]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Result<Self> {
        if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else {
            Err(Error::Config(format!("exponent must lie in [1, inf], got {p}")))
        }
    }

    /// `1/p`, zero for `p = ∞`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// Aggregate non-negative terms in `ℓ^p`.
    pub fn aggregate(self, terms: impl IntoIterator<Item = f64>) -> f64 {
        match self {
            Exponent::Infinity => terms.into_iter().fold(0.0, f64::max),
            Exponent::Finite(p) => terms.into_iter().map(|t| t.powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "∞" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Config(format!("cannot parse exponent '{other}'")))?;
                Exponent::finite(p)
            }
        }
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// A real scalar field held as its Fourier amplitudes on a [`Grid2D`].
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Grid2D,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(grid: &Grid2D) -> Self {
        SpectralField {
            grid: grid.clone(),
            coeffs: vec![Complex64::default(); grid.len()],
        }
    }

    pub fn from_coeffs(grid: &Grid2D, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::Precondition(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs,
        })
    }

    pub fn from_physical(grid: &Grid2D, samples: &[f64]) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::Precondition(format!(
                "expected {} samples, got {}",
                grid.len(),
                samples.len()
            )));
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs: grid.forward(samples),
        })
    }

    pub fn from_fn(grid: &Grid2D, f: impl Fn(f64, f64) -> f64) -> Self {
        let samples: Vec<f64> = (0..grid.len())
            .map(|i| {
                let (x, y) = grid.point(i);
                f(x, y)
            })
            .collect();
        SpectralField {
            grid: grid.clone(),
            coeffs: grid.forward(&samples),
        }
    }

    /// `amplitude · cos(k·x + phase)`.
    pub fn mode(grid: &Grid2D, kx: i64, ky: i64, amplitude: f64, phase: f64) -> Result<Self> {
        let mut field = SpectralField::zeros(grid);
        let at = grid
            .index_of(kx, ky)
            .filter(|&i| !grid.is_nyquist(i))
            .ok_or_else(|| Error::Precondition(format!("mode ({kx}, {ky}) not representable")))?;
        let c = Complex64::from_polar(0.5 * amplitude, phase);
        if kx == 0 && ky == 0 {
            field.coeffs[at] = Complex64::new(amplitude * phase.cos(), 0.0);
        } else {
            field.coeffs[at] += c;
            field.coeffs[grid.conjugate_index(at)] += c.conj();
        }
        Ok(field)
    }

    pub fn constant(grid: &Grid2D, value: f64) -> Self {
        let mut field = SpectralField::zeros(grid);
        field.coeffs[0] = Complex64::new(value, 0.0);
        field
    }

    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn coeff(&self, kx: i64, ky: i64) -> Complex64 {
        self.grid
            .index_of(kx, ky)
            .map(|i| self.coeffs[i])
            .unwrap_or_default()
    }

    /// Spatial mean, the `k = 0` amplitude.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re
    }

    pub fn remove_mean(&mut self) {
        self.coeffs[0] = Complex64::default();
    }

    pub fn to_physical(&self) -> Vec<f64> {
        self.grid.inverse(&self.coeffs)
    }

    /// Samples on the 3/2-padded product grid.
    pub fn padded_samples(&self) -> Vec<f64> {
        self.grid.padded_inverse(&self.coeffs)
    }

    /// Multiply by a real symbol `m(k_x, k_y)`.
    pub fn multiplier(&self, m: impl Fn(i64, i64) -> f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (kx, ky) = self.grid.wavevector(i);
                c * m(kx, ky)
            })
            .collect();
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// Multiply by a radial symbol `m(|k|)`.
    pub fn radial_multiplier(&self, m: impl Fn(f64) -> f64) -> Self {
        // The lattice has far fewer distinct |k|² than modes; evaluate each once.
        let half = self.grid.n() / 2;
        let mut table = vec![f64::NAN; 2 * half * half + 1];
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (kx, ky) = self.grid.wavevector(i);
                let r2 = (kx * kx + ky * ky) as usize;
                let s = &mut table[r2];
                if s.is_nan() {
                    *s = m((r2 as f64).sqrt());
                }
                c * *s
            })
            .collect();
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// `∂_x^{ax} ∂_y^{ay}`; Nyquist modes are zeroed so the result stays real.
    pub fn derivative(&self, ax: u32, ay: u32) -> Self {
        let order = ax + ay;
        let unit = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, -1.0),
        ][(order % 4) as usize];
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| {
                if order > 0 && self.grid.is_nyquist(idx) {
                    return Complex64::default();
                }
                let (kx, ky) = self.grid.wavevector(idx);
                let s = (kx as f64).powi(ax as i32) * (ky as f64).powi(ay as i32);
                c * unit * s
            })
            .collect();
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    pub fn dx(&self) -> Self {
        self.derivative(1, 0)
    }

    pub fn dy(&self) -> Self {
        self.derivative(0, 1)
    }

    pub fn gradient(&self) -> VectorField {
        VectorField::new(self.dx(), self.dy())
    }

    pub fn laplacian(&self) -> Self {
        self.multiplier(|kx, ky| -((kx * kx + ky * ky) as f64))
    }

    pub fn scale(&self, s: f64) -> Self {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Largest `|f(x)|` over the grid points.
    pub fn max_abs(&self) -> f64 {
        self.to_physical().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `‖f‖_{L²}` over the torus via Parseval.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.area() * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::default())
    }

    /// Largest `|f̂(k)|`.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Largest `|f̂(k) − conj f̂(−k)|` relative to the largest amplitude.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let scale = self.max_coeff();
        if scale == 0.0 {
            return 0.0;
        }
        let defect = (0..self.grid.len())
            .filter(|&i| !self.grid.is_nyquist(i))
            .map(|i| (self.coeffs[i] - self.coeffs[self.grid.conjugate_index(i)].conj()).norm())
            .fold(0.0, f64::max);
        defect / scale
    }

    /// Project onto exactly conjugate-symmetric coefficients.
    pub fn symmetrize(&mut self) {
        let grid = self.grid.clone();
        for i in 0..grid.len() {
            let j = grid.conjugate_index(i);
            if j < i {
                continue;
            }
            if j == i {
                self.coeffs[i].im = 0.0;
                continue;
            }
            let avg = (self.coeffs[i] + self.coeffs[j].conj()) * 0.5;
            self.coeffs[i] = avg;
            self.coeffs[j] = avg.conj();
        }
    }

    /// Largest `|k|` whose amplitude exceeds `rel_tol · max|f̂|`; zero for the zero field.
    pub fn spectral_radius(&self, rel_tol: f64) -> f64 {
        let cut = rel_tol * self.max_coeff();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > cut)
            .map(|(i, _)| {
                let (kx, ky) = self.grid.wavevector(i);
                ((kx * kx + ky * ky) as f64).sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Smallest nonzero `|k|` above the amplitude threshold, `None` for a constant.
    pub fn spectral_floor(&self, rel_tol: f64) -> Option<f64> {
        let cut = rel_tol * self.max_coeff();
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, c)| c.norm() > cut)
            .map(|(i, _)| {
                let (kx, ky) = self.grid.wavevector(i);
                ((kx * kx + ky * ky) as f64).sqrt()
            })
            .reduce(f64::min)
    }

    /// Direct evaluation of the trigonometric polynomial at an arbitrary point.
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Complex64::default())
            .map(|(i, c)| {
                let (kx, ky) = self.grid.wavevector(i);
                (c * Complex64::from_polar(1.0, kx as f64 * x + ky as f64 * y)).re
            })
            .sum()
    }
}

impl Add<&SpectralField> for &SpectralField {
    type Output = SpectralField;

    fn add(self, rhs: &SpectralField) -> SpectralField {
        debug_assert_eq!(self.grid, rhs.grid);
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&SpectralField> for &SpectralField {
    type Output = SpectralField;

    fn sub(self, rhs: &SpectralField) -> SpectralField {
        debug_assert_eq!(self.grid, rhs.grid);
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl AddAssign<&SpectralField> for SpectralField {
    fn add_assign(&mut self, rhs: &SpectralField) {
        debug_assert_eq!(self.grid, rhs.grid);
        self.coeffs.iter_mut().zip(&rhs.coeffs).for_each(|(a, b)| *a += b);
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;

    fn mul(self, s: f64) -> SpectralField {
        self.scale(s)
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;

    fn neg(self) -> SpectralField {
        self.scale(-1.0)
    }
}

/// A planar vector field, one [`SpectralField`] per component.
#[derive(Clone, Debug)]
pub struct VectorField {
    components: [SpectralField; 2],
}

impl VectorField {
    pub fn new(x: SpectralField, y: SpectralField) -> Self {
        debug_assert_eq!(x.grid(), y.grid());
        VectorField { components: [x, y] }
    }

    pub fn zeros(grid: &Grid2D) -> Self {
        VectorField::new(SpectralField::zeros(grid), SpectralField::zeros(grid))
    }

    /// A spatially constant vector.
    pub fn constant(grid: &Grid2D, vx: f64, vy: f64) -> Self {
        VectorField::new(SpectralField::constant(grid, vx), SpectralField::constant(grid, vy))
    }

    pub fn x(&self) -> &SpectralField {
        &self.components[0]
    }

    pub fn y(&self) -> &SpectralField {
        &self.components[1]
    }

    /// `∂_x v_x + ∂_y v_y`.
    pub fn divergence(&self) -> SpectralField {
        &self.x().dx() + &self.y().dy()
    }

    /// Scalar curl `∂_x v_y − ∂_y v_x`.
    pub fn curl(&self) -> SpectralField {
        &self.y().dx() - &self.x().dy()
    }

    /// Largest `|k·v̂(k)|` together with the largest `|k||v̂(k)|`.
    pub fn spectral_divergence(&self) -> (f64, f64) {
        let grid = self.x().grid();
        let mut div = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..grid.len() {
            if grid.is_nyquist(i) {
                continue;
            }
            let (kx, ky) = grid.wavevector(i);
            let (a, b) = (self.x().coeffs()[i], self.y().coeffs()[i]);
            div = div.max((a * kx as f64 + b * ky as f64).norm());
            let k = ((kx * kx + ky * ky) as f64).sqrt();
            scale = scale.max(k * (a.norm_sqr() + b.norm_sqr()).sqrt());
        }
        (div, scale)
    }

    /// Velocity gradient `[∂_x v_x, ∂_y v_x, ∂_x v_y, ∂_y v_y]`.
    pub fn gradient(&self) -> GradientField {
        GradientField {
            components: [self.x().dx(), self.x().dy(), self.y().dx(), self.y().dy()],
        }
    }

    /// `∫|v|²` over the torus via Parseval.
    pub fn l2_norm(&self) -> f64 {
        (self.x().l2_norm().powi(2) + self.y().l2_norm().powi(2)).sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        VectorField::new(self.x().scale(s), self.y().scale(s))
    }
}

impl Sub<&VectorField> for &VectorField {
    type Output = VectorField;

    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField::new(self.x() - rhs.x(), self.y() - rhs.y())
    }
}

impl Add<&VectorField> for &VectorField {
    type Output = VectorField;

    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField::new(self.x() + rhs.x(), self.y() + rhs.y())
    }
}

/// The four entries of a velocity gradient; norms use the pointwise Frobenius norm.
#[derive(Clone, Debug)]
pub struct GradientField {
    components: [SpectralField; 4],
}

/// Common structure of scalar, vector and tensor fields.
///
/// Norms of multi-component fields are taken of the pointwise Euclidean
/// (Frobenius) magnitude.
pub trait Field: Clone + Sized {
    fn components(&self) -> &[SpectralField];

    fn from_components(components: Vec<SpectralField>) -> Self;

    fn grid(&self) -> &Grid2D {
        self.components()[0].grid()
    }

    fn map<F: FnMut(&SpectralField) -> SpectralField>(&self, f: F) -> Self {
        Self::from_components(self.components().iter().map(f).collect())
    }

    fn zip_map<F: FnMut(&SpectralField, &SpectralField) -> SpectralField>(
        &self,
        other: &Self,
        mut f: F,
    ) -> Self {
        Self::from_components(
            self.components()
                .iter()
                .zip(other.components())
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }

    /// Pointwise magnitude sampled on the grid.
    fn magnitude(&self) -> Vec<f64> {
        let comps = self.components();
        let grid = self.grid();
        let mut sq = vec![0.0; grid.len()];
        for pair in comps.chunks(2) {
            match pair {
                [a, b] => {
                    let (pa, pb) = grid.inverse_pair(a.coeffs(), b.coeffs());
                    for ((s, x), y) in sq.iter_mut().zip(&pa).zip(&pb) {
                        *s += x * x + y * y;
                    }
                }
                [a] => {
                    for (s, x) in sq.iter_mut().zip(a.to_physical()) {
                        *s += x * x;
                    }
                }
                _ => unreachable!(),
            }
        }
        sq.into_iter().map(f64::sqrt).collect()
    }

    /// Grid maximum of the pointwise magnitude.
    fn sup_norm(&self) -> f64 {
        self.magnitude().into_iter().fold(0.0, f64::max)
    }

    /// Rectangle-rule `L^p` norm of the pointwise magnitude.
    fn lp_norm(&self, p: Exponent) -> f64 {
        match p {
            Exponent::Infinity => self.sup_norm(),
            Exponent::Finite(p) => {
                let w = self.grid().cell_area();
                (self.magnitude().iter().map(|m| m.powf(p)).sum::<f64>() * w).powf(1.0 / p)
            }
        }
    }

    fn is_zero(&self) -> bool {
        self.components().iter().all(SpectralField::is_zero)
    }
}

impl Field for SpectralField {
    fn components(&self) -> &[SpectralField] {
        std::slice::from_ref(self)
    }

    fn from_components(mut components: Vec<SpectralField>) -> Self {
        debug_assert_eq!(components.len(), 1);
        components.swap_remove(0)
    }

    fn sup_norm(&self) -> f64 {
        self.max_abs()
    }
}

impl Field for VectorField {
    fn components(&self) -> &[SpectralField] {
        &self.components
    }

    fn from_components(components: Vec<SpectralField>) -> Self {
        let [x, y]: [SpectralField; 2] = components
            .try_into()
            .unwrap_or_else(|_| panic!("vector field needs two components"));
        VectorField::new(x, y)
    }
}

impl Field for GradientField {
    fn components(&self) -> &[SpectralField] {
        &self.components
    }

    fn from_components(components: Vec<SpectralField>) -> Self {
        GradientField {
            components: components
                .try_into()
                .unwrap_or_else(|_| panic!("gradient field needs four components")),
        }
    }
}

/// Accumulates `Σ a_i b_i` on the padded grid and projects once at the end.
///
/// The 3/2 padding makes every retained mode of the projected product exact.
pub struct ProductSum {
    grid: Grid2D,
    acc: Vec<f64>,
}

impl ProductSum {
    pub fn new(grid: &Grid2D) -> Self {
        let m = grid.padded_n();
        ProductSum {
            grid: grid.clone(),
            acc: vec![0.0; m * m],
        }
    }

    pub fn add(&mut self, a: &SpectralField, b: &SpectralField) {
        // The paired transform leaks round-off between its two halves; keep zero products exact.
        if a.is_zero() || b.is_zero() {
            return;
        }
        let (pa, pb) = self.grid.padded_inverse_pair(a.coeffs(), b.coeffs());
        self.add_samples(&pa, &pb);
    }

    /// Add the product of two fields already sampled on the padded grid.
    pub fn add_samples(&mut self, pa: &[f64], pb: &[f64]) {
        for ((s, a), b) in self.acc.iter_mut().zip(pa).zip(pb) {
            *s += a * b;
        }
    }

    pub fn finish(self) -> SpectralField {
        let coeffs = self.grid.padded_forward(&self.acc);
        SpectralField {
            grid: self.grid,
            coeffs,
        }
    }
}

/// Dealiased product `P_N(a b)`.
pub fn product(a: &SpectralField, b: &SpectralField) -> Result<SpectralField> {
    a.grid().ensure_same(b.grid())?;
    let mut sum = ProductSum::new(a.grid());
    sum.add(a, b);
    Ok(sum.finish())
}

/// Componentwise product of a vector field with a scalar.
pub fn scale_by_field(v: &VectorField, w: &SpectralField) -> Result<VectorField> {
    Ok(VectorField::new(product(v.x(), w)?, product(v.y(), w)?))
}

/// Transport term `v·∇w`, dealiased.
pub fn advect(v: &VectorField, w: &SpectralField) -> Result<SpectralField> {
    v.grid().ensure_same(w.grid())?;
    let mut sum = ProductSum::new(w.grid());
    sum.add(v.x(), &w.dx());
    sum.add(v.y(), &w.dy());
    Ok(sum.finish())
}
