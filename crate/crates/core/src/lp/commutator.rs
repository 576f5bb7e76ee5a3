//! Commutators `[Δ̇_j, v·∇]` and the localized product defects `τ_n`, `r_n`.

use crate::error::{Error, Result};
use crate::field::{Field, ProductSum, SpectralField, VectorField};
use crate::lp::blocks::{dyadic_block, lowpass};
use crate::lp::partition::DyadicPartition;

/// Relative tolerance of the spectral divergence check.
const DIVERGENCE_TOL: f64 = 1e-10;

fn check_divergence_free(v: &VectorField) -> Result<()> {
    let (div, scale) = v.spectral_divergence();
    if div > DIVERGENCE_TOL * scale {
        return Err(Error::Precondition(format!(
            "velocity is not divergence free: max |k·v̂| = {div:e} against scale {scale:e}"
        )));
    }
    Ok(())
}

/// `v·∇w` from padded samples of `v`.
fn advect_with(vx: &[f64], vy: &[f64], w: &SpectralField) -> SpectralField {
    let grid = w.grid();
    let (wx, wy) = grid.padded_inverse_pair(w.dx().coeffs(), w.dy().coeffs());
    let mut sum = ProductSum::new(grid);
    sum.add_samples(vx, &wx);
    sum.add_samples(vy, &wy);
    sum.finish()
}

/// Reusable evaluator of `[Δ̇_j, v·∇] w` for a fixed pair `(v, w)` across shells.
pub struct Commutator<'a> {
    part: &'a DyadicPartition,
    vx: Vec<f64>,
    vy: Vec<f64>,
    w: SpectralField,
    advected: SpectralField,
}

impl<'a> Commutator<'a> {
    pub fn new(v: &VectorField, w: &SpectralField, part: &'a DyadicPartition) -> Result<Self> {
        v.grid().ensure_same(w.grid())?;
        check_divergence_free(v)?;
        let (vx, vy) = v.grid().padded_inverse_pair(v.x().coeffs(), v.y().coeffs());
        let advected = advect_with(&vx, &vy, w);
        Ok(Commutator {
            part,
            vx,
            vy,
            w: w.clone(),
            advected,
        })
    }

    /// `Δ̇_j(v·∇w) − v·∇(Δ̇_j w)`.
    pub fn apply(&self, j: i32) -> SpectralField {
        let outer = dyadic_block(&self.advected, j, self.part, true);
        let wj = dyadic_block(&self.w, j, self.part, true);
        if wj.is_zero() {
            return outer;
        }
        &outer - &advect_with(&self.vx, &self.vy, &wj)
    }

    /// `sup_j 2^{-j} ‖[Δ̇_j, v·∇] w‖_∞` over the partition's shells.
    pub fn weighted_sup(&self) -> f64 {
        self.part
            .shells()
            .map(|j| (-j as f64).exp2() * self.apply(j).sup_norm())
            .fold(0.0, f64::max)
    }
}

/// `[Δ̇_j, v_n·∇] w̄ = Δ̇_j(v_n·∇w̄) − v_n·∇(Δ̇_j w̄)`, products dealiased.
pub fn commutator_apply(
    j: i32,
    vn: &VectorField,
    wbar: &SpectralField,
    part: &DyadicPartition,
) -> Result<SpectralField> {
    Ok(Commutator::new(vn, wbar, part)?.apply(j))
}

/// `sup_j 2^{-j}‖[Δ̇_j, v·∇] w‖_∞`.
pub fn commutator_sup(v: &VectorField, w: &SpectralField, part: &DyadicPartition) -> Result<f64> {
    Ok(Commutator::new(v, w, part)?.weighted_sup())
}

/// Dealiased `v w`, sharing the padded samples of `w` between components.
fn vector_times_scalar(v: &VectorField, w: &SpectralField) -> VectorField {
    debug_assert_eq!(v.grid(), w.grid());
    let grid = w.grid();
    let ws = w.padded_samples();
    let (ax, ay) = grid.padded_inverse_pair(v.x().coeffs(), v.y().coeffs());
    let mut sx = ProductSum::new(grid);
    sx.add_samples(&ax, &ws);
    let mut sy = ProductSum::new(grid);
    sy.add_samples(&ay, &ws);
    VectorField::new(sx.finish(), sy.finish())
}

/// `τ_n(v, ω) = S_n(vω) − (S_n v)(S_n ω)`.
///
/// Expanding the kernel form of `r_n` shows `τ_n = r_n − (v − v_n)(ω − ω_n)`
/// is exactly this commutator of `S_n` with multiplication.
pub fn tau_n(v: &VectorField, omega: &SpectralField, n: i32, part: &DyadicPartition) -> Result<VectorField> {
    v.grid().ensure_same(omega.grid())?;
    let full = vector_times_scalar(v, omega);
    let vn = lowpass(v, n, part);
    let wn = lowpass(omega, n, part);
    let low = vector_times_scalar(&vn, &wn);
    Ok(&lowpass(&full, n, part) - &low)
}

/// `r_n(v, ω) = ∫ ψ̌(y)(v(x − 2^{-n}y) − v(x))(ω(x − 2^{-n}y) − ω(x)) dy`,
/// evaluated as `τ_n + (v − v_n)(ω − ω_n)`.
pub fn r_n(v: &VectorField, omega: &SpectralField, n: i32, part: &DyadicPartition) -> Result<VectorField> {
    let tau = tau_n(v, omega, n, part)?;
    let vt = v - &lowpass(v, n, part);
    let wt = omega - &lowpass(omega, n, part);
    Ok(&tau + &vector_times_scalar(&vt, &wt))
}
