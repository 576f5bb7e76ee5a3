//! Biot–Savart reconstruction and the integrating-factor RK4 vorticity solver.

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{ProductSum, SpectralField, VectorField};
use crate::grid::Grid2D;

/// Courant number used by the step-size check.
pub const CFL: f64 = 0.5;

/// Velocity `v = ∇⊥Δ^{-1}ω`, i.e. `v̂(k) = −i k⊥ ω̂(k)/|k|²` with `k⊥ = (−k_y, k_x)`.
///
/// Fails when `ω` carries a mean, on which `Δ^{-1}` is undefined.
pub fn biot_savart(omega: &SpectralField) -> Result<VectorField> {
    let scale = omega.max_coeff();
    if omega.coeffs()[0].norm() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Precondition(format!(
            "vorticity has nonzero mean {}",
            omega.mean()
        )));
    }
    let grid = omega.grid();
    let mut vx = vec![Complex64::default(); grid.len()];
    let mut vy = vec![Complex64::default(); grid.len()];
    let i = Complex64::new(0.0, 1.0);
    for (idx, w) in omega.coeffs().iter().enumerate() {
        if idx == 0 || grid.is_nyquist(idx) {
            continue;
        }
        let (kx, ky) = grid.wavevector(idx);
        let k2 = (kx * kx + ky * ky) as f64;
        let s = -i * w / k2;
        vx[idx] = s * (-ky as f64);
        vy[idx] = s * kx as f64;
    }
    Ok(VectorField::new(
        SpectralField::from_coeffs(grid, vx)?,
        SpectralField::from_coeffs(grid, vy)?,
    ))
}

/// One snapshot of a vorticity trajectory; `nu = 0` is the Euler system.
#[derive(Clone, Debug)]
pub struct FlowState {
    pub omega: SpectralField,
    pub t: f64,
    pub nu: f64,
}

impl FlowState {
    pub fn new(omega: SpectralField, nu: f64) -> Result<Self> {
        if !(nu >= 0.0 && nu.is_finite()) {
            return Err(Error::Precondition(format!("viscosity must be >= 0, got {nu}")));
        }
        let mut omega = omega;
        omega.remove_mean();
        Ok(FlowState { omega, t: 0.0, nu })
    }

    pub fn grid(&self) -> &Grid2D {
        self.omega.grid()
    }

    pub fn velocity(&self) -> VectorField {
        biot_savart(&self.omega).expect("flow states are mean free")
    }
}

/// `−P(v·∇ω)` together with `max |v|` on the padded grid.
fn nonlinear(omega: &SpectralField) -> (SpectralField, f64) {
    let grid = omega.grid();
    let v = biot_savart(omega).expect("solver states are mean free");
    let (vx, vy) = grid.padded_inverse_pair(v.x().coeffs(), v.y().coeffs());
    let (wx, wy) = grid.padded_inverse_pair(omega.dx().coeffs(), omega.dy().coeffs());
    let vmax = vx
        .iter()
        .zip(&vy)
        .map(|(a, b)| a * a + b * b)
        .fold(0.0, f64::max)
        .sqrt();
    let mut sum = ProductSum::new(grid);
    sum.add_samples(&vx, &wx);
    sum.add_samples(&vy, &wy);
    (sum.finish().scale(-1.0), vmax)
}

/// `∂_t ω̂ = −P(v·∇ω) − ν|k|² ω̂`.
pub fn rhs(state: &FlowState) -> SpectralField {
    let (adv, _) = nonlinear(&state.omega);
    let nu = state.nu;
    let visc = state.omega.multiplier(|kx, ky| -nu * (kx * kx + ky * ky) as f64);
    &adv + &visc
}

/// Largest step the CFL check admits for a state.
pub fn admissible_dt(state: &FlowState) -> f64 {
    let (_, vmax) = nonlinear(&state.omega);
    if vmax == 0.0 {
        f64::INFINITY
    } else {
        CFL * state.grid().spacing() / vmax
    }
}

/// Integrating-factor RK4 for a fixed viscosity and step size.
#[derive(Clone, Debug)]
pub struct Integrator {
    nu: f64,
    dt: f64,
    full: Vec<f64>,
    half: Vec<f64>,
}

impl Integrator {
    pub fn new(grid: &Grid2D, nu: f64, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Precondition(format!("time step must be positive, got {dt}")));
        }
        let factor = |h: f64| -> Vec<f64> {
            (0..grid.len())
                .map(|i| {
                    let (kx, ky) = grid.wavevector(i);
                    (-nu * (kx * kx + ky * ky) as f64 * h).exp()
                })
                .collect()
        };
        Ok(Integrator {
            nu,
            dt,
            full: factor(dt),
            half: factor(0.5 * dt),
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn apply(e: &[f64], f: &SpectralField) -> SpectralField {
        let mut out = f.clone();
        out.coeffs_mut().iter_mut().zip(e).for_each(|(c, s)| *c *= s);
        out
    }

    fn axpy(a: &SpectralField, s: f64, b: &SpectralField) -> SpectralField {
        let mut out = a.clone();
        out.coeffs_mut()
            .iter_mut()
            .zip(b.coeffs())
            .for_each(|(x, y)| *x += y * s);
        out
    }

    /// Advance one step; fails when `dt` exceeds `0.5·Δx/max|v|`.
    pub fn step(&self, state: &FlowState) -> Result<FlowState> {
        if state.nu != self.nu {
            return Err(Error::Precondition(format!(
                "integrator built for nu = {}, state has nu = {}",
                self.nu, state.nu
            )));
        }
        let h = self.dt;
        let w = &state.omega;
        let (a, vmax) = nonlinear(w);
        let admissible = if vmax > 0.0 {
            CFL * w.grid().spacing() / vmax
        } else {
            f64::INFINITY
        };
        if h > admissible {
            return Err(Error::StepSize { dt: h, admissible });
        }
        let e = &self.full;
        let e2 = &self.half;
        let (b, _) = nonlinear(&Self::apply(e2, &Self::axpy(w, 0.5 * h, &a)));
        let (c, _) = nonlinear(&Self::axpy(&Self::apply(e2, w), 0.5 * h, &b));
        let (d, _) = nonlinear(&Self::axpy(&Self::apply(e, w), h, &Self::apply(e2, &c)));
        let mut next = Self::apply(e, w);
        let bc = &b + &c;
        let coeffs = next.coeffs_mut();
        for i in 0..coeffs.len() {
            coeffs[i] += (a.coeffs()[i] * e[i] + bc.coeffs()[i] * (2.0 * e2[i]) + d.coeffs()[i]) * (h / 6.0);
        }
        next.remove_mean();
        next.symmetrize();
        Ok(FlowState {
            omega: next,
            t: state.t + h,
            nu: state.nu,
        })
    }
}

/// One integrating-factor RK4 step of size `dt`.
pub fn step(state: &FlowState, dt: f64) -> Result<FlowState> {
    Integrator::new(state.grid(), state.nu, dt)?.step(state)
}

fn check_times(times: &[f64]) -> Result<()> {
    let mut prev = 0.0;
    for &t in times {
        if !(t >= prev && t.is_finite()) {
            return Err(Error::Precondition(format!(
                "sample times must be finite, nonnegative and nondecreasing; got {t} after {prev}"
            )));
        }
        prev = t;
    }
    Ok(())
}

/// Advance `initial` through `sample_times`, calling `observe` at each one.
///
/// Steps are `dt` except for a shortened final step landing on a sample time
/// that is not a multiple of `dt`.
pub fn evolve(
    initial: &FlowState,
    dt: f64,
    sample_times: &[f64],
    mut observe: impl FnMut(&FlowState) -> Result<()>,
) -> Result<()> {
    check_times(sample_times)?;
    let grid = initial.grid();
    let main = Integrator::new(grid, initial.nu, dt)?;
    let mut state = initial.clone();
    let t0 = initial.t;
    for &target in sample_times {
        let target = t0 + target;
        loop {
            let remaining = target - state.t;
            if remaining <= 1e-9 * dt {
                state.t = state.t.max(target);
                break;
            }
            if remaining >= dt * (1.0 - 1e-9) {
                state = main.step(&state)?;
            } else {
                state = Integrator::new(grid, initial.nu, remaining)?.step(&state)?;
            }
            if (state.t - target).abs() <= 1e-9 * dt {
                state.t = target;
            }
        }
        observe(&state)?;
    }
    Ok(())
}

/// States at each sample time.
pub fn trajectory(initial: &FlowState, dt: f64, sample_times: &[f64]) -> Result<Vec<FlowState>> {
    let mut out = Vec::with_capacity(sample_times.len());
    evolve(initial, dt, sample_times, |s| {
        out.push(s.clone());
        Ok(())
    })?;
    Ok(out)
}
