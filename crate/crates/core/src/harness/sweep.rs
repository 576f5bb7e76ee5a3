//! Matched Euler / Navier–Stokes runs and the per-sample measurements taken on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{scale_by_field, SpectralField, VectorField};
use crate::flow::{eigenfunction, evolve, random_rough_vorticity, FlowState};
use crate::grid::Grid2D;
use crate::harness::config::{InitialData, SweepConfig};
use crate::harness::split::{mid_band_log_check, three_term_split, Split};
use crate::lp::{besov_b0, commutator_sup, lowpass, tau_n, zygmund_norm, DyadicPartition};

/// The initial vorticity a configuration describes.
pub fn initial_vorticity(config: &SweepConfig, grid: &Grid2D) -> Result<SpectralField> {
    match config.initial {
        InitialData::Rough => random_rough_vorticity(config.seed, config.slope, config.cutoff, grid),
        InitialData::Eigen => Ok(eigenfunction(grid)),
    }
}

/// Sampled states of the Euler run and the Navier–Stokes run at `ν = 2^{-2n}`.
#[derive(Clone, Debug)]
pub struct PairRecord {
    pub n: u32,
    pub nu: f64,
    pub euler: Vec<FlowState>,
    pub navier_stokes: Vec<FlowState>,
}

impl PairRecord {
    pub fn times(&self) -> Vec<f64> {
        self.euler.iter().map(|s| s.t).collect()
    }

    /// `(v_ν, v)` at sample `i`.
    pub fn velocities(&self, i: usize) -> (VectorField, VectorField) {
        (self.navier_stokes[i].velocity(), self.euler[i].velocity())
    }
}

/// Both solves share `ω⁰`, the grid and `dt`.
pub fn run_pair(config: &SweepConfig, n: u32) -> Result<PairRecord> {
    config.validate()?;
    let grid = Grid2D::new(config.grid_n)?;
    let omega0 = initial_vorticity(config, &grid)?;
    let nu = SweepConfig::nu(n);
    let run = |nu: f64| -> Result<Vec<FlowState>> {
        let mut out = Vec::with_capacity(config.sample_times.len());
        evolve(&FlowState::new(omega0.clone(), nu)?, config.dt, &config.sample_times, |s| {
            out.push(s.clone());
            Ok(())
        })?;
        Ok(out)
    };
    Ok(PairRecord {
        n,
        nu,
        euler: run(0.0)?,
        navier_stokes: run(nu)?,
    })
}

/// Everything the audits need from one sample of one sweep member.
///
/// With `v_n = S_n v`, `ω_n = S_n ω`, `v̄_n = v_ν − v_n` and `ω̄_n = ω_ν − ω_n`.
#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq)]
pub struct SampleMetrics {
    pub t: f64,
    pub split: Split,
    /// `‖v̄_n‖_{Ḃ⁰_{∞,∞}}`.
    pub besov_b0: f64,
    /// `‖v̄_n ω_ν‖_{Ḃ⁰_{∞,∞}}`.
    pub transport: f64,
    /// `ν‖∇ω_n‖_{Ḃ⁰_{∞,∞}}`.
    pub viscous: f64,
    /// `‖τ_n(v, ω)‖_{Ḃ⁰_{∞,∞}}`.
    pub tau: f64,
    /// `sup_j 2^{-j}‖[Δ̇_j, v_n·∇]ω̄_n‖_∞`.
    pub commutator: f64,
    /// `‖v_ν‖_{C¹_*}`.
    pub c1star_nu: f64,
    /// `‖v‖_{C¹_*}`.
    pub c1star_euler: f64,
    /// Grid maximum of `|ω_ν|`.
    pub vorticity_sup: f64,
    /// Logarithmic mid-band ratio of `v̄_n`; `None` when `v̄_n = 0`.
    pub mid_band_log: Option<f64>,
}

pub fn sample_metrics(euler: &FlowState, ns: &FlowState, n: u32, part: &DyadicPartition) -> Result<SampleMetrics> {
    euler.grid().ensure_same(ns.grid())?;
    let n = n as i32;
    let (v, v_nu) = (euler.velocity(), ns.velocity());
    let w = &euler.omega;
    let vn = lowpass(&v, n, part);
    let wn = lowpass(w, n, part);
    let vbar = &v_nu - &vn;
    let wbar = &ns.omega - &wn;
    Ok(SampleMetrics {
        t: ns.t,
        split: three_term_split(&v_nu, &v, n, part),
        besov_b0: besov_b0(&vbar, part),
        transport: besov_b0(&scale_by_field(&vbar, &ns.omega)?, part),
        viscous: ns.nu * besov_b0(&wn.gradient(), part),
        tau: besov_b0(&tau_n(&v, w, n, part)?, part),
        commutator: commutator_sup(&vn, &wbar, part)?,
        c1star_nu: zygmund_norm(&v_nu, 1.0, part),
        c1star_euler: zygmund_norm(&v, 1.0, part),
        vorticity_sup: ns.omega.max_abs(),
        mid_band_log: mid_band_log_check(&vbar, n, part),
    })
}

pub fn measure_pair(pair: &PairRecord, part: &DyadicPartition) -> Result<Vec<SampleMetrics>> {
    pair.euler
        .iter()
        .zip(&pair.navier_stokes)
        .map(|(e, s)| sample_metrics(e, s, pair.n, part))
        .collect()
}

/// One Navier–Stokes member of a sweep.
#[derive(Clone, Debug)]
pub struct MemberSeries {
    pub n: u32,
    pub nu: f64,
    pub samples: Vec<SampleMetrics>,
    pub final_state: FlowState,
}

/// A measured sweep; member order follows `config.n_list`.
#[derive(Clone, Debug)]
pub struct Sweep {
    pub config: SweepConfig,
    /// `‖v⁰‖_{L²}`.
    pub v0_l2: f64,
    /// `‖ω⁰‖_∞`.
    pub omega0_sup: f64,
    pub members: Vec<MemberSeries>,
    pub euler_final: FlowState,
}

/// Runs the Euler trajectory once, then every member against it on up to `jobs` threads.
///
/// Each member is a pure function of the configuration, so the result does not
/// depend on `jobs`.
pub fn run_sweep(config: &SweepConfig, jobs: usize) -> Result<Sweep> {
    config.validate()?;
    let grid = Grid2D::new(config.grid_n)?;
    let part = DyadicPartition::for_grid(&grid)?;
    let omega0 = initial_vorticity(config, &grid)?;
    let start = FlowState::new(omega0, 0.0)?;
    let v0_l2 = start.velocity().l2_norm();
    let omega0_sup = start.omega.max_abs();

    let mut euler = Vec::with_capacity(config.sample_times.len());
    evolve(&start, config.dt, &config.sample_times, |s| {
        euler.push(s.clone());
        Ok(())
    })?;

    let member = |n: u32| -> Result<MemberSeries> {
        let nu = SweepConfig::nu(n);
        let mut samples = Vec::with_capacity(euler.len());
        let mut last = None;
        let initial = FlowState::new(start.omega.clone(), nu)?;
        evolve(&initial, config.dt, &config.sample_times, |s| {
            samples.push(sample_metrics(&euler[samples.len()], s, n, &part)?);
            last = Some(s.clone());
            Ok(())
        })?;
        Ok(MemberSeries {
            n,
            nu,
            samples,
            final_state: last.expect("sample_times is nonempty"),
        })
    };
    let members = run_members(&config.n_list, jobs, member)?;
    Ok(Sweep {
        config: config.clone(),
        v0_l2,
        omega0_sup,
        members,
        euler_final: euler.pop().expect("sample_times is nonempty"),
    })
}

#[cfg(feature = "parallel")]
fn run_members<F>(ns: &[u32], jobs: usize, member: F) -> Result<Vec<MemberSeries>>
where
    F: Fn(u32) -> Result<MemberSeries> + Sync,
{
    use rayon::prelude::*;
    if jobs <= 1 {
        return ns.iter().map(|&n| member(n)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {jobs} worker threads: {e}")))?;
    pool.install(|| ns.par_iter().map(|&n| member(n)).collect())
}

#[cfg(not(feature = "parallel"))]
fn run_members<F>(ns: &[u32], jobs: usize, member: F) -> Result<Vec<MemberSeries>>
where
    F: Fn(u32) -> Result<MemberSeries>,
{
    if jobs == 0 {
        return Err(Error::Config("jobs must be at least 1".into()));
    }
    ns.iter().map(|&n| member(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::harness::config::uniform_times;

    fn eigen_config(n_list: Vec<u32>) -> SweepConfig {
        let mut c = SweepConfig::new(n_list, 0.5);
        c.grid_n = 16;
        c.dt = 1.0 / 64.0;
        c.initial = InitialData::Eigen;
        c.sample_times = uniform_times(0.5, 8);
        c
    }

    #[test]
    fn eigen_pair_error_is_closed_form() {
        let c = eigen_config(vec![2]);
        let pair = run_pair(&c, 2).unwrap();
        let part = DyadicPartition::for_grid(pair.euler[0].grid()).unwrap();
        let m = measure_pair(&pair, &part).unwrap();
        let v0 = pair.euler[0].velocity().sup_norm();
        for s in &m {
            let expect = (1.0 - (-2.0 * pair.nu * s.t).exp()) * v0;
            assert!((s.split.total - expect).abs() < 1e-12, "t = {}: {} vs {expect}", s.t, s.split.total);
            // v_n = v and the data sit below shell n
            assert!(s.split.high < 1e-14 && s.tau < 1e-14 && s.commutator < 1e-14);
        }
    }

    #[test]
    fn inviscid_member_has_zero_error() {
        let g = Grid2D::new(32).unwrap();
        let part = DyadicPartition::for_grid(&g).unwrap();
        let w = random_rough_vorticity(3, 1.5, 8, &g).unwrap();
        let s = FlowState::new(w, 0.0).unwrap();
        let m = sample_metrics(&s, &s, 3, &part).unwrap();
        assert_eq!(m.split.total, 0.0);
    }

    #[test]
    fn sweep_is_independent_of_jobs() {
        let c = eigen_config(vec![1, 2, 3]);
        let a = run_sweep(&c, 1).unwrap();
        let b = run_sweep(&c, 3).unwrap();
        for (x, y) in a.members.iter().zip(&b.members) {
            assert_eq!(x.n, y.n);
            assert_eq!(x.samples, y.samples);
        }
        assert_eq!(a.members.len(), 3);
        assert_eq!(a.members[0].samples.len(), 9);
    }
}
