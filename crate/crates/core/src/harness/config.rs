//! Sweep configuration.

use serde::Serialize;

use crate::error::{Error, Result};

/// Choice of initial vorticity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialData {
    /// Seeded random field with power-law spectrum.
    Rough,
    /// `sin x sin y`.
    Eigen,
}

impl std::str::FromStr for InitialData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rough" => Ok(InitialData::Rough),
            "eigen" => Ok(InitialData::Eigen),
            other => Err(Error::Config(format!("initial must be 'rough' or 'eigen', got '{other}'"))),
        }
    }
}

impl std::fmt::Display for InitialData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InitialData::Rough => "rough",
            InitialData::Eigen => "eigen",
        })
    }
}

/// A viscosity sweep: each `n` pairs an Euler run with a Navier–Stokes run at `ν = 2^{-2n}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub n_list: Vec<u32>,
    #[serde(rename = "T")]
    pub t_final: f64,
    pub dt: f64,
    pub alpha: f64,
    #[serde(rename = "grid_N")]
    pub grid_n: usize,
    pub seed: u64,
    pub slope: f64,
    pub cutoff: usize,
    pub sample_times: Vec<f64>,
    pub initial: InitialData,
}

pub const DEFAULT_ALPHA: f64 = 0.9;
pub const DEFAULT_GRID_N: usize = 256;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SLOPE: f64 = 1.2;
/// Steps per unit horizon when `dt` is not given.
pub const DEFAULT_STEPS: usize = 512;
/// Sampling intervals over the horizon when `sample_times` is not given.
pub const DEFAULT_INTERVALS: usize = 64;

impl SweepConfig {
    /// Defaults for everything but the required `n_list` and `T`.
    pub fn new(n_list: Vec<u32>, t_final: f64) -> Self {
        SweepConfig {
            n_list,
            t_final,
            dt: t_final / DEFAULT_STEPS as f64,
            alpha: DEFAULT_ALPHA,
            grid_n: DEFAULT_GRID_N,
            seed: DEFAULT_SEED,
            slope: DEFAULT_SLOPE,
            cutoff: DEFAULT_GRID_N / 4,
            sample_times: uniform_times(t_final, DEFAULT_INTERVALS),
            initial: InitialData::Rough,
        }
    }

    pub fn nu(n: u32) -> f64 {
        (-2.0 * n as f64).exp2()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return Err(Error::Config("n_list must not be empty".into()));
        }
        if let Some(n) = self.n_list.iter().find(|&&n| n < 1) {
            return Err(Error::Config(format!("n_list: every n must be >= 1, got {n}")));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(Error::Config(format!("T must be positive, got {}", self.t_final)));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_final) {
            return Err(Error::Config(format!("dt must lie in (0, T], got {}", self.dt)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.grid_n < 8 || !self.grid_n.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid_N must be a power of two >= 8, got {}",
                self.grid_n
            )));
        }
        if self.initial == InitialData::Rough && (self.cutoff < 1 || self.cutoff > self.grid_n / 3) {
            return Err(Error::Config(format!(
                "cutoff must lie in 1..={} for grid_N = {}, got {}",
                self.grid_n / 3,
                self.grid_n,
                self.cutoff
            )));
        }
        if !self.slope.is_finite() {
            return Err(Error::Config(format!("slope must be finite, got {}", self.slope)));
        }
        if self.sample_times.is_empty() {
            return Err(Error::Config("sample_times must not be empty".into()));
        }
        let mut prev = -1.0;
        for &t in &self.sample_times {
            if !(t >= 0.0 && t <= self.t_final * (1.0 + 1e-12)) || t <= prev {
                return Err(Error::Config(format!(
                    "sample_times must be increasing within [0, T]; offending value {t}"
                )));
            }
            prev = t;
        }
        Ok(())
    }
}

/// `intervals + 1` equally spaced instants on `[0, T]`.
pub fn uniform_times(t_final: f64, intervals: usize) -> Vec<f64> {
    (0..=intervals)
        .map(|i| t_final * i as f64 / intervals as f64)
        .collect()
}
