//! Assembly of a measured sweep into a rate report, and its CSV form.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::harness::audits::{
    commutator_bound_audit, delta_series, median_spread, normalizer, ode_audit, Normalizer, OdeAudit,
};
use crate::harness::config::SweepConfig;
use crate::harness::fit::{envelope_series, rate_fit, MemberInput, RateFit};
use crate::harness::split::band_bound_audit;
use crate::harness::sweep::{SampleMetrics, Sweep};
use crate::lp::spread;

/// `p` used for the commutator audit.
pub const COMMUTATOR_P: f64 = 4.0;

pub const CSV_HEADER: &str = "n,nu,t,err_sup,low,mid,high,besov_b0,delta_n,envelope";

#[derive(Clone, Debug, Serialize)]
pub struct MemberReport {
    pub n: u32,
    pub nu: f64,
    #[serde(skip)]
    pub samples: Vec<SampleMetrics>,
    pub delta: Vec<f64>,
    pub envelope: Vec<f64>,
    /// `sup_t ‖v_ν − v‖_∞`.
    pub err_sup: f64,
    #[serde(skip)]
    pub ode: OdeAudit,
    pub commutator_ratio: Vec<f64>,
    /// `max_t low / (2^{-n}‖v⁰‖_{L²})`.
    pub low_ratio: f64,
    /// `max_t high / (2^{-n}‖ω⁰‖_∞)`.
    pub high_ratio: f64,
    pub low_degenerate: bool,
    /// `max_t (low + mid + high) / total`, never below 1.
    pub min_triangle_ratio: Option<f64>,
}

/// Sweep-wide ratios whose uniformity is the audited claim.
#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq)]
pub struct Uniformity {
    /// `max / median` of the commutator ratio over every `(n, t)`.
    pub commutator_spread: Option<f64>,
    /// `max / min` over members of the high-band ratio.
    pub high_band_spread: Option<f64>,
    /// `max / min` over members of the low-band ratio; `None` when the band is degenerate.
    pub low_band_spread: Option<f64>,
    /// `max / min` over members of each term constant of the `δ_n` inequality.
    pub ode_total_spread: Option<f64>,
    pub transport_spread: Option<f64>,
    pub viscous_spread: Option<f64>,
    pub tau_spread: Option<f64>,
    /// `max_n ratio / ratio at the smallest n`: stays bounded when the constant does not grow with `n`.
    pub high_band_growth: Option<f64>,
    pub low_band_growth: Option<f64>,
    pub ode_total_growth: Option<f64>,
    pub transport_growth: Option<f64>,
    pub viscous_growth: Option<f64>,
    pub tau_growth: Option<f64>,
}

impl Uniformity {
    /// Largest of the growth figures that are defined.
    pub fn worst_growth(&self) -> f64 {
        [
            self.high_band_growth,
            self.low_band_growth,
            self.ode_total_growth,
            self.transport_growth,
            self.viscous_growth,
            self.tau_growth,
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }
}

fn growth(members: &[MemberReport], f: impl Fn(&MemberReport) -> f64) -> Option<f64> {
    let first = members.iter().min_by_key(|m| m.n).map(&f)?;
    (first > 0.0).then(|| members.iter().map(&f).fold(0.0, f64::max) / first)
}

#[derive(Clone, Debug, Serialize)]
pub struct RateReport {
    pub config: SweepConfig,
    pub v0_l2: f64,
    pub omega0_sup: f64,
    pub normalizer: Normalizer,
    pub fit: RateFit,
    pub uniformity: Uniformity,
    pub members: Vec<MemberReport>,
}

impl RateReport {
    pub fn from_sweep(sweep: &Sweep) -> Result<Self> {
        let config = &sweep.config;
        let norm = normalizer(sweep);
        let mut members = Vec::with_capacity(sweep.members.len());
        for m in &sweep.members {
            let delta = delta_series(&m.samples, norm.a)?;
            let ode = ode_audit(&m.samples, m.n, config.alpha, norm.a, sweep.omega0_sup)?;
            let commutator_ratio = commutator_bound_audit(&m.samples, m.n, COMMUTATOR_P)?;
            let bands: Vec<_> = m
                .samples
                .iter()
                .map(|s| band_bound_audit(&s.split, m.n as i32, sweep.v0_l2, sweep.omega0_sup))
                .collect();
            members.push(MemberReport {
                n: m.n,
                nu: m.nu,
                samples: m.samples.clone(),
                delta,
                envelope: Vec::new(),
                err_sup: m.samples.iter().map(|s| s.split.total).fold(0.0, f64::max),
                ode,
                commutator_ratio,
                low_ratio: bands.iter().map(|b| b.low_ratio).fold(0.0, f64::max),
                high_ratio: bands.iter().map(|b| b.high_ratio).fold(0.0, f64::max),
                low_degenerate: bands.iter().all(|b| b.low_degenerate),
                min_triangle_ratio: m
                    .samples
                    .iter()
                    .filter_map(|s| s.split.triangle_ratio())
                    .reduce(f64::min),
            });
        }

        let times: Vec<Vec<f64>> = members
            .iter()
            .map(|m| m.samples.iter().map(|s| s.t).collect())
            .collect();
        let inputs: Vec<MemberInput<'_>> = members
            .iter()
            .zip(&times)
            .map(|(m, t)| MemberInput {
                n: m.n,
                t,
                err_sup: m.err_sup,
                delta: &m.delta,
                delta_rate: m
                    .ode
                    .lhs
                    .index
                    .iter()
                    .zip(&m.ode.lhs.value)
                    .map(|(&i, &d)| (i, d / norm.a))
                    .collect(),
            })
            .collect();
        let fit = rate_fit(&inputs, config, sweep.omega0_sup)?;
        drop(inputs);
        for (m, t) in members.iter_mut().zip(&times) {
            m.envelope = envelope_series(&fit, config, m.n, t)?;
        }

        let over = |f: &dyn Fn(&MemberReport) -> f64| spread(members.iter().map(f));
        let uniformity = Uniformity {
            commutator_spread: median_spread(members.iter().flat_map(|m| m.commutator_ratio.iter().copied())),
            high_band_spread: spread(members.iter().map(|m| m.high_ratio).filter(|r| *r > 0.0)),
            low_band_spread: spread(members.iter().map(|m| m.low_ratio).filter(|r| *r > 0.0)),
            ode_total_spread: over(&|m| m.ode.c_total),
            transport_spread: over(&|m| m.ode.transport_ratio),
            viscous_spread: over(&|m| m.ode.viscous_ratio),
            tau_spread: over(&|m| m.ode.tau_ratio),
            high_band_growth: growth(&members, |m| m.high_ratio),
            low_band_growth: growth(&members, |m| m.low_ratio),
            ode_total_growth: growth(&members, |m| m.ode.c_total),
            transport_growth: growth(&members, |m| m.ode.transport_ratio),
            viscous_growth: growth(&members, |m| m.ode.viscous_ratio),
            tau_growth: growth(&members, |m| m.ode.tau_ratio),
        };
        Ok(RateReport {
            config: config.clone(),
            v0_l2: sweep.v0_l2,
            omega0_sup: sweep.omega0_sup,
            normalizer: norm,
            fit,
            uniformity,
            members,
        })
    }

    pub fn row_count(&self) -> usize {
        self.members.iter().map(|m| m.samples.len()).sum()
    }

    /// One row per `(n, t)`; floats in shortest round-trip exponent form.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(128 * (self.row_count() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for m in &self.members {
            for ((s, d), e) in m.samples.iter().zip(&m.delta).zip(&m.envelope) {
                writeln!(
                    out,
                    "{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                    m.n, m.nu, s.t, s.split.total, s.split.low, s.split.mid, s.split.high, s.besov_b0, d, e
                )
                .expect("writing to a String cannot fail");
            }
        }
        out
    }
}
