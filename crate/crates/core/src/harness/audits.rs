//! Audits of the differential inequality for `δ_n`, computed from sampled data only.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::sweep::{SampleMetrics, Sweep};

/// Minimum number of samples for time derivatives.
pub const MIN_SAMPLES: usize = 20;

/// `A = 1 + Ĉ(‖v⁰‖_{L²} + ‖ω⁰‖_∞)` with `Ĉ` the smallest constant bounding
/// `‖v(t)‖_{C¹_*}` of every run by `Ĉ(‖v⁰‖_{L²} + ‖ω⁰‖_∞)`.
#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct Normalizer {
    pub c_hat: f64,
    pub a: f64,
}

pub fn normalizer(sweep: &Sweep) -> Normalizer {
    let scale = sweep.v0_l2 + sweep.omega0_sup;
    let peak = sweep
        .members
        .iter()
        .flat_map(|m| &m.samples)
        .map(|s| s.c1star_nu.max(s.c1star_euler))
        .fold(0.0, f64::max);
    let c_hat = if scale > 0.0 { peak / scale } else { 0.0 };
    Normalizer {
        c_hat,
        a: 1.0 + c_hat * scale,
    }
}

/// `δ_n(t) = ‖v̄_n(t)‖_{Ḃ⁰_{∞,∞}} / A`.
pub fn delta_series(samples: &[SampleMetrics], a: f64) -> Result<Vec<f64>> {
    if samples.len() < 3 {
        return Err(Error::Sampling(format!(
            "delta series needs at least 3 samples, got {}",
            samples.len()
        )));
    }
    samples
        .iter()
        .map(|s| {
            let d = s.besov_b0 / a;
            if d > 1.0 {
                Err(Error::Inconsistency(format!(
                    "delta_n({}) = {d} > 1; the C1_* constant is underfit",
                    s.t
                )))
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// Centered differences of `y(t)` at interior samples, each with the doubled-step estimate.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Derivative {
    /// Sample indices the derivative is taken at.
    pub index: Vec<usize>,
    pub value: Vec<f64>,
    /// `|D_h − D_{2h}|` for interior points two samples from either end, else `None`.
    pub richardson_gap: Vec<Option<f64>>,
}

pub fn centered_derivative(t: &[f64], y: &[f64]) -> Result<Derivative> {
    if t.len() != y.len() || t.len() < MIN_SAMPLES {
        return Err(Error::Sampling(format!(
            "time derivatives need at least {MIN_SAMPLES} matched samples, got {} times and {} values",
            t.len(),
            y.len()
        )));
    }
    let diff = |i: usize, k: usize| (y[i + k] - y[i - k]) / (t[i + k] - t[i - k]);
    let mut d = Derivative {
        index: Vec::new(),
        value: Vec::new(),
        richardson_gap: Vec::new(),
    };
    for i in 1..t.len() - 1 {
        let h = diff(i, 1);
        if !h.is_finite() {
            return Err(Error::Sampling(format!("non-finite derivative at t = {}", t[i])));
        }
        let wide = (i >= 2 && i + 2 < t.len()).then(|| (h - diff(i, 2)).abs());
        d.index.push(i);
        d.value.push(h);
        d.richardson_gap.push(wide);
    }
    Ok(d)
}

fn ratio(num: f64, den: f64) -> f64 {
    if num <= 0.0 {
        0.0
    } else if den > 0.0 {
        num / den
    } else {
        f64::INFINITY
    }
}

/// Term-by-term audit of `∂_t‖v̄_n‖ ≤ C(transport + viscous + τ_n + commutator)`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct OdeAudit {
    pub n: u32,
    /// `∂_t‖v̄_n‖_{Ḃ⁰}` at interior samples.
    pub lhs: Derivative,
    /// Smallest `C` making the inequality hold at every interior sample.
    pub c_total: f64,
    /// `max_t transport / (2^{-n} + ‖(S_n − S_{−n})v̄_n‖_∞)`.
    pub transport_ratio: f64,
    /// `max_t viscous / (2^{-n}‖ω⁰‖_∞)`.
    pub viscous_ratio: f64,
    /// `max_t ‖τ_n‖_{Ḃ⁰} / 2^{-nα}`.
    pub tau_ratio: f64,
    /// `max_t ‖(S_n − S_{−n})v̄_n‖_∞ / (p‖v̄_n‖^{1/q}_{Ḃ⁰})` with `p = 2 − log δ_n(t)`.
    pub interpolation_ratio: f64,
}

pub fn ode_audit(samples: &[SampleMetrics], n: u32, alpha: f64, a: f64, omega0_sup: f64) -> Result<OdeAudit> {
    let t: Vec<f64> = samples.iter().map(|s| s.t).collect();
    let b: Vec<f64> = samples.iter().map(|s| s.besov_b0).collect();
    let lhs = centered_derivative(&t, &b)?;
    let w = (-(n as f64)).exp2();
    let wa = (-(n as f64) * alpha).exp2();

    let c_total = lhs
        .index
        .iter()
        .zip(&lhs.value)
        .map(|(&i, &d)| {
            let s = &samples[i];
            ratio(d, s.transport + s.viscous + s.tau + s.commutator)
        })
        .fold(0.0, f64::max);
    let max_over = |f: &dyn Fn(&SampleMetrics) -> f64| samples.iter().map(f).fold(0.0, f64::max);
    let interpolation_ratio = max_over(&|s| {
        let delta = s.besov_b0 / a;
        if delta <= 0.0 {
            return 0.0;
        }
        let p = 2.0 - delta.ln();
        let q = p / (p - 1.0);
        ratio(s.split.mid_band, p * s.besov_b0.powf(1.0 / q))
    });
    Ok(OdeAudit {
        n,
        c_total,
        transport_ratio: max_over(&|s| ratio(s.transport, w + s.split.mid_band)),
        viscous_ratio: max_over(&|s| ratio(s.viscous, w * omega0_sup)),
        tau_ratio: max_over(&|s| ratio(s.tau, wa)),
        interpolation_ratio,
        lhs,
    })
}

/// `commutator / (2^{-n} + p‖v̄_n‖^{1/q}_{Ḃ⁰})` at every sample, `1/p + 1/q = 1`.
pub fn commutator_bound_audit(samples: &[SampleMetrics], n: u32, p: f64) -> Result<Vec<f64>> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Precondition(format!("p must lie in (1, inf), got {p}")));
    }
    let q = p / (p - 1.0);
    let w = (-(n as f64)).exp2();
    Ok(samples
        .iter()
        .map(|s| ratio(s.commutator, w + p * s.besov_b0.powf(1.0 / q)))
        .collect())
}

/// `max / median` of the positive entries.
pub fn median_spread(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let mut v: Vec<f64> = values.into_iter().filter(|x| *x > 0.0).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    let median = if v.len() % 2 == 0 {
        0.5 * (v[mid - 1] + v[mid])
    } else {
        v[mid]
    };
    Some(v[v.len() - 1] / median)
}
