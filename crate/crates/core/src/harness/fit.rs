//! Rate and envelope fits over a sweep.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::config::SweepConfig;
use crate::harness::osgood::{beta, mu, osgood_envelope};

/// What the fit needs from one sweep member.
#[derive(Clone, Debug)]
pub struct MemberInput<'a> {
    pub n: u32,
    pub t: &'a [f64],
    /// `sup_t ‖v_ν − v‖_∞`.
    pub err_sup: f64,
    pub delta: &'a [f64],
    /// `(sample index, ∂_t δ_n)` at interior samples.
    pub delta_rate: Vec<(usize, f64)>,
}

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq)]
pub struct RateFit {
    /// Least-squares slope of `log sup error` against `log √ν`.
    pub theta: f64,
    pub intercept: f64,
    /// Smallest `C` with `error ≤ C(T+1)(√ν)^{α e^{−C₁T}}` at every member.
    #[serde(rename = "C")]
    pub c: f64,
    /// Smallest `C₁` with `∂_t δ_n ≤ C₁(2^{−nα} + μ(δ_n))` at every interior sample.
    #[serde(rename = "C1")]
    pub c1: f64,
    /// `C₁ / ‖ω⁰‖_∞`.
    pub c1_per_vorticity: f64,
    /// Smallest `C` with `δ_n(t) ≤ C(T+1)2^{−nα} + C₁∫₀ᵗμ(δ_n)` at every sample.
    pub c_beta: f64,
    /// `α e^{−C₁T}`.
    pub exponent: f64,
    /// `max δ_n(t) / envelope(t)`.
    pub envelope_margin: f64,
    pub envelope_ok: bool,
    /// False when the sup error fails to decrease strictly with `n`.
    pub monotone: bool,
}

/// Slope and intercept of the least-squares line through `(x, y)`.
pub fn least_squares(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Fit("least squares needs at least two matched points".into()));
    }
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Fit("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

/// Trapezoid-rule running integral, starting at 0.
pub fn cumulative_trapezoid(t: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(t.len());
    let mut acc = 0.0;
    for i in 0..t.len() {
        if i > 0 {
            acc += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
        }
        out.push(acc);
    }
    out
}

/// Envelope values for one member under fitted constants.
pub fn envelope_series(fit: &RateFit, config: &SweepConfig, n: u32, t: &[f64]) -> Result<Vec<f64>> {
    t.iter()
        .map(|&s| osgood_envelope(fit.c_beta, fit.c1, config.t_final, n, config.alpha, s))
        .collect()
}

pub fn rate_fit(members: &[MemberInput<'_>], config: &SweepConfig, omega0_sup: f64) -> Result<RateFit> {
    if members.len() < 3 {
        return Err(Error::Fit(format!(
            "rate fit needs at least 3 sweep points, got {}",
            members.len()
        )));
    }
    if let Some(m) = members.iter().find(|m| !(m.err_sup > 0.0)) {
        return Err(Error::Fit(format!("sup error at n = {} is {}; nothing to fit", m.n, m.err_sup)));
    }
    let alpha = config.alpha;
    let horizon = config.t_final;
    let weight = |n: u32| (-(n as f64) * alpha).exp2();

    let x: Vec<f64> = members.iter().map(|m| -(m.n as f64) * std::f64::consts::LN_2).collect();
    let y: Vec<f64> = members.iter().map(|m| m.err_sup.ln()).collect();
    let (theta, intercept) = least_squares(&x, &y)?;

    let mut order: Vec<&MemberInput<'_>> = members.iter().collect();
    order.sort_by_key(|m| m.n);
    let monotone = order.windows(2).all(|w| w[1].err_sup < w[0].err_sup);

    let c1 = members
        .iter()
        .flat_map(|m| {
            m.delta_rate
                .iter()
                .map(move |&(i, d)| if d > 0.0 { d / (weight(m.n) + mu(m.delta[i])) } else { 0.0 })
        })
        .fold(0.0, f64::max);
    let exponent = alpha * (-c1 * horizon).exp();

    let c = members
        .iter()
        .map(|m| {
            let sqrt_nu = (-(m.n as f64)).exp2();
            m.err_sup / ((horizon + 1.0) * sqrt_nu.powf(exponent))
        })
        .fold(0.0, f64::max);

    let mut c_beta = 0.0f64;
    for m in members {
        let mus: Vec<f64> = m.delta.iter().map(|&d| mu(d)).collect();
        let integral = cumulative_trapezoid(m.t, &mus);
        let b = beta(1.0, horizon, m.n, alpha);
        for (d, i) in m.delta.iter().zip(&integral) {
            c_beta = c_beta.max((d - c1 * i) / b);
        }
    }

    let mut fit = RateFit {
        theta,
        intercept,
        c,
        c1,
        c1_per_vorticity: if omega0_sup > 0.0 { c1 / omega0_sup } else { 0.0 },
        c_beta,
        exponent,
        envelope_margin: 0.0,
        envelope_ok: false,
        monotone,
    };
    let mut margin = 0.0f64;
    for m in members {
        let env = envelope_series(&fit, config, m.n, m.t)?;
        for (d, e) in m.delta.iter().zip(&env) {
            if *d > 0.0 {
                margin = margin.max(if *e > 0.0 { d / e } else { f64::INFINITY });
            }
        }
    }
    fit.envelope_margin = margin;
    fit.envelope_ok = margin <= 1.0 + 1e-12;
    Ok(fit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::osgood::envelope_from_beta;

    #[test]
    fn line_is_recovered() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|v| 2.5 * v - 1.0).collect();
        let (s, b) = least_squares(&x, &y).unwrap();
        assert!((s - 2.5).abs() < 1e-14 && (b + 1.0).abs() < 1e-14);
    }

    #[test]
    fn trapezoid_of_linear_is_exact() {
        let t = [0.0, 0.5, 1.0, 2.0];
        let y: Vec<f64> = t.iter().map(|v| 3.0 * v).collect();
        let c = cumulative_trapezoid(&t, &y);
        assert!((c[3] - 6.0).abs() < 1e-15);
    }

    fn member<'a>(n: u32, t: &'a [f64], delta: &'a [f64], err: f64) -> MemberInput<'a> {
        MemberInput {
            n,
            t,
            err_sup: err,
            delta,
            delta_rate: vec![],
        }
    }

    #[test]
    fn power_law_gives_its_slope() {
        let t = [0.0, 1.0];
        let d = [0.0, 0.0];
        let c = SweepConfig::new(vec![3, 4, 5], 1.0);
        let ms: Vec<MemberInput> = [3u32, 4, 5]
            .iter()
            .map(|&n| member(n, &t, &d, 0.3 * (-2.0 * n as f64).exp2()))
            .collect();
        let f = rate_fit(&ms, &c, 1.0).unwrap();
        assert!((f.theta - 2.0).abs() < 1e-12);
        assert!(f.monotone && f.envelope_ok);
        assert!(rate_fit(&ms[..1], &c, 1.0).is_err());
    }

    #[test]
    fn non_monotone_is_flagged() {
        let t = [0.0, 1.0];
        let d = [0.0, 0.0];
        let c = SweepConfig::new(vec![3, 4, 5], 1.0);
        let ms = vec![member(3, &t, &d, 1e-2), member(4, &t, &d, 2e-2), member(5, &t, &d, 1e-3)];
        assert!(!rate_fit(&ms, &c, 1.0).unwrap().monotone);
    }

    #[test]
    fn osgood_solution_is_dominated() {
        // δ sampled from the exact envelope with a known β and C₁
        let c = SweepConfig::new(vec![3, 4, 5], 1.0);
        let t: Vec<f64> = (0..=64).map(|i| i as f64 / 64.0).collect();
        let series: Vec<(u32, Vec<f64>)> = [3u32, 4, 5]
            .iter()
            .map(|&n| (n, t.iter().map(|&s| envelope_from_beta(beta(0.5, 1.0, n, 0.9), 1.5, s)).collect()))
            .collect();
        let ms: Vec<MemberInput> = series
            .iter()
            .map(|(n, d)| {
                let mut m = member(*n, &t, d, 1.0 / *n as f64);
                m.delta_rate = (1..64)
                    .map(|i| (i, (d[i + 1] - d[i - 1]) * 32.0))
                    .collect();
                m
            })
            .collect();
        let f = rate_fit(&ms, &c, 1.0).unwrap();
        // the forcing term 2^{-nα} only lowers the fitted rate constant
        assert!(f.c1 > 0.0 && f.c1 <= 1.5 * (1.0 + 1e-6), "{}", f.c1);
        assert!(f.envelope_ok, "{}", f.envelope_margin);
    }
}
