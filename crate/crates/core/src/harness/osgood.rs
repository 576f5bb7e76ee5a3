//! The Osgood modulus and the double-exponential envelope it produces.

use std::f64::consts::E;

use crate::error::{Error, Result};

/// `μ(r) = r(2 − log r)`, extended by `μ(0) = 0`.
pub fn mu(r: f64) -> f64 {
    if r <= 0.0 {
        0.0
    } else {
        r * (2.0 - r.ln())
    }
}

/// `β = C(T+1)2^{−nα}`.
pub fn beta(c: f64, t_final: f64, n: u32, alpha: f64) -> f64 {
    c * (t_final + 1.0) * (-(n as f64) * alpha).exp2()
}

/// `e^{2−2e^{−C₁t}} β^{e^{−C₁t}}` with `β = C(T+1)2^{−nα}`.
///
/// This solves `ρ' = C₁μ(ρ)`, `ρ(0) = β`; it equals `β` at `t = 0`, grows
/// monotonically and saturates at `e²`. Requires `β ≤ e²`.
pub fn osgood_envelope(c: f64, c1: f64, t_final: f64, n: u32, alpha: f64, t: f64) -> Result<f64> {
    if !(c >= 0.0 && c1 >= 0.0 && t >= 0.0) {
        return Err(Error::Domain(format!(
            "envelope needs C, C1, t >= 0; got C = {c}, C1 = {c1}, t = {t}"
        )));
    }
    let b = beta(c, t_final, n, alpha);
    if b > E * E {
        return Err(Error::Domain(format!(
            "C(T+1)2^(-n alpha) = {b} exceeds e^2; choose a larger n"
        )));
    }
    Ok(envelope_from_beta(b, c1, t))
}

/// The envelope in terms of its initial value `β`.
pub fn envelope_from_beta(b: f64, c1: f64, t: f64) -> f64 {
    let decay = (-c1 * t).exp();
    if b == 0.0 {
        return 0.0;
    }
    (2.0 - 2.0 * decay + decay * b.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_at_beta() {
        let v = osgood_envelope(2.0, 3.0, 1.0, 4, 0.9, 0.0).unwrap();
        assert!((v - beta(2.0, 1.0, 4, 0.9)).abs() < 1e-15);
    }

    #[test]
    fn saturates_at_e_squared() {
        let v = osgood_envelope(1.0, 1.0, 1.0, 6, 0.9, 60.0).unwrap();
        assert!((v - E * E).abs() < 1e-12);
    }

    #[test]
    fn closed_form_at_log_two() {
        // β = e^{-2}, C₁ = 1, t = ln 2: e^{2−1}·(e^{-2})^{1/2} = 1
        let v = envelope_from_beta((-2.0f64).exp(), 1.0, 2f64.ln());
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn solves_the_comparison_ode() {
        let (b, c1) = (0.01, 1.7);
        for &t in &[0.1, 0.5, 1.3] {
            let h = 1e-5;
            let d = (envelope_from_beta(b, c1, t + h) - envelope_from_beta(b, c1, t - h)) / (2.0 * h);
            let rho = envelope_from_beta(b, c1, t);
            assert!((d - c1 * mu(rho)).abs() < 1e-8 * d.abs());
        }
    }

    #[test]
    fn rejects_large_beta() {
        assert!(osgood_envelope(100.0, 1.0, 1.0, 1, 0.5, 0.3).is_err());
        assert!(osgood_envelope(1.0, -1.0, 1.0, 3, 0.5, 0.3).is_err());
    }
}
