//! Numerical audits of Bernstein's inequalities and the shell Calderón–Zygmund estimate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Exponent, Field, SpectralField};
use crate::flow::biot_savart;
use crate::lp::blocks::dyadic_block;
use crate::lp::partition::DyadicPartition;

/// Inner and outer radius factors of the Bernstein annulus, matching the shell support.
pub const ANNULUS: (f64, f64) = (0.75, 8.0 / 3.0);

/// Amplitudes below this fraction of the largest one are treated as absent.
const SUPPORT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BernsteinAudit {
    /// `sup_{|α|=k} ‖∂^α f‖_{L^q}`.
    pub lhs: f64,
    /// `λ^{k + 2(1/p − 1/q)} ‖f‖_{L^p}`.
    pub rhs: f64,
    pub ratio: f64,
    /// For annular inputs, `sup_{|α|=k} ‖∂^α f‖_{L^p} / (λ^k ‖f‖_{L^p})`.
    pub lower_ratio: Option<f64>,
}

/// `sup_{|α|=k} ‖∂^α f‖_{L^p}`.
fn derivative_sup(f: &SpectralField, k: u32, p: Exponent) -> f64 {
    (0..=k)
        .map(|a| f.derivative(a, k - a).lp_norm(p))
        .fold(0.0, f64::max)
}

/// Compare derivatives of a band-limited field with Bernstein's bounds.
///
/// The spectrum must lie in the ball `|ξ| ≤ λ`, or for `annular` in
/// `3/4·λ ≤ |ξ| ≤ 8/3·λ`; otherwise a precondition error is returned.
pub fn bernstein_audit(
    f: &SpectralField,
    k: u32,
    p: Exponent,
    q: Exponent,
    lam: f64,
    annular: bool,
) -> Result<BernsteinAudit> {
    if !(lam > 0.0) {
        return Err(Error::Precondition(format!("band scale must be positive, got {lam}")));
    }
    if p.reciprocal() < q.reciprocal() {
        return Err(Error::Precondition(format!("need q >= p, got p = {p}, q = {q}")));
    }
    let outer = if annular { ANNULUS.1 * lam } else { lam };
    let top = f.spectral_radius(SUPPORT_TOL);
    if top > outer * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!(
            "spectrum reaches |k| = {top}, outside the ball of radius {outer}"
        )));
    }
    if annular {
        let inner = ANNULUS.0 * lam;
        match f.spectral_floor(SUPPORT_TOL) {
            Some(low) if low >= inner * (1.0 - 1e-12) && f.mean().abs() <= SUPPORT_TOL * f.max_coeff() => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "spectrum not contained in the annulus {inner} <= |k| <= {outer}"
                )))
            }
        }
    }
    let lhs = derivative_sup(f, k, q);
    let base = f.lp_norm(p);
    let rhs = lam.powf(k as f64 + 2.0 * (p.reciprocal() - q.reciprocal())) * base;
    let lower_ratio = if annular && base > 0.0 {
        Some(derivative_sup(f, k, p) / (lam.powi(k as i32) * base))
    } else {
        None
    };
    Ok(BernsteinAudit {
        lhs,
        rhs,
        ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
        lower_ratio,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ShellRatio {
    pub j: i32,
    pub ratio: f64,
}

/// `‖Δ̇_j ∇v‖_∞ / ‖Δ̇_j ω‖_∞` per shell for `v` recovered from `ω`.
///
/// The gradient is measured in the pointwise Frobenius norm. Shells with
/// `‖Δ̇_j ω‖_∞ < 1e-14 ‖ω‖_∞` are skipped.
pub fn shell_cz_audit(omega: &SpectralField, part: &DyadicPartition) -> Result<Vec<ShellRatio>> {
    let v = biot_savart(omega)?;
    let grad = v.gradient();
    let scale = omega.sup_norm();
    let mut out = Vec::new();
    if scale == 0.0 {
        return Ok(out);
    }
    for j in part.shells() {
        let wj = dyadic_block(omega, j, part, true).sup_norm();
        if wj < 1e-14 * scale {
            continue;
        }
        let gj = dyadic_block(&grad, j, part, true).sup_norm();
        out.push(ShellRatio { j, ratio: gj / wj });
    }
    Ok(out)
}

/// `max / min` over a ratio list, `None` when it is empty.
pub fn spread(ratios: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (lo, hi) = ratios
        .into_iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
    (lo.is_finite() && lo > 0.0).then(|| hi / lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid2D;
    use crate::lp::partition::build_partition;

    #[test]
    fn sine_derivative_ratio_is_one() {
        let g = Grid2D::new(64).unwrap();
        for lam in [1.0, 4.0, 9.0] {
            let f = SpectralField::from_fn(&g, |x, _| (lam * x).sin());
            let a = bernstein_audit(&f, 1, Exponent::Infinity, Exponent::Infinity, lam, false).unwrap();
            assert!((a.ratio - 1.0).abs() < 1e-10, "{a:?}");
        }
    }

    #[test]
    fn annular_single_mode_both_bounds() {
        let g = Grid2D::new(64).unwrap();
        let f = SpectralField::mode(&g, 3, 4, 1.0, 0.1).unwrap();
        let a = bernstein_audit(&f, 1, Exponent::Infinity, Exponent::Infinity, 5.0, true).unwrap();
        let lower = a.lower_ratio.unwrap();
        assert!(a.ratio <= 1.0 + 1e-9 && a.ratio > 0.5);
        assert!(lower > 0.5 && lower <= 1.0 + 1e-9);
    }

    #[test]
    fn support_is_checked() {
        let g = Grid2D::new(64).unwrap();
        let f = SpectralField::mode(&g, 6, 0, 1.0, 0.0).unwrap();
        assert!(bernstein_audit(&f, 0, Exponent::Infinity, Exponent::Infinity, 4.0, false).is_err());
        assert!(bernstein_audit(&f, 0, Exponent::Infinity, Exponent::Infinity, 16.0, true).is_err());
        assert!(bernstein_audit(&f, 0, Exponent::Infinity, Exponent::Finite(2.0), 8.0, false).is_err());
    }

    #[test]
    fn single_mode_shell_ratio_is_one() {
        let g = Grid2D::new(64).unwrap();
        let p = build_partition(&g).unwrap();
        let w = SpectralField::mode(&g, 5, 2, 1.0, 0.0).unwrap();
        let r = shell_cz_audit(&w, &p).unwrap();
        assert!(!r.is_empty());
        for s in r {
            assert!((s.ratio - 1.0).abs() < 1e-12, "{s:?}");
        }
        assert!(shell_cz_audit(&SpectralField::zeros(&g), &p).unwrap().is_empty());
    }
}
