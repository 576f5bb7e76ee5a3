//! The low / mid / high frequency split of `v_ν − v` and its band audits.

use serde::Serialize;

use crate::field::{Field, VectorField};
use crate::lp::{band, besov_b0, highpass, lowpass, DyadicPartition};

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq)]
pub struct Split {
    /// `‖S_{−n}(v_ν − v)‖_∞`.
    pub low: f64,
    /// `‖(Id − S_{−n})(v_ν − v_n)‖_∞`.
    pub mid: f64,
    /// `‖(Id − S_{−n})(v_n − v)‖_∞`.
    pub high: f64,
    /// `‖(S_n − S_{−n})(v_ν − v_n)‖_∞`, the part of `mid` the logarithmic estimate controls.
    pub mid_band: f64,
    /// `‖(Id − S_n)(v_ν − v_n)‖_∞`.
    pub mid_tail: f64,
    /// `‖v_ν − v‖_∞`.
    pub total: f64,
    /// True when `S_{−n}` retains no nonzero lattice frequency, so `low` is only the mean.
    pub low_degenerate: bool,
}

impl Split {
    /// `(low + mid + high) / total`, at least 1 by the triangle inequality.
    pub fn triangle_ratio(&self) -> Option<f64> {
        (self.total > 0.0).then(|| (self.low + self.mid + self.high) / self.total)
    }
}

/// Split of `v_ν − v` with `v_n = S_n v`; the three terms sum to `v_ν − v` exactly.
pub fn three_term_split(v_nu: &VectorField, v: &VectorField, n: i32, part: &DyadicPartition) -> Split {
    let vn = lowpass(v, n, part);
    let diff = v_nu - v;
    let near = v_nu - &vn;
    let far = &vn - v;
    Split {
        low: lowpass(&diff, -n, part).sup_norm(),
        mid: highpass(&near, -n, part).sup_norm(),
        high: highpass(&far, -n, part).sup_norm(),
        mid_band: band(&near, -n, n, part).sup_norm(),
        mid_tail: highpass(&near, n, part).sup_norm(),
        total: diff.sup_norm(),
        low_degenerate: part.psi(-n, 1.0) == 0.0,
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct BandAudit {
    /// `low / (2^{-n}‖v⁰‖_{L²})`.
    pub low_ratio: f64,
    /// `high / (2^{-n}‖ω⁰‖_∞)`.
    pub high_ratio: f64,
    pub low_degenerate: bool,
}

pub fn band_bound_audit(split: &Split, n: i32, v0_l2: f64, omega0_sup: f64) -> BandAudit {
    let w = (-n as f64).exp2();
    let ratio = |x: f64, s: f64| if x == 0.0 { 0.0 } else { x / (w * s) };
    BandAudit {
        low_ratio: ratio(split.low, v0_l2),
        high_ratio: ratio(split.high, omega0_sup),
        low_degenerate: split.low_degenerate,
    }
}

/// `‖(S_n − S_{−n})g‖_∞ / (2n‖g‖_{Ḃ⁰_{∞,∞}})`; `None` flags a zero denominator.
pub fn mid_band_log_check(g: &VectorField, n: i32, part: &DyadicPartition) -> Option<f64> {
    let denom = 2.0 * n as f64 * besov_b0(g, part);
    if denom == 0.0 || n < 1 {
        return None;
    }
    Some(band(g, -n, n, part).sup_norm() / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::SpectralField;
    use crate::flow::biot_savart;
    use crate::grid::Grid2D;
    use crate::lp::build_partition;

    fn setup(n: usize) -> (Grid2D, DyadicPartition) {
        let g = Grid2D::new(n).unwrap();
        let p = build_partition(&g).unwrap();
        (g, p)
    }

    #[test]
    fn identical_fields_split_to_zero() {
        let (g, p) = setup(32);
        let v = biot_savart(&SpectralField::from_fn(&g, |x, y| (x + 2.0 * y).sin())).unwrap();
        let s = three_term_split(&v, &v, 3, &p);
        // v_n = v here, so every term vanishes
        assert!(s.low == 0.0 && s.mid < 1e-15 && s.high < 1e-15 && s.total == 0.0);
    }

    #[test]
    fn band_limited_difference_is_all_mid() {
        let (g, p) = setup(64);
        let n = 4;
        let w = SpectralField::from_fn(&g, |x, y| (x + 2.0 * y).sin() + 0.3 * (3.0 * x).cos());
        let v = biot_savart(&w).unwrap();
        let dw = SpectralField::from_fn(&g, |x, y| 0.01 * (2.0 * x - 3.0 * y).cos());
        let v_nu = &v + &biot_savart(&dw).unwrap();
        let s = three_term_split(&v_nu, &v, n, &p);
        assert!(s.low_degenerate);
        assert!(s.low < 1e-12 && s.high < 1e-12);
        assert!((s.mid - s.total).abs() <= 1e-12 * s.total);
        assert!(s.mid_tail < 1e-14);
        assert!(s.triangle_ratio().unwrap() >= 1.0 - 1e-12);
    }

    #[test]
    fn single_mode_log_ratio() {
        let (g, p) = setup(64);
        let v = biot_savart(&SpectralField::mode(&g, 5, 1, 1.0, 0.0).unwrap()).unwrap();
        for n in 1..=5 {
            let r = mid_band_log_check(&v, n, &p).unwrap();
            assert!(r <= 3.0 / (2.0 * n as f64) + 1e-12, "n = {n}: {r}");
        }
        assert!(mid_band_log_check(&VectorField::zeros(&g), 2, &p).is_none());
    }

    #[test]
    fn empty_bands_give_zero_ratios() {
        let s = Split::default();
        let a = band_bound_audit(&s, 3, 1.0, 1.0);
        assert_eq!((a.low_ratio, a.high_ratio), (0.0, 0.0));
    }
}
