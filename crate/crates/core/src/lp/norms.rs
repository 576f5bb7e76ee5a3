//! Besov and Zygmund norms from shell norms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Exponent, Field};
use crate::lp::blocks::dyadic_block;
use crate::lp::partition::DyadicPartition;

/// Indices of a Besov space `B^s_{p,q}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesovSpec {
    pub s: f64,
    pub p: Exponent,
    pub q: Exponent,
    pub homogeneous: bool,
}

impl BesovSpec {
    pub fn new(s: f64, p: Exponent, q: Exponent, homogeneous: bool) -> Result<Self> {
        for e in [p, q] {
            if let Exponent::Finite(x) = e {
                if !(x >= 1.0 && x.is_finite()) {
                    return Err(Error::Config(format!("Besov exponent {x} outside [1, inf]")));
                }
            }
        }
        if !s.is_finite() {
            return Err(Error::Config(format!("regularity index {s} is not finite")));
        }
        Ok(BesovSpec { s, p, q, homogeneous })
    }

    /// `Ḃ^s_{∞,∞}`.
    pub fn homogeneous_sup(s: f64) -> Self {
        BesovSpec {
            s,
            p: Exponent::Infinity,
            q: Exponent::Infinity,
            homogeneous: true,
        }
    }
}

/// `(j, ‖Δ_j f‖_{L^p})` over the shell range of the chosen convention.
pub fn shell_norms<F: Field>(
    f: &F,
    p: Exponent,
    homogeneous: bool,
    part: &DyadicPartition,
) -> Vec<(i32, f64)> {
    let first = if homogeneous { part.j_min() } else { -1 };
    (first..=part.j_max())
        .map(|j| (j, dyadic_block(f, j, part, homogeneous).lp_norm(p)))
        .collect()
}

/// `ℓ^q` aggregate of `2^{js}‖Δ_j f‖_{L^p}`.
pub fn besov_norm<F: Field>(f: &F, spec: &BesovSpec, part: &DyadicPartition) -> f64 {
    let norms = shell_norms(f, spec.p, spec.homogeneous, part);
    spec.q
        .aggregate(norms.into_iter().map(|(j, n)| (j as f64 * spec.s).exp2() * n))
}

/// `‖f‖_{C^s_*} = sup_{j≥−1} 2^{js}‖Δ_j f‖_{L^∞}`.
pub fn zygmund_norm<F: Field>(f: &F, s: f64, part: &DyadicPartition) -> f64 {
    besov_norm(
        f,
        &BesovSpec {
            s,
            p: Exponent::Infinity,
            q: Exponent::Infinity,
            homogeneous: false,
        },
        part,
    )
}

/// `‖f‖_{Ḃ⁰_{∞,∞}}`.
pub fn besov_b0<F: Field>(f: &F, part: &DyadicPartition) -> f64 {
    besov_norm(f, &BesovSpec::homogeneous_sup(0.0), part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::SpectralField;
    use crate::grid::Grid2D;
    use crate::lp::partition::{build_partition, phi};

    fn setup(n: usize) -> (Grid2D, DyadicPartition) {
        let g = Grid2D::new(n).unwrap();
        let p = build_partition(&g).unwrap();
        (g, p)
    }

    #[test]
    fn zero_field_has_zero_norms() {
        let (g, p) = setup(32);
        let z = SpectralField::zeros(&g);
        assert_eq!(besov_b0(&z, &p), 0.0);
        assert_eq!(zygmund_norm(&z, 1.0, &p), 0.0);
    }

    #[test]
    fn single_mode_b0() {
        let (g, p) = setup(32);
        let a = 0.7;
        let f = SpectralField::from_fn(&g, |x, _| a * (2.0 * x).sin());
        let expect = a * phi(2.0).max(phi(1.0));
        assert!((besov_b0(&f, &p) - expect).abs() < 1e-14);
    }

    #[test]
    fn constant_field_zygmund() {
        let (g, p) = setup(32);
        let c = -1.75;
        let f = SpectralField::constant(&g, c);
        assert!((zygmund_norm(&f, 1.0, &p) - c.abs() / 2.0).abs() < 1e-15);
        assert!((zygmund_norm(&f, 0.0, &p) - c.abs()).abs() < 1e-15);
    }

    #[test]
    fn homogeneity() {
        let (g, p) = setup(32);
        let f = SpectralField::from_fn(&g, |x, y| (x - y).cos() + 0.1 * (7.0 * x).sin());
        let spec = BesovSpec::new(0.5, Exponent::Finite(2.0), Exponent::Finite(3.0), true).unwrap();
        let a = besov_norm(&f, &spec, &p);
        let b = besov_norm(&f.scale(-3.0), &spec, &p);
        assert!((b - 3.0 * a).abs() <= 1e-13 * b);
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(BesovSpec::new(0.0, Exponent::Finite(0.5), Exponent::Infinity, true).is_err());
    }
}
