//! Conserved and bounded quantities along a trajectory.

use serde::Serialize;

use crate::field::SpectralField;
use crate::flow::solver::FlowState;
use crate::lp::{zygmund_norm, DyadicPartition};

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq)]
pub struct Diagnostics {
    /// `½‖v‖²_{L²}`.
    pub energy: f64,
    /// `½‖ω‖²_{L²}`, so that `dE/dt = −2ν·enstrophy`.
    pub enstrophy: f64,
    /// Grid maximum of `|ω|`.
    pub max_vorticity: f64,
    /// `‖v‖_{C¹_*}`.
    pub c1star_norm: f64,
}

pub fn diagnostics(state: &FlowState, part: &DyadicPartition) -> Diagnostics {
    let v = state.velocity();
    let l2 = v.l2_norm();
    let w2 = state.omega.l2_norm();
    Diagnostics {
        energy: 0.5 * l2 * l2,
        enstrophy: 0.5 * w2 * w2,
        max_vorticity: state.omega.max_abs(),
        c1star_norm: zygmund_norm(&v, 1.0, part),
    }
}

struct Jet {
    f: f64,
    g: [f64; 2],
    h: [f64; 3],
}

/// Value, gradient and Hessian of the trigonometric polynomial at a point.
fn jet(modes: &[(f64, f64, f64, f64)], x: f64, y: f64) -> Jet {
    let mut j = Jet {
        f: 0.0,
        g: [0.0; 2],
        h: [0.0; 3],
    };
    for &(kx, ky, re, im) in modes {
        let (s, c) = (kx * x + ky * y).sin_cos();
        let r = re * c - im * s;
        let i = re * s + im * c;
        j.f += r;
        j.g[0] -= kx * i;
        j.g[1] -= ky * i;
        j.h[0] -= kx * kx * r;
        j.h[1] -= kx * ky * r;
        j.h[2] -= ky * ky * r;
    }
    j
}

/// `sup |f|` located on the padded grid and polished by Newton's method on
/// the trigonometric polynomial.
///
/// Never below the grid maximum; differs from it only at the candidates
/// where Newton converges to a nearby critical point.
pub fn refined_sup(f: &SpectralField) -> f64 {
    let grid = f.grid();
    let m = grid.padded_n();
    let samples = f.padded_samples();
    let abs = |r: usize, c: usize| samples[(r % m) * m + (c % m)].abs();
    let grid_max = samples.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if grid_max == 0.0 {
        return 0.0;
    }
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for r in 0..m {
        for c in 0..m {
            let v = abs(r, c);
            if v < 0.9 * grid_max {
                continue;
            }
            let peak = (0..3).all(|dr| {
                (0..3).all(|dc| (dr == 1 && dc == 1) || abs(r + m - 1 + dr, c + m - 1 + dc) <= v)
            });
            if peak {
                candidates.push((v, r, c));
            }
        }
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    candidates.truncate(16);

    let modes: Vec<(f64, f64, f64, f64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(i, c)| {
            let (kx, ky) = grid.wavevector(i);
            (kx as f64, ky as f64, c.re, c.im)
        })
        .collect();
    let h = 2.0 * std::f64::consts::PI / m as f64;
    let mut best = grid_max;
    for (_, r, c) in candidates {
        let (x0, y0) = (c as f64 * h, r as f64 * h);
        let (mut x, mut y) = (x0, y0);
        let sign = jet(&modes, x, y).f.signum();
        for _ in 0..30 {
            let j = jet(&modes, x, y);
            let (a, b, d) = (sign * j.h[0], sign * j.h[1], sign * j.h[2]);
            let det = a * d - b * b;
            // Require a local maximum of sign·f.
            if !(a < 0.0 && det > 0.0) {
                break;
            }
            let (gx, gy) = (sign * j.g[0], sign * j.g[1]);
            let dx = -(d * gx - b * gy) / det;
            let dy = -(a * gy - b * gx) / det;
            x += dx;
            y += dy;
            if (x - x0).hypot(y - y0) > 2.0 * h {
                break;
            }
            if dx.hypot(dy) < 1e-13 {
                best = best.max(sign * jet(&modes, x, y).f);
                break;
            }
        }
    }
    best
}
