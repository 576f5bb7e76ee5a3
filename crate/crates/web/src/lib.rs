//! WebAssembly bindings for the static demo page in `www/`.

use lpvv_core::flow::random_rough_vorticity;
use lpvv_core::harness::osgood_envelope;
use lpvv_core::lp::{dyadic_block, DyadicPartition};
use lpvv_core::Grid2D;
use wasm_bindgen::prelude::*;

fn js_err(e: lpvv_core::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Values of `χ` and of `φ_j` for `j = 0..shells` at `samples` radii in `[0, r_max]`,
/// laid out as `[r..., χ..., φ_0..., φ_1..., …]`.
#[wasm_bindgen]
pub fn partition_curves(samples: usize, r_max: f64, shells: u32) -> Vec<f64> {
    let radii: Vec<f64> = (0..samples)
        .map(|i| r_max * i as f64 / (samples.max(2) - 1) as f64)
        .collect();
    let mut out = radii.clone();
    out.extend(radii.iter().map(|&r| lpvv_core::lp::chi(r)));
    for j in 0..shells as i32 {
        let s = (-j as f64).exp2();
        out.extend(radii.iter().map(|&r| lpvv_core::lp::phi(r * s)));
    }
    out
}

/// A random vorticity field and its dyadic blocks.
#[wasm_bindgen]
pub struct ShellImages {
    n: usize,
    shells: Vec<i32>,
    data: Vec<f64>,
    norms: Vec<f64>,
}

#[wasm_bindgen]
impl ShellImages {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of images: the field itself, then one per shell.
    pub fn count(&self) -> usize {
        self.shells.len() + 1
    }

    /// Shell index of image `i ≥ 1`.
    pub fn shell(&self, i: usize) -> i32 {
        self.shells[i - 1]
    }

    /// Grid samples of image `i`, row-major with rows along `y`.
    pub fn image(&self, i: usize) -> Vec<f64> {
        let len = self.n * self.n;
        self.data[i * len..(i + 1) * len].to_vec()
    }

    /// `‖·‖_∞` of image `i`.
    pub fn norm(&self, i: usize) -> f64 {
        self.norms[i]
    }
}

/// Decompose a seeded rough vorticity field on an `n × n` grid into homogeneous dyadic blocks.
#[wasm_bindgen]
pub fn shell_images(n: usize, seed: u32, slope: f64, cutoff: usize) -> Result<ShellImages, JsValue> {
    let grid = Grid2D::new(n).map_err(js_err)?;
    let part = DyadicPartition::for_grid(&grid).map_err(js_err)?;
    let omega = random_rough_vorticity(seed as u64, slope, cutoff, &grid).map_err(js_err)?;
    let mut shells = Vec::new();
    let mut data = omega.to_physical();
    let mut norms = vec![omega.max_abs()];
    for j in part.shells() {
        let block = dyadic_block(&omega, j, &part, true);
        shells.push(j);
        norms.push(block.max_abs());
        data.extend(block.to_physical());
    }
    Ok(ShellImages { n, shells, data, norms })
}

/// The Osgood envelope at `points` equally spaced times on `[0, t_final]`.
#[wasm_bindgen]
pub fn envelope_curve(c: f64, c1: f64, t_final: f64, n: u32, alpha: f64, points: usize) -> Result<Vec<f64>, JsValue> {
    (0..points)
        .map(|i| {
            let t = t_final * i as f64 / (points.max(2) - 1) as f64;
            osgood_envelope(c, c1, t_final, n, alpha, t).map_err(js_err)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves_sum_to_one() {
        let k = 200;
        let v = partition_curves(k, 40.0, 6);
        for i in 0..k {
            let total: f64 = (1..8).map(|c| v[c * k + i]).sum();
            assert!((total - 1.0).abs() < 1e-12, "r = {}", v[i]);
        }
    }

    #[test]
    fn blocks_reassemble_the_field() {
        let s = shell_images(32, 5, 1.0, 10).unwrap();
        let field = s.image(0);
        let mut sum = vec![0.0; field.len()];
        for i in 1..s.count() {
            for (a, b) in sum.iter_mut().zip(s.image(i)) {
                *a += b;
            }
        }
        let err = field.iter().zip(&sum).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn envelope_starts_at_beta() {
        let e = envelope_curve(1.0, 2.0, 1.0, 4, 0.9, 11).unwrap();
        assert!((e[0] - 2.0 * (-3.6f64).exp2()).abs() < 1e-15);
        assert!(e.windows(2).all(|w| w[1] >= w[0]));
    }
}
