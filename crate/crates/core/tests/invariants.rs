use lpvv_core::flow::{biot_savart, random_rough_vorticity};
use lpvv_core::harness::{mid_band_log_check, mu, osgood_envelope, three_term_split};
use lpvv_core::lp::{band, bony_residual, highpass, lowpass, DyadicPartition};
use lpvv_core::{Grid2D, SpectralField};
use proptest::prelude::*;

fn setup(n: usize) -> (Grid2D, DyadicPartition) {
    let g = Grid2D::new(n).unwrap();
    let p = DyadicPartition::for_grid(&g).unwrap();
    (g, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_sums_to_one(r in 0.0f64..400.0) {
        let (_, part) = setup(512);
        let total: f64 = part.shells().map(|j| part.inhomogeneous(j, r)).sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn at_most_two_shells_overlap(r in 0.0f64..400.0) {
        let (_, part) = setup(512);
        prop_assert!(part.shells_at(r).count() <= 2);
    }

    #[test]
    fn envelope_grows_in_time(c in 0.01f64..2.0, c1 in 0.0f64..3.0, n in 1u32..8, t in 0.0f64..1.0, dt in 0.0f64..1.0) {
        let lo = osgood_envelope(c, c1, 2.0, n, 0.9, t).unwrap();
        let hi = osgood_envelope(c, c1, 2.0, n, 0.9, t + dt).unwrap();
        prop_assert!(hi >= lo * (1.0 - 1e-14));
    }

    #[test]
    fn envelope_shrinks_with_n(c in 0.01f64..2.0, c1 in 0.0f64..3.0, n in 1u32..8, t in 0.0f64..1.0) {
        let coarse = osgood_envelope(c, c1, 1.0, n, 0.9, t).unwrap();
        let fine = osgood_envelope(c, c1, 1.0, n + 1, 0.9, t).unwrap();
        prop_assert!(fine <= coarse);
    }

    #[test]
    fn modulus_is_concave_increasing_below_one(a in 1e-6f64..0.9, b in 1e-6f64..0.9) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(mu(hi) >= mu(lo));
        prop_assert!(mu(0.5 * (lo + hi)) >= 0.5 * (mu(lo) + mu(hi)) - 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bony_identity_holds(seed in 0u64..10_000, slope in 0.5f64..2.0) {
        let (g, part) = setup(32);
        let f = random_rough_vorticity(seed, slope, 10, &g).unwrap();
        let h = random_rough_vorticity(seed + 1, slope, 10, &g).unwrap();
        prop_assert!(bony_residual(&f, &h, &part).unwrap().residual <= 1e-10);
    }

    #[test]
    fn low_and_high_pass_reassemble(seed in 0u64..10_000, n in 0i32..5) {
        let (g, part) = setup(32);
        let f = random_rough_vorticity(seed, 1.2, 10, &g).unwrap();
        let sum = &lowpass(&f, n, &part) + &highpass(&f, n, &part);
        prop_assert!((&sum - &f).max_abs() <= 1e-13 * f.max_abs());
        let split = &(&lowpass(&f, -n, &part) + &band(&f, -n, n, &part)) + &highpass(&f, n, &part);
        prop_assert!((&split - &f).max_abs() <= 1e-13 * f.max_abs());
    }

    #[test]
    fn velocity_is_divergence_free_with_curl_omega(seed in 0u64..10_000) {
        let (g, _) = setup(32);
        let w = random_rough_vorticity(seed, 1.0, 10, &g).unwrap();
        let v = biot_savart(&w).unwrap();
        prop_assert!(v.divergence().max_abs() <= 1e-13);
        prop_assert!((&v.curl() - &w).max_abs() <= 1e-12 * w.max_abs());
    }

    #[test]
    fn split_satisfies_the_triangle_inequality(seed in 0u64..10_000, n in 1i32..4, eps in 0.01f64..1.0) {
        let (g, part) = setup(32);
        let w = random_rough_vorticity(seed, 1.2, 10, &g).unwrap();
        let dw = random_rough_vorticity(seed + 7, 0.8, 10, &g).unwrap();
        let v = biot_savart(&w).unwrap();
        let v_nu = biot_savart(&(&w + &(&dw * eps))).unwrap();
        let s = three_term_split(&v_nu, &v, n, &part);
        prop_assert!(s.triangle_ratio().unwrap() >= 1.0 - 1e-12);
        prop_assert!(s.mid_band <= s.mid * (1.0 + 1e-12) + s.mid_tail);
    }

    #[test]
    fn mid_band_obeys_the_logarithmic_bound(seed in 0u64..10_000, slope in 0.6f64..2.0, n in 1i32..6) {
        let (g, part) = setup(64);
        let w = random_rough_vorticity(seed, slope, 21, &g).unwrap();
        let v = biot_savart(&w).unwrap();
        prop_assert!(mid_band_log_check(&v, n, &part).unwrap() <= 1.5);
    }
}

#[test]
fn constant_field_lives_in_the_lowest_shell() {
    let (g, part) = setup(32);
    let c = SpectralField::constant(&g, 2.5);
    assert!((&lowpass(&c, -1, &part) - &c).max_abs() < 1e-15);
    assert!(highpass(&c, -1, &part).max_abs() < 1e-15);
}
