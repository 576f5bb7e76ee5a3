//! Acceptance criteria 1-11, one PASS/FAIL line each.
//!
//! Runs with `harness = false`; the process exits non-zero when any criterion fails.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use lpvv_core::flow::{
    biot_savart, diagnostics, eigenfunction, evolve, random_rough_vorticity, refined_sup, FlowState,
};
use lpvv_core::harness::{mid_band_log_check, uniform_times};
use lpvv_core::lp::{bony_residual, shell_cz_audit, spread, DyadicPartition};
use lpvv_core::Grid2D;
use rand::{Rng, SeedableRng};
use serde_json::Value;

type Outcome = Result<(bool, String), String>;

struct Tally {
    failed: usize,
}

impl Tally {
    fn report(&mut self, id: &str, name: &str, started: Instant, outcome: Outcome) {
        let secs = started.elapsed().as_secs_f64();
        let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            self.failed += 1;
        }
        println!("{} {id:<3} {name}: {detail} [{secs:.1} s]", if ok { "PASS" } else { "FAIL" });
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn cli(args: &[&str]) -> i32 {
    lpvv_cli::main_with_args(std::iter::once("lpvv").chain(args.iter().copied()))
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(err)
}

fn num(v: &Value, pointer: &str) -> Result<f64, String> {
    v.pointer(pointer)
        .and_then(Value::as_f64)
        .ok_or_else(|| format!("summary has no number at {pointer}"))
}

fn bony() -> Outcome {
    let started = Instant::now();
    let grid = Grid2D::new(128).map_err(err)?;
    let part = DyadicPartition::for_grid(&grid).map_err(err)?;
    let mut worst = 0.0f64;
    for k in 0..100u64 {
        let f = random_rough_vorticity(1000 + 2 * k, 1.0, 32, &grid).map_err(err)?;
        let g = random_rough_vorticity(1001 + 2 * k, 1.0, 32, &grid).map_err(err)?;
        worst = worst.max(bony_residual(&f, &g, &part).map_err(err)?.residual);
    }
    let elapsed = started.elapsed();
    Ok((
        worst <= 1e-10 && elapsed < Duration::from_secs(10),
        format!("max residual {worst:e} (tol 1e-10), {:.2} s (budget 10 s)", elapsed.as_secs_f64()),
    ))
}

fn partition_of_unity() -> Outcome {
    let grid = Grid2D::new(256).map_err(err)?;
    let part = DyadicPartition::for_grid(&grid).map_err(err)?;
    let lo = 0.75 * f64::from(part.j_min()).exp2();
    let hi = 4.0 / 3.0 * f64::from(part.j_max()).exp2();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let worst = (0..1000)
        .map(|_| {
            let r: f64 = rng.gen_range(lo..=hi);
            let total: f64 = part.shells().map(|j| part.phi_j(j, r)).sum::<f64>() + part.psi(part.j_min(), r);
            (total - 1.0).abs()
        })
        .fold(0.0, f64::max);
    Ok((worst <= 1e-12, format!("max deviation {worst:e} on [{lo}, {hi:.1}] (tol 1e-12)")))
}

fn eigen_decay() -> Outcome {
    let grid = Grid2D::new(64).map_err(err)?;
    let nu = 1e-2;
    let omega0 = eigenfunction(&grid);
    let start = FlowState::new(omega0.clone(), nu).map_err(err)?;
    let mut worst = 0.0f64;
    evolve(&start, 1e-3, &uniform_times(1.0, 20), |s| {
        let exact = &omega0 * (-2.0 * nu * s.t).exp();
        worst = worst.max((&s.omega - &exact).max_abs() / exact.max_abs());
        Ok(())
    })
    .map_err(err)?;
    Ok((worst <= 1e-8, format!("max relative error {worst:e} (tol 1e-8)")))
}

fn rough_state(nu: f64) -> Result<(FlowState, DyadicPartition), String> {
    let grid = Grid2D::new(256).map_err(err)?;
    let part = DyadicPartition::for_grid(&grid).map_err(err)?;
    let omega = random_rough_vorticity(42, 1.2, 64, &grid).map_err(err)?;
    Ok((FlowState::new(omega, nu).map_err(err)?, part))
}

fn euler_energy() -> Outcome {
    let (start, part) = rough_state(0.0)?;
    let e0 = diagnostics(&start, &part).energy;
    let mut e1 = e0;
    evolve(&start, 1.0 / 512.0, &[0.0, 1.0], |s| {
        e1 = diagnostics(s, &part).energy;
        Ok(())
    })
    .map_err(err)?;
    let drift = (e1 - e0).abs() / e0;
    Ok((drift <= 1e-8, format!("|E(1) - E(0)|/E(0) = {drift:e} (tol 1e-8)")))
}

fn maximum_principle() -> Outcome {
    let (start, _) = rough_state(1e-3)?;
    let sup0 = refined_sup(&start.omega);
    let mut worst = 0.0f64;
    evolve(&start, 1.0 / 512.0, &uniform_times(1.0, 64), |s| {
        worst = worst.max(refined_sup(&s.omega) / sup0);
        Ok(())
    })
    .map_err(err)?;
    Ok((worst <= 1.0 + 1e-6, format!("max |w(t)|/max |w0| = {worst} (tol 1 + 1e-6)")))
}

fn shell_uniformity() -> Outcome {
    let grid = Grid2D::new(256).map_err(err)?;
    let part = DyadicPartition::for_grid(&grid).map_err(err)?;
    let mut worst = 0.0f64;
    for seed in 0..100u64 {
        let omega = random_rough_vorticity(seed, 1.2, 64, &grid).map_err(err)?;
        let ratios = shell_cz_audit(&omega, &part).map_err(err)?;
        let s = spread(ratios.iter().map(|r| r.ratio)).ok_or("no populated shell")?;
        worst = worst.max(s);
    }
    Ok((worst <= 2.0, format!("worst shell ratio spread {worst} over 100 fields (tol 2)")))
}

fn mid_band() -> Outcome {
    let grid = Grid2D::new(256).map_err(err)?;
    let part = DyadicPartition::for_grid(&grid).map_err(err)?;
    let mut worst = 0.0f64;
    for seed in 0..50u64 {
        let omega = random_rough_vorticity(500 + seed, 1.2, 64, &grid).map_err(err)?;
        let v = biot_savart(&omega).map_err(err)?;
        for n in 1..=7 {
            let r = mid_band_log_check(&v, n, &part).ok_or("degenerate field")?;
            worst = worst.max(r);
        }
    }
    Ok((worst <= 1.5, format!("max ratio {worst} over n = 1..7, 50 fields (tol 1.5)")))
}

const SWEEP_SETTINGS: &[&str] = &[
    "n_list=3,4,5,6,7",
    "T=1",
    "alpha=0.9",
    "grid_N=256",
    "seed=42",
    "slope=1.2",
    "cutoff=64",
];

fn vv_sweep(out: &Path, jobs: usize) -> Result<Duration, String> {
    let started = Instant::now();
    let out_s = out.to_string_lossy().into_owned();
    let jobs_s = jobs.to_string();
    let mut args = vec!["vv-sweep", "--out", &out_s, "--jobs", &jobs_s];
    for s in SWEEP_SETTINGS {
        args.extend(["--set", s]);
    }
    match cli(&args) {
        0 | 1 => Ok(started.elapsed()),
        code => Err(format!("vv-sweep exited with {code}")),
    }
}

fn rate_sweep(out: &Path) -> Result<[Outcome; 3], String> {
    let elapsed = vv_sweep(out, 1)?;
    let summary = read_json(&out.join("summary.json"))?;
    let monotone = summary["fit"]["monotone"].as_bool().unwrap_or(false);
    let errs: Vec<String> = summary["members"]
        .as_array()
        .map(|ms| ms.iter().map(|m| format!("{:.3e}", m["err_sup"].as_f64().unwrap_or(f64::NAN))).collect())
        .unwrap_or_default();
    let theta = num(&summary, "/fit/theta")?;
    let exponent = num(&summary, "/fit/exponent")?;
    let c1 = num(&summary, "/fit/C1")?;
    let margin = num(&summary, "/fit/envelope_margin")?;
    let envelope_ok = summary["fit"]["envelope_ok"].as_bool().unwrap_or(false);
    let within_budget = elapsed <= Duration::from_secs(15 * 60);
    Ok([
        Ok((
            monotone && within_budget,
            format!("sup errors [{}], sweep {:.0} s (budget 900 s)", errs.join(", "), elapsed.as_secs_f64()),
        )),
        Ok((
            theta >= exponent,
            format!("theta {theta:.4} >= alpha exp(-C1 T) = {exponent:.4} (C1 = {c1:.4})"),
        )),
        Ok((envelope_ok, format!("max delta/envelope {margin} (tol 1 + 1e-12)"))),
    ])
}

fn eigen_rate(out: &Path) -> Outcome {
    let started = Instant::now();
    let out_s = out.to_string_lossy().into_owned();
    let code = cli(&[
        "vv-sweep", "--out", &out_s, "--jobs", "1", "--set", "n_list=3,4,5,6,7", "--set", "T=1", "--set",
        "initial=eigen", "--set", "grid_N=32",
    ]);
    if code > 1 {
        return Err(format!("vv-sweep exited with {code}"));
    }
    let theta = num(&read_json(&out.join("summary.json"))?, "/fit/theta")?;
    Ok((
        (theta - 2.0).abs() <= 0.05,
        format!("theta {theta:.6} (want 2 +- 0.05), {:.1} s", started.elapsed().as_secs_f64()),
    ))
}

fn commutator(out: &Path) -> Outcome {
    let summary = read_json(&out.join("summary.json"))?;
    let s = num(&summary, "/uniformity/commutator_spread")?;
    Ok((s <= 10.0, format!("max/median over (n, t) {s} (tol 10)")))
}

fn determinism(serial: &Path, parallel: &Path) -> Outcome {
    vv_sweep(parallel, 8)?;
    let a = std::fs::read(serial.join("report.csv")).map_err(err)?;
    let b = std::fs::read(parallel.join("report.csv")).map_err(err)?;
    let rows = a.iter().filter(|&&c| c == b'\n').count();
    Ok((a == b, format!("report.csv {} bytes, {rows} lines, identical: {}", a.len(), a == b)))
}

fn main() {
    // Listing mode from `cargo test -- --list`.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    println!(
        "acceptance: {} hardware threads",
        std::thread::available_parallelism().map_or(1, |n| n.get())
    );
    let mut tally = Tally { failed: 0 };
    let timed = |f: fn() -> Outcome| {
        let t = Instant::now();
        (t, f())
    };

    let (t, o) = timed(bony);
    tally.report("1", "Bony identity", t, o);
    let (t, o) = timed(partition_of_unity);
    tally.report("2", "partition of unity", t, o);
    let (t, o) = timed(eigen_decay);
    tally.report("3", "eigenfunction viscous decay", t, o);
    let (t, o) = timed(euler_energy);
    tally.report("4", "Euler energy conservation", t, o);
    let (t, o) = timed(maximum_principle);
    tally.report("5", "vorticity maximum principle", t, o);
    let (t, o) = timed(shell_uniformity);
    tally.report("6", "shell ratio uniformity", t, o);
    let (t, o) = timed(mid_band);
    tally.report("7", "mid-band logarithmic estimate", t, o);

    let serial = scratch("sweep-jobs1");
    let t = Instant::now();
    match rate_sweep(&serial) {
        Ok([a, b, c]) => {
            tally.report("8a", "sup error strictly decreasing", t, a);
            tally.report("8b", "fitted slope above the Osgood exponent", t, b);
            tally.report("8c", "delta dominated by the fitted envelope", t, c);
        }
        Err(e) => {
            for id in ["8a", "8b", "8c"] {
                tally.report(id, "rate sweep", t, Err(e.clone()));
            }
        }
    }
    let t = Instant::now();
    tally.report("9", "eigenfunction rate", t, eigen_rate(&scratch("sweep-eigen")));
    let t = Instant::now();
    tally.report("10", "commutator uniformity", t, commutator(&serial));
    let t = Instant::now();
    tally.report("11", "jobs 1 vs jobs 8 CSV", t, determinism(&serial, &scratch("sweep-jobs8")));

    println!("acceptance: {} failed", tally.failed);
    if tally.failed > 0 {
        std::process::exit(1);
    }
}
