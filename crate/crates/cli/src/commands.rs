//! Subcommand drivers. Each returns whether its audits passed.

use std::path::Path;

use lpvv_core::field::Exponent;
use lpvv_core::flow::{diagnostics, evolve, random_rough_vorticity, refined_sup, FlowState};
use lpvv_core::harness::{initial_vorticity, run_sweep, uniform_times, RateReport, SweepConfig};
use lpvv_core::lp::{besov_norm, bony_residual, shell_cz_audit, shell_norms, spread, BesovSpec, DyadicPartition};
use lpvv_core::Grid2D;
use serde::Serialize;

use crate::args::{RunConfig, SubcommandKind};
use crate::config::{echo, sweep_config, RawConfig};
use crate::error::CliError;
use crate::output::{ensure_dir, write_field, write_json, write_report, write_text};

/// Largest deviation of `Σ_j Δ_j` symbols from 1 allowed by `partition-check`.
pub const UNITY_TOL: f64 = 1e-12;
pub const BONY_TOL: f64 = 1e-10;
pub const SHELL_SPREAD_TOL: f64 = 2.0;
pub const ENERGY_DRIFT_TOL: f64 = 1e-8;
pub const MAX_PRINCIPLE_TOL: f64 = 1e-6;
pub const UNIFORMITY_TOL: f64 = 10.0;
pub const MID_BAND_TOL: f64 = 1.5;

/// Keys accepted by subcommands that only need a grid and initial data.
const FIELD_KEYS: &[&str] = &["grid_N", "seed", "slope", "cutoff", "initial"];

pub fn run(rc: &RunConfig) -> Result<bool, CliError> {
    let mut raw = match &rc.config {
        Some(p) => RawConfig::read(p)?,
        None => RawConfig::default(),
    };
    for s in &rc.overrides {
        raw.set(s)?;
    }
    if let Some(seed) = rc.seed {
        raw.insert("seed", seed.to_string());
    }
    match rc.subcommand {
        SubcommandKind::PartitionCheck => partition_check(&raw, &rc.out),
        SubcommandKind::Besov => besov(&raw, &rc.out),
        SubcommandKind::Solve => solve(&raw, &rc.out),
        SubcommandKind::VvSweep => vv_sweep(&raw, &rc.out, rc.jobs),
        SubcommandKind::ProofAudit => proof_audit(&raw, &rc.out, rc.jobs),
    }
}

/// Grid and initial field from the field keys, with a default grid size.
fn field_setup(raw: &RawConfig, default_n: usize) -> Result<(SweepConfig, Grid2D, DyadicPartition), CliError> {
    let mut c = SweepConfig::new(vec![1], 1.0);
    c.grid_n = raw.get("grid_N")?.unwrap_or(default_n);
    c.cutoff = raw.get("cutoff")?.unwrap_or(c.grid_n / 4);
    if let Some(s) = raw.get("seed")? {
        c.seed = s;
    }
    if let Some(s) = raw.get("slope")? {
        c.slope = s;
    }
    if let Some(i) = raw.get("initial")? {
        c.initial = i;
    }
    c.validate()?;
    let grid = Grid2D::new(c.grid_n)?;
    let part = DyadicPartition::for_grid(&grid)?;
    Ok((c, grid, part))
}

fn verdict(name: &str, passed: bool, detail: String) -> bool {
    eprintln!("{name}: {} ({detail})", if passed { "pass" } else { "FAIL" });
    passed
}

#[derive(Serialize)]
struct PartitionSummary {
    grid_n: usize,
    radii: usize,
    unity_deviation: f64,
    bony_pairs: usize,
    bony_max_residual: f64,
    passed: bool,
}

fn partition_check(raw: &RawConfig, out: &Path) -> Result<bool, CliError> {
    let allowed: Vec<&str> = FIELD_KEYS.iter().chain(&["radii", "pairs"]).copied().collect();
    raw.check_keys(&allowed, &[])?;
    let (c, grid, part) = field_setup(raw, 128)?;
    let radii: usize = raw.get("radii")?.unwrap_or(1000);
    let pairs: usize = raw.get("pairs")?.unwrap_or(20);
    // Radii from the origin to the lattice corner.
    let r_max = std::f64::consts::SQRT_2 * (grid.n() / 2) as f64;
    let unity_deviation = (0..radii)
        .map(|i| {
            let r = r_max * (i as f64 + 0.5) / radii as f64;
            let total: f64 = part.shells().map(|j| part.inhomogeneous(j, r)).sum();
            (total - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let cutoff = (grid.n() / 4).max(1);
    let mut bony_max_residual = 0.0f64;
    for k in 0..pairs as u64 {
        let f = random_rough_vorticity(c.seed.wrapping_add(2 * k), 1.0, cutoff, &grid)?;
        let g = random_rough_vorticity(c.seed.wrapping_add(2 * k + 1), 1.0, cutoff, &grid)?;
        bony_max_residual = bony_max_residual.max(bony_residual(&f, &g, &part)?.residual);
    }
    let passed = verdict("partition of unity", unity_deviation <= UNITY_TOL, format!("{unity_deviation:e}"))
        & verdict("bony identity", bony_max_residual <= BONY_TOL, format!("{bony_max_residual:e}"));
    ensure_dir(out)?;
    write_json(
        out,
        "summary.json",
        &PartitionSummary {
            grid_n: grid.n(),
            radii,
            unity_deviation,
            bony_pairs: pairs,
            bony_max_residual,
            passed,
        },
    )?;
    Ok(passed)
}

#[derive(Serialize)]
struct BesovSummary {
    s: f64,
    p: String,
    q: String,
    homogeneous: bool,
    vorticity_norm: f64,
    velocity_norm: f64,
    /// `(j, ‖Δ_j ω‖_{L^p})`.
    vorticity_shells: Vec<(i32, f64)>,
    shell_ratio_spread: Option<f64>,
    passed: bool,
}

fn besov(raw: &RawConfig, out: &Path) -> Result<bool, CliError> {
    let allowed: Vec<&str> = FIELD_KEYS.iter().chain(&["s", "p", "q", "homogeneous"]).copied().collect();
    raw.check_keys(&allowed, &[])?;
    let (c, grid, part) = field_setup(raw, 256)?;
    let spec = BesovSpec::new(
        raw.get("s")?.unwrap_or(0.0),
        raw.get("p")?.unwrap_or(Exponent::Infinity),
        raw.get("q")?.unwrap_or(Exponent::Infinity),
        raw.get("homogeneous")?.unwrap_or(true),
    )?;
    let omega = initial_vorticity(&c, &grid)?;
    let v = lpvv_core::flow::biot_savart(&omega)?;
    let ratios = shell_cz_audit(&omega, &part)?;
    let shell_ratio_spread = spread(ratios.iter().map(|r| r.ratio));
    let vorticity_norm = besov_norm(&omega, &spec, &part);
    let passed = vorticity_norm.is_finite()
        & verdict(
            "shell ratio spread",
            shell_ratio_spread.is_some_and(|s| s <= SHELL_SPREAD_TOL),
            format!("{shell_ratio_spread:?}"),
        );
    eprintln!("besov norm of vorticity: {vorticity_norm:e}");
    ensure_dir(out)?;
    write_json(
        out,
        "summary.json",
        &BesovSummary {
            s: spec.s,
            p: spec.p.to_string(),
            q: spec.q.to_string(),
            homogeneous: spec.homogeneous,
            vorticity_norm,
            velocity_norm: besov_norm(&v, &spec, &part),
            vorticity_shells: shell_norms(&omega, spec.p, spec.homogeneous, &part),
            shell_ratio_spread,
            passed,
        },
    )?;
    Ok(passed)
}

#[derive(Serialize)]
struct SolveSummary {
    nu: f64,
    t_final: f64,
    dt: f64,
    energy_drift: f64,
    max_vorticity_ratio: f64,
    energy_monotone: bool,
    passed: bool,
}

fn solve(raw: &RawConfig, out: &Path) -> Result<bool, CliError> {
    let allowed: Vec<&str> = FIELD_KEYS.iter().chain(&["T", "dt", "nu", "sample_times"]).copied().collect();
    raw.check_keys(&allowed, &["T"])?;
    let (c, grid, part) = field_setup(raw, 256)?;
    let t_final: f64 = raw.get("T")?.expect("checked above");
    let nu: f64 = raw.get("nu")?.unwrap_or(0.0);
    let dt: f64 = raw.get("dt")?.unwrap_or(t_final / 512.0);
    let times: Vec<f64> = raw.get_list("sample_times")?.unwrap_or_else(|| uniform_times(t_final, 64));
    let start = FlowState::new(initial_vorticity(&c, &grid)?, nu)?;
    let d0 = diagnostics(&start, &part);
    let sup0 = refined_sup(&start.omega);

    let mut csv = String::from("t,energy,enstrophy,max_vorticity,refined_sup,c1star\n");
    let mut energies = vec![d0.energy];
    let mut sup_ratio = 1.0f64;
    let mut last = start.clone();
    let row = |s: &FlowState, csv: &mut String| -> (f64, f64) {
        let d = diagnostics(s, &part);
        let sup = refined_sup(&s.omega);
        csv.push_str(&format!(
            "{:e},{:e},{:e},{:e},{:e},{:e}\n",
            s.t, d.energy, d.enstrophy, d.max_vorticity, sup, d.c1star_norm
        ));
        (d.energy, sup)
    };
    row(&start, &mut csv);
    evolve(&start, dt, &times, |s| {
        if s.t > 0.0 {
            let (e, sup) = row(s, &mut csv);
            energies.push(e);
            sup_ratio = sup_ratio.max(if sup0 > 0.0 { sup / sup0 } else { 0.0 });
        }
        last = s.clone();
        Ok(())
    })?;
    let e_end = *energies.last().expect("initial energy recorded");
    let energy_drift = if d0.energy > 0.0 { (e_end - d0.energy).abs() / d0.energy } else { 0.0 };
    let energy_monotone = energies.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
    let passed = if nu == 0.0 {
        verdict("energy conservation", energy_drift <= ENERGY_DRIFT_TOL, format!("{energy_drift:e}"))
    } else {
        verdict("energy decay", energy_monotone, format!("drift {energy_drift:e}"))
            & verdict(
                "vorticity maximum principle",
                sup_ratio <= 1.0 + MAX_PRINCIPLE_TOL,
                format!("{sup_ratio}"),
            )
    };
    ensure_dir(out)?;
    write_text(out, "diagnostics.csv", &csv)?;
    write_field(out, "final.lpvv", &[&last.omega], last.t, nu, c.seed)?;
    write_json(
        out,
        "summary.json",
        &SolveSummary {
            nu,
            t_final,
            dt,
            energy_drift,
            max_vorticity_ratio: sup_ratio,
            energy_monotone,
            passed,
        },
    )?;
    Ok(passed)
}

fn sweep_and_report(raw: &RawConfig, out: &Path, jobs: usize) -> Result<(RateReport, lpvv_core::harness::Sweep), CliError> {
    let c = sweep_config(raw, &[])?;
    ensure_dir(out)?;
    write_text(out, "config.cfg", &echo(&c))?;
    let sweep = run_sweep(&c, jobs)?;
    for m in &sweep.members {
        let err = m.samples.iter().map(|s| s.split.total).fold(0.0, f64::max);
        eprintln!("member n = {} (nu = {:e}): sup error {err:e}", m.n, m.nu);
    }
    let report = RateReport::from_sweep(&sweep)?;
    Ok((report, sweep))
}

fn vv_sweep(raw: &RawConfig, out: &Path, jobs: usize) -> Result<bool, CliError> {
    let (report, sweep) = sweep_and_report(raw, out, jobs)?;
    write_report(&report, &sweep, out)?;
    let f = &report.fit;
    if !f.monotone {
        eprintln!("note: sup error is not strictly decreasing in n");
    }
    Ok(verdict("rate", f.theta > 0.0 && f.theta >= f.exponent, format!("theta {} vs {}", f.theta, f.exponent))
        & verdict("envelope", f.envelope_ok, format!("margin {}", f.envelope_margin)))
}

#[derive(Serialize)]
struct MemberAudit<'a> {
    n: u32,
    ode: &'a lpvv_core::harness::OdeAudit,
    commutator_ratio: &'a [f64],
    low_ratio: f64,
    high_ratio: f64,
    low_degenerate: bool,
    min_triangle_ratio: Option<f64>,
    mid_band_log_max: f64,
}

#[derive(Serialize)]
struct AuditSummary<'a> {
    uniformity: &'a lpvv_core::harness::Uniformity,
    normalizer: &'a lpvv_core::harness::Normalizer,
    fit: &'a lpvv_core::harness::RateFit,
    members: Vec<MemberAudit<'a>>,
    passed: bool,
}

fn within(spread: Option<f64>) -> bool {
    spread.map_or(true, |s| s <= UNIFORMITY_TOL)
}

fn proof_audit(raw: &RawConfig, out: &Path, jobs: usize) -> Result<bool, CliError> {
    let (report, sweep) = sweep_and_report(raw, out, jobs)?;
    write_report(&report, &sweep, out)?;
    let u = &report.uniformity;
    let members: Vec<MemberAudit> = report
        .members
        .iter()
        .map(|m| MemberAudit {
            n: m.n,
            ode: &m.ode,
            commutator_ratio: &m.commutator_ratio,
            low_ratio: m.low_ratio,
            high_ratio: m.high_ratio,
            low_degenerate: m.low_degenerate,
            min_triangle_ratio: m.min_triangle_ratio,
            mid_band_log_max: m.samples.iter().filter_map(|s| s.mid_band_log).fold(0.0, f64::max),
        })
        .collect();
    let triangle = members
        .iter()
        .filter_map(|m| m.min_triangle_ratio)
        .fold(f64::INFINITY, f64::min);
    let mid = members.iter().map(|m| m.mid_band_log_max).fold(0.0, f64::max);
    let passed = verdict("triangle split", triangle >= 1.0 - 1e-12, format!("min {triangle}"))
        & verdict("mid-band logarithmic bound", mid <= MID_BAND_TOL, format!("max {mid}"))
        & verdict("commutator uniformity", within(u.commutator_spread), format!("{:?}", u.commutator_spread))
        & verdict(
            "band constants do not grow with n",
            within(u.high_band_growth) && within(u.low_band_growth),
            format!(
                "growth high {:?}, low {:?}; spread high {:?}, low {:?}",
                u.high_band_growth, u.low_band_growth, u.high_band_spread, u.low_band_spread
            ),
        )
        & verdict(
            "inequality constants do not grow with n",
            [u.ode_total_growth, u.transport_growth, u.viscous_growth, u.tau_growth].into_iter().all(within),
            format!(
                "growth total {:?}, transport {:?}, viscous {:?}, tau {:?}; spread tau {:?}",
                u.ode_total_growth, u.transport_growth, u.viscous_growth, u.tau_growth, u.tau_spread
            ),
        );
    write_json(
        out,
        "audit.json",
        &AuditSummary {
            uniformity: u,
            normalizer: &report.normalizer,
            fit: &report.fit,
            members,
            passed,
        },
    )?;
    Ok(passed)
}
