//! Files written into the output directory.

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use lpvv_core::flow::write_snapshot;
use lpvv_core::harness::{RateReport, Sweep};
use lpvv_core::SpectralField;
use serde::Serialize;

use crate::error::CliError;

pub fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn write_text(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    write_text(dir, name, &text)
}

pub fn write_field(
    dir: &Path,
    name: &str,
    components: &[&SpectralField],
    t: f64,
    nu: f64,
    seed: u64,
) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
    match write_snapshot(BufWriter::new(file), components, t, nu, seed) {
        Err(lpvv_core::Error::Io(e)) => Err(CliError::io(&path, e)),
        other => other.map(|_| path).map_err(CliError::from),
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    fit: &'a lpvv_core::harness::RateFit,
    normalizer: &'a lpvv_core::harness::Normalizer,
    uniformity: &'a lpvv_core::harness::Uniformity,
    v0_l2: f64,
    omega0_sup: f64,
    members: Vec<MemberSummary>,
    config: &'a lpvv_core::harness::SweepConfig,
}

#[derive(Serialize)]
struct MemberSummary {
    n: u32,
    nu: f64,
    err_sup: f64,
    delta_max: f64,
    low_ratio: f64,
    high_ratio: f64,
    low_degenerate: bool,
}

/// `report.csv`, `summary.json` and final-time vorticity snapshots under `dir`.
pub fn write_report(report: &RateReport, sweep: &Sweep, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    ensure_dir(dir)?;
    let mut paths = vec![write_text(dir, "report.csv", &report.to_csv())?];
    let summary = Summary {
        fit: &report.fit,
        normalizer: &report.normalizer,
        uniformity: &report.uniformity,
        v0_l2: report.v0_l2,
        omega0_sup: report.omega0_sup,
        members: report
            .members
            .iter()
            .map(|m| MemberSummary {
                n: m.n,
                nu: m.nu,
                err_sup: m.err_sup,
                delta_max: m.delta.iter().copied().fold(0.0, f64::max),
                low_ratio: m.low_ratio,
                high_ratio: m.high_ratio,
                low_degenerate: m.low_degenerate,
            })
            .collect(),
        config: &report.config,
    };
    paths.push(write_json(dir, "summary.json", &summary)?);

    let snaps = dir.join("snapshots");
    ensure_dir(&snaps)?;
    let seed = sweep.config.seed;
    let e = &sweep.euler_final;
    paths.push(write_field(&snaps, "euler.lpvv", &[&e.omega], e.t, 0.0, seed)?);
    for m in &sweep.members {
        let s = &m.final_state;
        paths.push(write_field(&snaps, &format!("ns_n{}.lpvv", m.n), &[&s.omega], s.t, s.nu, seed)?);
    }
    Ok(paths)
}
