use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lpvv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpvv"))
        .args(args)
        .env_remove("LPVV_OUT")
        .output()
        .expect("spawn lpvv")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli").join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SMALL_SWEEP: &[&str] = &[
    "--set", "n_list=2,3,4", "--set", "T=0.25", "--set", "grid_N=32", "--set", "dt=0.0078125",
];

fn small_sweep(out: &Path, jobs: &str) -> Output {
    let out = out.to_str().unwrap();
    let mut args = vec!["vv-sweep", "--out", out, "--jobs", jobs];
    args.extend_from_slice(SMALL_SWEEP);
    lpvv(&args)
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let o = lpvv(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn help_exits_cleanly() {
    let o = lpvv(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("vv-sweep"));
}

#[test]
fn empty_config_names_every_missing_key() {
    let dir = scratch("empty-config");
    let cfg = dir.join("empty.cfg");
    std::fs::write(&cfg, "# nothing here\n").unwrap();
    let o = lpvv(&["vv-sweep", "--config", cfg.to_str().unwrap(), "--out", dir.join("out").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    assert!(msg.contains("n_list") && msg.contains('T'), "{msg}");
}

#[test]
fn alpha_outside_unit_interval_is_rejected() {
    let dir = scratch("alpha");
    let out = dir.to_str().unwrap();
    let o = lpvv(&["vv-sweep", "--out", out, "--set", "n_list=2,3", "--set", "T=0.1", "--set", "alpha=1.2"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    assert!(stderr(&o).contains("alpha"), "{}", stderr(&o));
}

#[test]
fn unknown_key_is_rejected() {
    let dir = scratch("unknown-key");
    let o = lpvv(&["besov", "--out", dir.to_str().unwrap(), "--set", "colour=blue"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn file_as_output_directory_is_an_io_error() {
    let dir = scratch("blocked");
    let file = dir.join("not-a-dir");
    std::fs::write(&file, "x").unwrap();
    let o = lpvv(&["partition-check", "--out", file.to_str().unwrap(), "--set", "grid_N=32", "--set", "pairs=1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn partition_check_passes_and_writes_a_summary() {
    let dir = scratch("partition");
    let o = lpvv(&["partition-check", "--out", dir.to_str().unwrap(), "--set", "grid_N=64", "--set", "pairs=3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["passed"], true);
    assert!(summary["unity_deviation"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn besov_reports_the_shell_spread() {
    let dir = scratch("besov");
    let o = lpvv(&["besov", "--out", dir.to_str().unwrap(), "--set", "grid_N=64", "--set", "q=2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["q"], "2");
    assert!(summary["shell_ratio_spread"].as_f64().unwrap() <= 2.0);
}

#[test]
fn euler_solve_conserves_energy() {
    let dir = scratch("solve");
    let o = lpvv(&["solve", "--out", dir.to_str().unwrap(), "--set", "grid_N=64", "--set", "T=0.25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.join("diagnostics.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 65);
    assert!(dir.join("final.lpvv").is_file());
}

#[test]
fn sweep_writes_one_row_per_member_sample() {
    let dir = scratch("rows");
    let o = small_sweep(&dir, "1");
    assert!(matches!(o.status.code(), Some(0 | 1)), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.join("report.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,nu,t,err_sup,low,mid,high,besov_b0,delta_n,envelope"));
    assert_eq!(lines.count(), 3 * 65);
    for name in ["summary.json", "config.cfg", "snapshots/euler.lpvv", "snapshots/ns_n4.lpvv"] {
        assert!(dir.join(name).is_file(), "missing {name}");
    }
}

#[test]
fn sweep_output_is_reproducible_across_runs_and_jobs() {
    let a = scratch("repeat-a");
    let b = scratch("repeat-b");
    small_sweep(&a, "1");
    small_sweep(&b, "3");
    for name in ["report.csv", "summary.json", "config.cfg"] {
        let x = std::fs::read(a.join(name)).unwrap();
        let y = std::fs::read(b.join(name)).unwrap();
        assert!(x == y, "{name} differs");
    }
}

#[test]
fn echoed_config_reruns_to_the_same_report() {
    let a = scratch("echo-a");
    small_sweep(&a, "1");
    let b = scratch("echo-b");
    let o = lpvv(&[
        "vv-sweep",
        "--config",
        a.join("config.cfg").to_str().unwrap(),
        "--out",
        b.to_str().unwrap(),
        "--jobs",
        "1",
    ]);
    assert!(matches!(o.status.code(), Some(0 | 1)), "{}", stderr(&o));
    assert_eq!(std::fs::read(a.join("report.csv")).unwrap(), std::fs::read(b.join("report.csv")).unwrap());
}
