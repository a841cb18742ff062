// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

fn qthermo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qthermo")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn table(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

const PD: &str = "[channel]\nkind = \"pd_markov\"\ngamma = 1.0\nomega = 1.0\n[initial_state]\nx = 0.5\ny = 0.7\nz = 0.0\n[run]\nt_max = 2.0\ndt = 1e-3\n";

#[test]
fn version_flag() {
    let out = qthermo(&["--version"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("qthermo "));
}

#[test]
fn simulate_writes_both_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "pd.toml", PD);
    let out = tmp.path().join("out");
    let o = qthermo(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let traj = table(&out.join("trajectory.csv"));
    let thermo = table(&out.join("thermo.csv"));
    assert_eq!(traj[0].join(","), "t,x,y,z,hx,hy,hz");
    assert_eq!(traj.len(), 2002);
    assert_eq!(thermo.len(), 2002);
    for row in &thermo[1..] {
        let q_std: f64 = row[4].parse().unwrap();
        let q_ent: f64 = row[5].parse().unwrap();
        assert!(q_std.abs() < 1e-9 && q_ent.abs() < 1e-9);
    }
    assert!(!out.join("thermo.gp").exists());
}

#[test]
fn overrides_change_the_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "pd.toml", PD);
    let out = tmp.path().join("out");
    let o = qthermo(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--dt", "0.01", "--t-max", "0.5"]);
    assert!(o.status.success());
    assert_eq!(table(&out.join("thermo.csv")).len(), 52);
}

#[test]
fn zero_duration_run_has_two_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "z.toml", &PD.replace("t_max = 2.0", "t_max = 1e-3"));
    let out = tmp.path().join("out");
    assert!(qthermo(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]).status.success());
    let thermo = table(&out.join("thermo.csv"));
    assert_eq!(thermo.len(), 3);
    for cell in &thermo[1][4..11] {
        assert_eq!(cell.parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn config_errors_exit_2_without_output() {
    let tmp = tempfile::tempdir().unwrap();
    let cases = [
        PD.replace("gamma = 1.0", "gamma = 1.0\ncolour = 3"),
        PD.replace("gamma = 1.0", "gamma = -1.0"),
        PD.replace("x = 0.5", "x = 0.9"),
        PD.replace("[run]", "[run]\nformulations = []"),
        "not toml at all [".to_owned(),
    ];
    for (i, text) in cases.iter().enumerate() {
        let cfg = write(tmp.path(), &format!("bad{i}.toml"), text);
        let out = tmp.path().join(format!("out{i}"));
        let o = qthermo(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "case {i}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("error=config reason="), "{err}");
        assert!(!out.exists(), "case {i} wrote output");
    }
}

#[test]
fn numerical_failure_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    let text = "[channel]\nkind = \"gad\"\ngamma0 = 50.0\nte = 10.0\n[initial_state]\nz = 0.9\n[run]\nt_max = 1.0\ndt = 0.25\n";
    let cfg = write(tmp.path(), "gad.toml", text);
    let out = tmp.path().join("out");
    let o = qthermo(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error=numerical"));
    assert!(!out.exists());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qthermo(&["reproduce", "fig-unknown", "--out", "x"]).status.code(), Some(2));
    assert_eq!(qthermo(&["simulate"]).status.code(), Some(2));
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "scan.toml", "[scan]\ns_min = 1.0\ns_max = 2.0\ns_step = 0.5\n");
    let o = qthermo(&["nm-scan", "--config", &cfg, "--out", "x", "--dt", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scan_rows() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "scan.toml", "[scan]\ns_min = 0.5\ns_max = 6.0\ns_step = 0.5\nemit_plot_script = true\n");
    let out = tmp.path().join("out");
    assert!(qthermo(&["nm-scan", "--config", &cfg, "--out", out.to_str().unwrap()]).status.success());
    let rows = table(&out.join("nm_scan.csv"));
    assert_eq!(rows.len(), 13);
    assert!(out.join("nm_scan.gp").exists());
    for row in &rows[1..] {
        let s: f64 = row[0].parse().unwrap();
        let n_q: f64 = row[1].parse().unwrap();
        if s <= 2.0 {
            assert_eq!(n_q, 0.0);
            assert_eq!(row[4], "0");
        } else {
            assert_eq!(row[4], "1");
            assert!(n_q > 0.0);
            // finite intervals past s = 4
            assert_eq!(row[7], if s > 4.0 { "0" } else { "1" }, "s = {s}");
        }
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn reproduce_gad_flags_the_divergence() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("gad");
    assert!(qthermo(&["reproduce", "fig-gad", "--out", out.to_str().unwrap()]).status.success());
    let rows = table(&out.join("temperatures.csv"));
    let flagged: Vec<_> = rows[1..].iter().filter(|r| r[4] == "1").collect();
    assert_eq!(flagged.len(), 1);
    assert_eq!(flagged[0][2], "divergent");
    assert!(rows[1..].iter().all(|r| r[8] == "0"));
    assert!(out.join("plus/thermo.csv").exists() && out.join("minus/trajectory.csv").exists());
}
