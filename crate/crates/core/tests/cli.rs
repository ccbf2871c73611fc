//! End-to-end tests of the `qthermo` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qthermo::cli::{RunConfig, RunReport};

const VACUUM: &str = r#"
schema_version = 1
label = "vacuum"
system = "cavity"
eta_rel = 0.01
omega_c = 5.0
kt0 = 0.0
n0 = 5
t_max = 100.0
step = 0.02
stride = 25
"#;

const THERMAL: &str = r#"
schema_version = 1
label = "thermal"
system = "cavity"
eta_rel = 0.01
omega_c = 5.0
kt0 = 15.0
n0 = 5
t_max = 60.0
step = 0.02
stride = 25
"#;

fn qthermo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qthermo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

/// Blank-line separated blocks of a plot data file.
fn blocks(dat: &str) -> Vec<Vec<(f64, f64)>> {
    let mut out = vec![Vec::new()];
    for line in dat.lines().filter(|l| !l.starts_with('#')) {
        if line.trim().is_empty() {
            out.push(Vec::new());
        } else {
            let mut it = line.split_whitespace().map(|x| x.parse::<f64>().unwrap());
            out.last_mut().unwrap().push((it.next().unwrap(), it.next().unwrap()));
        }
    }
    out.retain(|b| !b.is_empty());
    out
}

#[test]
fn simulate_writes_trajectory_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "vacuum.toml", VACUUM);
    let out = dir.path().join("out");
    let result = qthermo(&["simulate", &config, "--out", out.to_str().unwrap()]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    assert!(result.stderr.is_empty());

    let csv = fs::read_to_string(out.join("vacuum.csv")).unwrap();
    assert!(csv.starts_with("# qthermo"));
    assert!(csv.lines().any(|l| l.starts_with("# units:")));
    let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(
        header,
        "time,re_u,im_u,abs_u,v,energy,entropy,temperature,temp_valid,free_energy,f_valid,heat_cum,work_cum,omega_renorm,gamma,gamma_tilde"
    );
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 201);
    assert_eq!(rows[0][5].parse::<f64>().unwrap(), 5.0);

    let report = RunReport::from_json(&fs::read_to_string(out.join("vacuum.report.json")).unwrap()).unwrap();
    assert_eq!(report.config, RunConfig::from_toml_str(VACUUM).unwrap());
    assert_eq!(report.counts.singular_bands, 1);
    assert_eq!(report.bound_state, Some(false));
    assert!(report.diagnostics.max_normalization_error < 1e-9);
}

#[test]
fn report_config_echo_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let result = qthermo(&["simulate", "fig6", "--out", out, "--stride", "50"]);
    assert!(result.status.success());
    let text = fs::read_to_string(dir.path().join("fig6.report.json")).unwrap();
    let report = RunReport::from_json(&text).unwrap();
    let echoed = serde_json::to_string(&report.config).unwrap();
    let reparsed: RunConfig = serde_json::from_str(&echoed).unwrap();
    assert_eq!(reparsed, report.config);
    assert_eq!(report.config.stride, 50);
    assert_eq!(RunConfig::from_toml_str(&report.config.to_toml_string()).unwrap(), report.config);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "thermal.toml", THERMAL);
    for sub in ["a", "b"] {
        let out = dir.path().join(sub);
        assert!(qthermo(&["simulate", &config, "--out", out.to_str().unwrap(), "--verify-step"]).status.success());
    }
    for file in ["thermal.csv", "thermal.report.json"] {
        assert_eq!(
            fs::read(dir.path().join("a").join(file)).unwrap(),
            fs::read(dir.path().join("b").join(file)).unwrap()
        );
    }
    let report = RunReport::from_json(&fs::read_to_string(dir.path().join("a/thermal.report.json")).unwrap()).unwrap();
    let conv = report.convergence.expect("verify-step reports convergence");
    assert!(conv.max_u_difference > 0.0 && conv.max_u_difference < 1e-3);
    assert!(conv.max_energy_difference < 1e-4);
}

#[test]
fn configuration_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let typo = write(dir.path(), "typo.toml", &format!("{VACUUM}kT0 = 1.0\n"));
    let stride = write(dir.path(), "stride.toml", &VACUUM.replace("stride = 25", "stride = 7"));
    for args in [
        vec!["simulate", typo.as_str()],
        vec!["simulate", stride.as_str()],
        vec!["simulate", "no-such-preset"],
        vec!["sweep", "fig2"],
        vec!["simulate", "fig2", "--stride", "0"],
    ] {
        let result = qthermo(&args);
        assert_eq!(result.status.code(), Some(2), "{args:?}");
        assert!(!result.stderr.is_empty());
    }
}

#[test]
fn plotdata_encodes_singular_band_as_gap() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "vacuum.toml", VACUUM);
    let out = dir.path().to_str().unwrap();
    assert!(qthermo(&["simulate", &config, "--out", out]).status.success());
    let csv = dir.path().join("vacuum.csv");
    let result = qthermo(&["plotdata", csv.to_str().unwrap(), "--quantity", "temperature,entropy"]);
    assert!(result.status.success());

    let temperature = blocks(&fs::read_to_string(dir.path().join("vacuum.temperature.dat")).unwrap());
    assert_eq!(temperature.len(), 2);
    assert!(temperature[0].iter().skip(1).all(|&(_, t)| t < 0.0));
    assert!(temperature[1].iter().all(|&(_, t)| t > 0.0));
    let entropy = blocks(&fs::read_to_string(dir.path().join("vacuum.entropy.dat")).unwrap());
    assert_eq!(entropy.len(), 1);
    assert_eq!(entropy[0].len(), 201);
}

#[test]
fn plotdata_defaults_to_all_quantities_and_rejects_unknown_ones() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "thermal.toml", THERMAL);
    let out = dir.path().to_str().unwrap();
    assert!(qthermo(&["simulate", &config, "--out", out]).status.success());
    let csv = dir.path().join("thermal.csv");

    let plots = dir.path().join("plots");
    let result = qthermo(&["plotdata", csv.to_str().unwrap(), "--out", plots.to_str().unwrap()]);
    assert!(result.status.success());
    assert_eq!(fs::read_dir(&plots).unwrap().count(), qthermo::cli::PLOT_QUANTITIES.len());

    let entropy = blocks(&fs::read_to_string(plots.join("thermal.entropy.dat")).unwrap());
    assert_eq!(entropy.len(), 1);
    assert!(entropy[0].windows(2).all(|w| w[1].1 >= w[0].1 - 1e-4));

    let result = qthermo(&["plotdata", csv.to_str().unwrap(), "--quantity", "entropy,pressure"]);
    assert_eq!(result.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("pressure") && stderr.contains("free_energy"));
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = format!(
        "schema_version = 1\nsweep_key = \"kt0\"\nvalues = [0.0, 3.0, 7.5]\n\n[base]\n{}",
        THERMAL.replace("t_max = 60.0", "t_max = 20.0")
    );
    let path = write(dir.path(), "sweep.toml", &sweep);
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let out = dir.path().join(format!("w{workers}"));
        let result = qthermo(&["sweep", &path, "--workers", workers, "--out", out.to_str().unwrap()]);
        assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
        outputs.push(fs::read(out.join("sweep.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);

    let text = String::from_utf8(outputs.remove(0)).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "swept_key,swept_value,time,energy,temperature,temp_valid");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 3 * 41);
    let values: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn single_value_sweep_matches_single_run() {
    let dir = tempfile::tempdir().unwrap();
    let base = THERMAL.replace("t_max = 60.0", "t_max = 20.0");
    let sweep = format!("schema_version = 1\nsweep_key = \"kt0\"\nvalues = [15.0]\n\n[base]\n{base}");
    let sweep_path = write(dir.path(), "sweep.toml", &sweep);
    let run_path = write(dir.path(), "run.toml", &base);
    let out = dir.path().to_str().unwrap();
    assert!(qthermo(&["sweep", &sweep_path, "--out", out]).status.success());
    assert!(qthermo(&["simulate", &run_path, "--out", out]).status.success());

    let sweep_rows = data_rows(&fs::read_to_string(dir.path().join("sweep.csv")).unwrap());
    let run_rows = data_rows(&fs::read_to_string(dir.path().join("thermal.csv")).unwrap());
    assert_eq!(sweep_rows.len(), run_rows.len());
    for (s, r) in sweep_rows.iter().zip(&run_rows) {
        assert_eq!((&s[2], &s[3], &s[4], &s[5]), (&r[0], &r[5], &r[7], &r[8]));
    }
}

#[test]
fn failing_sweep_member_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let sweep = format!(
        "schema_version = 1\nsweep_key = \"n0\"\nvalues = [1.0, 2.5]\n\n[base]\n{THERMAL}"
    );
    let path = write(dir.path(), "sweep.toml", &sweep);
    let result = qthermo(&["sweep", &path]);
    assert_eq!(result.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&result.stderr).contains("2.5"));
}
