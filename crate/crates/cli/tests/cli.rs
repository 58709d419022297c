use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn staticvac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_staticvac"))
        .args(args)
        .env_remove("STATICVAC_CONFIG")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn verify_schwarzschild_passes() {
    let out = staticvac(&["verify", "--family", "schwarzschild", "--m", "0.2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["pass"], true);
    for c in v["checks"].as_array().unwrap() {
        assert!(c["value"].as_f64().unwrap() <= 1e-9, "{c}");
    }
}

#[test]
fn fold_reports_photon_sphere() {
    let out = staticvac(&["fold"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["result"];
    assert!((r["m_star"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-10);
    assert!((r["u_max"].as_f64().unwrap() - 0.769800358919501).abs() < 1e-10);
}

#[test]
fn branch_above_fold_is_empty() {
    let out = staticvac(&["branch", "--u", "0.9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], serde_json::json!({ "branches": [] }));

    let two = json(&staticvac(&["branch", "--u", "0.5"]));
    let b = two["result"]["branches"].as_array().unwrap();
    assert_eq!(b.len(), 2);
    assert!(b[0].as_f64().unwrap() < 1.0 / 3.0 && b[1].as_f64().unwrap() > 1.0 / 3.0);
}

#[test]
fn modes_kernel_is_four_dimensional() {
    let out = staticvac(&["modes", "--lmax", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let k = &json(&out)["result"]["kernel"];
    assert_eq!(k["dimension"], 4);
    let degrees: Vec<u64> = k["modes"].as_array().unwrap().iter().map(|m| m["l"].as_u64().unwrap()).collect();
    assert_eq!(degrees, [0, 1]);
}

#[test]
fn sweep_csv_has_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let out = staticvac(&["schwarzschild-sweep", "--count", "100", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&csv);
    assert_eq!(header, ["m", "H", "u", "mu", "shi_tam_margin"]);
    assert_eq!(rows.len(), 100);
    for r in &rows {
        assert!((r[1] - 2.0 * (1.0 - 2.0 * r[0]).sqrt()).abs() <= 1e-12);
        assert!((r[2] - 4.0 * r[0] * (1.0 - 2.0 * r[0]).sqrt()).abs() <= 1e-12);
        assert!(r[4] > 0.0);
    }
    // Sweep order survives the parallel map.
    assert!(rows.windows(2).all(|w| w[1][0] > w[0][0]));
}

#[test]
fn levelset_csv_is_a_closed_polyline() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("loop.csv");
    let out = staticvac(&["levelset", "--mu0", "0.5", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&csv);
    assert_eq!(header, ["a", "b"]);
    let (first, last) = (&rows[0], rows.last().unwrap());
    assert!((first[0] - last[0]).hypot(first[1] - last[1]) <= 1e-8);
}

#[test]
fn identical_runs_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let js = dir.path().join(format!("{tag}.json"));
        let out = staticvac(&[
            "--json",
            js.to_str().unwrap(),
            "shoot",
            "--m",
            "0.3",
            "--csv",
            csv.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        (std::fs::read(csv).unwrap(), std::fs::read(js).unwrap())
    };
    assert_eq!(run("a"), run("b"));

    let sweep = || staticvac(&["shi-tam", "--count", "200"]).stdout;
    assert_eq!(sweep(), sweep());
}

#[test]
fn csv_values_carry_seventeen_significant_digits() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("st.csv");
    staticvac(&["shi-tam", "--count", "3", "--csv", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(&csv).unwrap();
    let cell = text.lines().nth(1).unwrap().split(',').next().unwrap();
    let mantissa = cell.split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17, "{cell}");
}

#[test]
fn usage_and_range_errors_exit_two() {
    assert_eq!(staticvac(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(staticvac(&["shoot", "--m", "0.7"]).status.code(), Some(2));
    assert_eq!(staticvac(&["branch", "--u", "-1"]).status.code(), Some(2));
    assert_eq!(staticvac(&["shi-tam", "--count", "0"]).status.code(), Some(2));
    assert_eq!(staticvac(&["--ode-rtol", "0", "fold"]).status.code(), Some(2));
}

#[test]
fn failed_invariant_exits_one_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("strict.toml");
    std::fs::write(&cfg, "[tolerances]\nshot_residual = 1e-16\n").unwrap();
    let out = staticvac(&["--config", cfg.to_str().unwrap(), "shoot", "--m", "0.2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false));
}

#[test]
fn config_from_environment_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(&cfg, "[tolerances]\nshot_residual = 1e-16\n").unwrap();
    let bin = env!("CARGO_BIN_EXE_staticvac");
    let out = Command::new(bin)
        .args(["shoot", "--m", "0.2"])
        .env("STATICVAC_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(&cfg, "[quadrature]\nradial_samples = 64\n").unwrap();
    let out = Command::new(bin)
        .args(["--radial-samples", "1024", "verify", "--m", "0.1"])
        .env("STATICVAC_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    std::fs::write(&cfg, "[tolerances]\nroot = -1.0\n").unwrap();
    let out = Command::new(bin).args(["fold"]).env("STATICVAC_CONFIG", &cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_documents_csv_columns() {
    let out = staticvac(&["schwarzschild-sweep", "--help"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("m, H, u, mu, shi_tam_margin"), "{text}");
}

#[test]
fn remaining_commands_pass() {
    for args in [
        &["verify", "--family", "flat", "--a", "1.5", "--b", "-0.4", "--axis", "0,1,1"][..],
        &["verify", "--family", "shot", "--m", "0.3"],
        &["flat-mu", "--a", "1", "--b", "0.3"],
        &["levelset", "--mu0", "0"],
        &["variation"],
        &["variation", "--base", "schwarzschild", "--m", "0.2", "--r-in", "0.5"],
    ] {
        let out = staticvac(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["pass"], true);
    }
}
