use qkernel::cli::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qkernel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn list_shows_every_identity() {
    let (code, out, _) = cli(&["list"]);
    assert_eq!(code, EXIT_OK);
    for def in qkernel::identities::registry() {
        assert!(out.contains(def.id), "{}", def.id);
    }
    let (code, json, _) = cli(&["list", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), qkernel::identities::registry().len());
}

#[test]
fn check_passes_at_the_default_point() {
    let (code, out, _) = cli(&["check", "rogers_6phi5"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("pass"));
}

#[test]
fn check_accepts_both_parameter_spellings() {
    let (a, out_a, _) = cli(&["check", "q_gauss", "--c", "0.02", "--format", "json"]);
    let (b, out_b, _) = cli(&["check", "q_gauss", "c=0.02", "--format=json"]);
    assert_eq!((a, b), (EXIT_OK, EXIT_OK));
    assert_eq!(out_a, out_b);
    let v: serde_json::Value = serde_json::from_str(&out_a).unwrap();
    assert_eq!(v["params"]["c"], 0.02);
    assert_eq!(v["status"], "pass");
}

#[test]
fn check_failure_and_usage_codes() {
    let (code, _, _) = cli(&["check", "q_gauss", "--c", "0.02", "--tol", "1e-30"]);
    assert_eq!(code, EXIT_FAIL);
    let (code, _, err) = cli(&["check", "no_such_identity"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(!err.is_empty());
    let (code, _, _) = cli(&["check", "q_gauss", "--zeta", "1"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = cli(&["check", "q_gauss", "--c", "0.1", "--c", "0.2"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = cli(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn suite_csv_has_one_row_per_draw() {
    let (code, out, _) =
        cli(&["suite", "theta_phi_product", "q_gauss", "--draws", "2", "--seed", "4", "--format", "csv"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "id,draw,rel_err,abs_err,status");
    let pinned: usize = ["theta_phi_product", "q_gauss"]
        .iter()
        .map(|id| qkernel::identities::lookup(id).unwrap().pinned_points().len())
        .sum();
    assert_eq!(lines.len(), 1 + 2 * 2 + pinned);
}

#[test]
fn deterministic_suite_json_is_reproducible() {
    let args = [
        "suite",
        "aw_integral",
        "verma_jain_4phi3",
        "--draws",
        "2",
        "--seed",
        "11",
        "--format",
        "json",
        "--deterministic",
    ];
    let (a, first, _) = cli(&args);
    let (b, second, _) = cli(&args);
    assert_eq!((a, b), (EXIT_OK, EXIT_OK));
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["seed"], 11);
    assert!(v.get("generated_at").is_none());
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn suite_echoes_threshold_overrides() {
    let (code, out, _) = cli(&[
        "suite",
        "q_gauss",
        "--draws",
        "1",
        "--threshold",
        "q_gauss=1e-6",
        "--format",
        "json",
        "--deterministic",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["thresholds"]["q_gauss"], 1e-6);
    assert_eq!(v["reports"][0]["threshold"], 1e-6);
    let (code, _, _) = cli(&["suite", "q_gauss", "--threshold", "q_gauss"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn suite_needs_ids_or_all() {
    assert_eq!(cli(&["suite"]).0, EXIT_USAGE);
    assert_eq!(cli(&["suite", "--all", "q_gauss"]).0, EXIT_USAGE);
}

#[test]
fn suite_writes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("qkernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let (code, out, _) = cli(&["suite", "q_gauss", "--draws", "1", "--format", "csv", "-o", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("id,draw,rel_err"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn eval_poch_and_phi() {
    let (code, out, _) = cli(&["eval", "poch", "--a", "0.5", "--q", "0.5", "--n", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["value"]["re"].as_f64().unwrap() - 0.375).abs() < 1e-15);

    // 1phi0(a; -; q, z) = (az; q)_inf / (z; q)_inf
    let (code, out, _) = cli(&["eval", "phi", "--num", "0.3", "--q", "0.5", "--z", "0.4", "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let inf = |x: f64| (0..200).map(|k| 1.0 - x * 0.5f64.powi(k)).product::<f64>();
    assert!((v["value"]["re"].as_f64().unwrap() - inf(0.12) / inf(0.4)).abs() < 1e-14);
}

#[test]
fn eval_qint_and_poly() {
    let (code, out, _) =
        cli(&["eval", "qint", "--lower", "0", "--upper", "1", "--q", "0.5", "--coeffs", "0,1", "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["value"]["re"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-15);

    let (code, out, _) = cli(&[
        "eval", "poly", "--family", "aw", "--n", "0", "--a", "0.1", "--b", "0.2", "--c", "0.3", "--d", "0.4", "--q",
        "0.5", "--theta", "1", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"]["re"], 1.0);

    // a base outside the unit disk is a numerical error, a missing argument a usage error
    assert_eq!(cli(&["eval", "poch", "--a", "0.5", "--q", "1.5"]).0, EXIT_FAIL);
    assert_eq!(cli(&["eval", "poch", "--a", "0.5"]).0, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qkernel");
    let ok = std::process::Command::new(bin).args(["check", "theta_phi_product", "--q", "0.1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("pass"));
    let bad = std::process::Command::new(bin).args(["check", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let seeded = std::process::Command::new(bin)
        .args(["suite", "q_gauss", "--draws", "1", "--format", "json", "--deterministic"])
        .env("QKERNEL_SEED", "17")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&seeded.stdout).unwrap();
    assert_eq!(v["seed"], 17);
}
