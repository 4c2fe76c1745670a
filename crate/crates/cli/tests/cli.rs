//! End-to-end CLI behavior: exit codes, report shape, seeds and files.

use std::path::Path;
use std::process::Command;

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cube-iso"))
}

fn run_json(dir: &Path, args: &[&str]) -> (i32, serde_json::Value) {
    let out = dir.join("report.json");
    let status = exe()
        .args(args)
        .arg("--out")
        .arg(&out)
        .current_dir(dir)
        .status()
        .unwrap();
    let value = if out.exists() {
        serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap()
    } else {
        serde_json::Value::Null
    };
    std::fs::remove_file(&out).ok();
    (status.code().unwrap(), value)
}

#[test]
fn verify_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, report) = run_json(tmp.path(), &["verify", "--n", "4", "--inequality", "main"]);
    assert_eq!(code, 0);
    assert_eq!(report["schema"], "cube-iso/1");
    assert_eq!(report["kind"], "verify/main");
    assert!(report["min_margin"].as_f64().unwrap().abs() <= 1e-9);

    // over the scan cap: usage error, and no report file is written
    let out = tmp.path().join("never.json");
    let status = exe()
        .args(["verify", "--n", "9", "--inequality", "main", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code().unwrap(), 2);
    assert!(!out.exists(), "no partial report on error");

    // malformed flag set
    let status = exe().args(["verify", "--inequality", "main"]).output().unwrap();
    assert_eq!(status.status.code().unwrap(), 2);
}

#[test]
fn verify_harris_and_region_checks() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, report) = run_json(tmp.path(), &["verify", "--n", "3", "--inequality", "harris"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["scanned"], 400);

    let (code, _) = run_json(
        tmp.path(),
        &["verify", "--n", "3", "--inequality", "harris", "--bias", "0.3,0.6,0.3"],
    );
    assert_eq!(code, 0);

    let (code, report) = run_json(
        tmp.path(),
        &["verify", "--n", "4", "--inequality", "plus1", "--trials", "500", "--seed", "3"],
    );
    assert_eq!(code, 0);
    assert_eq!(report["manifest"]["seed"], 3);

    let (code, report) = run_json(
        tmp.path(),
        &["verify", "--n", "1", "--inequality", "gpos", "--grid-step", "0.01"],
    );
    assert_eq!(code, 0);
    assert!(report["min_margin"].as_f64().unwrap() >= -1e-9);
}

#[test]
fn shift_example_masks() {
    // A={0}, B={1} in Q_1 compresses to A mask "2", B mask "1"
    let tmp = tempfile::tempdir().unwrap();
    let (code, report) =
        run_json(tmp.path(), &["shift", "--n", "1", "--partition", "1", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["final_a"], "2");
    assert_eq!(report["results"]["final_b"], "1");

    // overlapping masks are a usage error
    let (code, _) = run_json(tmp.path(), &["shift", "--n", "1", "--partition", "1", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn stability_half_cube_reports_first_coordinate() {
    // A = {x_1 = 0} (even indices), B the complement: I = [1], symdiff 0
    let tmp = tempfile::tempdir().unwrap();
    let a: String = "55".repeat(32);
    let b: String = "aa".repeat(32);
    let (code, report) = run_json(
        tmp.path(),
        &["stability", "--n", "8", "--k", "1", "--partition", &a, &b],
    );
    assert_eq!(code, 0);
    assert_eq!(report["results"]["I"], serde_json::json!([1]));
    assert_eq!(report["results"]["symdiff"], 0.0);
    assert_eq!(report["results"]["hab_exception_mass"], 0.0);

    // the generic table for k=1 reproduces the same answer
    let spec = tmp.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"f": [0.0, 1.0, 1.5, 1.9015074982303726, 2.25, 2.5637238386246066,
                 2.8522612473455586, 3.1214088892721628, 3.375],
            "g_scale": 1.0, "k": 1}"#,
    )
    .unwrap();
    let (code, report) = run_json(
        tmp.path(),
        &[
            "stability", "--n", "8", "--k", "1", "--partition", &a, &b, "--generic-f",
            spec.to_str().unwrap(),
        ],
    );
    assert_eq!(code, 0);
    assert_eq!(report["results"]["I"], serde_json::json!([1]));
    assert!(!report["manifest"]["input_hashes"]["generic_f"].as_str().unwrap().is_empty());

    // hypothesis failure: k=2 against a codim-1 set
    let (code, _) = run_json(
        tmp.path(),
        &["stability", "--n", "8", "--k", "2", "--partition", &a, &b],
    );
    assert_eq!(code, 2);
}

#[test]
fn search_seeded_reruns_are_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let args = [
        "search", "--objective", "conj-fixedk", "--K", "5", "--n", "3", "--seed", "7",
        "--iters", "20000", "--restarts", "3",
    ];
    let (code1, r1) = run_json(tmp.path(), &args);
    let (code2, r2) = run_json(tmp.path(), &args);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    assert_eq!(r1["results"], r2["results"]);
    // K = 5 is comfortably feasible at n = 3: no negative margin
    assert!(r1["results"]["best_value"].as_f64().unwrap() >= -1e-9);
    assert_eq!(r1["results"]["confirmed_negative"], false);

    // without --seed one is generated and recorded
    let (code, r) = run_json(
        tmp.path(),
        &["search", "--objective", "cubesep", "--n", "2", "--iters", "1000", "--restarts", "2"],
    );
    assert_eq!(code, 0);
    assert!(r["manifest"]["seed"].as_u64().is_some());
}

#[test]
fn search_negative_conjecture_margin_exits_zero_with_witness() {
    let tmp = tempfile::tempdir().unwrap();
    let witness = tmp.path().join("w.json");
    let out = tmp.path().join("r.json");
    let status = exe()
        .args([
            "search", "--objective", "conj-fixedk", "--K", "0.1", "--n", "3", "--seed", "11",
            "--iters", "20000", "--restarts", "4", "--witness-out",
        ])
        .arg(&witness)
        .arg("--out")
        .arg(&out)
        .current_dir(tmp.path())
        .status()
        .unwrap();
    // conjecture (not proved) objective: negative margin still exits 0
    assert_eq!(status.code().unwrap(), 0);
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["results"]["confirmed_negative"], true);
    assert_eq!(report["results"]["potential_counterexample"], true);
    let w: serde_json::Value = serde_json::from_slice(&std::fs::read(&witness).unwrap()).unwrap();
    assert!(w["margin"].as_f64().unwrap() < 0.0);
    assert_eq!(w["seed"], 11);
    assert!(w["partition"]["A"].is_string());
}

#[test]
fn census_and_csv_projection() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("census.json");
    let csv = tmp.path().join("census.csv");
    let status = exe()
        .args(["census", "--n", "3", "--out"])
        .arg(&out)
        .arg("--csv")
        .arg(&csv)
        .status()
        .unwrap();
    assert_eq!(status.code().unwrap(), 0);
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    // classes up to automorphism: empty, full, codim-1, codim-2
    assert_eq!(report["results"]["classes"], 4);
    assert!(report["witnesses"].as_array().unwrap().iter().all(|w| w.is_string()));
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = csv_text.lines();
    assert!(lines.next().unwrap().starts_with("kind,n,"));
    assert!(lines.next().unwrap().starts_with("census/main-equality,3,"));
}

#[test]
fn iso_threads_env_is_honored() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("r.json");
    let status = exe()
        .args(["verify", "--n", "2", "--inequality", "main", "--out"])
        .arg(&out)
        .env("ISO_THREADS", "2")
        .status()
        .unwrap();
    assert_eq!(status.code().unwrap(), 0);
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["manifest"]["threads"], 2);
}
