use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn orthogonal_prediction_for_fejer() {
    let out = hmf(&["rmt", "predict", "--group", "o", "--phi", "fejer", "--sigma", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    // phi_hat(0) + phi(0) / 2 with phi(0) = phi_hat(0) = 1
    assert_eq!(stdout_json(&out)["result"]["prediction"], 1.5);
}

#[test]
fn exit_codes() {
    let out = hmf(&[
        "kloosterman",
        "--field",
        "q-sqrt6",
        "--nu",
        "1",
        "--mu",
        "1",
        "--c",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("narrow class number"), "{}", stderr(&out));

    let out = hmf(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(stderr(&out).contains("Usage"));
    assert_eq!(hmf(&[]).status.code(), Some(64));

    let out = hmf(&["density", "run", "--sigma", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("budget"));

    let out = hmf(&["petersson", "delta", "--level", "4", "--m", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("level"));

    assert_eq!(
        hmf(&["rmt", "sample", "--group", "sp", "--n", "10"]).status.code(),
        Some(2)
    );
    assert_eq!(hmf(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_errors_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = path(dir.path(), "bad.json");
    std::fs::write(&cfg, r#"{"sigma": 0.3, "cmaxx": 10}"#).unwrap();
    let out = hmf(&["--config", &cfg, "rmt", "predict", "--group", "u"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cmaxx"), "{}", stderr(&out));
}

#[test]
fn sweep_csv_is_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path(dir.path(), "sweep.csv");
    let out = hmf(&[
        "density",
        "sweep",
        "--levels",
        "101,11,1009",
        "--sigma",
        "0.5",
        "--skip-support-check",
        "--csv",
        &csv,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "level_norm,R,total,prediction,gap,certificates");
    let norms: Vec<u64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(norms, vec![11, 101, 1009]);
    assert!(norms.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn effective_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let first = hmf(&[
        "density", "run", "--level", "23", "--k", "4", "--sigma", "0.3", "--phi", "cos2", "--cmax", "3000",
    ]);
    assert_eq!(first.status.code(), Some(0), "{}", stderr(&first));
    let report = stdout_json(&first);
    let cfg = path(dir.path(), "effective.json");
    std::fs::write(&cfg, serde_json::to_string(&report["config"]).unwrap()).unwrap();
    let second = hmf(&["--config", &cfg, "density", "run"]);
    assert_eq!(second.status.code(), Some(0), "{}", stderr(&second));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &[
            "density",
            "sweep",
            "--levels",
            "11,101",
            "--sigma",
            "1",
            "--skip-support-check",
        ],
        &[
            "density",
            "run",
            "--field",
            "q-sqrt5",
            "--k",
            "3",
            "--level",
            "3,1",
            "--sigma",
            "0.5",
            "--skip-support-check",
            "--cmax",
            "500",
        ],
        &[
            "rmt", "sample", "--group", "soodd", "--n", "11", "--m", "300", "--seed", "3",
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut files = Vec::new();
        for t in ["1", "8"] {
            let json = path(dir.path(), &format!("run{i}-t{t}.json"));
            let mut full = vec!["--threads", t, "--json", json.as_str()];
            full.extend_from_slice(args);
            let out = hmf(&full);
            assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
            files.push(std::fs::read(&json).unwrap());
        }
        let strip = |b: &[u8]| {
            let mut v: Value = serde_json::from_slice(b).unwrap();
            v["config"]["json"] = Value::Null;
            v
        };
        assert_eq!(strip(&files[0]), strip(&files[1]), "{args:?}");
    }
}
