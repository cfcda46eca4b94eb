use std::path::PathBuf;
use std::process::{Command, Output};

fn qcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qcorr(args);
    assert!(
        out.status.success(),
        "qcorr {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qcorr-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn csv_value(text: &str, metric: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{metric},")))
        .and_then(|rest| rest.split(',').next())
        .unwrap_or_else(|| panic!("no {metric} row in\n{text}"))
        .parse()
        .unwrap()
}

#[test]
fn witness_white_noise_q_and_hmin() {
    let out = stdout(&["witness", "--family", "wn-bb84:0.7", "--metrics", "q,hmin"]);
    let q = csv_value(&out, "Q");
    assert!((q - 0.49).abs() < 1e-12);
    let f = 0.5 * (1.0 + ((2.0 - 0.49) / 2.0f64).sqrt());
    assert!((csv_value(&out, "HMIN") + f.log2()).abs() < 1e-12);
}

#[test]
fn witness_bb84_and_pr() {
    let out = stdout(&["witness", "--family", "bb84", "--metrics", "w"]);
    assert_eq!(out, "metric,value,classical_bound,exceeds\nW,1,0,true\n");
    let out = stdout(&["witness", "--family", "pr", "--metrics", "q,chsh"]);
    assert_eq!(csv_value(&out, "Q"), 2.0);
    assert_eq!(csv_value(&out, "CHSH"), 4.0);
}

#[test]
fn witness_jsonl_fields() {
    let out = stdout(&["witness", "--family", "pr", "--metrics", "chsh", "--format", "jsonl"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["metric"], "CHSH");
    assert_eq!(v["value"], 4);
    assert_eq!(v["exceeds"], true);
}

#[test]
fn default_metrics_skip_undefined_chsh() {
    let out = stdout(&["witness", "--family", "rac-optimal"]);
    assert!(!out.contains("CHSH"));
    assert!((csv_value(&out, "WL") - 2.0 * 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(qcorr(&["witness", "--family", "rac-optimal", "--metrics", "chsh"]).status.code(), Some(2));
}

#[test]
fn werner_sweep_q_is_v_squared() {
    let out = stdout(&["sweep", "--family", "werner", "--range", "0:1:101"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("param,Q,W,WL,PB,PMIN,CHSH,HMIN,f_Q"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 101);
    for r in &rows {
        assert!((r[1] - r[0] * r[0]).abs() < 1e-10, "{r:?}");
        assert!((r[6] - 2.0 * r[0]).abs() < 1e-10);
    }
}

#[test]
fn sweep_numbers_round_trip() {
    let out = stdout(&["sweep", "--family", "wn-bb84", "--range", "0:1:7", "--format", "jsonl"]);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let p = v["param"].as_f64().unwrap();
        let q = v["Q"].as_f64().unwrap();
        assert!((q - p * p).abs() < 1e-12);
    }
}

#[test]
fn usage_and_config_errors_exit_2() {
    for args in [
        &["sweep", "--family", "werner", "--range", "0:1:1"][..],
        &["sweep", "--family", "werner", "--range", ""],
        &["sweep", "--family", "bb84", "--range", "0:1:3"],
        &["witness", "--family", "nonsense"],
        &["witness", "--family", "werner:1.5"],
        &["witness"],
        &["certify", "local", "--family", "pr", "--dlambda", "2"],
        &["certify", "superlocal", "--family", "pr", "--dlambda", "5"],
        &["certify", "superlocal", "--family", "pr", "--restarts", "0"],
        &["certify", "unsteerable", "--family", "pr"],
    ] {
        assert_eq!(qcorr(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_input_exits_2_and_unphysical_input_exits_3() {
    let bad = temp_file("bad.json", "{\"preps\": [1, 2");
    assert_eq!(qcorr(&["witness", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    let signaling = temp_file(
        "signaling.json",
        r#"{"box": [[[[1,0],[0,0]],[[0,0],[0,1]]],[[[1,0],[0,0]],[[1,0],[0,0]]]]}"#,
    );
    assert_eq!(qcorr(&["witness", "--input", signaling.to_str().unwrap()]).status.code(), Some(3));
    let long = temp_file(
        "long.json",
        r#"{"preps": [[0,0,1.5],[0,0,-1],[1,0,0],[-1,0,0]], "bob": [{"direction": [0,0,1]}, {"direction": [1,0,0]}]}"#,
    );
    assert_eq!(qcorr(&["witness", "--input", long.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn input_document_matches_family() {
    let doc = temp_file(
        "bb84.json",
        r#"{"label": "doc", "preps": [[0,0,1],[0,0,-1],[1,0,0],[-1,0,0]],
            "bob": [{"gamma0": 0.5, "eta": 1, "direction": [0,0,1]}, {"direction": [1,0,0]}]}"#,
    );
    let a = stdout(&["witness", "--input", doc.to_str().unwrap()]);
    let b = stdout(&["witness", "--family", "bb84"]);
    assert_eq!(a, b);
}

#[test]
fn certify_local_verdicts() {
    let out = stdout(&["certify", "local", "--family", "pr"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verdict"], "Infeasible");
    assert!(v["residual"].as_f64().unwrap() > 0.0);
    for key in ["command", "input", "verdict", "residual", "dlambda", "restarts", "seed", "heuristic"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let out = stdout(&["certify", "local", "--family", "wn-bb84:1.0"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verdict"], "ModelFound");
}

#[test]
fn certify_unsteerable_superunsteerable_point() {
    let out = stdout(&["certify", "unsteerable", "--family", "wn-bb84:0.5", "--dlambda", "2", "--restarts", "64"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["verdict"], "NoModelFound");
    assert_eq!(v["implies"], "Superunsteerable*");
    assert_eq!(v["heuristic"], true);
}

#[test]
fn certify_csv_header() {
    let out = stdout(&["certify", "local", "--family", "pr", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("command,input,verdict,residual,dlambda,restarts,seed,heuristic"));
    assert!(lines.next().unwrap().starts_with("certify local,pr,Infeasible,2,"));
}

#[test]
fn outputs_are_reproducible_and_thread_independent() {
    let runs = [
        vec!["sweep", "--family", "wn-bb84", "--range", "0:1:21", "--format", "jsonl"],
        vec!["certify", "superunsteerable", "--family", "wn-bb84:0.6", "--seed", "11"],
        vec!["certify", "superlocal", "--family", "bell-diag-rac", "--seed", "5", "--restarts", "16"],
    ];
    for args in runs {
        let first = stdout(&args);
        assert_eq!(first, stdout(&args), "{args:?}");
        let mut one = args.clone();
        one.extend(["--threads", "1"]);
        assert_eq!(first, stdout(&one), "{args:?} with one thread");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qcorr-out-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = qcorr(&["sweep", "--family", "werner", "--range", "0:1:3", "--out", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn family_list_names_every_family() {
    let out = stdout(&["family", "list"]);
    for name in ["bb84", "rac-optimal", "werner:V", "wn-bb84:V", "pr", "bell-diag-rac"] {
        assert!(out.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn state_documents_parse_with_integer_and_float_entries() {
    let doc = temp_file(
        "werner.json",
        r#"{"state": {"a": [0,0,0], "b": [0,0,0], "c": [-0.7,-0.7,-0.7]},
            "alice": [{"direction": [0,0,1]}, {"direction": [1,0,0]}],
            "bob": [{"direction": [0,0,1]}, {"direction": [1,0,0]}]}"#,
    );
    let out = stdout(&["witness", "--input", doc.to_str().unwrap(), "--metrics", "q,chsh"]);
    assert!((csv_value(&out, "Q") - 0.49).abs() < 1e-12);
    assert!((csv_value(&out, "CHSH") - 1.4).abs() < 1e-12);
    let mut entries = vec!["[0,0]"; 16];
    for k in [0, 5, 10, 15] {
        entries[k] = "[0.25,0]";
    }
    let doc = temp_file(
        "mixed.json",
        &format!(
            r#"{{"state": [{}], "alice": [{{"direction": [0,0,1]}}, {{"direction": [1,0,0]}}],
                "bob": [{{"direction": [0,0,1]}}, {{"direction": [1,0,0]}}]}}"#,
            entries.join(",")
        ),
    );
    let out = stdout(&["witness", "--input", doc.to_str().unwrap(), "--metrics", "q"]);
    assert_eq!(csv_value(&out, "Q"), 0.0);
}
