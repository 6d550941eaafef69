use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_seadronesim"))
}

fn manifest(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn render_writes_bundle_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = manifest("configs/scene_minimal.json");
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = run(&[
            "render",
            "--config",
            path(&cfg),
            "--out",
            path(out),
            "--spp",
            "2",
            "--radiance",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    for f in [
        "frame.png",
        "frame_mask.png",
        "frame.meta.json",
        "frame.radiance",
    ] {
        assert_eq!(
            std::fs::read(a.join(f)).unwrap(),
            std::fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
    let c = dir.path().join("c");
    let o = run(&[
        "render",
        "--config",
        path(&cfg),
        "--out",
        path(&c),
        "--spp",
        "2",
        "--seed",
        "99",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(
        std::fs::read(a.join("frame.png")).unwrap(),
        std::fs::read(c.join("frame.png")).unwrap()
    );
}

#[test]
fn invalid_scene_exits_2_naming_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"camera": {"altitude_m": -1}}"#).unwrap();
    let out = dir.path().join("out");
    let o = run(&["render", "--config", path(&cfg), "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("camera.altitude_m"), "{}", stderr(&o));
    assert!(!out.join("frame.png").exists());

    let o = run(&["validate-config", "--config", path(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "render",
        "--config",
        "/nonexistent.json",
        "--out",
        path(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_config_accepts_shipped_configs() {
    for entry in std::fs::read_dir(manifest("configs")).unwrap() {
        let p = entry.unwrap().path();
        let o = run(&["validate-config", "--config", path(&p)]);
        assert_eq!(o.status.code(), Some(0), "{}: {}", p.display(), stderr(&o));
    }
}

#[test]
fn campaign_smoke_and_dry_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = manifest("configs/campaign_smoke.json");
    let dry = dir.path().join("dry");
    let o = run(&[
        "campaign",
        "--config",
        path(&cfg),
        "--out",
        path(&dry),
        "--dry-run",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("12 jobs, 6 datasets"));
    assert!(!dry.exists(), "dry run writes nothing");

    let out = dir.path().join("run");
    let o = run(&[
        "campaign",
        "--config",
        path(&cfg),
        "--out",
        path(&out),
        "--workers",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let datasets: Vec<_> = std::fs::read_dir(&out).unwrap().collect();
    assert_eq!(datasets.len(), 6);
    for d in datasets {
        let d = d.unwrap().path();
        assert!(d.join("annotations/train.json").exists());
        assert!(d.join("annotations/val.json").exists());
        assert!(!d.join(".incomplete").exists());
    }
}

fn evaluate(gt: &str, preds: &Path, out: &Path) -> Output {
    run(&[
        "evaluate",
        "--gt",
        path(&manifest(gt)),
        "--predictions",
        path(preds),
        "--out",
        path(out),
    ])
}

fn report(out: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

#[test]
fn evaluate_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let o = evaluate(
        "fixtures/eval_perfect_gt.json",
        &manifest("fixtures/eval_perfect_predictions.json"),
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(dir.path());
    for k in ["AP", "AP50", "AP75", "AP_s", "AP_m"] {
        assert_eq!(r[k], 100.0, "{k}");
    }
    assert!(String::from_utf8_lossy(&o.stdout).contains("AP50"));

    let o = evaluate(
        "fixtures/eval_perfect_gt.json",
        &manifest("fixtures/eval_empty_predictions.json"),
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(dir.path())["AP"], 0.0);

    let o = evaluate(
        "fixtures/eval_random_gt.json",
        &manifest("fixtures/eval_random_predictions.json"),
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let expected: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(manifest("fixtures/eval_random_expected.json")).unwrap(),
    )
    .unwrap();
    let r = report(dir.path());
    for k in ["AP", "AP50", "AP75", "AP_s", "AP_m"] {
        let (a, b) = (r[k].as_f64().unwrap(), expected[k].as_f64().unwrap());
        assert!((a - b).abs() < 1e-9, "{k}: {a} vs {b}");
    }
}

#[test]
fn evaluate_schema_error_names_the_record() {
    let dir = tempfile::tempdir().unwrap();
    let preds = dir.path().join("p.json");
    std::fs::write(
        &preds,
        r#"[{"image_id":1,"category_id":1,"bbox":[0,0,5,5],"score":0.9},
            {"image_id":1,"category_id":1,"bbox":[0,0,5],"score":0.9}]"#,
    )
    .unwrap();
    let o = evaluate("fixtures/eval_perfect_gt.json", &preds, dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("record 1"), "{}", stderr(&o));
    assert!(!dir.path().join("report.json").exists());
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(
        run(&["campaign", "--config", "x.json"]).status.code(),
        Some(2),
        "--out required without --dry-run"
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
