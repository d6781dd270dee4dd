use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn reflekt(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflekt"))
        .arg("--output-dir")
        .arg(dir)
        .args(args)
        .env_remove("REFLEKT_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_gamma6_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = reflekt(dir.path(), &["verify", "gamma6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(&dir.path().join("gamma6.json"));
    assert_eq!(r["pass"], true);
    let sig = &r["checks"]["gram_a.signature"]["detail"];
    assert_eq!((sig["n_plus"].as_u64(), sig["n_minus"].as_u64(), sig["n_zero"].as_u64()), (Some(6), Some(1), Some(14)), "{sig}");
}

#[test]
fn verify_menger_gamma6() {
    let dir = tempfile::tempdir().unwrap();
    let out = reflekt(dir.path(), &["verify", "menger", "--group", "gamma6"]);
    assert_eq!(out.status.code(), Some(0));
    let c = json(&dir.path().join("menger_gamma6.json"));
    assert_eq!(c["verdict"], true);
    assert_eq!(c["l_f_vector"], serde_json::json!([14, 21]));
    assert_eq!(c["minor"]["kind"], "K33");
    assert_eq!(c["minor"]["branch_sets"].as_array().unwrap().len(), 6);
}

#[test]
fn render_depth_zero_is_one_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = reflekt(dir.path(), &["render", "--group", "gamma4", "--depth", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let ply = fs::read(dir.path().join("gamma4_depth0.ply")).unwrap();
    let header = String::from_utf8_lossy(&ply[..ply.len() - 24]).to_string();
    assert!(header.contains("element vertex 1\n"));
    assert!(header.starts_with("ply\nformat binary_little_endian 1.0\n"));
    let meta = json(&dir.path().join("gamma4_depth0.meta.json"));
    assert_eq!(meta["count"], 1);
}

fn strip_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_s");
    v
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for fmt in ["csv", "ply", "png"] {
        for d in [&a, &b] {
            let out = reflekt(d.path(), &["render", "--group", "gamma6", "--depth", "2", "--format", fmt, "--resolution", "64"]);
            assert_eq!(out.status.code(), Some(0));
        }
        let name = format!("gamma6_depth2.{fmt}");
        assert_eq!(fs::read(a.path().join(&name)).unwrap(), fs::read(b.path().join(&name)).unwrap(), "{name}");
        let meta = |d: &Path| strip_time(json(&d.join("gamma6_depth2.meta.json")));
        assert_eq!(meta(a.path()), meta(b.path()));
    }
    let csv = fs::read_to_string(a.path().join("gamma6_depth2.csv")).unwrap();
    assert!(csv.starts_with("x1,x2,x3,x4,x5,x6,word_length\n"));
    assert_eq!(csv.lines().count(), 1 + 1 + 21 + 357);
    for d in [&a, &b] {
        assert_eq!(reflekt(d.path(), &["verify", "menger", "--group", "gamma6"]).status.code(), Some(0));
    }
    let name = "menger_gamma6.json";
    assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["frobnicate"][..],
        &["render", "--group", "gamma5"],
        &["render", "--group", "gamma4", "--format", "obj"],
        &["render", "--group", "gamma4", "--eps", "0"],
        &["render", "--group", "gamma4", "--axes", "1,1"],
        &["verify", "gamma6", "--precision", "64"],
        &["verify", "menger"],
    ] {
        assert_eq!(reflekt(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn precision_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_reflekt"))
        .args(["--output-dir"])
        .arg(dir.path())
        .args(["verify", "gamma6"])
        .env("REFLEKT_PRECISION_BITS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_reflekt"))
        .arg("--output-dir")
        .arg(dir.path())
        .args(["verify", "gamma6"])
        .env("REFLEKT_PRECISION_BITS", "192")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&dir.path().join("gamma6.json"))["checks"]["identities.precision_bits"]["detail"], 192);
}

#[test]
fn runtime_failure_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = reflekt(dir.path(), &["render", "--group", "gamma6", "--depth", "3", "--max-points", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("more than 10 orbit points"));
}
