use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.pres"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pd4-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn pd4(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_pd4")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn selftest_passes() {
    let (code, v) = pd4(&["selftest"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["ok"], true);
    assert_eq!(v["schema"], 1);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let f = corpus("surface2");
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let (_, a) = pd4(&["verify-cup", path(&f)]);
    let (_, b) = pd4(&["verify-cup", path(&f)]);
    assert_eq!(strip(a.clone()), strip(b));
    let keys: Vec<_> = a.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["command", "input_digest", "ok", "results", "schema", "timing_ms"]);
}

#[test]
fn bs_torsion_report() {
    let (code, v) = pd4(&["bs-torsion", "--m", "2", "--depth", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["divisors"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["results"]["free_rank"], 1);
}

#[test]
fn normalize_output_parses_back() {
    let (code, v) = pd4(&["normalize", path(&corpus("bs12"))]);
    assert_eq!(code, 0);
    let text = v["results"]["presentation"].as_str().expect("normalized text");
    let f = scratch("bs12n.pres", text);
    let (code, v) = pd4(&["verify-cup", path(&f)]);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn gamma_and_bm_roundtrip() {
    let el = scratch("x.json", r#"{"rank": 2, "gamma": [["x", "y"]], "odot": [[["x^-1", "0"], ["0", "2"]]]}"#);
    let (code, v) = pd4(&["gamma-nf", path(&corpus("z2")), path(&el)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["results"]["mod2"], serde_json::json!([1, 1]));
    let (code, v) = pd4(&["bm-eval", path(&corpus("z2")), path(&el)]);
    assert_eq!(code, 0, "{v}");
    let form = scratch("h.json", &v["results"]["form"].to_string());
    let (code, v) = pd4(&["bm-preimage", path(&corpus("z2")), path(&form)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["results"]["roundtrip"], true);
}

#[test]
fn exit_codes() {
    let (code, _) = pd4(&["fox"]);
    assert_eq!(code, 2);
    let (code, v) = pd4(&["fox", "/nonexistent/file.pres"]);
    assert_eq!(code, 2);
    assert_eq!(v["ok"], false);
    let junk = scratch("junk.pres", "name: j\nclass: nonsense\n");
    assert_eq!(pd4(&["fox", path(&junk)]).0, 2);

    let not_asph = scratch("na.pres", "name: na\nclass: free 1\ngens: x\nrels:\naspherical: false\n");
    let (code, v) = pd4(&["dualize", path(&not_asph)]);
    assert_eq!(code, 3, "{v}");
    assert_eq!(v["error"]["kind"], "not-aspherical");

    let formal = scratch("formal.pres", "name: f\nclass: formal 2\ngens: a b\nrels:\na b a^-1 b^-1\naspherical: true\n");
    let (code, v) = pd4(&["complex", path(&formal)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["results"]["verified"], false);
}
