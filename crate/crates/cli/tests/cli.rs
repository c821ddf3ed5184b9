use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn opcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opcat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn example(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let o = opcat(&["examples", name, "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let odot = example(dir.path(), "odot");
    let o = opcat(&["validate", s(&odot)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid"));

    let bq2 = example(dir.path(), "bouquets2");
    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&bq2).unwrap()).unwrap();
    let u1 = v["body"]["maps"]["u1"].as_array_mut().unwrap();
    u1[3] = u1[2].clone();
    let mutated = dir.path().join("mutated.json");
    fs::write(&mutated, v.to_string()).unwrap();
    let o = opcat(&["validate", s(&mutated)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(15)"), "{}", stdout(&o));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"kind\": ").unwrap();
    assert_eq!(opcat(&["validate", s(&bad)]).status.code(), Some(2));
    assert_eq!(opcat(&["validate", s(&odot), "--kind", "operad"]).status.code(), Some(2));
    assert_eq!(opcat(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn groth_then_extract_reproduces_the_operad() {
    let dir = TempDir::new().unwrap();
    for (base, operad) in [("odot", "z2-odot"), ("odot", "endo-z2-odot"), ("bq2", "arrow-bq2")] {
        let b = example(dir.path(), base);
        let p = example(dir.path(), operad);
        let f = dir.path().join("f.json");
        let q = dir.path().join("q.json");
        assert!(opcat(&["groth", s(&b), s(&p), "--out", s(&f)]).status.success());
        assert!(opcat(&["extract", s(&f), "--out", s(&q)]).status.success());
        assert_eq!(fs::read(&p).unwrap(), fs::read(&q).unwrap(), "{operad}");
    }
}

#[test]
fn groth_rejects_a_foreign_base() {
    let dir = TempDir::new().unwrap();
    let b = example(dir.path(), "bq2");
    let p = example(dir.path(), "z2-odot");
    assert_eq!(opcat(&["groth", s(&b), s(&p)]).status.code(), Some(1));
}

#[test]
fn adjoint_summary() {
    let dir = TempDir::new().unwrap();
    let d2 = example(dir.path(), "delta2");
    let z2 = example(dir.path(), "z2");
    let o = opcat(&["adjoint", s(&d2), s(&z2)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "counts 4 = 4, bijection certified");
}

#[test]
fn nerve_of_the_point_has_singleton_levels() {
    let dir = TempDir::new().unwrap();
    let pt = example(dir.path(), "point");
    let out = dir.path().join("n.json");
    let o = opcat(&["nerve", s(&pt), "--out", s(&out)]);
    assert_eq!(stdout(&o).trim(), "levels 1 1 1 1");
}

#[test]
fn dec_para_and_roundtrip_succeed() {
    let dir = TempDir::new().unwrap();
    let two = example(dir.path(), "K2cat");
    let o = opcat(&["dec", s(&two), "--out", s(&dir.path().join("d.json"))]);
    assert!(stdout(&o).contains("certified"), "{}", stdout(&o));
    let z2 = example(dir.path(), "z2");
    let para = dir.path().join("para.json");
    assert!(opcat(&["para", s(&z2), "--out", s(&para)]).status.success());
    assert_eq!(fs::read(&para).unwrap(), fs::read(example(dir.path(), "paraZ2")).unwrap());
    let b = example(dir.path(), "odot");
    let p = example(dir.path(), "z3-twisted-odot");
    let o = opcat(&["roundtrip", s(&b), s(&p)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("certified").count(), 2);
}

#[test]
fn outputs_are_deterministic() {
    let a = opcat(&["examples", "slice-two-cell"]);
    let b = opcat(&["examples", "slice-two-cell"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_example_lists_names() {
    let o = opcat(&["examples", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bouquets2"));
}

#[test]
fn wordeq_on_the_relation() {
    let dir = TempDir::new().unwrap();
    let p = opcat_core::freemon::phi0(3).unwrap();
    let path = dir.path().join("phi3.json");
    fs::write(&path, opcat_core::io::save(&p).unwrap()).unwrap();
    let rel = &p.relations[0];
    let left = serde_json::to_string(&rel.left).unwrap();
    let right = serde_json::to_string(&rel.right).unwrap();
    let o = opcat(&["wordeq", s(&path), &left, &right]);
    assert_eq!(stdout(&o).trim(), "equal");
    let o = opcat(&["wordeq", s(&path), &left, "{\"gen\": 0}"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn shipped_schemas_are_current() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas");
    for (name, text) in opcat_core::io::all_schemas().unwrap() {
        let on_disk = fs::read_to_string(shipped.join(format!("{name}.schema.json"))).unwrap();
        assert_eq!(on_disk, text, "{name}: regenerate with `opcat schemas schemas`");
    }
}
