use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilhom")).args(args).env_remove("WEILHOM_CACHE").output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn e1_row(doc: &Value, ell: u64) -> Vec<u64> {
    let t = &doc["result"]["pages"][1];
    let mut row: Vec<(u64, u64)> = t["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["ell"] == ell)
        .map(|e| (e["m"].as_u64().unwrap(), e["dim"].as_u64().unwrap()))
        .collect();
    row.sort();
    row.into_iter().map(|x| x.1).collect()
}

#[test]
fn pages_so22() {
    let o = run(&["pages", "--p", "2", "--q", "2", "--k", "1", "--dmax", "10"]);
    assert!(o.status.success());
    let d = json(&o);
    assert_eq!(d["schema_version"], 1);
    assert_eq!(d["probabilistic"], false);
    assert!(e1_row(&d, 0).iter().all(|&x| x == 0));
    assert!(e1_row(&d, 1).iter().all(|&x| x == 0));
    let e = &d["result"]["pages"][1]["entries"][0];
    for key in ["ell", "m", "pp", "qq", "dim"] {
        assert!(e.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn koszul_preset_is_regular() {
    let o = run(&["koszul-check", "--preset", "q-sequence", "--p", "1", "--q", "1", "--k", "1"]);
    assert!(o.status.success());
    let d = json(&o);
    assert_eq!(d["result"]["verdict"]["status"], "Regular");
    assert_eq!(d["result"]["verdict"]["d_max"], 12);
}

#[test]
fn koszul_spec_file_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.spec");
    std::fs::write(&path, "# x*y and x^2\nvar z[1,1] 1\nvar z[2,1] 1\ngen z[1,1]*z[2,1]\ngen z[1,1]^2\n").unwrap();
    let o = run(&["koszul-check", "--spec", path.to_str().unwrap(), "--dmax", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let d = json(&o);
    assert_eq!(d["result"]["verdict"]["status"], "Irregular");
    assert_eq!(d["result"]["verdict"]["index"], 2);
}

#[test]
fn errors_are_json() {
    let o = run(&["pages", "--p", "2", "--q", "2", "--k", "1", "--dmax", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"], "BadRange");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.spec");
    std::fs::write(&path, "var z[1,1] 1\nvar z[2,1] 1\ngen z[1,1] + z[2,1]^2\n").unwrap();
    let o = run(&["koszul-check", "--spec", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"], "NonHomogeneousGenerator");
    let o = run(&["twisted", "--p", "2", "--q", "2", "--k", "1"]);
    assert_eq!(json(&o)["error"], "WrongFamily");
}

#[test]
fn sonone_verify_passes() {
    let o = run(&["sonone-verify", "--n", "3", "--k", "1", "--dmax", "10"]);
    assert!(o.status.success());
    let d = json(&o);
    assert_eq!(d["pass"], true);
}

#[test]
fn prime_mode_is_stamped_and_agrees() {
    let a = json(&run(&["pages", "--p", "2", "--q", "1", "--k", "1", "--dmax", "6"]));
    let b = json(&run(&["pages", "--p", "2", "--q", "1", "--k", "1", "--dmax", "6", "--field", "prime:1000003"]));
    assert_eq!(b["probabilistic"], true);
    for r in 0..2 {
        assert_eq!(a["result"]["pages"][r]["entries"], b["result"]["pages"][r]["entries"]);
    }
    assert!(b["result"]["pages"][1]["flags"].to_string().contains("probabilistic"));
    let o = run(&["koszul-check", "--preset", "tau", "--p", "2", "--q", "1", "--k", "1", "--field", "prime:7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["deduce", "--p", "2", "--q", "1", "--k", "1", "--dmax", "6"];
    let plain = run(&args).stdout;
    let with: Vec<&str> = args.iter().copied().chain(["--cache", cache]).collect();
    let first = run(&with).stdout;
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = run(&with).stdout;
    assert_eq!(plain, first);
    assert_eq!(first, second);
    // a corrupted entry is recomputed
    let entry = entries[0].as_ref().unwrap().path();
    std::fs::write(&entry, "{\"key\": \"x\"}").unwrap();
    assert_eq!(run(&with).stdout, plain);
    assert!(std::fs::read_to_string(&entry).unwrap().contains("digest"));
}

#[test]
fn env_cache_overrides_flag() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_weilhom"))
        .args(["pages", "--n", "2", "--k", "1", "--dmax", "4", "--cache", a.path().to_str().unwrap()])
        .env("WEILHOM_CACHE", b.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read_dir(a.path()).unwrap().count(), 0);
    assert_eq!(std::fs::read_dir(b.path()).unwrap().count(), 1);
}

#[test]
fn out_and_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let o = run(&["pages", "--p", "1", "--q", "1", "--k", "1", "--dmax", "4", "--rmax", "2", "--out", out.to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let d: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(d["result"]["pages"].as_array().unwrap().len(), 3);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("r,ell,m,pp,qq,dim,upper_bound,stable\n"));
    assert_eq!(text.lines().count(), 1 + 3 * 2 * 5);
}

#[test]
fn selftest_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["selftest", "--cache", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let d = json(&o);
    assert!(d["result"]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn twisted_large_k() {
    let o = run(&["twisted", "--n", "1", "--k", "2", "--dmax", "6"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["pass"], true);
}
