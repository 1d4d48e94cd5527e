use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::{json, Value};
use twocat::{FinCategory, FinFunctor};

fn twocat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twocat")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.display().to_string()
}

fn checks(report: &Value) -> &Vec<Value> {
    report["checks"].as_array().unwrap()
}

#[test]
fn omega_at_two_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = twocat(&["run", "omega", "--lambda", "2", "--seed", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seed 5"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["suite"], "omega");
    assert_eq!(report["seed"], 5);
    let ids: Vec<&str> = checks(&report).iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(checks(&report).iter().all(|c| c["verdict"] == "pass"));
    assert!(ids.contains(&"implication-table"));
    assert!(ids.contains(&"negative/terminal-not-admissible"));
}

#[test]
fn omega_at_three_reports_the_missing_product() {
    let out = twocat(&["run", "omega", "--lambda", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    let prod = checks(&report).iter().find(|c| c["id"] == "product-classifier").unwrap();
    assert_eq!(prod["verdict"], "fail");
    assert_eq!(prod["witness"], "(2,2)");
    let fails: Vec<&Value> = checks(&report).iter().filter(|c| c["verdict"] == "fail").collect();
    assert_eq!(fails.len(), 1);
}

#[test]
fn bad_configuration_is_rejected() {
    let out = twocat(&["run", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("BadConfig"));
    let out = twocat(&["run", "omega", "--lambda", "1"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("BadConfig"));
    let out = twocat(&["run", "omega", "--probes", "huge"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("BadConfig"));
    let out = twocat(&["run", "omega", "--cap", "0"]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("BadConfig"));
}

#[test]
fn missing_corpus_is_reported() {
    let out = twocat(&["run", "core-laws", "--corpus", "/nonexistent/corpus.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("MissingCorpus"));
}

#[test]
fn corpus_files_join_the_suite() {
    let dir = tempfile::tempdir().unwrap();
    let cats = json!([FinCategory::chain(3).to_raw(), FinCategory::discrete_n(2).to_raw()]);
    let path = write(dir.path(), "corpus.json", &cats);
    let out = twocat(&["run", "core-laws", "--corpus", &path]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert!(checks(&report).iter().any(|c| c["id"] == "category/file1/axioms"));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("timing_ms");
        }
        v
    };
    let a = strip(stdout_json(&twocat(&["run", "fib", "--seed", "9"])));
    let b = strip(stdout_json(&twocat(&["run", "fib", "--seed", "9"])));
    assert_eq!(a, b);
}

fn chain(n: usize) -> Arc<FinCategory> {
    Arc::new(FinCategory::chain(n))
}

#[test]
fn comma_of_the_identity_on_the_arrow() {
    let dir = tempfile::tempdir().unwrap();
    let id = FinFunctor::identity(chain(2)).to_raw();
    let path = write(dir.path(), "cospan.json", &json!({ "f": id, "g": id }));
    let out = twocat(&["comma", "--cospan", &path, "--flavor", "lax", "--verify", "--probes", "tiny"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["apex"]["objects"].as_array().unwrap().len(), 3);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));
    let out = twocat(&["comma", "--cospan", &path, "--flavor", "strict"]);
    assert_eq!(stdout_json(&out)["apex"]["objects"].as_array().unwrap().len(), 2);
}

#[test]
fn fib_check_on_a_point() {
    let dir = tempfile::tempdir().unwrap();
    let top = FinFunctor::point(chain(2), 1).to_raw();
    let path = write(dir.path(), "f.json", &json!(top));
    let out = twocat(&["fib", "check", "--functor", &path, "--chevalley", "--discrete"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["fibration"], false);
    assert_eq!(v["opfibration"], true);
    assert_eq!(v["discrete_opfibration"], true);
    assert_eq!(v["chevalley"], "pass");
}

#[test]
fn span_classify_of_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p.json", &json!(FinFunctor::identity(chain(3)).to_raw()));
    let v = stdout_json(&twocat(&["span", "classify", "--functor", &path, "--lambda", "2"]));
    assert_eq!(v["fibre_sizes"], json!([1, 1, 1]));
}

#[test]
fn span_compose_with_identities() {
    let dir = tempfile::tempdir().unwrap();
    let id = FinFunctor::identity(chain(2)).to_raw();
    let s = json!({ "left": id, "right": id });
    let p = write(dir.path(), "s.json", &s);
    let out = twocat(&["span", "compose", &p, &p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out)["left"]["dom"]["objects"].as_array().is_some());
}

#[test]
fn kan_colimits() {
    let dir = tempfile::tempdir().unwrap();
    let c3 = chain(3);
    let inc = FinFunctor::from_ids(chain(2), c3.clone(), &[("0", "0"), ("1", "2")], &[("0->1", "0->2")]).unwrap();
    let p = write(dir.path(), "d.json", &json!(inc.to_raw()));
    let v = stdout_json(&twocat(&["kan", "colim", "--data", &p]));
    assert_eq!(v["colimit"], "2");
    let f = FinFunctor::identity(chain(2));
    let fp = write(dir.path(), "f.json", &json!(f.to_raw()));
    let out = twocat(&["kan", "lan", "--data", &fp, "--along", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["pointwise"], true);
    let w = write(dir.path(), "w.json", &json!({ "sizes": [1, 1], "action": [[0], [0], [0]] }));
    let out = twocat(&["kan", "wcolim", "--data", &p, "--weight", &w]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["colimit"], "2");
}

#[test]
fn yoneda_commands() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", &json!(FinCategory::chain(2).to_raw()));
    let v = stdout_json(&twocat(&["yoneda", "psh", "--category", &c, "--lambda", "2"]));
    assert_eq!(v["objects"], 3);
    let top = write(dir.path(), "top.json", &json!(FinFunctor::point(chain(2), 1).to_raw()));
    let v = stdout_json(&twocat(&["yoneda", "chi", "--functor", &top]));
    assert_eq!(v["invertible"], v["fully_faithful"]);
    let v = stdout_json(&twocat(&["yoneda", "admissible", "--functor", &top]));
    assert_eq!(v["admissible"], true);
}

#[test]
fn omega_commands() {
    let v = stdout_json(&twocat(&["omega", "build", "--lambda", "2"]));
    assert_eq!(v["omega"]["objects"].as_array().unwrap().len(), 2);
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.json", &json!(FinCategory::chain(2).to_raw()));
    let v = stdout_json(&twocat(&["omega", "cosieves", "--category", &c]));
    assert_eq!(v.as_array().unwrap().len(), 3);
    let out = twocat(&["omega", "cc-check", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["implication"], json!([[1, 1], [0, 1]]));
    let out = twocat(&["omega", "cc-check", "--lambda", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["witness"], "(2,2)");
}

#[test]
fn glob_commands() {
    let v = stdout_json(&twocat(&["glob", "sp", "--lambda", "2", "--trunc", "2"]));
    let counts: Vec<u64> = v["levels"].as_array().unwrap().iter().map(|l| l["objects"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![2, 5, 8]);
    let out = twocat(&["glob", "sigma", "--lambda", "2", "--trunc", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["levels"].as_array().unwrap().len(), 3);
    assert_eq!(v["levels"][0]["objects"], 1);
    let v = stdout_json(&twocat(&["glob", "ik", "--lambda", "3", "--trunc", "1", "--k", "2", "--size", "2"]));
    assert_eq!(v["level"], 3);
    let sizes: Vec<u64> = v["sizes"].as_array().unwrap().iter().map(|s| s.as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![1, 1, 1, 1, 2, 2, 2]);
}

#[test]
fn span_transpose_keeps_the_elements() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (FinCategory::terminal(), FinCategory::chain(2));
    let ab = Arc::new(a.product(&b));
    let id = FinFunctor::identity(ab);
    let sq = twocat::comma::comma(&id, &id).unwrap();
    let s = write(dir.path(), "s.json", &json!({ "left": sq.p.to_raw(), "right": sq.q.to_raw() }));
    let a = write(dir.path(), "a.json", &json!(a.to_raw()));
    let b = write(dir.path(), "b.json", &json!(b.to_raw()));
    let out = twocat(&["span", "transpose", "--span", &s, "--a", &a, "--b", &b]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let total: u64 = v["sizes"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(total, sq.apex.num_objects() as u64);
}
