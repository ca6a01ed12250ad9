use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn gaplab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaplab"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("report on stdout")
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

fn collapse_files(dir: &Path) {
    write(dir, "prog.sexp", r#"(const (table (default 0) ("1" 3) ("01" 5)))"#);
    write(dir, "spec.sexp", "(targets length 2 (+ 1 (* 2 idx)))");
    write(dir, "lang.json", r#"["1", "01"]"#);
    write(dir, "broken-lang.json", r#"["1", "01", "0"]"#);
    write(dir, "bad.sexp", "(const (table (default 0)");
}

#[test]
fn collapse_exit_codes() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    collapse_files(d);
    let ok = gaplab(d, &["collapse", "--program", "prog.sexp", "--spec", "spec.sexp", "--language", "lang.json", "-L", "3"]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stderr));
    let r = report(&ok);
    assert_eq!(r["result"][0]["violations"], 0);
    assert_eq!(r["result"][0]["outcome"]["witness"]["checked"], 15);

    let broken = gaplab(d, &["collapse", "--program", "prog.sexp", "--spec", "spec.sexp", "--language", "broken-lang.json", "-L", "3"]);
    assert_eq!(code(&broken), 1);
    let r = report(&broken);
    assert_eq!(r["result"][0]["outcome"]["promise"]["violations"][0]["input"], "0");

    let malformed = gaplab(d, &["collapse", "--program", "bad.sexp", "--spec", "spec.sexp", "--language", "lang.json"]);
    assert_eq!(code(&malformed), 2);
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("parse error"));

    let missing = gaplab(d, &["collapse", "--program", "prog.sexp", "--spec", "spec.sexp"]);
    assert_eq!(code(&missing), 2);
    assert_eq!(code(&gaplab(d, &["collapse", "--bogus"])), 2);
}

#[test]
fn collapse_ceqp_machine_file() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    // "0" has two accepting paths, "1" one; target 2 on every input
    write(
        d,
        "m.sexp",
        r#"(machine "m" (alphabet "01") (max-len 1) (time 2)
             (tree "" rej) (tree "0" (c acc (c acc rej))) (tree "1" (c acc rej)))"#,
    );
    write(d, "t.sexp", "(targets input 1 2)");
    write(d, "lang.json", r#"["0"]"#);
    let o = gaplab(d, &["collapse", "--class", "ceqp", "--program", "m.sexp", "--spec", "t.sexp", "--language", "lang.json", "-L", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&o)["result"][0]["outcome"]["members"], 1);
    write(d, "wrong.json", r#"["1"]"#);
    let o = gaplab(d, &["collapse", "--class", "ceqp", "--program", "m.sexp", "--spec", "t.sexp", "--language", "wrong.json", "-L", "1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn seeded_fixtures_give_identical_reports() {
    for class in ["lwpp", "two-sided", "ceqp"] {
        let a = TempDir::new().unwrap();
        let b = TempDir::new().unwrap();
        let args = ["collapse", "--class", class, "--random-fixtures", "5", "--seed", "42", "-L", "3", "--report-dir", "out"];
        assert_eq!(code(&gaplab(a.path(), &args)), 0, "{class}");
        assert_eq!(code(&gaplab(b.path(), &args)), 0, "{class}");
        let files: Vec<_> = fs::read_dir(a.path().join("out")).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(files.len(), 1);
        let name = files[0].to_str().unwrap().to_string();
        assert!(name.starts_with("collapse-") && name.ends_with(".json") && name.len() == "collapse-.json".len() + 16);
        let ra = fs::read(a.path().join("out").join(&name)).unwrap();
        let rb = fs::read(b.path().join("out").join(&name)).unwrap();
        assert_eq!(ra, rb);
        let v: Value = serde_json::from_slice(&ra).unwrap();
        assert_eq!(v["config"]["seed"], 42);
    }
}

#[test]
fn reports_are_never_overwritten() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let args = ["diag", "--fixture", "counting-acc", "--report-dir", "out"];
    assert_eq!(code(&gaplab(d, &args)), 0);
    let path = fs::read_dir(d.join("out")).unwrap().next().unwrap().unwrap().path();
    fs::write(&path, "sentinel").unwrap();
    let again = gaplab(d, &args);
    assert_eq!(code(&again), 0);
    assert_eq!(fs::read_to_string(&path).unwrap(), "sentinel");
    assert!(String::from_utf8_lossy(&again.stderr).contains("left untouched"));
    // a different config lands in a new file
    assert_eq!(code(&gaplab(d, &["diag", "--fixture", "counting-acc", "--val", "2", "--report-dir", "out"])), 0);
    assert_eq!(fs::read_dir(d.join("out")).unwrap().count(), 2);
}

#[test]
fn reconstruct_sweep_and_decks() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let o = gaplab(d, &["reconstruct", "--n-max", "7", "--q-poly", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert_eq!(r["result"]["max_pcount"], 1);
    assert_eq!(r["result"]["sizes"][4]["graphs"], 1044);

    let o = gaplab(d, &["reconstruct", "--n-min", "2", "--n-max", "3", "--q-poly", "1"]);
    assert_eq!(code(&o), 1);

    write(d, "deck.json", r#"["Bw", "B?", "B?", "B?"]"#);
    let o = gaplab(d, &["reconstruct", "--deck", "deck.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"]["pcount"], 0);

    write(d, "deck.txt", "A_;A_;A_\n");
    let o = gaplab(d, &["reconstruct", "--deck", "deck.txt", "--h", "(+ len 1)"]);
    let r = report(&o);
    assert_eq!(r["result"]["pcount"], 1);
    assert_eq!(r["result"]["gap"]["g"], "4");

    write(d, "mixed.json", r#"["A_", "Bw"]"#);
    assert_eq!(code(&gaplab(d, &["reconstruct", "--deck", "mixed.json"])), 2);
    assert_eq!(code(&gaplab(d, &["reconstruct", "--n-max", "9"])), 2);
}

fn query_machine(universe: usize) -> String {
    let words: Vec<String> = (0..universe).map(|i| format!("\"w{i}\"")).collect();
    format!(
        r#"{{"name": "q", "time_bound": "1", "universe": [{}],
            "trees": {{"": {{"query": {{"word": "w0", "yes": "accept", "no": "reject"}}}}}}}}"#,
        words.join(", ")
    )
}

#[test]
fn encode_machines() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write(d, "m.json", &query_machine(1));
    let o = gaplab(d, &["encode", "--machine", "m.json"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["result"][0]["report"]["oracles_checked"], 2);
    assert_eq!(r["result"][0]["report"]["degree_ok"], true);

    write(d, "big.json", &query_machine(20));
    let o = gaplab(d, &["encode", "--machine", "big.json"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource"));

    write(d, "deep.json", &query_machine(1).replace("\"time_bound\": \"1\"", "\"time_bound\": \"0\""));
    assert_eq!(code(&gaplab(d, &["encode", "--machine", "deep.json"])), 2);

    let o = gaplab(d, &["encode", "--random-fixtures", "4", "--m", "10", "--depth", "8", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["result"][3]["report"]["oracles_checked"], 1024);
}

#[test]
fn diag_fixtures() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let o = gaplab(d, &["diag", "--fixture", "counting-acc", "--val", "1"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("|C| = 2"));
    let r = report(&o);
    assert_eq!(r["result"]["outcome"]["found"].as_array().unwrap().len(), 2);
    assert_eq!(r["result"]["outcome"]["verified"], true);

    let o = gaplab(d, &["diag", "--fixture", "counting-gap", "--val", "-1", "--t", "000,001"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["result"]["outcome"]["found"][0], "010");
    assert_eq!(r["result"]["outcome"]["conditions"].as_array().unwrap().len(), 4);

    let o = gaplab(d, &["diag", "--fixture", "or", "--val", "1"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("C = None"));

    assert_eq!(code(&gaplab(d, &["diag", "--fixture", "triple", "--val", "3"])), 0);
    assert_eq!(code(&gaplab(d, &["diag", "--fixture", "or", "--max-candidates", "3"])), 2);
    assert_eq!(code(&gaplab(d, &["diag", "--fixture", "constant", "--val", "0"])), 2);
    assert_eq!(code(&gaplab(d, &["diag"])), 2);
}

#[test]
fn diag_stage_file() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    write(
        d,
        "stage.json",
        r#"{
          "n": {"name": "n", "time_bound": "1", "universe": ["00", "01", "10", "11"],
                "trees": {"00": {"query": {"word": "10", "yes": "accept", "no": "reject"}}}},
          "m": {"name": "m", "time_bound": "1",
                "trees": {"00": {"query": {"word": "01", "yes": {"value": "0"}, "no": {"value": "-1"}}}}},
          "nj": 2
        }"#,
    );
    let o = gaplab(d, &["diag", "--stage", "stage.json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&o);
    assert_eq!(r["result"]["outcome"]["val"], "-1");
    assert_eq!(r["result"]["outcome"]["t"][0], "01");
    // ∅ gives gap -1 ≠ 0
    assert_eq!(r["result"]["outcome"]["found"], serde_json::json!([]));
}
