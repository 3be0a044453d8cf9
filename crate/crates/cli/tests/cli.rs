use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperrefl"))
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out: Output = bin().args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const D11: &str = "gens x y R t\nrels\nx^27\ny^128\nR^2\nt^4\n(x,y)\n(x,R)\n(x,t)\n(y,R)\n(y,t)\n(R,t)\n";

const PSL27: &str = "group PSL27\ngens a b\nrels\na^2\nb^3\n(a*b)^7\n(a,b)^4\n";

/// Synthetic stand-ins with the published quotient orders, used only to
/// exercise the battery plumbing.
fn fixture_dir(dir: &Path) {
    write(dir, "picard_d3.txt", "gens I0 R\nrels\nI0^2\nR^3\n(I0*R)^5\n");
    write(dir, "picard_d1.txt", "G<R,I0> := Group<R,I0 | R^4, I0^96, (R,I0)>;\n");
    write(dir, "picard_d7.txt", "gens g1 g2 b\nrels\ng2^2\n(g2,g1)\n(g2,b)\n(g1*g2)^2\nb^3\n(g1*g2*b)^7\n(g1*g2,b)^4\n");
    write(dir, "picard_d7.map", "domain 7\nI0 g1 builtin\nR g2 builtin\n");
    write(dir, "picard_d2.txt", "gens I0 R t\nrels\nI0^2\nR = I0\nt^4\n(t,I0)\n");
    write(dir, "picard_d11.txt", D11);
    write(dir, "picard_d11.map", "domain 11\nI0 x*y builtin\nR R builtin\n");
    let letters = ["Rsigma", "I0", "Ri", "Rsigma^-1", "I0^-1", "Ri^-1"];
    let words: Vec<String> = letters
        .iter()
        .map(|l| l.to_string())
        .chain(letters.iter().flat_map(|a| letters.iter().map(move |b| format!("{a}*{b}"))))
        .collect();
    let mut h = String::from("gens I0 Ri Rsigma\nrels\nRsigma^648\nI0 = Rsigma^12\nRi\n");
    for (u, v) in words.iter().flat_map(|u| words.iter().map(move |v| (u, v))).take(997) {
        h.push_str(&format!("({u},{v})\n"));
    }
    h.push_str("Rsigma^2\n");
    write(dir, "hurwitz_truncated_1000.txt", &h);
}

#[test]
fn certify_builtins() {
    let (code, v, _) = run(&["certify", "--builtin", "I0", "--d", "7"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["is_reflection"], true);
    assert_eq!(r["mirror_multiplicity"], 2);
    let eig: Vec<(String, u64, bool)> = r["certificate"]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_str().unwrap().to_string(), e["multiplicity"].as_u64().unwrap(), e["negative_type"].as_bool().unwrap()))
        .collect();
    assert_eq!(eig, vec![("-1".to_string(), 2, true), ("1".to_string(), 1, false)]);
    assert_eq!(v["command"], "certify");

    let (code, v, _) = run(&["certify", "--builtin", "Rsigma", "--quaternion"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["is_reflection"], true);
}

#[test]
fn certify_rejects_non_isometry() {
    let (code, v, stderr) = run(&["certify", "--matrix", "[2,0,0;0,1,0;0,0,1]", "--d", "1"]);
    assert_eq!(code, 2);
    assert!(v["result"]["error"].as_str().unwrap().contains("Siegel form"));
    assert!(stderr.contains("error"));
    let (code, _, _) = run(&["certify", "--builtin", "Ri", "--d", "7"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["certify", "--builtin", "I0", "--d", "4"]);
    assert_eq!(code, 2);
}

#[test]
fn order_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.txt", PSL27);
    let strip = |mut v: Value| {
        v["result"]["enumeration"]["stats"]["elapsed_seconds"] = Value::Null;
        v
    };
    let (code, a, _) = run(&["order", &f]);
    assert_eq!(code, 0);
    assert_eq!(a["result"]["order"], 168);
    assert_eq!(a["result"]["statement"], "order = 168");
    let (_, b, _) = run(&["order", &f]);
    assert_eq!(strip(a), strip(b));
    let (_, c, _) = run(&["order", &f, "--strategy", "felsch"]);
    assert_eq!(c["result"]["order"], 168);
}

#[test]
fn index_with_relators_and_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "g.txt", PSL27);
    let (code, v, _) = run(&["index", &f, "--relator", "a"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["index"], 1);
    assert_eq!(v["result"]["statement"], "index = 1");

    let (code, v, _) = run(&["index", &f, "--relator", "(a*b)^2", "--truncate", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["relation"], "divides");
    assert_eq!(v["result"]["file"]["truncated"], true);
    assert!(v["result"]["statement"].as_str().unwrap().starts_with("index divides"));

    let (code, v, _) = run(&["index", &f, "--relator", "c"]);
    assert_eq!(code, 2);
    assert!(v["result"]["error"].as_str().unwrap().contains("unknown generator"));
}

#[test]
fn index_through_a_name_map() {
    let dir = tempfile::tempdir().unwrap();
    fixture_dir(dir.path());
    let f = dir.path().join("picard_d7.txt").display().to_string();
    let (code, v, _) = run(&["index", &f, "--relator", "I0"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["index"], 1);
    assert_eq!(v["result"]["bindings"].as_array().unwrap().len(), 2);
    assert_eq!(v["job"]["domain"], "d=7");

    let bad = write(dir.path(), "bad.map", "domain 7\nR g2 [1,0,0; 0,1,0; 0,0,1]\n");
    let (code, v, _) = run(&["index", &f, "--relator", "R", "--map", &bad]);
    assert_eq!(code, 2);
    assert!(v["result"]["error"].as_str().unwrap().contains("not a reflection"));
}

#[test]
fn limit_exceeded_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "free.txt", "gens a b\nrels\na^2\nb^3\n");
    let (code, v, _) = run(&["order", &f, "--max-cosets", "1000", "--progress", "0"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["enumeration"]["status"], "limit_exceeded");
    assert_eq!(v["result"]["order"], Value::Null);
}

#[test]
fn abelian_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ab.txt", "gens a b c\nrels\na^4\nb^6\n(a,b)\n");
    let (code, v, _) = run(&["abelian", &f]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["invariants"], serde_json::json!([2, 12, 0]));
    assert_eq!(v["result"]["free_rank"], 1);
    assert_eq!(v["result"]["order"], Value::Null);
}

#[test]
fn input_errors() {
    let (code, _, stderr) = run(&["order", "/nonexistent/file.txt"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("/nonexistent/file.txt"));
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "gens a\nrels\na^2 b\n");
    let (code, v, _) = run(&["order", &f]);
    assert_eq!(code, 2);
    assert!(v["result"]["error"].as_str().unwrap().starts_with("3:5"));
}

#[test]
fn output_flag_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = bin().args(["certify", "--builtin", "R", "--d", "3", "--output"]).arg(&out).status().unwrap();
    assert!(status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["is_reflection"], true);
    assert_eq!(v["result"]["order_modulo_scalars"], 3);
}

#[test]
fn verify_paper_on_synthetic_data() {
    let dir = tempfile::tempdir().unwrap();
    fixture_dir(dir.path());
    let d = dir.path().display().to_string();
    let (code, v, _) = run(&["verify-paper", "--data-dir", &d, "--jobs", "4"]);
    let summary = &v["result"]["summary"];
    assert_eq!(code, 0, "{summary}");
    assert_eq!(summary["passed"], 26);
    let hurwitz = v["result"]["files"].as_array().unwrap().iter().find(|f| f["dataset"] == "hurwitz_truncated_1000").unwrap();
    assert_eq!(hurwitz["truncated"], true);
    assert_eq!(hurwitz["relators_read"], 1000);
    let ri = v["result"]["indices"].as_array().unwrap().iter().find(|r| r["id"] == "H-Ri").unwrap();
    assert_eq!(ri["statement"], "index divides 648");

    let (code, v, _) = run(&["verify-paper", "--data-dir", &d, "--skip-slow", "--jobs", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["summary"]["skipped"], 3);
}

#[test]
fn verify_paper_reports_missing_and_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    fixture_dir(dir.path());
    std::fs::remove_file(dir.path().join("picard_d11.txt")).unwrap();
    let d = dir.path().display().to_string();
    let (code, v, stderr) = run(&["verify-paper", "--data-dir", &d]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["summary"]["missing"], 2);
    assert!(stderr.contains("picard_d11: missing"));

    write(dir.path(), "picard_d11.txt", &D11.replace("t^4", "t^5"));
    let (code, v, _) = run(&["verify-paper", "--data-dir", &d, "--skip-slow"]);
    assert_eq!(code, 1);
    let r = v["result"]["indices"].as_array().unwrap().iter().find(|r| r["id"] == "d11-R-I0").unwrap();
    assert_eq!(r["status"], "mismatch");
    assert_eq!(r["computed"], 5);
}
