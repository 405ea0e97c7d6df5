use std::io::Write;
use std::process::{Command, Output, Stdio};

use fiberlrc::fixtures::{example1, table_b};
use fiberlrc::specfile::CodeSpecFile;
use fiberlrc::{CodeSpec, PrimeField};
use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fiberlrc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn example_spec() -> String {
    CodeSpecFile::from_spec(&example1::spec().unwrap()).to_json()
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn build_summary() {
    let v = json(&run(&["build", "-"], &example_spec()));
    assert_eq!((v["n"].as_u64(), v["k"].as_u64(), v["r"].as_u64()), (Some(16), Some(9), Some(3)));
    assert_eq!(v["singleton"], 6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["build", "-"], "{").status.code(), Some(2));
    assert_eq!(run(&["build", "-"], r#"{"q":7,"kind":"plane","b":3,"r":1,"points":[[0,1],[0,99]]}"#).status.code(), Some(2));
    let crowded = r#"{"q":31,"kind":"plane","b":8,"r":3,"points":{"seed":1}}"#;
    assert_eq!(run(&["build", "-"], crowded).status.code(), Some(3));
    let big = r#"{"q":31,"kind":"plane","b":6,"r":3,"points":{"seed":1}}"#;
    assert_eq!(run(&["mindist", "-", "--engine", "exhaustive"], big).status.code(), Some(4));
    assert_eq!(run(&["reproduce", "nothing"], "").status.code(), Some(2));
}

#[test]
fn mindist_example_and_table_row() {
    let v = json(&run(&["mindist", "-", "--verify"], &example_spec()));
    assert_eq!(v["d"], 6);
    assert_eq!(v["optimal"], true);
    assert_eq!(v["verified_by"], "structured");
    assert_eq!(v["witness"].as_array().unwrap().iter().filter(|x| *x != 0).count(), 6);

    let f = PrimeField::new(table_b::Q).unwrap();
    let spec = CodeSpecFile::from_spec(&CodeSpec::plane(f, table_b::R, 7, table_b::points())).to_json();
    let v = json(&run(&["mindist", "-"], &spec));
    assert_eq!(v["d"], 23);
}

#[test]
fn encode_then_recover() {
    let spec = example_spec();
    let out = run(&["encode", "-", "--message", "[2,18,9,21,3,17,14,2,1]"], &spec);
    let word: Vec<Option<u64>> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(word.iter().map(|v| v.unwrap()).collect::<Vec<_>>(), example1::CODEWORD);
    let mut damaged = word.clone();
    damaged[0] = None;
    damaged[9] = Some(5);
    let args = ["recover", "-", "--word", &serde_json::to_string(&damaged).unwrap(), "--erased", "[10]"];
    let fixed: Vec<u64> = serde_json::from_slice(&run(&args, &spec).stdout).unwrap();
    assert_eq!(fixed, example1::CODEWORD);
    let args = ["recover", "-", "--word", "[null,null,0,0,0,0,0,0,0,0,0,0,0,0,0,0]"];
    assert_eq!(run(&args, &spec).status.code(), Some(1));
}

#[test]
fn matroid_verify_two_files() {
    let a = spec_file(&example_spec());
    let moved = example1::points().with_xs(&example1::OTHER_XS.map(fiberlrc::Fe));
    let other = CodeSpec::plane(PrimeField::new(31).unwrap(), 3, 0, moved);
    let b = spec_file(&CodeSpecFile::from_spec(&other).to_json());
    let v = json(&run(&["matroid-verify", a.path().to_str().unwrap(), b.path().to_str().unwrap()], ""));
    assert_eq!(v["holds"], true);
    assert_eq!(v["t"].as_array().unwrap().len(), 9);
}

#[test]
fn reproduce_fast_targets() {
    for t in ["example", "counterexample", "matroid"] {
        let v = json(&run(&["reproduce", t], ""));
        assert_eq!(v["pass"], true, "{t}");
    }
}

#[test]
fn known_nonoptimal_set() {
    let v = json(&run(&["nonoptimal-search", "--known", "--trials", "1"], ""));
    assert_eq!(v["candidate"], 0);
    assert_eq!(v["weight"], 6);
    assert_eq!(v["g"], serde_json::json!([1, 26, 19, 33, 25, 7, 8, 34]));
    assert_eq!(run(&["nonoptimal-search", "--trials", "0"], "").status.code(), Some(4));
}

#[test]
fn tables_and_determinism() {
    let args = ["montecarlo", "--q", "37,41", "--trials", "8", "--seed", "3", "--format", "csv"];
    let one = run(&[&args[..], &["--threads", "1"]].concat(), "");
    let two = run(&[&args[..], &["--threads", "2"]].concat(), "");
    assert!(one.status.success());
    assert_eq!(one.stdout, two.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.starts_with("q,trials,optimal,fraction,ci_low,ci_high\n"));
    assert_eq!(text.lines().count(), 3);

    let v = json(&run(&["asymptotics", "--m-max", "4"], ""));
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["k_limit"], 0.25);

    let out = run(&["table", "-", "--z", "0,1", "--format", "csv"], &example_spec());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("z,\"[n, k, d]\",d_z,d_opt,optimal"));
    assert!(text.contains("\"[16, 9, 6]_31\""));
}

#[test]
fn resolved_spec_round_trips() {
    let seeded = r#"{"q":13,"kind":"bundle","b":2,"t":2,"alpha":1,"beta":1,"m":2,"points":{"seed":4}}"#;
    let out = run(&["build", "-", "--resolve"], seeded);
    let text = String::from_utf8(out.stdout).unwrap();
    let file = CodeSpecFile::from_json(&text).unwrap();
    assert_eq!(CodeSpecFile::from_json(&file.to_json()).unwrap(), file);
    let a = json(&run(&["build", "-"], seeded));
    let b = json(&run(&["build", "-"], &text));
    assert_eq!(a, b);
    assert_eq!(a["t"], 2);
}
