use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chowtwist")).args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn cohomology_examples() {
    assert!(stdout_of(&["cohomology", "--group", "Q8", "--module", "omega2Z", "--degree", "2"]).contains("H^2 | Z/8"));
    assert!(stdout_of(&["cohomology", "--group", "klein4", "--module", "trivialF2", "--degree", "5"]).contains("dim 6"));
    assert!(stdout_of(&["cohomology", "--group", "C1", "--module", "trivialZ", "--degree", "3"]).contains("H^3 | 0"));
}

#[test]
fn twisted_chow_examples() {
    assert!(stdout_of(&["twisted-chow", "--group", "klein4", "--module", "omega:-4", "--degree", "1"]).contains("dim 7"));
    assert!(stdout_of(&["twisted-chow", "--group", "C6", "--module", "trivialZ", "--degree", "2"]).contains("Z/6"));
    let q8 = stdout_of(&["twisted-chow", "--group", "Q8", "--module", "omega2Z", "--degree", "1", "--show-exponent"]);
    assert!(q8.contains("exponent | 4"), "{q8}");
    assert!(q8.contains("ambient  | Z/8"), "{q8}");
}

#[test]
fn oracle_column() {
    let out = stdout_of(&["twisted-chow", "--group", "klein4", "--module", "omega:-1", "--degree", "0..2", "--oracle"]);
    assert_eq!(out.matches("oracle |").count(), 3, "{out}");
}

#[test]
fn json_is_deterministic_and_parses() {
    let args = ["twisted-chow", "--group", "Q8", "--module", "trivialZ", "--format", "json"];
    let a = stdout_of(&args);
    assert_eq!(a, stdout_of(&args));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let values = v.as_array().unwrap();
    assert_eq!(values.len(), 4);
    assert_eq!(values[2]["value"]["torsion"], serde_json::json!([8]));
    assert_eq!(values[1]["method"], "image_computation");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["cohomology", "--group", "C5", "--module", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--group", "S7", "--module", "trivialZ"]).status.code(), Some(2));
    assert_eq!(run(&["twisted-chow", "--group", "C3", "--module", "trivialZ", "--degree", "4"]).status.code(), Some(3));
    let capped = run(&["cohomology", "--group", "Q8", "--module", "regular", "--degree", "6"]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("offending dimension"));
    assert_eq!(run(&["twisted-motivic", "--group", "C4", "--module", "trivialF2"]).status.code(), Some(4));
}

#[test]
fn descriptor_files() {
    let dir = std::env::temp_dir().join(format!("chowtwist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sign.json");
    std::fs::write(&path, r#"{"group":"C4","ring":"Z","rank":1,"action":{"s":[[-1]]}}"#).unwrap();
    let out = stdout_of(&["tate", "--group", "C4", "--module", path.to_str().unwrap(), "--degree", "0..1"]);
    assert!(out.contains("Ĥ^0 | 0") && out.contains("Ĥ^1 | Z/2"), "{out}");
    std::fs::write(&path, r#"{"ring":"Z","rank":1,"action":{},"extra":true}"#).unwrap();
    assert_eq!(run(&["tate", "--group", "C4", "--module", path.to_str().unwrap()]).status.code(), Some(2));
    // S3 as permutations of {0,1,2}: not a supported family for Chow groups
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table: Vec<Vec<usize>> =
        perms.iter().map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect();
    let s3 = dir.join("s3.json");
    let desc = serde_json::json!({
        "name": "S3",
        "order": 6,
        "table": table,
        "generators": [1, 3],
        "labels": ["1", "r", "r2", "t", "tr", "tr2"],
    });
    std::fs::write(&s3, desc.to_string()).unwrap();
    let s3 = s3.to_str().unwrap();
    assert!(stdout_of(&["cohomology", "--group", s3, "--module", "trivialZ", "--degree", "2"]).contains("Z/2"));
    assert_eq!(run(&["twisted-chow", "--group", s3, "--module", "trivialZ", "--degree", "1"]).status.code(), Some(4));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_paper_batteries() {
    let out = stdout_of(&["verify-paper", "counterexample", "--m", "2..3"]);
    assert!(out.contains("m=3 CH^1") && out.trim_end().ends_with("PASS"), "{out}");
    let reg = stdout_of(&["verify-paper", "regularity", "--m", "2..8"]);
    assert!(reg.contains("m=8 regularity             3"), "{reg}");
    assert!(stdout_of(&["verify-paper", "cyclic", "--orders", "2..6"]).trim_end().ends_with("PASS"));
}

#[test]
fn graded_and_coflasque() {
    let g = stdout_of(&["graded", "--group", "klein4", "--module", "omega:4"]);
    assert!(g.contains("Betti shape       | [4, 6, 2]") && g.contains("regularity        | 1"), "{g}");
    let c = stdout_of(&["coflasque", "--group", "klein4", "--module", "counterexample:A:2"]);
    assert!(c.contains("coflasque         | yes") && c.contains("Q coflasque       | true"), "{c}");
}

#[test]
fn json_round_trips() {
    use chowtwist::chow::TwistedChowResult;
    use chowtwist::verify::Battery;
    let out = stdout_of(&["twisted-chow", "--group", "Q8", "--module", "omega2Z", "--degree", "1..2", "--format", "json"]);
    let results: Vec<TwistedChowResult> = serde_json::from_str(&out).unwrap();
    assert_eq!(results[0].ambient.as_ref().unwrap().to_string(), "Z/8");
    let back = serde_json::to_value(&results).unwrap();
    assert_eq!(back, serde_json::from_str::<serde_json::Value>(&out).unwrap());

    let out = stdout_of(&["verify-paper", "klein", "--m", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let batteries: Vec<Battery> = serde_json::from_value(v["batteries"].clone()).unwrap();
    assert!(v["pass"].as_bool().unwrap() && batteries[0].pass());
}
