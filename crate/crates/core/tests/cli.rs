use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fillcurve")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("valid JSON on stdout");
    (out.status.code().unwrap(), v)
}

#[test]
fn verify_q2_passes() {
    let (code, v) = json(&["verify", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "fillcurve/1");
    assert_eq!(v["command"], "verify --q 2");
    assert_eq!(v["exit_status"], 0);
    assert_eq!(v["counts"]["failed"], 0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass" && c["witness"].is_null()));
}

#[test]
fn deep_verify_scans_sextic_extension() {
    let (code, v) = json(&["verify", "--q", "2", "--deep"]);
    assert_eq!(code, 0);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"].as_str().unwrap().contains("m=1,2,3,6")));
}

#[test]
fn rejected_inputs_exit_2() {
    assert_eq!(run(&["verify", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--q", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["curve", "--q", "3", "--cubic", "0,1"]).status.code(), Some(2));
    assert_eq!(run(&["curve", "--q", "3", "--cubic", "0,1,5"]).status.code(), Some(2));
    let out = run(&["centralizer", "--q", "3", "--n", "2", "--poly", "2,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reducible"));
    assert_eq!(run(&["centralizer", "--q", "3", "--n", "3", "--poly", "1,0"]).status.code(), Some(2));
}

#[test]
fn curve_reports() {
    let (code, v) = json(&["curve", "--q", "2", "--cubic", "0,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["smoothness"]["criterion"], true);
    assert_eq!(v["report"]["automorphisms"]["order"], 7);

    let (_, v) = json(&["curve", "--q", "3", "--cubic", "0,1,1"]);
    assert_eq!(v["report"]["automorphisms"]["order"], 39);
    assert_eq!(v["report"]["automorphisms"]["tallini_corrected"], true);

    let (code, v) = json(&["curve", "--q", "2", "--cubic", "0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["irreducible"], false);
    assert_eq!(v["report"]["smoothness"]["criterion"], false);
    let m1 = &v["report"]["smoothness"]["scan"][0];
    assert_eq!(m1["m"], 1);
    assert_eq!(m1["points"][0], "(1,1,1)");
    assert!(v["report"]["automorphisms"].is_null());
}

#[test]
fn centralizer_reports() {
    let (_, v) = json(&["centralizer", "--q", "2", "--n", "3", "--poly", "1,1,0"]);
    let r = &v["report"];
    assert_eq!(
        (r["z_gl_order"].as_u64(), r["pgl_image_order"].as_u64(), r["pi_image_order"].as_u64()),
        (Some(7), Some(7), Some(1))
    );
    let (_, v) = json(&["centralizer", "--q", "3", "--n", "2", "--poly", "1,0"]);
    let r = &v["report"];
    assert_eq!(
        (r["z_gl_order"].as_u64(), r["pgl_image_order"].as_u64(), r["pi_image_order"].as_u64()),
        (Some(8), Some(4), Some(2))
    );
    let (code, v) = json(&["centralizer", "--q", "4", "--n", "3", "--poly", "w,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["support_k"], 3);
    assert_eq!(v["report"]["pi_image_order"], 3);
}

#[test]
fn classify_outputs() {
    let (_, v) = json(&["classify", "--q", "2"]);
    assert_eq!(v["report"]["classes"].as_array().unwrap().len(), 1);
    assert_eq!(v["report"]["classes"][0]["size"], 2);

    let (_, v) = json(&["classify", "--q", "4"]);
    let reps: Vec<&str> =
        v["report"]["classes"].as_array().unwrap().iter().map(|c| c["representative"].as_str().unwrap()).collect();
    assert!(reps.contains(&"[0,0],[0,0],[0,1]") && reps.contains(&"[0,0],[0,0],[1,1]"), "{reps:?}");

    let out = run(&["classify", "--q", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "\"c,b,a\",polynomial,size,labels");
    assert_eq!(lines.len(), 3);
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("fillcurve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("classify.json");
    let out = run(&["classify", "--q", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let stdout = run(&["classify", "--q", "3", "--format", "json"]).stdout;
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_count_does_not_change_output() {
    let one = Command::new(env!("CARGO_BIN_EXE_fillcurve"))
        .args(["verify", "--q", "2,3"])
        .env("FILLCURVE_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_fillcurve"))
        .args(["verify", "--q", "2,3"])
        .env("FILLCURVE_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
}
