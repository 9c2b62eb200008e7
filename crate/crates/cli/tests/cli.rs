use std::path::PathBuf;
use std::process::{Command, Output};

use gtspline::{IndexTMesh, ParametricTMesh, SectionCore};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtspline")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn check(name: &str) -> Value {
    let out = run(&["check", "--input", fixture(name).to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn check_refinement_step3() {
    let r = check("refinement_step3");
    assert_eq!(r["vmcr"], true);
    assert_eq!(r["dual_compatible"], false);
    assert!(r["weakly_dc_types"].as_array().unwrap().contains(&Value::from("LU")));
}

#[test]
fn check_tensor_passes_everything() {
    let r = check("tensor");
    for key in ["admissible", "ad_plus", "analysis_suitable", "dual_compatible", "vmcr"] {
        assert_eq!(r[key], true, "{key}");
    }
    assert_eq!(r["weakly_dc_types"].as_array().unwrap().len(), 4);
}

#[test]
fn check_is_byte_identical_across_runs() {
    let a = run(&["check", "--input", fixture("weak_not_dual").to_str().unwrap()]);
    let b = run(&["check", "--input", fixture("weak_not_dual").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn truncated_file_exits_with_2_and_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = std::fs::read_to_string(fixture("tensor")).unwrap();
    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    let out = run(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");
}

#[test]
fn non_admissible_mesh_exits_with_3() {
    let t = IndexTMesh::tensor(4, 4, 5, 5).unwrap();
    let m = IndexTMesh::from_edges(
        4,
        4,
        5,
        5,
        |i, j| t.has_h(i, j),
        |i, j| t.has_v(i, j) && !(i == 1 && (2..4).contains(&j)),
    )
    .unwrap();
    let core = SectionCore::Trigonometric { omega: 1.0 };
    let pm = ParametricTMesh::with_index_knots(m, core, core).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mesh.json");
    std::fs::write(&path, pm.to_json()).unwrap();
    let out = run(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn matrix_verdicts_and_flavor_patterns() {
    let out = run(&["matrix", "--input", fixture("tensor").to_str().unwrap()]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("n = 25") && err.contains("n_hat = 25") && err.contains("full_rank = true"), "{err}");

    let pattern = |flavor: &str| {
        let out = run(&["matrix", "--input", fixture("refinement_step2").to_str().unwrap(), "--flavor", flavor]);
        assert!(out.status.success());
        stdout(&out)
            .lines()
            .map(|l| {
                l.split(',')
                    .map(|v| if v.parse::<f64>().map_or(true, |x| x.abs() > 1e-12) { '1' } else { '0' })
                    .collect()
            })
            .collect::<Vec<String>>()
    };
    assert_eq!(pattern("gb"), pattern("poly"));

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let out =
        run(&["matrix", "--input", fixture("weak_not_dual").to_str().unwrap(), "--output", csv.to_str().unwrap()]);
    assert!(stdout(&out).contains("full_rank = true"));
    assert!(std::fs::read_to_string(csv).unwrap().starts_with("anchor,"));
}

#[test]
fn refine_writes_reparsable_steps() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["refine", "--steps", "4", "--output", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    for k in 0..=4 {
        let path = dir.path().join(format!("step_{k}.json"));
        let r = check_path(&path);
        assert_eq!(r["vmcr"], true, "step {k}");
        // the second step is the first one that breaks dual compatibility
        assert_eq!(r["dual_compatible"], k < 2, "step {k}");
        let again = ParametricTMesh::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(again.to_json() + "\n", std::fs::read_to_string(&path).unwrap());
    }
    assert!(!dir.path().join("step_5.json").exists());

    let zero = tempfile::tempdir().unwrap();
    assert!(run(&["refine", "--steps", "0", "--output", zero.path().to_str().unwrap()]).status.success());
    assert_eq!(std::fs::read_dir(zero.path()).unwrap().count(), 1);

    let out = run(&["refine", "--steps", "20", "--output", zero.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

fn check_path(path: &std::path::Path) -> Value {
    let out = run(&["check", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn surface_from_helicoid_reports_small_error() {
    let dir = tempfile::tempdir().unwrap();
    let shape = dir.path().join("shape.json");
    std::fs::write(&shape, r#"{"shape":"helicoid","r1":0.5,"r2":1.0,"h":6.0,"omega":3.0}"#).unwrap();
    let obj = dir.path().join("h.obj");
    let out =
        run(&["surface", "--shape", shape.to_str().unwrap(), "--resolution", "21", "--output", obj.to_str().unwrap()]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    let e: f64 = err.trim().strip_prefix("max error = ").unwrap().parse().unwrap();
    assert!(e <= 1e-6, "{e}");
    let text = std::fs::read_to_string(obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 21 * 21);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 20 * 20);
}

#[test]
fn surface_from_constant_net() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    let points = vec![[1.0, 2.0, 3.0]; 25];
    std::fs::write(&net, serde_json::json!({ "points": points }).to_string()).unwrap();
    let out = run(&[
        "surface",
        "--input",
        fixture("tensor").to_str().unwrap(),
        "--net",
        net.to_str().unwrap(),
        "--resolution",
        "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "s,t,x,y,z");
    assert_eq!(lines.len(), 5);
    for l in &lines[1..] {
        let xyz: Vec<f64> = l.split(',').skip(2).map(|v| v.parse().unwrap()).collect();
        for (got, want) in xyz.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{l}");
        }
    }

    std::fs::write(&net, serde_json::json!({ "points": vec![[0.0; 3]; 3] }).to_string()).unwrap();
    let out = run(&["surface", "--input", fixture("tensor").to_str().unwrap(), "--net", net.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_settings_are_rejected() {
    let tensor = fixture("tensor");
    assert!(!run(&["check", "--input", tensor.to_str().unwrap(), "--rank-tol", "0"]).status.success());
    assert!(!run(&["surface", "--input", tensor.to_str().unwrap(), "--resolution", "1"]).status.success());
    assert_eq!(run(&["check", "--flavor", "cubic"]).status.code(), Some(2));
}

#[test]
fn chain_is_seeded() {
    let a = run(&["chain", "--count", "4", "--seed", "11"]);
    let b = run(&["chain", "--count", "4", "--seed", "11"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["meshes"], 4);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
}
