use std::path::PathBuf;
use std::process::{Command, Output};

const GOLDEN_G2_C3_SEED1: &str = "5af9dfc365b1c542b0e881a729195a582d07e11b722f11db7c443e17a054e96e";

fn slk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slk"))
        .args(args)
        .env_remove("SLK_SEED")
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn generate_matches_golden_digest() {
    let o = slk(&["generate", "-g", "2", "-c", "3", "--seed", "1"]);
    assert!(o.status.success());
    assert_eq!(slk_core::io::digest(&o.stdout), GOLDEN_G2_C3_SEED1);
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_slk"))
        .args(["generate", "-g", "2", "-c", "3"])
        .env("SLK_SEED", "1")
        .output()
        .unwrap();
    assert_eq!(slk_core::io::digest(&o.stdout), GOLDEN_G2_C3_SEED1);
}

#[test]
fn bundled_example_is_its_golden_output() {
    let text = std::fs::read(data("genus2_c3.json")).unwrap();
    assert_eq!(slk_core::io::digest(&text), GOLDEN_G2_C3_SEED1);
}

#[test]
fn validate_bundled_example() {
    let o = slk(&["validate", &data("genus2_c3.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("check cellular: pass"));
    assert!(out.contains("c: 3"));
    assert!(out.contains("g: 2"));
}

#[test]
fn validate_json_report() {
    let o = slk(&["--json", "validate", &data("genus2_c3.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_status"], 0);
    assert_eq!(v["input_digest"], GOLDEN_G2_C3_SEED1);
    assert_eq!(v["counts"]["c"], 3);
}

#[test]
fn zero_fill_request_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("genus2_c3.json")).unwrap();
    let with_fill = text.replacen('{', "{\n  \"fill_requests\": [{\"circle\": 0, \"t\": 0}],", 1);
    let path = dir.path().join("d.json");
    std::fs::write(&path, with_fill).unwrap();
    let o = slk(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nonzero"), "{}", stderr(&o));
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"vertices\": [[0,1,2,3]],\n  \"opposite\": oops\n}\n").unwrap();
    let o = slk(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn missing_field_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"vertices\": [[0,1,2,3]]}").unwrap();
    let o = slk(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("opposite"), "{}", stderr(&o));
}

#[test]
fn non_prime_diagram_exits_one() {
    use slk_core::fal_diagram::{DiagramJson, FalDiagram};
    use slk_core::generate::{connect_sum, generate_fal, GeneratorConfig};
    let trefoil: DiagramJson = serde_json::from_str(
        r#"{"vertices": [[0,1,2,3],[4,5,6,7],[8,9,10,11]],
            "opposite": [[0,5],[3,6],[4,9],[7,10],[1,8],[2,11]],
            "vertex_kind": ["crossing","crossing","crossing"],
            "over_pair": [0,0,0], "half_twist": [false,false,false], "genus": 0}"#,
    )
    .unwrap();
    let first = generate_fal(&GeneratorConfig::new(2, 3), 1).unwrap();
    let sum = connect_sum(&first, &FalDiagram::from_json(&trefoil).unwrap(), 0, 0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sum.json");
    std::fs::write(&path, slk_core::io::diagram_to_string(&sum)).unwrap();
    let o = slk(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("check weakly_prime: FAIL"), "{}", stdout(&o));
}

#[test]
fn decompose_exports_gluing_table() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("gluing.txt");
    let o = slk(&["decompose", &data("genus2_c3.json"), "--export-gluing", table.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("tetrahedra: 66"));
    assert!(stdout(&o).contains("triangles: 22"));
    let lines = std::fs::read_to_string(&table).unwrap().lines().count();
    assert_eq!(lines, 66);
}

#[test]
fn bounds_report() {
    let o = slk(&["--json", "bounds", "-c", "6", "-g", "2", "-l", "4", "-m", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bounds"]["cusps"], 14);
    assert_eq!(v["counts"]["tetrahedra"], 120);
    let lower = v["bounds"]["lower"].as_f64().unwrap();
    assert!((lower - 14.0 * slk_core::bowtie::V_TET).abs() < 1e-9);
}

#[test]
fn augment_then_fill_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let filled = dir.path().join("filled.json");
    let o = slk(&["fill", &data("genus2_c3.json"), "--circle", "0:2", "--circle", "1:-1", "-o", filled.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = slk(&["augment", filled.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let augmented = dir.path().join("augmented.json");
    std::fs::write(&augmented, &o.stdout).unwrap();
    let o = slk(&["validate", augmented.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("c: 3"));
}

#[test]
fn zero_fill_on_command_line() {
    let o = slk(&["fill", &data("genus2_c3.json"), "--circle", "0:0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn family_specs() {
    let o = slk(&["family", &data("doubled.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("cusps: 14"));
    let o = slk(&["--json", "family", &data("mapping_torus.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"]["m"], 10);
    assert_eq!(v["counts"]["twist_regions"], 4);
    assert!(v["bounds"]["lower"].as_f64().unwrap() > 20.0);
}

#[test]
fn homology_trivial_monodromy_is_explained() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let base = data("genus2_c3_l1.json");
    let text = format!(
        r#"{{"kind": "mapping_torus", "base": {base:?}, "phi": [["a2", 1]],
            "gamma_odd": "a1", "gamma_even": "b1", "m": 1}}"#
    );
    std::fs::write(&spec, text).unwrap();
    let o = slk(&["family", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hyperelliptic"), "{}", stderr(&o));
}

#[test]
fn curve_queries() {
    let o = slk(&["--json", "curves", "-g", "2", "geometric", "a1", "b1a2B1A2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["geometric_intersection"], 2);
    let o = slk(&["--json", "curves", "-g", "2", "algebraic", "a1", "[0,1,0,0]"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebraic_intersection"], 1);
    let o = slk(&["--json", "curves", "-g", "2", "apply", "--twist", "a1", "b1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["homology"], serde_json::json!([-1, 1, 0, 0]));
    let o = slk(&["curves", "-g", "2", "geometric", "a1", "[1,0,0,0]"]);
    assert_eq!(o.status.code(), Some(2));
}
