use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fquandle::{validate, FTable, Level, Presentation};
use tempfile::TempDir;

const S3_TABLE: [[usize; 6]; 6] = [
    [0, 0, 0, 0, 0, 0],
    [4, 4, 5, 1, 5, 1],
    [3, 2, 3, 3, 2, 2],
    [2, 3, 2, 2, 3, 3],
    [1, 5, 4, 5, 1, 4],
    [5, 1, 1, 4, 4, 5],
];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fquandle")).args(args).env_remove("FQUANDLE_ORDER_CAP").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn table_file(dir: &TempDir, name: &str, rows: &[&[usize]]) -> PathBuf {
    let t = FTable::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
    write(dir, name, &serde_json::to_string(&t).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_s3_fixture_is_a_quandle() {
    let dir = TempDir::new().unwrap();
    let rows: Vec<&[usize]> = S3_TABLE.iter().map(|r| &r[..]).collect();
    let f = table_file(&dir, "s3.json", &rows);
    let o = run(&["check", s(&f), "--level", "quandle"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn check_reports_unique_solution_witness() {
    let dir = TempDir::new().unwrap();
    let f = table_file(&dir, "bad.json", &[&[1, 1], &[0, 1]]);
    let o = run(&["check", s(&f), "--level", "rack", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let hit = v["violations"].as_array().unwrap().iter().any(|x| x["condition"] == "unique-solution");
    assert!(hit, "{v}");
}

#[test]
fn malformed_input_has_its_own_exit_code() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "m.json", "{\"order\": 2, \"table\": [[0,");
    assert_eq!(code(&run(&["check", s(&f)])), 3);
    let g = write(&dir, "range.json", "{\"order\": 2, \"table\": [[0, 5], [1, 1]]}");
    assert_eq!(code(&run(&["check", s(&g)])), 3);
}

#[test]
fn one_based_input_is_normalized() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ob.json", "{\"order\": 2, \"table\": [[2, 2], [1, 1]], \"one_based\": true}");
    let out = dir.path().join("t.json");
    assert_eq!(code(&run(&["twist", s(&f), "--phi", "0 1", "--out", s(&out)])), 0);
    let t: FTable = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t.rows(), vec![vec![1, 1], vec![0, 0]]);
}

#[test]
fn classify_no_quandle_counts() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c2.json");
    let o = run(&["classify", "--order", "2", "--filter", "no-quandle", "--out", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("no-quandle filter: 1 classes"));
    let c: fquandle::Catalog = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c.twisted_class_count, 1);

    let o3 = run(&["classify", "--order", "3", "--filter", "no-quandle"]);
    assert!(stdout(&o3).contains("no-quandle filter: 1 classes"), "{}", stdout(&o3));
}

#[test]
fn classify_respects_order_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_fquandle"))
        .args(["classify", "--order", "4"])
        .env("FQUANDLE_ORDER_CAP", "3")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["classify", "--order", "3", "--order-cap", "9"])), 2);
}

#[test]
fn classify_csv_lists_every_member() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c3.csv");
    assert_eq!(code(&run(&["classify", "--order", "3", "--out", s(&out), "--format", "csv"])), 0);
    let mut r = csv::Reader::from_path(&out).unwrap();
    assert_eq!(r.headers().unwrap().len(), 6);
    assert_eq!(r.records().count(), 10);
}

#[test]
fn cohom_alexander_instances_agree_with_oracle() {
    for (t, s_) in [("1", "1"), ("1", "2")] {
        let o = run(&["cohom", "--mod", "3", "--T", t, "--S", s_, "--max-degree", "2"]);
        assert_eq!(code(&o), 0);
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let degrees = v["degrees"].as_array().unwrap();
        assert_eq!(degrees.len(), 2);
        assert!(degrees.iter().all(|d| d["oracle_agrees"] == true));
    }
}

#[test]
fn cohom_rejects_non_unit_before_reading_input() {
    let o = run(&["cohom", "/nonexistent.json", "--mod", "4", "--T", "2", "--S", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a unit"));
}

#[test]
fn cohom_reference_record() {
    let o = run(&["cohom", "--mod", "3", "--T", "1", "--S", "1", "--compare-reference"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let refs = v["reference"].as_array().unwrap();
    assert_eq!(refs.len(), 2);
    assert_eq!(refs[0]["instance"]["reported_h1_dim"], 3);
    assert_eq!(refs[0]["displayed_failures"], serde_json::json!([0, 0]));
}

#[test]
fn twist_of_trivial_by_swap() {
    let dir = TempDir::new().unwrap();
    let f = table_file(&dir, "triv.json", &[&[0, 0], &[1, 1]]);
    let o = run(&["twist", s(&f), "--phi", "1 0"]);
    assert_eq!(code(&o), 0);
    let t: FTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.rows(), vec![vec![1, 1], vec![0, 0]]);
    assert_eq!(code(&run(&["twist", s(&f), "--phi", "0 0"])), 1);
}

#[test]
fn extend_trivial_by_trivial() {
    let dir = TempDir::new().unwrap();
    let base = table_file(&dir, "base.json", &[&[0, 0], &[1, 1]]);
    let cocycle = fquandle::DynamicalCocycle::from_fn(2, 2, vec![0, 1], |_, _, a, _| a);
    let c = write(&dir, "c.json", &serde_json::to_string(&cocycle).unwrap());
    let out = dir.path().join("ext.json");
    assert_eq!(code(&run(&["extend", s(&base), s(&c), "--out", s(&out)])), 0);
    let ext: FTable = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(ext.order(), 4);
    assert!(validate(&ext, Level::Quandle).passed);
    assert_eq!(code(&run(&["check", s(&out)])), 0);
}

#[test]
fn extend_accepts_module_data() {
    let dir = TempDir::new().unwrap();
    let base = table_file(&dir, "pt.json", &[&[0]]);
    let md = fquandle::ModuleData::scalar(1, 3, 1, 1, 2).unwrap();
    let c = write(&dir, "md.json", &serde_json::to_string(&md).unwrap());
    let o = run(&["extend", s(&base), s(&c)]);
    assert_eq!(code(&o), 0);
    let ext: FTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(ext.rows(), fquandle::make_alexander(3, 1, 1).unwrap().rows());
}

#[test]
fn envelope_of_point() {
    let dir = TempDir::new().unwrap();
    let f = table_file(&dir, "pt.json", &[&[0]]);
    let o = run(&["envelope", s(&f)]);
    assert_eq!(code(&o), 0);
    let p = Presentation::from_text(&stdout(&o)).unwrap();
    assert_eq!((p.generator_count, p.relators.len()), (1, 1));
    let j = run(&["envelope", s(&f), "--format", "json"]);
    let pj: Presentation = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(pj, p);
}

#[test]
fn envelope_writes_quotient() {
    let dir = TempDir::new().unwrap();
    let f = table_file(&dir, "d3.json", &[&[0, 2, 1], &[2, 1, 0], &[1, 0, 2]]);
    let q = dir.path().join("q.json");
    assert_eq!(code(&run(&["envelope", s(&f), "--quotient", s(&q)])), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&q).unwrap()).unwrap();
    assert_eq!(v["iterations"], 0);
}

#[test]
fn catalog_csv_columns() {
    let o = run(&["catalog", "--max-order", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "order,labelled_tables,iso_classes,twisted_classes,no_quandle_classes\n1,1,1,1,0\n2,4,3,2,1\n3,24,10,4,1\n"
    );
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        assert_eq!(code(&run(&["classify", "--order", "3", "--out", s(p)])), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let c1 = run(&["cohom", "--mod", "5", "--T", "2", "--S", "3", "--compare-reference"]);
    let c2 = run(&["cohom", "--mod", "5", "--T", "2", "--S", "3", "--compare-reference"]);
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["cohom", "--mod", "3", "--T", "1", "--S", "1", "--max-degree", "3"])), 2);
}
