use std::path::PathBuf;
use std::process::{Command, Output};

use hypesi_core::config::reference;
use hypesi_core::esi::esi_points;
use hypesi_core::records::parse_tables;
use hypesi_core::{build_frame, primitive_word, RationalLabel};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn hypesi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypesi")).args(args).env_remove("HYPESI_TOL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn reference_path() -> String {
    config("reference.toml").display().to_string()
}

#[test]
fn word_prints_palindrome() {
    let o = hypesi(&["word", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    let t = &parse_tables(&stdout(&o)).unwrap()[0];
    assert_eq!(t.rows, [["1/2", "ABA", "palindrome"]]);
}

#[test]
fn enumerate_matches_library() {
    let o = hypesi(&["enumerate", "--max-sum", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let t = &parse_tables(&stdout(&o)).unwrap()[0];
    let labels = RationalLabel::all_up_to(7);
    assert_eq!(t.rows.len(), labels.len());
    for (row, x) in t.rows.iter().zip(labels) {
        let w = primitive_word(x).unwrap();
        assert_eq!(row[0], x.to_string());
        assert_eq!(row[1], w.to_string());
        assert_eq!(row[2], if x.is_odd() { "palindrome" } else { "product" });
    }
}

#[test]
fn bad_group_exits_two() {
    let o = hypesi(&["esi", "5/3", "--group", &config("bad.toml").display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("model group validation failed"));
    assert_eq!(hypesi(&["check-model", &config("bad.toml").display().to_string()]).status.code(), Some(1));
    assert_eq!(hypesi(&["check-model", &reference_path()]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hypesi(&["word", "2/4"]).status.code(), Some(2));
    assert_eq!(hypesi(&["esi", "1/2", "--group", "/nonexistent.toml"]).status.code(), Some(2));
    assert_eq!(hypesi(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hypesi(&["deform", "--group", &reference_path(), "--steps", "0"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hypesi")).args(["word", "1/2"]).env("HYPESI_TOL", "abc").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hypesi")).args(["word", "1/2"]).env("HYPESI_TOL", "1e-9").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn esi_records_round_trip() {
    let o = hypesi(&["esi", "3/5", "--group", &reference_path()]);
    assert_eq!(o.status.code(), Some(0));
    let tables = parse_tables(&stdout(&o)).unwrap();
    let (a, b) = reference().generators().unwrap();
    let esi = esi_points(&build_frame(&a, &b).unwrap(), RationalLabel::new(3, 5).unwrap()).unwrap();
    assert_eq!(tables[0].rows.len(), esi.records.len());
    for (i, r) in esi.records.iter().enumerate() {
        assert_eq!(tables[0].cell(i, "index").unwrap(), r.index.to_string());
        assert_eq!(tables[0].float(i, "angle").unwrap().to_bits(), r.angle.to_bits());
        assert_eq!(tables[0].float(i, "x").unwrap().to_bits(), r.point.z().re.to_bits());
        assert_eq!(tables[0].float(i, "y").unwrap().to_bits(), r.point.z().im.to_bits());
    }
    assert_eq!(tables[1].cell(0, "essential_count").unwrap(), "14");
    assert_eq!(tables[1].cell(0, "quotient_count").unwrap(), "7");
}

#[test]
fn connectors_summary() {
    let o = hypesi(&["connectors", "2/3", "--group", &reference_path(), "--bend", "0.1", "--format", "summary"]);
    assert_eq!(o.status.code(), Some(0));
    let tables = parse_tables(&stdout(&o)).unwrap();
    assert_eq!(tables.len(), 1);
    let t = &tables[0];
    assert_eq!(t.cell(0, "marked_points").unwrap(), "8");
    assert_eq!(t.cell(0, "quotient_connectors").unwrap(), "4");
    assert_eq!(t.cell(0, "loop_count").unwrap(), "5");
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("half.svg");
    let o = hypesi(&["plot", "1/2", "--group", &reference_path(), "-o", &out.display().to_string()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("class=\"esi\"").count(), 4);
    assert_eq!(svg.matches("class=\"foot\"").count(), 2);
}

#[test]
fn verify_small_sweep() {
    let o = hypesi(&["verify", "--max-sum", "6", "--group", &reference_path()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let tables = parse_tables(&stdout(&o)).unwrap();
    assert_eq!(tables[0].rows.len(), 3);
    let t = &tables[1];
    assert_eq!(t.rows.len(), RationalLabel::all_up_to(6).len() - 2);
    for i in 0..t.rows.len() {
        assert_eq!(t.cell(i, "essential_count").unwrap(), t.cell(i, "expected").unwrap());
        assert_eq!(t.cell(i, "status").unwrap(), "pass");
    }
}

#[test]
fn winding_and_deform() {
    let o = hypesi(&["check-winding", &reference_path(), "--word-len", "6", "--samples", "400"]);
    assert_eq!(o.status.code(), Some(0));
    let o = hypesi(&["deform", "--group", &reference_path(), "--steps", "10", "--max-sum", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let t = &parse_tables(&stdout(&o)).unwrap()[0];
    assert!(t.rows.iter().all(|r| r.last().unwrap() == "pass"));
}
