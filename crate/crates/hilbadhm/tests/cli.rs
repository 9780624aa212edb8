use std::path::PathBuf;
use std::process::{Command, Output};

use hilbadhm::format::{parse_datum, DatumDocument, ExactCycleDocument, IdealDocument, MonadDocument};
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Self { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }
}

fn hilbadhm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbadhm"))
        .args(args)
        .env_remove("HILBADHM_ORDER")
        .env_remove("HILBADHM_SEED")
        .env_remove("HILBADHM_TOLERANCE")
        .env_remove("HILBADHM_FORMAT")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let o = hilbadhm(args);
    assert!(o.status.success(), "{args:?} failed: {}", stderr(&o));
    assert!(o.stderr.is_empty());
    stdout(&o)
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

const JORDAN: &str = r#"{"n": 2, "c": 2, "B": [[["0", "0"], ["1", "0"]], [["0", "0"], ["0", "0"]]], "I": ["1", "0"]}"#;
const DIAG_POINTS: &str = r#"{"n": 2, "c": 2, "B": [[["0", "0"], ["0", "1"]], [["0", "0"], ["0", "0"]]], "I": ["1", "1"]}"#;

#[test]
fn ideal_to_datum_examples() {
    let ws = Workspace::new();
    let out = run_ok(&["ideal2adhm", path(&ws.file("j", "x0^2\nx1\n"))]);
    let doc = DatumDocument::parse(&out).unwrap();
    assert_eq!(doc.b[0], vec![vec!["0", "0"], vec!["1", "0"]]);
    assert_eq!(doc.b[1], vec![vec!["0", "0"], vec!["0", "0"]]);
    assert_eq!(doc.i, vec!["1", "0"]);
    assert_eq!(doc.basis, Some(vec!["1".into(), "x0".into()]));

    let out = run_ok(&["ideal2adhm", path(&ws.file("p", "# a point\nx0 - 2\nx1 - 3\n"))]);
    let doc = DatumDocument::parse(&out).unwrap();
    assert_eq!((doc.b.clone(), doc.i.clone()), (vec![vec![vec!["2".to_string()]], vec![vec!["3".to_string()]]], vec!["1".to_string()]));

    let o = hilbadhm(&["ideal2adhm", path(&ws.file("x", "x0\n"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not zero-dimensional"));
    assert!(o.stdout.is_empty());
}

#[test]
fn datum_to_ideal_examples() {
    let ws = Workspace::new();
    let out = run_ok(&["adhm2ideal", path(&ws.file("j.json", JORDAN))]);
    assert!(out.starts_with("x1\nx0^2\n"));
    assert!(out.contains("colength: 2"));

    let zero = r#"{"n": 2, "c": 2, "B": [[["0", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]], "I": ["1", "0"]}"#;
    let o = hilbadhm(&["adhm2ideal", path(&ws.file("z.json", zero))]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("Krylov rank 1 of 2"));

    let scalar = r#"{"n": 2, "c": 1, "B": [[["2"]], [["-1/3"]]], "I": ["5"]}"#;
    let out = run_ok(&["adhm2ideal", "--format", "json", path(&ws.file("s.json", scalar))]);
    let doc = IdealDocument::parse(&out).unwrap();
    assert_eq!(doc.basis, vec!["x1 + 1/3", "x0 - 2"]);
    assert_eq!(doc.colength, Some(1));
}

#[test]
fn exit_codes() {
    let ws = Workspace::new();
    let nc = r#"{"n": 2, "c": 2, "B": [[["0", "1"], ["0", "0"]], [["0", "0"], ["1", "0"]]], "I": ["1", "0"]}"#;
    let o = hilbadhm(&["adhm2ideal", path(&ws.file("nc.json", nc))]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("B0 and B1"));

    let o = hilbadhm(&["ideal2adhm", path(&ws.file("bad", "x0^2\nx0 + y\n"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 6"));

    let o = hilbadhm(&["stability", path(&ws.file("broken.json", "{\"n\": 2"))]);
    assert_eq!(o.status.code(), Some(1));

    let o = hilbadhm(&["stability", "/nonexistent/datum.json"]);
    assert_eq!(o.status.code(), Some(1));

    let o = hilbadhm(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));

    let close = r#"{"n": 1, "c": 2, "B": [[["0", "0"], ["0", "1/1000000"]]], "I": ["1", "1"]}"#;
    let f = ws.file("close.json", close);
    let o = hilbadhm(&["hilbchow", "--approx", "--tolerance", "1e-6", path(&f)]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("clustering ambiguity"));
    let out = run_ok(&["hilbchow", "--approx", "--tolerance", "1e-3", path(&f)]);
    assert!(out.contains("partition = (2)"));

    let zero = r#"{"n": 3, "c": 2, "B": [[["0", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]], "I": ["1", "0"]}"#;
    let o = hilbadhm(&["stabilize", "--radius", "0", "--trials", "5", path(&ws.file("zero.json", zero))]);
    assert_eq!(o.status.code(), Some(4));

    let o = hilbadhm(&["hilbchow", "--exact", path(&ws.file("irr", "x0^2 - 2\nx1\n"))]);
    assert_eq!(o.status.code(), Some(1), "an ideal file is not a datum");
}

#[test]
fn report_examples() {
    let ws = Workspace::new();
    let diag = ws.file("d.json", DIAG_POINTS);
    let jordan = ws.file("j.json", JORDAN);
    assert_eq!(run_ok(&["stability", path(&diag)]), "stable: true, krylov rank 2/2\n");
    assert_eq!(run_ok(&["hilbchow", "--exact", path(&jordan)]), "c = 2, n = 2, partition = (2)\n(0, 0) x2\n");
    assert_eq!(run_ok(&["hilbchow", path(&diag)]), "c = 2, n = 2, partition = (1, 1)\n(0, 0) x1\n(1, 0) x1\n");
    let out = run_ok(&["monadcheck", path(&jordan)]);
    assert!(out.starts_with("complex: ok, fibers sampled: 20, negative-degree cohomology: 0\n"));
    assert!(out.contains("seed: 0"));

    let j = ws.file("j", "x0^2 - x1\nx1^2\n");
    assert_eq!(run_ok(&["roundtrip", path(&j)]), "roundtrip: ok, colength 4\n");
    assert_eq!(run_ok(&["--order", "lex", "roundtrip", path(&j)]), "roundtrip: ok, colength 4\n");

    let out = run_ok(&["equiv", "--witness", path(&diag), path(&diag)]);
    assert!(out.starts_with("equivalent: true\ng =\n"));
    let out = run_ok(&["equiv", path(&diag), path(&jordan)]);
    assert_eq!(out, "equivalent: false\n");
}

#[test]
fn variety_membership() {
    let ws = Workspace::new();
    let circle = ws.file("circle", "# unit circle\nx0^2 + x1^2 - 1\n");
    let on = r#"{"n": 2, "c": 2, "B": [[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]], "I": ["1", "1"]}"#;
    let out = run_ok(&["variety", path(&ws.file("on.json", on)), path(&circle)]);
    assert!(out.starts_with("member: true\n"));
    let out = run_ok(&["variety", "--format", "json", path(&ws.file("d.json", DIAG_POINTS)), path(&circle)]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["member"], false);
    assert_eq!(v["residuals"][0]["residual"], serde_json::json!([["-1", "0"], ["0", "0"]]));
}

#[test]
fn documents_round_trip_exactly() {
    let ws = Workspace::new();
    let datum = run_ok(&["sample", "--kind", "stable", "--n", "3", "--c", "4", "--seed", "17"]);
    let doc = DatumDocument::parse(&datum).unwrap();
    assert_eq!(doc.seed, Some(17));
    assert_eq!(doc.to_json(), datum);
    let f = ws.file("x.json", &datum);

    let monad = run_ok(&["monad", path(&f)]);
    let m = MonadDocument::parse(&monad).unwrap();
    assert_eq!(MonadDocument::from_monad(&m.to_monad().unwrap()).to_json(), monad);

    let ideal = run_ok(&["adhm2ideal", "--format", "json", path(&f)]);
    let doc = IdealDocument::parse(&ideal).unwrap();
    assert_eq!(doc.to_json(), ideal);
    assert_eq!(IdealDocument::from_ideal(&doc.to_ideal().unwrap()).to_json(), ideal);

    let pts = run_ok(&["sample", "--kind", "points", "--n", "2", "--c", "3", "--seed", "5"]);
    let cycle = run_ok(&["hilbchow", "--format", "json", path(&ws.file("p.json", &pts))]);
    assert_eq!(ExactCycleDocument::parse(&cycle).unwrap().to_json(), cycle);

    // ideal2adhm output feeds straight back into the datum commands.
    let d = run_ok(&["ideal2adhm", path(&ws.file("j", "x0^3\nx1 - x0^2\n"))]);
    let back = run_ok(&["adhm2ideal", path(&ws.file("d.json", &d))]);
    assert_eq!(
        back,
        "x1^2\nx0*x1\nx0^2 - x1\n# colength: 3\n# standard monomials: 1, x1, x0\n"
    );
    assert!(parse_datum(&d).unwrap().is_stable().unwrap());
}

#[test]
fn reproducible_output() {
    for args in [
        &["sample", "--kind", "unstable", "--n", "3", "--c", "4", "--seed", "9"][..],
        &["--format", "json", "corpus", "--max-colength", "3", "--points", "4", "--seed", "2"][..],
    ] {
        assert_eq!(run_ok(args), run_ok(args));
    }
    let ws = Workspace::new();
    let f = ws.file("x.json", &run_ok(&["sample", "--kind", "stable", "--n", "2", "--c", "3", "--seed", "1"]));
    let a = run_ok(&["--format", "json", "--seed", "4", "hilbchow", "--approx", path(&f)]);
    assert_eq!(a, run_ok(&["--format", "json", "--seed", "4", "hilbchow", "--approx", path(&f)]));
    assert!(a.contains("\"seed\": 4"));
}

#[test]
fn environment_overrides_defaults() {
    let ws = Workspace::new();
    let f = ws.file("d.json", DIAG_POINTS);
    let o = Command::new(env!("CARGO_BIN_EXE_hilbadhm"))
        .args(["stability", path(&f)])
        .env("HILBADHM_FORMAT", "json")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["krylov_rank"], 2);
    let o = Command::new(env!("CARGO_BIN_EXE_hilbadhm"))
        .args(["sample", "--kind", "points"])
        .env("HILBADHM_SEED", "33")
        .output()
        .unwrap();
    assert_eq!(DatumDocument::parse(&stdout(&o)).unwrap().seed, Some(33));
}

#[test]
fn stabilize_and_corpus() {
    let ws = Workspace::new();
    let tuple = run_ok(&["sample", "--kind", "commuting", "--n", "3", "--c", "3", "--seed", "3"]);
    let out = run_ok(&["stabilize", "--radius", "1/2", "--seed", "1", path(&ws.file("t.json", &tuple))]);
    let y = parse_datum(&out).unwrap();
    assert!(y.is_commuting() && y.is_stable().unwrap());

    let out = run_ok(&["corpus", "--max-colength", "3", "--points", "3"]);
    assert!(out.ends_with("all passed: true\n"));
}
