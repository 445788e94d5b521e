//! The binary end to end: exit codes, report formats and input files.

use std::process::{Command, Output};
use std::sync::Arc;

use serde_json::Value;

use domdimlab::exactmath::FieldSpec;
use domdimlab::homology::uniserial_module;
use domdimlab::nakayama::NakAlgebra;
use domdimlab::quivalg::json::ModuleFile;
use domdimlab::quivalg::nakayama_to_table;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domdimlab"))
        .args(args)
        .env_remove("DOMDIMLAB_CUTOFF")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is a JSON report")
}

#[test]
fn domdim_of_gendo_example() {
    let o = run(&["nakayama", "domdim", "--cycle", "--kupisch", "5,6,6,6,6"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["tool"], "domdimlab");
    assert_eq!(
        r["results"][0]["domdim"],
        serde_json::json!({ "finite": 8 })
    );
    assert!(r["failures"].as_array().unwrap().is_empty());
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("wall time"));
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "nakayama",
        "ok",
        "--cycle",
        "--kupisch",
        "3,4,4",
        "--k",
        "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = run(&["verify", "--suite", "oracle-cross"]);
    let w = run(&["verify", "--suite", "oracle-cross"]);
    assert_eq!(code(&v), 0);
    assert_eq!(v.stdout, w.stdout);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["nakayama", "domdim", "--kupisch", "3,3"][..],
        &["nakayama", "domdim", "--cycle", "--kupisch", "2,5"],
        &[
            "nakayama",
            "rigid",
            "--cycle",
            "--kupisch",
            "3,3",
            "--module",
            "bogus",
        ],
        &["verify", "--suite", "unknown"],
        &["quiver", "resolve", "--preset", "no-such-preset"],
        &[
            "quiver",
            "ideal",
            "--preset",
            "preproj-a2",
            "--generators",
            "alpha",
        ],
    ] {
        let o = run(args);
        assert_eq!(
            code(&o),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn unresolved_cutoff_exits_three() {
    let o = run(&[
        "nakayama",
        "domdim",
        "--cycle",
        "--kupisch",
        "5,6,6,6,6",
        "--cutoff",
        "3",
    ]);
    assert_eq!(code(&o), 3);
    assert_eq!(
        report(&o)["results"][0]["domdim"],
        serde_json::json!({ "at_least": 3 })
    );
    let env = Command::new(env!("CARGO_BIN_EXE_domdimlab"))
        .args(["nakayama", "domdim", "--cycle", "--kupisch", "5,6,6,6,6"])
        .env("DOMDIMLAB_CUTOFF", "3")
        .output()
        .unwrap();
    assert_eq!(code(&env), 3);
}

#[test]
fn csv_and_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = run(&[
        "--format",
        "csv",
        "--report",
        path.to_str().unwrap(),
        "nakayama",
        "ext",
        "--cycle",
        "--kupisch",
        "3,3",
        "--module",
        "simple:0",
        "--module",
        "simple:1",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    let row = rows.records().next().unwrap().unwrap();
    let get = |name: &str| row[headers.iter().position(|h| h == name).unwrap()].to_string();
    assert_eq!(get("hom"), "0");
    // Ω S_0 = M(1,2) and Ω M(1,2) = S_1 over (3,3).
    assert_eq!(get("ext"), "[1,1,0,0]");
}

#[test]
fn rigid_witness_from_module_specs() {
    let o = run(&[
        "nakayama",
        "rigid",
        "--cycle",
        "--kupisch",
        "5,6,6,6,6",
        "--k",
        "2",
        "--module",
        "dual-regular",
        "--module",
        "omega:4:dual-regular",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["results"][0]["rigid"], true);
}

#[test]
fn hopf_resolution() {
    let o = run(&[
        "quiver",
        "resolve",
        "--preset",
        "hopf-a5-f2",
        "--length",
        "4",
    ]);
    assert_eq!(code(&o), 0);
    let dims = &report(&o)["results"][0]["resolution"]["syzygy_dims"];
    assert_eq!(dims, &serde_json::json!([7, 9, 7, 9]));
}

#[test]
fn algebra_and_module_files() {
    let dir = tempfile::tempdir().unwrap();
    let nak = dir.path().join("nak.json");
    std::fs::write(
        &nak,
        r#"{"kind": "nakayama", "orientation": "cycle", "kupisch": [3, 3], "field": "F2"}"#,
    )
    .unwrap();
    let o = run(&["quiver", "domdim", "--algebra", nak.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r["results"][0]["selfinjective"], true);
    assert_eq!(
        r["results"][0]["delta"]["value"],
        serde_json::json!({ "finite": 3 })
    );

    // compile writes a table file that loads back with the same predicates.
    let quiver = dir.path().join("quiver.json");
    std::fs::write(
        &quiver,
        r#"{"kind": "quiver", "vertices": ["e"], "arrows": [{"name": "x", "source": "e", "target": "e"}],
            "relations": ["x*x*x"], "loewy_bound": 3, "field": "F3"}"#,
    )
    .unwrap();
    let compiled = run(&["quiver", "compile", "--algebra", quiver.to_str().unwrap()]);
    assert_eq!(code(&compiled), 0);
    let table = dir.path().join("table.json");
    std::fs::write(&table, report(&compiled)["results"][0].to_string()).unwrap();
    let a = run(&[
        "quiver",
        "predicates",
        "--algebra",
        quiver.to_str().unwrap(),
    ]);
    let b = run(&["quiver", "predicates", "--algebra", table.to_str().unwrap()]);
    assert_eq!(code(&a), 0);
    let (ra, rb) = (report(&a), report(&b));
    for key in [
        "dimension",
        "local",
        "selfinjective",
        "symmetric",
        "gendo_symmetric",
    ] {
        assert_eq!(ra["results"][0][key], rb["results"][0][key], "{key}");
    }
    assert_eq!(ra["results"][0]["dimension"], 3);

    // A module file: the uniserial of length 2 at vertex 0 over (3,3).
    let t = Arc::new(
        nakayama_to_table(&NakAlgebra::cycle(&[3, 3]).unwrap(), FieldSpec::Prime(2)).unwrap(),
    );
    let m = uniserial_module(&t, 0, 2).unwrap();
    let module = dir.path().join("module.json");
    std::fs::write(&module, ModuleFile::from_representation(&m).to_json()).unwrap();
    let spec = format!("file:{}", module.display());
    let o = run(&[
        "quiver",
        "resolve",
        "--algebra",
        nak.to_str().unwrap(),
        "--module",
        &spec,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let dims = &report(&o)["results"][0]["resolution"]["syzygy_dims"];
    // Ω M(0,2) = M(0,1), Ω M(0,1) = M(1,2), ... over (3,3).
    assert_eq!(dims, &serde_json::json!([1, 2, 1, 2]));

    // The digest covers file contents.
    std::fs::write(&module, ModuleFile::from_representation(&m).to_json() + " ").unwrap();
    let again = run(&[
        "quiver",
        "resolve",
        "--algebra",
        nak.to_str().unwrap(),
        "--module",
        &spec,
    ]);
    assert_ne!(report(&again)["input_digest"], report(&o)["input_digest"]);
}

#[test]
fn ideal_and_enveloping() {
    let o = run(&[
        "quiver",
        "ideal",
        "--preset",
        "truncated-poly(3,F3)",
        "--generators",
        "x",
        "--enveloping",
    ]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert!(r["results"][0]["report"]["ext1"].as_u64().unwrap() > 0);
    assert_eq!(r["results"][1]["enveloping_ext1"], 3);
}

#[test]
fn verify_main_reports_both_checks() {
    let o = run(&[
        "nakayama",
        "verify-main",
        "--cycle",
        "--kupisch",
        "3,4,4",
        "--k",
        "1",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&o);
    assert_eq!(r["results"][0]["verdict"], "holds");
    assert_eq!(r["results"][1]["rigid"], true);
    // A selfinjective algebra is outside the hypothesis.
    let o = run(&["nakayama", "verify-main", "--cycle", "--kupisch", "3,3"]);
    assert_eq!(code(&o), 2);
}
