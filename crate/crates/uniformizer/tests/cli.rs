use std::process::{Command, Output};

use uniformizer::schema::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uniformizer"))
        .args(args)
        .env_remove("UNIFORMIZER_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn table_line_for_three() {
    let o = run(&["table", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "pi^-3 ( 3^(1/3) + pi^2 + 2 pi^3 )\n");
}

#[test]
fn table_json_round_trips() {
    let o = run(&["table", "--p", "13", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    let recipe = report.recipe.clone().unwrap();
    // theta plus B_0, ..., B_11
    assert_eq!(recipe.terms.len(), 13);
    assert_eq!(recipe.pi_shift, -23);
    let rebuilt = recipe
        .to_recipe(report.p, report.m, report.n, report.precision)
        .unwrap();
    assert_eq!(
        rebuilt,
        uniformizer_core::lab::build_simplified(13, 8).unwrap()
    );
    assert_eq!(
        serde_json::to_string_pretty(&report).unwrap() + "\n",
        stdout(&o)
    );
}

#[test]
fn rejects_non_primes() {
    for p in ["4", "2", "1", "9"] {
        let o = run(&["table", "--p", p]);
        assert_eq!(o.status.code(), Some(3));
        assert!(
            stderr(&o).contains("p must be an odd prime"),
            "{}",
            stderr(&o)
        );
    }
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["verify"]).status.code(), Some(3));
    assert_eq!(
        run(&["verify", "--p", "3", "--precision", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["verify", "--p", "3", "--format", "xml"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["search", "--p", "3", "--m", "1"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_five_passes() {
    let o = run(&["verify", "--p", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.checks.iter().all(|c| c.pass));
    let ones: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.name == "alternating" || c.name == "simplified")
        .map(|c| (c.valuation, c.exact))
        .collect();
    assert_eq!(ones, vec![(Some(1), true), (Some(1), true)]);
}

#[test]
fn low_precision_exits_two() {
    let o = run(&["verify", "--p", "7", "--precision", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("raise N"));
    assert!(stdout(&o).contains("EXHAUSTED"));
}

#[test]
fn precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_uniformizer"))
        .args(["verify", "--p", "7"])
        .env("UNIFORMIZER_PRECISION", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_uniformizer"))
        .args(["verify", "--p", "7", "--precision", "4"])
        .env("UNIFORMIZER_PRECISION", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn heavy_norms_are_gated() {
    let o = run(&["verify", "--p", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("congruences"));
    assert!(out.contains("expansion-residual"));
    assert!(out.contains("skipped norm determinant"));
    assert!(!out.contains("\nalternating "));
}

#[test]
fn search_examples() {
    assert!(
        stdout(&run(&["search", "--p", "3", "--m", "3"])).starts_with("no ℓ with p‖a_ℓ and p∤ℓ")
    );
    assert!(stdout(&run(&["search", "--p", "3", "--m", "2"])).starts_with("[4]\n"));
    assert!(stdout(&run(&["search", "--p", "5", "--m", "3"])).starts_with("no ℓ"));
    assert!(
        stdout(&run(&["search", "--p", "3", "--m", "2", "--full-range"])).starts_with("[4, 5]\n")
    );
}

#[test]
fn coeffs_dump() {
    let o = run(&["coeffs", "--p", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 4);
    assert_eq!(records[3]["case"], "iv");
    assert_eq!(records[3]["a"], "15");
    assert_eq!(records[2]["t"], 1);
}

#[test]
fn text_output_is_deterministic() {
    for p in ["3", "5", "7", "11", "13"] {
        for cmd in [
            vec!["table", "--p", p],
            vec!["verify", "--p", p, "--precision", "4"],
        ] {
            let a = run(&cmd);
            let b = run(&cmd);
            assert_eq!(a.stdout, b.stdout);
            assert_eq!(a.status.code(), b.status.code());
        }
    }
}
