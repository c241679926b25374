use std::path::Path;
use std::process::{Command, Output};

use phgen::numerics::{psd_classify, PsdClass};
use phgen::{Matrix, TolerancePolicy};
use serde_json::Value;

fn phgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phgen")).args(args).env_remove("PHGEN_SEED").output().expect("phgen runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn analyze(path: &Path) -> Output {
    phgen(&["analyze", p(path)])
}

fn real_matrix(v: &Value) -> Matrix {
    let rows: Vec<Vec<f64>> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect())
        .collect();
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    Matrix::from_f64(rows.len(), rows[0].len(), &flat)
}

#[test]
fn counterexample_witness_is_not_stabilizable() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.json");
    assert_eq!(code(&phgen(&["witness", "--name", "stab_counterexample", "--n", "2", "--m", "2", "--out", p(&f)])), 0);
    let out = analyze(&f);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdicts"]["behaviourally_stabilizable"], "false");
    assert_eq!(v["verdicts"]["freely_initializable"], "true");
}

#[test]
fn counterexample_locus_is_zero_and_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.json");
    assert_eq!(code(&phgen(&["witness", "--name", "stab_counterexample", "--n", "2", "--m", "1", "--out", p(&f)])), 0);
    let v = json(&analyze(&f));
    let pts = v["locus"]["points"].as_array().unwrap();
    let mut re: Vec<f64> = pts.iter().map(|p| p[0].as_f64().unwrap()).collect();
    re.sort_by(f64::total_cmp);
    assert_eq!(re.len(), 2);
    assert!(re[0].abs() < 1e-9 && (re[1] - 1.0).abs() < 1e-9);
    assert!(pts.iter().all(|p| p[2].as_u64() == Some(2)));
}

#[test]
fn step_i4_witness_is_controllable() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("w.json");
    assert_eq!(code(&phgen(&["witness", "--name", "step_i4", "--l", "3", "--n", "2", "--m", "2", "--out", p(&f)])), 0);
    let v = json(&analyze(&f));
    assert_eq!(v["verdicts"]["behaviourally_controllable"], "true");
    assert!(v["certificate"].is_object());
}

#[test]
fn witness_params_are_applied() {
    let out = phgen(&[
        "witness",
        "--name",
        "step_i4",
        "--l",
        "3",
        "--n",
        "2",
        "--m",
        "2",
        "--params",
        "beta=2,3;delta=5;xi=7,11",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["Q"][0][0], 2.0);
    assert_eq!(v["Q"][1][1], 3.0);
    let bad = phgen(&["witness", "--name", "step_i4", "--l", "3", "--n", "2", "--m", "2", "--params", "beta=1"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn witness_regime_violation_exits_one() {
    let out = phgen(&["witness", "--name", "step_i4", "--l", "5", "--n", "2", "--m", "2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("n <= l < n + m"));
    assert_eq!(code(&phgen(&["witness", "--name", "nope", "--l", "2", "--n", "2"])), 1);
    assert_eq!(code(&phgen(&["witness", "--name", "s_b", "--n", "2"])), 1);
}

#[test]
fn malformed_json_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(&f, "{ not json").unwrap();
    let out = analyze(&f);
    assert_eq!(code(&out), 1);
    assert!(!out.stderr.is_empty());
    assert_eq!(code(&analyze(&dir.path().join("missing.json"))), 1);
}

#[test]
fn schema_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.json");
    for text in [
        r#"{"field":"real","class":"sdH","E":[[1]],"J":[[0]],"Q":[[1]],"B":[[1]]}"#,
        r#"{"field":"real","class":"H","E":[[1]],"J":[[0]],"Q":[[1]],"B":[[1]],"X":[[1]]}"#,
        r#"{"field":"real","class":"dae","E":[[1,0]],"A":[[1]],"B":[[1]]}"#,
        r#"{"field":"quaternion","class":"dae","E":[[1]],"A":[[1]],"B":[[1]]}"#,
    ] {
        std::fs::write(&f, text).unwrap();
        assert_eq!(code(&analyze(&f)), 1, "{text}");
    }
}

#[test]
fn indefinite_dissipation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.json");
    let text = r#"{"field":"real","class":"sdH","E":[[1,0],[0,1]],"J":[[0,1],[-1,0]],"R":[[1,0],[0,-1]],"Q":[[1,0],[0,1]],"B":[[1],[0]]}"#;
    std::fs::write(&f, text).unwrap();
    let out = analyze(&f);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert!(v["violations"].as_array().unwrap().iter().any(|x| x["constraint"] == "R not PSD"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("R not PSD"));
}

#[test]
fn complex_dae_file_analyzes() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c.json");
    let text =
        r#"{"field":"complex","class":"dae","E":[[[1,0]],[[0,0]]],"A":[[[0,1]],[[1,0]]],"B":[[[0,0]],[[1,-1]]]}"#;
    std::fs::write(&f, text).unwrap();
    let out = analyze(&f);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["field"], "complex");
}

#[test]
fn sample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for f in [&a, &b] {
        let out =
            phgen(&["sample", "--l", "3", "--n", "2", "--m", "2", "--class", "sdH", "--seed", "7", "--out", p(f)]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = phgen(&["sample", "--l", "3", "--n", "2", "--m", "2", "--class", "sdH", "--seed", "8"]);
    assert_ne!(other.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_phgen"));
        cmd.args(["sample", "--l", "2", "--n", "2", "--m", "1", "--class", "H"]);
        match env {
            Some(s) => cmd.env("PHGEN_SEED", s),
            None => cmd.env_remove("PHGEN_SEED"),
        };
        cmd.output().unwrap().stdout
    };
    let explicit = phgen(&["sample", "--l", "2", "--n", "2", "--m", "1", "--class", "H", "--seed", "42"]).stdout;
    assert_eq!(run(Some("42")), explicit);
    assert_ne!(run(None), explicit);
}

#[test]
fn sampled_files_round_trip_over_flag_space() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.json");
    let mut seed = 0;
    for class in ["H", "sdH", "dH", "dae"] {
        for field in ["real", "complex"] {
            for (l, n, m) in [(1, 1, 1), (2, 3, 1), (4, 2, 2), (5, 2, 1)] {
                seed += 1;
                let dims = [l.to_string(), n.to_string(), m.to_string(), seed.to_string()];
                let out = phgen(&[
                    "sample",
                    "--l",
                    &dims[0],
                    "--n",
                    &dims[1],
                    "--m",
                    &dims[2],
                    "--class",
                    class,
                    "--field",
                    field,
                    "--seed",
                    &dims[3],
                    "--out",
                    p(&f),
                ]);
                assert_eq!(code(&out), 0);
                let a = analyze(&f);
                assert_eq!(code(&a), 0, "{class} {field} ({l},{n},{m}): {}", String::from_utf8_lossy(&a.stderr));
                let v = json(&a);
                assert_eq!(v["dims"]["l"], l);
                assert_eq!(v["verdicts"].as_object().unwrap().len(), 8);
            }
        }
    }
}

#[test]
fn dissipative_samples_have_definite_r() {
    for seed in ["1", "2", "3"] {
        let out = phgen(&["sample", "--l", "3", "--n", "2", "--m", "1", "--class", "dH", "--seed", seed]);
        let r = real_matrix(&json(&out)["R"]);
        assert_eq!(psd_classify(&r, &TolerancePolicy::default()).unwrap(), PsdClass::PositiveDefinite);
    }
}

#[test]
fn sample_rejects_bad_flags() {
    assert_eq!(code(&phgen(&["sample", "--l", "0", "--n", "2", "--m", "1", "--class", "H"])), 1);
    assert_eq!(code(&phgen(&["sample", "--l", "2", "--n", "2", "--m", "1", "--class", "X"])), 1);
    assert_eq!(code(&phgen(&["sample", "--l", "2", "--n", "2", "--class", "H"])), 1);
    assert_eq!(code(&phgen(&["sample", "--l", "two", "--n", "2", "--m", "1", "--class", "H"])), 1);
}

#[test]
fn experiment_csv_layout_and_predictions() {
    let out = phgen(&["experiment", "--grid", "4,2,2", "--samples", "20", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("l,n,m,class,concept,true,false,borderline,predicted"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    let predicted = |c: &str| rows.iter().find(|r| r[4] == c).unwrap()[8];
    assert_eq!(predicted("behaviourally_controllable"), "ComplementGeneric");
    assert_eq!(predicted("behaviourally_stabilizable"), "NotGeneric");
    for r in &rows {
        let total: usize = r[5..8].iter().map(|x| x.parse::<usize>().unwrap()).sum();
        assert_eq!(total, 20);
    }
}

#[test]
fn experiment_json_mirrors_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, js) = (dir.path().join("e.csv"), dir.path().join("e.json"));
    let out = phgen(&[
        "experiment",
        "--grid",
        "3,2,2;2,1,1",
        "--classes",
        "sdH,dae",
        "--samples",
        "10",
        "--seed",
        "3",
        "--out-csv",
        p(&csv),
        "--out-json",
        p(&js),
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    let cells = v["cells"].as_array().unwrap();
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), cells.len() + 1);
    // Sorted by dimensions first.
    assert_eq!(cells[0]["l"], 2);
    assert_eq!(cells[0]["class"], "sdH");
    assert_eq!(cells.last().unwrap()["class"], "unstructuredDAE");
}

#[test]
fn experiment_concept_filter() {
    let out = phgen(&[
        "experiment",
        "--grid",
        "3,2,1",
        "--samples",
        "5",
        "--concepts",
        "freely_initializable,impulse_controllable",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn experiment_rejects_bad_input() {
    for grid in ["3,2", "a,b,c", "", "0,1,1"] {
        assert_eq!(code(&phgen(&["experiment", "--grid", grid, "--samples", "2"])), 1, "{grid}");
    }
    assert_eq!(code(&phgen(&["experiment", "--grid", "3,2,2", "--classes", "sdH,bogus"])), 1);
    assert_eq!(code(&phgen(&["experiment", "--grid", "3,2,2", "--jobs", "0", "--samples", "2"])), 1);
}

#[test]
fn tolerance_flags_are_checked() {
    let out = phgen(&["experiment", "--grid", "2,1,1", "--samples", "2", "--rank-rel", "2"]);
    assert_eq!(code(&out), 1);
    let ok = phgen(&[
        "experiment",
        "--grid",
        "2,1,1",
        "--samples",
        "2",
        "--rank-rel",
        "1e-9",
        "--psd-abs",
        "1e-8",
        "--boundary-re",
        "1e-7",
    ]);
    assert_eq!(code(&ok), 0);
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&phgen(&["--help"])), 0);
    assert_eq!(code(&phgen(&["analyze", "--help"])), 0);
}
