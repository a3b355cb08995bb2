use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn prp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prp"))
        .args(args)
        .env_remove("PRP_MAX_DEGREE")
        .output()
        .expect("prp runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("forests_3_2", &["forests", "3", "2"]),
    ("factorial_json", &["factorial", "a[b,c]", "--json"]),
    ("arborify_contracting", &["arborify", "c a[b]", "--contracting"]),
    ("coproduct_antipode", &["coproduct", "a[b] c", "--algebra", "mkw", "--antipode"]),
    ("gl_word", &["gl", "--word", "abc"]),
    ("omega", &["omega", "a[b,b[c]]"]),
    ("signature", &["signature", "--path", "moment:3", "--end", "2", "--word", "abc", "--s", "1/3", "--t", "2"]),
    ("lift_nonplanar", &["lift", "--path", "moment:2", "--basis", "nonplanar", "--degree", "2", "--times", "0,1/3,1"]),
    ("solve_sphere", &["solve", "--model", "sphere:2,0", "--path", "quadratic", "--degree", "3", "--steps", "8", "--y0", "1,0,0"]),
    ("order_exponential", &["order-study", "--model", "exponential", "--path", "moment:1", "--degrees", "1,2", "--steps", "4,8", "--ratio", "8", "--y0", "1"]),
    ("extend_word", &["extend", "--path", "moment:2", "--depth", "8"]),
    ("holder_planar", &["holder", "--path", "moment:2", "--gamma", "1/2", "--degree", "3", "--depth", "3"]),
    ("axioms_quasi_json", &["axioms", "--algebra", "quasi", "--degree", "3", "--json"]),
];

/// Set `UPDATE_GOLDEN=1` to rewrite the files.
#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in GOLDEN {
        let o = prp(args);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        let got = stdout(&o);
        let file = golden_dir().join(format!("{name}.txt"));
        if update {
            std::fs::write(&file, &got).expect("write golden");
            continue;
        }
        let want = std::fs::read_to_string(&file).unwrap_or_else(|_| panic!("missing golden file {}", file.display()));
        if got != want {
            mismatches.push(*name);
        }
    }
    assert!(mismatches.is_empty(), "outputs differ from golden files: {mismatches:?}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["factorial", "a[b[c]] d", "--samples", "20000", "--seed", "7", "--json"][..],
        &["solve", "--model", "exponential", "--path", "moment:1", "--degree", "2", "--steps", "5", "--y0", "1", "--json"],
        &["forests", "4", "2", "--nonplanar"],
    ] {
        let a = prp(args);
        let b = prp(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn worked_examples() {
    let o = prp(&["factorial", "a[b,c]"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "6\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("linear-extension oracle: pass"));

    let o = prp(&["arborify", "c a[b]"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "bca + cba\n"));

    let o = prp(&["forests", "4", "1", "--count"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "14\n"));
}

#[test]
fn report_has_stable_fields() {
    let o = prp(&["arborify", "c a[b]", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).expect("json report");
    for key in ["command", "inputs_digest", "config", "passed", "checks", "result"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "arborify");
    assert_eq!(v["passed"], true);
    assert_eq!(v["inputs_digest"].as_str().map(str::len), Some(64));
    assert!(v.get("timings_ms").is_none());
    let terms = v["result"]["terms"].as_array().expect("terms");
    assert_eq!(terms.len(), 2);

    let o = prp(&["arborify", "c a[b]", "--json", "--timings"]);
    let v: Value = serde_json::from_slice(&o.stdout).expect("json report");
    assert!(v["timings_ms"].is_number());
}

#[test]
fn digest_tracks_inputs() {
    let digest = |args: &[&str]| {
        let v: Value = serde_json::from_slice(&prp(args).stdout).expect("json");
        v["inputs_digest"].as_str().expect("digest").to_string()
    };
    let a = digest(&["factorial", "a[b,c]", "--json"]);
    assert_eq!(a, digest(&["factorial", "a[b,c]", "--json"]));
    assert_ne!(a, digest(&["factorial", "a[c,b]", "--json"]));
    assert_ne!(a, digest(&["factorial", "a[b,c]", "--json", "--seed", "2"]));
}

#[test]
fn exit_statuses() {
    assert_eq!(code(&prp(&["frobnicate"])), 2);
    assert_eq!(code(&prp(&["arborify", "a[b"])), 2);
    assert_eq!(code(&prp(&["arborify", "a[z]", "--alphabet", "3"])), 2);
    assert_eq!(code(&prp(&["forests", "1", "1", "--gamma", "3/2"])), 2);
    assert_eq!(code(&prp(&["repro", "--criterion", "10"])), 2);
    assert_eq!(code(&prp(&["axioms", "--algebra", "mkw", "--degree", "9"])), 3);
    assert_eq!(code(&prp(&["forests", "2", "2", "--max-degree", "40"])), 3);
    let failing = prp(&[
        "order-study", "--model", "exponential", "--path", "moment:1", "--degrees", "1", "--steps", "4,8",
        "--ratio", "8", "--y0", "1", "--slope-tolerance", "0.001",
    ]);
    assert_eq!(code(&failing), 1);
    assert!(String::from_utf8_lossy(&failing.stderr).contains("FAIL"));
}

#[test]
fn environment_ceiling_refuses() {
    let o = Command::new(env!("CARGO_BIN_EXE_prp"))
        .args(["forests", "4", "1"])
        .env("PRP_MAX_DEGREE", "3")
        .output()
        .expect("prp runs");
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_prp"))
        .args(["forests", "4", "1", "--count"])
        .env("PRP_MAX_DEGREE", "3")
        .output()
        .expect("prp runs");
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "14\n"));
}

#[test]
fn large_counts_use_the_formula() {
    let o = prp(&["forests", "20", "2", "--count"]);
    assert_eq!(code(&o), 0);
    // C_20 · 2^20
    assert_eq!(stdout(&o), "6882979133521920\n");
}

#[test]
fn tables_go_to_output_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let file = dir.path().join("traj.csv");
    let args = ["solve", "--model", "exponential", "--path", "moment:1", "--degree", "2", "--steps", "4", "--y0", "1"];
    let direct = stdout(&prp(&args));
    let mut with_out = args.to_vec();
    let f = file.to_str().expect("utf-8 path");
    with_out.extend(["--output", f]);
    let o = prp(&with_out);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&file).expect("written"), direct);
    assert!(direct.starts_with("t,y1,drift\n") || direct.starts_with("t,y1\n"), "{direct}");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"alphabet": 2, "seed": 9, "max_degree": 5}"#).expect("write config");
    let c = cfg.to_str().expect("utf-8 path");
    let v: Value = serde_json::from_slice(&prp(&["forests", "2", "1", "--config", c, "--seed", "4", "--json"]).stdout)
        .expect("json");
    assert_eq!(v["config"]["alphabet"], 2);
    assert_eq!(v["config"]["seed"], 4);
    assert_eq!(v["config"]["max_degree"], 5);
    assert_eq!(code(&prp(&["arborify", "c", "--config", c])), 2);
    assert_eq!(code(&prp(&["forests", "6", "1", "--config", c])), 3);

    std::fs::write(&cfg, r#"{"colour": "blue"}"#).expect("write config");
    assert_eq!(code(&prp(&["forests", "1", "1", "--config", c])), 2);
}

#[test]
fn model_and_path_files() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("path.json");
    std::fs::write(
        &path,
        r#"{"dim": 1, "breakpoints": ["0", "1/2", "1"], "pieces": [[["0", "2"]], [["1", "0"]]]}"#,
    )
    .expect("write path");
    let p = path.to_str().expect("utf-8 path");
    // X climbs to 1 on [0, 1/2] then stays, so ⟨X_01, aa⟩ = 1/2.
    let o = prp(&["signature", "--path", p, "--word", "aa"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "1/2\n"));

    let model = dir.path().join("model.json");
    let exp = r#"{"n": 1, "N": 1, "d": 1,
        "epsilon": [[[{"exponents": [0], "num": "1", "den": "1"}]]],
        "f": [[[{"exponents": [1], "num": "1", "den": "1"}]]],
        "invariant": null}"#;
    std::fs::write(&model, exp).expect("write model");
    let m = model.to_str().expect("utf-8 path");
    let args = |spec| ["solve", "--model", spec, "--path", "moment:1", "--degree", "3", "--steps", "3", "--y0", "1"];
    let from_file = prp(&args(m));
    let builtin = prp(&args("exponential"));
    assert_eq!(code(&from_file), 0, "{}", String::from_utf8_lossy(&from_file.stderr));
    assert_eq!(from_file.stdout, builtin.stdout);
}
