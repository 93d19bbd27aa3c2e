//! End-to-end tests of the command-line front end: the gen/run/verify round
//! trip, certificate emission, batch runs, rendering, determinism across
//! reruns and thread counts, and the exit-code protocol (0 success, 1 usage
//! or I/O error, 2 verification or certificate failure).

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_polychrome");

fn run(dir: &Path, args: &[&str]) -> Output {
    run_env(dir, args, &[])
}

fn run_env(dir: &Path, args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.current_dir(dir).args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("spawning the polychrome binary")
}

fn assert_code(out: &Output, want: i32, what: &str) {
    assert_eq!(
        out.status.code(),
        Some(want),
        "{what}: expected exit {want}\nstdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn gen_run_verify_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    let out = run(dir, &["gen", "--family", "bottomless", "--n", "120", "--seed", "5"]);
    assert_code(&out, 0, "gen");
    assert!(dir.join("points.json").exists());

    let out = run(
        dir,
        &["run", "--alg", "bl-shallow", "--m", "17", "--svg", "run.svg"],
    );
    assert_code(&out, 0, "run");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("[ok]"), "run should print passing checks:\n{stdout}");

    let report = read_json(&dir.join("report.json"));
    assert_eq!(report["output"]["kind"], "hitting");
    assert!(report["pass"].as_bool().unwrap());
    let svg = std::fs::read_to_string(dir.join("run.svg")).unwrap();
    assert!(svg.contains(r#"version="1.1""#), "SVG 1.1 header missing");

    let out = run(dir, &["verify"]);
    assert_code(&out, 0, "verify");
}

#[test]
fn verify_rejects_a_tampered_report_with_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert_code(&run(dir, &["gen", "--n", "100", "--seed", "8"]), 0, "gen");
    assert_code(&run(dir, &["run", "--alg", "bl-shallow", "--m", "15"]), 0, "run");

    let path = dir.join("report.json");
    let mut report = read_json(&path);
    report["output"]["report"]["X"] = serde_json::json!([]);
    std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap()).unwrap();

    let out = run(dir, &["verify"]);
    assert_code(&out, 2, "verify on tampered report");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("uncovered-edge"),
        "stderr should carry the failure witness:\n{stderr}"
    );
}

#[test]
fn reports_are_byte_identical_across_reruns() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert_code(&run(dir, &["gen", "--n", "90", "--seed", "3"]), 0, "gen");
    for out_file in ["a.json", "b.json"] {
        let out = run(
            dir,
            &["run", "--alg", "bl-tl-union", "--m", "21", "--out", out_file],
        );
        assert_code(&out, 0, "run");
    }
    assert_eq!(
        std::fs::read(dir.join("a.json")).unwrap(),
        std::fs::read(dir.join("b.json")).unwrap(),
        "same instance, same flags, different bytes"
    );

    for out_file in ["s1.json", "s2.json"] {
        let out = run(
            dir,
            &["strips", "--dim", "2", "--n", "120", "--m", "10", "--seed", "4", "--out", out_file],
        );
        assert_code(&out, 0, "strips");
    }
    assert_eq!(
        std::fs::read(dir.join("s1.json")).unwrap(),
        std::fs::read(dir.join("s2.json")).unwrap()
    );
}

#[test]
fn gadget_emits_machine_checkable_certificates() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    let out = run(dir, &["gadget", "--t", "2", "--k", "2", "--certify", "both", "--out", "g.json"]);
    assert_code(&out, 0, "gadget t=2");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("certified"), "{stdout}");

    let g = read_json(&dir.join("g.json"));
    assert_eq!(g["t"], 2);
    assert_eq!(g["vertices"], 4);
    assert_eq!(g["bound_chain_holds"], true);
    assert_eq!(g["embedding_consecutive"], true);
    // 2^4 vertex subsets on the primal, 2^4 edge 2-colorings on the blown dual.
    assert_eq!(g["no_shallow_hitting"]["subsets_checked"], 16);
    assert_eq!(g["no_shallow_hitting"]["counterexample"], Value::Null);
    let coloring = &g["no_polychromatic_coloring"];
    assert_eq!(coloring["infeasible"], true);
    assert_eq!(coloring["instances"], 4);
    assert_eq!(coloring["exhaustive"]["assignments_checked"], 16);
    assert_eq!(coloring["counting"]["min_cover"], 3);

    let out = run(dir, &["gadget", "--t", "3", "--certify", "shallow"]);
    assert_code(&out, 0, "gadget t=3 shallow only, report to stdout");
    let g: Value = serde_json::from_slice(
        &out.stdout[out.stdout.iter().position(|&b| b == b'{').unwrap()..],
    )
    .unwrap();
    assert_eq!(g["no_shallow_hitting"]["subsets_checked"], 64);
    assert_eq!(g["no_polychromatic_coloring"], Value::Null);
}

#[test]
fn bench_is_deterministic_across_thread_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fn args(out_dir: &str) -> Vec<&str> {
        vec![
            "bench", "--alg", "bl-shallow", "--n", "80", "--m", "13", "--trials", "4", "--seed",
            "9", "--out-dir", out_dir,
        ]
    }
    let out = run_env(dir, &args("one"), &[("POLYCHROME_THREADS", "1")]);
    assert_code(&out, 0, "bench single-threaded");
    let out = run_env(dir, &args("four"), &[("POLYCHROME_THREADS", "4")]);
    assert_code(&out, 0, "bench four threads");
    // Unparsable thread caps fall back to the machine default instead of failing.
    let out = run_env(dir, &args("junk"), &[("POLYCHROME_THREADS", "not-a-number")]);
    assert_code(&out, 0, "bench with junk thread cap");

    let mut names: Vec<String> = std::fs::read_dir(dir.join("one"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 5, "4 trial files plus summary.json: {names:?}");
    assert!(names.contains(&"summary.json".to_string()));
    for name in &names {
        assert_eq!(
            std::fs::read(dir.join("one").join(name)).unwrap(),
            std::fs::read(dir.join("four").join(name)).unwrap(),
            "{name} differs between thread counts"
        );
    }

    let summary = read_json(&dir.join("one").join("summary.json"));
    assert_eq!(summary["trials"], 4);
    assert_eq!(summary["passes"], 4);
    assert_eq!(summary["all_pass"], true);
}

#[test]
fn plot_renders_instance_and_overlays() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert_code(&run(dir, &["gen", "--n", "60", "--seed", "2"]), 0, "gen");
    assert_code(&run(dir, &["plot", "--out", "bare.svg"]), 0, "plot without overlay");
    assert_code(&run(dir, &["run", "--alg", "bl-coloring", "--k", "3"]), 0, "run coloring");
    assert_code(
        &run(dir, &["plot", "--report", "report.json", "--out", "overlay.svg"]),
        0,
        "plot with coloring overlay",
    );
    for f in ["bare.svg", "overlay.svg"] {
        let svg = std::fs::read_to_string(dir.join(f)).unwrap();
        assert!(svg.contains(r#"version="1.1""#), "{f} is not SVG 1.1");
        assert!(svg.contains("<circle"), "{f} draws no points");
    }
    assert_ne!(
        std::fs::read(dir.join("bare.svg")).unwrap(),
        std::fs::read(dir.join("overlay.svg")).unwrap(),
        "overlay should change the rendering"
    );
}

#[test]
fn exit_codes_follow_the_protocol() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();

    assert_code(&run(dir, &["--help"]), 0, "--help");
    assert_code(&run(dir, &["no-such-subcommand"]), 1, "unknown subcommand");
    assert_code(&run(dir, &["run", "--alg", "not-an-algorithm"]), 1, "bad flag value");
    assert_code(
        &run(dir, &["run", "--alg", "bl-shallow", "--m", "15", "--input", "missing.json"]),
        1,
        "missing input file",
    );
    // Coloring algorithms need k; the config validator catches it before work.
    assert_code(&run(dir, &["gen", "--n", "40", "--seed", "1"]), 0, "gen");
    assert_code(&run(dir, &["run", "--alg", "bl-coloring"]), 1, "missing --k");
}
