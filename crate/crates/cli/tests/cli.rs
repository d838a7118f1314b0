//! End-to-end tests of the compiled binary: exit codes, CSV round-trips,
//! and byte-deterministic artifacts.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use fractalscape::{sup_distance, Landscape, Preset};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fractalscape"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn write_config(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    let mut file = std::fs::File::create(&path).expect("create config");
    file.write_all(json.as_bytes()).expect("write config");
    path.to_str().expect("utf-8 path").to_string()
}

/// A 1-d system whose images overlap so much that the gap-derived
/// resolution candidates describe nothing; verification must expose it.
const OVERLAPPING: &str = r#"{"dim": 1, "c": 0.16666666666666666, "offsets": [[0], [11.5], [15]]}"#;

#[test]
fn verify_passes_on_a_well_separated_preset() {
    let output = run(&["verify", "--preset", "sixth", "--n-max", "4"]);
    assert_eq!(
        output.status.code(),
        Some(0),
        "stderr: {}",
        stderr_of(&output)
    );
    let text = stdout_of(&output);
    assert_eq!(text.matches("result: PASS").count(), 2);
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_fails_with_exit_one_on_a_bogus_resolution_claim() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "overlap.json", OVERLAPPING);
    let output = run(&["verify", "--config", &config, "--n-max", "4"]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout_of(&output);
    assert!(text.contains("only a candidate"));
    assert!(text.contains("result: FAIL"));
}

#[test]
fn malformed_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_ratio = write_config(
        dir.path(),
        "ratio.json",
        r#"{"dim": 1, "c": 1.2, "offsets": [[0], [2]]}"#,
    );
    let output = run(&["info", "--config", &bad_ratio]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("contraction ratio"));

    let truncated = write_config(dir.path(), "broken.json", r#"{"dim": 1,"#);
    let output = run(&["info", "--config", &truncated]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn unknown_preset_and_conflicting_sources_exit_two() {
    let output = run(&["info", "--preset", "nope"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("known presets"));

    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "overlap.json", OVERLAPPING);
    let output = run(&["landscape", "--preset", "cantor3", "--config", &config]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&["landscape"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn landscape_csv_round_trips_to_the_in_memory_fixed_point() {
    let output = run(&["landscape", "--preset", "fifth", "--levels", "12"]);
    assert_eq!(output.status.code(), Some(0));
    let parsed = Landscape::<f64>::read_csv(&stdout_of(&output)).expect("parse CSV");
    let expected = Preset::Fifth.operator::<f64>().fixed_point(12).unwrap();
    let distance: f64 = sup_distance(&parsed, &expected);
    assert_eq!(distance, 0.0);
}

#[test]
fn landscape_file_output_matches_stdout_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sixth.csv");
    let output = run(&[
        "landscape",
        "--preset",
        "sixth",
        "--levels",
        "9",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let from_file = std::fs::read_to_string(&path).unwrap();
    let direct = stdout_of(&run(&["landscape", "--preset", "sixth", "--levels", "9"]));
    assert_eq!(from_file, direct);
}

#[test]
fn zero_levels_yields_a_header_only_csv() {
    let output = run(&["landscape", "--preset", "cantor3", "--levels", "0"]);
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(stdout_of(&output), "level,t,value\n");
}

#[test]
fn closed_and_iterate_modes_agree_closely() {
    let closed = run(&["landscape", "--preset", "mod-fifth", "--levels", "10"]);
    let iterated = run(&[
        "landscape",
        "--preset",
        "mod-fifth",
        "--levels",
        "10",
        "--mode",
        "iterate",
    ]);
    assert_eq!(iterated.status.code(), Some(0));
    assert!(stderr_of(&iterated).contains("operator applications"));
    let a = Landscape::<f64>::read_csv(&stdout_of(&closed)).unwrap();
    let b = Landscape::<f64>::read_csv(&stdout_of(&iterated)).unwrap();
    let distance: f64 = sup_distance(&a, &b);
    assert!(distance <= 1e-12, "modes disagree by {distance}");
}

#[test]
fn a_well_separated_config_matches_its_preset() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        "cantor.json",
        r#"{"dim": 1, "c": 0.3333333333333333, "offsets": [[0], [2]]}"#,
    );
    let from_config = run(&["landscape", "--config", &config, "--levels", "16"]);
    assert_eq!(from_config.status.code(), Some(0));
    let from_preset = run(&["landscape", "--preset", "cantor3", "--levels", "16"]);
    assert_eq!(stdout_of(&from_config), stdout_of(&from_preset));
}

#[test]
fn empirical_writes_landscape_and_diagram_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let output = run(&[
        "empirical",
        "--preset",
        "cantor3",
        "--iters",
        "2",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));

    let landscape_text = std::fs::read_to_string(&path).unwrap();
    let landscape = Landscape::<f64>::read_csv(&landscape_text).unwrap();
    assert_eq!(landscape.level_count(), 8);

    let diagram_text = std::fs::read_to_string(dir.path().join("out.diagram.csv")).unwrap();
    let mut lines = diagram_text.lines();
    assert_eq!(lines.next(), Some("birth,death,multiplicity"));
    assert!(diagram_text.lines().count() > 1);
}

#[test]
fn empirical_with_zero_iterations_describes_the_seed() {
    let output = run(&["empirical", "--preset", "cantor3", "--iters", "0"]);
    assert_eq!(output.status.code(), Some(0));
    let landscape = Landscape::<f64>::read_csv(&stdout_of(&output)).unwrap();
    // The two-point seed {0, 1}: one pairing edge and the essential
    // class, both dying at the diameter.
    assert_eq!(landscape.level_count(), 2);
    assert_eq!(landscape.evaluate(1, 0.5).unwrap(), 0.5);
    assert_eq!(landscape.evaluate(2, 0.5).unwrap(), 0.5);
}

#[test]
fn empirical_truncates_when_levels_given() {
    let output = run(&[
        "empirical",
        "--preset",
        "cantor3",
        "--iters",
        "3",
        "--levels",
        "5",
    ]);
    assert_eq!(output.status.code(), Some(0));
    let landscape = Landscape::<f64>::read_csv(&stdout_of(&output)).unwrap();
    assert_eq!(landscape.level_count(), 5);
}

#[test]
fn svg_output_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for (path, cloud) in [(&a, true), (&b, true)] {
        let mut args = vec![
            "plot",
            "--preset",
            "triangle",
            "--levels",
            "16",
            "-o",
            path.to_str().unwrap(),
        ];
        if cloud {
            args.extend(["--with-cloud", "3"]);
        }
        let output = run(&args);
        assert_eq!(
            output.status.code(),
            Some(0),
            "stderr: {}",
            stderr_of(&output)
        );
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
}

#[test]
fn plot_rejects_zero_levels_and_overlapping_custom_systems() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let output = run(&[
        "plot",
        "--preset",
        "cantor3",
        "--levels",
        "0",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));

    let config = write_config(dir.path(), "overlap.json", OVERLAPPING);
    let output = run(&["plot", "--config", &config, "-o", out.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr_of(&output).contains("preset"));
}

#[test]
fn info_reports_separation_and_resolutions() {
    let output = run(&["info", "--preset", "sixth"]);
    let text = stdout_of(&output);
    assert!(text.contains("well-separated images: true"));
    assert!(text.contains("resolutions: 1, 0.3333333333333333, 0.16666666666666666"));

    let output = run(&["info", "--preset", "mod-fifth"]);
    let text = stdout_of(&output);
    assert!(text.contains("well-separated images: false"));
    assert!(text.contains("resolutions: 1, 0.4"));

    let output = run(&["info", "--preset", "carpet"]);
    let text = stdout_of(&output);
    assert!(text.contains("estimated from iterate 4"));
    assert!(text.contains("resolutions: 1.118033988749895"));
}

#[test]
fn preset_help_lists_all_bundled_systems() {
    let output = run(&["info", "--preset", "help"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_of(&output);
    for name in [
        "cantor3",
        "right-third",
        "fifth",
        "sixth",
        "mod-fifth",
        "triangle",
        "carpet",
    ] {
        assert!(text.contains(name), "missing {name} in listing:\n{text}");
    }
    assert!(stderr_of(&output).is_empty());
}
