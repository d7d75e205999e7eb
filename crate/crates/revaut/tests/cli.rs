//! End-to-end checks of the `revaut` binary: exit codes, golden outputs,
//! and byte-for-byte determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn example(file: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("examples");
    p.push(file);
    p.to_string_lossy().into_owned()
}

fn revaut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revaut"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = revaut(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn validate_reports_shape_and_reversibility() {
    let out = stdout_of(&["validate", &example("table1.aut")]);
    assert_eq!(out, "states=2 inputs=3 outputs=3 rows=6\nreversible=true\n");
}

#[test]
fn run_traces_the_orbit_and_undo_ends_at_the_start() {
    let out = stdout_of(&[
        "run",
        &example("table1.aut"),
        "--start",
        "s1,3",
        "--steps",
        "3",
    ]);
    assert_eq!(out, "(s1,3)\n(s2,2)\n(s2,3)\n(s1,3)\n");

    let undone = stdout_of(&[
        "run",
        &example("table1.aut"),
        "--start",
        "s1,3",
        "--steps",
        "2",
        "--undo",
    ]);
    assert!(undone.ends_with("undo -> (s1,3)\n"), "{undone}");
}

#[test]
fn perm_matrix_prints_the_reference_grid() {
    let out = stdout_of(&["perm", &example("table1.aut"), "--matrix"]);
    let (header, grid) = out.split_once('\n').unwrap();
    assert!(header.starts_with('#'));
    assert_eq!(
        grid,
        "1 0 0 0 0 0\n\
         0 1 0 0 0 0\n\
         0 0 0 0 1 0\n\
         0 0 0 1 0 0\n\
         0 0 0 0 0 1\n\
         0 0 1 0 0 0\n"
    );
}

#[test]
fn perm_cycles_and_image_forms() {
    let cycles = stdout_of(&["perm", &example("table1.aut"), "--cycles"]);
    assert_eq!(cycles, "(0)(1)(2 4 5)(3) order=3\n");
    let image = stdout_of(&["perm", &example("table1.aut")]);
    assert_eq!(image, "image: 0 1 4 3 5 2\n");
    let both = revaut(&["perm", &example("table1.aut"), "--matrix", "--cycles"]);
    assert_eq!(both.status.code(), Some(2));
}

#[test]
fn coarse_projects_the_orbit_onto_states() {
    let out = stdout_of(&[
        "coarse",
        &example("table1.aut"),
        &example("state_readout.ifc"),
        "--question",
        "state",
        "--start",
        "s1,3",
        "--steps",
        "3",
    ]);
    assert_eq!(out, "s1 s2 s2 s1\n");
}

#[test]
fn estimate_narrows_to_the_unique_start() {
    let out = stdout_of(&[
        "estimate",
        &example("table1.aut"),
        &example("state_readout.ifc"),
        "--question",
        "state",
        "--obs",
        "s1,s2",
    ]);
    assert_eq!(
        out,
        "step 0: size=3 {(s1,1),(s1,2),(s1,3)}\n\
         step 1: size=1 {(s2,2)}\n\
         unique=true\n\
         initial=(s1,3)\n"
    );
}

#[test]
fn estimate_reports_ambiguity() {
    let out = stdout_of(&[
        "estimate",
        &example("table1.aut"),
        &example("state_readout.ifc"),
        "--question",
        "state",
        "--obs",
        "s1,s1",
    ]);
    assert!(out.contains("step 1: size=2 {(s1,1),(s1,2)}"), "{out}");
    assert!(out.ends_with("unique=false\n"), "{out}");
}

#[test]
fn lattice_run_prints_conserved_totals() {
    let out = stdout_of(&["lattice", &example("two_cell.lat"), "--ticks", "1"]);
    assert_eq!(
        out,
        "tick 1: total=5 residual_max=0\n\
         \x20 region left: outward=3 inward=0 delta_inside=-3 ok=true\n\
         cell  bits\n\
         0     2\n\
         1     3\n\
         total_bits=5 residual_max=0\n"
    );
}

#[test]
fn lattice_overdraw_fails_at_the_right_tick() {
    let out = revaut(&["lattice", &example("two_cell.lat"), "--ticks", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("holds 2 bits but sends 3"), "{err}");
}

#[test]
fn export_dot_renders_nodes_then_edges() {
    let out = stdout_of(&["export-dot", &example("table1.aut")]);
    assert_eq!(
        out,
        "digraph flow {\n\
         \x20 rankdir=LR;\n\
         \x20 \"(s1,1)\";\n\
         \x20 \"(s1,2)\";\n\
         \x20 \"(s1,3)\";\n\
         \x20 \"(s2,1)\";\n\
         \x20 \"(s2,2)\";\n\
         \x20 \"(s2,3)\";\n\
         \x20 \"(s1,1)\" -> \"(s1,1)\";\n\
         \x20 \"(s1,2)\" -> \"(s1,2)\";\n\
         \x20 \"(s1,3)\" -> \"(s2,2)\";\n\
         \x20 \"(s2,1)\" -> \"(s2,1)\";\n\
         \x20 \"(s2,2)\" -> \"(s2,3)\";\n\
         \x20 \"(s2,3)\" -> \"(s1,3)\";\n\
         }\n"
    );
}

#[test]
fn transcend_output_is_byte_identical_across_runs() {
    let args = [
        "transcend", "--k", "3", "--agent", "immanent", "--trials", "2000", "--seed", "42",
    ];
    let first = stdout_of(&args);
    let second = stdout_of(&args);
    assert_eq!(first, second);
    assert!(first.contains("verdict=falsified"), "{first}");
}

#[test]
fn eraser_random_state_is_seed_deterministic() {
    let args = ["eraser", "--k", "5", "--seed", "11"];
    assert_eq!(stdout_of(&args), stdout_of(&args));
    let out = stdout_of(&args);
    assert!(out.contains("restored=true trace_left=false"), "{out}");
}

#[test]
fn usage_error_paths_exit_two() {
    for args in [
        vec!["run", "missing-flags.aut"],
        vec!["run", "x.aut", "--start", "s1,3", "--steps", "not-a-number"],
        vec!["perm"],
        vec!["entropy"],
        vec!["entropy", "--dist", "0.5,0.5", "extra-path"],
    ] {
        let out = revaut(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&out.stderr).contains("usage"),
            "{args:?}"
        );
    }
}

#[test]
fn parse_errors_carry_line_numbers_and_exit_one() {
    let dir = std::env::temp_dir().join("revaut-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.aut");
    std::fs::write(
        &bad,
        "states: s1 s2\ninputs: 1\noutputs: 1\ntable:\ns1 1 -> s1 1\ns1 1 -> s2 1\n",
    )
    .unwrap();
    let out = revaut(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 6: duplicate pair (s1,1)"), "{err}");
}
