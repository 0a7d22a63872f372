use std::path::PathBuf;

use cascade_cli::{run, Outcome, EXIT_INPUT, EXIT_NO_CASCADE, EXIT_OK};
use cascade_core::document::{parse_circuit, parse_map, RawDocument};
use cascade_core::synth::{verify_isomorphism, Isomorphism};
use cascade_core::{fixtures, Automaton};

fn sample(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("circuits");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn cascade(args: &[&str]) -> Outcome {
    run(std::iter::once("cascade").chain(args.iter().copied()))
}

#[test]
fn simulate_closed_circuit() {
    let out = cascade(&[
        "simulate",
        &sample("Y.toml"),
        "--start",
        "000",
        "--steps",
        "2",
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "000 110 000\n");
}

#[test]
fn simulate_with_inputs() {
    let out = cascade(&[
        "simulate",
        &sample("right-shift.toml"),
        "--start",
        "00",
        "--steps",
        "3",
        "--inputs",
        "1,0,1",
    ]);
    assert_eq!(out.stdout, "00 10 01 10\n");
    let out = cascade(&[
        "simulate",
        &sample("right-shift.toml"),
        "--steps",
        "3",
        "--inputs",
        "1",
    ]);
    assert_eq!(out.code, EXIT_INPUT);
    let out = cascade(&[
        "simulate",
        &sample("right-shift.toml"),
        "--steps",
        "1",
        "--inputs",
        "2",
    ]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn tpm_of_and_or() {
    let out = cascade(&["tpm", &sample("X.toml")]);
    assert_eq!(
        out.stdout,
        "00: 1 0 0 0\n01: 0 1 0 0\n10: 0 1 0 0\n11: 0 0 0 1\n"
    );
}

#[test]
fn tpm_of_open_system_lists_each_symbol() {
    let out = cascade(&["tpm", &sample("right-shift.toml")]);
    assert!(out.stdout.starts_with("symbol 0:\n00: 1 0 0 0\n"));
    assert!(out.stdout.contains("symbol 1:\n00: 0 0 1 0\n"));
}

#[test]
fn show_reports_structure() {
    let out = cascade(&["show", &sample("Y.toml")]);
    assert!(out.stdout.contains("Q1 = XNOR(Q2,Q3)"));
    assert!(out.stdout.contains("not a cascade"));
    assert!(out.stdout.contains("000 -> 110"));
    let out = cascade(&["show", &sample("seven-cycle.toml")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("110 -> 000"));
}

#[test]
fn decompose_right_shift() {
    let out = cascade(&["decompose", &sample("right-shift.toml")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("already in cascade form"));
    assert!(out.stdout.contains("Q1' = COPY(s)"));
}

#[test]
fn decompose_all_lists_every_labeling() {
    let out = cascade(&["decompose", &sample("X.toml"), "--all"]);
    assert_eq!(out.stdout.matches("sequence ").count(), 8);
    assert!(out.stdout.contains("Q2' = OR(Q1',Q2')"));
}

#[test]
fn undecomposable_exit_code() {
    for cmd in ["zombie", "decompose"] {
        let out = cascade(&[cmd, &sample("seven-cycle.toml")]);
        assert_eq!(out.code, EXIT_NO_CASCADE);
        assert!(out.stdout.contains("no balanced preserved bipartition"));
        assert!(out.stdout.contains("level 1"));
    }
}

#[test]
fn phi_table() {
    let out = cascade(&["phi", &sample("X.toml")]);
    assert!(out.stdout.contains("Phi_G = 0.500000"));
    let out = cascade(&["phi", &sample("Y-cascade.toml")]);
    assert!(out.stdout.contains("Phi_G = 0 "));
    assert!(out.stdout.contains("certificate: {Q1'} <-/- {Q2',Q3'}"));
    assert_eq!(
        cascade(&["phi", &sample("right-shift.toml")]).code,
        EXIT_INPUT
    );
    assert_eq!(cascade(&["phi", &sample("counter.toml")]).code, EXIT_INPUT);
}

#[test]
fn verify_maps() {
    let ok = cascade(&[
        "verify",
        &sample("X.toml"),
        &sample("X-cascade.toml"),
        &sample("X-map.txt"),
    ]);
    assert_eq!(ok.code, EXIT_OK, "{}", ok.stderr);
    let dir = tempfile::tempdir().unwrap();
    let identity = dir.path().join("id.txt");
    std::fs::write(&identity, "00 00\n01 01\n10 10\n11 11\n").unwrap();
    let bad = cascade(&[
        "verify",
        &sample("X.toml"),
        &sample("X-cascade.toml"),
        identity.to_str().unwrap(),
    ]);
    assert_eq!(bad.code, EXIT_INPUT);
    assert!(bad.stdout.contains("state 10"));
}

#[test]
fn zombie_machine_section_round_trips() {
    let out = cascade(&[
        "zombie",
        &sample("Y.toml"),
        "--like",
        &sample("Y-cascade.toml"),
    ]);
    assert_eq!(out.code, EXIT_OK);
    let machine = out.stdout.split("# machine-readable\n").nth(1).unwrap();
    let value: toml::Table = toml::from_str(machine).unwrap();
    assert_eq!(value["summary"]["verified"].as_bool(), Some(true));
    assert_eq!(value["summary"]["phi_original"].as_float(), Some(1.0));
    assert_eq!(value["summary"]["phi_cascade"].as_float(), Some(0.0));
    let doc: RawDocument = value["cascade"].clone().try_into().unwrap();
    let circuit = parse_circuit(&toml::to_string(&doc).unwrap()).unwrap();
    assert_eq!(circuit.components(), fixtures::not_copy_copy().components());
    let map: String = value["isomorphism"]
        .as_table()
        .unwrap()
        .iter()
        .map(|(k, v)| format!("{k} {}\n", v.as_str().unwrap()))
        .collect();
    let h: Isomorphism = parse_map(&map).unwrap();
    let a = Automaton::from_circuit(&fixtures::xnor_xnor_xor()).unwrap();
    let b = Automaton::from_circuit(&circuit).unwrap();
    assert!(verify_isomorphism(&a, &b, &h).unwrap().is_none());
}

#[test]
fn zombie_gate_selection() {
    let out = cascade(&["zombie", &sample("X.toml"), "--gates", "COPY,OR"]);
    assert!(out.stdout.contains("Q2' = OR(Q1',Q2')"));
    let out = cascade(&["zombie", &sample("X.toml"), "--gates", "XOR,XOR"]);
    assert_eq!(out.code, EXIT_INPUT);
    let out = cascade(&["zombie", &sample("X.toml"), "--gates", "FROB"]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["zombie", "Y.toml"],
        vec!["decompose", "counter.toml", "--all"],
        vec!["phi", "Y.toml"],
        vec!["show", "right-shift.toml"],
    ] {
        let path = sample(args[1]);
        let mut full = args.clone();
        full[1] = &path;
        assert_eq!(cascade(&full), cascade(&full));
    }
}

#[test]
fn out_and_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.txt");
    let dot_path = dir.path().join("arch.dot");
    let out = cascade(&[
        "zombie",
        &sample("Y.toml"),
        "--out",
        out_path.to_str().unwrap(),
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&out_path)
        .unwrap()
        .contains("verification: commutes"));
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("digraph \"Y'\""));
    let verify_dot = cascade(&[
        "verify",
        &sample("X.toml"),
        &sample("X-cascade.toml"),
        &sample("X-map.txt"),
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert_eq!(verify_dot.code, EXIT_INPUT);
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "name = \"b\"\n[[components]]\nid = \"a\"\ngate = \"AND\"\ninputs = [\"a\", \"a\", \"a\"]\n")
        .unwrap();
    let out = cascade(&["show", bad.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("component `a`"), "{}", out.stderr);
    assert_eq!(cascade(&["show", "/nonexistent.toml"]).code, EXIT_INPUT);
    assert_eq!(cascade(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(
        cascade(&["show", &sample("Y.toml"), "--max-n", "2"]).code,
        EXIT_INPUT
    );
    assert_eq!(cascade(&["--help"]).code, EXIT_OK);
}
