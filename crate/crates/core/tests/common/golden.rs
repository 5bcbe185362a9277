//! Rewrite rules on their textbook examples, and the two-qubit worked example
//! stage by stage. Expected circuits live in `tests/golden/`; run with
//! `QREUSE_BLESS=1` to write missing expectation files.

use std::path::PathBuf;

use qreuse::ir::{Circuit, Instruction};
use qreuse::pipeline::{optimize, Mode};
use qreuse::{commute, qasm, reuse, sim, transform};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn load(name: &str) -> Circuit {
    let text = std::fs::read_to_string(golden_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    qasm::parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Compares the canonical text of `got` with the stored file.
fn check(name: &str, got: &Circuit) {
    let path = golden_path(name);
    let text = qasm::emit(got);
    if !path.exists() && std::env::var_os("QREUSE_BLESS").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert_eq!(text, want, "{name} differs");
    assert!(qasm::parse(&want).unwrap().approx_eq(got));
}

fn first_measure_on(c: &Circuit, q: usize) -> usize {
    c.instructions
        .iter()
        .position(|i| matches!(i, Instruction::Measure { qubit, .. } if qubit.0 == q))
        .expect("qubit is measured")
}

fn equivalent(a: &Circuit, b: &Circuit) {
    let eq = sim::equivalent(a, b, 1e-12).unwrap();
    assert!(eq.equivalent, "deviation {}", eq.deviation);
}

pub fn commute_diagonal() {
    let c = load("commute_diagonal.in.qasm");
    let (out, counts) = commute::run(&c);
    assert_eq!(counts.get(&commute::CommuteRule::Diagonal), Some(&2));
    check("commute_diagonal.out.qasm", &out);
    equivalent(&c, &out);
}

pub fn commute_bit_flip() {
    let c = load("commute_bit_flip.in.qasm");
    let (out, rule, _) = commute::commute_step(&c, 1).unwrap();
    assert_eq!(rule, commute::CommuteRule::BitFlip);
    check("commute_bit_flip.out.qasm", &out);
    equivalent(&c, &out);
}

pub fn commute_control() {
    let c = load("commute_control.in.qasm");
    let (out, rule, _) = commute::commute_step(&c, 1).unwrap();
    assert_eq!(rule, commute::CommuteRule::ControlledOnControl);
    check("commute_control.out.qasm", &out);
}

pub fn dead_gate() {
    let c = load("dead_gate.in.qasm");
    let (out, removed) = transform::eliminate_dead_gates(&c);
    assert_eq!(removed, 1);
    check("dead_gate.out.qasm", &out);
    equivalent(&c, &out);
}

pub fn classical_control() {
    let c = load("classical_control.in.qasm");
    let (out, replaced) = transform::introduce_classical_controls(&c);
    assert_eq!(replaced, 1);
    check("classical_control.out.qasm", &out);
    equivalent(&c, &out);
}

pub fn exchange_controls() {
    let c = load("exchange_controls.in.qasm");
    let (out, exchanged) = transform::exchange_controls(&c);
    assert_eq!(exchanged, 1);
    check("exchange_controls.out.qasm", &out);
    let (classical, replaced) = transform::introduce_classical_controls(&out);
    assert_eq!(replaced, 1);
    assert_eq!(classical.quantum_control_count(), 0);
}

pub fn worked_example_stages() {
    let a = load("pair_a.qasm");

    let (moved, rule, _) = commute::commute_step(&a, first_measure_on(&a, 0)).unwrap();
    assert_eq!(rule, commute::CommuteRule::ControlledOnControl);
    let (b, _) = transform::introduce_classical_controls(&moved);
    check("pair_b.qasm", &b);

    let (moved, rule, _) = commute::commute_step(&b, first_measure_on(&b, 1)).unwrap();
    assert_eq!(rule, commute::CommuteRule::BitFlip);
    let (c, _) = transform::eliminate_dead_gates(&moved);
    check("pair_c.qasm", &c);

    let (d, reuses) = reuse::run(&c);
    assert_eq!(reuses, 1);
    check("pair_d.qasm", &d);

    for stage in [&b, &c, &d] {
        equivalent(&a, stage);
    }
    let (piped, report) = optimize(&a, Mode::Proposed).unwrap();
    assert_eq!(qasm::emit(&piped), qasm::emit(&d));
    assert_eq!((report.n_original, report.n_reused), (2, 1));
}

/// Every golden case with its name.
pub const CASES: [(&str, fn()); 7] = [
    ("commute_diagonal", commute_diagonal),
    ("commute_bit_flip", commute_bit_flip),
    ("commute_control", commute_control),
    ("dead_gate", dead_gate),
    ("classical_control", classical_control),
    ("exchange_controls", exchange_controls),
    ("worked_example_stages", worked_example_stages),
];
