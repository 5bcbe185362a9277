mod common;

use common::golden;

#[test]
fn commute_diagonal() {
    golden::commute_diagonal();
}

#[test]
fn commute_bit_flip() {
    golden::commute_bit_flip();
}

#[test]
fn commute_control() {
    golden::commute_control();
}

#[test]
fn dead_gate() {
    golden::dead_gate();
}

#[test]
fn classical_control() {
    golden::classical_control();
}

#[test]
fn exchange_controls() {
    golden::exchange_controls();
}

#[test]
fn worked_example_stages() {
    golden::worked_example_stages();
}
