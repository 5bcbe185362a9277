//! Follows a two-qubit circuit through every stage: commutation, the
//! classical-control rewrites, and finally wire reuse.

use qreuse::ir::{Circuit, GateKind};
use qreuse::{commute, qasm, reuse, transform};

fn main() {
    let mut c = Circuit::new("walkthrough", 2, 2);
    c.gate(GateKind::H, 0).cgate(GateKind::X, 0, 1).measure(0, 0).measure(1, 1);
    println!("input:\n{}", qasm::emit(&c));

    let (moved, rules) = commute::run(&c);
    println!("measurements moved ({rules:?}):\n{}", qasm::emit(&moved));

    let (classical, counts) = transform::run(&c);
    println!("quantum controls replaced ({:?}):\n{}", counts.as_map(), qasm::emit(&classical));

    let (reused, merges) = reuse::run(&classical);
    println!("after {merges} reuse(s):\n{}", qasm::emit(&reused));
}
