//! Shared test helpers: golden cases and a seeded generator of arbitrary valid
//! dynamic circuits (conditions, negative controls, toggles, resets, opaque gates).

#![allow(dead_code)]

pub mod golden;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use qreuse::ir::{Circuit, Condition, Control, Gate, GateKind, Instruction, Literal, QubitRef};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn opaque(theta: f64) -> GateKind {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let i = Complex64::new(0.0, FRAC_1_SQRT_2);
    // Same matrix for every use of the label, as validation requires.
    GateKind::Opaque { label: "w".into(), theta, matrix: [[h, i], [i, h]] }
}

fn kind(rng: &mut ChaCha8Rng) -> GateKind {
    let a = rng.gen_range(-2.0 * PI..2.0 * PI);
    match rng.gen_range(0..10) {
        0 => GateKind::H,
        1 => GateKind::X,
        2 => GateKind::Y,
        3 => GateKind::Z,
        4 => GateKind::S,
        5 => GateKind::T,
        6 => GateKind::Phase(a),
        7 => GateKind::Rx(a),
        8 => GateKind::Rz(a),
        _ => opaque(a),
    }
}

fn literals(rng: &mut ChaCha8Rng, defined: &[usize], exclude: Option<usize>, max: usize) -> Vec<Literal> {
    let pool: Vec<usize> = defined.iter().copied().filter(|&b| Some(b) != exclude).collect();
    let k = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, k).map(|&b| if rng.gen_bool(0.5) { Literal::pos(b) } else { Literal::neg(b) }).collect()
}

/// Random circuit on `1..=max_qubits` qubits with up to `max_ops` body
/// instructions; every qubit is measured at the end when `terminal` is set.
pub fn dynamic_circuit(seed: u64, max_qubits: usize, max_ops: usize, terminal: bool) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_qubits);
    let m = n + rng.gen_range(0..=2);
    let mut c = Circuit::new(format!("dyn_{seed}"), n, m);
    let mut defined: Vec<usize> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_ops) {
        let q = rng.gen_range(0..n);
        match rng.gen_range(0..20) {
            0..=2 => {
                let b = rng.gen_range(0..m);
                c.measure(q, b);
                if !defined.contains(&b) {
                    defined.push(b);
                }
            }
            3 => {
                c.reset(q);
            }
            4 if !defined.is_empty() => {
                let target = *defined.choose(&mut rng).unwrap();
                let product = literals(&mut rng, &defined, Some(target), 2);
                c.push(Instruction::toggle(target, product));
            }
            _ => {
                let mut g = Gate::single(kind(&mut rng), q);
                if n > 1 && rng.gen_bool(0.5) {
                    let mut ctl = rng.gen_range(0..n - 1);
                    if ctl >= q {
                        ctl += 1;
                    }
                    let control = if rng.gen_bool(0.8) { Control::pos(ctl) } else { Control::neg(ctl) };
                    g.controls.push(control);
                }
                if rng.gen_bool(0.25) {
                    g.condition = Condition::on(literals(&mut rng, &defined, None, 2));
                }
                debug_assert!(g.controls.iter().all(|c| c.qubit != QubitRef(q)));
                c.push(Instruction::Gate(g));
            }
        }
    }
    if terminal {
        for q in 0..n {
            c.measure(q, q);
        }
    }
    debug_assert!(c.validate().is_empty());
    c
}
