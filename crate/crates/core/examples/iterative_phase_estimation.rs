//! Phase estimation collapses to its two-qubit iterative form.

use std::f64::consts::PI;

use qreuse::benchgen::gen_qpe;
use qreuse::pipeline::{optimize, Mode};
use qreuse::{qasm, sim};

fn main() {
    let theta = 2.0 * PI * 3.0 / 8.0;
    let qpe = gen_qpe(4, theta).expect("valid size");
    let (iqpe, report) = optimize(&qpe, Mode::Proposed).expect("valid circuit");
    println!("{}", qasm::emit(&iqpe));
    println!(
        "qubits {} -> {}, depth {} -> {}, two-qubit gates {} -> {}",
        report.n_original, report.n_reused, report.d_original, report.d_reused, report.g2_original, report.g2_reused
    );

    let dist = sim::distribution(&iqpe).expect("within simulator cap");
    let outcome = dist.deterministic(1e-9).expect("exact phase gives one outcome");
    println!("readout c[0..3] = {}", &dist.bitstring(outcome)[..3]);
}
