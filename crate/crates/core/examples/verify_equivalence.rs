//! Checking an optimized circuit against its input with the simulator.

use qreuse::benchgen::{gen_random, RandomSpec};
use qreuse::ir::GateKind;
use qreuse::pipeline::{optimize, Mode};
use qreuse::sim;

fn main() {
    let c = gen_random(RandomSpec::new(5, 6, 11)).expect("valid spec");
    let (out, report) = optimize(&c, Mode::Proposed).expect("valid circuit");
    let eq = sim::equivalent(&c, &out, 1e-9).expect("within simulator cap");
    println!("{} -> {} qubits, deviation {:e}", report.n_original, report.n_reused, eq.deviation);
    println!("{}", sim::distribution(&out).expect("within simulator cap"));

    // A broken rewrite shows up as a non-zero distance.
    let mut broken = out.clone();
    broken.gate(GateKind::X, 0).measure(0, 0);
    let eq = sim::equivalent(&c, &broken, 1e-9).expect("within simulator cap");
    println!("tampered: equivalent={} deviation {:e}", eq.equivalent, eq.deviation);
}
