//! Qubit counts for each entanglement strategy of the hardware-efficient
//! ansatz, with and without measurement moving.

use qreuse::benchgen::{gen_vqe, vqe_angles, EntanglementStrategy};
use qreuse::pipeline::{optimize, Mode};

fn main() {
    let n = 8;
    let angles = vqe_angles(n, 1, 7);
    println!("{:<15} {:>8} {:>8} {:>6}", "strategy", "baseline", "proposed", "d/n");
    for strategy in EntanglementStrategy::ALL {
        let c = gen_vqe(n, strategy, &angles, 1).expect("angle count matches");
        let (_, base) = optimize(&c, Mode::Baseline).expect("valid circuit");
        let (_, prop) = optimize(&c, Mode::Proposed).expect("valid circuit");
        println!(
            "{:<15} {:>8} {:>8} {:>6.2}",
            strategy.name(),
            base.n_reused,
            prop.n_reused,
            prop.d_reused as f64 / n as f64
        );
    }
}
