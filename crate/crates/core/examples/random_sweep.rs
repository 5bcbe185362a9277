//! Mean qubit reduction over seeded random circuits.

use qreuse::benchgen::{gen_random, RandomSpec};
use qreuse::pipeline::{optimize, Mode};

fn main() {
    for (n, d) in [(20, 2), (20, 8), (30, 2), (30, 10), (40, 3)] {
        let mut sums = [0.0f64; 4];
        let seeds = 5;
        for seed in 0..seeds {
            let c = gen_random(RandomSpec::new(n, d, seed)).expect("valid spec");
            let (_, b) = optimize(&c, Mode::Baseline).expect("valid circuit");
            let (_, p) = optimize(&c, Mode::Proposed).expect("valid circuit");
            for (s, v) in sums.iter_mut().zip([b.n_reused, p.n_reused, b.g2_reused, p.g2_reused]) {
                *s += v as f64 / seeds as f64;
            }
        }
        println!(
            "n={n:<3} d={d:<3} qubits {:>5.1} -> {:>5.1} ({:>5.1}% fewer)  g2 {:>5.1} -> {:>5.1}",
            sums[0],
            sums[1],
            100.0 * (1.0 - sums[1] / n as f64),
            sums[2],
            sums[3]
        );
    }
}
