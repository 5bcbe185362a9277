//! A measured QFT needs a single physical qubit once every controlled phase
//! becomes classically controlled.

use qreuse::benchgen::gen_qft;
use qreuse::pipeline::{optimize, Mode};

fn main() {
    println!("{:>3} {:>6} {:>4} {:>8}", "n", "reused", "d", "d_reused");
    for n in [4, 6, 8, 10, 20, 50] {
        let (_, r) = optimize(&gen_qft(n).expect("n >= 1"), Mode::Proposed).expect("valid circuit");
        println!("{:>3} {:>6} {:>4} {:>8}", n, r.n_reused, r.d_original, r.d_reused);
    }
}
