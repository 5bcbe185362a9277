//! The machine-readable report written by `qreuse optimize --report`.

use qreuse::benchgen::gen_qpe;
use qreuse::pipeline::{optimize, Mode};
use qreuse::report::ReportDocument;
use qreuse::sim;

fn main() {
    let c = gen_qpe(5, 1.0).expect("valid size");
    let (out, rep) = optimize(&c, Mode::Proposed).expect("valid circuit");
    let eq = sim::equivalent(&c, &out, 1e-9).expect("within simulator cap");
    println!("{}", ReportDocument::new(c.name.clone(), Mode::Proposed, &rep).with_equivalence(eq, 1e-9).to_json());
}
