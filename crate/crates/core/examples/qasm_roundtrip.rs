//! Parsing, canonical re-emission, and located parse errors.

use qreuse::qasm;

const SOURCE: &str = r#"OPENQASM 3.0;
include "stdgates.inc";
qubit[3] q;
bit[3] c;
h q[0];
cp(pi/4) q[0], q[1];
c[0] = measure q[0];
if (c[0]) x q[2];
negctrl @ rx(-tau/8) q[1], q[2];
c[1] = measure q[1];
c[1] = c[1] ^ c[0];
c[2] = measure q[2];
"#;

fn main() {
    let circuit = qasm::parse(SOURCE).expect("valid source");
    let text = qasm::emit(&circuit);
    print!("{text}");
    assert_eq!(qasm::emit(&qasm::parse(&text).expect("canonical text parses")), text);

    for bad in ["OPENQASM 3.0;\nqubit[1] q;\nh q[4];\n", "OPENQASM 3.0;\nqubit q;\nwhile (true) { }\n"] {
        println!("{}", qasm::parse(bad).unwrap_err());
    }
}
