use std::fmt::Write;

use crate::ir::{Circuit, Gate, GateKind, Instruction, Literal};

/// Canonical text of `circuit`. Identical circuits give identical bytes.
pub fn emit(circuit: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\ninclude \"stdgates.inc\";\n");
    if !circuit.name.is_empty() {
        let _ = writeln!(out, "// name: {}", circuit.name.replace('\n', " "));
    }
    let mut declared: Vec<&str> = Vec::new();
    for instr in &circuit.instructions {
        if let Instruction::Gate(Gate { kind: GateKind::Opaque { label, matrix, .. }, .. }) = instr {
            if declared.contains(&label.as_str()) {
                continue;
            }
            declared.push(label);
            let _ = write!(out, "// @unitary {label}");
            for row in matrix {
                for z in row {
                    let _ = write!(out, " {} {}", float(z.re), float(z.im));
                }
            }
            let _ = writeln!(out, "\ngate {label}(theta) t {{ }}");
        }
    }
    let _ = writeln!(out, "qubit[{}] q;", circuit.n_qubits);
    let _ = writeln!(out, "bit[{}] c;", circuit.n_clbits);
    for instr in &circuit.instructions {
        match instr {
            Instruction::Gate(g) => {
                if !g.condition.is_unconditional() {
                    let _ = write!(out, "if ({}) ", conjunction(&g.condition.literals));
                }
                gate(&mut out, g);
            }
            Instruction::Measure { qubit, bit } => {
                let _ = writeln!(out, "c[{}] = measure q[{}];", bit.0, qubit.0);
            }
            Instruction::Reset { qubit } => {
                let _ = writeln!(out, "reset q[{}];", qubit.0);
            }
            Instruction::Toggle { target, product } => {
                let k = target.0;
                match product.len() {
                    0 => writeln!(out, "c[{k}] = !c[{k}];"),
                    1 => writeln!(out, "c[{k}] = c[{k}] ^ {};", conjunction(product)),
                    _ => writeln!(out, "c[{k}] = c[{k}] ^ ({});", conjunction(product)),
                }
                .expect("write to String");
            }
        }
    }
    out
}

/// Shortest exact form: 17 significant digits in scientific notation.
pub(crate) fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn conjunction(literals: &[Literal]) -> String {
    literals
        .iter()
        .map(|l| format!("{}c[{}]", if l.positive { "" } else { "!" }, l.bit.0))
        .collect::<Vec<_>>()
        .join(" & ")
}

fn gate(out: &mut String, g: &Gate) {
    let args = match g.kind.angle() {
        Some(theta) => format!("({})", float(theta)),
        None => String::new(),
    };
    let name = g.kind.name();
    let t = g.target.0;
    match g.controls.as_slice() {
        [] => writeln!(out, "{name}{args} q[{t}];"),
        [c] if c.positive && matches!(g.kind, GateKind::X | GateKind::Z | GateKind::Phase(_)) => {
            writeln!(out, "c{name}{args} q[{}], q[{t}];", c.qubit.0)
        }
        [c] => {
            let modifier = if c.positive { "ctrl" } else { "negctrl" };
            writeln!(out, "{modifier} @ {name}{args} q[{}], q[{t}];", c.qubit.0)
        }
        _ => unreachable!("validated circuits carry at most one quantum control"),
    }
    .expect("write to String");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{Condition, Control, QubitRef};

    #[test]
    fn pair_text() {
        let mut c = Circuit::new("", 2, 2);
        c.gate(GateKind::H, 0).cgate(GateKind::X, 0, 1).measure(0, 0).measure(1, 1);
        assert_eq!(
            emit(&c),
            "OPENQASM 3.0;\ninclude \"stdgates.inc\";\nqubit[2] q;\nbit[2] c;\nh q[0];\ncx q[0], q[1];\n\
             c[0] = measure q[0];\nc[1] = measure q[1];\n"
        );
    }

    #[test]
    fn toggles_conditions_and_modifiers() {
        let mut c = Circuit::new("t", 2, 3);
        c.measure(0, 0).measure(1, 1);
        c.push(Instruction::toggle(2, []));
        c.push(Instruction::toggle(2, [Literal::pos(0)]));
        c.push(Instruction::toggle(2, [Literal::pos(0), Literal::neg(1)]));
        c.push(Instruction::Gate(
            Gate::single(GateKind::Y, 1).with_condition(Condition::on([Literal::neg(0), Literal::pos(2)])),
        ));
        c.push(Instruction::Gate(Gate {
            kind: GateKind::H,
            controls: vec![Control::neg(0)],
            target: QubitRef(1),
            condition: Condition::always(),
        }));
        c.cgate(GateKind::Rx(0.5), 1, 0);
        let text = emit(&c);
        for line in [
            "// name: t",
            "c[2] = !c[2];",
            "c[2] = c[2] ^ c[0];",
            "c[2] = c[2] ^ (c[0] & !c[1]);",
            "if (!c[0] & c[2]) y q[1];",
            "negctrl @ h q[0], q[1];",
            "ctrl @ rx(5.0000000000000000e-1) q[1], q[0];",
        ] {
            assert!(text.lines().any(|l| l == line), "missing {line}\n{text}");
        }
    }

    #[test]
    fn float_format() {
        assert_eq!(float(std::f64::consts::PI), "3.1415926535897931e0");
        assert_eq!(float(-0.25), "-2.5000000000000000e-1");
    }
}
