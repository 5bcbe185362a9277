//! Moves measurements toward the circuit start.
//!
//! A measurement is swapped with the latest earlier instruction on its wire
//! whenever one of four rules applies:
//!
//! * [`CommuteRule::Diagonal`]: the gate is diagonal, in any role.
//! * [`CommuteRule::BitFlip`]: the gate is an uncontrolled `X`; the outcome
//!   is corrected by a [`Instruction::Toggle`] carrying the `X`'s condition.
//! * [`CommuteRule::YDecompose`]: an uncontrolled `Y` is rewritten as `Z`
//!   followed by `X` (global phase dropped) so the two rules above can fire.
//! * [`CommuteRule::ControlledOnControl`]: the measured qubit is a quantum
//!   control of the gate.
//!
//! Instructions on other wires between the gate and the measurement do not
//! block a move, unless they access the measured bit.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::analysis::{bit_accessed_in, prev_on_wire};
use crate::ir::{Circuit, Gate, GateKind, Instruction, QubitRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CommuteRule {
    Diagonal,
    BitFlip,
    YDecompose,
    ControlledOnControl,
}

impl CommuteRule {
    pub const ALL: [CommuteRule; 4] =
        [CommuteRule::Diagonal, CommuteRule::BitFlip, CommuteRule::YDecompose, CommuteRule::ControlledOnControl];

    pub fn name(self) -> &'static str {
        match self {
            CommuteRule::Diagonal => "diagonal",
            CommuteRule::BitFlip => "bit_flip",
            CommuteRule::YDecompose => "y_decompose",
            CommuteRule::ControlledOnControl => "controlled_on_control",
        }
    }
}

impl fmt::Display for CommuteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CommuteError {
    #[error("instruction {0} is not a measurement")]
    NotAMeasure(usize),
    #[error("no commutation rule applies to the measurement at {0}")]
    RuleNotApplicable(usize),
}

/// Tally of rule applications.
pub type RuleCounts = BTreeMap<CommuteRule, usize>;

/// The rule that lets the measurement at `measure_pos` move before the
/// preceding instruction on its wire, if any.
///
/// Returns `None` when the move would reorder accesses to the measured bit.
pub fn applicable_rule(circuit: &Circuit, measure_pos: usize) -> Result<Option<CommuteRule>, CommuteError> {
    Ok(applicable(circuit, measure_pos)?.map(|(rule, _)| rule))
}

fn applicable(circuit: &Circuit, measure_pos: usize) -> Result<Option<(CommuteRule, usize)>, CommuteError> {
    let (qubit, bit) = match circuit.instructions.get(measure_pos) {
        Some(Instruction::Measure { qubit, bit }) => (*qubit, *bit),
        _ => return Err(CommuteError::NotAMeasure(measure_pos)),
    };
    let Some(gate_pos) = prev_on_wire(circuit, measure_pos, qubit) else {
        return Ok(None);
    };
    let Instruction::Gate(gate) = &circuit.instructions[gate_pos] else {
        return Ok(None);
    };
    if bit_accessed_in(circuit, gate_pos..measure_pos, bit) {
        return Ok(None);
    }
    Ok(rule_for(gate, qubit).map(|r| (r, gate_pos)))
}

fn rule_for(gate: &Gate, measured: QubitRef) -> Option<CommuteRule> {
    if gate.is_diagonal() {
        Some(CommuteRule::Diagonal)
    } else if gate.is_bitflip() {
        Some(CommuteRule::BitFlip)
    } else if gate.kind == GateKind::Y && gate.controls.is_empty() {
        Some(CommuteRule::YDecompose)
    } else if gate.controls.iter().any(|c| c.qubit == measured) {
        Some(CommuteRule::ControlledOnControl)
    } else {
        None
    }
}

/// Applies one rule to the measurement at `measure_pos`.
///
/// `YDecompose` only rewrites the `Y`; the measurement stays where it is.
pub fn commute_once(circuit: &Circuit, measure_pos: usize) -> Result<Circuit, CommuteError> {
    commute_step(circuit, measure_pos).map(|(c, _, _)| c)
}

/// Like [`commute_once`], also returning the applied rule and the new
/// position of the measurement.
pub fn commute_step(circuit: &Circuit, measure_pos: usize) -> Result<(Circuit, CommuteRule, usize), CommuteError> {
    let mut out = circuit.clone();
    let (rule, pos) = commute_in_place(&mut out, measure_pos)?;
    Ok((out, rule, pos))
}

pub(crate) fn commute_in_place(
    circuit: &mut Circuit,
    measure_pos: usize,
) -> Result<(CommuteRule, usize), CommuteError> {
    let (rule, gate_pos) = applicable(circuit, measure_pos)?.ok_or(CommuteError::RuleNotApplicable(measure_pos))?;
    let instrs = &mut circuit.instructions;
    match rule {
        CommuteRule::YDecompose => {
            let Instruction::Gate(y) = &mut instrs[gate_pos] else { unreachable!() };
            y.kind = GateKind::Z;
            let x = Gate { kind: GateKind::X, ..y.clone() };
            instrs.insert(gate_pos + 1, Instruction::Gate(x));
            Ok((rule, measure_pos + 1))
        }
        CommuteRule::Diagonal | CommuteRule::ControlledOnControl => {
            let m = instrs.remove(measure_pos);
            instrs.insert(gate_pos, m);
            Ok((rule, gate_pos))
        }
        CommuteRule::BitFlip => {
            let m = instrs.remove(measure_pos);
            let Instruction::Measure { bit, .. } = m else { unreachable!() };
            let Instruction::Gate(x) = &instrs[gate_pos] else { unreachable!() };
            let toggle = Instruction::Toggle { target: bit, product: x.condition.literals.clone() };
            instrs.splice(gate_pos..gate_pos, [m, toggle]);
            Ok((rule, gate_pos))
        }
    }
}

/// First measurement, in circuit order, that can still move.
pub fn first_movable(circuit: &Circuit) -> Option<usize> {
    let mut last_on_wire: Vec<Option<usize>> = vec![None; circuit.n_qubits];
    let mut last_access: Vec<Option<usize>> = vec![None; circuit.n_clbits];
    for (pos, instr) in circuit.instructions.iter().enumerate() {
        if let Instruction::Measure { qubit, bit } = instr {
            if let Some(gate_pos) = last_on_wire[qubit.0] {
                let blocked = last_access[bit.0].is_some_and(|a| a >= gate_pos);
                if let (false, Instruction::Gate(g)) = (blocked, &circuit.instructions[gate_pos]) {
                    if rule_for(g, *qubit).is_some() {
                        return Some(pos);
                    }
                }
            }
        }
        for q in instr.qubits() {
            last_on_wire[q.0] = Some(pos);
        }
        for b in instr.bits_read() {
            last_access[b.0] = Some(pos);
        }
        if let Some(b) = instr.bit_written() {
            last_access[b.0] = Some(pos);
        }
    }
    None
}

/// Pushes every measurement back until no rule applies.
///
/// Measurements are visited in circuit order; each one is moved until it is
/// stuck before the next is considered.
pub fn run(circuit: &Circuit) -> (Circuit, RuleCounts) {
    let mut current = circuit.clone();
    let mut counts = RuleCounts::new();
    let watchdog = watchdog_limit(circuit);
    let mut steps = 0usize;

    let mut advance = |current: &mut Circuit, mut m: usize| -> usize {
        while let Ok((rule, new_pos)) = commute_in_place(current, m) {
            *counts.entry(rule).or_default() += 1;
            m = new_pos;
            steps += 1;
            assert!(steps <= watchdog, "commutation did not terminate");
        }
        m
    };

    let mut pos = 0;
    while pos < current.instructions.len() {
        if current.instructions[pos].is_measure() {
            pos = advance(&mut current, pos);
        }
        pos += 1;
    }
    // A later move can unblock an earlier measurement.
    while let Some(m) = first_movable(&current) {
        advance(&mut current, m);
    }
    (current, counts)
}

pub(crate) fn watchdog_limit(circuit: &Circuit) -> usize {
    let n = circuit.instructions.len() + 1;
    4 * n * n + 16
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{Condition, Literal};

    #[test]
    fn diagonal_swap() {
        let mut c = Circuit::new("z", 1, 1);
        c.gate(GateKind::Z, 0).measure(0, 0);
        let (out, counts) = run(&c);
        let mut want = Circuit::new("z", 1, 1);
        want.measure(0, 0).gate(GateKind::Z, 0);
        assert_eq!(out, want);
        assert_eq!(counts[&CommuteRule::Diagonal], 1);
    }

    #[test]
    fn bitflip_inserts_negation() {
        let mut c = Circuit::new("x", 1, 1);
        c.gate(GateKind::X, 0).measure(0, 0);
        let out = commute_once(&c, 1).unwrap();
        let mut want = Circuit::new("x", 1, 1);
        want.measure(0, 0).push(Instruction::toggle(0, [])).gate(GateKind::X, 0);
        assert_eq!(out, want);
    }

    #[test]
    fn controlled_on_control() {
        let mut c = Circuit::new("cx", 2, 1);
        c.cgate(GateKind::X, 0, 1).measure(0, 0);
        assert_eq!(applicable_rule(&c, 1).unwrap(), Some(CommuteRule::ControlledOnControl));
        let mut want = Circuit::new("cx", 2, 1);
        want.measure(0, 0).cgate(GateKind::X, 0, 1);
        assert_eq!(commute_once(&c, 1).unwrap(), want);
    }

    #[test]
    fn cp_on_control_is_diagonal_first() {
        let mut c = Circuit::new("cp", 2, 1);
        c.cgate(GateKind::Phase(0.5), 0, 1).measure(0, 0);
        assert_eq!(applicable_rule(&c, 1).unwrap(), Some(CommuteRule::Diagonal));
    }

    #[test]
    fn h_blocks() {
        let mut c = Circuit::new("h", 1, 1);
        c.gate(GateKind::H, 0).measure(0, 0);
        assert_eq!(applicable_rule(&c, 1).unwrap(), None);
        assert_eq!(commute_once(&c, 1), Err(CommuteError::RuleNotApplicable(1)));
        let (out, counts) = run(&c);
        assert_eq!(out, c);
        assert!(counts.is_empty());
    }

    #[test]
    fn cx_target_blocks() {
        let mut c = Circuit::new("cxt", 2, 1);
        c.cgate(GateKind::X, 0, 1).measure(1, 0);
        assert_eq!(applicable_rule(&c, 1).unwrap(), None);
    }

    #[test]
    fn conditioned_x_becomes_conditioned_toggle() {
        let mut c = Circuit::new("cond", 2, 2);
        c.measure(0, 0);
        c.push(Instruction::Gate(Gate::single(GateKind::X, 1).with_condition(Condition::on([Literal::pos(0)]))));
        c.measure(1, 1);
        assert_eq!(applicable_rule(&c, 2).unwrap(), Some(CommuteRule::BitFlip));
        let out = commute_once(&c, 2).unwrap();
        let mut want = Circuit::new("cond", 2, 2);
        want.measure(0, 0).measure(1, 1).push(Instruction::toggle(1, [Literal::pos(0)]));
        want.push(Instruction::Gate(Gate::single(GateKind::X, 1).with_condition(Condition::on([Literal::pos(0)]))));
        assert_eq!(out, want);
    }

    #[test]
    fn y_is_decomposed_then_moved() {
        let mut c = Circuit::new("y", 1, 1);
        c.gate(GateKind::Y, 0).measure(0, 0);
        let (out, counts) = run(&c);
        let mut want = Circuit::new("y", 1, 1);
        want.measure(0, 0).gate(GateKind::Z, 0).push(Instruction::toggle(0, [])).gate(GateKind::X, 0);
        assert_eq!(out, want);
        assert_eq!(counts[&CommuteRule::YDecompose], 1);
        assert_eq!(counts[&CommuteRule::BitFlip], 1);
        assert_eq!(counts[&CommuteRule::Diagonal], 1);
    }

    #[test]
    fn reading_the_measured_bit_blocks() {
        // The X reads c0 before the measurement writes it.
        let mut c = Circuit::new("blk", 2, 1);
        c.measure(1, 0);
        c.push(Instruction::Gate(Gate::single(GateKind::X, 0).with_condition(Condition::on([Literal::pos(0)]))));
        c.measure(0, 0);
        assert_eq!(applicable_rule(&c, 2).unwrap(), None);
    }

    #[test]
    fn not_a_measure() {
        let mut c = Circuit::new("h", 1, 1);
        c.gate(GateKind::H, 0);
        assert_eq!(applicable_rule(&c, 0), Err(CommuteError::NotAMeasure(0)));
    }
}
