//! Dynamic-circuit transformations that remove quantum interactions once
//! measurements have been moved: dead-gate elimination, classical-control
//! introduction and control exchange on phase-type gates.

use std::collections::BTreeMap;

use crate::analysis::reaches_measurement;
use crate::commute::{self, CommuteRule};
use crate::ir::{Circuit, ClbitRef, Control, Instruction, Literal, QubitRef};

/// Application counts of every rewrite performed by [`run`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransformCounts {
    pub commute: BTreeMap<CommuteRule, usize>,
    pub dead_gates: usize,
    pub classical_controls: usize,
    pub exchanged_controls: usize,
}

impl TransformCounts {
    /// Flat `name -> count` view used by reports.
    pub fn as_map(&self) -> BTreeMap<String, usize> {
        let mut m: BTreeMap<String, usize> = CommuteRule::ALL.iter().map(|r| (r.name().to_string(), 0)).collect();
        for (r, n) in &self.commute {
            m.insert(r.name().to_string(), *n);
        }
        m.insert("dead_gate_elimination".into(), self.dead_gates);
        m.insert("classical_control_introduction".into(), self.classical_controls);
        m.insert("exchange_controls".into(), self.exchanged_controls);
        m
    }
}

/// Removes every gate whose forward cone contains no measurement.
pub fn eliminate_dead_gates(circuit: &Circuit) -> (Circuit, usize) {
    let mut out = circuit.clone();
    let n = eliminate_dead_gates_in(&mut out);
    (out, n)
}

fn eliminate_dead_gates_in(circuit: &mut Circuit) -> usize {
    let mut removed = 0;
    loop {
        let live = reaches_measurement(circuit);
        let before = circuit.instructions.len();
        let mut idx = 0;
        circuit.instructions.retain(|i| {
            let keep = !matches!(i, Instruction::Gate(_)) || live[idx];
            idx += 1;
            keep
        });
        let n = before - circuit.instructions.len();
        if n == 0 {
            return removed;
        }
        removed += n;
    }
}

/// Tracks, during a forward sweep, the latest instruction on every wire and
/// the latest writer of every bit.
struct Sweep {
    last_on_wire: Vec<Option<usize>>,
    last_writer: Vec<Option<usize>>,
}

impl Sweep {
    fn new(circuit: &Circuit) -> Self {
        Sweep { last_on_wire: vec![None; circuit.n_qubits], last_writer: vec![None; circuit.n_clbits] }
    }

    /// Bit holding the outcome of a measurement that is the latest
    /// instruction on `q`.
    fn measured_bit(&self, circuit: &Circuit, q: QubitRef) -> Option<ClbitRef> {
        let prev = self.last_on_wire[q.0]?;
        match circuit.instructions[prev] {
            Instruction::Measure { bit, .. } if self.last_writer[bit.0] == Some(prev) => Some(bit),
            _ => None,
        }
    }

    fn record(&mut self, circuit: &Circuit, pos: usize) {
        let instr = &circuit.instructions[pos];
        for q in instr.qubits() {
            self.last_on_wire[q.0] = Some(pos);
        }
        if let Some(b) = instr.bit_written() {
            self.last_writer[b.0] = Some(pos);
        }
    }
}

/// Replaces quantum controls whose qubit was just measured by a literal on
/// the measured bit.
pub fn introduce_classical_controls(circuit: &Circuit) -> (Circuit, usize) {
    let mut out = circuit.clone();
    let n = introduce_classical_controls_in(&mut out);
    (out, n)
}

fn introduce_classical_controls_in(out: &mut Circuit) -> usize {
    let mut replaced = 0;
    let mut sweep = Sweep::new(out);
    let mut pos = 0;
    while pos < out.instructions.len() {
        if let Instruction::Gate(g) = &out.instructions[pos] {
            let classical: Vec<(Control, Literal)> = g
                .controls
                .iter()
                .filter_map(|c| sweep.measured_bit(out, c.qubit).map(|bit| (*c, Literal { bit, positive: c.positive })))
                .collect();
            if !classical.is_empty() {
                let Instruction::Gate(g) = &mut out.instructions[pos] else { unreachable!() };
                let mut satisfiable = true;
                for (ctrl, lit) in classical {
                    g.controls.retain(|c| *c != ctrl);
                    satisfiable &= g.condition.conjoin(lit);
                    replaced += 1;
                }
                if !satisfiable {
                    // The gate can never fire.
                    out.instructions.remove(pos);
                    continue;
                }
            }
        }
        sweep.record(out, pos);
        pos += 1;
    }
    replaced
}

/// Swaps control and target of `diag(1, e^{iφ})` gates when only the target
/// carries a usable measurement outcome.
pub fn exchange_controls(circuit: &Circuit) -> (Circuit, usize) {
    let mut out = circuit.clone();
    let n = exchange_controls_in(&mut out);
    (out, n)
}

fn exchange_controls_in(out: &mut Circuit) -> usize {
    let mut exchanged = 0;
    let mut sweep = Sweep::new(out);
    for pos in 0..out.instructions.len() {
        if let Instruction::Gate(g) = &out.instructions[pos] {
            if let [ctrl] = g.controls[..] {
                if ctrl.positive
                    && g.kind.is_phase_type()
                    && sweep.measured_bit(out, g.target).is_some()
                    && sweep.measured_bit(out, ctrl.qubit).is_none()
                {
                    let Instruction::Gate(g) = &mut out.instructions[pos] else { unreachable!() };
                    let old_target = g.target;
                    g.target = ctrl.qubit;
                    g.controls[0] = Control { qubit: old_target, positive: true };
                    exchanged += 1;
                }
            }
        }
        sweep.record(out, pos);
    }
    exchanged
}

/// Interleaves the three transformations with measurement commutation until
/// no rule applies anywhere.
///
/// Transformations are run to a fixpoint after every single commutation
/// step, so an adjacency between a measurement and a controlled gate is
/// exploited before the measurement moves past it.
pub fn run(circuit: &Circuit) -> (Circuit, TransformCounts) {
    let mut current = circuit.clone();
    let mut counts = TransformCounts::default();
    let watchdog = commute::watchdog_limit(circuit);
    let mut steps = 0usize;
    loop {
        loop {
            let dead = eliminate_dead_gates_in(&mut current);
            let classical = introduce_classical_controls_in(&mut current);
            let exchanged = exchange_controls_in(&mut current);
            counts.dead_gates += dead;
            counts.classical_controls += classical;
            counts.exchanged_controls += exchanged;
            if dead + classical + exchanged == 0 {
                break;
            }
        }
        let Some(m) = commute::first_movable(&current) else { break };
        let (rule, _) = commute::commute_in_place(&mut current, m).expect("movable measurement");
        *counts.commute.entry(rule).or_default() += 1;
        steps += 1;
        assert!(steps <= watchdog, "transformation fixpoint did not terminate");
    }
    (current, counts)
}
