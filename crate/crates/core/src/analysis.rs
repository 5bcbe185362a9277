//! Dependency analysis and metrics over a [`Circuit`].

use std::collections::{BTreeSet, VecDeque};

use crate::ir::{Circuit, ClbitRef, Instruction, IrError, QubitRef};

/// Result of a forward reachability search.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cone {
    pub instructions: BTreeSet<usize>,
    pub qubits: BTreeSet<usize>,
    /// Bits assigned (measured or toggled) by instructions in the cone.
    pub bits: BTreeSet<usize>,
}

impl Cone {
    pub fn contains_measure(&self, circuit: &Circuit) -> bool {
        self.instructions.iter().any(|&i| circuit.instructions[i].is_measure())
    }
}

/// Per-instruction successor lists along wires and classical def-use edges.
///
/// Wire successors stop at a `Reset`: the post-reset state does not depend
/// on anything before it.
pub struct Successors {
    next_on_wire: Vec<Vec<usize>>,
    bit_readers: Vec<Vec<usize>>,
}

impl Successors {
    pub fn build(circuit: &Circuit) -> Self {
        let n = circuit.instructions.len();
        let mut next_on_wire = vec![Vec::new(); n];
        let mut bit_readers = vec![Vec::new(); n];
        let mut last_on_wire: Vec<Option<usize>> = vec![None; circuit.n_qubits];
        let mut last_writer: Vec<Option<usize>> = vec![None; circuit.n_clbits];

        for (pos, instr) in circuit.instructions.iter().enumerate() {
            let is_reset = matches!(instr, Instruction::Reset { .. });
            for q in instr.qubits() {
                if let Some(prev) = last_on_wire[q.0] {
                    if !is_reset {
                        next_on_wire[prev].push(pos);
                    }
                }
                last_on_wire[q.0] = Some(pos);
            }
            for b in instr.bits_read() {
                if let Some(w) = last_writer[b.0] {
                    if !bit_readers[w].contains(&pos) {
                        bit_readers[w].push(pos);
                    }
                }
            }
            if let Some(b) = instr.bit_written() {
                last_writer[b.0] = Some(pos);
            }
        }
        Successors { next_on_wire, bit_readers }
    }

    pub fn of(&self, pos: usize) -> impl Iterator<Item = usize> + '_ {
        self.next_on_wire[pos].iter().chain(&self.bit_readers[pos]).copied()
    }
}

/// Breadth-first forward reachability from `start`.
pub fn forward_cone(circuit: &Circuit, start: usize) -> Result<Cone, IrError> {
    if start >= circuit.instructions.len() {
        return Err(IrError::InvalidPosition(start));
    }
    Ok(forward_cone_from(circuit, &Successors::build(circuit), [start]))
}

/// Forward reachability seeded from several positions at once.
pub fn forward_cone_from(circuit: &Circuit, succ: &Successors, seeds: impl IntoIterator<Item = usize>) -> Cone {
    let mut cone = Cone::default();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in seeds {
        if cone.instructions.insert(s) {
            queue.push_back(s);
        }
    }
    while let Some(pos) = queue.pop_front() {
        let instr = &circuit.instructions[pos];
        cone.qubits.extend(instr.qubits().map(|q| q.0));
        if let Some(b) = instr.bit_written() {
            cone.bits.insert(b.0);
        }
        for next in succ.of(pos) {
            if cone.instructions.insert(next) {
                queue.push_back(next);
            }
        }
    }
    cone
}

/// For each instruction, whether its forward cone contains a measurement.
pub fn reaches_measurement(circuit: &Circuit) -> Vec<bool> {
    let n = circuit.instructions.len();
    let mut reach = vec![false; n];
    let mut wire_next = vec![false; circuit.n_qubits];
    let mut readers_reach = vec![false; circuit.n_clbits];

    for pos in (0..n).rev() {
        let instr = &circuit.instructions[pos];
        let mut r = instr.is_measure() || instr.qubits().any(|q| wire_next[q.0]);
        if let Some(b) = instr.bit_written() {
            r |= readers_reach[b.0];
        }
        reach[pos] = r;

        let is_reset = matches!(instr, Instruction::Reset { .. });
        for q in instr.qubits() {
            wire_next[q.0] = !is_reset && r;
        }
        match instr {
            Instruction::Measure { bit, .. } => readers_reach[bit.0] = false,
            Instruction::Toggle { target, .. } => readers_reach[target.0] = r,
            _ => {}
        }
        for b in instr.bits_read() {
            readers_reach[b.0] |= r;
        }
    }
    reach
}

/// Position of the latest instruction before `pos` acting on `q`.
pub fn prev_on_wire(circuit: &Circuit, pos: usize, q: QubitRef) -> Option<usize> {
    circuit.instructions[..pos].iter().rposition(|i| i.acts_on(q))
}

/// Whether any instruction in `range` reads or writes `bit`.
pub fn bit_accessed_in(circuit: &Circuit, range: std::ops::Range<usize>, bit: ClbitRef) -> bool {
    circuit.instructions[range].iter().any(|i| i.bit_written() == Some(bit) || i.bits_read().any(|b| b == bit))
}

/// If the latest instruction on `q` before `pos` is a measurement whose bit
/// still holds its outcome at `pos`, return that bit.
pub fn measured_bit_before(circuit: &Circuit, pos: usize, q: QubitRef) -> Option<ClbitRef> {
    let prev = prev_on_wire(circuit, pos, q)?;
    match circuit.instructions[prev] {
        Instruction::Measure { bit, .. } => {
            let overwritten = circuit.instructions[prev + 1..pos].iter().any(|i| i.bit_written() == Some(bit));
            (!overwritten).then_some(bit)
        }
        _ => None,
    }
}

/// As-soon-as-possible layer count.
///
/// Gates, measurements and resets take one layer on each qubit they touch;
/// toggles take none. A conditioned gate is placed after the layer in which
/// every bit it reads became available.
pub fn depth(circuit: &Circuit) -> usize {
    let mut wire = vec![0usize; circuit.n_qubits];
    let mut ready = vec![0usize; circuit.n_clbits];
    let mut max = 0;
    for instr in &circuit.instructions {
        match instr {
            Instruction::Toggle { target, product } => {
                let t = product.iter().map(|l| ready[l.bit.0]).fold(ready[target.0], usize::max);
                ready[target.0] = t;
            }
            _ => {
                let after_bits = instr.bits_read().map(|b| ready[b.0]).max().unwrap_or(0);
                let layer = instr.qubits().map(|q| wire[q.0]).fold(after_bits, usize::max) + 1;
                for q in instr.qubits() {
                    wire[q.0] = layer;
                }
                if let Instruction::Measure { bit, .. } = instr {
                    ready[bit.0] = layer;
                }
                max = max.max(layer);
            }
        }
    }
    max
}

/// Number of gates touching exactly two qubits.
pub fn two_qubit_gate_count(circuit: &Circuit) -> usize {
    circuit.instructions.iter().filter_map(Instruction::as_gate).filter(|g| g.controls.len() + 1 == 2).count()
}

pub fn is_diagonal(instr: &Instruction) -> bool {
    instr.as_gate().is_some_and(|g| g.is_diagonal())
}

pub fn is_bitflip(instr: &Instruction) -> bool {
    instr.as_gate().is_some_and(|g| g.is_bitflip())
}
