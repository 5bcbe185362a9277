//! Greedy search-and-reset qubit reuse.
//!
//! A qubit `q` may reuse a wire `q'` when nothing reachable from `q`'s
//! instructions touches `q'`. A toggle belongs to the wire of the qubit whose
//! measurement last assigned its target bit, so a wire ends with its last
//! quantum instruction or owned toggle, whichever comes later.
//!
//! Merging moves every instruction of `q` behind a fresh `Reset` on `q'` and
//! reschedules the circuit with a stable topological sort.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::analysis::Successors;
use crate::ir::{Circuit, Instruction, QubitRef};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReuseCandidate {
    /// Qubit whose computation is moved.
    pub q: QubitRef,
    /// Wire that hosts it after a reset.
    pub q_prime: QubitRef,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReuseError {
    #[error("candidate q={q} q'={q_prime} is no longer independent")]
    CandidateStale { q: usize, q_prime: usize },
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn intersects(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }
}

/// Owner qubit of every instruction: its wire for quantum instructions, the
/// measured qubit behind the target bit for toggles.
fn owners(circuit: &Circuit) -> Vec<Option<usize>> {
    let mut bit_owner: Vec<Option<usize>> = vec![None; circuit.n_clbits];
    circuit
        .instructions
        .iter()
        .map(|instr| match instr {
            Instruction::Measure { qubit, bit } => {
                bit_owner[bit.0] = Some(qubit.0);
                Some(qubit.0)
            }
            Instruction::Toggle { target, .. } => bit_owner[target.0],
            Instruction::Gate(g) => Some(g.target.0),
            Instruction::Reset { qubit } => Some(qubit.0),
        })
        .collect()
}

/// Positions on each qubit's wire: those acting on it and those it owns.
fn wires(circuit: &Circuit, owner: &[Option<usize>]) -> Vec<Vec<usize>> {
    let mut wire = vec![Vec::new(); circuit.n_qubits];
    for (pos, instr) in circuit.instructions.iter().enumerate() {
        let mut on: Vec<usize> = instr.qubits().map(|q| q.0).chain(owner[pos]).collect();
        on.sort_unstable();
        on.dedup();
        for q in on {
            wire[q].push(pos);
        }
    }
    wire
}

/// Ordering constraints every schedule must keep: wire order, and
/// read-after-write, write-after-read and write-after-write on bits.
/// Edges always point to a later position.
fn dependencies(circuit: &Circuit) -> Vec<Vec<usize>> {
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); circuit.instructions.len()];
    let mut last_on_wire: Vec<Option<usize>> = vec![None; circuit.n_qubits];
    let mut last_writer: Vec<Option<usize>> = vec![None; circuit.n_clbits];
    let mut readers: Vec<Vec<usize>> = vec![Vec::new(); circuit.n_clbits];
    for (pos, instr) in circuit.instructions.iter().enumerate() {
        for q in instr.qubits() {
            if let Some(prev) = last_on_wire[q.0].replace(pos) {
                succ[prev].push(pos);
            }
        }
        for b in instr.bits_read() {
            if let Some(w) = last_writer[b.0] {
                succ[w].push(pos);
            }
            readers[b.0].push(pos);
        }
        if let Some(b) = instr.bit_written() {
            for r in std::mem::take(&mut readers[b.0]) {
                if r != pos {
                    succ[r].push(pos);
                }
            }
            if let Some(w) = last_writer[b.0].replace(pos) {
                succ[w].push(pos);
            }
        }
    }
    succ
}

/// Per-qubit facts shared by every candidate check.
struct Analysis {
    /// Positions on each qubit's wire.
    on_wire: Vec<Bits>,
    /// Qubits touched by each qubit's forward cone, toggle owners included.
    touched: Vec<Bits>,
    /// Positions that every schedule places after some position of the qubit.
    after: Vec<Bits>,
}

impl Analysis {
    fn new(circuit: &Circuit, owner: &[Option<usize>]) -> Self {
        let n = circuit.n_qubits;
        let len = circuit.instructions.len();
        let succ = Successors::build(circuit);
        let deps = dependencies(circuit);

        let wire = wires(circuit, owner);
        let mut on_wire = vec![Bits::new(len); n];
        for (q, positions) in wire.iter().enumerate() {
            for &pos in positions {
                on_wire[q].insert(pos);
            }
        }

        let mut reach = vec![Bits::new(n); len];
        for pos in (0..len).rev() {
            let mut r = Bits::new(n);
            for q in circuit.instructions[pos].qubits() {
                r.insert(q.0);
            }
            if let Some(q) = owner[pos] {
                r.insert(q);
            }
            for next in succ.of(pos) {
                r.union_with(&reach[next]);
            }
            reach[pos] = r;
        }
        let mut touched = vec![Bits::new(n); n];
        for (q, positions) in wire.iter().enumerate() {
            for &pos in positions {
                touched[q].union_with(&reach[pos]);
            }
        }

        let after = (0..n)
            .map(|q| {
                let mut seen = Bits::new(len);
                let mut stack = wire[q].clone();
                while let Some(p) = stack.pop() {
                    for &s in &deps[p] {
                        if !seen.contains(s) {
                            seen.insert(s);
                            stack.push(s);
                        }
                    }
                }
                seen
            })
            .collect();
        Analysis { on_wire, touched, after }
    }

    fn mergeable(&self, q: usize, q_prime: usize) -> bool {
        q != q_prime
            && !self.touched[q].contains(q_prime)
            // An edge from q to q' would close a cycle through the reset.
            && !self.after[q].intersects(&self.on_wire[q_prime])
    }
}

/// First mergeable pair, scanning the reused wire `q'` in ascending order
/// and, for each, the moved qubit `q` in ascending order.
pub fn find_candidate(circuit: &Circuit) -> Option<ReuseCandidate> {
    let analysis = Analysis::new(circuit, &owners(circuit));
    (0..circuit.n_qubits)
        .flat_map(|q_prime| (0..circuit.n_qubits).map(move |q| (q, q_prime)))
        .find(|&(q, q_prime)| analysis.mergeable(q, q_prime))
        .map(|(q, q_prime)| ReuseCandidate { q: QubitRef(q), q_prime: QubitRef(q_prime) })
}

/// Instruction order after merging `q` onto `q'`, as indices into the
/// original list; `usize::MAX` marks the inserted reset.
///
/// Kahn's algorithm emitting the smallest available key, where position `i`
/// has key `2i` and the reset sits right after the last position of `q'`.
fn schedule(circuit: &Circuit, owner: &[Option<usize>], q: usize, q_prime: usize) -> Vec<usize> {
    let n = circuit.instructions.len();
    let mut wire = wires(circuit, owner);
    let q_wire = std::mem::take(&mut wire[q]);
    let p_wire = std::mem::take(&mut wire[q_prime]);
    let needs_reset = !q_wire.is_empty() && !p_wire.is_empty();
    let reset = n;

    let mut succ = dependencies(circuit);
    succ.push(Vec::new());
    if needs_reset {
        for &p in &p_wire {
            succ[p].push(reset);
        }
        succ[reset].extend(&q_wire);
    }
    let total = if needs_reset { n + 1 } else { n };
    let mut indeg = vec![0usize; n + 1];
    for s in succ.iter().flatten() {
        indeg[*s] += 1;
    }
    let last_p = p_wire.last().copied().unwrap_or(0);
    let key = |node: usize| if node == reset { 2 * last_p + 1 } else { 2 * node };

    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..total).filter(|&v| indeg[v] == 0).map(|v| Reverse((key(v), v))).collect();
    let mut order = Vec::with_capacity(total);
    while let Some(Reverse((_, node))) = heap.pop() {
        order.push(if node == reset { usize::MAX } else { node });
        for &s in &succ[node] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                heap.push(Reverse((key(s), s)));
            }
        }
    }
    debug_assert_eq!(order.len(), total, "mergeable pairs are acyclic");
    order
}

/// Moves `q`'s computation onto `q'` behind a reset and drops `q`.
pub fn apply_reuse(circuit: &Circuit, candidate: ReuseCandidate) -> Result<Circuit, ReuseError> {
    let (q, q_prime) = (candidate.q.0, candidate.q_prime.0);
    if q >= circuit.n_qubits || q_prime >= circuit.n_qubits {
        return Err(ReuseError::CandidateStale { q, q_prime });
    }
    let owner = owners(circuit);
    if !Analysis::new(circuit, &owner).mergeable(q, q_prime) {
        return Err(ReuseError::CandidateStale { q, q_prime });
    }
    let order = schedule(circuit, &owner, q, q_prime);

    let remap = |x: usize| -> usize {
        let x = if x == q { q_prime } else { x };
        if x > q {
            x - 1
        } else {
            x
        }
    };
    let mut out = Circuit::new(circuit.name.clone(), circuit.n_qubits - 1, circuit.n_clbits);
    for idx in order {
        let instr = if idx == usize::MAX {
            Instruction::Reset { qubit: QubitRef(remap(q_prime)) }
        } else {
            let mut instr = circuit.instructions[idx].clone();
            match &mut instr {
                Instruction::Gate(g) => {
                    g.target.0 = remap(g.target.0);
                    for c in &mut g.controls {
                        c.qubit.0 = remap(c.qubit.0);
                    }
                }
                Instruction::Measure { qubit, .. } | Instruction::Reset { qubit } => {
                    qubit.0 = remap(qubit.0);
                }
                Instruction::Toggle { .. } => {}
            }
            instr
        };
        out.instructions.push(instr);
    }
    debug_assert!(out.validate().is_empty(), "{:?}", out.validate());
    Ok(out)
}

/// Repeats search and merge until no candidate remains.
pub fn run(circuit: &Circuit) -> (Circuit, usize) {
    let mut current = circuit.clone();
    let mut reuses = 0;
    while let Some(candidate) = find_candidate(&current) {
        current = apply_reuse(&current, candidate).expect("fresh candidate applies");
        reuses += 1;
    }
    (current, reuses)
}
