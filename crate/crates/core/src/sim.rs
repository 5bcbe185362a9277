//! Reference semantics: exact outcome distributions of dynamic circuits.
//!
//! The state is a dense amplitude vector; qubit `q` is bit `q` of the basis
//! index. Every measurement or reset splits the current path into at most two
//! branches weighted by their Born probabilities, and paths are enumerated
//! depth-first. The classical record is a `u64` with bit `i` holding `c[i]`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::ir::{Circuit, Gate, Instruction, IrError, Matrix2};

/// Branches with probability at or below this are dropped.
pub const PRUNE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub max_qubits: usize,
    pub max_branches: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig { max_qubits: 12, max_branches: 1 << 20 }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("circuit has {n} qubits, simulator cap is {cap}")]
    QubitCap { n: usize, cap: usize },
    #[error("circuit has {0} classical bits, at most 64 are supported")]
    ClbitCap(usize),
    #[error("more than {0} measurement branches")]
    BranchLimit(usize),
    #[error("circuits declare {0} and {1} classical bits")]
    ClbitMismatch(usize, usize),
    #[error(transparent)]
    Invalid(#[from] IrError),
}

/// Probability of every final classical assignment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutcomeDistribution {
    pub n_bits: usize,
    pub probs: BTreeMap<u64, f64>,
}

impl OutcomeDistribution {
    pub fn prob(&self, record: u64) -> f64 {
        self.probs.get(&record).copied().unwrap_or(0.0)
    }

    /// Probability of a bitstring written with `c[0]` first.
    pub fn prob_of(&self, bits: &str) -> f64 {
        self.prob(parse_bitstring(bits))
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// `c[0]` first.
    pub fn bitstring(&self, record: u64) -> String {
        (0..self.n_bits).map(|i| if record >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// Half the L1 distance.
    pub fn total_variation(&self, other: &OutcomeDistribution) -> f64 {
        let mut keys: Vec<u64> = self.probs.keys().chain(other.probs.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        0.5 * keys.iter().map(|&k| (self.prob(k) - other.prob(k)).abs()).sum::<f64>()
    }

    /// The single outcome carrying probability within `tol` of one.
    pub fn deterministic(&self, tol: f64) -> Option<u64> {
        self.probs.iter().find(|(_, &p)| (1.0 - p).abs() <= tol).map(|(&k, _)| k)
    }
}

impl fmt::Display for OutcomeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in &self.probs {
            writeln!(f, "{} {:.12}", self.bitstring(*k), p)?;
        }
        Ok(())
    }
}

fn parse_bitstring(bits: &str) -> u64 {
    bits.chars().enumerate().fold(0, |acc, (i, ch)| if ch == '1' { acc | 1 << i } else { acc })
}

/// Result of comparing two circuits' distributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub deviation: f64,
}

pub fn distribution(circuit: &Circuit) -> Result<OutcomeDistribution, SimError> {
    distribution_with(circuit, SimConfig::default())
}

pub fn distribution_with(circuit: &Circuit, config: SimConfig) -> Result<OutcomeDistribution, SimError> {
    if circuit.n_qubits > config.max_qubits {
        return Err(SimError::QubitCap { n: circuit.n_qubits, cap: config.max_qubits });
    }
    if circuit.n_clbits > 64 {
        return Err(SimError::ClbitCap(circuit.n_clbits));
    }
    circuit.check()?;

    let mut state = vec![Complex64::new(0.0, 0.0); 1 << circuit.n_qubits];
    state[0] = Complex64::new(1.0, 0.0);
    let mut probs: BTreeMap<u64, f64> = BTreeMap::new();
    let mut branches = 1usize;
    let mut stack = vec![Path { pos: 0, state, record: 0, weight: 1.0 }];

    while let Some(mut path) = stack.pop() {
        while path.pos < circuit.instructions.len() {
            match &circuit.instructions[path.pos] {
                Instruction::Gate(g) => {
                    if g.condition.eval(path.record) {
                        apply_gate(&mut path.state, g);
                    }
                }
                Instruction::Toggle { target, product } => {
                    if product.iter().all(|l| l.eval(path.record)) {
                        path.record ^= 1 << target.0;
                    }
                }
                Instruction::Measure { qubit, bit } => {
                    let mut split = collapse(&path, qubit.0);
                    for (outcome, p) in &mut split {
                        p.record = p.record & !(1 << bit.0) | (*outcome as u64) << bit.0;
                    }
                    path = take_branch(split, &mut stack, &mut branches, config.max_branches)?;
                    continue;
                }
                Instruction::Reset { qubit } => {
                    let mut split = collapse(&path, qubit.0);
                    for (outcome, p) in &mut split {
                        if *outcome {
                            flip(&mut p.state, qubit.0);
                        }
                    }
                    path = take_branch(split, &mut stack, &mut branches, config.max_branches)?;
                    continue;
                }
            }
            path.pos += 1;
        }
        *probs.entry(path.record).or_default() += path.weight;
    }
    Ok(OutcomeDistribution { n_bits: circuit.n_clbits, probs })
}

/// Compares the classical outcome distributions of two circuits.
pub fn equivalent(c1: &Circuit, c2: &Circuit, tol: f64) -> Result<Equivalence, SimError> {
    if c1.n_clbits != c2.n_clbits {
        return Err(SimError::ClbitMismatch(c1.n_clbits, c2.n_clbits));
    }
    let deviation = distribution(c1)?.total_variation(&distribution(c2)?);
    Ok(Equivalence { equivalent: deviation <= tol, deviation })
}

struct Path {
    pos: usize,
    state: Vec<Complex64>,
    record: u64,
    weight: f64,
}

/// Projects `path` onto both values of `qubit`, advancing past the current
/// instruction. Branches are renormalized and carry their Born weight.
fn collapse(path: &Path, qubit: usize) -> Vec<(bool, Path)> {
    let mask = 1usize << qubit;
    let p1: f64 = path.state.iter().enumerate().filter(|(i, _)| i & mask != 0).map(|(_, a)| a.norm_sqr()).sum();
    let total: f64 = path.state.iter().map(|a| a.norm_sqr()).sum();
    let p1 = (p1 / total).clamp(0.0, 1.0);
    [(false, 1.0 - p1), (true, p1)]
        .into_iter()
        .filter(|&(_, p)| p > PRUNE_TOL)
        .map(|(outcome, p)| {
            let scale = 1.0 / (p * total).sqrt();
            let state = path
                .state
                .iter()
                .enumerate()
                .map(|(i, a)| if (i & mask != 0) == outcome { a * scale } else { Complex64::new(0.0, 0.0) })
                .collect();
            (outcome, Path { pos: path.pos + 1, state, record: path.record, weight: path.weight * p })
        })
        .collect()
}

fn take_branch(
    mut split: Vec<(bool, Path)>,
    stack: &mut Vec<Path>,
    branches: &mut usize,
    limit: usize,
) -> Result<Path, SimError> {
    *branches += split.len().saturating_sub(1);
    if *branches > limit {
        return Err(SimError::BranchLimit(limit));
    }
    let (_, first) = split.remove(0);
    stack.extend(split.into_iter().map(|(_, p)| p));
    Ok(first)
}

fn flip(state: &mut [Complex64], qubit: usize) {
    let mask = 1usize << qubit;
    for i in 0..state.len() {
        if i & mask == 0 {
            state.swap(i, i | mask);
        }
    }
}

fn apply_gate(state: &mut [Complex64], gate: &Gate) {
    let m: Matrix2 = gate.kind.matrix();
    let t = 1usize << gate.target.0;
    for i in 0..state.len() {
        if i & t != 0 {
            continue;
        }
        let active = gate.controls.iter().all(|c| (i >> c.qubit.0 & 1 == 1) == c.positive);
        if !active {
            continue;
        }
        let (a0, a1) = (state[i], state[i | t]);
        state[i] = m[0][0] * a0 + m[0][1] * a1;
        state[i | t] = m[1][0] * a0 + m[1][1] * a1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{Condition, GateKind, Literal};

    #[test]
    fn hadamard_is_fair() {
        let mut c = Circuit::new("h", 1, 1);
        c.gate(GateKind::H, 0).measure(0, 0);
        let d = distribution(&c).unwrap();
        assert!((d.prob(0) - 0.5).abs() < 1e-12 && (d.prob(1) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn x_versus_nothing() {
        let mut a = Circuit::new("a", 1, 1);
        a.gate(GateKind::X, 0).measure(0, 0);
        let mut b = Circuit::new("b", 1, 1);
        b.measure(0, 0);
        let eq = equivalent(&a, &b, 1e-9).unwrap();
        assert!(!eq.equivalent);
        assert!((eq.deviation - 1.0).abs() < 1e-12);
        assert_eq!(equivalent(&a, &a, 0.0).unwrap(), Equivalence { equivalent: true, deviation: 0.0 });
    }

    #[test]
    fn bell_correlations() {
        let mut c = Circuit::new("bell", 2, 2);
        c.gate(GateKind::H, 0).cgate(GateKind::X, 0, 1).measure(0, 0).measure(1, 1);
        let d = distribution(&c).unwrap();
        assert!((d.prob_of("00") - 0.5).abs() < 1e-12);
        assert!((d.prob_of("11") - 0.5).abs() < 1e-12);
        assert_eq!(d.probs.len(), 2);
    }

    #[test]
    fn reset_returns_to_zero() {
        let mut c = Circuit::new("r", 1, 2);
        c.gate(GateKind::H, 0).measure(0, 0).reset(0).measure(0, 1);
        let d = distribution(&c).unwrap();
        assert!((d.prob_of("00") - 0.5).abs() < 1e-12);
        assert!((d.prob_of("10") - 0.5).abs() < 1e-12);
    }

    #[test]
    fn conditions_and_toggles() {
        let mut c = Circuit::new("ct", 2, 2);
        c.gate(GateKind::H, 0).measure(0, 0);
        c.push(Instruction::Gate(Gate::single(GateKind::X, 1).with_condition(Condition::on([Literal::pos(0)]))));
        c.measure(1, 1);
        c.push(Instruction::toggle(0, []));
        let d = distribution(&c).unwrap();
        assert!((d.prob_of("10") - 0.5).abs() < 1e-12);
        assert!((d.prob_of("01") - 0.5).abs() < 1e-12);
    }

    #[test]
    fn double_toggle_is_identity() {
        let mut a = Circuit::new("t", 2, 2);
        a.gate(GateKind::H, 0).gate(GateKind::H, 1).measure(0, 0).measure(1, 1);
        let mut b = a.clone();
        b.push(Instruction::toggle(1, [Literal::neg(0)]));
        b.push(Instruction::toggle(1, [Literal::neg(0)]));
        assert_eq!(equivalent(&a, &b, 0.0).unwrap().deviation, 0.0);
    }

    #[test]
    fn negative_control() {
        let mut c = Circuit::new("n", 2, 1);
        c.push(Instruction::Gate(Gate {
            kind: GateKind::X,
            controls: vec![crate::ir::Control::neg(0)],
            target: crate::ir::QubitRef(1),
            condition: Condition::always(),
        }));
        c.measure(1, 0);
        assert_eq!(distribution(&c).unwrap().deterministic(1e-12), Some(1));
    }

    #[test]
    fn caps() {
        let c = Circuit::new("big", 13, 0);
        assert_eq!(distribution(&c), Err(SimError::QubitCap { n: 13, cap: 12 }));
        let mut c = Circuit::new("many", 1, 1);
        for _ in 0..3 {
            c.gate(GateKind::H, 0).measure(0, 0);
        }
        let cfg = SimConfig { max_qubits: 12, max_branches: 4 };
        assert_eq!(distribution_with(&c, cfg), Err(SimError::BranchLimit(4)));
        assert!(distribution_with(&c, SimConfig { max_branches: 8, ..cfg }).is_ok());
    }

    #[test]
    fn clbit_mismatch() {
        let a = Circuit::new("a", 1, 1);
        let b = Circuit::new("b", 1, 2);
        assert_eq!(equivalent(&a, &b, 1e-9), Err(SimError::ClbitMismatch(1, 2)));
    }
}
