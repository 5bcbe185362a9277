//! Dynamic-circuit intermediate representation.
//!
//! A [`Circuit`] is a flat, ordered list of [`Instruction`]s over a fixed
//! number of qubits and classical bits. Every pass in this crate consumes a
//! circuit and produces a new one; nothing is mutated behind a shared
//! reference.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// Absolute tolerance used when comparing angles.
pub const ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitRef(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClbitRef(pub usize);

impl fmt::Display for QubitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q[{}]", self.0)
    }
}

impl fmt::Display for ClbitRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{}]", self.0)
    }
}

/// A 2x2 unitary attached to an opaque gate so the oracle can execute it.
pub type Matrix2 = [[Complex64; 2]; 2];

/// Single-qubit gate alphabet. Controls are carried by the instruction, not
/// the kind, so `CP(θ)` is `Phase(θ)` with one control.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    T,
    Phase(f64),
    Rx(f64),
    Rz(f64),
    /// Named placeholder with an explicit matrix.
    Opaque {
        label: String,
        theta: f64,
        matrix: Matrix2,
    },
}

impl GateKind {
    pub fn name(&self) -> &str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::T => "t",
            GateKind::Phase(_) => "p",
            GateKind::Rx(_) => "rx",
            GateKind::Rz(_) => "rz",
            GateKind::Opaque { label, .. } => label,
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            GateKind::Phase(t) | GateKind::Rx(t) | GateKind::Rz(t) => Some(*t),
            GateKind::Opaque { theta, .. } => Some(*theta),
            _ => None,
        }
    }

    /// Computational-basis matrix of the gate.
    pub fn matrix(&self) -> Matrix2 {
        use std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let o = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            GateKind::H => [[h, h], [h, -h]],
            GateKind::X => [[z, o], [o, z]],
            GateKind::Y => [[z, -i], [i, z]],
            GateKind::Z => [[o, z], [z, -o]],
            GateKind::S => [[o, z], [z, i]],
            GateKind::T => [[o, z], [z, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]],
            GateKind::Phase(t) => [[o, z], [z, Complex64::from_polar(1.0, *t)]],
            GateKind::Rx(t) => {
                let c = Complex64::new((t / 2.0).cos(), 0.0);
                let s = Complex64::new(0.0, -(t / 2.0).sin());
                [[c, s], [s, c]]
            }
            GateKind::Rz(t) => [[Complex64::from_polar(1.0, -t / 2.0), z], [z, Complex64::from_polar(1.0, t / 2.0)]],
            GateKind::Opaque { matrix, .. } => *matrix,
        }
    }

    /// Diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        match self {
            GateKind::Z | GateKind::S | GateKind::T | GateKind::Phase(_) | GateKind::Rz(_) => true,
            GateKind::Opaque { matrix, .. } => matrix[0][1].norm() <= ANGLE_TOL && matrix[1][0].norm() <= ANGLE_TOL,
            _ => false,
        }
    }

    /// `diag(1, e^{iφ})` gates, for which control and target are interchangeable.
    pub fn is_phase_type(&self) -> bool {
        matches!(self, GateKind::Z | GateKind::S | GateKind::T | GateKind::Phase(_))
    }

    fn approx_eq(&self, other: &GateKind) -> bool {
        match (self, other) {
            (GateKind::Phase(a), GateKind::Phase(b))
            | (GateKind::Rx(a), GateKind::Rx(b))
            | (GateKind::Rz(a), GateKind::Rz(b)) => (a - b).abs() <= ANGLE_TOL,
            (
                GateKind::Opaque { label: la, theta: ta, matrix: ma },
                GateKind::Opaque { label: lb, theta: tb, matrix: mb },
            ) => la == lb && (ta - tb).abs() <= ANGLE_TOL && matrices_close(ma, mb),
            _ => self == other,
        }
    }
}

fn matrices_close(a: &Matrix2, b: &Matrix2) -> bool {
    (0..2).all(|r| (0..2).all(|c| (a[r][c] - b[r][c]).norm() <= ANGLE_TOL))
}

/// A classical-bit literal: `bit` when `positive`, `!bit` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub bit: ClbitRef,
    pub positive: bool,
}

impl Literal {
    pub fn pos(bit: usize) -> Self {
        Literal { bit: ClbitRef(bit), positive: true }
    }

    pub fn neg(bit: usize) -> Self {
        Literal { bit: ClbitRef(bit), positive: false }
    }

    pub fn eval(&self, record: u64) -> bool {
        ((record >> self.bit.0) & 1 == 1) == self.positive
    }
}

/// Conjunction of literals; empty means unconditional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Condition {
    pub literals: Vec<Literal>,
}

impl Condition {
    pub fn always() -> Self {
        Condition::default()
    }

    pub fn on(literals: impl IntoIterator<Item = Literal>) -> Self {
        Condition { literals: literals.into_iter().collect() }
    }

    pub fn is_unconditional(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn eval(&self, record: u64) -> bool {
        self.literals.iter().all(|l| l.eval(record))
    }

    /// Adds a literal. Returns `false` if the conjunction became
    /// unsatisfiable (the bit already appears with the opposite polarity).
    pub fn conjoin(&mut self, lit: Literal) -> bool {
        match self.literals.iter().find(|l| l.bit == lit.bit) {
            Some(existing) => existing.positive == lit.positive,
            None => {
                self.literals.push(lit);
                true
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: QubitRef,
    pub positive: bool,
}

impl Control {
    pub fn pos(q: usize) -> Self {
        Control { qubit: QubitRef(q), positive: true }
    }

    pub fn neg(q: usize) -> Self {
        Control { qubit: QubitRef(q), positive: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<Control>,
    pub target: QubitRef,
    pub condition: Condition,
}

impl Gate {
    pub fn single(kind: GateKind, target: usize) -> Self {
        Gate { kind, controls: Vec::new(), target: QubitRef(target), condition: Condition::always() }
    }

    pub fn controlled(kind: GateKind, control: usize, target: usize) -> Self {
        Gate { kind, controls: vec![Control::pos(control)], target: QubitRef(target), condition: Condition::always() }
    }

    pub fn with_condition(mut self, condition: Condition) -> Self {
        self.condition = condition;
        self
    }

    pub fn qubits(&self) -> impl Iterator<Item = QubitRef> + '_ {
        self.controls.iter().map(|c| c.qubit).chain(std::iter::once(self.target))
    }

    /// Controls preserve diagonality.
    pub fn is_diagonal(&self) -> bool {
        self.kind.is_diagonal()
    }

    pub fn is_bitflip(&self) -> bool {
        self.kind == GateKind::X && self.controls.is_empty()
    }

    fn approx_eq(&self, other: &Gate) -> bool {
        self.kind.approx_eq(&other.kind)
            && self.controls == other.controls
            && self.target == other.target
            && self.condition == other.condition
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Gate(Gate),
    Measure {
        qubit: QubitRef,
        bit: ClbitRef,
    },
    Reset {
        qubit: QubitRef,
    },
    /// `target ^= AND(product)`; an empty product negates `target`.
    Toggle {
        target: ClbitRef,
        product: Vec<Literal>,
    },
}

impl Instruction {
    pub fn gate(g: Gate) -> Self {
        Instruction::Gate(g)
    }

    pub fn measure(qubit: usize, bit: usize) -> Self {
        Instruction::Measure { qubit: QubitRef(qubit), bit: ClbitRef(bit) }
    }

    pub fn reset(qubit: usize) -> Self {
        Instruction::Reset { qubit: QubitRef(qubit) }
    }

    pub fn toggle(target: usize, product: impl IntoIterator<Item = Literal>) -> Self {
        Instruction::Toggle { target: ClbitRef(target), product: product.into_iter().collect() }
    }

    /// Qubits this instruction acts on, controls first.
    pub fn qubits(&self) -> impl Iterator<Item = QubitRef> + '_ {
        let (controls, last): (&[Control], Option<QubitRef>) = match self {
            Instruction::Gate(g) => (&g.controls, Some(g.target)),
            Instruction::Measure { qubit, .. } | Instruction::Reset { qubit } => (&[], Some(*qubit)),
            Instruction::Toggle { .. } => (&[], None),
        };
        controls.iter().map(|c| c.qubit).chain(last)
    }

    pub fn acts_on(&self, q: QubitRef) -> bool {
        match self {
            Instruction::Gate(g) => g.target == q || g.controls.iter().any(|c| c.qubit == q),
            Instruction::Measure { qubit, .. } | Instruction::Reset { qubit } => *qubit == q,
            Instruction::Toggle { .. } => false,
        }
    }

    /// Classical bits read by this instruction. A toggle reads its own target.
    pub fn bits_read(&self) -> impl Iterator<Item = ClbitRef> + '_ {
        let (own, literals): (Option<ClbitRef>, &[Literal]) = match self {
            Instruction::Gate(g) => (None, &g.condition.literals),
            Instruction::Toggle { target, product } => (Some(*target), product),
            _ => (None, &[]),
        };
        own.into_iter().chain(literals.iter().map(|l| l.bit))
    }

    pub fn bit_written(&self) -> Option<ClbitRef> {
        match self {
            Instruction::Measure { bit, .. } => Some(*bit),
            Instruction::Toggle { target, .. } => Some(*target),
            _ => None,
        }
    }

    pub fn as_gate(&self) -> Option<&Gate> {
        match self {
            Instruction::Gate(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_measure(&self) -> bool {
        matches!(self, Instruction::Measure { .. })
    }

    /// Structural equality with angle tolerance.
    pub fn approx_eq(&self, other: &Instruction) -> bool {
        match (self, other) {
            (Instruction::Gate(a), Instruction::Gate(b)) => a.approx_eq(b),
            _ => self == other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    pub name: String,
    pub n_qubits: usize,
    pub n_clbits: usize,
    pub instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(name: impl Into<String>, n_qubits: usize, n_clbits: usize) -> Self {
        Circuit { name: name.into(), n_qubits, n_clbits, instructions: Vec::new() }
    }

    pub fn push(&mut self, instr: Instruction) -> &mut Self {
        self.instructions.push(instr);
        self
    }

    pub fn gate(&mut self, kind: GateKind, target: usize) -> &mut Self {
        self.push(Instruction::Gate(Gate::single(kind, target)))
    }

    pub fn cgate(&mut self, kind: GateKind, control: usize, target: usize) -> &mut Self {
        self.push(Instruction::Gate(Gate::controlled(kind, control, target)))
    }

    pub fn measure(&mut self, qubit: usize, bit: usize) -> &mut Self {
        self.push(Instruction::measure(qubit, bit))
    }

    pub fn reset(&mut self, qubit: usize) -> &mut Self {
        self.push(Instruction::reset(qubit))
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    pub fn measure_count(&self) -> usize {
        self.instructions.iter().filter(|i| i.is_measure()).count()
    }

    pub fn reset_count(&self) -> usize {
        self.instructions.iter().filter(|i| matches!(i, Instruction::Reset { .. })).count()
    }

    /// Total number of quantum controls over all gates.
    pub fn quantum_control_count(&self) -> usize {
        self.instructions.iter().filter_map(Instruction::as_gate).map(|g| g.controls.len()).sum()
    }

    /// Structural equality with angle tolerance [`ANGLE_TOL`].
    pub fn approx_eq(&self, other: &Circuit) -> bool {
        self.name == other.name
            && self.n_qubits == other.n_qubits
            && self.n_clbits == other.n_clbits
            && self.instructions.len() == other.instructions.len()
            && self.instructions.iter().zip(&other.instructions).all(|(a, b)| a.approx_eq(b))
    }

    /// Returns every invariant violation; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }

    pub fn check(&self) -> Result<(), IrError> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(IrError::Invalid(violations))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "instruction {}: {}", self.position, self.message)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum IrError {
    #[error("invalid circuit: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("instruction position {0} out of range")]
    InvalidPosition(usize),
}

pub fn validate(circuit: &Circuit) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut defined = vec![false; circuit.n_clbits];
    let mut opaque: HashMap<&str, &Matrix2> = HashMap::new();
    let mut push = |position: usize, message: String| out.push(Violation { position, message });

    for (pos, instr) in circuit.instructions.iter().enumerate() {
        for q in instr.qubits() {
            if q.0 >= circuit.n_qubits {
                push(pos, format!("qubit out of range: {q} with {} declared", circuit.n_qubits));
            }
        }
        let check_bit = |b: ClbitRef, push: &mut dyn FnMut(usize, String), defined: &[bool]| {
            if b.0 >= circuit.n_clbits {
                push(pos, format!("clbit out of range: {b} with {} declared", circuit.n_clbits));
            } else if !defined[b.0] {
                push(pos, format!("clbit {b} read before it is assigned"));
            }
        };
        match instr {
            Instruction::Gate(g) => {
                if g.controls.len() > 1 {
                    push(pos, "at most one quantum control is supported".into());
                }
                if g.controls.iter().any(|c| c.qubit == g.target) {
                    push(pos, "control and target overlap".into());
                }
                let mut seen = Vec::new();
                for l in &g.condition.literals {
                    if seen.contains(&l.bit) {
                        push(pos, format!("clbit {} appears twice in condition", l.bit));
                    }
                    seen.push(l.bit);
                    check_bit(l.bit, &mut push, &defined);
                }
                if let Some(a) = g.kind.angle() {
                    if !a.is_finite() {
                        push(pos, "non-finite angle".into());
                    }
                }
                if let GateKind::Opaque { label, matrix, .. } = &g.kind {
                    match opaque.get(label.as_str()) {
                        Some(m) if !matrices_close(m, matrix) => {
                            push(pos, format!("opaque gate `{label}` redeclared with a different matrix"))
                        }
                        Some(_) => {}
                        None => {
                            opaque.insert(label, matrix);
                        }
                    }
                }
            }
            Instruction::Measure { bit, .. } => {
                if bit.0 >= circuit.n_clbits {
                    push(pos, format!("clbit out of range: {bit} with {} declared", circuit.n_clbits));
                } else {
                    defined[bit.0] = true;
                }
            }
            Instruction::Reset { .. } => {}
            Instruction::Toggle { target, product } => {
                check_bit(*target, &mut push, &defined);
                let mut seen = Vec::new();
                for l in product {
                    if l.bit == *target {
                        push(pos, format!("toggle target {target} appears in its own product"));
                    }
                    if seen.contains(&l.bit) {
                        push(pos, format!("clbit {} appears twice in toggle product", l.bit));
                    }
                    seen.push(l.bit);
                    check_bit(l.bit, &mut push, &defined);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_is_valid() {
        assert!(Circuit::new("empty", 0, 0).validate().is_empty());
    }

    #[test]
    fn condition_on_undeclared_bit() {
        let mut c = Circuit::new("bad", 2, 2);
        c.measure(0, 0).measure(1, 1);
        c.push(Instruction::Gate(Gate::single(GateKind::X, 1).with_condition(Condition::on([Literal::pos(3)]))));
        let v = c.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].message.contains("clbit out of range"), "{}", v[0]);
    }

    #[test]
    fn read_before_assignment() {
        let mut c = Circuit::new("bad", 2, 1);
        c.push(Instruction::Gate(Gate::single(GateKind::X, 1).with_condition(Condition::on([Literal::pos(0)]))));
        c.measure(0, 0);
        assert!(c.validate()[0].message.contains("before it is assigned"));
    }

    #[test]
    fn overlap_and_bounds() {
        let mut c = Circuit::new("bad", 2, 0);
        c.cgate(GateKind::X, 1, 1).gate(GateKind::H, 5);
        let v = c.validate();
        assert_eq!(v.len(), 2);
        assert!(v[0].message.contains("overlap"));
        assert!(v[1].message.contains("qubit out of range"));
    }

    #[test]
    fn toggle_rules() {
        let mut c = Circuit::new("t", 1, 2);
        c.measure(0, 0);
        c.push(Instruction::toggle(0, [Literal::pos(0)]));
        c.push(Instruction::toggle(0, [Literal::pos(1)]));
        let v = c.validate();
        assert_eq!(v.len(), 2);
        assert!(v[0].message.contains("own product"));
        assert!(v[1].message.contains("before it is assigned"));
    }

    #[test]
    fn conjoin_detects_contradiction() {
        let mut cond = Condition::on([Literal::pos(0)]);
        assert!(cond.conjoin(Literal::pos(0)));
        assert_eq!(cond.literals.len(), 1);
        assert!(!cond.conjoin(Literal::neg(0)));
        assert!(cond.conjoin(Literal::neg(1)));
        assert!(cond.eval(0b01));
        assert!(!cond.eval(0b11));
    }

    #[test]
    fn diagonality() {
        assert!(GateKind::Phase(0.3).is_diagonal());
        assert!(Gate::controlled(GateKind::Phase(0.3), 0, 1).is_diagonal());
        assert!(!GateKind::H.is_diagonal());
        assert!(!GateKind::Y.is_diagonal());
        assert!(GateKind::Rz(1.0).is_diagonal());
        assert!(!GateKind::Rz(1.0).is_phase_type());
    }
}
