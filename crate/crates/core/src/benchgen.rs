//! Benchmark circuit families: phase estimation, Fourier transform,
//! hardware-efficient variational ansatz and seeded random circuits.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ir::{Circuit, GateKind};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("{family} needs at least {min} qubits, got {n}")]
    TooSmall { family: &'static str, min: usize, n: usize },
    #[error("expected {expected} angles, got {got}")]
    AngleCount { expected: usize, got: usize },
    #[error("unknown entanglement strategy `{0}`")]
    UnknownStrategy(String),
}

fn require(family: &'static str, n: usize, min: usize) -> Result<(), GenError> {
    if n < min {
        Err(GenError::TooSmall { family, min, n })
    } else {
        Ok(())
    }
}

/// Phase estimation of `P(theta)` with `n - 1` counting qubits.
///
/// Qubit `n - 1` holds the eigenstate `|1⟩`; counting qubit `k` drives
/// `CP(theta * 2^k)` and is measured into `c[k]`. The inverse transform has
/// no swaps, so `c[k]` is binary digit `k + 1` of `theta / 2π`.
pub fn gen_qpe(n: usize, theta: f64) -> Result<Circuit, GenError> {
    require("qpe", n, 2)?;
    Ok(qpe(n, theta, false))
}

/// [`gen_qpe`] with the eigenstate qubit also measured into `c[n - 1]`.
pub fn gen_qpe_measured_eigen(n: usize, theta: f64) -> Result<Circuit, GenError> {
    require("qpe", n, 2)?;
    Ok(qpe(n, theta, true))
}

fn qpe(n: usize, theta: f64, measure_eigen: bool) -> Circuit {
    let m = n - 1;
    let e = m;
    let mut c = Circuit::new(format!("qpe_{n}"), n, if measure_eigen { n } else { m });
    c.gate(GateKind::X, e);
    for k in 0..m {
        c.gate(GateKind::H, k);
    }
    for k in (0..m).rev() {
        c.cgate(GateKind::Phase(theta * (1u64 << k.min(62)) as f64), k, e);
    }
    for j in (0..m).rev() {
        for l in j + 1..m {
            c.cgate(GateKind::Phase(-PI / (1u64 << (l - j).min(62)) as f64), l, j);
        }
        c.gate(GateKind::H, j);
    }
    for k in 0..m {
        c.measure(k, k);
    }
    if measure_eigen {
        c.measure(e, e);
    }
    c
}

/// Quantum Fourier transform on `n` qubits without the final swaps,
/// followed by measurement of every qubit.
pub fn gen_qft(n: usize) -> Result<Circuit, GenError> {
    require("qft", n, 1)?;
    let mut c = Circuit::new(format!("qft_{n}"), n, n);
    for i in 0..n {
        c.gate(GateKind::H, i);
        for j in i + 1..n {
            c.cgate(GateKind::Phase(PI / (1u64 << (j - i).min(62)) as f64), j, i);
        }
    }
    for q in 0..n {
        c.measure(q, q);
    }
    Ok(c)
}

/// Two-qubit entangling pattern of the variational ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntanglementStrategy {
    Circular,
    Pairwise,
    Linear,
    ReverseLinear,
    Full,
}

impl EntanglementStrategy {
    pub const ALL: [EntanglementStrategy; 5] = [
        EntanglementStrategy::Circular,
        EntanglementStrategy::Pairwise,
        EntanglementStrategy::Linear,
        EntanglementStrategy::ReverseLinear,
        EntanglementStrategy::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EntanglementStrategy::Circular => "circular",
            EntanglementStrategy::Pairwise => "pairwise",
            EntanglementStrategy::Linear => "linear",
            EntanglementStrategy::ReverseLinear => "reverse_linear",
            EntanglementStrategy::Full => "full",
        }
    }

    /// `(control, target)` pairs in application order.
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        let linear: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        match self {
            EntanglementStrategy::Linear => linear,
            EntanglementStrategy::ReverseLinear => linear.into_iter().rev().collect(),
            EntanglementStrategy::Circular => {
                let mut v = if n > 2 { vec![(n - 1, 0)] } else { Vec::new() };
                v.extend(linear);
                v
            }
            EntanglementStrategy::Pairwise => {
                let even = linear.iter().copied().filter(|(i, _)| i % 2 == 0);
                let odd = linear.iter().copied().filter(|(i, _)| i % 2 == 1);
                even.chain(odd).collect()
            }
            EntanglementStrategy::Full => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        }
    }
}

impl fmt::Display for EntanglementStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EntanglementStrategy {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.to_ascii_lowercase().replace('-', "_");
        EntanglementStrategy::ALL
            .into_iter()
            .find(|st| st.name() == norm)
            .ok_or_else(|| GenError::UnknownStrategy(s.to_string()))
    }
}

/// Number of rotation angles [`gen_vqe`] expects.
pub fn vqe_angle_count(n: usize, reps: usize) -> usize {
    n * reps
}

/// Hardware-efficient ansatz: `reps` blocks of an `RX` layer followed by a
/// `CX` entangling layer, then measurement of all qubits. There is no
/// trailing rotation layer.
pub fn gen_vqe(n: usize, strategy: EntanglementStrategy, angles: &[f64], reps: usize) -> Result<Circuit, GenError> {
    require("vqe", n, 2)?;
    let expected = vqe_angle_count(n, reps);
    if angles.len() != expected {
        return Err(GenError::AngleCount { expected, got: angles.len() });
    }
    let mut c = Circuit::new(format!("vqe_{}_{n}", strategy.name()), n, n);
    let mut next = angles.iter().copied();
    for _ in 0..reps {
        for q in 0..n {
            c.gate(GateKind::Rx(next.next().expect("counted")), q);
        }
        for (ctl, tgt) in strategy.pairs(n) {
            c.cgate(GateKind::X, ctl, tgt);
        }
    }
    for q in 0..n {
        c.measure(q, q);
    }
    Ok(c)
}

/// Deterministic angles for [`gen_vqe`] drawn from `seed`.
pub fn vqe_angles(n: usize, reps: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..vqe_angle_count(n, reps)).map(|_| rng.gen_range(0.0..2.0 * PI)).collect()
}

/// Parameters of [`gen_random`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    /// Gate layers before the final measurement layer.
    pub depth: usize,
    pub seed: u64,
    /// Chance that a qubit starts a two-qubit gate with a free partner.
    pub two_qubit_prob: f64,
}

impl RandomSpec {
    pub fn new(n: usize, depth: usize, seed: u64) -> Self {
        RandomSpec { n, depth, seed, two_qubit_prob: 0.5 }
    }
}

/// Layered random circuit over `{h, x, z, p}` and `{cx, cz, cp}`.
///
/// Each layer visits the qubits in a shuffled order; an unpaired qubit pairs
/// with the next unpaired one with probability `two_qubit_prob`, otherwise it
/// gets a one-qubit gate. Every qubit is touched once per layer, then all
/// qubits are measured, so the depth is `spec.depth + 1`.
pub fn gen_random(spec: RandomSpec) -> Result<Circuit, GenError> {
    require("random", spec.n, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let mut c = Circuit::new(format!("random_{n}_{}_{}", spec.depth, spec.seed), n, n);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..spec.depth {
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let mut i = 0;
        while i < n {
            let a = order[i];
            if i + 1 < n && rng.gen_bool(spec.two_qubit_prob) {
                let b = order[i + 1];
                match rng.gen_range(0..3) {
                    0 => c.cgate(GateKind::X, a, b),
                    1 => c.cgate(GateKind::Z, a, b),
                    _ => c.cgate(GateKind::Phase(random_angle(&mut rng)), a, b),
                };
                i += 2;
            } else {
                match rng.gen_range(0..4) {
                    0 => c.gate(GateKind::H, a),
                    1 => c.gate(GateKind::X, a),
                    2 => c.gate(GateKind::Z, a),
                    _ => c.gate(GateKind::Phase(random_angle(&mut rng)), a),
                };
                i += 1;
            }
        }
    }
    for q in 0..n {
        c.measure(q, q);
    }
    Ok(c)
}

fn random_angle(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-PI..PI)
}
