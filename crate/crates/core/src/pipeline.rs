//! End-to-end optimization: the proposed flow (commutation and
//! transformations, then reuse) and the reuse-only baseline.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::analysis::{depth, two_qubit_gate_count};
use crate::ir::{Circuit, IrError};
use crate::{reuse, transform};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Proposed,
    Baseline,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Proposed, Mode::Baseline];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Proposed => "proposed",
            Mode::Baseline => "baseline",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mode `{s}` (expected proposed or baseline)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PipelineConfig {
    /// Re-run transformations after reuse until neither stage changes the
    /// circuit.
    pub outer_fixpoint: bool,
}

/// Metrics before and after optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct PassReport {
    pub n_original: usize,
    pub n_reused: usize,
    pub d_original: usize,
    pub d_reused: usize,
    pub g2_original: usize,
    pub g2_reused: usize,
    pub rule_counts: BTreeMap<String, usize>,
    pub reuse_count: usize,
    pub wall_time: Duration,
}

pub fn optimize(circuit: &Circuit, mode: Mode) -> Result<(Circuit, PassReport), IrError> {
    optimize_with(circuit, mode, PipelineConfig::default())
}

pub fn optimize_with(circuit: &Circuit, mode: Mode, config: PipelineConfig) -> Result<(Circuit, PassReport), IrError> {
    circuit.check()?;
    let start = Instant::now();
    let mut counts = transform::TransformCounts::default();
    let mut reuse_count = 0;
    let out = match mode {
        Mode::Baseline => {
            let (c, n) = reuse::run(circuit);
            reuse_count = n;
            c
        }
        Mode::Proposed => {
            let mut current = circuit.clone();
            loop {
                let (c, round) = transform::run(&current);
                let (c, n) = reuse::run(&c);
                let changed = c != current;
                merge(&mut counts, &round);
                reuse_count += n;
                current = c;
                if !config.outer_fixpoint || !changed || n == 0 {
                    break;
                }
            }
            current
        }
    };
    let wall_time = start.elapsed();
    let rule_counts = if mode == Mode::Proposed { counts.as_map() } else { BTreeMap::new() };
    let report = PassReport {
        n_original: circuit.n_qubits,
        n_reused: out.n_qubits,
        d_original: depth(circuit),
        d_reused: depth(&out),
        g2_original: two_qubit_gate_count(circuit),
        g2_reused: two_qubit_gate_count(&out),
        rule_counts,
        reuse_count,
        wall_time,
    };
    Ok((out, report))
}

fn merge(total: &mut transform::TransformCounts, round: &transform::TransformCounts) {
    for (rule, n) in &round.commute {
        *total.commute.entry(*rule).or_default() += n;
    }
    total.dead_gates += round.dead_gates;
    total.classical_controls += round.classical_controls;
    total.exchanged_controls += round.exchanged_controls;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::GateKind;

    fn pair_a() -> Circuit {
        let mut c = Circuit::new("pair", 2, 2);
        c.gate(GateKind::H, 0).cgate(GateKind::X, 0, 1).measure(0, 0).measure(1, 1);
        c
    }

    #[test]
    fn pair_proposed_reaches_one_qubit() {
        let (out, rep) = optimize(&pair_a(), Mode::Proposed).unwrap();
        assert_eq!(out.n_qubits, 1);
        assert_eq!((rep.n_original, rep.n_reused, rep.reuse_count), (2, 1, 1));
        assert_eq!((rep.g2_original, rep.g2_reused), (1, 0));
        assert_eq!(rep.rule_counts["bit_flip"], 1);
        assert!(crate::sim::equivalent(&pair_a(), &out, 1e-9).unwrap().equivalent);
    }

    #[test]
    fn pair_baseline_keeps_two() {
        let (out, rep) = optimize(&pair_a(), Mode::Baseline).unwrap();
        assert_eq!(out, pair_a());
        assert_eq!(rep.reuse_count, 0);
        assert!(rep.rule_counts.is_empty());
    }

    #[test]
    fn empty_circuit() {
        let c = Circuit::new("e", 0, 0);
        for mode in Mode::ALL {
            let (out, rep) = optimize(&c, mode).unwrap();
            assert_eq!(out, c);
            assert_eq!(rep.n_reused, 0);
        }
    }

    #[test]
    fn invalid_input_rejected() {
        let mut c = Circuit::new("bad", 1, 1);
        c.measure(3, 0);
        assert!(matches!(optimize(&c, Mode::Proposed), Err(IrError::Invalid(_))));
    }

    #[test]
    fn mode_parse() {
        assert_eq!("baseline".parse::<Mode>(), Ok(Mode::Baseline));
        assert!("fast".parse::<Mode>().is_err());
    }
}
