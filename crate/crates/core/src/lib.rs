//! Qubit-count reduction for dynamic quantum circuits.
//!
//! Measurements are moved toward the start of the circuit, the quantum
//! interactions they make redundant are replaced by classical logic, and
//! qubits whose work is finished are reset and reused.
//!
//! ```
//! use qreuse::benchgen::gen_qft;
//! use qreuse::pipeline::{optimize, Mode};
//!
//! let (out, report) = optimize(&gen_qft(5).unwrap(), Mode::Proposed).unwrap();
//! assert_eq!(out.n_qubits, 1);
//! assert_eq!(report.n_original, 5);
//! ```

pub mod analysis;
pub mod benchgen;
pub mod cli;
pub mod commute;
pub mod ir;
pub mod pipeline;
pub mod qasm;
pub mod report;
pub mod reuse;
pub mod sim;
pub mod transform;
