//! Text format: a small OpenQASM 3 subset for dynamic circuits.
//!
//! ```text
//! OPENQASM 3.0;
//! include "stdgates.inc";
//! qubit[2] q;
//! bit[2] c;
//! h q[0];
//! c[0] = measure q[0];
//! if (c[0]) x q[1];
//! c[1] = c[1] ^ (c[0] & !c[1]);
//! reset q[0];
//! ```
//!
//! Gates: `h x y z s t p rx rz cx cz cp`, plus `ctrl @` / `negctrl @` on any
//! one-qubit gate. Toggles are written `c[k] = c[k] ^ <conj>;` or
//! `c[k] = !c[k];`. A gate outside the standard set must be declared as
//! `gate label(theta) t { }` preceded by a `// @unitary label` comment listing
//! its matrix as eight floats (row-major, real then imaginary).

mod emit;
mod parse;

use std::fmt;

use thiserror::Error;

pub use emit::emit;
pub use parse::{parse, parse_with_lines};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
    Unsupported,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Semantic => "semantic error",
            ParseErrorKind::Unsupported => "unsupported construct",
        })
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("{line}:{col}: {kind}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
}
