use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ParseError, ParseErrorKind};
use crate::ir::{Circuit, ClbitRef, Condition, Control, Gate, GateKind, Instruction, Literal, Matrix2, QubitRef};

pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    parse_with_lines(text).map(|(c, _)| c)
}

/// Like [`parse`], also returning the 1-based source line of every
/// instruction.
pub fn parse_with_lines(text: &str) -> Result<(Circuit, Vec<usize>), ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        circuit: Circuit::default(),
        lines: Vec::new(),
        qregs: HashMap::new(),
        cregs: HashMap::new(),
        unitaries: directives(text)?,
        opaque: HashMap::new(),
    };
    p.circuit.name = circuit_name(text);
    p.program()?;
    let Parser { circuit, lines, .. } = p;
    if let Some(v) = circuit.validate().into_iter().next() {
        let line = lines.get(v.position).copied().unwrap_or(1);
        return Err(ParseError { kind: ParseErrorKind::Semantic, line, col: 1, message: v.message });
    }
    Ok((circuit, lines))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Str(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(kind: ParseErrorKind, line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError { kind, line, col, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            let (line, col) = (li + 1, i + 1);
            if ch.is_whitespace() {
                i += 1;
            } else if ch == '/' && chars.get(i + 1) == Some(&'/') {
                break;
            } else if ch == '/' && chars.get(i + 1) == Some(&'*') {
                return Err(err(ParseErrorKind::Unsupported, line, col, "block comments"));
            } else if ch.is_alphabetic() || ch == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, col });
            } else if ch.is_ascii_digit() || (ch == '.' && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit())) {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                    let mut j = i + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        i = j;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                tokens.push(Token { tok: Tok::Num(chars[start..i].iter().collect()), line, col });
            } else if ch == '"' {
                let start = i + 1;
                i += 1;
                while i < chars.len() && chars[i] != '"' {
                    i += 1;
                }
                if i == chars.len() {
                    return Err(err(ParseErrorKind::Syntax, line, col, "unterminated string"));
                }
                tokens.push(Token { tok: Tok::Str(chars[start..i].iter().collect()), line, col });
                i += 1;
            } else if ";:[](),=^&!@*/+-{}<>%|~".contains(ch) {
                tokens.push(Token { tok: Tok::Sym(ch), line, col });
                i += 1;
            } else {
                return Err(err(ParseErrorKind::Syntax, line, col, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(tokens)
}

fn circuit_name(text: &str) -> String {
    text.lines().find_map(|l| l.trim().strip_prefix("// name:").map(|n| n.trim().to_string())).unwrap_or_default()
}

/// `// @unitary label m00re m00im m01re m01im m10re m10im m11re m11im`
fn directives(text: &str) -> Result<HashMap<String, Matrix2>, ParseError> {
    let mut out = HashMap::new();
    for (li, l) in text.lines().enumerate() {
        let Some(rest) = l.trim().strip_prefix("// @unitary") else { continue };
        let mut words = rest.split_whitespace();
        let bad = || err(ParseErrorKind::Syntax, li + 1, 1, "malformed @unitary annotation");
        let label = words.next().ok_or_else(bad)?.to_string();
        let nums: Vec<f64> = words.map(|w| w.parse::<f64>().map_err(|_| bad())).collect::<Result<_, _>>()?;
        if nums.len() != 8 {
            return Err(bad());
        }
        let z = |k: usize| Complex64::new(nums[2 * k], nums[2 * k + 1]);
        out.insert(label, [[z(0), z(1)], [z(2), z(3)]]);
    }
    Ok(out)
}

struct Register {
    offset: usize,
    size: usize,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    circuit: Circuit,
    lines: Vec<usize>,
    qregs: HashMap<String, Register>,
    cregs: HashMap<String, Register>,
    unitaries: HashMap<String, Matrix2>,
    /// Declared opaque gates: label -> matrix.
    opaque: HashMap<String, Matrix2>,
}

const KEYWORDS_UNSUPPORTED: &[&str] = &[
    "for", "while", "def", "defcal", "cal", "box", "barrier", "delay", "let", "const", "input", "output", "int",
    "uint", "float", "angle", "bool", "complex", "duration", "stretch", "else", "return", "break", "continue",
    "switch", "extern", "qreg", "creg", "gphase", "inv", "pow",
];

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        match self.peek().or_else(|| self.tokens.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn error(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        err(kind, line, col, message)
    }

    fn next(&mut self) -> Result<Token, ParseError> {
        let t = self.peek().cloned().ok_or_else(|| self.error(ParseErrorKind::Syntax, "unexpected end of input"))?;
        self.pos += 1;
        Ok(t)
    }

    fn is_sym(&self, ch: char) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Sym(c), .. }) if *c == ch)
    }

    fn eat_sym(&mut self, ch: char) -> bool {
        if self.is_sym(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, ch: char) -> Result<(), ParseError> {
        if self.eat_sym(ch) {
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::Syntax, format!("expected `{ch}`")))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.next()? {
            Token { tok: Tok::Ident(s), .. } => Ok(s),
            t => Err(err(ParseErrorKind::Syntax, t.line, t.col, "expected identifier")),
        }
    }

    fn is_ident(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == word)
    }

    fn integer(&mut self) -> Result<usize, ParseError> {
        match self.next()? {
            Token { tok: Tok::Num(s), line, col } => {
                s.parse().map_err(|_| err(ParseErrorKind::Syntax, line, col, "expected integer"))
            }
            t => Err(err(ParseErrorKind::Syntax, t.line, t.col, "expected integer")),
        }
    }

    fn program(&mut self) -> Result<(), ParseError> {
        if self.is_ident("OPENQASM") {
            self.pos += 1;
            let t = self.next()?;
            match &t.tok {
                Tok::Num(v) if v == "3" || v == "3.0" => {}
                _ => return Err(err(ParseErrorKind::Unsupported, t.line, t.col, "only OPENQASM 3 is supported")),
            }
            self.expect_sym(';')?;
        }
        while self.peek().is_some() {
            self.statement()?;
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let start = self.peek().cloned().expect("checked by caller");
        let line = start.line;
        let word = match &start.tok {
            Tok::Ident(w) => w.clone(),
            _ => return Err(self.error(ParseErrorKind::Syntax, "expected statement")),
        };
        match word.as_str() {
            "include" => {
                self.pos += 1;
                match self.next()? {
                    Token { tok: Tok::Str(s), .. } if s == "stdgates.inc" => {}
                    t => {
                        return Err(err(
                            ParseErrorKind::Unsupported,
                            t.line,
                            t.col,
                            "only stdgates.inc may be included",
                        ))
                    }
                }
                self.expect_sym(';')
            }
            "qubit" | "bit" => self.declaration(word == "qubit"),
            "gate" => self.gate_declaration(),
            "reset" => {
                self.pos += 1;
                let q = self.qubit_ref()?;
                self.expect_sym(';')?;
                self.push(Instruction::Reset { qubit: q }, line);
                Ok(())
            }
            "if" => {
                self.pos += 1;
                self.expect_sym('(')?;
                // Duplicate or contradictory literals are left for validation.
                let literals = self.conjunction()?;
                self.expect_sym(')')?;
                let mut g = self.gate_call()?;
                g.condition = Condition { literals };
                self.push(Instruction::Gate(g), line);
                Ok(())
            }
            "measure" => Err(self.error(ParseErrorKind::Unsupported, "measurement without assignment")),
            w if KEYWORDS_UNSUPPORTED.contains(&w) => {
                Err(self.error(ParseErrorKind::Unsupported, format!("`{w}` is outside the supported subset")))
            }
            _ => {
                if self.is_bit_ref_ahead() {
                    self.assignment(line)
                } else {
                    let g = self.gate_call()?;
                    self.push(Instruction::Gate(g), line);
                    Ok(())
                }
            }
        }
    }

    fn push(&mut self, instr: Instruction, line: usize) {
        self.circuit.instructions.push(instr);
        self.lines.push(line);
    }

    fn is_bit_ref_ahead(&self) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if self.cregs.contains_key(s))
    }

    fn declaration(&mut self, quantum: bool) -> Result<(), ParseError> {
        self.pos += 1;
        let size = if self.eat_sym('[') {
            let n = self.integer()?;
            self.expect_sym(']')?;
            n
        } else {
            1
        };
        let (line, col) = self.here();
        let name = self.ident()?;
        self.expect_sym(';')?;
        if self.qregs.contains_key(&name) || self.cregs.contains_key(&name) {
            return Err(err(ParseErrorKind::Semantic, line, col, format!("`{name}` is already declared")));
        }
        let (regs, count) = if quantum {
            (&mut self.qregs, &mut self.circuit.n_qubits)
        } else {
            (&mut self.cregs, &mut self.circuit.n_clbits)
        };
        regs.insert(name, Register { offset: *count, size });
        *count += size;
        Ok(())
    }

    /// `gate label(theta) t { }`, backed by a `@unitary` annotation.
    fn gate_declaration(&mut self) -> Result<(), ParseError> {
        self.pos += 1;
        let (line, col) = self.here();
        let label = self.ident()?;
        self.expect_sym('(')?;
        self.ident()?;
        self.expect_sym(')')?;
        while !self.is_sym('{') {
            self.ident()?;
            self.eat_sym(',');
        }
        self.expect_sym('{')?;
        if !self.eat_sym('}') {
            return Err(self.error(ParseErrorKind::Unsupported, "gate bodies are not supported"));
        }
        if builtin(&label).is_some() {
            return Err(err(ParseErrorKind::Semantic, line, col, format!("`{label}` redeclares a standard gate")));
        }
        let matrix = self.unitaries.get(&label).copied().ok_or_else(|| {
            err(ParseErrorKind::Unsupported, line, col, format!("opaque gate `{label}` has no @unitary annotation"))
        })?;
        self.opaque.insert(label, matrix);
        Ok(())
    }

    fn register_index(&mut self, quantum: bool) -> Result<usize, ParseError> {
        let (line, col) = self.here();
        let name = self.ident()?;
        let regs = if quantum { &self.qregs } else { &self.cregs };
        let Some(reg) = regs.get(&name) else {
            let what = if quantum { "qubit" } else { "bit" };
            return Err(err(ParseErrorKind::Semantic, line, col, format!("undeclared {what} register `{name}`")));
        };
        let (offset, size) = (reg.offset, reg.size);
        let idx = if self.eat_sym('[') {
            let (l, c) = self.here();
            let i = self.integer()?;
            self.expect_sym(']')?;
            if i >= size {
                return Err(err(
                    ParseErrorKind::Semantic,
                    l,
                    c,
                    format!("index {i} out of range for `{name}[{size}]`"),
                ));
            }
            i
        } else if size == 1 {
            0
        } else {
            return Err(err(ParseErrorKind::Unsupported, line, col, "whole-register operands"));
        };
        Ok(offset + idx)
    }

    fn qubit_ref(&mut self) -> Result<QubitRef, ParseError> {
        self.register_index(true).map(QubitRef)
    }

    fn bit_ref(&mut self) -> Result<ClbitRef, ParseError> {
        self.register_index(false).map(ClbitRef)
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let positive = !self.eat_sym('!');
        Ok(Literal { bit: self.bit_ref()?, positive })
    }

    fn conjunction(&mut self) -> Result<Vec<Literal>, ParseError> {
        let mut lits = vec![self.literal()?];
        while self.eat_sym('&') {
            lits.push(self.literal()?);
        }
        Ok(lits)
    }

    /// `c[i] = measure q[j];`, `c[k] = c[k] ^ <conj>;` or `c[k] = !c[k];`
    fn assignment(&mut self, line: usize) -> Result<(), ParseError> {
        let target = self.bit_ref()?;
        self.expect_sym('=')?;
        if self.is_ident("measure") {
            self.pos += 1;
            let qubit = self.qubit_ref()?;
            self.expect_sym(';')?;
            self.push(Instruction::Measure { qubit, bit: target }, line);
            return Ok(());
        }
        let (l, c) = self.here();
        let same = |b: ClbitRef| {
            if b == target {
                Ok(())
            } else {
                Err(err(ParseErrorKind::Unsupported, l, c, "only in-place updates `c[k] = c[k] ^ ...` are supported"))
            }
        };
        if self.eat_sym('!') {
            let b = self.bit_ref()?;
            same(b)?;
            self.expect_sym(';')?;
            self.push(Instruction::Toggle { target, product: Vec::new() }, line);
            return Ok(());
        }
        let b = self.bit_ref()?;
        same(b)?;
        self.expect_sym('^')?;
        let product = if self.eat_sym('(') {
            let lits = self.conjunction()?;
            self.expect_sym(')')?;
            lits
        } else {
            self.conjunction()?
        };
        self.expect_sym(';')?;
        self.push(Instruction::Toggle { target, product }, line);
        Ok(())
    }

    fn gate_call(&mut self) -> Result<Gate, ParseError> {
        let mut modifier: Option<bool> = None;
        if self.is_ident("ctrl") || self.is_ident("negctrl") {
            modifier = Some(self.is_ident("ctrl"));
            self.pos += 1;
            if self.is_sym('(') {
                return Err(self.error(ParseErrorKind::Unsupported, "counted control modifiers"));
            }
            self.expect_sym('@')?;
        }
        let (line, col) = self.here();
        let name = self.ident()?;
        if KEYWORDS_UNSUPPORTED.contains(&name.as_str()) {
            return Err(err(
                ParseErrorKind::Unsupported,
                line,
                col,
                format!("`{name}` is outside the supported subset"),
            ));
        }
        let mut params = Vec::new();
        if self.eat_sym('(') && !self.eat_sym(')') {
            loop {
                params.push(self.expr()?);
                if self.eat_sym(')') {
                    break;
                }
                self.expect_sym(',')?;
            }
        }
        let mut qubits = vec![self.qubit_ref()?];
        while self.eat_sym(',') {
            qubits.push(self.qubit_ref()?);
        }
        self.expect_sym(';')?;

        let (kind, n_params, n_ctrl) = if let Some(spec) = builtin(&name) {
            spec
        } else if let Some(matrix) = self.opaque.get(&name) {
            (Shape::Opaque(matrix), 1, 0)
        } else {
            return Err(err(ParseErrorKind::Semantic, line, col, format!("unknown gate `{name}`")));
        };
        if params.len() != n_params {
            return Err(err(
                ParseErrorKind::Semantic,
                line,
                col,
                format!("`{name}` takes {n_params} parameter(s), got {}", params.len()),
            ));
        }
        let n_ctrl = n_ctrl + usize::from(modifier.is_some());
        if modifier.is_some() && n_ctrl > 1 {
            return Err(err(ParseErrorKind::Unsupported, line, col, "more than one quantum control"));
        }
        if qubits.len() != n_ctrl + 1 {
            return Err(err(
                ParseErrorKind::Semantic,
                line,
                col,
                format!("`{name}` acts on {} qubit(s), got {}", n_ctrl + 1, qubits.len()),
            ));
        }
        let kind = match kind {
            Shape::Fixed(k) => k,
            Shape::Angle(f) => f(params[0]),
            Shape::Opaque(m) => GateKind::Opaque { label: name.clone(), theta: params[0], matrix: *m },
        };
        let target = *qubits.last().expect("non-empty");
        let controls = qubits[..qubits.len() - 1]
            .iter()
            .map(|&q| Control { qubit: q, positive: modifier.unwrap_or(true) })
            .collect();
        Ok(Gate { kind, controls, target, condition: Condition::always() })
    }

    fn expr(&mut self) -> Result<f64, ParseError> {
        let mut v = self.term()?;
        loop {
            if self.eat_sym('+') {
                v += self.term()?;
            } else if self.eat_sym('-') {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<f64, ParseError> {
        let mut v = self.unary()?;
        loop {
            if self.eat_sym('*') {
                v *= self.unary()?;
            } else if self.eat_sym('/') {
                v /= self.unary()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn unary(&mut self) -> Result<f64, ParseError> {
        if self.eat_sym('-') {
            return Ok(-self.unary()?);
        }
        if self.eat_sym('+') {
            return self.unary();
        }
        if self.eat_sym('(') {
            let v = self.expr()?;
            self.expect_sym(')')?;
            return Ok(v);
        }
        let t = self.next()?;
        match &t.tok {
            Tok::Num(s) => {
                s.parse::<f64>().map_err(|_| err(ParseErrorKind::Syntax, t.line, t.col, format!("bad number `{s}`")))
            }
            Tok::Ident(s) if s == "pi" || s == "π" => Ok(PI),
            Tok::Ident(s) if s == "tau" || s == "τ" => Ok(2.0 * PI),
            _ => Err(err(ParseErrorKind::Syntax, t.line, t.col, "expected expression")),
        }
    }
}

enum Shape<'a> {
    Fixed(GateKind),
    Angle(fn(f64) -> GateKind),
    Opaque(&'a Matrix2),
}

/// `(kind, parameter count, built-in control count)` of a standard gate.
fn builtin(name: &str) -> Option<(Shape<'static>, usize, usize)> {
    Some(match name {
        "h" => (Shape::Fixed(GateKind::H), 0, 0),
        "x" => (Shape::Fixed(GateKind::X), 0, 0),
        "y" => (Shape::Fixed(GateKind::Y), 0, 0),
        "z" => (Shape::Fixed(GateKind::Z), 0, 0),
        "s" => (Shape::Fixed(GateKind::S), 0, 0),
        "t" => (Shape::Fixed(GateKind::T), 0, 0),
        "p" | "phase" => (Shape::Angle(GateKind::Phase), 1, 0),
        "rx" => (Shape::Angle(GateKind::Rx), 1, 0),
        "rz" => (Shape::Angle(GateKind::Rz), 1, 0),
        "cx" | "CX" => (Shape::Fixed(GateKind::X), 0, 1),
        "cz" => (Shape::Fixed(GateKind::Z), 0, 1),
        "cp" | "cphase" => (Shape::Angle(GateKind::Phase), 1, 1),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::emit;

    #[test]
    fn pair_a() {
        let c =
            parse("qubit[2] q; bit[2] c; h q[0]; cx q[0], q[1]; c[0] = measure q[0]; c[1] = measure q[1];").unwrap();
        let mut want = Circuit::new("", 2, 2);
        want.gate(GateKind::H, 0).cgate(GateKind::X, 0, 1).measure(0, 0).measure(1, 1);
        assert_eq!(c, want);
    }

    #[test]
    fn empty_program() {
        assert_eq!(parse("OPENQASM 3.0;\nqubit[0] q;\nbit[0] c;\n").unwrap(), Circuit::default());
        assert_eq!(parse("").unwrap(), Circuit::default());
    }

    #[test]
    fn conditioned_gate() {
        let c = parse("qubit[2] q; bit[1] c; c[0] = measure q[0]; if (c[0]) x q[1];").unwrap();
        assert_eq!(
            c.instructions[1],
            Instruction::Gate(Gate::single(GateKind::X, 1).with_condition(Condition::on([Literal::pos(0)])))
        );
    }

    #[test]
    fn angle_expressions() {
        let c = parse("qubit[2] q; p(-pi/4) q[0]; rx(2*(pi - 1)) q[1]; cp(1.5e-1) q[0], q[1];").unwrap();
        assert_eq!(c.instructions[0].as_gate().unwrap().kind, GateKind::Phase(-PI / 4.0));
        assert_eq!(c.instructions[1].as_gate().unwrap().kind, GateKind::Rx(2.0 * (PI - 1.0)));
        assert_eq!(c.instructions[2].as_gate().unwrap().kind, GateKind::Phase(0.15));
    }

    #[test]
    fn multiple_registers() {
        let c = parse("qubit[2] a; qubit b; bit[1] m; bit[2] n; cx a[1], b; n[1] = measure b;").unwrap();
        assert_eq!((c.n_qubits, c.n_clbits), (3, 3));
        assert_eq!(c.instructions[1], Instruction::measure(2, 2));
    }

    #[test]
    fn errors_carry_location() {
        let e = parse("qubit[2] q;\nh r[0];").unwrap_err();
        assert_eq!((e.kind, e.line, e.col), (ParseErrorKind::Semantic, 2, 3));
        let e = parse("qubit[2] q;\ncx q[0];").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Semantic);
        let e = parse("qubit[2] q;\nh q[0]").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Syntax);
        let e = parse("qubit[2] q;\nfor i in [0:1] { h q[0]; }").unwrap_err();
        assert_eq!((e.kind, e.line), (ParseErrorKind::Unsupported, 2));
        let e = parse("qubit[1] q;\ngate u(theta) t { }\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unsupported);
        let e = parse("qubit[1] q; bit[1] c;\nif (c[0]) x q[0];").unwrap_err();
        assert_eq!((e.kind, e.line), (ParseErrorKind::Semantic, 2));
        let e = parse("qubit[1] q; h q[4];").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Semantic);
        let e = parse("OPENQASM 2.0;").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unsupported);
    }

    #[test]
    fn opaque_round_trip() {
        let o = Complex64::new(1.0, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let m = [[o, z], [z, Complex64::new(0.0, 1.0)]];
        let mut c = Circuit::new("opq", 2, 1);
        c.cgate(GateKind::Opaque { label: "u".into(), theta: 0.25, matrix: m }, 0, 1);
        c.measure(1, 0);
        let text = emit(&c);
        assert!(text.contains("// @unitary u"), "{text}");
        assert_eq!(parse(&text).unwrap(), c);
    }

    #[test]
    fn source_lines() {
        let (_, lines) = parse_with_lines("qubit[1] q;\nbit[1] c;\n\nh q[0];\nc[0] = measure q[0];").unwrap();
        assert_eq!(lines, vec![4, 5]);
    }

    #[test]
    fn toggles() {
        let c = parse(
            "qubit[1] q; bit[3] c; c[0] = measure q[0]; c[1] = measure q[0];\
                       c[2] = measure q[0]; c[2] = !c[2]; c[2] = c[2] ^ c[0]; c[2] = c[2] ^ (c[0] & !c[1]);",
        )
        .unwrap();
        assert_eq!(c.instructions[3], Instruction::toggle(2, []));
        assert_eq!(c.instructions[4], Instruction::toggle(2, [Literal::pos(0)]));
        assert_eq!(c.instructions[5], Instruction::toggle(2, [Literal::pos(0), Literal::neg(1)]));
        let e = parse("qubit[1] q; bit[2] c; c[0] = measure q[0]; c[1] = c[0] ^ c[0];").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Unsupported);
    }
}
