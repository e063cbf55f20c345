//! The textual value grammar used in documents and certificates.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] digits)?
//! atom  := digits ['.' digits] | identifier | '(' expr ')'
//! ```
//!
//! Division is only defined by monomials, and negative powers only of
//! monomials, so every parsed value stays a Laurent polynomial.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::bases::{parse_decimal, BaseTable};
use super::{NumError, Real};

const MAX_INPUT: usize = 4096;
const MAX_DEPTH: usize = 32;
const MAX_EXPONENT: u32 = 256;
const MAX_COMPLEXITY: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, NumError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_digit() || b[i] == b'.') {
                i += 1;
            }
            out.push(Tok::Num(s[start..i].to_string()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(s[start..i].to_string()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(NumError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    table: Option<&'a Arc<BaseTable>>,
    depth: usize,
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Real, NumError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(NumError::Parse("expression nested too deeply".into()));
        }
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Real, NumError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            let (a, b) = (acc.complexity(), rhs.complexity());
            // monomial sizes add under multiplication; polynomials multiply out
            let cost = if acc.as_monomial().is_some() && rhs.as_monomial().is_some() {
                a + b
            } else {
                a.saturating_mul(b)
            };
            if cost > MAX_COMPLEXITY * 64 {
                return Err(NumError::Parse("product too large".into()));
            }
            acc = if op == '*' { &acc * &rhs } else { acc.checked_div(&rhs)? };
            check_exponents(&acc)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Real, NumError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            self.depth += 1;
            if self.depth > MAX_DEPTH {
                return Err(NumError::Parse("expression nested too deeply".into()));
            }
            let v = self.unary()?;
            self.depth -= 1;
            return Ok(-v);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Real, NumError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = self.peek_op() == Some('-');
        if neg {
            self.pos += 1;
        }
        let e: u32 = match self.toks.get(self.pos) {
            Some(Tok::Num(d)) if d.chars().all(|c| c.is_ascii_digit()) => d
                .parse()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| NumError::Parse(format!("exponent `{d}` out of range")))?,
            _ => return Err(NumError::Parse("expected an integer exponent".into())),
        };
        self.pos += 1;
        if base.complexity().saturating_mul(u64::from(e)) > MAX_COMPLEXITY
            || (base.as_monomial().is_none() && e > 16)
        {
            return Err(NumError::Parse("power too large".into()));
        }
        let v = if neg { base.recip()?.pow(e) } else { base.pow(e) };
        check_exponents(&v)?;
        Ok(v)
    }

    fn atom(&mut self) -> Result<Real, NumError> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(d)) => {
                if d.contains('.') {
                    Ok(Real::Rat(parse_decimal(&d)?.0))
                } else {
                    let v: BigInt = d
                        .parse()
                        .map_err(|_| NumError::Parse(format!("invalid number `{d}`")))?;
                    Ok(Real::Rat(BigRational::from_integer(v)))
                }
            }
            Some(Tok::Ident(name)) => {
                let table = self
                    .table
                    .ok_or_else(|| NumError::Parse(format!("undeclared base `{name}`")))?;
                let idx = table
                    .index_of(&name)
                    .ok_or_else(|| NumError::Parse(format!("undeclared base `{name}`")))?;
                Ok(Real::base(table, idx))
            }
            Some(Tok::Op('(')) => {
                let v = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(NumError::Parse("expected `)`".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(t) => Err(NumError::Parse(format!("unexpected token {t:?}"))),
            None => Err(NumError::Parse("unexpected end of expression".into())),
        }
    }
}

/// Keeps every exponent of a parsed value printable as a literal exponent.
fn check_exponents(v: &Real) -> Result<(), NumError> {
    if let Real::Sym(p) = v {
        let max = p.terms().iter().flat_map(|(m, _)| m.iter()).map(|e| e.unsigned_abs()).max();
        if max.unwrap_or(0) > MAX_EXPONENT {
            return Err(NumError::Parse(format!("exponents above {MAX_EXPONENT} are not supported")));
        }
    }
    Ok(())
}

/// Parses a value; identifiers must be bases declared in `table`.
pub fn parse_real(s: &str, table: Option<&Arc<BaseTable>>) -> Result<Real, NumError> {
    if s.len() > MAX_INPUT {
        return Err(NumError::Parse("expression too long".into()));
    }
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(NumError::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        table,
        depth: 0,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(NumError::Parse("trailing input".into()));
    }
    Ok(v)
}
