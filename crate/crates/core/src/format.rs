//! Text format for structure constants.
//!
//! ```text
//! # Heisenberg algebra on a lattice basis
//! dim 3
//! name heisenberg_lattice(1)
//! [1,2] = 2*e3
//! ```
//!
//! Indices are 1-based, each bracket line needs `i < j`, coefficients are
//! integers or fractions `p/q`, and omitted pairs are zero. `#` starts a
//! comment.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::ParseError;
use crate::exactlin::{Int, Rat};
use crate::liealg::StructureConstants;

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Cursor over one line; columns are 1-based character positions.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(err(self.line, self.column(), format!("expected `{c}`, found `{d}`"))),
            None => Err(err(
                self.line,
                self.column(),
                format!("expected `{c}`, found end of line"),
            )),
        }
    }

    fn unsigned(&mut self) -> Result<(Int, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.peek().map_or("end of line".to_owned(), |c| format!("`{c}`"));
            return Err(err(self.line, start + 1, format!("expected a number, found {found}")));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok((digits.parse::<Int>().expect("ascii digits"), start + 1))
    }

    fn index(&mut self, dim: usize) -> Result<(usize, usize), ParseError> {
        let (v, col) = self.unsigned()?;
        let k: usize = v
            .try_into()
            .map_err(|_| err(self.line, col, format!("index out of range 1..={dim}")))?;
        if k == 0 || k > dim {
            return Err(err(self.line, col, format!("index {k} out of range 1..={dim}")));
        }
        Ok((k, col))
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn rest(&mut self) -> String {
        self.skip_ws();
        let s: String = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        s.trim_end().to_owned()
    }
}

/// `<coeff>*e<k>` or `e<k>`, without its sign.
fn term(cur: &mut Cursor, dim: usize) -> Result<(Rat, usize), ParseError> {
    cur.skip_ws();
    let coeff = if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
        let (num, _) = cur.unsigned()?;
        cur.skip_ws();
        let value = if cur.peek() == Some('/') {
            cur.pos += 1;
            let (den, col) = cur.unsigned()?;
            if den.is_zero() {
                return Err(err(cur.line, col, "zero denominator"));
            }
            Rat::new(num, den)
        } else {
            Rat::from_integer(num)
        };
        cur.skip_ws();
        if cur.peek() != Some('*') {
            if cur.at_end() && value.is_zero() {
                return Ok((value, 0));
            }
            return Err(err(
                cur.line,
                cur.column(),
                "expected `*` between coefficient and basis vector",
            ));
        }
        cur.pos += 1;
        value
    } else {
        Rat::one()
    };
    cur.skip_ws();
    if cur.peek() != Some('e') {
        return Err(err(cur.line, cur.column(), "expected a basis vector `e<k>`"));
    }
    cur.pos += 1;
    let (k, _) = cur.index(dim)?;
    Ok((coeff, k))
}

/// `c*e<k> (+|- c*e<k>)*` up to the end of the line, or `0`.
fn combination(cur: &mut Cursor, dim: usize) -> Result<Vec<Rat>, ParseError> {
    let mut v = vec![Rat::zero(); dim];
    let mut first = true;
    loop {
        cur.skip_ws();
        let mut negative = false;
        match cur.peek() {
            Some('+') if !first => cur.pos += 1,
            Some('-') => {
                negative = true;
                cur.pos += 1;
            }
            None if first => {
                return Err(err(
                    cur.line,
                    cur.column(),
                    "expected a combination of basis vectors `e<k>`",
                ))
            }
            None => break,
            Some(c) if !first => return Err(err(cur.line, cur.column(), format!("expected `+` or `-`, found `{c}`"))),
            _ => {}
        }
        let (c, k) = term(cur, dim)?;
        if k > 0 {
            let c = if negative { -c } else { c };
            v[k - 1] += c;
        }
        first = false;
        if cur.at_end() {
            break;
        }
    }
    Ok(v)
}

/// Zero-based pair, value, and the column of `i` for duplicate errors.
type BracketEntry = ((usize, usize), Vec<Rat>, usize);

fn bracket_line(cur: &mut Cursor, dim: usize) -> Result<BracketEntry, ParseError> {
    cur.expect('[')?;
    let (i, col) = cur.index(dim)?;
    cur.expect(',')?;
    let (j, _) = cur.index(dim)?;
    cur.expect(']')?;
    if i >= j {
        return Err(err(cur.line, col, format!("expected i < j, found [{i},{j}]")));
    }
    cur.expect('=')?;
    let v = combination(cur, dim)?;
    Ok(((i - 1, j - 1), v, col))
}

/// Parses a vector written as `c*e<k> + ...` (the right-hand side of a
/// bracket line) or as comma-separated coordinates `1,0,-1/2`.
pub fn parse_vector(text: &str, dim: usize) -> Result<Vec<Rat>, ParseError> {
    let mut cur = Cursor::new(text, 1);
    if !text.contains('e') {
        let mut out = Vec::new();
        for (idx, part) in text.split(',').enumerate() {
            let column = text.split(',').take(idx).map(|p| p.chars().count() + 1).sum::<usize>() + 1;
            let value: Rat = part
                .trim()
                .parse()
                .map_err(|_| err(1, column, format!("`{}` is not a rational number", part.trim())))?;
            out.push(value);
        }
        if out.len() != dim {
            return Err(err(1, 1, format!("expected {dim} coordinates, found {}", out.len())));
        }
        return Ok(out);
    }
    combination(&mut cur, dim)
}

/// `2*e1 - 1/2*e3` form of a vector; `0` for the zero vector.
pub fn render_vector(v: &[Rat]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out.push_str(&coefficient_term(c, k + 1, out.is_empty()));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses the text format. Jacobi and nilpotency are left to validation.
pub fn parse_algebra(text: &str) -> Result<StructureConstants, ParseError> {
    let mut dim: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut table: BTreeMap<(usize, usize), Vec<Rat>> = BTreeMap::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::new(content, line);
        if cur.at_end() {
            continue;
        }
        if cur.peek() == Some('[') {
            let Some(n) = dim else {
                return Err(err(line, cur.column(), "bracket before the `dim` header"));
            };
            let (pair, v, col) = bracket_line(&mut cur, n)?;
            if table.contains_key(&pair) {
                return Err(err(
                    line,
                    col,
                    format!("[e{},e{}] is given twice", pair.0 + 1, pair.1 + 1),
                ));
            }
            table.insert(pair, v);
            continue;
        }
        let column = cur.column();
        match cur.word().as_str() {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line, column, "duplicate `dim` header"));
                }
                let (v, col) = cur.unsigned()?;
                let n: usize = v.try_into().map_err(|_| err(line, col, "dimension too large"))?;
                if !cur.at_end() {
                    return Err(err(line, cur.column(), "unexpected text after the dimension"));
                }
                dim = Some(n);
            }
            "name" => {
                if dim.is_none() {
                    return Err(err(line, column, "`name` before the `dim` header"));
                }
                let rest = cur.rest();
                if rest.is_empty() {
                    return Err(err(line, cur.column(), "expected a name"));
                }
                name = Some(rest);
            }
            "" => {
                let c = cur.peek().unwrap_or(' ');
                return Err(err(line, column, format!("unexpected `{c}`")));
            }
            other => return Err(err(line, column, format!("unknown directive `{other}`"))),
        }
    }
    let Some(n) = dim else {
        return Err(err(last_line.max(1), 1, "missing `dim` header"));
    };
    let sc = StructureConstants::new(n, table).expect("pairs and lengths checked while parsing");
    Ok(match name {
        Some(s) => sc.with_name(s),
        None => sc,
    })
}

fn coefficient_term(c: &Rat, k: usize, first: bool) -> String {
    let sign = if c.is_negative() { "-" } else { "+" };
    let a = c.abs();
    let body = if a.is_one() {
        format!("e{k}")
    } else {
        format!("{a}*e{k}")
    };
    match (first, sign) {
        (true, "+") => body,
        (true, _) => format!("-{body}"),
        (false, s) => format!(" {s} {body}"),
    }
}

/// Text form accepted by [`parse_algebra`].
pub fn emit(sc: &StructureConstants) -> String {
    let mut out = format!("dim {}\n", sc.dim());
    if let Some(name) = sc.name() {
        out.push_str(&format!("name {name}\n"));
    }
    for (&(i, j), v) in sc.table() {
        out.push_str(&format!("[{},{}] = {}\n", i + 1, j + 1, render_vector(v)));
    }
    out
}
