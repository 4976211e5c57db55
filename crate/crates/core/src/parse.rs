//! Text forms of rings and elements.
//!
//! Ring specs (whitespace-insensitive):
//!
//! ```text
//! spec := atom ( "x" atom )*
//! atom := "Z" int | "GF" int | "M" int "(" "GF" int ")"
//!       | "chain(" q "," m ")" | "GR(" p "," k "," r ")" | "triv(" q "," m ")"
//!       | "table:" path
//! ```
//!
//! A table path runs to the next whitespace or the end of the input.
//!
//! Element literals: decimal residues for `Z n`; coefficient lists
//! `c0,c1,...` for fields, polynomial quotients and trivial extensions
//! (nested composite entries are parenthesized); `[[a,b],[c,d]]` for
//! matrices; `(x1,x2,...)` for products; `#i` for any ring.

use std::sync::Arc;

use thiserror::Error;

use crate::finfield::FieldDescriptor;
use crate::ring::{Construction, ElementForm, Ring, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("invalid ring: {0}")]
    Validation(#[from] RingError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("bad element literal {literal:?}: {message}")]
    Element { literal: String, message: String },
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected {token:?}"))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let digits: String = self.text[self.pos..]
            .chars()
            .take_while(char::is_ascii_digit)
            .collect();
        if digits.is_empty() {
            return self.error("expected an integer");
        }
        let value = digits
            .parse::<u64>()
            .or_else(|_| self.error("integer too large"))?;
        self.pos += digits.len();
        Ok(value)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }
}

fn small(value: u64, what: &str) -> Result<usize, ParseError> {
    usize::try_from(value)
        .ok()
        .filter(|&v| v <= 64)
        .ok_or_else(|| {
            ParseError::Validation(RingError::BadParameter(format!(
                "{what} {value} is too large"
            )))
        })
}

fn atom(cur: &mut Cursor<'_>) -> Result<Arc<Ring>, ParseError> {
    cur.skip_ws();
    let start = cur.pos;
    if cur.eat("table:") {
        cur.skip_ws();
        let path: String = cur.text[cur.pos..]
            .chars()
            .take_while(|c| !c.is_whitespace())
            .collect();
        if path.is_empty() {
            return cur.error("expected a path after table:");
        }
        cur.pos += path.len();
        let json = std::fs::read_to_string(&path).map_err(|e| ParseError::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
        return Ok(Ring::table_from_json(&json, Some(path))?);
    }
    if cur.eat("chain(") {
        let q = cur.int()?;
        cur.expect(",")?;
        let m = cur.int()?;
        cur.expect(")")?;
        return Ok(Ring::chain(q, small(m, "chain length")?)?);
    }
    if cur.eat("GR(") {
        let p = cur.int()?;
        cur.expect(",")?;
        let k = cur.int()?;
        cur.expect(",")?;
        let r = cur.int()?;
        cur.expect(")")?;
        return Ok(Ring::galois(
            p,
            small(k, "exponent")? as u32,
            small(r, "degree")?,
        )?);
    }
    if cur.eat("triv(") {
        let q = cur.int()?;
        cur.expect(",")?;
        let m = cur.int()?;
        cur.expect(")")?;
        let field = FieldDescriptor::of_order(q).map_err(RingError::from)?;
        return Ok(Ring::trivial_extension(field, small(m, "rank")?)?);
    }
    if cur.eat("GF") {
        let q = cur.int()?;
        return Ok(Ring::field_of_order(q)?);
    }
    if cur.eat("M") {
        let k = cur.int()?;
        cur.expect("(")?;
        cur.expect("GF")?;
        let q = cur.int()?;
        cur.expect(")")?;
        let field = FieldDescriptor::of_order(q).map_err(RingError::from)?;
        return Ok(Ring::matrix(small(k, "matrix dimension")?, field)?);
    }
    if cur.eat("Z") {
        return Ok(Ring::zmod(cur.int()?)?);
    }
    cur.pos = start;
    cur.error("expected one of Z, GF, M, chain(, GR(, triv(, table:")
}

/// Parses a ring spec into a validated ring.
pub fn parse_ring(text: &str) -> Result<Arc<Ring>, ParseError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut factors = vec![atom(&mut cur)?];
    while cur.eat("x") {
        factors.push(atom(&mut cur)?);
    }
    if !cur.at_end() {
        return cur.error("unexpected trailing input");
    }
    if factors.len() == 1 {
        Ok(factors.pop().unwrap())
    } else {
        Ok(Ring::product(factors)?)
    }
}

/// Splits at commas outside parentheses and brackets.
fn split_top(text: &str) -> Vec<&str> {
    let (mut depth, mut start, mut parts) = (0i32, 0usize, Vec::new());
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(text[start..].trim());
    parts
}

/// Removes one pair of enclosing delimiters if they match each other.
fn strip_enclosing(text: &str, open: char, close: char) -> Option<&str> {
    let text = text.trim();
    if !text.starts_with(open) || !text.ends_with(close) {
        return None;
    }
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 && i != text.len() - close.len_utf8() {
                return None;
            }
        }
    }
    Some(&text[open.len_utf8()..text.len() - close.len_utf8()])
}

fn strip_parens(text: &str) -> &str {
    let mut t = text.trim();
    while let Some(inner) = strip_enclosing(t, '(', ')') {
        t = inner.trim();
    }
    t
}

fn element_error<T>(literal: &str, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Element {
        literal: literal.to_string(),
        message: message.into(),
    })
}

fn int_literal(text: &str) -> Result<i128, ParseError> {
    text.trim()
        .parse::<i128>()
        .or_else(|_| element_error(text, "expected an integer"))
}

fn field_literal(field: &FieldDescriptor, text: &str) -> Result<usize, ParseError> {
    let body = strip_parens(text);
    if let Some(i) = body.strip_prefix('#') {
        let i = int_literal(i)?;
        return if (0..field.order() as i128).contains(&i) {
            Ok(i as usize)
        } else {
            element_error(text, "field index out of range")
        };
    }
    let parts = split_top(body);
    if parts.len() > field.degree() {
        return element_error(text, format!("at most {} coefficients", field.degree()));
    }
    let p = field.characteristic() as i128;
    let coeffs = parts
        .iter()
        .map(|s| int_literal(s).map(|c| c.rem_euclid(p) as u64))
        .collect::<Result<Vec<_>, _>>()?;
    let element = field.element(&coeffs).map_err(RingError::from)?;
    Ok(element.index())
}

/// Parses an element literal of `ring` and returns its canonical index.
pub fn parse_element(ring: &Ring, text: &str) -> Result<usize, ParseError> {
    let trimmed = text.trim();
    if let Some(i) = trimmed.strip_prefix('#') {
        let i = int_literal(i)?;
        return if (0..ring.size() as i128).contains(&i) {
            Ok(i as usize)
        } else {
            element_error(
                text,
                format!("index out of range for a ring of order {}", ring.size()),
            )
        };
    }
    match ring.construction() {
        Construction::ZMod(n) => {
            Ok(int_literal(strip_parens(trimmed))?.rem_euclid(*n as i128) as usize)
        }
        Construction::Field(f) => field_literal(f, trimmed),
        Construction::Matrix { dim, field } => {
            let Some(body) = strip_enclosing(trimmed, '[', ']') else {
                return element_error(text, "expected [[..],..]");
            };
            let rows = split_top(body)
                .into_iter()
                .map(|row| {
                    let Some(inner) = strip_enclosing(row, '[', ']') else {
                        return element_error(row, "expected a bracketed row");
                    };
                    split_top(inner)
                        .into_iter()
                        .map(|e| field_literal(field, e).map(|i| field.element_at(i)))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                return element_error(text, format!("expected a {dim}x{dim} matrix"));
            }
            Ok(ring.encode(&ElementForm::Matrix(rows))?)
        }
        Construction::PolyQuotient { base, modulus } => {
            let parts = split_top(strip_parens(trimmed));
            if parts.len() > modulus.len() - 1 {
                return element_error(text, format!("at most {} coefficients", modulus.len() - 1));
            }
            let coeffs = parts
                .into_iter()
                .map(|c| parse_element(base, c).map(|i| base.decode(i)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ring.encode(&ElementForm::Poly(coeffs))?)
        }
        Construction::TrivialExtension { field, rank } => {
            let parts = split_top(strip_parens(trimmed));
            if parts.len() > rank + 1 {
                return element_error(text, format!("at most {} coordinates", rank + 1));
            }
            let mut coords = parts
                .into_iter()
                .map(|c| field_literal(field, c))
                .collect::<Result<Vec<_>, _>>()?;
            coords.resize(rank + 1, 0);
            let form = ElementForm::Pair(
                field.element_at(coords[0]),
                coords[1..].iter().map(|&i| field.element_at(i)).collect(),
            );
            Ok(ring.encode(&form)?)
        }
        Construction::Product(factors) => {
            let Some(body) = strip_enclosing(trimmed, '(', ')') else {
                return element_error(text, "expected a parenthesized tuple");
            };
            let parts = split_top(body);
            if parts.len() != factors.len() {
                return element_error(text, format!("expected {} components", factors.len()));
            }
            let indices = factors
                .iter()
                .zip(parts)
                .map(|(f, c)| parse_element(f, c))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ring.product_join(&indices).unwrap())
        }
        Construction::Table(t) => {
            let i = int_literal(strip_parens(trimmed))?;
            if (0..t.size() as i128).contains(&i) {
                Ok(i as usize)
            } else {
                element_error(text, "table index out of range")
            }
        }
        Construction::Quotient(q) => Ok(q.coset_of(parse_element(q.parent(), trimmed)?)),
    }
}
