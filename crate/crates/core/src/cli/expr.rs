//! Index expressions such as `R_{iklm} + R_{ilmk} - 1/2*R_{0312}` and their
//! canonical form under the curvature symmetries.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr  := '0' | ['+'|'-'] term (('+'|'-') term)*
//! term  := [coeff '*'] name '_' '{' idx idx idx idx '}'
//! coeff := int ['/' int]
//! name  := alpha alnum*
//! idx   := 'i' | 'k' | 'l' | 'm' | '0' | '1' | '2' | '3'
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::symcore::{IndexQuad, RiemannComponents, TensorIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown index '{ch}' at position {pos}")]
    UnknownIndexLetter { pos: usize, ch: char },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational64,
    pub name: String,
    pub quad: IndexQuad,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexExpression {
    pub terms: Vec<Term>,
}

impl IndexExpression {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `sum coeff * R(quad)`, every symbol read from the same tensor.
    pub fn evaluate(&self, r: &RiemannComponents) -> f64 {
        self.terms
            .iter()
            .map(|t| (*t.coeff.numer() as f64 / *t.coeff.denom() as f64) * r.get(t.quad))
            .sum()
    }

    /// Terms sorted by `(name, quad, coeff)` for multiset comparison.
    pub fn sorted_terms(&self) -> Vec<Term> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| (&a.name, a.quad, a.coeff).cmp(&(&b.name, b.quad, b.coeff)));
        t
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self {
            terms: self.terms.iter().chain(&other.terms).cloned().collect(),
        }
    }
}

impl fmt::Display for IndexExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let mag = t.coeff.abs();
            match (k == 0, t.coeff.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{}_{{{}}}", t.name, t.quad)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.char_indices().collect(),
            at: 0,
            src,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|(_, c)| c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |&(p, _)| p)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: char) -> Result<(), ExprError> {
        match self.peek() {
            Some(c) if c == want => {
                self.at += 1;
                Ok(())
            }
            Some(c) => self.err(format!("expected '{want}', found '{c}'")),
            None => self.err(format!("expected '{want}', found end of input")),
        }
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.at += 1;
        }
        let digits: String = self.chars[start..self.at].iter().map(|&(_, c)| c).collect();
        digits.parse().or_else(|_| {
            self.at = start;
            self.err("expected an integer")
        })
    }

    fn coefficient(&mut self) -> Result<Rational64, ExprError> {
        let num = self.integer()?;
        if self.peek() == Some('/') {
            self.at += 1;
            let den = self.integer()?;
            if den == 0 {
                return self.err("zero denominator");
            }
            Ok(Rational64::new(num, den))
        } else {
            Ok(Rational64::from_integer(num))
        }
    }

    fn name(&mut self) -> Result<String, ExprError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return self.err(format!("expected a tensor name, found '{c}'")),
            None => return self.err("expected a tensor name, found end of input"),
        }
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|(_, c)| c.is_ascii_alphanumeric()) {
            self.at += 1;
        }
        Ok(self.chars[start..self.at].iter().map(|&(_, c)| c).collect())
    }

    fn index(&mut self) -> Result<usize, ExprError> {
        let pos = self.pos();
        match self.bump() {
            Some(c) if c.is_ascii_digit() => {
                let v = c.to_digit(10).unwrap() as usize;
                TensorIndex::new(v, 4)
                    .map(TensorIndex::value)
                    .ok_or(ExprError::UnknownIndexLetter { pos, ch: c })
            }
            Some(c) if c.is_alphabetic() => TensorIndex::from_letter(c)
                .map(TensorIndex::value)
                .ok_or(ExprError::UnknownIndexLetter { pos, ch: c }),
            Some('}') => {
                self.at -= 1;
                self.err("expected four indices")
            }
            Some(c) => Err(ExprError::Syntax {
                pos,
                message: format!("expected an index, found '{c}'"),
            }),
            None => self.err("expected an index, found end of input"),
        }
    }

    fn term(&mut self, sign: i64) -> Result<Term, ExprError> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let c = self.coefficient()?;
            self.expect('*')?;
            c
        } else {
            Rational64::one()
        };
        let name = self.name()?;
        self.expect('_')?;
        self.expect('{')?;
        let mut quad = [0; 4];
        for q in &mut quad {
            *q = self.index()?;
        }
        self.expect('}')?;
        Ok(Term {
            coeff: coeff * sign,
            name,
            quad: IndexQuad(quad),
        })
    }

    fn expression(&mut self) -> Result<IndexExpression, ExprError> {
        if self.peek().is_none() {
            return self.err("empty expression");
        }
        if self.peek() == Some('0') {
            let save = self.at;
            self.at += 1;
            if self.peek().is_none() {
                return Ok(IndexExpression::default());
            }
            self.at = save;
        }
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some('-') => {
                self.at += 1;
                -1
            }
            Some('+') => {
                self.at += 1;
                1
            }
            _ => 1,
        };
        loop {
            terms.push(self.term(sign)?);
            match self.bump() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(c) => {
                    self.at -= 1;
                    return self.err(format!("expected '+' or '-', found '{c}'"));
                }
            }
        }
        Ok(IndexExpression { terms })
    }
}

pub fn parse_expression(text: &str) -> Result<IndexExpression, ExprError> {
    Parser::new(text).expression()
}

/// Sign-tracked orbit of a quad under pair antisymmetry and block exchange.
fn orbit(q: IndexQuad) -> [(IndexQuad, i64); 8] {
    let base = [
        (q, 1),
        (q.swap_first(), -1),
        (q.swap_second(), -1),
        (q.swap_first().swap_second(), 1),
    ];
    let mut out = [(q, 1); 8];
    for (k, &(x, s)) in base.iter().enumerate() {
        out[k] = (x, s);
        out[k + 4] = (x.swap_blocks(), s);
    }
    out
}

/// Lexicographically smallest orbit member and the sign relating it to `q`.
pub fn canonical_quad(q: IndexQuad) -> (IndexQuad, i64) {
    orbit(q).into_iter().min_by_key(|&(x, _)| x).unwrap()
}

/// For a canonical quad `(a, d, b, c)` with `a<b<c<d`, the replacement
/// `-R_abcd + R_acbd` from the cyclic identity.
fn bianchi_rewrite(q: IndexQuad) -> Option<[(IndexQuad, i64); 2]> {
    let [a, d, b, c] = q.0;
    (a < b && b < c && c < d).then_some([(IndexQuad([a, b, c, d]), -1), (IndexQuad([a, c, b, d]), 1)])
}

/// Canonical quads, combined like terms, zero terms dropped. With
/// `assume_bianchi`, the dependent quad of each distinct-index orbit is
/// eliminated through the cyclic identity.
pub fn canonicalize_expression(e: &IndexExpression, assume_bianchi: bool) -> IndexExpression {
    let mut acc: BTreeMap<(String, IndexQuad), Rational64> = BTreeMap::new();
    for t in &e.terms {
        if t.quad.is_degenerate() || t.coeff.is_zero() {
            continue;
        }
        let (q, s) = canonical_quad(t.quad);
        let parts = match bianchi_rewrite(q).filter(|_| assume_bianchi) {
            Some(rw) => rw.to_vec(),
            None => vec![(q, 1)],
        };
        for (x, s2) in parts {
            *acc.entry((t.name.clone(), x)).or_default() += t.coeff * (s * s2);
        }
    }
    IndexExpression {
        terms: acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((name, quad), coeff)| Term { coeff, name, quad })
            .collect(),
    }
}
