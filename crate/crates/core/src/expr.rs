//! Algebra expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*  |  '0'
//! term   := [coeff '*'] factor ('*' factor)*
//! coeff  := INT ['/' INT]
//! factor := vertex | edge '[' INT ']' ['^*']
//! ```
//!
//! `alpha[2]^* * alpha[2]` and `alpha[2]^**alpha[2]` both parse; the second
//! is how elements are printed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::element::Element;
use crate::graph::{Name, WeightedGraph};
use crate::ring::Ring;
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} at column {column}")]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LBracket,
    RBracket,
    Dagger,
    Times,
    Plus,
    Minus,
    Slash,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("name {s}"),
        Tok::LBracket => "'['".into(),
        Tok::RBracket => "']'".into(),
        Tok::Dagger => "'^*'".into(),
        Tok::Times => "'*'".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Slash => "'/'".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '*' => Some(Tok::Times),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(t) = single {
            out.push((col, t));
            i += 1;
        } else if c == '^' {
            if chars.get(i + 1) != Some(&'*') {
                return Err(ExprError {
                    column: col,
                    message: "expected '*' after '^'".into(),
                });
            }
            out.push((col, Tok::Dagger));
            i += 2;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((col, Tok::Int(digits.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '_' | '.' | '\''))
            {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
        } else {
            return Err(ExprError {
                column: col,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push((chars.len() + 1, Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    graph: &'a WeightedGraph,
    ring: Ring,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn column(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<(), ExprError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(format!(
                "expected {}, found {}",
                describe(&t),
                describe(self.peek())
            ))
        }
    }

    fn expr(&mut self) -> Result<Element, ExprError> {
        let mut acc = Element::zero(self.ring);
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        loop {
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::End => return Ok(acc),
                other => return self.fail(format!("unexpected {}", describe(other))),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<Element, ExprError> {
        let coeff_col = self.column();
        let coeff = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut q = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let d = match self.bump() {
                        Tok::Int(d) if !d.is_zero() => d,
                        _ => {
                            return Err(ExprError {
                                column: coeff_col,
                                message: "expected a nonzero denominator".into(),
                            })
                        }
                    };
                    q /= BigRational::from_integer(d);
                }
                if q.is_zero() && matches!(self.peek(), Tok::End | Tok::Plus | Tok::Minus) {
                    return Ok(Element::zero(self.ring));
                }
                self.expect(Tok::Times)?;
                Some(q)
            }
            _ => None,
        };
        let mut letters = vec![self.factor()?];
        while *self.peek() == Tok::Times {
            self.bump();
            letters.push(self.factor()?);
        }
        let c = match coeff {
            Some(q) => self.ring.coerce(&q).map_err(|e| ExprError {
                column: coeff_col,
                message: e.to_string(),
            })?,
            None => self.ring.one(),
        };
        Ok(Element::monomial(self.ring, Word::new(letters), c))
    }

    fn factor(&mut self) -> Result<Letter, ExprError> {
        let col = self.column();
        let name = match self.bump() {
            Tok::Ident(s) => s,
            other => {
                return Err(ExprError {
                    column: col,
                    message: format!("expected a generator, found {}", describe(&other)),
                })
            }
        };
        let err = |message: String| ExprError {
            column: col,
            message,
        };
        match self.graph.lookup(&name) {
            None => Err(err(format!("unknown generator {name}"))),
            Some(Name::Vertex(v)) => {
                if *self.peek() == Tok::LBracket {
                    return Err(err(format!("vertex {name} takes no index")));
                }
                Ok(Letter::Vertex(v))
            }
            Some(Name::Edge(e)) => {
                if *self.peek() != Tok::LBracket {
                    return Err(err(format!("edge {name} needs an index")));
                }
                self.bump();
                let idx = match self.bump() {
                    Tok::Int(n) => n,
                    _ => return Err(err(format!("edge {name} needs an integer index"))),
                };
                self.expect(Tok::RBracket)?;
                let w = self.graph.weight(e);
                let i = u32::try_from(&idx).ok().filter(|i| (1..=w).contains(i));
                let Some(i) = i else {
                    let message = if idx.is_zero() {
                        format!("index 0 of {name} is below 1")
                    } else {
                        format!("index {idx} exceeds weight {w}")
                    };
                    return Err(err(message));
                };
                if *self.peek() == Tok::Dagger {
                    self.bump();
                    Ok(Letter::Star(e, i))
                } else {
                    Ok(Letter::Edge(e, i))
                }
            }
        }
    }
}

/// Parses an expression into an (unreduced) element of the free ring.
pub fn parse_expression(g: &WeightedGraph, ring: Ring, s: &str) -> Result<Element, ExprError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        graph: g,
        ring,
    };
    if *p.peek() == Tok::End {
        return p.fail("empty expression");
    }
    p.expr()
}

/// Parses a single word (no coefficients, no sums).
pub fn parse_word(g: &WeightedGraph, s: &str) -> Result<Word, ExprError> {
    let e = parse_expression(g, Ring::Integers, s)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((w, c)), None) if *c == Ring::Integers.one() => Ok(w.clone()),
        _ => Err(ExprError {
            column: 1,
            message: "expected a single word".into(),
        }),
    }
}
