//! Text syntax for affine elements.
//!
//! `t[c1,...,cn]` is a translation in simple-coroot coordinates, `r(p,i)` the
//! reflection in positive root `p` (1-based) with offset `i`, `e` the
//! identity. Factors are joined by `*` and composed as maps, so the rightmost
//! factor acts first. Error positions are 0-based character offsets.

use crate::affine::{AffineElement, AffineGroup, AffineReflection, ReflectionWord};
use crate::error::{Error, Result};
use crate::length::spherical_factorization;
use crate::roots::LatticeVector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Identity,
    Translation(LatticeVector),
    Reflection(AffineReflection),
}

/// A parsed product, each factor tagged with its start offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr(pub Vec<(usize, Factor)>);

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(format!("expected '{c}', found '{d}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return self.err("expected an integer");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.integer()?);
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return self.err("expected ',' or ']'"),
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut lx = Lexer::new(src);
    let mut factors = Vec::new();
    loop {
        let start = {
            lx.skip_ws();
            lx.pos
        };
        let factor = match lx.peek() {
            Some('e') => {
                lx.pos += 1;
                Factor::Identity
            }
            Some('t') => {
                lx.pos += 1;
                Factor::Translation(LatticeVector(lx.int_list()?))
            }
            Some('r') => {
                lx.pos += 1;
                lx.expect('(')?;
                let p_pos = {
                    lx.skip_ws();
                    lx.pos
                };
                let p = lx.integer()?;
                if p < 1 {
                    lx.pos = p_pos;
                    return lx.err("root index is 1-based");
                }
                lx.expect(',')?;
                let i = lx.integer()?;
                lx.expect(')')?;
                Factor::Reflection(AffineReflection::new((p - 1) as usize, i))
            }
            Some(c) => return lx.err(format!("unexpected '{c}'")),
            None => return lx.err("expected a factor"),
        };
        factors.push((start, factor));
        if lx.at_end() {
            return Ok(Expr(factors));
        }
        lx.expect('*')?;
    }
}

/// Parses a bare lattice vector such as `[2,2,1,1]`.
pub fn parse_lattice(src: &str) -> Result<LatticeVector> {
    let mut lx = Lexer::new(src);
    let v = lx.int_list()?;
    if !lx.at_end() {
        return lx.err("trailing input");
    }
    Ok(LatticeVector(v))
}

impl Expr {
    pub fn evaluate(&self, g: &AffineGroup) -> Result<AffineElement> {
        let mut acc = g.identity();
        for (pos, f) in &self.0 {
            let at = |e: Error| Error::Parse {
                position: *pos,
                message: e.to_string(),
            };
            let x = match f {
                Factor::Identity => g.identity(),
                Factor::Translation(lam) => {
                    if lam.len() != g.rank() {
                        return Err(at(Error::DimensionMismatch {
                            expected: g.rank(),
                            found: lam.len(),
                        }));
                    }
                    g.translation(lam)
                }
                Factor::Reflection(r) => g.reflection(r).map_err(at)?,
            };
            acc = g.compose(&acc, &x);
        }
        Ok(acc)
    }

    /// The factors as a reflection word, if there are no translations.
    pub fn as_word(&self) -> Option<ReflectionWord> {
        let mut out = Vec::new();
        for (_, f) in &self.0 {
            match f {
                Factor::Identity => {}
                Factor::Reflection(r) => out.push(*r),
                Factor::Translation(_) => return None,
            }
        }
        Some(ReflectionWord(out))
    }
}

pub fn parse_element(g: &AffineGroup, src: &str) -> Result<AffineElement> {
    parse_expr(src)?.evaluate(g)
}

/// Normal form text `t[λ]*r(..)*...`, with the spherical part written as a
/// minimal product of linear reflections.
pub fn format_element(g: &AffineGroup, w: &AffineElement) -> String {
    let mut parts = Vec::new();
    if !w.translation().is_zero() {
        parts.push(format!("t{}", w.translation()));
    }
    let w0 = g.project(w);
    let word = spherical_factorization(g, &w0).expect("projection is spherical");
    parts.extend(word.0.iter().map(ToString::to_string));
    if parts.is_empty() {
        "e".to_string()
    } else {
        parts.join("*")
    }
}
