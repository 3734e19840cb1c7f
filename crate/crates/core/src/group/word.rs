use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::Context;

use super::Mat2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    V,
    A1,
    A2,
    Q,
    Neg,
}

impl Gen {
    pub fn name(self) -> &'static str {
        match self {
            Gen::V => "V",
            Gen::A1 => "A1",
            Gen::A2 => "A2",
            Gen::Q => "Q",
            Gen::Neg => "NEG",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub gen: Gen,
    pub exp: i64,
}

/// A product of generator powers, read left to right as a matrix product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    pub tokens: Vec<Token>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    /// Appends `gen^exp`, merging with a trailing token of the same generator.
    pub fn push(&mut self, gen: Gen, exp: i64) {
        if exp == 0 {
            return;
        }
        if gen == Gen::Neg {
            if let Some(last) = self.tokens.last() {
                if last.gen == Gen::Neg {
                    self.tokens.pop();
                    return;
                }
            }
            if exp % 2 != 0 {
                self.tokens.push(Token { gen, exp: 1 });
            }
            return;
        }
        if let Some(last) = self.tokens.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp == 0 {
                    self.tokens.pop();
                }
                return;
            }
        }
        self.tokens.push(Token { gen, exp });
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self
            .tokens
            .iter()
            .map(|t| {
                if t.exp == 1 {
                    t.gen.name().to_string()
                } else {
                    format!("{}^{}", t.gen.name(), t.exp)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses whitespace- or `*`-separated tokens such as `Q^3 A1^-2 V NEG`.
    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*') {
            if tok.is_empty() || tok == "I" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let gen = match name {
                "V" => Gen::V,
                "A1" => Gen::A1,
                "A2" => Gen::A2,
                "Q" => Gen::Q,
                "NEG" | "-I" => Gen::Neg,
                _ => return Err(Error::InvalidInput(format!("unknown generator `{name}`"))),
            };
            w.push(gen, exp);
        }
        Ok(w)
    }
}

impl Context {
    pub fn gen_matrix(&self, gen: Gen) -> Mat2 {
        let g = self.generators();
        match gen {
            Gen::V => g.v,
            Gen::A1 => g.a1,
            Gen::A2 => g.a2,
            Gen::Q => g.q,
            Gen::Neg => self.identity().neg(),
        }
    }

    pub fn eval_word(&self, w: &Word) -> Mat2 {
        let mut acc = self.identity();
        for t in &w.tokens {
            let m = match t.gen {
                Gen::A1 => self.a1_pow(t.exp),
                Gen::Neg if t.exp % 2 == 0 => continue,
                Gen::Neg => {
                    acc = acc.neg();
                    continue;
                }
                g => self.mat_pow(&self.gen_matrix(g), t.exp),
            };
            acc = self.mat_mul(&acc, &m);
        }
        acc
    }
}
