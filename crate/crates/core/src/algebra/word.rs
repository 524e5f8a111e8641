use std::fmt;

use crate::algebra::FiniteGroup;
use crate::error::{Error, Result};

/// Generator of the rank-two free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sym {
    X,
    Y,
}

/// A word in the free group on `x, y`, stored as syllables `(symbol, exponent)`
/// with nonzero exponents and no two adjacent syllables on the same symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<(Sym, i32)>);

impl FreeWord {
    pub fn new(syllables: impl IntoIterator<Item = (Sym, i32)>) -> Self {
        let mut out: Vec<(Sym, i32)> = Vec::new();
        for (s, e) in syllables {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((t, f)) if *t == s => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((s, e)),
            }
        }
        FreeWord(out)
    }

    pub fn syllables(&self) -> &[(Sym, i32)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses words such as `y^-1`, `y x y`, `x^-1 y^-1 x`, `y^2 x`; `1` is
    /// the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut syllables = Vec::new();
        for (index, token) in text.split_whitespace().enumerate() {
            if token == "1" {
                continue;
            }
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i32 = e
                        .parse()
                        .map_err(|_| Error::parse(index, token, "bad exponent"))?;
                    (b, e)
                }
                None => (token, 1),
            };
            let sym = match base {
                "x" => Sym::X,
                "y" => Sym::Y,
                _ => return Err(Error::parse(index, token, "expected x or y")),
            };
            syllables.push((sym, exp));
        }
        Ok(FreeWord::new(syllables))
    }

    /// Substitutes `x ↦ gx`, `y ↦ gy` and multiplies left to right in `group`.
    pub fn eval(&self, gx: usize, gy: usize, group: &FiniteGroup) -> usize {
        self.0.iter().fold(group.identity(), |acc, &(s, e)| {
            let base = match s {
                Sym::X => gx,
                Sym::Y => gy,
            };
            group.mul(acc, group.pow(base, e as i64))
        })
    }

    /// Evaluates in an abelian group written additively over the integers.
    pub fn eval_additive(&self, x: i64, y: i64) -> i64 {
        self.0
            .iter()
            .map(|&(s, e)| {
                e as i64
                    * match s {
                        Sym::X => x,
                        Sym::Y => y,
                    }
            })
            .sum()
    }
}

/// Free function form of [`FreeWord::eval`].
pub fn eval_word(w: &FreeWord, gx: usize, gy: usize, group: &FiniteGroup) -> usize {
    w.eval(gx, gy, group)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let c = match s {
                Sym::X => "x",
                Sym::Y => "y",
            };
            if *e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}
