//! Text grammar for polynomials and systems.
//!
//! A polynomial is a `+`/`-` separated list of terms; a term is an optional
//! rational coefficient (`p` or `p/q`) and `*`-separated variable powers
//! `xK^E` with `K` between 1 and the variable count and `E ≥ 1` (`^1` may be
//! omitted). Whitespace is insignificant. A bare rational is a constant term:
//!
//! ```text
//! 3/2*x1^2*x2 - x2 + 1
//! ```
//!
//! A system file holds one polynomial per nonempty line; the number of
//! nonempty lines fixes the variable count.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use thiserror::Error;

use super::exponent::Exponent;
use super::field::Rat;
use super::poly::Poly;
use super::system::{SystemError, SystemProfile};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input, expected a polynomial")]
    Empty,
    #[error("column {pos}: unexpected character '{ch}'")]
    UnexpectedChar { pos: usize, ch: char },
    #[error("column {pos}: expected {expected}, found '{found}'")]
    Unexpected {
        pos: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("column {pos}: variable index {index} out of range, expected x1..x{nvars}")]
    VarOutOfRange {
        pos: usize,
        index: u64,
        nvars: usize,
    },
    #[error("column {pos}: exponent must be at least 1")]
    ZeroExponent { pos: usize },
    #[error("column {pos}: exponent exceeds the supported range")]
    ExponentTooLarge { pos: usize },
    #[error("column {pos}: denominator is zero")]
    ZeroDenominator { pos: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SystemParseError {
    #[error("line {line}: {source}")]
    Syntax { line: usize, source: ParseError },
    #[error(transparent)]
    Profile(#[from] SystemError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    /// Unsigned integer literal, kept as digits so coefficients never overflow.
    Nat(String),
    /// `x` immediately followed by digits; saturates at `u64::MAX`, which is
    /// out of range for any real variable count anyway.
    Var(u64),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Caret => "^".into(),
            Tok::Slash => "/".into(),
            Tok::Nat(d) => d.clone(),
            Tok::Var(k) => format!("x{k}"),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = input.chars().enumerate().peekable();
    while let Some(&(i, ch)) = chars.peek() {
        let pos = i + 1;
        match ch {
            c if c.is_whitespace() => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push((pos, Tok::Plus));
            }
            '-' => {
                chars.next();
                toks.push((pos, Tok::Minus));
            }
            '*' => {
                chars.next();
                toks.push((pos, Tok::Star));
            }
            '^' => {
                chars.next();
                toks.push((pos, Tok::Caret));
            }
            '/' => {
                chars.next();
                toks.push((pos, Tok::Slash));
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((pos, Tok::Nat(digits)));
            }
            'x' => {
                chars.next();
                let mut digits = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return match chars.peek() {
                        Some(&(j, c)) => Err(ParseError::Unexpected {
                            pos: j + 1,
                            expected: "a variable index after 'x'",
                            found: c.to_string(),
                        }),
                        None => Err(ParseError::UnexpectedEnd {
                            expected: "a variable index after 'x'",
                        }),
                    };
                }
                let index = u64::from_str(&digits).unwrap_or(u64::MAX);
                toks.push((pos, Tok::Var(index)));
            }
            c => return Err(ParseError::UnexpectedChar { pos, ch: c }),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.at)
    }

    fn bump(&mut self) -> Option<&(usize, Tok)> {
        let t = self.toks.get(self.at);
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect_nat(&mut self, expected: &'static str) -> Result<(usize, String), ParseError> {
        match self.bump() {
            Some((pos, Tok::Nat(d))) => Ok((*pos, d.clone())),
            Some((pos, t)) => Err(ParseError::Unexpected {
                pos: *pos,
                expected,
                found: t.describe(),
            }),
            None => Err(ParseError::UnexpectedEnd { expected }),
        }
    }

    fn poly(&mut self) -> Result<Poly<Rat>, ParseError> {
        let mut out = Poly::zero(self.nvars);
        let mut negate = false;
        if let Some((_, Tok::Plus)) = self.peek() {
            self.bump();
        } else if let Some((_, Tok::Minus)) = self.peek() {
            self.bump();
            negate = true;
        }
        loop {
            let (exp, coeff) = self.term()?;
            out.add_term(exp, if negate { -coeff } else { coeff });
            match self.bump() {
                None => break,
                Some((_, Tok::Plus)) => negate = false,
                Some((_, Tok::Minus)) => negate = true,
                Some((pos, t)) => {
                    return Err(ParseError::Unexpected {
                        pos: *pos,
                        expected: "'+', '-', or end of input",
                        found: t.describe(),
                    })
                }
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Exponent, Rat), ParseError> {
        let mut exp = vec![0u32; self.nvars];
        let coeff;
        match self.peek() {
            Some((_, Tok::Nat(_))) => {
                coeff = self.rational()?;
                // A coefficient is followed either by `*`-joined variable
                // powers or by nothing at all (a constant term).
                match self.peek() {
                    Some((_, Tok::Star)) => {
                        self.bump();
                        self.factor(&mut exp)?;
                    }
                    _ => return Ok((Exponent::new(exp), coeff)),
                }
            }
            Some((_, Tok::Var(_))) => {
                coeff = Rat::from_integer(BigInt::from(1));
                self.factor(&mut exp)?;
            }
            Some((pos, t)) => {
                return Err(ParseError::Unexpected {
                    pos: *pos,
                    expected: "a term (coefficient or variable)",
                    found: t.describe(),
                })
            }
            None => {
                return Err(ParseError::UnexpectedEnd {
                    expected: "a term (coefficient or variable)",
                })
            }
        }
        while let Some((_, Tok::Star)) = self.peek() {
            self.bump();
            self.factor(&mut exp)?;
        }
        Ok((Exponent::new(exp), coeff))
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        let (_, digits) = self.expect_nat("a coefficient")?;
        let num = BigInt::from_str(&digits).expect("digit strings parse");
        if let Some((_, Tok::Slash)) = self.peek() {
            self.bump();
            let (dpos, ddigits) = self.expect_nat("a denominator")?;
            let den = BigInt::from_str(&ddigits).expect("digit strings parse");
            if den == BigInt::from(0) {
                return Err(ParseError::ZeroDenominator { pos: dpos });
            }
            Ok(Ratio::new(num, den))
        } else {
            Ok(Rat::from_integer(num))
        }
    }

    fn factor(&mut self, exp: &mut [u32]) -> Result<(), ParseError> {
        let (pos, index) = match self.bump() {
            Some((pos, Tok::Var(k))) => (*pos, *k),
            Some((pos, t)) => {
                return Err(ParseError::Unexpected {
                    pos: *pos,
                    expected: "a variable power",
                    found: t.describe(),
                })
            }
            None => {
                return Err(ParseError::UnexpectedEnd {
                    expected: "a variable power",
                })
            }
        };
        if index == 0 || index > self.nvars as u64 {
            return Err(ParseError::VarOutOfRange {
                pos,
                index,
                nvars: self.nvars,
            });
        }
        let k = index as usize - 1;
        let mut e: u32 = 1;
        if let Some((_, Tok::Caret)) = self.peek() {
            self.bump();
            let (epos, digits) = self.expect_nat("an exponent")?;
            let val = u64::from_str(&digits).unwrap_or(u64::MAX);
            if val == 0 {
                return Err(ParseError::ZeroExponent { pos: epos });
            }
            e = u32::try_from(val).map_err(|_| ParseError::ExponentTooLarge { pos: epos })?;
        }
        exp[k] = exp[k]
            .checked_add(e)
            .ok_or(ParseError::ExponentTooLarge { pos })?;
        Ok(())
    }
}

/// Parses one polynomial in `nvars` variables.
pub fn poly_parse(input: &str, nvars: usize) -> Result<Poly<Rat>, ParseError> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser {
        toks: &toks,
        at: 0,
        nvars,
    };
    parser.poly()
}

/// Parses a system file: one polynomial per nonempty line, the number of
/// nonempty lines fixing the variable count. The resulting system is
/// validated (square, every equation of degree at least 1).
pub fn system_parse(input: &str) -> Result<SystemProfile<Rat>, SystemParseError> {
    let lines: Vec<(usize, &str)> = input
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    if lines.is_empty() {
        return Err(SystemError::Empty.into());
    }
    let nvars = lines.len();
    let mut polys = Vec::with_capacity(nvars);
    for (line, text) in lines {
        let p = poly_parse(text, nvars).map_err(|source| SystemParseError::Syntax { line, source })?;
        polys.push(p);
    }
    Ok(SystemProfile::new(polys)?)
}
