//! Expression grammar for elements, with positions in error messages.
//!
//! Beyond the core grammar, `/` divides by a scalar and `inv(...)` accepts
//! any affine `lambda f_j + s` so that every canonical rendering parses.

use num_bigint::BigInt;
use qpain_core::ncalgebra::{Algebra, Element, NcError};
use qpain_core::scalars::{Rat, Scalar, Sym};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: index out of range: {name}")]
    IndexOutOfRange { line: usize, col: usize, name: String },
    #[error("{line}:{col}: inv() needs a generator shifted by a scalar")]
    InvalidInverse { line: usize, col: usize },
    #[error("{line}:{col}: {msg}")]
    Algebra { line: usize, col: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(u8),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let b = src.as_bytes();
        let mut k = 0;
        while k < b.len() {
            let c = b[k];
            if c.is_ascii_whitespace() {
                k += 1;
            } else if c.is_ascii_digit() {
                let s = k;
                while k < b.len() && b[k].is_ascii_digit() {
                    k += 1;
                }
                let n: BigInt = src[s..k].parse().expect("digits");
                lx.toks.push((Tok::Num(n), s));
            } else if c.is_ascii_alphabetic() {
                let s = k;
                while k < b.len() && b[k].is_ascii_alphanumeric() {
                    k += 1;
                }
                lx.toks.push((Tok::Ident(src[s..k].to_string()), s));
            } else if b"+-*/^()".contains(&c) {
                lx.toks.push((Tok::Sym(c), k));
                k += 1;
            } else {
                let (line, col) = position(src, k);
                return Err(ParseError::Syntax { line, col, msg: format!("unexpected character {:?}", src[k..].chars().next().unwrap_or(' ')) });
            }
        }
        lx.toks.push((Tok::End, lx.src.len()));
        Ok(lx.toks)
    }
}

/// 1-based line and column of a byte offset.
fn position(src: &str, at: usize) -> (usize, usize) {
    let before = &src[..at.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct Parser<'a> {
    src: &'a str,
    alg: Algebra,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn at(&self) -> usize {
        self.toks[self.pos].1
    }

    fn here(&self, at: usize) -> (usize, usize) {
        position(self.src, at)
    }

    fn syntax(&self, msg: &str) -> ParseError {
        let (line, col) = self.here(self.at());
        ParseError::Syntax { line, col, msg: msg.into() }
    }

    fn algebra_err(&self, at: usize, e: impl std::fmt::Display) -> ParseError {
        let (line, col) = self.here(at);
        ParseError::Algebra { line, col, msg: e.to_string() }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let at = self.at();
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = acc.mul(&rhs).map_err(|e| self.algebra_err(at, e))?;
            } else if self.eat(b'/') {
                let rhs = self.factor()?;
                let c = rhs.as_scalar().ok_or_else(|| self.algebra_err(at, "can only divide by a scalar"))?;
                let inv = c.inv().map_err(|e| self.algebra_err(at, e))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Element, ParseError> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        let at = self.at();
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let n = match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                i32::try_from(n).map_err(|_| self.syntax("exponent too large"))?
            }
            _ => return Err(self.syntax("expected an integer exponent")),
        };
        if neg {
            let c = base.as_scalar().ok_or_else(|| self.algebra_err(at, "negative powers apply to scalars only; use inv()"))?;
            let p = c.powi(-n).map_err(|e| self.algebra_err(at, e))?;
            return Ok(Element::scalar(self.alg, p));
        }
        base.pow(n as u32).map_err(|e| self.algebra_err(at, e))
    }

    fn index(&self, id: &str, stem: &str) -> Option<u8> {
        let digits = id.strip_prefix(stem)?;
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        Some(digits.parse::<u32>().map_or(u8::MAX, |n| u8::try_from(n).unwrap_or(u8::MAX)))
    }

    fn atom(&mut self) -> Result<Element, ParseError> {
        let at = self.at();
        let alg = self.alg;
        let sc = |c: Scalar| Element::scalar(alg, c);
        match self.peek().clone() {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(sc(Scalar::from_rat(Rat::from_integer(n))))
            }
            Tok::Sym(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(e)
            }
            Tok::Ident(id) => {
                self.pos += 1;
                let out_of_range = || {
                    let (line, col) = position(self.src, at);
                    ParseError::IndexOutOfRange { line, col, name: id.clone() }
                };
                match id.as_str() {
                    "inv" => self.inverse(at),
                    "hbar" => Ok(sc(Scalar::hbar())),
                    "t" => Ok(sc(Scalar::sym(Sym::T))),
                    "E" => Ok(sc(Scalar::sym(Sym::E))),
                    "x" => Ok(sc(Scalar::sym(Sym::X))),
                    "y" => Ok(sc(Scalar::sym(Sym::Y))),
                    _ => {
                        if let Some(i) = self.index(&id, "f") {
                            return Element::try_gen(alg, i).map_err(|_| out_of_range());
                        }
                        if let Some(i) = self.index(&id, "a") {
                            if i >= alg.nparams() {
                                return Err(out_of_range());
                            }
                            return Ok(sc(Scalar::alpha(i)));
                        }
                        let (line, col) = self.here(at);
                        Err(ParseError::Syntax { line, col, msg: format!("unknown name {id:?}") })
                    }
                }
            }
            Tok::End => Err(self.syntax("unexpected end of input")),
            Tok::Sym(c) => Err(self.syntax(&format!("unexpected '{}'", c as char))),
        }
    }

    fn inverse(&mut self, at: usize) -> Result<Element, ParseError> {
        if !self.eat(b'(') {
            return Err(self.syntax("expected '(' after inv"));
        }
        let inner = self.expr()?;
        if !self.eat(b')') {
            return Err(self.syntax("expected ')'"));
        }
        let (line, col) = self.here(at);
        let invalid = ParseError::InvalidInverse { line, col };
        if let Some(c) = inner.as_scalar() {
            let inv = c.inv().map_err(|_| invalid.clone())?;
            return Ok(Element::scalar(self.alg, inv));
        }
        let (gen, lambda, offset) = inner.as_affine().ok_or(invalid.clone())?;
        // (lambda f + s)^-1 = lambda^-1 (f - (-s/lambda))^-1
        let shift = (-&offset).checked_div(&lambda).map_err(|_| invalid.clone())?;
        let pole = Element::inv_power(self.alg, gen, &shift, -1).map_err(|e: NcError| self.algebra_err(at, e))?;
        Ok(pole.scale(&lambda.inv().map_err(|_| invalid)?))
    }
}

pub fn parse_expression(src: &str, alg: Algebra) -> Result<Element, ParseError> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { src, alg, toks, pos: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_scalar(src: &str, alg: Algebra) -> Result<Scalar, ParseError> {
    parse_expression(src, alg)?.as_scalar().ok_or(ParseError::Syntax { line: 1, col: 1, msg: "expected a scalar".into() })
}

/// `pii` or `al:<l>`.
pub fn parse_algebra(s: &str) -> Result<Algebra, String> {
    if s == "pii" {
        return Ok(Algebra::pii());
    }
    s.strip_prefix("al:")
        .and_then(|l| l.parse::<u8>().ok())
        .and_then(Algebra::al)
        .ok_or_else(|| format!("unknown algebra {s:?}; expected pii or al:<l> with 2 <= l <= 9"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pii(s: &str) -> Result<Element, ParseError> {
        parse_expression(s, Algebra::pii())
    }

    #[test]
    fn reorders_products() {
        assert_eq!(pii("f1*f0").unwrap().to_string(), "f0*f1 + 2*hbar*f2");
        assert_eq!(pii("inv(f0)^2").unwrap().to_string(), "inv(f0)^2");
    }

    #[test]
    fn rejects_non_affine_inverses() {
        assert!(matches!(pii("inv(f0+f1)"), Err(ParseError::InvalidInverse { line: 1, col: 1 })));
        assert!(matches!(pii("inv(f0^2)"), Err(ParseError::InvalidInverse { .. })));
    }

    #[test]
    fn reports_positions() {
        assert_eq!(pii("f0 +\n  f7"), Err(ParseError::IndexOutOfRange { line: 2, col: 3, name: "f7".into() }));
        assert!(matches!(pii("f0 + * f1"), Err(ParseError::Syntax { line: 1, col: 6, .. })));
        assert!(matches!(pii("a2"), Err(ParseError::IndexOutOfRange { .. })));
        assert!(matches!(pii("f0 / f1"), Err(ParseError::Algebra { .. })));
    }

    #[test]
    fn shifted_and_scaled_inverses() {
        let alg = Algebra::al(3).unwrap();
        let e = parse_expression("inv(f0 - x)", alg).unwrap();
        assert_eq!(e.to_string(), "inv(f0 - x)");
        let e = parse_expression("inv(2*f1 + 2)", alg).unwrap();
        assert_eq!(e.to_string(), "1/2*inv(f1 + 1)");
        assert_eq!(parse_expression("1/2*a1^2 - (a0 + 1)/a2", alg).unwrap().to_string(), parse_expression("a1^2/2 - (a0+1)*a2^-1", alg).unwrap().to_string());
    }
}
