//! Polynomials in `t, u, v`, written as ordinary arithmetic expressions.
//!
//! The generating-function registry stores its numerators, denominators and
//! radicands as expression strings (`"(1-t*v)*(1-t-t*u*v)"`) which are
//! parsed here into [`TriPoly`] values.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::poly::Poly;

/// A polynomial in `t` whose coefficients are polynomials in `u, v`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TriPoly {
    coeffs: Vec<Poly>,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(p: Poly) -> Self {
        Self::from_coeffs(vec![p])
    }

    pub fn t() -> Self {
        Self::from_coeffs(vec![Poly::zero(), Poly::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn parse(src: &str) -> Result<Self, ExprError> {
        Parser { src: src.as_bytes(), pos: 0 }.parse_all()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `t^k`.
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Lowest power of `t` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// True when no coefficient mentions `u` or `v`.
    pub fn is_univariate(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_constant().is_some())
    }

    pub fn eval(&self, u: Option<&BigRational>, v: Option<&BigRational>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.eval(u, v)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(Poly::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TriPoly::from_coeffs((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TriPoly::from_coeffs((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        TriPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        if self.is_zero() || rhs.is_zero() {
            return TriPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        TriPoly::from_coeffs(out)
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriPoly({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad polynomial expression at offset {offset}: {message}")]
pub struct ExprError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

// expr   := term (('+' | '-') term)*
// term   := factor ('*' factor)*
// factor := '-' factor | atom ('^' integer)?
// atom   := integer | 't' | 'u' | 'v' | '(' expr ')'
impl Parser<'_> {
    fn fail<T>(&self, message: &str) -> Result<T, ExprError> {
        Err(ExprError { offset: self.pos, message: message.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<TriPoly, ExprError> {
        let e = self.expr()?;
        if self.peek().is_some() {
            return self.fail("trailing input");
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<TriPoly, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<TriPoly, ExprError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<TriPoly, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = match u32::try_from(&e) {
                Ok(e) if e <= 64 => e,
                _ => return self.fail("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ExprError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn atom(&mut self) -> Result<TriPoly, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(TriPoly::t())
            }
            Some(b'u') => {
                self.pos += 1;
                Ok(TriPoly::constant(Poly::u()))
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(TriPoly::constant(Poly::v()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if n.is_zero() {
                    return Ok(TriPoly::zero());
                }
                Ok(TriPoly::constant(Poly::constant(BigRational::from_integer(n))))
            }
            Some(_) => self.fail("unexpected character"),
            None => self.fail("unexpected end of expression"),
        }
    }
}

/// Convenience for literals that are known to parse.
pub fn tri(src: &str) -> TriPoly {
    TriPoly::parse(src).unwrap_or_else(|e| panic!("{e}: {src}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn parses_products_and_powers() {
        let p = tri("(1-t*v)*(1-t-t*u*v)");
        assert_eq!(p.coeff(0), Poly::one());
        assert_eq!(p.coeff(1), &(&-&Poly::v() - &Poly::one()) - &(&Poly::u() * &Poly::v()));
        assert_eq!(p.degree(), 2);
        let sq = tri("(1+t)^2");
        assert_eq!(sq, tri("1 + 2*t + t^2"));
        assert_eq!(tri("-t^2"), -&tri("t^2"));
        assert_eq!(tri("2*t - 2*t"), TriPoly::zero());
        assert_eq!(tri("0*u + t").valuation(), Some(1));
    }

    #[test]
    fn evaluation() {
        let p = tri("2*t*(1+u+u^2)-2*u");
        let at1 = p.eval(Some(&q(1)), Some(&q(1)));
        assert_eq!(at1, tri("6*t-2"));
        assert!(at1.is_univariate());
        assert!(!p.is_univariate());
    }

    #[test]
    fn parse_errors() {
        assert!(TriPoly::parse("1+").is_err());
        assert!(TriPoly::parse("(1+t").is_err());
        assert!(TriPoly::parse("x").is_err());
        assert_eq!(TriPoly::parse("t t").unwrap_err().offset, 2);
    }
}
