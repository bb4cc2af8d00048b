//! Exact polynomials in the catalytic variables `u` and `v`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse polynomial in `u, v` over the rationals. Keys are
/// `(u-degree, v-degree)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(c: BigRational, u_deg: u32, v_deg: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((u_deg, v_deg), c);
        }
        Self { terms }
    }

    pub fn u() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient if this is a constant (possibly zero), else `None`.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, u_deg: u32, v_deg: u32) -> BigRational {
        self.terms.get(&(u_deg, v_deg)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in canonical order: by `u`-degree, then `v`-degree.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigRational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree_u(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_v(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, u_deg: u32, v_deg: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((u_deg, v_deg)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&k, x)| (k, x * c)).collect() }
    }

    pub fn mul_monomial(&self, c: &BigRational, u_deg: u32, v_deg: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&(a, b), x)| ((a + u_deg, b + v_deg), x * c)).collect() }
    }

    /// Substitutes numbers for `u` and/or `v`; `None` keeps the variable.
    pub fn eval(&self, u: Option<&BigRational>, v: Option<&BigRational>) -> Self {
        if u.is_none() && v.is_none() {
            return self.clone();
        }
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            let mut c = c.clone();
            let mut a2 = a;
            let mut b2 = b;
            if let Some(x) = u {
                c *= pow(x, a);
                a2 = 0;
            }
            if let Some(y) = v {
                c *= pow(y, b);
                b2 = 0;
            }
            out.add_term(a2, b2, c);
        }
        out
    }

    /// Value at `u = v = 1`.
    pub fn sum_coeffs(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    fn leading(&self) -> Option<((u32, u32), &BigRational)> {
        self.terms.iter().next_back().map(|(&k, c)| (k, c))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Lexicographic leading terms; for a single divisor a zero
    /// remainder is equivalent to divisibility.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let ((du, dv), dc) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some(((ru, rv), rc)) = rem.leading() {
            if ru < du || rv < dv {
                return None;
            }
            let q = rc / dc;
            let (qu, qv) = (ru - du, rv - dv);
            rem -= &divisor.mul_monomial(&q, qu, qv);
            quot.add_term(qu, qv, q);
        }
        Some(quot)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// True when every coefficient is a non-negative integer.
    pub fn is_counting(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }
}

pub(crate) fn pow(x: &BigRational, e: u32) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

impl From<BigInt> for Poly {
    fn from(c: BigInt) -> Self {
        Self::constant(BigRational::from_integer(c))
    }
}

impl From<BigRational> for Poly {
    fn from(c: BigRational) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, -c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let mut out = Poly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(a: u32, b: u32) -> String {
    let var = |name: &str, e: u32| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    match (var("u", a), var("v", b)) {
        (x, y) if x.is_empty() => y,
        (x, y) if y.is_empty() => x,
        (x, y) => format!("{x}*{y}"),
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(a, b);
            if mono.is_empty() {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn arithmetic() {
        let u = Poly::u();
        let v = Poly::v();
        let one = Poly::one();
        let a = &one - &u; // 1 - u
        let b = &one - &(&u * &v); // 1 - uv
        let prod = &a * &b;
        assert_eq!(prod.to_string(), "1 - u - u*v + u^2*v");
        assert_eq!(prod.eval(Some(&q(1)), None), Poly::zero());
        assert_eq!(prod.eval(Some(&q(2)), Some(&q(3))).as_constant(), Some(q(5)));
        assert_eq!(prod.sum_coeffs(), q(0));
    }

    #[test]
    fn exact_division() {
        let u = Poly::u();
        let v = Poly::v();
        let one = Poly::one();
        let a = &one - &u;
        let b = &(&one - &(&u * &v)).scale(&q(2));
        let c = &(&u * &u) + &v.scale(&q(3));
        let prod = &(&a * b) * &c;
        assert_eq!(prod.div_exact(&(&a * b)), Some(c.clone()));
        assert_eq!(prod.div_exact(&a).unwrap().div_exact(b), Some(c.clone()));
        assert_eq!((&c + &one).div_exact(&a), None);
        assert_eq!(Poly::zero().div_exact(&a), Some(Poly::zero()));
        assert_eq!(c.div_exact(&Poly::from_int(2)), Some(c.scale(&BigRational::new(1.into(), 2.into()))));
        assert_eq!(c.div_exact(&Poly::zero()), None);
    }

    #[test]
    fn display_rationals() {
        let p = &Poly::constant(BigRational::new((-1).into(), 2.into())) + &Poly::v().scale(&q(3));
        assert_eq!(p.to_string(), "-1/2 + 3*v");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
