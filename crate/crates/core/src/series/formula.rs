//! Closed coefficient formulas for the counting sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaName {
    /// Motzkin numbers `M_n`, with `M_0 = 1`.
    Motzkin,
    /// Ternary-tree style counts split by the parity of `n`.
    Cat3,
    EvenFormula,
    Pow2,
    /// `(n-1) 2^(n-2) + 1`.
    West,
    /// Odd-indexed Fibonacci numbers `F_{2n-1}`.
    FibOdd,
    /// `b_{n+2} = b_{n+1} + sum_k C(n,k) b_k`, `b_0 = b_1 = 1`.
    BRec,
}

impl FormulaName {
    pub const ALL: [FormulaName; 7] =
        [Self::Motzkin, Self::Cat3, Self::EvenFormula, Self::Pow2, Self::West, Self::FibOdd, Self::BRec];

    pub fn name(self) -> &'static str {
        match self {
            Self::Motzkin => "motzkin",
            Self::Cat3 => "cat3",
            Self::EvenFormula => "even_formula",
            Self::Pow2 => "pow2",
            Self::West => "west",
            Self::FibOdd => "fib_odd",
            Self::BRec => "b_rec",
        }
    }
}

impl fmt::Display for FormulaName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| format!("unknown formula `{s}`"))
    }
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub(crate) fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn motzkin(n: usize) -> BigInt {
    let mut m: Vec<BigInt> = vec![BigInt::one()];
    for i in 1..=n {
        let mut next = m[i - 1].clone();
        for k in 0..i.saturating_sub(1) {
            next += &m[k] * &m[i - 2 - k];
        }
        m.push(next);
    }
    m.swap_remove(n)
}

fn cat3(n: i64) -> BigInt {
    let k = n / 2;
    if n % 2 == 0 {
        binomial(3 * k, k) / BigInt::from(2 * k + 1)
    } else {
        binomial(3 * k + 1, k + 1) / BigInt::from(2 * k + 1)
    }
}

fn even_formula(n: i64) -> BigInt {
    let mut sum = BigRational::zero();
    for k in 0..=n / 2 {
        let first = BigInt::from(2) * binomial(n, 2 * k) * binomial(n - k, k - 1);
        let second = BigRational::new(BigInt::from(n), BigInt::from(n - k))
            * BigRational::from_integer(binomial(n, 2 * k + 1) * binomial(n - k, k));
        sum += BigRational::from_integer(first) + second;
    }
    let value = sum / BigRational::from_integer(BigInt::from(n));
    debug_assert!(value.is_integer());
    value.to_integer()
}

fn fib_odd(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 1..(2 * n - 1) {
        let c = &a + &b;
        a = b;
        b = c;
    }
    b
}

fn b_rec(n: usize) -> BigInt {
    let mut b: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    while b.len() <= n {
        let m = (b.len() - 2) as i64;
        let mut next = b[b.len() - 1].clone();
        for k in 0..=m {
            next += binomial(m, k) * &b[k as usize];
        }
        b.push(next);
    }
    b.swap_remove(n)
}

/// Exact value of the named formula at `n`. `motzkin` and `b_rec` accept
/// `n = 0`; the others are defined for `n >= 1` and return 0 at `n = 0`.
pub fn formula_value(name: FormulaName, n: usize) -> BigInt {
    let ni = n as i64;
    match name {
        FormulaName::Motzkin => motzkin(n),
        FormulaName::BRec => b_rec(n),
        _ if n == 0 => BigInt::zero(),
        FormulaName::Cat3 => cat3(ni),
        FormulaName::EvenFormula => even_formula(ni),
        FormulaName::Pow2 => BigInt::one() << (n - 1),
        FormulaName::West if n == 1 => BigInt::one(),
        FormulaName::West => BigInt::from(ni - 1) * (BigInt::one() << (n - 2)) + 1,
        FormulaName::FibOdd => fib_odd(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(name: FormulaName, range: std::ops::RangeInclusive<usize>) -> Vec<i64> {
        range.map(|n| i64::try_from(formula_value(name, n)).unwrap()).collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(vals(FormulaName::Motzkin, 0..=7), [1, 1, 2, 4, 9, 21, 51, 127]);
        assert_eq!(vals(FormulaName::Cat3, 1..=8), [1, 1, 2, 3, 7, 12, 30, 55]);
        assert_eq!(formula_value(FormulaName::Cat3, 4), 3.into());
        assert_eq!(formula_value(FormulaName::EvenFormula, 2), 2.into());
        assert_eq!(vals(FormulaName::Pow2, 1..=5), [1, 2, 4, 8, 16]);
        assert_eq!(vals(FormulaName::West, 1..=6), [1, 2, 5, 13, 33, 81]);
        assert_eq!(vals(FormulaName::FibOdd, 1..=6), [1, 2, 5, 13, 34, 89]);
        assert_eq!(formula_value(FormulaName::FibOdd, 3), 5.into());
        assert_eq!(vals(FormulaName::BRec, 0..=6), [1, 1, 2, 4, 9, 23, 65]);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(10, 3), 120.into());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn names_round_trip() {
        for f in FormulaName::ALL {
            assert_eq!(f.name().parse::<FormulaName>().unwrap(), f);
        }
        assert!("fib".parse::<FormulaName>().is_err());
    }
}
