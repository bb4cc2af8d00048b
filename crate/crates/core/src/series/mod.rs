//! Exact truncated power series in `t` with coefficients in `Q[u, v]`.

mod expr;
mod formula;
mod gf;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

pub use expr::{tri, ExprError, TriPoly};
pub use formula::{formula_value, FormulaName};
pub use gf::{
    closed_form, compare_with_closed_form, gf_spec, registry, verify_identity, GfKind, GfName, GfSpec, IdentityCheck,
    RadicalForm, Residual, SumFamily, SumTerm,
};
pub use poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("t^0 coefficient {0} is not an invertible constant")]
    NotInvertible(String),
    #[error("radicand must have constant term 1, found {0}")]
    RadicandConstant(String),
    #[error("radicand mentions u or v")]
    RadicandNotUnivariate,
    #[error("equation has no unique power-series root at 0: {0}")]
    NoSeriesRoot(String),
    #[error("coefficient of t^{order} is not divisible by the denominator")]
    InexactDivision { order: usize },
    #[error("right-hand side is nonzero at t^{order}, below the denominator valuation")]
    Unsolvable { order: usize },
    #[error("unknown generating function `{0}`")]
    UnknownGf(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("malformed series JSON: {0}")]
    Json(String),
}

/// Values substituted for the catalytic variables; `None` keeps one symbolic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    pub u: Option<BigRational>,
    pub v: Option<BigRational>,
}

impl Substitution {
    pub fn symbolic() -> Self {
        Self::default()
    }

    pub fn at_one() -> Self {
        Self { u: Some(BigRational::one()), v: Some(BigRational::one()) }
    }

    pub fn v_at_one() -> Self {
        Self { u: None, v: Some(BigRational::one()) }
    }

    pub fn is_symbolic(&self) -> bool {
        self.u.is_none() && self.v.is_none()
    }

    pub fn apply_poly(&self, p: &Poly) -> Poly {
        p.eval(self.u.as_ref(), self.v.as_ref())
    }

    pub fn apply(&self, p: &TriPoly) -> TriPoly {
        p.eval(self.u.as_ref(), self.v.as_ref())
    }
}

/// `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Poly>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients remain.
    pub fn new(mut coeffs: Vec<Poly>, order: usize) -> Self {
        coeffs.resize(order + 1, Poly::zero());
        Self { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![Poly::one()], order)
    }

    pub fn from_integers<I: IntoIterator<Item = BigInt>>(coeffs: I, order: usize) -> Self {
        Self::new(coeffs.into_iter().map(Poly::from).collect(), order)
    }

    pub fn from_tripoly(p: &TriPoly, order: usize) -> Self {
        Self::new(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, c: Poly) {
        self.coeffs[k] = c;
    }

    /// Index of the first nonzero coefficient, `None` if all are zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn is_univariate(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_constant().is_some())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        Self::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn eval(&self, u: Option<&BigRational>, v: Option<&BigRational>) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.eval(u, v)).collect(), self.order)
    }

    pub fn substitute(&self, sub: &Substitution) -> Self {
        self.eval(sub.u.as_ref(), sub.v.as_ref())
    }

    /// Constant coefficients as big rationals, `None` if any mentions `u` or `v`.
    pub fn rational_coeffs(&self) -> Option<Vec<BigRational>> {
        self.coeffs.iter().map(Poly::as_constant).collect()
    }

    /// Integer coefficients at `u = v = 1`.
    pub fn totals(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(Poly::sum_coeffs).collect()
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect(), self.order)
    }

    /// Multiplies by `t^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs, self.order)
    }

    /// Divides by `t^k`; the low coefficients must vanish. The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if k > self.order || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs[k..].to_vec(), self.order - k))
    }

    pub fn mul_tripoly(&self, p: &TriPoly) -> Self {
        self * &Self::from_tripoly(p, self.order)
    }

    /// Reciprocal; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = match self.coeffs[0].as_constant() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(SeriesError::NotInvertible(self.coeffs[0].to_string())),
        };
        let inv0 = c0.recip();
        let n = self.order;
        if let Some(c) = self.rational_coeffs() {
            let mut out: Vec<BigRational> = vec![inv0.clone()];
            for k in 1..=n {
                let mut acc = BigRational::zero();
                for j in 1..=k {
                    if !c[j].is_zero() {
                        acc += &c[j] * &out[k - j];
                    }
                }
                out.push(-acc * &inv0);
            }
            return Ok(Self::new(out.into_iter().map(Poly::constant).collect(), n));
        }
        let mut out: Vec<Poly> = Vec::with_capacity(n + 1);
        out.push(Poly::constant(inv0.clone()));
        for k in 1..=n {
            let mut acc = Poly::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    acc += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(Self::new(out, n))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        sqrt_series(self)
    }

    /// Machine-readable form: one entry per power of `t`, each a dense
    /// `[u-degree][v-degree]` grid of `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        let rows = self
            .coeffs
            .iter()
            .map(|c| {
                let (du, dv) = (c.degree_u(), c.degree_v());
                Value::Array(
                    (0..=du)
                        .map(|a| {
                            Value::Array(
                                (0..=dv)
                                    .map(|b| {
                                        let x = c.coeff(a, b);
                                        Value::String(format!("{}/{}", x.numer(), x.denom()))
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        Value::Array(rows)
    }

    pub fn from_json(value: &Value) -> Result<Self, SeriesError> {
        let bad = |m: &str| SeriesError::Json(m.to_string());
        let rows = value.as_array().ok_or_else(|| bad("expected an array"))?;
        if rows.is_empty() {
            return Err(bad("series needs at least one coefficient"));
        }
        let mut coeffs = Vec::with_capacity(rows.len());
        for row in rows {
            let mut p = Poly::zero();
            let grid = row.as_array().ok_or_else(|| bad("coefficient must be an array"))?;
            for (a, col) in grid.iter().enumerate() {
                let col = col.as_array().ok_or_else(|| bad("grid row must be an array"))?;
                for (b, cell) in col.iter().enumerate() {
                    let s = cell.as_str().ok_or_else(|| bad("entries must be strings"))?;
                    let x: BigRational = s.parse().map_err(|_| bad(&format!("bad rational `{s}`")))?;
                    p.add_term(a as u32, b as u32, x);
                }
            }
            coeffs.push(p);
        }
        let order = coeffs.len() - 1;
        Ok(Self::new(coeffs, order))
    }
}

fn univariate_mul(a: &[BigRational], b: &[BigRational], order: usize) -> Vec<Poly> {
    (0..=order)
        .map(|k| {
            let mut acc = BigRational::zero();
            for i in 0..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    acc += &a[i] * &b[k - i];
                }
            }
            Poly::constant(acc)
        })
        .collect()
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        if let (Some(a), Some(b)) = (self.rational_coeffs(), rhs.rational_coeffs()) {
            return TruncatedSeries::new(univariate_mul(&a, &b, order), order);
        }
        let mut out = vec![Poly::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        TruncatedSeries::new(out, order)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries::new((0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(), order)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries::new((0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(), order)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|c| -c).collect(), self.order)
    }
}

fn fmt_term(c: &Poly, k: usize) -> (bool, String) {
    let tpow = match k {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{k}"),
    };
    if let Some(x) = c.as_constant() {
        let neg = x.is_negative();
        let mag = x.abs();
        let num = if mag.is_integer() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
        let body = match (k, mag.is_one()) {
            (0, _) => num,
            (_, true) => tpow,
            (_, false) if mag.is_integer() => format!("{num}{tpow}"),
            (_, false) => format!("{num}*{tpow}"),
        };
        return (neg, body);
    }
    if c.num_terms() == 1 {
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        return (neg, if k == 0 { mag } else { format!("{mag}*{tpow}") });
    }
    let body = match k {
        0 => format!("({c})"),
        _ => format!("({c})*{tpow}"),
    };
    (false, body)
}

/// `t + 2t^2 - 1/2*t^3 + (u + v)*t^4`; zero coefficients are skipped.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = fmt_term(c, k);
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => f.write_str(&body)?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(t^{})", self.order + 1)
    }
}

/// Expands `num / den` to order `N`; `den` must have an invertible constant term.
pub fn expand_rational(num: &TriPoly, den: &TriPoly, order: usize) -> Result<TruncatedSeries, SeriesError> {
    let den_s = TruncatedSeries::from_tripoly(den, order);
    let inv = den_s.inverse()?;
    Ok(&TruncatedSeries::from_tripoly(num, order) * &inv)
}

/// Solves `den * Y = rhs` for a power series `Y`.
///
/// The denominator may vanish at `t = 0` and its lowest coefficient may be
/// a polynomial in `u, v`; every step then needs an exact polynomial
/// division, and a remainder is reported as an error. The result has order
/// `rhs.order() - val(den)`.
pub fn solve_linear(den: &TriPoly, rhs: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let d = den.valuation().ok_or_else(|| SeriesError::NotInvertible("0".into()))?;
    if rhs.order() < d {
        return Err(SeriesError::Unsolvable { order: rhs.order() });
    }
    if let Some(k) = (0..d).find(|&k| !rhs.coeff(k).is_zero()) {
        return Err(SeriesError::Unsolvable { order: k });
    }
    let lead = den.coeff(d);
    let lead_const = lead.as_constant().map(|c| c.recip());
    let order = rhs.order() - d;
    let mut out: Vec<Poly> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = rhs.coeff(n + d).clone();
        for k in 1..=n.min(den.degree().saturating_sub(d)) {
            let dk = den.coeff(d + k);
            if !dk.is_zero() && !out[n - k].is_zero() {
                acc -= &(&dk * &out[n - k]);
            }
        }
        let y = match &lead_const {
            Some(inv) => acc.scale(inv),
            None => acc.div_exact(&lead).ok_or(SeriesError::InexactDivision { order: n })?,
        };
        out.push(y);
    }
    Ok(TruncatedSeries::new(out, order))
}

/// Square root of a univariate series with constant term 1.
pub fn sqrt_series(s: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let c = s.rational_coeffs().ok_or(SeriesError::RadicandNotUnivariate)?;
    if !c[0].is_one() {
        return Err(SeriesError::RadicandConstant(c[0].to_string()));
    }
    let half = BigRational::new(1.into(), 2.into());
    let mut r: Vec<BigRational> = vec![BigRational::one()];
    for n in 1..=s.order() {
        let mut acc = c[n].clone();
        for k in 1..n {
            acc -= &r[k] * &r[n - k];
        }
        r.push(acc * &half);
    }
    Ok(TruncatedSeries::new(r.into_iter().map(Poly::constant).collect(), s.order()))
}

/// Evaluates `sum_i coeffs[i] * y^i`.
fn eval_equation(coeffs: &[TruncatedSeries], y: &TruncatedSeries) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(y.order());
    for c in coeffs.iter().rev() {
        acc = &(&acc * y) + c;
    }
    acc
}

fn derivative_coeffs(coeffs: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&Poly::from_int(i as i64))).collect()
}

/// Coefficient recurrence for constant-coefficient equations: since `Y_0 = 0`,
/// `[t^n] Y^i` for `i >= 2` only involves `Y_1..Y_{n-1}`, so `Y_n` is fixed by
/// the linear term alone. Runs in integers when the coefficients are integral
/// and the linear term starts with a unit.
fn univariate_root(eq: &[TriPoly], order: usize) -> TruncatedSeries {
    let c: Vec<Vec<BigRational>> =
        eq.iter().map(|p| (0..=order).map(|k| p.coeff(k).as_constant().expect("univariate")).collect()).collect();
    let lead = c[1][0].clone();
    let integral = c.iter().flatten().all(|x| x.is_integer()) && lead.abs().is_one();
    let coeffs: Vec<Poly> = if integral {
        let ci: Vec<Vec<BigInt>> = c.iter().map(|row| row.iter().map(|x| x.to_integer()).collect()).collect();
        root_recurrence(&ci, &lead.to_integer(), order)
            .into_iter()
            .map(|x| Poly::constant(BigRational::from_integer(x)))
            .collect()
    } else {
        root_recurrence(&c, &lead, order).into_iter().map(Poly::constant).collect()
    };
    TruncatedSeries::new(coeffs, order)
}

fn root_recurrence<T>(c: &[Vec<T>], lead: &T, order: usize) -> Vec<T>
where
    T: Clone + Zero + One + std::ops::Neg<Output = T> + for<'a> std::ops::AddAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T> + std::ops::Div<&'a T, Output = T>,
{
    // pows[i][k] = [t^k] Y^i
    let mut pows: Vec<Vec<T>> = vec![vec![T::zero(); order + 1]; c.len()];
    pows[0][0] = T::one();
    for n in 1..=order {
        for i in 2..c.len() {
            let mut acc = T::zero();
            for a in 1..n {
                if !pows[1][a].is_zero() && !pows[i - 1][n - a].is_zero() {
                    acc += &(&pows[1][a] * &pows[i - 1][n - a]);
                }
            }
            pows[i][n] = acc;
        }
        let mut rest = T::zero();
        for (i, ci) in c.iter().enumerate() {
            for j in 0..=n {
                if (i, j) != (1, 0) && !ci[j].is_zero() && !pows[i][n - j].is_zero() {
                    rest += &(&ci[j] * &pows[i][n - j]);
                }
            }
        }
        pows[1][n] = &(-rest) / lead;
    }
    pows.swap_remove(1)
}

/// The power-series root with zero constant term of `sum_i eq[i] * Y^i = 0`,
/// by Newton iteration with doubling precision.
pub fn algebraic_root(eq: &[TriPoly], order: usize) -> Result<TruncatedSeries, SeriesError> {
    if eq.len() < 2 {
        return Err(SeriesError::NoSeriesRoot("equation has no linear term".into()));
    }
    if !eq[0].coeff(0).is_zero() {
        return Err(SeriesError::NoSeriesRoot("Y = 0 is not a root at t = 0".into()));
    }
    match eq[1].coeff(0).as_constant() {
        Some(c) if !c.is_zero() => {}
        _ => return Err(SeriesError::NoSeriesRoot("linear coefficient is not invertible at t = 0".into())),
    }
    if eq.iter().all(TriPoly::is_univariate) {
        return Ok(univariate_root(eq, order));
    }
    let full: Vec<TruncatedSeries> = eq.iter().map(|p| TruncatedSeries::from_tripoly(p, order)).collect();
    let mut y = TruncatedSeries::zero(0);
    let mut prec = 0usize;
    while prec < order {
        prec = (2 * prec + 1).min(order);
        let cs: Vec<TruncatedSeries> = full.iter().map(|c| c.truncate(prec)).collect();
        let dcs = derivative_coeffs(&cs);
        let y_ext = TruncatedSeries::new(y.coeffs.clone(), prec);
        let value = eval_equation(&cs, &y_ext);
        let slope = eval_equation(&dcs, &y_ext);
        y = &y_ext - &value.div(&slope)?;
    }
    Ok(TruncatedSeries::new(y.coeffs, order))
}
