//! Registry of closed-form generating functions, their expansion, and
//! identity checks by cross-multiplication.

use std::fmt;
use std::str::FromStr;

use super::expr::{tri, TriPoly};
use super::poly::Poly;
use super::{algebraic_root, solve_linear, sqrt_series, SeriesError, Substitution, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GfName {
    D,
    J,
    Q,
    K1,
    M,
    N,
    K2,
    H,
    F,
    P,
    R,
    T,
}

impl GfName {
    pub const ALL: [GfName; 12] =
        [Self::D, Self::J, Self::Q, Self::K1, Self::M, Self::N, Self::K2, Self::H, Self::F, Self::P, Self::R, Self::T];

    pub fn name(self) -> &'static str {
        match self {
            Self::D => "D",
            Self::J => "J",
            Self::Q => "Q",
            Self::K1 => "K1",
            Self::M => "M",
            Self::N => "N",
            Self::K2 => "K2",
            Self::H => "H",
            Self::F => "F",
            Self::P => "P",
            Self::R => "R",
            Self::T => "T",
        }
    }
}

impl fmt::Display for GfName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GfName {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, SeriesError> {
        Self::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SeriesError::UnknownGf(s.to_string()))
    }
}

/// `(rational + coefficient * sqrt(radicand)) / den`, with a univariate radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalForm {
    pub den: TriPoly,
    pub rational: TriPoly,
    pub coefficient: TriPoly,
    pub radicand: TriPoly,
}

impl RadicalForm {
    fn substitute(&self, sub: &Substitution) -> Self {
        Self {
            den: sub.apply(&self.den),
            rational: sub.apply(&self.rational),
            coefficient: sub.apply(&self.coefficient),
            radicand: self.radicand.clone(),
        }
    }

    /// Expands by computing the square root and dividing exactly.
    pub fn expand(&self, order: usize) -> Result<TruncatedSeries, SeriesError> {
        let d = self.den.valuation().unwrap_or(0);
        let rhs_order = order + d;
        let root = sqrt_series(&TruncatedSeries::from_tripoly(&self.radicand, rhs_order))?;
        let rhs = &TruncatedSeries::from_tripoly(&self.rational, rhs_order) + &root.mul_tripoly(&self.coefficient);
        solve_linear(&self.den, &rhs)
    }
}

/// One summand `num / prod_i (1 - a_i t)` of a sum-form generating function.
#[derive(Debug, Clone)]
pub struct SumTerm {
    pub num: TriPoly,
    pub linear_factors: Vec<Poly>,
}

impl SumTerm {
    fn expand(&self, sub: &Substitution, order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::from_tripoly(&sub.apply(&self.num), order);
        for a in &self.linear_factors {
            let a = sub.apply_poly(a);
            // s / (1 - a t): y_n = s_n + a y_{n-1}
            let mut prev = Poly::zero();
            for n in 0..=order {
                let y = s.coeff(n) + &(&a * &prev);
                s.set_coeff(n, y.clone());
                prev = y;
            }
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumFamily {
    P,
    R,
    T,
}

impl SumFamily {
    fn first_index(self) -> usize {
        match self {
            Self::P => 1,
            Self::R | Self::T => 0,
        }
    }

    /// Lowest power of `t` in term `k`.
    pub fn start_order(self, k: usize) -> usize {
        match self {
            Self::P => 2 * k - 1,
            Self::R => 2 * k,
            Self::T => k + 1,
        }
    }

    pub fn term(self, k: usize) -> SumTerm {
        let kk = k as i64;
        let lin = |j: i64| Poly::from_int(j);
        match self {
            Self::P => SumTerm {
                num: tri(&format!("t^{}*(1-{}*t)", 2 * k - 1, kk - 1)),
                linear_factors: (1..=kk).flat_map(|j| [lin(j), lin(j)]).collect(),
            },
            Self::R => SumTerm {
                num: tri(&format!("t^{}*u^{k}*(1+{k}*t*u)", 2 * k)),
                linear_factors: std::iter::once(lin(kk + 1)).chain((1..kk).map(lin)).collect(),
            },
            Self::T => SumTerm {
                num: tri(&format!("t^{}*u^{k}*(1+{k}*t*u)", k + 1)),
                linear_factors: std::iter::repeat_n(-&Poly::u(), k).chain([lin(kk), lin(kk + 1)]).collect(),
            },
        }
    }

    fn formula(self) -> &'static str {
        match self {
            Self::P => "sum_{k>=1} t^(2k-1) (1-(k-1)t) / prod_{j=1..k} (1-jt)^2",
            Self::R => "sum_{k>=0} t^(2k) u^k (1+ktu) / ((1-(k+1)t) prod_{j=1..k-1} (1-jt)) - 1",
            Self::T => "sum_{k>=0} t^(k+1) u^k (1+ktu) / ((1+tu)^k (1-kt) (1-(k+1)t))",
        }
    }

    /// Truncated sum through every term that starts at or below `order`.
    pub fn expand(self, sub: &Substitution, order: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::zero(order);
        let mut k = self.first_index();
        while k <= order.max(1) && self.start_order(k) <= order {
            acc = &acc + &self.term(k).expand(sub, order);
            k += 1;
        }
        if self == Self::R {
            acc.set_coeff(0, acc.coeff(0) - &Poly::one());
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub enum GfKind {
    Rational {
        num: TriPoly,
        den: TriPoly,
    },
    Radical(RadicalForm),
    /// `sum_i coeffs[i] * Y^i = 0`, root with zero constant term.
    Algebraic {
        coeffs: Vec<TriPoly>,
    },
    Sum(SumFamily),
}

impl GfKind {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Rational { .. } => "rational",
            Self::Radical(_) => "radical",
            Self::Algebraic { .. } => "algebraic",
            Self::Sum(_) => "sum",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GfSpec {
    pub name: GfName,
    /// Which catalytic variables the closed form carries.
    pub variables: &'static str,
    pub kind: GfKind,
    /// The substitution under which candidates are compared; variables the
    /// form does not carry are set to 1.
    pub natural: Substitution,
}

impl GfSpec {
    pub fn describe(&self) -> String {
        match &self.kind {
            GfKind::Rational { num, den } => format!("({num}) / ({den})"),
            GfKind::Radical(r) => {
                format!("(({}) + ({}) * sqrt({})) / ({})", r.rational, r.coefficient, r.radicand, r.den)
            }
            GfKind::Algebraic { coeffs } => {
                let terms: Vec<String> = coeffs.iter().enumerate().map(|(i, c)| format!("({c})*Y^{i}")).collect();
                format!("{} = 0", terms.join(" + "))
            }
            GfKind::Sum(f) => f.formula().to_string(),
        }
    }
}

const MOTZKIN_RADICAND: &str = "1-2*t-3*t^2";
const F_RADICAND: &str = "1-4*t+2*t^2+t^4";

fn radical(den: &str, rational: &str, coefficient: &str, radicand: &str) -> GfKind {
    GfKind::Radical(RadicalForm {
        den: tri(den),
        rational: tri(rational),
        coefficient: tri(coefficient),
        radicand: tri(radicand),
    })
}

fn rational(num: &str, den: &str) -> GfKind {
    GfKind::Rational { num: tri(num), den: tri(den) }
}

fn cubic(coeffs: [&str; 4]) -> GfKind {
    GfKind::Algebraic { coeffs: coeffs.iter().map(|c| tri(c)).collect() }
}

pub fn gf_spec(name: GfName) -> GfSpec {
    let (variables, natural, kind) = match name {
        GfName::D => ("", Substitution::at_one(), radical("2*t", "1-t", "-1", MOTZKIN_RADICAND)),
        GfName::J => ("", Substitution::at_one(), cubic(["t", "3*t-1", "3*t-2", "t"])),
        GfName::Q => ("", Substitution::at_one(), cubic(["t", "4*t-1", "4*t-2", "t"])),
        GfName::K1 => {
            ("u", Substitution::symbolic(), radical("2*t*(1+u+u^2)-2*u", "u*(1-t-2*t*u)", "-u", MOTZKIN_RADICAND))
        }
        GfName::M => {
            let c1 = "(2-u-v-u*v+2*u^2*v)";
            let c2 = "(u*(-1+(2-u)*v+2*(u-1)*v^2))";
            let c3 = "(u^2*v*(-3+2*v-2*u*v))";
            let c4 = "(-2*u^3*v^2)";
            (
                "u,v",
                Substitution::symbolic(),
                radical(
                    "2*(1-u-t*u*(1-u)+t^2*u^2)*(1-u*v+t*u*v+t^2*u^2*v^2)",
                    &format!("((1-u)*v+{c1}*t+{c2}*t^2+{c3}*t^3+{c4}*t^4)*u^2*v"),
                    "-((1-u)*v+t*u+t^2*u^2*v)*u^2*v",
                    MOTZKIN_RADICAND,
                ),
            )
        }
        GfName::N => ("u,v", Substitution::symbolic(), rational("t*v*(1-t+t*u-t*u*v)", "(1-t*v)*(1-t-t*u*v)")),
        GfName::K2 => (
            "u,v",
            Substitution::symbolic(),
            rational("t*v*(1-(1+u+u*v)*t+(u^2+u*v+u^2*v)*t^2)", "(1-t-t*u)*(1-t-t*u*v)*(1-t*u*v)"),
        ),
        GfName::H => (
            "u,v",
            Substitution::symbolic(),
            rational("t*u^2*v*(1+(v-3)*t+(1+u-v-u*v+v^2)*t^2+u*v*(1-v)*t^3)", "(1-3*t+t^2)*(1-t*u)"),
        ),
        GfName::F => {
            let p1 = "(1-u)*v+(2-u-4*v+2*u*v+v^2+2*u^2*v-u*v^2)*t\
                +(-4+u+6*v+u*v-3*v^2-6*u^2*v+3*u^2*v^2)*t^2\
                +(2+u-4*v-5*u*v+3*v^2+4*u^2*v+4*u*v^2-4*u^2*v^2-2*u*v^3-2*u^3*v^2+2*u^2*v^3)*t^3\
                +(-u+v+4*u*v-v^2-4*u*v^2-u^2*v^2+2*u*v^3+2*u^3*v^2-2*u^3*v^3)*t^4\
                -u*v*(v-1)*(2*u*v-1)*t^5";
            let p2 = "(u-1)*v+((u-1)*v*(v-2)-u)*t+(u-v+v^2-u^2*v^2)*t^2+u*v*(1-v)*t^3";
            (
                "u,v",
                Substitution::symbolic(),
                radical(
                    "2*((1+t*u*v)^2-u*v-t-u*v*t^2)*(1+(u+t)*(t*u-1))",
                    &format!("u^2*v*({p1})"),
                    &format!("u^2*v*({p2})"),
                    F_RADICAND,
                ),
            )
        }
        GfName::P => ("", Substitution::at_one(), GfKind::Sum(SumFamily::P)),
        GfName::R => ("u", Substitution::v_at_one(), GfKind::Sum(SumFamily::R)),
        GfName::T => ("u", Substitution::v_at_one(), GfKind::Sum(SumFamily::T)),
    };
    GfSpec { name, variables, kind, natural }
}

pub fn registry() -> Vec<GfSpec> {
    GfName::ALL.into_iter().map(gf_spec).collect()
}

/// Expands the named generating function to order `N` under `sub`
/// (applied on top of the form's natural substitution).
///
/// Rational and radical forms are expanded by exact coefficient-wise
/// division, which also works when the denominator's constant term is a
/// polynomial in `u, v` or vanishes after substitution.
pub fn closed_form(name: GfName, order: usize, sub: &Substitution) -> Result<TruncatedSeries, SeriesError> {
    let spec = gf_spec(name);
    let sub = merge(&spec.natural, sub);
    match &spec.kind {
        GfKind::Rational { num, den } => {
            let den = sub.apply(den);
            let d = den.valuation().unwrap_or(0);
            solve_linear(&den, &TruncatedSeries::from_tripoly(&sub.apply(num), order + d))
        }
        GfKind::Radical(r) => r.substitute(&sub).expand(order),
        GfKind::Algebraic { coeffs } => {
            let coeffs: Vec<TriPoly> = coeffs.iter().map(|c| sub.apply(c)).collect();
            algebraic_root(&coeffs, order)
        }
        GfKind::Sum(family) => Ok(family.expand(&sub, order)),
    }
}

fn merge(base: &Substitution, extra: &Substitution) -> Substitution {
    Substitution { u: base.u.clone().or_else(|| extra.u.clone()), v: base.v.clone().or_else(|| extra.v.clone()) }
}

/// First nonzero coefficient of a residual series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    /// Power of `t` at which the residual is nonzero.
    pub order: usize,
    pub coefficient: Poly,
    /// Candidate coefficient implicated by this residual, when the residual
    /// depends on the candidate at all.
    pub implicated_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: GfName,
    pub holds: bool,
    /// Candidate coefficients `0..=checked_to` are covered.
    pub checked_to: usize,
    pub method: &'static str,
    pub residual: Option<Residual>,
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.residual {
            None => write!(f, "{}: holds to t^{} ({})", self.name, self.checked_to, self.method),
            Some(r) => {
                write!(f, "{}: FAILS ({}), residual {} at t^{}", self.name, self.method, r.coefficient, r.order)?;
                if let Some(k) = r.implicated_order {
                    write!(f, " (candidate coefficient t^{k})")?;
                }
                Ok(())
            }
        }
    }
}

fn first_nonzero(s: &TruncatedSeries, upto: usize) -> Option<(usize, Poly)> {
    (0..=upto.min(s.order())).find(|&k| !s.coeff(k).is_zero()).map(|k| (k, s.coeff(k).clone()))
}

/// Checks `candidate` against the named closed form without dividing by
/// anything: rational forms by `den * Y - num`, radical forms by isolating
/// and squaring the radical, algebraic forms by substitution into the
/// equation, and sum forms by comparison with the truncated sum.
///
/// The candidate is first specialized by the form's natural substitution.
pub fn verify_identity(name: GfName, candidate: &TruncatedSeries, order: usize) -> IdentityCheck {
    let spec = gf_spec(name);
    let n = order.min(candidate.order());
    let cand = candidate.substitute(&spec.natural).truncate(n);
    let finish = |method, residual: Option<Residual>| IdentityCheck {
        name,
        holds: residual.is_none(),
        checked_to: n,
        method,
        residual,
    };
    match &spec.kind {
        GfKind::Rational { num, den } => {
            let d = den.valuation().unwrap_or(0);
            let top = n + d;
            let lhs = TruncatedSeries::new(cand.coeffs().to_vec(), top).mul_tripoly(den);
            // `lhs` is exact through t^top because den has valuation d.
            let res = &lhs - &TruncatedSeries::from_tripoly(num, top);
            let residual = first_nonzero(&res, top).map(|(k, c)| Residual {
                order: k,
                coefficient: c,
                implicated_order: k.checked_sub(d),
            });
            finish("cross-multiplication", residual)
        }
        GfKind::Radical(r) => finish("squared radical", radical_residual(r, &cand, n)),
        GfKind::Algebraic { coeffs } => {
            let mut acc = TruncatedSeries::zero(n);
            for c in coeffs.iter().rev() {
                acc = &(&acc * &cand) + &TruncatedSeries::from_tripoly(c, n);
            }
            let residual =
                first_nonzero(&acc, n).map(|(k, c)| Residual { order: k, coefficient: c, implicated_order: Some(k) });
            finish("polynomial equation", residual)
        }
        GfKind::Sum(family) => {
            let diff = &cand - &family.expand(&spec.natural, n);
            let residual =
                first_nonzero(&diff, n).map(|(k, c)| Residual { order: k, coefficient: c, implicated_order: Some(k) });
            finish("truncated sum", residual)
        }
    }
}

/// Residual of `X^2 - c^2 * radicand` with `X = den * Y - rational`, after
/// removing the common power of `t` carried by the radical coefficient `c`.
/// The lowest term of `X` is also compared with that of `c` so that the
/// conjugate branch is rejected.
fn radical_residual(r: &RadicalForm, cand: &TruncatedSeries, n: usize) -> Option<Residual> {
    let d = r.den.valuation().unwrap_or(0);
    let vc = r.coefficient.valuation().unwrap_or(0);
    let top = n + d;
    let x = &TruncatedSeries::new(cand.coeffs().to_vec(), top).mul_tripoly(&r.den)
        - &TruncatedSeries::from_tripoly(&r.rational, top);
    if let Some((k, c)) = first_nonzero(&x, vc.saturating_sub(1)).filter(|(k, _)| *k < vc) {
        return Some(Residual { order: k, coefficient: c, implicated_order: k.checked_sub(d) });
    }
    if top < vc {
        return None;
    }
    let x = x.shift_down(vc).expect("low coefficients vanish");
    let c = TruncatedSeries::from_tripoly(&r.coefficient, top).shift_down(vc).expect("valuation");
    let branch = x.coeff(0) - c.coeff(0);
    if !branch.is_zero() {
        return Some(Residual { order: vc, coefficient: branch, implicated_order: vc.checked_sub(d) });
    }
    let rad = TruncatedSeries::from_tripoly(&r.radicand, x.order());
    let res = &(&x * &x) - &(&(&c * &c) * &rad);
    first_nonzero(&res, x.order()).map(|(k, coeff)| Residual {
        order: k + 2 * vc,
        coefficient: coeff,
        implicated_order: (k + vc).checked_sub(d),
    })
}

/// Direct comparison of `candidate` with the expanded closed form.
pub fn compare_with_closed_form(
    name: GfName,
    candidate: &TruncatedSeries,
    order: usize,
) -> Result<IdentityCheck, SeriesError> {
    let spec = gf_spec(name);
    let n = order.min(candidate.order());
    let expected = closed_form(name, n, &Substitution::symbolic())?;
    let diff = &candidate.substitute(&spec.natural).truncate(n) - &expected;
    let residual =
        first_nonzero(&diff, n).map(|(k, c)| Residual { order: k, coefficient: c, implicated_order: Some(k) });
    Ok(IdentityCheck { name, holds: residual.is_none(), checked_to: n, method: "direct expansion", residual })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;
    use crate::series::{formula_value, FormulaName};

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.totals().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
    }

    #[test]
    fn univariate_expansions() {
        let at1 = Substitution::at_one();
        assert_eq!(ints(&closed_form(GfName::D, 6, &at1).unwrap()), [0, 1, 1, 2, 4, 9, 21]);
        assert_eq!(ints(&closed_form(GfName::R, 7, &at1).unwrap()), [0, 1, 2, 4, 8, 19, 47, 125]);
        assert_eq!(ints(&closed_form(GfName::T, 7, &at1).unwrap()), [0, 1, 2, 5, 14, 42, 138, 492]);
        assert_eq!(ints(&closed_form(GfName::P, 6, &at1).unwrap()), [0, 1, 2, 4, 9, 23, 65]);
    }

    #[test]
    fn motzkin_shift() {
        let d = closed_form(GfName::D, 30, &Substitution::symbolic()).unwrap();
        for n in 1..=30 {
            assert_eq!(d.coeff(n).as_constant().unwrap().to_integer(), formula_value(FormulaName::Motzkin, n - 1));
        }
    }

    #[test]
    fn degenerate_denominators_at_one() {
        // Each of these has a denominator that vanishes at t = 0 once u = v = 1.
        let at1 = Substitution::at_one();
        let m = closed_form(GfName::M, 8, &at1).unwrap();
        let k1 = closed_form(GfName::K1, 8, &at1).unwrap();
        let f = closed_form(GfName::F, 8, &at1).unwrap();
        let motz: Vec<i64> = std::iter::once(0)
            .chain((1..=8).map(|n| i64::try_from(formula_value(FormulaName::Motzkin, n)).unwrap()))
            .collect();
        assert_eq!(ints(&m), motz);
        // (1) -> (1)(2); (r) -> (r-1)(r)(r+1)
        let mut level = vec![0i64, 1];
        let mut k1_counts = vec![0, 1];
        for _ in 2..=8 {
            let mut next = vec![0i64; level.len() + 1];
            for (r, &c) in level.iter().enumerate().skip(1) {
                let kids: &[usize] = if r == 1 { &[1, 2] } else { &[r - 1, r, r + 1] };
                for &j in kids {
                    next[j] += c;
                }
            }
            k1_counts.push(next.iter().sum());
            level = next;
        }
        assert_eq!(ints(&k1), k1_counts);
        assert_eq!(ints(&f)[..4], [0, 1, 2, 5]);
    }

    #[test]
    fn f_matches_its_univariate_form() {
        let printed = RadicalForm {
            den: tri("2*t^2"),
            rational: tri("1-2*t-t^2"),
            coefficient: tri("-1"),
            radicand: tri(F_RADICAND),
        };
        let want = printed.expand(20).unwrap();
        let got = closed_form(GfName::F, 20, &Substitution::at_one()).unwrap();
        assert_eq!(got, want);
        let sym = closed_form(GfName::F, 12, &Substitution::symbolic()).unwrap();
        assert_eq!(sym.substitute(&Substitution::at_one()), want.truncate(12));
    }

    #[test]
    fn symbolic_closed_forms_verify_themselves() {
        for name in GfName::ALL {
            let s = closed_form(name, 10, &Substitution::symbolic()).unwrap();
            assert!(s.coeffs().iter().all(Poly::is_counting), "{name}");
            let check = verify_identity(name, &s, 10);
            assert!(check.holds, "{check}");
            assert!(compare_with_closed_form(name, &s, 10).unwrap().holds);
        }
    }

    #[test]
    fn perturbation_is_located() {
        for name in [GfName::M, GfName::D, GfName::N, GfName::F, GfName::J, GfName::T] {
            let mut s = closed_form(name, 9, &Substitution::symbolic()).unwrap();
            let bumped = s.coeff(6) + &Poly::one();
            s.set_coeff(6, bumped);
            let check = verify_identity(name, &s, 9);
            assert!(!check.holds, "{name}");
            assert_eq!(check.residual.unwrap().implicated_order, Some(6), "{name}");
        }
    }

    #[test]
    fn conjugate_branch_is_rejected() {
        // X = -c * sqrt(radicand) squares to the same thing as the true branch.
        let form = RadicalForm {
            den: tri("1"),
            rational: TriPoly::zero(),
            coefficient: tri("1+u*t"),
            radicand: tri(MOTZKIN_RADICAND),
        };
        let good = form.expand(8).unwrap();
        assert_eq!(radical_residual(&form, &good, 8), None);
        let bad = -&good;
        let r = radical_residual(&form, &bad, 8).unwrap();
        assert_eq!((r.order, r.implicated_order), (0, Some(0)));
    }

    #[test]
    fn sum_terms_start_where_expected() {
        for family in [SumFamily::P, SumFamily::R, SumFamily::T] {
            for k in family.first_index()..6 {
                let s = family.term(k).expand(&Substitution::symbolic(), 15);
                assert_eq!(s.valuation(), Some(family.start_order(k)), "{family:?} {k}");
            }
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!("k2".parse::<GfName>().unwrap(), GfName::K2);
        assert!("Z".parse::<GfName>().is_err());
        assert_eq!(registry().len(), 12);
        let _ = BigInt::from(0);
    }
}
