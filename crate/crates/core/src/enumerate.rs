//! Ground-truth counting: brute force over `S_n`, the pruned rightward
//! generating tree, and counts refined by a pair of statistics.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::pattern::{avoids, PatternSet};
use crate::perm::{next_permutation, Permutation, Stat};
use crate::series::Poly;

pub const DEFAULT_BRUTE_GUARD: usize = 10;

/// Exhaustive closure check depth for pattern sets that are not closed
/// under last-entry deletion by construction.
pub const CLOSURE_CHECK_DEPTH: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("brute force limited to n <= {guard}, asked for n = {n}")]
    AboveGuard { n: usize, guard: usize },
    #[error("class is not closed under deleting the last entry: {perm} avoids but {parent} does not")]
    NotClosed { perm: Permutation, parent: Permutation },
    #[error("length {0} exceeds the supported maximum")]
    TooLong(usize),
}

/// Number of permutations of length `n` avoiding `pats`, by filtering all of `S_n`.
pub fn count_brute(pats: &PatternSet, n: usize) -> Result<BigInt, EnumError> {
    count_brute_with_guard(pats, n, DEFAULT_BRUTE_GUARD)
}

pub fn count_brute_with_guard(pats: &PatternSet, n: usize, guard: usize) -> Result<BigInt, EnumError> {
    if n > guard {
        return Err(EnumError::AboveGuard { n, guard });
    }
    Ok(BigInt::from(brute_avoiders_count(pats, n)))
}

/// Every permutation of length `n` avoiding `pats`, in lexicographic order.
pub fn brute_avoiders(pats: &PatternSet, n: usize) -> Vec<Permutation> {
    split_by_first_entry(n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            for_each_with_first(n, first, |p| {
                if avoids(p, pats) {
                    out.push(p.clone());
                }
            });
            out
        })
        .collect()
}

fn brute_avoiders_count(pats: &PatternSet, n: usize) -> u64 {
    split_by_first_entry(n)
        .into_par_iter()
        .map(|first| {
            let mut count = 0u64;
            for_each_with_first(n, first, |p| count += u64::from(avoids(p, pats)));
            count
        })
        .sum()
}

fn split_by_first_entry(n: usize) -> Vec<u8> {
    if n == 0 {
        return Vec::new();
    }
    (1..=n as u8).collect()
}

fn for_each_with_first(n: usize, first: u8, mut f: impl FnMut(&Permutation)) {
    let mut entries: Vec<u8> = std::iter::once(first).chain((1..=n as u8).filter(|&e| e != first)).collect();
    loop {
        f(&Permutation::from_bytes_unchecked(entries.clone()));
        if !next_permutation(&mut entries[1..]) {
            break;
        }
    }
}

/// Children of `perm` in the rightward tree of the class: `append_child(perm, v)`
/// for `v = 1..=n+1`, kept when they avoid `pats`.
pub fn tree_children(pats: &PatternSet, perm: &Permutation) -> Vec<Permutation> {
    (1..=perm.len() as u32 + 1).filter_map(|v| perm.append_child(v).ok()).filter(|c| avoids(c, pats)).collect()
}

/// Checks that deleting the last entry keeps every avoider an avoider.
/// Sets that are closed by construction pass immediately; otherwise all
/// avoiders up to `min(nmax, CLOSURE_CHECK_DEPTH)` are examined.
pub fn check_closure(pats: &PatternSet, nmax: usize) -> Result<(), EnumError> {
    if pats.closed_under_last_deletion() {
        return Ok(());
    }
    for n in 2..=nmax.min(CLOSURE_CHECK_DEPTH) {
        for perm in brute_avoiders(pats, n) {
            let parent = perm.remove_last();
            if !avoids(&parent, pats) {
                return Err(EnumError::NotClosed { perm, parent });
            }
        }
    }
    Ok(())
}

/// The avoiders of each length `1..=nmax`, grown level by level.
///
/// `visit` sees every level; only the current level is kept.
pub fn walk_tree(
    pats: &PatternSet,
    nmax: usize,
    mut visit: impl FnMut(usize, &[Permutation]),
) -> Result<(), EnumError> {
    if nmax > crate::perm::MAX_LEN {
        return Err(EnumError::TooLong(nmax));
    }
    check_closure(pats, nmax)?;
    if nmax == 0 {
        return Ok(());
    }
    let mut level = vec![Permutation::identity(1)];
    visit(1, &level);
    for n in 2..=nmax {
        level = level.par_iter().flat_map_iter(|p| tree_children(pats, p)).collect();
        visit(n, &level);
    }
    Ok(())
}

/// Level sizes of the rightward generating tree, lengths `1..=nmax`.
pub fn count_tree(pats: &PatternSet, nmax: usize) -> Result<Vec<BigInt>, EnumError> {
    if nmax > crate::perm::MAX_LEN {
        return Err(EnumError::TooLong(nmax));
    }
    check_closure(pats, nmax)?;
    let mut out = Vec::with_capacity(nmax);
    if nmax == 0 {
        return Ok(out);
    }
    let mut level = vec![Permutation::identity(1)];
    out.push(BigInt::one());
    for n in 2..=nmax {
        if n == nmax {
            // the last level is counted, not stored
            let count: u64 = level.par_iter().map(|p| tree_children(pats, p).len() as u64).sum();
            out.push(count.into());
            break;
        }
        level = level.par_iter().flat_map_iter(|p| tree_children(pats, p)).collect();
        out.push(level.len().into());
    }
    Ok(out)
}

/// Restricts which permutations contribute to a refined count, in terms of
/// the `u`-statistic `a` and the `v`-statistic `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RefinedFilter {
    #[default]
    None,
    UGreater,
    ULess,
    UEqual,
    VIsOne,
    /// `a < b != 1`
    Theta1,
    /// `(a, b) = (0, 1)`
    Theta2,
    /// `a > b = 1`
    Theta3,
    /// `a > b > 1`
    Theta4,
}

impl RefinedFilter {
    pub const THETAS: [RefinedFilter; 4] = [Self::Theta1, Self::Theta2, Self::Theta3, Self::Theta4];

    pub fn accepts(self, a: u32, b: u32) -> bool {
        match self {
            Self::None => true,
            Self::UGreater => a > b,
            Self::ULess => a < b,
            Self::UEqual => a == b,
            Self::VIsOne => b == 1,
            Self::Theta1 => a < b && b != 1,
            Self::Theta2 => (a, b) == (0, 1),
            Self::Theta3 => a > b && b == 1,
            Self::Theta4 => a > b && b > 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::UGreater => "u>v",
            Self::ULess => "u<v",
            Self::UEqual => "u=v",
            Self::VIsOne => "v=1",
            Self::Theta1 => "theta1",
            Self::Theta2 => "theta2",
            Self::Theta3 => "theta3",
            Self::Theta4 => "theta4",
        }
    }
}

impl fmt::Display for RefinedFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RefinedFilter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [
            Self::None,
            Self::UGreater,
            Self::ULess,
            Self::UEqual,
            Self::VIsOne,
            Self::Theta1,
            Self::Theta2,
            Self::Theta3,
            Self::Theta4,
        ]
        .into_iter()
        .find(|f| f.name() == s)
        .ok_or_else(|| format!("unknown filter `{s}`"))
    }
}

/// Sum of `u^a v^b` over the avoiders of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedCount {
    pub n: usize,
    pub poly: Poly,
}

impl RefinedCount {
    pub fn total(&self) -> BigInt {
        self.poly.sum_coeffs().to_integer()
    }
}

/// Refined counts by tree expansion. With a single statistic the
/// polynomial is in `u` alone and the filter compares against `b = 0`.
pub fn refined_series(
    pats: &PatternSet,
    stats: (Stat, Option<Stat>),
    filter: RefinedFilter,
    nmax: usize,
) -> Result<Vec<RefinedCount>, EnumError> {
    let mut out = Vec::with_capacity(nmax);
    walk_tree(pats, nmax, |n, level| {
        let mut poly = Poly::zero();
        for p in level {
            let a = p.statistic(stats.0);
            let b = stats.1.map_or(0, |s| p.statistic(s));
            if filter.accepts(a, b) {
                poly.add_term(a, b, BigRational::one());
            }
        }
        out.push(RefinedCount { n, poly });
    })?;
    Ok(out)
}

/// Assembles per-length polynomials into the coefficients of a series in `t`
/// (index 0 is the empty constant term).
pub fn refined_to_coeffs(counts: &[RefinedCount]) -> Vec<Poly> {
    let mut coeffs = vec![Poly::zero(); counts.iter().map(|c| c.n).max().unwrap_or(0) + 1];
    for c in counts {
        coeffs[c.n] = c.poly.clone();
    }
    coeffs
}

/// Counts avoiders of length `n` by growing every permutation without
/// pruning and filtering only at the end. Exponentially slower than
/// `count_tree`; used to confirm that pruning loses nothing.
pub fn count_unpruned(pats: &PatternSet, n: usize) -> BigInt {
    let mut level = vec![Permutation::identity(1)];
    for _ in 2..=n {
        level = level.iter().flat_map(|p| (1..=p.len() as u32 + 1).filter_map(|v| p.append_child(v).ok())).collect();
    }
    if n == 0 {
        return BigInt::zero();
    }
    BigInt::from(level.iter().filter(|p| avoids(p, pats)).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::for_each_permutation;

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn small(v: &[BigInt]) -> Vec<u64> {
        v.iter().map(|x| u64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(count_brute(&set("2-1-3,[2]-31"), 4).unwrap(), 4.into());
        assert_eq!(count_brute(&set("1-23,3-12,34-21"), 5).unwrap(), 19.into());
        for s in ["12", "2-1-3,[2]-31", "1-23,34-21"] {
            assert_eq!(count_brute(&set(s), 1).unwrap(), 1.into());
        }
        assert!(matches!(count_brute(&set("12"), 11), Err(EnumError::AboveGuard { n: 11, guard: 10 })));
    }

    #[test]
    fn brute_force_visits_every_permutation_once() {
        let all = brute_avoiders(&PatternSet::default(), 5);
        let mut expected = Vec::new();
        for_each_permutation(5, |p| expected.push(p.clone()));
        assert_eq!(all, expected);
    }

    #[test]
    fn tree_examples() {
        assert_eq!(small(&count_tree(&set("2-1-3,32-1"), 5).unwrap()), [1, 2, 4, 8, 16]);
        assert_eq!(small(&count_tree(&set("2-1-3,34-21"), 4).unwrap()), [1, 2, 5, 13]);
        assert_eq!(small(&count_tree(&set("1-23,34-21"), 7).unwrap()), [1, 2, 5, 14, 42, 138, 492]);
    }

    #[test]
    fn pruning_loses_nothing() {
        for s in ["2-1-3,[2]-31", "1-23,3-12", "12-34,2-1-3", "2-1-3,[2e]-31"] {
            let tree = count_tree(&set(s), 6).unwrap();
            for n in 1..=6 {
                assert_eq!(tree[n - 1], count_unpruned(&set(s), n), "{s} n={n}");
            }
        }
    }

    #[test]
    fn unclosed_sets_are_reported() {
        // a right-barred pattern: 312 avoids 31-[2] but its parent 21 does not
        let err = count_tree(&set("31-[2]"), 4).unwrap_err();
        assert!(matches!(err, EnumError::NotClosed { .. }), "{err}");
    }

    #[test]
    fn refined_examples() {
        let m = refined_series(&set("2-1-3,12-3"), (Stat::L, Some(Stat::R)), RefinedFilter::None, 1).unwrap();
        assert_eq!(m[0].poly, Poly::monomial(BigRational::one(), 2, 1));
        let n = refined_series(&set("2-1-3,32-1"), (Stat::H, Some(Stat::R)), RefinedFilter::None, 1).unwrap();
        assert_eq!(n[0].poly, Poly::v());
        let pats = set("1-23,3-12,34-21");
        let theta1 = refined_series(&pats, (Stat::S, Some(Stat::R)), RefinedFilter::Theta1, 2).unwrap();
        assert_eq!(theta1[1].poly, Poly::monomial(BigRational::one(), 1, 2));
        // the literal comparison also admits 21 with (s, r) = (0, 1)
        let less = refined_series(&pats, (Stat::S, Some(Stat::R)), RefinedFilter::ULess, 2).unwrap();
        assert_eq!(less[1].poly, &Poly::monomial(BigRational::one(), 1, 2) + &Poly::v());
    }

    #[test]
    fn theta_filters_partition() {
        for s in ["1-23,3-12,34-21", "1-23,34-21"] {
            let pats = set(s);
            let stats = (Stat::S, Some(Stat::R));
            let total = refined_series(&pats, stats, RefinedFilter::None, 7).unwrap();
            let mut sum = vec![Poly::zero(); 7];
            for f in RefinedFilter::THETAS {
                for (i, rc) in refined_series(&pats, stats, f, 7).unwrap().iter().enumerate() {
                    sum[i] += &rc.poly;
                }
            }
            for (i, rc) in total.iter().enumerate() {
                assert_eq!(sum[i], rc.poly, "{s} n={}", rc.n);
            }
        }
    }

    #[test]
    fn filter_names_round_trip() {
        for f in RefinedFilter::THETAS.into_iter().chain([RefinedFilter::None, RefinedFilter::UEqual]) {
            assert_eq!(f.name().parse::<RefinedFilter>().unwrap(), f);
        }
    }
}
