//! Generalized (dashed) patterns, barred patterns with a parity mode, and
//! matching against permutations.
//!
//! Patterns are written in a small ASCII language: digits are letters,
//! a `-` between two letters allows a gap, no separator forces the two
//! letters into adjacent positions, and one end letter may be barred as
//! `[d]`, `[do]` (odd number of witnesses) or `[de]` (even number).

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct PatternError {
    pub offset: usize,
    pub kind: PatternErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of pattern")]
    UnexpectedEnd,
    #[error("more than one barred letter")]
    MultipleBars,
    #[error("letters are not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("barred letter must sit at an end, separated by a dash")]
    BarPlacement,
    #[error("pattern is too short to carry a barred letter")]
    BarTooShort,
    #[error("empty pattern")]
    Empty,
    #[error("occurrence does not match the reduced pattern")]
    NotAnOccurrence,
}

fn err(offset: usize, kind: PatternErrorKind) -> PatternError {
    PatternError { offset, kind }
}

/// Letters `σ_1..σ_k` plus one adjacency flag between each neighbouring
/// pair (`true` = the two letters must occupy consecutive positions).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedPattern {
    letters: Vec<u8>,
    adjacency: Vec<bool>,
}

impl GeneralizedPattern {
    pub fn new(letters: Vec<u8>, adjacency: Vec<bool>) -> Result<Self, PatternError> {
        let k = letters.len();
        if k == 0 {
            return Err(err(0, PatternErrorKind::Empty));
        }
        if adjacency.len() != k - 1 || !is_permutation(&letters) {
            return Err(err(0, PatternErrorKind::NotAPermutation(k)));
        }
        Ok(Self { letters, adjacency })
    }

    /// A classical pattern: every pair separated by a dash.
    pub fn classical(letters: &[u8]) -> Result<Self, PatternError> {
        Self::new(letters.to_vec(), vec![false; letters.len().saturating_sub(1)])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn adjacency(&self) -> &[bool] {
        &self.adjacency
    }

    /// Every occurrence as a tuple of 0-based positions, in lexicographic
    /// order.
    pub fn occurrences(&self, perm: &Permutation) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let _ = self.search(perm, |occ| {
            out.push(occ.to_vec());
            ControlFlow::<()>::Continue(())
        });
        out
    }

    pub fn is_contained_in(&self, perm: &Permutation) -> bool {
        self.search(perm, |_| ControlFlow::Break(())).is_break()
    }

    /// Backtracking over increasing position tuples; adjacency pins the next
    /// position, and order-isomorphism is checked letter by letter.
    pub fn search<B>(&self, perm: &Permutation, mut visit: impl FnMut(&[usize]) -> ControlFlow<B>) -> ControlFlow<B> {
        let k = self.letters.len();
        let n = perm.len();
        if k > n {
            return ControlFlow::Continue(());
        }
        let mut pos = Vec::with_capacity(k);
        self.extend(perm.as_bytes(), &mut pos, &mut visit)
    }

    fn extend<B>(
        &self,
        vals: &[u8],
        pos: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let j = pos.len();
        let k = self.letters.len();
        if j == k {
            return visit(pos);
        }
        let n = vals.len();
        let (lo, hi) = match j {
            0 => (0, n - k),
            _ if self.adjacency[j - 1] => (pos[j - 1] + 1, pos[j - 1] + 1),
            _ => (pos[j - 1] + 1, n - (k - j)),
        };
        for i in lo..=hi.min(n.saturating_sub(1)) {
            let fits = (0..j).all(|a| (vals[pos[a]] < vals[i]) == (self.letters[a] < self.letters[j]));
            if fits {
                pos.push(i);
                self.extend(vals, pos, visit)?;
                pos.pop();
            }
        }
        ControlFlow::Continue(())
    }

    /// Whether the values at `positions` are order-isomorphic to the letters
    /// and respect adjacency.
    pub fn matches_at(&self, perm: &Permutation, positions: &[usize]) -> bool {
        let k = self.letters.len();
        if positions.len() != k || positions.iter().any(|&p| p >= perm.len()) {
            return false;
        }
        for j in 1..k {
            if positions[j] <= positions[j - 1] {
                return false;
            }
            if self.adjacency[j - 1] && positions[j] != positions[j - 1] + 1 {
                return false;
            }
        }
        let v = perm.as_bytes();
        (0..k).all(|a| (0..k).all(|b| (v[positions[a]] < v[positions[b]]) == (self.letters[a] < self.letters[b])))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BarMode {
    /// At least one witness.
    Exists,
    OddCount,
    /// Zero witnesses counts as even.
    EvenCount,
}

impl BarMode {
    pub fn accepts(self, witnesses: usize) -> bool {
        match self {
            BarMode::Exists => witnesses >= 1,
            BarMode::OddCount => witnesses % 2 == 1,
            BarMode::EvenCount => witnesses.is_multiple_of(2),
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            BarMode::Exists => "",
            BarMode::OddCount => "o",
            BarMode::EvenCount => "e",
        }
    }
}

/// A pattern with one barred end letter. A permutation avoids it when every
/// occurrence of the reduced pattern has a witness count accepted by `mode`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarredPattern {
    full: GeneralizedPattern,
    barred_index: usize,
    mode: BarMode,
    reduced: GeneralizedPattern,
}

impl BarredPattern {
    pub fn new(full: GeneralizedPattern, barred_index: usize, mode: BarMode) -> Result<Self, PatternError> {
        let k = full.len();
        if k < 2 {
            return Err(err(0, PatternErrorKind::BarTooShort));
        }
        let dash_ok = if barred_index == 0 {
            !full.adjacency[0]
        } else if barred_index == k - 1 {
            !full.adjacency[k - 2]
        } else {
            false
        };
        if !dash_ok {
            return Err(err(0, PatternErrorKind::BarPlacement));
        }
        let removed = full.letters[barred_index];
        let letters: Vec<u8> = full
            .letters
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != barred_index)
            .map(|(_, &l)| if l > removed { l - 1 } else { l })
            .collect();
        let adjacency = if barred_index == 0 { full.adjacency[1..].to_vec() } else { full.adjacency[..k - 2].to_vec() };
        let reduced = GeneralizedPattern::new(letters, adjacency)?;
        Ok(Self { full, barred_index, mode, reduced })
    }

    pub fn full(&self) -> &GeneralizedPattern {
        &self.full
    }

    pub fn barred_index(&self) -> usize {
        self.barred_index
    }

    pub fn mode(&self) -> BarMode {
        self.mode
    }

    /// The pattern with the barred letter removed and letters relabeled.
    pub fn reduced(&self) -> &GeneralizedPattern {
        &self.reduced
    }

    /// True when witnesses always lie to the left of the reduced occurrence,
    /// so deleting the last entry of a permutation cannot break avoidance.
    pub fn bar_on_left(&self) -> bool {
        self.barred_index == 0
    }

    /// Number of positions that complete `occ` (an occurrence of the reduced
    /// pattern) to an occurrence of the full pattern.
    pub fn count_extensions(&self, perm: &Permutation, occ: &[usize]) -> Result<usize, PatternError> {
        if !self.reduced.matches_at(perm, occ) {
            return Err(err(0, PatternErrorKind::NotAnOccurrence));
        }
        Ok(self.count_unchecked(perm, occ))
    }

    fn count_unchecked(&self, perm: &Permutation, occ: &[usize]) -> usize {
        let k = self.full.len();
        let mut slots = vec![0usize; k];
        let candidates = if self.barred_index == 0 { 0..occ[0] } else { occ[occ.len() - 1] + 1..perm.len() };
        let mut count = 0;
        for p in candidates {
            let mut rest = occ.iter();
            for (i, s) in slots.iter_mut().enumerate() {
                *s = if i == self.barred_index { p } else { *rest.next().unwrap() };
            }
            if self.full.matches_at(perm, &slots) {
                count += 1;
            }
        }
        count
    }

    pub fn is_avoided_by(&self, perm: &Permutation) -> bool {
        self.reduced
            .search(perm, |occ| {
                if self.mode.accepts(self.count_unchecked(perm, occ)) {
                    ControlFlow::Continue(())
                } else {
                    ControlFlow::Break(())
                }
            })
            .is_continue()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternExpr {
    Plain(GeneralizedPattern),
    Barred(BarredPattern),
}

impl PatternExpr {
    pub fn is_avoided_by(&self, perm: &Permutation) -> bool {
        match self {
            PatternExpr::Plain(p) => !p.is_contained_in(perm),
            PatternExpr::Barred(b) => b.is_avoided_by(perm),
        }
    }
}

impl FromStr for PatternExpr {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pattern(s)
    }
}

impl fmt::Display for PatternExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pat, bar) = match self {
            PatternExpr::Plain(p) => (p, None),
            PatternExpr::Barred(b) => (&b.full, Some((b.barred_index, b.mode))),
        };
        for (i, &l) in pat.letters.iter().enumerate() {
            if i > 0 && !pat.adjacency[i - 1] {
                f.write_str("-")?;
            }
            match bar {
                Some((bi, mode)) if bi == i => write!(f, "[{l}{}]", mode.suffix())?,
                _ => write!(f, "{l}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PatternExpr::Plain(self.clone()).fmt(f)
    }
}

impl fmt::Display for BarredPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PatternExpr::Barred(self.clone()).fmt(f)
    }
}

/// Parses one pattern in the DSL (`12-4-3`, `[2o]-31`, ...).
pub fn parse_pattern(text: &str) -> Result<PatternExpr, PatternError> {
    let bytes = text.as_bytes();
    let mut letters = Vec::new();
    let mut adjacency = Vec::new();
    let mut bar: Option<(usize, BarMode, usize)> = None;
    let mut i = 0;
    let mut pending_dash = false;

    let digit_at = |i: usize| -> Result<u8, PatternError> {
        match bytes.get(i) {
            Some(&c @ b'1'..=b'9') => Ok(c - b'0'),
            Some(&c) => Err(err(i, PatternErrorKind::UnexpectedChar(c as char))),
            None => Err(err(i, PatternErrorKind::UnexpectedEnd)),
        }
    };

    loop {
        if !letters.is_empty() {
            adjacency.push(!pending_dash);
        }
        pending_dash = false;
        match bytes.get(i) {
            Some(b'[') => {
                let start = i;
                if bar.is_some() {
                    return Err(err(i, PatternErrorKind::MultipleBars));
                }
                letters.push(digit_at(i + 1)?);
                i += 2;
                let mode = match bytes.get(i) {
                    Some(b'o') => {
                        i += 1;
                        BarMode::OddCount
                    }
                    Some(b'e') => {
                        i += 1;
                        BarMode::EvenCount
                    }
                    _ => BarMode::Exists,
                };
                match bytes.get(i) {
                    Some(b']') => i += 1,
                    Some(&c) => return Err(err(i, PatternErrorKind::UnexpectedChar(c as char))),
                    None => return Err(err(i, PatternErrorKind::UnexpectedEnd)),
                }
                bar = Some((letters.len() - 1, mode, start));
            }
            _ => {
                letters.push(digit_at(i)?);
                i += 1;
            }
        }
        match bytes.get(i) {
            None => break,
            Some(b'-') => {
                pending_dash = true;
                i += 1;
                if i == bytes.len() {
                    return Err(err(i, PatternErrorKind::UnexpectedEnd));
                }
            }
            Some(b'1'..=b'9') | Some(b'[') => {}
            Some(&c) => return Err(err(i, PatternErrorKind::UnexpectedChar(c as char))),
        }
    }

    if !is_permutation(&letters) {
        return Err(err(0, PatternErrorKind::NotAPermutation(letters.len())));
    }
    let full = GeneralizedPattern { letters, adjacency };
    match bar {
        None => Ok(PatternExpr::Plain(full)),
        Some((index, mode, offset)) => {
            BarredPattern::new(full, index, mode).map(PatternExpr::Barred).map_err(|e| err(offset, e.kind))
        }
    }
}

fn is_permutation(letters: &[u8]) -> bool {
    let k = letters.len();
    let mut seen = [false; 10];
    k <= 9
        && letters.iter().all(|&l| {
            let ok = l >= 1 && (l as usize) <= k && !seen[l as usize];
            if ok {
                seen[l as usize] = true;
            }
            ok
        })
}

/// A collection of patterns that a permutation must avoid simultaneously.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PatternSet(Vec<PatternExpr>);

impl PatternSet {
    pub fn new(patterns: Vec<PatternExpr>) -> Self {
        Self(patterns)
    }

    pub fn patterns(&self) -> &[PatternExpr] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn avoided_by(&self, perm: &Permutation) -> bool {
        avoids(perm, self)
    }

    /// Canonical sorted rendering; two sets with the same members compare
    /// equal under this key regardless of order.
    pub fn canonical_key(&self) -> Vec<String> {
        let mut v: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Whether avoidance is provably preserved by deleting the last entry:
    /// plain patterns always are, barred ones when the bar is on the left.
    pub fn closed_under_last_deletion(&self) -> bool {
        self.0.iter().all(|p| match p {
            PatternExpr::Plain(_) => true,
            PatternExpr::Barred(b) => b.bar_on_left(),
        })
    }
}

impl FromStr for PatternSet {
    type Err = PatternError;

    /// Comma-separated patterns; offsets in errors refer to the whole string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        let mut base = 0;
        for part in s.split(',') {
            let lead = part.len() - part.trim_start().len();
            let p = parse_pattern(part.trim()).map_err(|e| err(e.offset + base + lead, e.kind))?;
            out.push(p);
            base += part.len() + 1;
        }
        Ok(Self(out))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Occurrences of `pat` in `perm` as 0-based position tuples.
pub fn occurrences(perm: &Permutation, pat: &GeneralizedPattern) -> Vec<Vec<usize>> {
    pat.occurrences(perm)
}

pub fn count_extensions(perm: &Permutation, pat: &BarredPattern, occ: &[usize]) -> Result<usize, PatternError> {
    pat.count_extensions(perm, occ)
}

pub fn avoids(perm: &Permutation, pats: &PatternSet) -> bool {
    pats.0.iter().all(|p| p.is_avoided_by(perm))
}
