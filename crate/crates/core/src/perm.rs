//! Permutations, the rightward child construction and the label statistics
//! used by the succession rules.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Longest permutation this crate will build.
pub const MAX_LEN: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("entries {0:?} are not a permutation of 1..=n")]
    NotAPermutation(Vec<u32>),
    #[error("permutation length {0} exceeds the supported maximum {MAX_LEN}")]
    TooLong(usize),
    #[error("appended value {value} out of range 1..={max}")]
    AppendOutOfRange { value: u32, max: u32 },
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// A permutation of `1..=n`, stored one byte per entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self, PermError> {
        let n = entries.len();
        if n > MAX_LEN {
            return Err(PermError::TooLong(n));
        }
        let mut seen = [false; MAX_LEN + 1];
        for &e in &entries {
            if e == 0 || e as usize > n || seen[e as usize] {
                return Err(PermError::NotAPermutation(entries));
            }
            seen[e as usize] = true;
        }
        Ok(Self { entries: entries.into_iter().map(|e| e as u8).collect() })
    }

    pub(crate) fn from_bytes_unchecked(entries: Vec<u8>) -> Self {
        debug_assert!(Self::new(entries.iter().map(|&e| e as u32).collect()).is_ok());
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        Self { entries: (1..=n as u8).collect() }
    }

    pub fn decreasing(n: usize) -> Self {
        Self { entries: (1..=n as u8).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.entries
    }

    /// Entry at 0-based position `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.entries[i] as u32
    }

    pub fn entries(&self) -> impl ExactSizeIterator<Item = u32> + '_ {
        self.entries.iter().map(|&e| e as u32)
    }

    pub fn last(&self) -> Option<u32> {
        self.entries.last().map(|&e| e as u32)
    }

    /// Appends `v` on the right, shifting every entry `>= v` up by one.
    pub fn append_child(&self, v: u32) -> Result<Self, PermError> {
        let n = self.entries.len();
        if v == 0 || v as usize > n + 1 {
            return Err(PermError::AppendOutOfRange { value: v, max: n as u32 + 1 });
        }
        if n + 1 > MAX_LEN {
            return Err(PermError::TooLong(n + 1));
        }
        let v = v as u8;
        let mut entries: Vec<u8> = self.entries.iter().map(|&e| if e >= v { e + 1 } else { e }).collect();
        entries.push(v);
        Ok(Self { entries })
    }

    /// Drops the last entry and relabels the rest to `1..=n-1`.
    pub fn remove_last(&self) -> Self {
        let Some((&last, rest)) = self.entries.split_last() else {
            return self.clone();
        };
        Self { entries: rest.iter().map(|&e| if e > last { e - 1 } else { e }).collect() }
    }

    pub fn statistic(&self, which: Stat) -> u32 {
        statistic(self, which)
    }

    /// `(position, value)` pairs of the right-to-left maxima, positions
    /// 1-based, left to right.
    pub fn right_to_left_maxima(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        let mut best = 0u8;
        for (i, &e) in self.entries.iter().enumerate().rev() {
            if e > best {
                best = e;
                out.push((i + 1, e as u32));
            }
        }
        out.reverse();
        out
    }

    pub fn is_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.len() <= 9 {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
        } else {
            for (i, e) in self.entries.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts the compact digit form (`24135`) or a comma-separated list.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PermError::Parse(s.to_string());
        let entries: Vec<u32> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse::<u32>().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        if entries.is_empty() {
            return Err(bad());
        }
        Self::new(entries)
    }
}

/// The permutation statistics that appear as node labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stat {
    /// Rightmost entry.
    R,
    /// Smallest top of an ascent; `n+1` on the decreasing permutation.
    L,
    /// Largest bottom of a descent; `0` on the increasing permutation.
    H,
    /// Largest bottom of an ascent; `0` on the decreasing permutation.
    S,
    /// Smallest entry with a smaller entry somewhere to its left; `n+1` on
    /// the decreasing permutation.
    M,
    /// The length itself.
    Len,
}

impl Stat {
    pub fn name(self) -> &'static str {
        match self {
            Stat::R => "r",
            Stat::L => "l",
            Stat::H => "h",
            Stat::S => "s",
            Stat::M => "m",
            Stat::Len => "n",
        }
    }
}

impl FromStr for Stat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "r" => Ok(Stat::R),
            "l" => Ok(Stat::L),
            "h" => Ok(Stat::H),
            "s" => Ok(Stat::S),
            "m" => Ok(Stat::M),
            "n" => Ok(Stat::Len),
            _ => Err(format!("unknown statistic {s:?}")),
        }
    }
}

pub fn statistic(perm: &Permutation, which: Stat) -> u32 {
    let e = &perm.entries;
    let n = e.len() as u32;
    match which {
        Stat::R => perm.last().unwrap_or(0),
        Stat::Len => n,
        Stat::L => e.windows(2).filter(|w| w[0] < w[1]).map(|w| w[1] as u32).min().unwrap_or(n + 1),
        Stat::H => e.windows(2).filter(|w| w[0] > w[1]).map(|w| w[1] as u32).max().unwrap_or(0),
        Stat::S => e.windows(2).filter(|w| w[0] < w[1]).map(|w| w[0] as u32).max().unwrap_or(0),
        Stat::M => {
            let mut prefix_min = u8::MAX;
            let mut best = n + 1;
            for &x in e {
                if prefix_min < x {
                    best = best.min(x as u32);
                }
                prefix_min = prefix_min.min(x);
            }
            best
        }
    }
}

/// A node label: one to three small integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    vals: [u32; 3],
    arity: u8,
}

impl Label {
    pub fn new(vals: &[u32]) -> Self {
        assert!((1..=3).contains(&vals.len()), "label arity must be 1..=3");
        let mut v = [0; 3];
        v[..vals.len()].copy_from_slice(vals);
        Self { vals: v, arity: vals.len() as u8 }
    }

    pub fn one(a: u32) -> Self {
        Self::new(&[a])
    }

    pub fn two(a: u32, b: u32) -> Self {
        Self::new(&[a, b])
    }

    pub fn three(a: u32, b: u32, c: u32) -> Self {
        Self::new(&[a, b, c])
    }

    pub fn of(perm: &Permutation, stats: &[Stat]) -> Self {
        let vals: Vec<u32> = stats.iter().map(|&s| statistic(perm, s)).collect();
        Self::new(&vals)
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn values(&self) -> &[u32] {
        &self.vals[..self.arity as usize]
    }

    pub fn get(&self, i: usize) -> u32 {
        self.values()[i]
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Calls `f` on every permutation of length `n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&Permutation)) {
    let mut p = Permutation::identity(n);
    loop {
        f(&p);
        if !next_permutation(&mut p.entries) {
            break;
        }
    }
}

pub(crate) fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn append_child_examples() {
        assert_eq!(p("24135").append_child(3).unwrap(), p("251463"));
        assert_eq!(p("1").append_child(2).unwrap(), p("12"));
        assert_eq!(p("21").append_child(1).unwrap(), p("321"));
        assert!(matches!(p("21").append_child(4), Err(PermError::AppendOutOfRange { .. })));
        assert!(p("21").append_child(0).is_err());
    }

    #[test]
    fn append_then_remove_is_identity() {
        for n in 1..=6 {
            for_each_permutation(n, |q| {
                for v in 1..=n as u32 + 1 {
                    let c = q.append_child(v).unwrap();
                    assert_eq!(c.last(), Some(v));
                    assert_eq!(&c.remove_last(), q);
                }
            });
        }
    }

    #[test]
    fn statistic_conventions() {
        for n in 1..=7 {
            let dec = Permutation::decreasing(n);
            let inc = Permutation::identity(n);
            assert_eq!(dec.statistic(Stat::L), n as u32 + 1);
            assert_eq!(dec.statistic(Stat::M), n as u32 + 1);
            assert_eq!(dec.statistic(Stat::S), 0);
            assert_eq!(inc.statistic(Stat::H), 0);
        }
        let q = p("24135");
        assert_eq!(q.statistic(Stat::R), 5);
        assert_eq!(q.statistic(Stat::S), 3);
        assert_eq!(q.statistic(Stat::L), 3);
        assert_eq!(q.statistic(Stat::H), 1);
        assert_eq!(q.statistic(Stat::M), 3);
        assert_eq!(q.statistic(Stat::Len), 5);
    }

    #[test]
    fn maxima() {
        assert_eq!(p("4675123").right_to_left_maxima(), vec![(3, 7), (4, 5), (7, 3)]);
        assert_eq!(Permutation::identity(5).right_to_left_maxima(), vec![(5, 5)]);
        let d: Vec<_> = (1..=5).map(|i| (i, 6 - i as u32)).collect();
        assert_eq!(Permutation::decreasing(5).right_to_left_maxima(), d);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("24135").to_string(), "24135");
        let long: Permutation = "10,2,1,3,4,5,6,7,8,9".parse().unwrap();
        assert_eq!(long.len(), 10);
        assert_eq!(long.to_string(), "10,2,1,3,4,5,6,7,8,9");
        assert_eq!("2,1".parse::<Permutation>().unwrap(), p("21"));
        assert!("113".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("1a".parse::<Permutation>().is_err());
    }

    #[test]
    fn enumeration_counts() {
        let mut c = 0;
        for_each_permutation(5, |_| c += 1);
        assert_eq!(c, 120);
        let mut one = Vec::new();
        for_each_permutation(1, |q| one.push(q.clone()));
        assert_eq!(one, vec![p("1")]);
    }
}
