//! Lattice paths over `{U, D, H}` or `{E, N}` and their kind predicates.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
    H,
    E,
    N,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Self::U => 'U',
            Self::D => 'D',
            Self::H => 'H',
            Self::E => 'E',
            Self::N => 'N',
        }
    }

    fn rise(self) -> i64 {
        match self {
            Self::U => 1,
            Self::D => -1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid step {found:?} at offset {offset}")]
pub struct PathParseError {
    pub offset: usize,
    pub found: char,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, s: Step) -> usize {
        self.steps.iter().filter(|&&x| x == s).count()
    }

    pub fn contains_factor(&self, factor: &[Step]) -> bool {
        self.steps.windows(factor.len()).any(|w| w == factor)
    }

    /// Height before each step, counting `U` as +1 and `D` as -1.
    pub fn heights(&self) -> Vec<i64> {
        heights(&self.steps)
    }
}

pub(crate) fn heights(steps: &[Step]) -> Vec<i64> {
    let mut h = 0;
    steps
        .iter()
        .map(|s| {
            let before = h;
            h += s.rise();
            before
        })
        .collect()
}

/// For each `D`, the index of its matching `U`, and vice versa; `None` for
/// unmatched steps and for steps other than `U`/`D`.
pub(crate) fn matching(steps: &[Step]) -> Vec<Option<usize>> {
    let mut out = vec![None; steps.len()];
    let mut stack = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        match s {
            Step::U => stack.push(i),
            Step::D => {
                if let Some(j) = stack.pop() {
                    out[i] = Some(j);
                    out[j] = Some(i);
                }
            }
            _ => {}
        }
    }
    out
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticePath({self})")
    }
}

impl FromStr for LatticePath {
    type Err = PathParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .trim()
            .chars()
            .enumerate()
            .map(|(offset, c)| match c.to_ascii_uppercase() {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                'H' => Ok(Step::H),
                'E' => Ok(Step::E),
                'N' => Ok(Step::N),
                _ => Err(PathParseError { offset, found: c }),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { steps })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathKind {
    Dyck,
    Motzkin,
    UduFree,
    UuuFree,
    DddFree,
    Subdiagonal,
}

fn is_bridge_prefix_safe(steps: &[Step], allow_h: bool) -> bool {
    let mut h = 0i64;
    for s in steps {
        match s {
            Step::U => h += 1,
            Step::D => h -= 1,
            Step::H if allow_h => {}
            _ => return false,
        }
        if h < 0 {
            return false;
        }
    }
    h == 0
}

/// Whether `path` satisfies the kind's defining condition. The factor-free
/// kinds test only for the factor; combine with `Dyck` as needed.
pub fn path_is(path: &LatticePath, kind: PathKind) -> bool {
    use Step::*;
    match kind {
        PathKind::Dyck => is_bridge_prefix_safe(&path.steps, false),
        PathKind::Motzkin => is_bridge_prefix_safe(&path.steps, true),
        PathKind::UduFree => !path.contains_factor(&[U, D, U]),
        PathKind::UuuFree => !path.contains_factor(&[U, U, U]),
        PathKind::DddFree => !path.contains_factor(&[D, D, D]),
        PathKind::Subdiagonal => {
            let (mut x, mut y) = (0usize, 0usize);
            for s in &path.steps {
                match s {
                    E => x += 1,
                    N => y += 1,
                    _ => return false,
                }
                if 2 * y > x {
                    return false;
                }
            }
            y == x / 2
        }
    }
}

/// Size of a path of the given kind: semilength for Dyck-type paths, number
/// of steps for Motzkin paths, number of `E` steps for subdiagonal paths.
pub fn path_size(path: &LatticePath, kind: PathKind) -> usize {
    match kind {
        PathKind::Dyck | PathKind::UduFree | PathKind::UuuFree | PathKind::DddFree => path.len() / 2,
        PathKind::Motzkin => path.len(),
        PathKind::Subdiagonal => path.count(Step::E),
    }
}

fn extend_all(prefix: &mut Vec<Step>, remaining: usize, height: i64, alphabet: &[Step], out: &mut Vec<LatticePath>) {
    if remaining == 0 {
        if height == 0 {
            out.push(LatticePath::new(prefix.clone()));
        }
        return;
    }
    for &s in alphabet {
        let h = height + s.rise();
        if h < 0 || h > remaining as i64 - 1 {
            continue;
        }
        prefix.push(s);
        extend_all(prefix, remaining - 1, h, alphabet, out);
        prefix.pop();
    }
}

/// All Dyck paths of semilength `n`, in lexicographic order of `D < U`.
pub fn dyck_paths(n: usize) -> Vec<LatticePath> {
    let mut out = Vec::new();
    extend_all(&mut Vec::new(), 2 * n, 0, &[Step::D, Step::U], &mut out);
    out
}

/// All Motzkin paths with `n` steps.
pub fn motzkin_paths(n: usize) -> Vec<LatticePath> {
    let mut out = Vec::new();
    extend_all(&mut Vec::new(), n, 0, &[Step::D, Step::H, Step::U], &mut out);
    out
}

/// All `{E, N}` paths from the origin to `(n, floor(n/2))` staying weakly below `y = x/2`.
pub fn subdiagonal_paths(n: usize) -> Vec<LatticePath> {
    fn go(x: usize, y: usize, n: usize, prefix: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        let target = n / 2;
        if x == n && y == target {
            out.push(LatticePath::new(prefix.clone()));
            return;
        }
        if x < n {
            prefix.push(Step::E);
            go(x + 1, y, n, prefix, out);
            prefix.pop();
        }
        if y < target && 2 * (y + 1) <= x {
            prefix.push(Step::N);
            go(x, y + 1, n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, 0, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn kind_examples() {
        assert!(!path_is(&p("UUDUDD"), PathKind::UduFree));
        assert!(path_is(&p("UUDD"), PathKind::Dyck));
        assert!(path_is(&p("EEN"), PathKind::Subdiagonal));
        assert!(!path_is(&p("ENE"), PathKind::Subdiagonal));
        assert!(path_is(&p("EEEN"), PathKind::Subdiagonal));
        assert!(!path_is(&p("EEENN"), PathKind::Subdiagonal));
        assert!(!path_is(&p("EEE"), PathKind::Subdiagonal));
        assert!(path_is(&p("UHD"), PathKind::Motzkin));
        assert!(!path_is(&p("UHD"), PathKind::Dyck));
        assert!(!path_is(&p("DU"), PathKind::Dyck));
        assert!(path_is(&p(""), PathKind::Dyck));
        assert!(!path_is(&p("UUUDDD"), PathKind::UuuFree));
        assert!(!path_is(&p("UUUDDD"), PathKind::DddFree));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("uudd").to_string(), "UUDD");
        assert_eq!("UXD".parse::<LatticePath>().unwrap_err().offset, 1);
    }

    #[test]
    fn matching_pairs() {
        let m = matching(p("UUDUDD").steps());
        assert_eq!(m, [Some(5), Some(2), Some(1), Some(4), Some(3), Some(0)]);
    }

    #[test]
    fn enumeration_counts() {
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        let motzkin = [1, 1, 2, 4, 9, 21, 51];
        for n in 0..7 {
            let d = dyck_paths(n);
            assert_eq!(d.len(), catalan[n]);
            assert!(d.iter().all(|x| path_is(x, PathKind::Dyck)));
            let m = motzkin_paths(n);
            assert_eq!(m.len(), motzkin[n]);
            assert!(m.iter().all(|x| path_is(x, PathKind::Motzkin)));
        }
        // ternary-tree style numbers 1, 1, 2, 3, 7, 12, 30
        let sub: Vec<usize> = (1..=7).map(|n| subdiagonal_paths(n).len()).collect();
        assert_eq!(sub, [1, 1, 2, 3, 7, 12, 30]);
        assert!(subdiagonal_paths(6).iter().all(|x| path_is(x, PathKind::Subdiagonal)));
    }
}
