//! Bijections between pattern classes and lattice paths: `phi` (2-1-3
//! avoiders and Dyck paths), Callan's map (UDU-free Dyck paths and Motzkin
//! paths), the UDU-free to UUU-free correspondence, and `subdiag`
//! (an odd-barred class and paths below `y = x/2`).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::paths::{heights, matching, path_is, LatticePath, PathKind, Step};
use crate::pattern::{avoids, PatternSet};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("input rejected: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("cannot parse input: {0}")]
    Parse(String),
}

fn pre(msg: impl Into<String>) -> BijectionError {
    BijectionError::Precondition(msg.into())
}

fn set(text: &str) -> PatternSet {
    text.parse().expect("literal pattern set")
}

fn repeat(out: &mut Vec<Step>, s: Step, k: usize) {
    out.extend(std::iter::repeat_n(s, k));
}

/// Right-to-left maxima of a 2-1-3 avoider as Dyck path:
/// `U^{i_1} D^{v_1 - v_2} U^{i_2 - i_1} ... U^{i_m - i_{m-1}} D^{v_m}`.
pub fn phi(perm: &Permutation) -> Result<LatticePath, BijectionError> {
    if !avoids(perm, &set("2-1-3")) {
        return Err(pre(format!("{perm} contains 2-1-3")));
    }
    let maxima = perm.right_to_left_maxima();
    let mut steps = Vec::with_capacity(2 * perm.len());
    let mut prev_pos = 0;
    for (j, &(pos, val)) in maxima.iter().enumerate() {
        let next_val = maxima.get(j + 1).map_or(0, |m| m.1);
        repeat(&mut steps, Step::U, pos - prev_pos);
        repeat(&mut steps, Step::D, (val - next_val) as usize);
        prev_pos = pos;
    }
    Ok(LatticePath::new(steps))
}

/// Splits a path into `(first_run, second_run)` blocks, e.g. `U^a D^b`.
fn blocks(steps: &[Step], first: Step, second: Step) -> Option<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < steps.len() {
        let start = i;
        while i < steps.len() && steps[i] == first {
            i += 1;
        }
        let a = i - start;
        let mid = i;
        while i < steps.len() && steps[i] == second {
            i += 1;
        }
        let b = i - mid;
        if a == 0 || (i < steps.len() && steps[i] != first) {
            return None;
        }
        out.push((a, b));
    }
    Some(out)
}

/// Builds the 2-1-3 avoider with right-to-left maxima `values` at the
/// 1-based `positions`: every other entry is the largest unused value below
/// the nearest maximum to its right.
fn fill_from_maxima(n: usize, positions: &[usize], values: &[u32]) -> Option<Permutation> {
    let mut entries = vec![0u32; n];
    let mut used = vec![false; n + 2];
    for (&p, &v) in positions.iter().zip(values) {
        if p == 0 || p > n || v == 0 || v as usize > n || used[v as usize] {
            return None;
        }
        entries[p - 1] = v;
        used[v as usize] = true;
    }
    let mut bound = 0u32;
    for i in (0..n).rev() {
        if entries[i] != 0 {
            bound = entries[i];
            continue;
        }
        let v = (1..bound).rev().find(|&v| !used[v as usize])?;
        entries[i] = v;
        used[v as usize] = true;
    }
    Permutation::new(entries).ok()
}

pub fn phi_inverse(path: &LatticePath) -> Result<Permutation, BijectionError> {
    if !path_is(path, PathKind::Dyck) || path.is_empty() {
        return Err(pre(format!("{path} is not a nonempty Dyck path")));
    }
    let runs = blocks(path.steps(), Step::U, Step::D).ok_or_else(|| pre("malformed runs"))?;
    let n = path.len() / 2;
    let mut positions = Vec::new();
    let mut pos = 0;
    for &(a, _) in &runs {
        pos += a;
        positions.push(pos);
    }
    let mut values = vec![0u32; runs.len()];
    let mut acc = 0u32;
    for j in (0..runs.len()).rev() {
        acc += runs[j].1 as u32;
        values[j] = acc;
    }
    let perm = fill_from_maxima(n, &positions, &values)
        .ok_or_else(|| BijectionError::Internal(format!("no preimage for {path}")))?;
    if phi(&perm).as_ref() != Ok(path) {
        return Err(BijectionError::Internal(format!("round trip failed for {path}")));
    }
    Ok(perm)
}

fn require_udu_free_dyck(path: &LatticePath) -> Result<(), BijectionError> {
    if path.is_empty() || !path_is(path, PathKind::Dyck) || !path_is(path, PathKind::UduFree) {
        return Err(pre(format!("{path} is not a nonempty UDU-free Dyck path")));
    }
    Ok(())
}

/// Callan's map from UDU-free Dyck paths of semilength `n+1` to Motzkin
/// paths with `n` steps.
pub fn callan(path: &LatticePath) -> Result<LatticePath, BijectionError> {
    use Step::*;
    require_udu_free_dyck(path)?;
    let mut s: Vec<Step> = path.steps().to_vec();
    s.push(D);
    let mate = matching(&s);
    let mut deleted = vec![false; s.len()];
    for i in 1..s.len() - 1 {
        if s[i] == D && s[i - 1] == D && s[i + 1] == D {
            deleted[i] = true;
            let u = mate[i].ok_or_else(|| BijectionError::Internal("unmatched D".into()))?;
            s[u] = H;
        }
    }
    let s: Vec<Step> = s.into_iter().zip(deleted).filter(|(_, d)| !d).map(|(x, _)| x).collect();
    let mut out = Vec::with_capacity(s.len());
    let mut i = 0;
    while i < s.len() {
        if s[i..].starts_with(&[U, D, D]) {
            out.push(D);
            i += 3;
        } else {
            out.push(s[i]);
            i += 1;
        }
    }
    if out.pop() != Some(D) {
        return Err(BijectionError::Internal("expected a final D".into()));
    }
    Ok(LatticePath::new(out))
}

pub fn callan_inverse(path: &LatticePath) -> Result<LatticePath, BijectionError> {
    use Step::*;
    if !path_is(path, PathKind::Motzkin) {
        return Err(pre(format!("{path} is not a Motzkin path")));
    }
    let mut x: Vec<Step> = Vec::new();
    for &s in path.steps().iter().chain([D].iter()) {
        if s == D {
            x.extend([U, D, D]);
        } else {
            x.push(s);
        }
    }
    let h = heights(&x);
    // insert_before[q] = number of Ds to insert before index q of x
    let mut insert_before = vec![0usize; x.len()];
    for p in (0..x.len()).filter(|&p| x[p] == H) {
        let q = (p + 1..x.len())
            .find(|&q| x[q] == D && h[q] == h[p])
            .ok_or_else(|| BijectionError::Internal("no closing step for H".into()))?;
        insert_before[q] += 1;
    }
    let mut out = Vec::with_capacity(x.len() + 1);
    for (q, &s) in x.iter().enumerate() {
        repeat(&mut out, D, insert_before[q]);
        out.push(if s == H { U } else { s });
    }
    out.pop();
    let result = LatticePath::new(out);
    if callan(&result).as_ref() != Ok(path) {
        return Err(BijectionError::Internal(format!("round trip failed for {path}")));
    }
    Ok(result)
}

/// From UDU-free Dyck paths of semilength `n+1` to UUU-free Dyck paths of
/// semilength `n`: move every D sitting inside a DDD (and a final DD's last D)
/// next to its matching U, delete the rightmost peak, then reverse and swap.
pub fn udu_uuu(path: &LatticePath) -> Result<LatticePath, BijectionError> {
    use Step::*;
    require_udu_free_dyck(path)?;
    let s = path.steps();
    let n = s.len();
    let mate = matching(s);
    let mut marked = vec![false; n];
    for i in 1..n {
        let next_is_d = i + 1 < n && s[i + 1] == D;
        let last = i == n - 1;
        if s[i] == D && s[i - 1] == D && (next_is_d || last) {
            marked[i] = true;
        }
    }
    let mut moved: Vec<Step> = Vec::with_capacity(n);
    for i in 0..n {
        match s[i] {
            U => {
                moved.push(U);
                if mate[i].is_some_and(|d| marked[d]) {
                    moved.push(D);
                }
            }
            D if marked[i] => {}
            x => moved.push(x),
        }
    }
    let peak = (0..moved.len() - 1)
        .rev()
        .find(|&i| moved[i] == U && moved[i + 1] == D)
        .ok_or_else(|| BijectionError::Internal("no peak".into()))?;
    moved.drain(peak..peak + 2);
    Ok(LatticePath::new(reverse_swap(&moved)))
}

fn reverse_swap(s: &[Step]) -> Vec<Step> {
    s.iter()
        .rev()
        .map(|&x| match x {
            Step::U => Step::D,
            Step::D => Step::U,
            other => other,
        })
        .collect()
}

pub fn udu_uuu_inverse(path: &LatticePath) -> Result<LatticePath, BijectionError> {
    use Step::*;
    if !path_is(path, PathKind::Dyck) || !path_is(path, PathKind::UuuFree) {
        return Err(pre(format!("{path} is not a UUU-free Dyck path")));
    }
    let mut s = reverse_swap(path.steps());
    s.extend([U, D]);
    let n = s.len();
    let h = heights(&s);
    let mut marked = vec![false; n];
    for i in 1..n.saturating_sub(1) {
        if s[i] == D && s[i - 1] == U && s[i + 1] == U {
            marked[i] = true;
        }
    }
    // extra[q] = marked Ds re-inserted before index q; extra[n] = at the end
    let mut extra = vec![0usize; n + 1];
    for i in (0..n).filter(|&i| marked[i]) {
        let target = if h[i] == 1 {
            n
        } else {
            (i + 1..n)
                .find(|&q| s[q] == D && !marked[q] && h[q] == h[i] - 1)
                .ok_or_else(|| BijectionError::Internal("no landing step".into()))?
        };
        extra[target] += 1;
    }
    let mut out = Vec::with_capacity(n);
    for q in 0..n {
        repeat(&mut out, D, extra[q]);
        if !marked[q] {
            out.push(s[q]);
        }
    }
    repeat(&mut out, D, extra[n]);
    let result = LatticePath::new(out);
    if udu_uuu(&result).as_ref() != Ok(path) {
        return Err(BijectionError::Internal(format!("round trip failed for {path}")));
    }
    Ok(result)
}

/// From the class avoiding 2-1-3 and [2o]-31 to subdiagonal paths:
/// `E^{i_1} N^{a_1} E^{i_2 - i_1} ... N^{a_m}` with `a_j` half the gap
/// between consecutive right-to-left maxima and `a_m = floor(v_m / 2)`.
pub fn subdiag(perm: &Permutation) -> Result<LatticePath, BijectionError> {
    if !avoids(perm, &set("2-1-3,[2o]-31")) {
        return Err(pre(format!("{perm} is not in the class avoiding 2-1-3 and [2o]-31")));
    }
    let maxima = perm.right_to_left_maxima();
    let mut steps = Vec::new();
    let mut prev_pos = 0;
    for (j, &(pos, val)) in maxima.iter().enumerate() {
        let a = match maxima.get(j + 1) {
            Some(&(_, next)) => {
                let gap = val - next;
                if gap % 2 != 0 {
                    return Err(BijectionError::Internal(format!("odd gap between maxima of {perm}")));
                }
                gap / 2
            }
            None => val / 2,
        };
        repeat(&mut steps, Step::E, pos - prev_pos);
        repeat(&mut steps, Step::N, a as usize);
        prev_pos = pos;
    }
    Ok(LatticePath::new(steps))
}

pub fn subdiag_inverse(path: &LatticePath) -> Result<Permutation, BijectionError> {
    if path.is_empty() || !path_is(path, PathKind::Subdiagonal) {
        return Err(pre(format!("{path} is not a nonempty subdiagonal path")));
    }
    let runs = blocks(path.steps(), Step::E, Step::N).ok_or_else(|| pre("malformed runs"))?;
    let n = path.count(Step::E);
    let mut positions = Vec::new();
    let mut pos = 0;
    for &(e, _) in &runs {
        pos += e;
        positions.push(pos);
    }
    let mut values = Vec::with_capacity(runs.len());
    let mut v = n as i64;
    for (j, &(_, a)) in runs.iter().enumerate() {
        values.push(v as u32);
        if j + 1 < runs.len() {
            v -= 2 * a as i64;
        }
    }
    let last = *values.last().expect("nonempty");
    if last == 0 || (last / 2) as usize != runs.last().expect("nonempty").1 {
        return Err(BijectionError::Internal(format!("inconsistent final run in {path}")));
    }
    let perm = fill_from_maxima(n, &positions, &values)
        .ok_or_else(|| BijectionError::Internal(format!("no preimage for {path}")))?;
    if subdiag(&perm).as_ref() != Ok(path) {
        return Err(BijectionError::Internal(format!("round trip failed for {path}")));
    }
    Ok(perm)
}

/// `phi`, then `udu_uuu`, then `phi^-1`: from length-`n+1` avoiders of
/// {2-1-3, [2]-31} to length-`n` avoiders of {2-1-3, 12-3}.
pub fn chain_bar_to_motzkin(perm: &Permutation) -> Result<Permutation, BijectionError> {
    if perm.len() < 2 {
        return Err(pre("length must be at least 2"));
    }
    phi_inverse(&udu_uuu(&phi(perm)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BijectionName {
    Phi,
    Callan,
    UduUuu,
    Subdiag,
}

impl BijectionName {
    pub const ALL: [BijectionName; 4] = [Self::Phi, Self::Callan, Self::UduUuu, Self::Subdiag];

    pub fn name(self) -> &'static str {
        match self {
            Self::Phi => "phi",
            Self::Callan => "callan",
            Self::UduUuu => "udu_uuu",
            Self::Subdiag => "subdiag",
        }
    }

    /// Applies the map to textual input (a permutation or a path).
    pub fn apply_text(self, input: &str, inverse: bool) -> Result<String, BijectionError> {
        let parse_perm = |s: &str| s.parse::<Permutation>().map_err(|e| BijectionError::Parse(e.to_string()));
        let parse_path = |s: &str| s.parse::<LatticePath>().map_err(|e| BijectionError::Parse(e.to_string()));
        Ok(match (self, inverse) {
            (Self::Phi, false) => phi(&parse_perm(input)?)?.to_string(),
            (Self::Phi, true) => phi_inverse(&parse_path(input)?)?.to_string(),
            (Self::Callan, false) => callan(&parse_path(input)?)?.to_string(),
            (Self::Callan, true) => callan_inverse(&parse_path(input)?)?.to_string(),
            (Self::UduUuu, false) => udu_uuu(&parse_path(input)?)?.to_string(),
            (Self::UduUuu, true) => udu_uuu_inverse(&parse_path(input)?)?.to_string(),
            (Self::Subdiag, false) => subdiag(&parse_perm(input)?)?.to_string(),
            (Self::Subdiag, true) => subdiag_inverse(&parse_path(input)?)?.to_string(),
        })
    }
}

impl fmt::Display for BijectionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BijectionName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown map `{s}` (expected phi, callan, udu_uuu, subdiag)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn path(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(phi(&perm("4675123")).unwrap(), path("UUUDDUDDUUUDDD"));
        assert_eq!(phi(&perm("1")).unwrap(), path("UD"));
        assert_eq!(phi_inverse(&path("UUUDDUDDUUUDDD")).unwrap(), perm("4675123"));
        assert_eq!(callan(&path("UUDD")).unwrap(), path("H"));
        assert_eq!(callan_inverse(&path("H")).unwrap(), path("UUDD"));
        assert_eq!(udu_uuu(&path("UUUUDDUUDDDDUUDD")).unwrap(), path("UDUUDUDUUDDUDD"));
        assert_eq!(udu_uuu_inverse(&path("UDUUDUDUUDDUDD")).unwrap(), path("UUUUDDUUDDDDUUDD"));
        assert_eq!(udu_uuu(&path("UD")).unwrap(), path(""));
        assert_eq!(subdiag(&perm("4675123")).unwrap(), path("EEENENEEEN"));
        assert_eq!(subdiag(&perm("1")).unwrap(), path("E"));
        assert_eq!(subdiag_inverse(&path("EEENENEEEN")).unwrap(), perm("4675123"));
    }

    #[test]
    fn preconditions() {
        assert!(matches!(phi(&perm("213")), Err(BijectionError::Precondition(_))));
        assert!(matches!(phi_inverse(&path("UDDU")), Err(BijectionError::Precondition(_))));
        assert!(matches!(callan(&path("UDUD")), Err(BijectionError::Precondition(_))));
        assert!(matches!(udu_uuu_inverse(&path("UUUDDD")), Err(BijectionError::Precondition(_))));
        assert!(subdiag(&perm("12")).is_ok());
        assert!(matches!(subdiag(&perm("312")), Err(BijectionError::Precondition(_))));
        assert!(matches!(subdiag_inverse(&path("NE")), Err(BijectionError::Precondition(_))));
    }

    #[test]
    fn text_interface() {
        assert_eq!(BijectionName::Phi.apply_text("4675123", false).unwrap(), "UUUDDUDDUUUDDD");
        assert_eq!(BijectionName::Subdiag.apply_text("EEENENEEEN", true).unwrap(), "4675123");
        assert!(BijectionName::Callan.apply_text("UXD", false).is_err());
    }

    #[test]
    fn exhaustive_round_trips_small() {
        use crate::enumerate::brute_avoiders;
        use crate::paths::{dyck_paths, motzkin_paths, subdiagonal_paths};
        use crate::series::{formula_value, FormulaName};
        use std::collections::BTreeSet;
        for n in 1..=7 {
            let avoiders = brute_avoiders(&set("2-1-3"), n);
            let images: BTreeSet<_> = avoiders.iter().map(|p| phi(p).unwrap()).collect();
            assert_eq!(images.len(), avoiders.len());
            for p in &avoiders {
                let d = phi(p).unwrap();
                assert_eq!(&phi_inverse(&d).unwrap(), p);
                let bar = avoids(p, &set("[2]-31"));
                assert_eq!(bar, path_is(&d, PathKind::UduFree), "{p}");
                let inc = avoids(p, &set("12-3"));
                assert_eq!(inc, path_is(&d, PathKind::UuuFree), "{p}");
            }
            let udu: Vec<_> = dyck_paths(n + 1).into_iter().filter(|d| path_is(d, PathKind::UduFree)).collect();
            let mot: BTreeSet<_> = udu.iter().map(|d| callan(d).unwrap()).collect();
            assert_eq!(mot, motzkin_paths(n).into_iter().collect());
            for d in &udu {
                assert_eq!(&callan_inverse(&callan(d).unwrap()).unwrap(), d);
                assert_eq!(&udu_uuu_inverse(&udu_uuu(d).unwrap()).unwrap(), d);
            }
            let uuu: BTreeSet<_> = udu.iter().map(|d| udu_uuu(d).unwrap()).collect();
            let expect: BTreeSet<_> = dyck_paths(n).into_iter().filter(|d| path_is(d, PathKind::UuuFree)).collect();
            assert_eq!(uuu, expect);
            let odd = brute_avoiders(&set("2-1-3,[2o]-31"), n);
            let sub: BTreeSet<_> = odd.iter().map(|p| subdiag(p).unwrap()).collect();
            assert_eq!(sub, subdiagonal_paths(n).into_iter().collect());
            assert_eq!(sub.len().to_string(), formula_value(FormulaName::Cat3, n).to_string());
        }
    }

    #[test]
    fn chain_small() {
        use crate::enumerate::brute_avoiders;
        use std::collections::BTreeSet;
        for n in 1..=6 {
            let from = brute_avoiders(&set("2-1-3,[2]-31"), n + 1);
            let image: BTreeSet<_> = from.iter().map(|p| chain_bar_to_motzkin(p).unwrap()).collect();
            assert_eq!(image.len(), from.len());
            assert_eq!(image, brute_avoiders(&set("2-1-3,12-3"), n).into_iter().collect());
        }
    }
}
