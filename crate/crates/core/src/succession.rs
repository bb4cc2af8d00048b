//! The twelve registered succession rules, label-level dynamic programming,
//! and verification of each rule against the actual rightward tree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::enumerate::{tree_children, walk_tree, EnumError, RefinedCount};
use crate::pattern::PatternSet;
use crate::perm::{Label, Permutation, Stat};
use crate::series::{GfName, Poly, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    C1,
    C2,
    C2e,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
}

impl ClassId {
    pub const ALL: [ClassId; 12] = [
        Self::C1,
        Self::C2,
        Self::C2e,
        Self::C3,
        Self::C4,
        Self::C5,
        Self::C6,
        Self::C7,
        Self::C8,
        Self::C9,
        Self::C10,
        Self::C11,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::C1 => "C1",
            Self::C2 => "C2",
            Self::C2e => "C2e",
            Self::C3 => "C3",
            Self::C4 => "C4",
            Self::C5 => "C5",
            Self::C6 => "C6",
            Self::C7 => "C7",
            Self::C8 => "C8",
            Self::C9 => "C9",
            Self::C10 => "C10",
            Self::C11 => "C11",
        }
    }

    pub fn patterns_text(self) -> &'static str {
        match self {
            Self::C1 => "2-1-3,[2]-31",
            Self::C2 => "2-1-3,[2o]-31",
            Self::C2e => "2-1-3,[2e]-31",
            Self::C3 => "2-1-3,2-3-41,3-2-41",
            Self::C4 => "2-1-3,12-3",
            Self::C5 => "2-1-3,32-1",
            Self::C6 => "2-1-3,34-21",
            Self::C7 => "1-2-34,2-1-3",
            Self::C8 => "12-34,2-1-3",
            Self::C9 => "1-23,3-12",
            Self::C10 => "1-23,3-12,34-21",
            Self::C11 => "1-23,34-21",
        }
    }

    /// Statistics forming the node label, in label order.
    pub fn label_stats(self) -> &'static [Stat] {
        match self {
            Self::C1 | Self::C2 | Self::C2e | Self::C3 => &[Stat::R],
            Self::C4 | Self::C8 => &[Stat::L, Stat::R],
            Self::C5 => &[Stat::H, Stat::R],
            Self::C6 => &[Stat::S, Stat::R],
            Self::C7 => &[Stat::M, Stat::R],
            Self::C9 => &[Stat::R, Stat::Len],
            Self::C10 | Self::C11 => &[Stat::S, Stat::R, Stat::Len],
        }
    }

    pub fn root(self) -> Label {
        match self {
            Self::C1 | Self::C2 | Self::C2e | Self::C3 => Label::one(1),
            Self::C4 | Self::C7 | Self::C8 => Label::two(2, 1),
            Self::C5 | Self::C6 => Label::two(0, 1),
            Self::C9 => Label::two(1, 1),
            Self::C10 | Self::C11 => Label::three(0, 1, 1),
        }
    }

    pub fn gf(self) -> GfName {
        match self {
            Self::C1 => GfName::D,
            Self::C2 => GfName::J,
            Self::C2e => GfName::Q,
            Self::C3 => GfName::K1,
            Self::C4 => GfName::M,
            Self::C5 => GfName::N,
            Self::C6 => GfName::K2,
            Self::C7 => GfName::H,
            Self::C8 => GfName::F,
            Self::C9 => GfName::P,
            Self::C10 => GfName::R,
            Self::C11 => GfName::T,
        }
    }

    pub fn patterns(self) -> PatternSet {
        self.patterns_text().parse().expect("registered pattern sets parse")
    }

    /// The statistics marked by `u` and `v` in the refined counts: the label
    /// statistics other than the length.
    pub fn marked_stats(self) -> (Stat, Option<Stat>) {
        let mut it = self.label_stats().iter().copied().filter(|&s| s != Stat::Len);
        let u = it.next().expect("every class marks a statistic");
        (u, it.next())
    }

    /// The registered class whose pattern set equals `pats` up to order.
    pub fn from_patterns(pats: &PatternSet) -> Option<ClassId> {
        let key = pats.canonical_key();
        Self::ALL.into_iter().find(|c| c.patterns().canonical_key() == key)
    }

    pub fn spec(self) -> ClassSpec {
        ClassSpec { id: self, patterns: self.patterns(), label_stats: self.label_stats(), root: self.root() }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown class `{s}` (expected C1..C11 or C2e)"))
    }
}

#[derive(Debug, Clone)]
pub struct ClassSpec {
    pub id: ClassId,
    pub patterns: PatternSet,
    pub label_stats: &'static [Stat],
    pub root: Label,
}

impl ClassSpec {
    pub fn label_of(&self, perm: &Permutation) -> Label {
        Label::of(perm, self.label_stats)
    }
}

/// Children of `label` with the name of the rule branch that produced them.
/// Labels of the three-label classes carry `n` as their last component.
pub fn rule_children_with_branch(class: ClassId, label: &Label) -> (&'static str, Vec<Label>) {
    use ClassId::*;
    let one = |it: &mut dyn Iterator<Item = u32>| it.map(Label::one).collect::<Vec<_>>();
    match class {
        C1 => {
            let r = label.get(0);
            ("(1)..(r-1)(r+1)", one(&mut (1..r).chain([r + 1])))
        }
        C2 => {
            let r = label.get(0);
            ("r-j odd", one(&mut (1..=r + 1).rev().filter(|&j| (r + 1 - j).is_multiple_of(2))))
        }
        C2e => {
            let r = label.get(0);
            ("r-j even, r+1", one(&mut (1..=r).filter(|&j| (r - j).is_multiple_of(2)).chain([r + 1])))
        }
        C3 => {
            let r = label.get(0);
            if r == 1 {
                ("r=1", one(&mut [1, 2].into_iter()))
            } else {
                ("r>1", one(&mut [r - 1, r, r + 1].into_iter()))
            }
        }
        C4 => {
            let (l, r) = (label.get(0), label.get(1));
            if l == r {
                ("l=r", (1..=l).map(|j| Label::two(l + 1, j)).collect())
            } else if l > r {
                let mut v: Vec<Label> = (1..=r).map(|j| Label::two(l + 1, j)).collect();
                v.push(Label::two(r + 1, r + 1));
                ("l>r", v)
            } else {
                ("unreachable l<r", Vec::new())
            }
        }
        C5 => {
            let (h, r) = (label.get(0), label.get(1));
            let mut v: Vec<Label> = (h + 1..=r).map(|j| Label::two(j, j)).collect();
            v.push(Label::two(h, r + 1));
            ("all", v)
        }
        C6 => {
            let (s, r) = (label.get(0), label.get(1));
            if s < r {
                let mut v: Vec<Label> = (1..=s).map(|j| Label::two(s + 1, j)).collect();
                v.push(Label::two(s, s + 1));
                v.push(Label::two(r, r + 1));
                ("s<r", v)
            } else if s > r {
                ("s>r", vec![Label::two(s + 1, r + 1)])
            } else {
                ("unreachable s=r", Vec::new())
            }
        }
        C7 => {
            let (m, r) = (label.get(0), label.get(1));
            if r == 1 {
                ("r=1", vec![Label::two(m + 1, 1), Label::two(2, 2)])
            } else if m == 2 && r == 2 {
                ("m=r=2", vec![Label::two(3, 1), Label::two(2, 2), Label::two(2, 3)])
            } else if m < r {
                let mut v = vec![Label::two(m + 1, 1), Label::two(2, 2)];
                v.extend((m + 1..=r).map(|j| Label::two(m, j)));
                ("m<r", v)
            } else {
                ("unreachable m>=r>1", Vec::new())
            }
        }
        C8 => {
            let (l, r) = (label.get(0), label.get(1));
            if l > r {
                let mut v: Vec<Label> = (1..=r).map(|j| Label::two(l + 1, j)).collect();
                v.push(Label::two(r + 1, r + 1));
                ("l>r", v)
            } else {
                let mut v: Vec<Label> = (1..=l).map(|j| Label::two(l + 1, j)).collect();
                v.extend((l + 1..=r.max(l + 1)).map(|j| Label::two(l, j)));
                (if l == r { "l=r" } else { "l<r" }, v)
            }
        }
        C9 => {
            let (r, n) = (label.get(0), label.get(1));
            if r == 1 {
                ("r=1", vec![Label::two(1, n + 1), Label::two(n + 1, n + 1)])
            } else {
                ("r>1", (1..=r).map(|j| Label::two(j, n + 1)).collect())
            }
        }
        C10 | C11 => {
            let (s, r, n) = (label.get(0), label.get(1), label.get(2));
            if s < r && r != 1 {
                let mut v: Vec<Label> = (1..=s).map(|j| Label::three(s + 1, j, n + 1)).collect();
                v.extend((s + 1..=r).map(|j| Label::three(s, j, n + 1)));
                ("s<r!=1", v)
            } else if (s, r) == (0, 1) {
                let mut v = vec![Label::three(0, 1, n + 1)];
                if class == C10 {
                    v.push(Label::three(1, n + 1, n + 1));
                } else {
                    v.extend((2..=n + 1).map(|j| Label::three(1, j, n + 1)));
                }
                ("(s,r)=(0,1)", v)
            } else if s > r && r == 1 {
                if class == C10 {
                    ("s>r=1", vec![Label::three(s, n + 1, n + 1)])
                } else {
                    let mut v: Vec<Label> = (2..=s).map(|j| Label::three(s + 1, j, n + 1)).collect();
                    v.extend((s + 1..=n + 1).map(|j| Label::three(s, j, n + 1)));
                    ("s>r=1", v)
                }
            } else if s > r {
                ("s>r>1", Vec::new())
            } else {
                ("unreachable s=r", Vec::new())
            }
        }
    }
}

/// Children of `label` under the class's rule, as a multiset.
pub fn rule_children(class: ClassId, label: &Label) -> Vec<Label> {
    rule_children_with_branch(class, label).1
}

/// Multiplicity of every label at each level `1..=nmax`.
pub fn rule_levels(class: ClassId, nmax: usize) -> Vec<BTreeMap<Label, BigInt>> {
    let mut out: Vec<BTreeMap<Label, BigInt>> = Vec::with_capacity(nmax);
    if nmax == 0 {
        return out;
    }
    out.push(BTreeMap::from([(class.root(), BigInt::one())]));
    for _ in 2..=nmax {
        let prev = out.last().expect("nonempty");
        let mut next: BTreeMap<Label, BigInt> = BTreeMap::new();
        for (label, mult) in prev {
            for child in rule_children(class, label) {
                *next.entry(child).or_insert_with(BigInt::zero) += mult;
            }
        }
        out.push(next);
    }
    out
}

/// Level totals, lengths `1..=nmax`.
pub fn count_by_rule(class: ClassId, nmax: usize) -> Vec<BigInt> {
    rule_levels(class, nmax).iter().map(|lvl| lvl.values().sum()).collect()
}

/// Number of distinct labels at each level.
pub fn rule_state_counts(class: ClassId, nmax: usize) -> Vec<usize> {
    rule_levels(class, nmax).iter().map(BTreeMap::len).collect()
}

fn label_monomial(class: ClassId, label: &Label) -> (u32, u32) {
    let stats = class.label_stats();
    let marked: Vec<u32> =
        stats.iter().zip(label.values()).filter(|(s, _)| **s != Stat::Len).map(|(_, &v)| v).collect();
    (marked[0], marked.get(1).copied().unwrap_or(0))
}

/// Per-level polynomials `sum mult * u^a v^b`, with `a, b` the marked
/// label components.
pub fn refined_by_rule(class: ClassId, nmax: usize) -> Vec<RefinedCount> {
    rule_levels(class, nmax)
        .iter()
        .enumerate()
        .map(|(i, lvl)| {
            let mut poly = Poly::zero();
            for (label, mult) in lvl {
                let (a, b) = label_monomial(class, label);
                poly.add_term(a, b, BigRational::from_integer(mult.clone()));
            }
            RefinedCount { n: i + 1, poly }
        })
        .collect()
}

/// The refined rule counts as a series in `t` of the given order.
pub fn rule_series(class: ClassId, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Poly::zero()];
    coeffs.extend(refined_by_rule(class, order).into_iter().map(|rc| rc.poly));
    TruncatedSeries::new(coeffs, order)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleMismatch {
    pub parent: Permutation,
    pub parent_label: Label,
    pub predicted: Vec<Label>,
    pub actual: Vec<Label>,
}

impl fmt::Display for RuleMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parent {} with label {}: rule predicts {:?}, tree has {:?}",
            self.parent, self.parent_label, self.predicted, self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleReport {
    pub class: ClassId,
    pub max_n: usize,
    pub root_matches: bool,
    /// Nodes whose children were compared (levels `1..max_n`).
    pub nodes_checked: u64,
    pub branch_hits: BTreeMap<&'static str, u64>,
    pub labels_seen: BTreeSet<Label>,
    pub counterexample: Option<RuleMismatch>,
}

impl RuleReport {
    pub fn matches(&self) -> bool {
        self.root_matches && self.counterexample.is_none()
    }
}

impl fmt::Display for RuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.matches() { "match" } else { "MISMATCH" };
        write!(f, "{}: {status} to n={} ({} nodes", self.class, self.max_n, self.nodes_checked)?;
        for (branch, hits) in &self.branch_hits {
            write!(f, ", {branch}: {hits}")?;
        }
        f.write_str(")")?;
        if !self.root_matches {
            write!(f, "; root label differs from {}", self.class.root())?;
        }
        if let Some(m) = &self.counterexample {
            write!(f, "; {m}")?;
        }
        Ok(())
    }
}

struct NodeOutcome {
    branch: &'static str,
    mismatch: Option<RuleMismatch>,
}

/// Compares the rule with the actual tree: for every node of length below
/// `nmax`, the multiset of the children's labels must equal the rule's output.
pub fn verify_rule(class: ClassId, nmax: usize) -> Result<RuleReport, EnumError> {
    verify_rule_with(class, nmax, |label| rule_children_with_branch(class, label))
}

/// As [`verify_rule`], with the class's tree checked against an arbitrary rule.
pub fn verify_rule_with<F>(class: ClassId, nmax: usize, rule: F) -> Result<RuleReport, EnumError>
where
    F: Fn(&Label) -> (&'static str, Vec<Label>) + Sync,
{
    let spec = class.spec();
    let root_matches = spec.label_of(&Permutation::identity(1)) == class.root();
    let mut report = RuleReport {
        class,
        max_n: nmax,
        root_matches,
        nodes_checked: 0,
        branch_hits: BTreeMap::new(),
        labels_seen: BTreeSet::new(),
        counterexample: None,
    };
    walk_tree(&spec.patterns, nmax, |n, level| {
        report.labels_seen.extend(level.iter().map(|p| spec.label_of(p)));
        if n == nmax || report.counterexample.is_some() {
            return;
        }
        let outcomes: Vec<NodeOutcome> = level
            .par_iter()
            .map(|p| {
                let parent_label = spec.label_of(p);
                let (branch, mut predicted) = rule(&parent_label);
                let mut actual: Vec<Label> =
                    tree_children(&spec.patterns, p).iter().map(|c| spec.label_of(c)).collect();
                predicted.sort();
                actual.sort();
                let mismatch =
                    (predicted != actual).then(|| RuleMismatch { parent: p.clone(), parent_label, predicted, actual });
                NodeOutcome { branch, mismatch }
            })
            .collect();
        for o in outcomes {
            report.nodes_checked += 1;
            *report.branch_hits.entry(o.branch).or_insert(0) += 1;
            if report.counterexample.is_none() {
                report.counterexample = o.mismatch;
            }
        }
    })?;
    Ok(report)
}
