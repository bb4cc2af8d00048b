//! Cross-check table: brute force, tree, succession rule and generating
//! function counts side by side.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::enumerate::{count_brute_with_guard, count_tree, EnumError, DEFAULT_BRUTE_GUARD};
use crate::series::{closed_form, SeriesError, Substitution};
use crate::succession::{count_by_rule, ClassId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            _ => Err(format!("unknown format `{s}` (expected json, csv, text)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub class: ClassId,
    pub n: usize,
    pub brute: Option<BigInt>,
    pub tree: BigInt,
    pub rule: BigInt,
    pub gf: BigInt,
    pub agree: bool,
}

impl ReportRow {
    pub fn new(class: ClassId, n: usize, brute: Option<BigInt>, tree: BigInt, rule: BigInt, gf: BigInt) -> Self {
        let agree = tree == rule && rule == gf && brute.as_ref().is_none_or(|b| *b == tree);
        Self { class, n, brute, tree, rule, gf, agree }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class.name(),
            "n": self.n,
            "counts": {
                "brute": self.brute.as_ref().map(|b| b.to_string()),
                "tree": self.tree.to_string(),
                "rule": self.rule.to_string(),
                "gf": self.gf.to_string(),
            },
            "agree": self.agree,
        })
    }

    pub fn to_csv(&self) -> String {
        let brute = self.brute.as_ref().map(|b| b.to_string()).unwrap_or_default();
        format!("{},{},{},{},{},{},{}", self.class, self.n, brute, self.tree, self.rule, self.gf, self.agree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

pub const CSV_HEADER: &str = "class,n,brute,tree,rule,gf,agree";

impl Report {
    pub fn agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let rows: Vec<Value> = self.rows.iter().map(ReportRow::to_json).collect();
                let doc = json!({ "agree": self.agree(), "rows": rows });
                serde_json::to_string_pretty(&doc).expect("json serialization") + "\n"
            }
            Format::Csv => {
                let mut out = String::from(CSV_HEADER);
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&r.to_csv());
                    out.push('\n');
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                writeln!(
                    out,
                    "{:<5} {:>3} {:>12} {:>12} {:>12} {:>12}  agree",
                    "class", "n", "brute", "tree", "rule", "gf"
                )
                .unwrap();
                for r in &self.rows {
                    let brute = r.brute.as_ref().map_or("-".to_string(), |b| b.to_string());
                    writeln!(
                        out,
                        "{:<5} {:>3} {:>12} {:>12} {:>12} {:>12}  {}",
                        r.class.name(),
                        r.n,
                        brute,
                        r.tree,
                        r.rule,
                        r.gf,
                        r.agree
                    )
                    .unwrap();
                }
                writeln!(out, "overall: {}", if self.agree() { "agree" } else { "MISMATCH" }).unwrap();
                out
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Coefficients `1..=max_n` of the class's generating function at `u = v = 1`.
pub fn gf_counts(class: ClassId, max_n: usize) -> Result<Vec<BigInt>, SeriesError> {
    let series = match closed_form(class.gf(), max_n, &Substitution::at_one()) {
        Ok(s) => s,
        Err(_) => closed_form(class.gf(), max_n, &Substitution::symbolic())?,
    };
    series.totals()[1..=max_n]
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(SeriesError::NotInvertible(format!("non-integral coefficient {c}")))
            }
        })
        .collect()
}

/// One row per `(class, n)` for `n` in `1..=max_n`; the brute column is
/// omitted above `brute_guard`.
pub fn cross_check_with_guard(classes: &[ClassId], max_n: usize, brute_guard: usize) -> Result<Report, ReportError> {
    let per_class: Vec<Result<Vec<ReportRow>, ReportError>> = classes
        .par_iter()
        .map(|&class| {
            let pats = class.patterns();
            let tree = count_tree(&pats, max_n)?;
            let rule = count_by_rule(class, max_n);
            let gf = gf_counts(class, max_n)?;
            (1..=max_n)
                .map(|n| {
                    let brute =
                        if n <= brute_guard { Some(count_brute_with_guard(&pats, n, brute_guard)?) } else { None };
                    Ok(ReportRow::new(class, n, brute, tree[n - 1].clone(), rule[n - 1].clone(), gf[n - 1].clone()))
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_class {
        rows.extend(r?);
    }
    Ok(Report { rows })
}

pub fn cross_check(classes: &[ClassId], max_n: usize) -> Result<Report, ReportError> {
    cross_check_with_guard(classes, max_n, DEFAULT_BRUTE_GUARD)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rows() {
        let report = cross_check(&ClassId::ALL, 7).unwrap();
        assert!(report.agree());
        let csv = report.render(Format::Csv);
        assert!(csv.starts_with(CSV_HEADER));
        assert!(csv.lines().any(|l| l == "C10,5,19,19,19,19,true"));
        assert!(csv.lines().any(|l| l == "C7,3,5,5,5,5,true"));
    }

    #[test]
    fn json_at_one() {
        let report = cross_check(&ClassId::ALL, 1).unwrap();
        let doc: Value = serde_json::from_str(&report.render(Format::Json)).unwrap();
        let rows = doc["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 12);
        for r in rows {
            for k in ["brute", "tree", "rule", "gf"] {
                assert_eq!(r["counts"][k], "1");
            }
        }
        assert_eq!(doc["agree"], true);
    }

    #[test]
    fn brute_column_omitted_above_guard() {
        let report = cross_check_with_guard(&[ClassId::C5], 4, 2).unwrap();
        assert!(report.rows[2].brute.is_none());
        assert!(report.rows[2].agree);
        assert!(report.render(Format::Csv).contains("C5,3,,4,4,4,true"));
    }

    #[test]
    fn disagreement_is_flagged() {
        let row = ReportRow::new(ClassId::C1, 2, Some(2.into()), 1.into(), 1.into(), 1.into());
        assert!(!row.agree);
    }

    #[test]
    fn gf_matches_rule_beyond_brute_range() {
        for c in ClassId::ALL {
            assert_eq!(gf_counts(c, 12).unwrap(), count_by_rule(c, 12), "{c}");
        }
    }
}
