//! Command-line front end. `run` returns the process exit status:
//! 0 on success, 1 on a verification mismatch, 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::json;

use crate::bijections::BijectionName;
use crate::enumerate::{count_brute, count_tree};
use crate::pattern::PatternSet;
use crate::report::{cross_check, gf_counts, Format};
use crate::series::{closed_form, verify_identity, GfName, Substitution};
use crate::succession::{count_by_rule, rule_series, verify_rule, ClassId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rightward", version, about = "Generating trees and series for pattern-avoiding permutations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Tree,
    Rule,
    Gf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count class members of each length 1..=max-n.
    Count {
        /// Comma-separated pattern set, e.g. "1-23,34-21".
        #[arg(long, conflicts_with = "class")]
        avoid: Option<String>,
        #[arg(long)]
        class: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Method::Tree)]
        method: Method,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Check succession rules against the tree and identities against the rule series.
    Verify {
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        order: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Expand a registered generating function.
    Expand {
        #[arg(long)]
        gf: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long)]
        at_u: Option<BigRational>,
        #[arg(long)]
        at_v: Option<BigRational>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Apply a bijection (phi, callan, udu_uuu, subdiag) to one input.
    Biject {
        #[arg(long)]
        map: BijectionName,
        #[arg(long)]
        input: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Four-way cross-check table.
    Report {
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value = "csv")]
        format: Format,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn classes(arg: &str) -> Result<Vec<ClassId>, Usage> {
    if arg.eq_ignore_ascii_case("all") {
        Ok(ClassId::ALL.to_vec())
    } else {
        arg.split(',').map(|c| c.trim().parse::<ClassId>().map_err(Usage::from)).collect()
    }
}

fn join(counts: &[BigInt]) -> String {
    counts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn count(
    avoid: Option<String>,
    class: Option<String>,
    max_n: usize,
    method: Method,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    if max_n == 0 {
        return Err(Usage("--max-n must be at least 1".into()));
    }
    let (pats, class) = match (avoid, class) {
        (Some(text), None) => {
            let pats: PatternSet = text.parse()?;
            let class = ClassId::from_patterns(&pats);
            (pats, class)
        }
        (None, Some(c)) => {
            let c: ClassId = c.parse()?;
            (c.patterns(), Some(c))
        }
        _ => return Err(Usage("give exactly one of --avoid or --class".into())),
    };
    let needs_class = || class.ok_or_else(|| Usage("--method rule|gf needs a registered class".into()));
    let counts = match method {
        Method::Brute => (1..=max_n).map(|n| count_brute(&pats, n)).collect::<Result<Vec<_>, _>>()?,
        Method::Tree => count_tree(&pats, max_n)?,
        Method::Rule => count_by_rule(needs_class()?, max_n),
        Method::Gf => gf_counts(needs_class()?, max_n)?,
    };
    match format {
        Format::Text => writeln!(out, "{}", join(&counts))?,
        Format::Csv => {
            writeln!(out, "n,count")?;
            for (i, c) in counts.iter().enumerate() {
                writeln!(out, "{},{c}", i + 1)?;
            }
        }
        Format::Json => {
            let doc = json!({
                "patterns": pats.to_string(),
                "class": class.map(|c| c.name()),
                "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            writeln!(out, "{doc}")?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(class: &str, max_n: usize, order: usize, format: Format, out: &mut dyn Write) -> Result<i32, Usage> {
    let mut all_ok = true;
    let mut docs = Vec::new();
    for c in classes(class)? {
        let rule = verify_rule(c, max_n)?;
        let identity = verify_identity(c.gf(), &rule_series(c, order), order);
        all_ok &= rule.matches() && identity.holds;
        match format {
            Format::Json => docs.push(json!({
                "class": c.name(),
                "rule_matches": rule.matches(),
                "rule": rule.to_string(),
                "identity_holds": identity.holds,
                "identity": identity.to_string(),
            })),
            Format::Csv => {
                if docs.is_empty() {
                    writeln!(out, "class,max_n,rule,order,identity")?;
                    docs.push(json!(null));
                }
                writeln!(out, "{c},{max_n},{},{order},{}", rule.matches(), identity.holds)?;
            }
            Format::Text => {
                writeln!(out, "{rule}")?;
                writeln!(out, "  {identity}")?;
            }
        }
    }
    if format == Format::Json {
        writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "agree": all_ok, "classes": docs }))?)?;
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn expand(
    gf: &str,
    order: usize,
    at_u: Option<BigRational>,
    at_v: Option<BigRational>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Usage> {
    let name: GfName = gf.parse()?;
    let series = closed_form(name, order, &Substitution { u: at_u, v: at_v })?;
    match format {
        Format::Json => {
            writeln!(out, "{}", json!({ "gf": name.name(), "order": order, "coefficients": series.to_json() }))?
        }
        Format::Csv => {
            writeln!(out, "k,coefficient")?;
            for k in 0..=order {
                writeln!(out, "{k},{}", series.coeff(k))?;
            }
        }
        Format::Text => writeln!(out, "{series}")?,
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Usage> {
    match cli.command {
        Command::Count { avoid, class, max_n, method, format } => count(avoid, class, max_n, method, format, out),
        Command::Verify { class, max_n, order, format } => verify(&class, max_n, order, format, out),
        Command::Expand { gf, order, at_u, at_v, format } => expand(&gf, order, at_u, at_v, format, out),
        Command::Biject { map, input, inverse } => {
            writeln!(out, "{}", map.apply_text(&input, inverse)?)?;
            Ok(EXIT_OK)
        }
        Command::Report { class, max_n, format } => {
            if max_n == 0 {
                return Err(Usage("--max-n must be at least 1".into()));
            }
            let report = cross_check(&classes(&class)?, max_n)?;
            out.write_all(report.render(format).as_bytes())?;
            Ok(if report.agree() { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("rightward").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn documented_examples() {
        let (code, out, _) = call(&["count", "--avoid", "1-23,34-21", "--max-n", "7", "--method", "rule"]);
        assert_eq!((code, out.trim()), (0, "1 2 5 14 42 138 492"));
        let (code, out, _) = call(&["biject", "--map", "subdiag", "--input", "4675123"]);
        assert_eq!((code, out.trim()), (0, "EEENENEEEN"));
        let (code, out, _) = call(&["expand", "--gf", "R", "--order", "5", "--at-u", "1"]);
        assert_eq!((code, out.trim()), (0, "t + 2t^2 + 4t^3 + 8t^4 + 19t^5"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["count", "--avoid", "1-x", "--max-n", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["count", "--avoid", "1-2", "--max-n", "3", "--method", "rule"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["biject", "--map", "phi", "--input", "213"]).0, EXIT_USAGE);
        assert_eq!(call(&["report", "--class", "C99"]).0, EXIT_USAGE);
    }

    #[test]
    fn count_methods_agree() {
        let outs: Vec<String> = ["brute", "tree", "rule", "gf"]
            .iter()
            .map(|m| call(&["count", "--class", "C6", "--max-n", "6", "--method", m]).1)
            .collect();
        assert!(outs.iter().all(|o| o == &outs[0]));
        assert_eq!(outs[0].trim(), "1 2 5 13 33 81");
    }

    #[test]
    fn verify_exit_status() {
        let (code, out, _) = call(&["verify", "--class", "C2e", "--max-n", "5", "--order", "8"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("match"));
    }
}
