//! Rightward generating trees for permutations avoiding generalized patterns.
//!
//! Permutations grow by appending an entry on the right. For each registered
//! class the crate counts members four ways (brute force, tree walk,
//! succession-rule DP, generating-function expansion) and checks that they
//! agree. It also verifies closed-form identities as exact series and applies
//! bijections to lattice paths.

pub mod bijections;
pub mod cli;
pub mod enumerate;
pub mod paths;
pub mod pattern;
pub mod perm;
pub mod report;
pub mod series;
pub mod succession;

pub use bijections::{BijectionError, BijectionName};
pub use enumerate::{count_brute, count_tree, EnumError};
pub use paths::{path_is, LatticePath, PathKind, Step};
pub use pattern::{avoids, PatternSet};
pub use perm::{Label, Permutation, Stat};
pub use report::{cross_check, Format, Report, ReportRow};
pub use series::{closed_form, verify_identity, GfName, Poly, Substitution, TruncatedSeries};
pub use succession::{count_by_rule, verify_rule, ClassId};
