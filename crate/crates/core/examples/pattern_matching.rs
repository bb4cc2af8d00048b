//! Occurrences of vincular patterns and avoidance of barred ones.

use rightward::pattern::{occurrences, parse_pattern, PatternExpr};
use rightward::{avoids, PatternSet, Permutation};

fn main() {
    let pi: Permutation = "3542716".parse().unwrap();
    for text in ["2-1-3", "2-13", "12-3", "34-21"] {
        let PatternExpr::Plain(pat) = parse_pattern(text).unwrap() else { unreachable!() };
        let occ = occurrences(&pi, &pat);
        println!("{pi} has {} occurrence(s) of {text}: {occ:?}", occ.len());
    }

    let set: PatternSet = "2-1-3,[2]-31".parse().unwrap();
    for text in ["4675123", "4627513", "1"] {
        let p: Permutation = text.parse().unwrap();
        println!("{p} avoids {{{set}}}: {}", avoids(&p, &set));
    }
}
