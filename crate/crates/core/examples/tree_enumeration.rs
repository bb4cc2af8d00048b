//! Grows the rightward generating tree of a class and counts each level,
//! checking the count against brute force.

use rightward::enumerate::{count_brute, count_tree, walk_tree};
use rightward::PatternSet;

fn main() {
    let set: PatternSet = "1-23,34-21".parse().unwrap();
    let tree = count_tree(&set, 8).unwrap();
    for (i, c) in tree.iter().enumerate() {
        let n = i + 1;
        println!("n={n}: tree {c}, brute {}", count_brute(&set, n).unwrap());
    }

    walk_tree(&set, 3, |n, level| {
        let names: Vec<String> = level.iter().map(|p| p.to_string()).collect();
        println!("level {n}: {}", names.join(" "));
    })
    .unwrap();
}
