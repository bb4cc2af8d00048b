//! Succession rules: children of a few labels, rule counts, and the
//! rule-versus-tree comparison for every registered class.

use rightward::count_by_rule;
use rightward::succession::{rule_children_with_branch, verify_rule, ClassId};

fn main() {
    let class = ClassId::C4;
    let spec = class.spec();
    let root = class.root();
    println!("{class} avoids {} with root {root}", spec.patterns);
    let (branch, kids) = rule_children_with_branch(class, &root);
    let kids: Vec<String> = kids.iter().map(|l| l.to_string()).collect();
    println!("  {root} -> {} [{branch}]", kids.join(" "));

    let counts: Vec<String> = count_by_rule(class, 12).iter().map(|c| c.to_string()).collect();
    println!("  counts: {}", counts.join(", "));

    for c in ClassId::ALL {
        println!("{}", verify_rule(c, 7).unwrap());
    }
}
