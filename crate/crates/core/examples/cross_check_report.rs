//! The four-way cross-check table, as text.

use rightward::report::{cross_check, Format};
use rightward::succession::ClassId;

fn main() {
    let report = cross_check(&ClassId::ALL, 7).unwrap();
    print!("{}", report.render(Format::Text));
    std::process::exit(if report.agree() { 0 } else { 1 });
}
