//! Run the fixture registry and print the reproduction report.

use ruled_braids::fixtures::repro;

fn main() {
    let report = repro(false);
    println!("{report}");
    for f in report.failures() {
        println!("failed: {} ({})", f.name, f.provenance);
    }
}
