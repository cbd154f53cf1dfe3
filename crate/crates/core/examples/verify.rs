//! The full pipeline over the bundled catalog, printed as JSON.

use argshift::catalog::builtin_entries;
use argshift::report::{run_catalog, Settings};

fn main() {
    let reports = run_catalog(&builtin_entries(), &Settings::default());
    for r in &reports {
        eprintln!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.algebra);
    }
    println!("{}", serde_json::to_string_pretty(&reports).unwrap());
}
