//! Degree-bounded search for semi-invariants and their weights.

use argshift::catalog::builtin_all;
use argshift::sampling::seeded;
use argshift::semiinv::{factor_semiinvariant, find_semiinvariants, SemiInvariant};

fn main() {
    for alg in builtin_all() {
        let result = find_semiinvariants(&alg, 2, &mut seeded(1));
        println!("{} (degree <= {}):", alg.name(), result.max_degree);
        for s in &result.found {
            let w: Vec<String> = s.weight.iter().map(ToString::to_string).collect();
            println!("  {}  weight ({})", s.poly, w.join(", "));
        }
        if !result.irrational_degrees.is_empty() {
            println!("  eigenvalues not rational at degrees {:?}", result.irrational_degrees);
        }
        // Products factor back over the pool.
        if let [a, b, ..] = result.found.as_slice() {
            let prod = SemiInvariant::new(&alg, a.poly.multiply(&b.poly)).unwrap();
            let f = factor_semiinvariant(&prod, &result.found);
            let parts: Vec<String> = f.factors.iter().map(|(s, e)| format!("({})^{e}", s.poly)).collect();
            println!("  {} = {} * {}", prod.poly, f.cofactor, parts.join(" * "));
        }
    }
}
