//! Sub-Pfaffians of the structure matrix and the fundamental semi-invariant.

use argshift::catalog::builtin_all;
use argshift::pfaffian::{fundamental_semiinvariant, pfaffian, sub_pfaffians};

fn main() {
    for alg in builtin_all() {
        let ind = alg.index_exact();
        let t = alg.dim() - ind;
        let pg = fundamental_semiinvariant(&alg, ind);
        println!("{}: ind {ind}, p_g = {pg}", alg.name());
        for s in sub_pfaffians(&alg, t).unwrap().iter().filter(|s| !s.value.is_zero()) {
            let idx: Vec<String> = s.indices.iter().map(|i| (i + 1).to_string()).collect();
            println!("  Pf[{}] = {}", idx.join(","), s.value);
        }
    }

    let m = builtin_all().into_iter().find(|a| a.name() == "aff1_plus_aff1").unwrap().structure_matrix();
    println!("full Pfaffian of aff1 + aff1: {}", pfaffian(&m).unwrap());
}
