//! The three generator families at a base point, with provenance.

use argshift::catalog::builtin;
use argshift::poly::rat;
use argshift::report::{algebraic_data, Families, Settings};
use argshift::shifts::BasePoint;

fn main() {
    let alg = builtin("heisenberg_plus_aff1");
    let data = algebraic_data(&alg, &Settings::default());
    let a = vec![rat(1), rat(-2), rat(3), rat(4), rat(5)];
    let bp = BasePoint::new(&alg, data.index, a).unwrap();
    let families = Families::build(&bp, &data).unwrap();
    println!("{}: ind {}, p_g = {}", alg.name(), data.index, data.p_g);
    for fam in families.all() {
        println!("{} ({} generators)", fam.kind.label(), fam.len());
        for g in &fam.generators {
            let tags: Vec<String> = g.provenance.iter().map(|t| format!("{:?} {} power {}", t.role, t.source, t.power)).collect();
            println!("  {:<12} from {}", g.poly.to_string(), tags.join("; "));
        }
    }
    let rebuilt: Vec<String> = families.fsi.reconstruct(&data.p_g).iter().map(ToString::to_string).collect();
    println!("p_g(a + λx) coefficients: {rebuilt:?}");
}
