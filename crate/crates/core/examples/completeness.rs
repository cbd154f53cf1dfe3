//! Completeness via stabilizers at generic points of the singular set.

use argshift::catalog::builtin_all;
use argshift::report::{algebraic_data, Settings, Stage};
use argshift::singular::completeness_verdict;

fn main() {
    let settings = Settings::default();
    for alg in builtin_all() {
        let data = algebraic_data(&alg, &settings);
        let r = completeness_verdict(&alg, &data.p_g, &data.pool, &mut settings.rng(Stage::Completeness), settings.sample_options());
        println!("{}: {} (p_g = {})", alg.name(), r.verdict, data.p_g);
        for c in &r.components {
            println!("  {} = 0: {:?}", c.factor.poly, c.generic_class);
            for p in &c.points {
                println!("    ({}) stabilizer dim {}, aff(1)+abelian {}, generic {}", p.point.join(", "), p.stabilizer_dim, p.aff_abelian, p.generic);
            }
        }
    }
}
