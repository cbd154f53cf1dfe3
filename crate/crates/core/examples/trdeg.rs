//! Transcendence degrees of the families and the equality check between the
//! extended and semi-invariant families.

use argshift::catalog::builtin_all;
use argshift::report::{algebraic_data, random_regular_point, Families, Settings};
use argshift::sampling::seeded;
use argshift::shifts::BasePoint;
use argshift::trdeg::{completeness_bound, span_dimension, verify_trdeg_equality};

fn main() {
    let settings = Settings::default();
    for alg in builtin_all() {
        let data = algebraic_data(&alg, &settings);
        let a = random_regular_point(&alg, data.index, &settings);
        let bp = BasePoint::new(&alg, data.index, a).unwrap();
        let f = Families::build(&bp, &data).unwrap();
        let mut rng = seeded(7);
        let dims: Vec<usize> = f.all().iter().map(|fam| span_dimension(fam, &mut rng, 12, 999)).collect();
        let v = verify_trdeg_equality(&f.ftilde, &f.fsi, &mut rng, 12, 999);
        println!(
            "{:<22} fa {} ftilde {} fsi {}  bound {}  equal spans at {}/{} points",
            alg.name(),
            dims[0],
            dims[1],
            dims[2],
            completeness_bound(alg.dim(), data.index),
            v.span_equal_points,
            v.samples
        );
    }
}
