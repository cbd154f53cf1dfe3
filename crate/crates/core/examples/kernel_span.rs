//! Kernel sums of the pencil A_x − λA_a and covectors of the roots of
//! λ ↦ g(x − λa).

use argshift::catalog::builtin;
use argshift::poly::rat;
use argshift::report::{algebraic_data, Families, Settings};
use argshift::shifts::{default_lambdas, fmt_point, kernel_span, line_polynomial, root_covectors, BasePoint};
use argshift::trdeg::{differential_matrix, root_coefficient_span_check};

fn main() {
    let alg = builtin("sl2");
    let data = algebraic_data(&alg, &Settings::default());
    let bp = BasePoint::new(&alg, data.index, vec![rat(1), rat(2), rat(3)]).unwrap();
    let x = vec![rat(4), rat(-1), rat(2)];

    let ks = kernel_span(&bp, &x, &default_lambdas(alg.dim()));
    println!("kernel sum at {}: dim {} (λ skipped: {:?})", fmt_point(&x), ks.dim(), ks.skipped.iter().map(ToString::to_string).collect::<Vec<_>>());
    let fa = Families::build(&bp, &data).unwrap().fa;
    println!("rank of dF_a at x: {}", differential_matrix(&fa, &x).rank());

    let g = data.pool.iter().find(|s| s.degree() == 2).expect("Casimir in the pool");
    // x = y + 2a with C(y) = 0, so λ = 2 is a root.
    let y = [rat(0), rat(1), rat(0)];
    let x: Vec<_> = y.iter().zip(&bp.a).map(|(yi, ai)| yi + rat(2) * ai).collect();
    let line: Vec<String> = line_polynomial(&g.poly, &bp.a, &x).iter().map(ToString::to_string).collect();
    println!("{}(x − λa) coefficients at {}: {:?}", g.poly, fmt_point(&x), line);
    for rc in root_covectors(&bp, g, &x).unwrap() {
        match rc {
            Ok(rc) => println!("  λ = {}: dλ = {}, in pencil kernel: {}", rc.lambda, fmt_point(&rc.covector), rc.satisfies_pencil(&bp, &x)),
            Err(e) => println!("  {e}"),
        }
    }
    println!("span check: {:?}", root_coefficient_span_check(&bp, g, &x));
}
