//! Lie–Poisson and frozen brackets on sl(2), and a bi-involution check.

use argshift::brackets::{frozen, involution_check, lie_poisson};
use argshift::catalog::builtin;
use argshift::poly::{parse_polynomial, rat, Polynomial};

fn main() {
    let sl2 = builtin("sl2");
    let n = sl2.dim();
    let p = |s: &str| parse_polynomial(s, n).unwrap();
    let a = vec![rat(1), rat(2), rat(3)];

    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (xi, xj) = (Polynomial::var(n, i), Polynomial::var(n, j));
        println!(
            "{{x{}, x{}}} = {}    frozen at a: {}",
            i + 1,
            j + 1,
            lie_poisson(&sl2, &xi, &xj).unwrap(),
            frozen(&sl2, &a, &xi, &xj).unwrap()
        );
    }

    let casimir = &sl2.casimirs()[0];
    println!("Casimir {casimir}: {{x1, C}} = {}", lie_poisson(&sl2, &p("x1"), casimir).unwrap());

    // The shift coefficients of C commute under both brackets; x1 and x2 do not.
    let good = casimir.shift_expand(&a).unwrap()[1..].to_vec();
    let report = involution_check(&sl2, &a, &good).unwrap();
    println!("shift coefficients {:?}: in bi-involution = {}", good.iter().map(ToString::to_string).collect::<Vec<_>>(), report.in_bi_involution());
    let bad = vec![p("x1"), p("x2")];
    let report = involution_check(&sl2, &a, &bad).unwrap();
    for v in &report.violations {
        println!("violation {:?} under {:?}: {}", v.pair, v.bracket, v.residual);
    }
}
