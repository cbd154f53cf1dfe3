//! Defines the Euclidean algebra e(2) in code, checks Jacobi and its Casimir,
//! and shows what a broken table is rejected with.

use argshift::liealg::{LieAlgebra, StructureConstant};
use argshift::poly::{parse_polynomial, rat};

fn main() {
    // [e1, e2] = e3, [e1, e3] = -e2
    let table = [StructureConstant::new(0, 1, 2, rat(1)), StructureConstant::new(0, 2, 1, rat(-1))];
    let e2 = LieAlgebra::validate("e2", 3, &table)
        .unwrap()
        .with_casimirs(vec![parse_polynomial("x2^2 + x3^2", 3).unwrap()])
        .unwrap();
    println!("{e2}");
    println!("structure matrix A_x:");
    let a = e2.structure_matrix();
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| a.entry(i, j).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
    println!("index (exact): {}", e2.index_exact());

    let mut broken = table.to_vec();
    broken.push(StructureConstant::new(1, 2, 1, rat(1)));
    match LieAlgebra::validate("broken", 3, &broken) {
        Ok(_) => println!("unexpectedly valid"),
        Err(e) => println!("rejected: {e}"),
    }
}
