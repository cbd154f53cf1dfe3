//! Semi-invariants: polynomials `g` with `Σ_{j,k} c_ij^k x_k ∂g/∂x_j = χ_i g`
//! for every basis index `i`. The weight `χ` is a covector on the algebra;
//! weight-zero semi-invariants are the invariants.
//!
//! Discovery works degree by degree on the operators
//! `L_i = Σ_{j,k} c_ij^k x_k ∂/∂x_j` acting on homogeneous polynomials. These
//! operators represent the algebra (`[L_i, L_j] = Σ_k c_ij^k L_k`), so a
//! semi-invariant is a common eigenvector of all of them. A random combination
//! `T = Σ t_i L_i` splits the space into eigenspaces first; each piece is then
//! shrunk to its largest `L`-stable subspace and split again by each `L_i` in
//! turn. What survives all splits is a joint weight space.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::liealg::LieAlgebra;
use crate::linalg::{rank_of_rows, Matrix};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::roots::{distinct_root_count, rational_roots};
use crate::sampling::{random_int, Sampler};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiInvariant {
    pub poly: Polynomial,
    pub weight: Vec<Rational>,
}

impl Serialize for SemiInvariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SemiInvariant", 2)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        let w: Vec<String> = self.weight.iter().map(ToString::to_string).collect();
        st.serialize_field("weight", &w)?;
        st.end()
    }
}

impl SemiInvariant {
    /// Verifies `poly` and attaches its weight.
    pub fn new(alg: &LieAlgebra, poly: Polynomial) -> Option<Self> {
        let weight = verify_semiinvariant(alg, &poly)?;
        Some(SemiInvariant { poly, weight })
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().unwrap_or(0)
    }

    pub fn is_invariant(&self) -> bool {
        self.weight.iter().all(Zero::is_zero)
    }
}

/// `h_i = Σ_j (A_x)_ij ∂g/∂x_j` for each `i`.
fn weight_images(alg: &LieAlgebra, g: &Polynomial) -> Vec<Polynomial> {
    let a = alg.structure_matrix();
    let grad = g.gradient();
    (0..alg.dim())
        .map(|i| {
            let mut h = Polynomial::zero(alg.dim());
            for (j, dg) in grad.iter().enumerate() {
                let e = a.entry(i, j);
                if !e.is_zero() && !dg.is_zero() {
                    h = h + e.multiply(dg);
                }
            }
            h
        })
        .collect()
}

/// The weight of `g` if it is a semi-invariant, otherwise `None`.
pub fn verify_semiinvariant(alg: &LieAlgebra, g: &Polynomial) -> Option<Vec<Rational>> {
    if g.is_zero() || g.nvars() != alg.dim() {
        return None;
    }
    weight_images(alg, g)
        .iter()
        .map(|h| h.is_scalar_multiple_of(g))
        .collect()
}

/// The operators `L_1..L_n` on degree-`d` polynomials, in the basis
/// `Monomial::all_of_degree(n, d)` (descending graded-lex). Column `b` of
/// `L_i` holds the coordinates of `L_i` applied to monomial `b`.
pub fn weight_operators(alg: &LieAlgebra, d: u32) -> (Vec<Monomial>, Vec<Matrix>) {
    let n = alg.dim();
    let basis = Monomial::all_of_degree(n, d);
    let position: std::collections::HashMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let size = basis.len();
    let mut ops = vec![Matrix::zeros(size, size); n];
    for (b, m) in basis.iter().enumerate() {
        let images = weight_images(alg, &Polynomial::term(m.clone(), Rational::one()));
        for (i, h) in images.iter().enumerate() {
            for (mono, c) in h.terms() {
                ops[i][(position[mono], b)] = c.clone();
            }
        }
    }
    (basis, ops)
}

pub fn coordinates(p: &Polynomial, basis: &[Monomial]) -> Vec<Rational> {
    basis.iter().map(|m| p.coefficient(m)).collect()
}

pub fn from_coordinates(v: &[Rational], basis: &[Monomial], nvars: usize) -> Polynomial {
    Polynomial::from_terms(nvars, basis.iter().cloned().zip(v.iter().cloned()))
}

/// Result of a degree-bounded search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub max_degree: u32,
    pub found: Vec<SemiInvariant>,
    /// Degrees at which some eigenvalue was not rational, so semi-invariants
    /// over the algebraic closure may have been missed.
    pub irrational_degrees: Vec<u32>,
}

/// Largest subspace of `span(u)` stable under every operator.
fn largest_stable_subspace(u: Vec<Vec<Rational>>, ops: &[Matrix], size: usize) -> Vec<Vec<Rational>> {
    let mut basis = u;
    loop {
        let k = basis.len();
        if k == 0 {
            return basis;
        }
        let b = Matrix::from_columns(&basis, size);
        // Rows spanning the left annihilator of B.
        let ann = b.transpose().kernel();
        if ann.is_empty() {
            return basis;
        }
        let y = Matrix::from_rows(ann, size);
        let mut stacked = Matrix::zeros(0, k);
        for op in ops {
            stacked = stacked.vstack(&y.mul(&op.mul(&b)));
        }
        let keep = stacked.kernel();
        if keep.len() == k {
            return basis;
        }
        basis = keep.iter().map(|c| b.mul_vec(c)).collect();
    }
}

/// Splits a stable subspace by the eigenvalues of `ops[i..]` in turn.
fn refine(
    basis: Vec<Vec<Rational>>,
    ops: &[Matrix],
    i: usize,
    size: usize,
    weight: &mut Vec<Rational>,
    irrational: &mut bool,
    out: &mut Vec<(Vec<Rational>, Vec<Vec<Rational>>)>,
) {
    if basis.is_empty() {
        return;
    }
    if i == ops.len() {
        out.push((weight.clone(), basis));
        return;
    }
    let b = Matrix::from_columns(&basis, size);
    let k = basis.len();
    let image = ops[i].mul(&b);
    let restricted = Matrix::from_columns(
        &(0..k)
            .map(|c| b.solve(&image.column(c)).expect("subspace is stable"))
            .collect::<Vec<_>>(),
        k,
    );
    let (eigs, irr) = rational_roots(&restricted.charpoly());
    if irr > 0 {
        *irrational = true;
    }
    for nu in eigs {
        let shifted = restricted.sub(&Matrix::identity(k).scale(&nu));
        let sub: Vec<Vec<Rational>> = shifted.kernel().iter().map(|c| b.mul_vec(c)).collect();
        let stable = largest_stable_subspace(sub, ops, size);
        weight.push(nu);
        refine(stable, ops, i + 1, size, weight, irrational, out);
        weight.pop();
    }
}

/// Products of at least two earlier findings with total degree `d` and
/// total weight `weight`.
fn products_of(found: &[SemiInvariant], d: u32, weight: &[Rational], nvars: usize) -> Vec<Polynomial> {
    fn rec(
        found: &[SemiInvariant],
        start: usize,
        left: u32,
        count: usize,
        acc: (Polynomial, Vec<Rational>),
        target: &[Rational],
        out: &mut Vec<Polynomial>,
    ) {
        if left == 0 {
            if count >= 2 && acc.1 == target {
                out.push(acc.0);
            }
            return;
        }
        for (idx, s) in found.iter().enumerate().skip(start) {
            let deg = s.degree();
            if deg == 0 || deg > left {
                continue;
            }
            let w: Vec<Rational> = acc.1.iter().zip(&s.weight).map(|(a, b)| a + b).collect();
            rec(found, idx, left - deg, count + 1, (acc.0.multiply(&s.poly), w), target, out);
        }
    }
    let mut out = Vec::new();
    let start = (Polynomial::one(nvars), vec![Rational::zero(); nvars]);
    rec(found, 0, d, 0, start, weight, &mut out);
    out
}

/// Searches degrees `1..=max_degree` for semi-invariants with rational
/// weights. Products of lower-degree findings are left out.
pub fn find_semiinvariants(alg: &LieAlgebra, max_degree: u32, rng: &mut Sampler) -> SearchResult {
    let n = alg.dim();
    let mut found: Vec<SemiInvariant> = Vec::new();
    let mut irrational_degrees = Vec::new();
    for d in 1..=max_degree {
        let (basis, ops) = weight_operators(alg, d);
        let size = basis.len();
        let combine = |rng: &mut Sampler| {
            let mut t = Matrix::zeros(size, size);
            for op in &ops {
                t = t.add_scaled(op, &crate::poly::rat(random_int(rng, 1, 997)));
            }
            t
        };
        let mut t = combine(rng);
        let mut cp = t.charpoly();
        if distinct_root_count(&cp) != Some(size) {
            t = combine(rng);
            cp = t.charpoly();
        }
        let (eigs, irr) = rational_roots(&cp);
        let mut irrational = irr > 0;
        let mut spaces = Vec::new();
        for mu in eigs {
            let shifted = t.sub(&Matrix::identity(size).scale(&mu));
            let stable = largest_stable_subspace(shifted.kernel(), &ops, size);
            refine(stable, &ops, 0, size, &mut Vec::new(), &mut irrational, &mut spaces);
        }
        if irrational {
            irrational_degrees.push(d);
        }
        let mut new_found = Vec::new();
        for (weight, space) in spaces {
            let prods: Vec<Vec<Rational>> = products_of(&found, d, &weight, n)
                .iter()
                .map(|p| coordinates(p, &basis))
                .collect();
            let canonical = Matrix::from_rows(space, size).row_space_basis().to_rows();
            let mut kept = prods;
            let mut rank = rank_of_rows(&kept, size);
            for v in canonical {
                kept.push(v.clone());
                let r = rank_of_rows(&kept, size);
                if r > rank {
                    rank = r;
                    let poly = from_coordinates(&v, &basis, n).primitive();
                    let si = SemiInvariant::new(alg, poly).expect("joint weight vector is a semi-invariant");
                    assert_eq!(si.weight, weight, "weight mismatch after refinement");
                    new_found.push(si);
                } else {
                    kept.pop();
                }
            }
        }
        new_found.sort_by(|a, b| a.poly.leading_term().map(|t| t.0).cmp(&b.poly.leading_term().map(|t| t.0)).reverse());
        found.extend(new_found);
    }
    SearchResult {
        max_degree,
        found,
        irrational_degrees,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub factors: Vec<(SemiInvariant, u32)>,
    /// What is left after dividing out pool elements; a nonzero constant when
    /// the factorization is complete.
    pub cofactor: Polynomial,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_constant()
    }
}

/// Greedy exact division of `g` by pool elements, lowest degree first with
/// graded-lex tiebreak on leading monomials.
pub fn factor_semiinvariant(g: &SemiInvariant, pool: &[SemiInvariant]) -> Factorization {
    let mut ordered: Vec<&SemiInvariant> = pool.iter().filter(|s| s.degree() > 0).collect();
    ordered.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.poly.leading_term().map(|t| t.0).cmp(&a.poly.leading_term().map(|t| t.0)))
    });
    let mut distinct: Vec<&SemiInvariant> = Vec::new();
    for s in ordered {
        if !distinct.iter().any(|d| s.poly.is_scalar_multiple_of(&d.poly).is_some()) {
            distinct.push(s);
        }
    }
    let mut rest = g.poly.clone();
    let mut factors = Vec::new();
    for s in distinct {
        let mut mult = 0;
        while !rest.is_constant() {
            match rest.exact_div(&s.poly) {
                Some(q) => {
                    rest = q;
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            factors.push((s.clone(), mult));
        }
    }
    let out = Factorization {
        factors,
        cofactor: rest,
    };
    if out.is_complete() {
        let mut total = vec![Rational::zero(); g.weight.len()];
        for (s, m) in &out.factors {
            for (t, w) in total.iter_mut().zip(&s.weight) {
                *t += w * crate::poly::rat(*m as i64);
            }
        }
        assert_eq!(total, g.weight, "weights of factors must add up");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::poly::{parse_polynomial, rat};
    use crate::sampling::seeded;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn w(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn verify_examples() {
        let aff = builtin("aff1");
        assert_eq!(verify_semiinvariant(&aff, &p("x2", 2)), Some(w(&[1, 0])));
        assert_eq!(verify_semiinvariant(&aff, &p("x1", 2)), None);
        let sl2 = builtin("sl2");
        assert_eq!(verify_semiinvariant(&sl2, &p("x1^2 + 4*x2*x3", 3)), Some(w(&[0, 0, 0])));
        assert_eq!(verify_semiinvariant(&sl2, &Polynomial::zero(3)), None);
    }

    #[test]
    fn weight_is_additive() {
        let aa = builtin("aff1_plus_aff1");
        let f = p("x2", 4);
        let g = p("x4^2", 4);
        let wf = verify_semiinvariant(&aa, &f).unwrap();
        let wg = verify_semiinvariant(&aa, &g).unwrap();
        let wfg = verify_semiinvariant(&aa, &f.multiply(&g)).unwrap();
        let sum: Vec<Rational> = wf.iter().zip(&wg).map(|(a, b)| a + b).collect();
        assert_eq!(wfg, sum);
    }

    #[test]
    fn aff1_operators_degree_one() {
        let (basis, ops) = weight_operators(&builtin("aff1"), 1);
        assert_eq!(basis, vec![Monomial::var(2, 0), Monomial::var(2, 1)]);
        assert_eq!(ops[0], Matrix::from_rows(vec![w(&[0, 0]), w(&[0, 1])], 2));
        assert_eq!(ops[1], Matrix::from_rows(vec![w(&[0, 0]), w(&[-1, 0])], 2));
        let (_, ops) = weight_operators(&builtin("abelian3"), 2);
        assert!(ops.iter().all(Matrix::is_zero));
    }

    #[test]
    fn operators_represent_the_algebra() {
        for alg in crate::catalog::builtin_all() {
            let n = alg.dim();
            for d in 1..=2 {
                let (_, ops) = weight_operators(&alg, d);
                for i in 0..n {
                    for j in 0..n {
                        let comm = ops[i].mul(&ops[j]).sub(&ops[j].mul(&ops[i]));
                        let mut rhs = Matrix::zeros(comm.rows(), comm.cols());
                        for k in 0..n {
                            rhs = rhs.add_scaled(&ops[k], alg.constant(i, j, k));
                        }
                        assert_eq!(comm, rhs, "{} d={d} ({i},{j})", alg.name());
                    }
                }
            }
        }
    }

    #[test]
    fn search_aff1() {
        let r = find_semiinvariants(&builtin("aff1"), 2, &mut seeded(3));
        assert_eq!(r.found.len(), 1);
        assert_eq!(r.found[0].poly, p("x2", 2));
        assert_eq!(r.found[0].weight, w(&[1, 0]));
    }

    #[test]
    fn search_heisenberg() {
        let r = find_semiinvariants(&builtin("heisenberg"), 2, &mut seeded(3));
        assert_eq!(r.found.len(), 1);
        assert_eq!(r.found[0].poly, p("x3", 3));
        assert!(r.found[0].is_invariant());
    }

    #[test]
    fn search_aff1_plus_aff1() {
        let r = find_semiinvariants(&builtin("aff1_plus_aff1"), 1, &mut seeded(3));
        let mut got: Vec<(String, Vec<Rational>)> =
            r.found.iter().map(|s| (s.poly.to_string(), s.weight.clone())).collect();
        got.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            got,
            vec![("x2".to_string(), w(&[1, 0, 0, 0])), ("x4".to_string(), w(&[0, 0, 1, 0]))]
        );
    }

    #[test]
    fn search_sl2_finds_casimir() {
        let r = find_semiinvariants(&builtin("sl2"), 2, &mut seeded(5));
        assert_eq!(r.found.len(), 1);
        assert_eq!(r.found[0].poly, p("x1^2 + 4*x2*x3", 3));
    }

    #[test]
    fn factorization_examples() {
        let aa = builtin("aff1_plus_aff1");
        let pool = find_semiinvariants(&aa, 2, &mut seeded(1)).found;
        let pg = SemiInvariant::new(&aa, p("x2*x4", 4)).unwrap();
        let f = factor_semiinvariant(&pg, &pool);
        assert!(f.is_complete());
        let names: Vec<(String, u32)> = f.factors.iter().map(|(s, m)| (s.poly.to_string(), *m)).collect();
        assert_eq!(names, vec![("x2".into(), 1), ("x4".into(), 1)]);

        let aff = builtin("aff1");
        let pool = vec![SemiInvariant::new(&aff, p("x2", 2)).unwrap()];
        let cube = SemiInvariant::new(&aff, p("x2^3", 2)).unwrap();
        let f = factor_semiinvariant(&cube, &pool);
        assert_eq!(f.factors[0].1, 3);

        let h = builtin("heisenberg");
        let x3 = SemiInvariant::new(&h, p("x3", 3)).unwrap();
        let f = factor_semiinvariant(&x3, std::slice::from_ref(&x3));
        assert_eq!(f.factors, vec![(x3, 1)]);
    }

    #[test]
    fn incomplete_factorization_is_reported() {
        let sl2 = builtin("sl2");
        let c = SemiInvariant::new(&sl2, p("x1^2 + 4*x2*x3", 3)).unwrap();
        let f = factor_semiinvariant(&c, &[]);
        assert!(!f.is_complete());
        assert_eq!(f.cofactor, c.poly);
    }
}
