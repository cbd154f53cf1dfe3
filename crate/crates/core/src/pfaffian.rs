//! Pfaffians of skew polynomial matrices, principal sub-Pfaffians of `A_x`
//! and the fundamental semi-invariant `p_g`, the gcd of the nonzero
//! sub-Pfaffians of size `dim − ind`.

use std::collections::HashMap;

use serde::Serialize;

use crate::liealg::{LieAlgebra, SkewPolyMatrix};
use crate::poly::{gcd_many, Polynomial};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum PfaffianError {
    #[error("Pfaffian of a matrix of odd size {0}")]
    OddSize(usize),
    #[error("entry ({}, {}) is not the negative of ({}, {})", .0 + 1, .1 + 1, .1 + 1, .0 + 1)]
    NotSkew(usize, usize),
    #[error("matrix too large for subset memoization: {0}")]
    TooLarge(usize),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubPfaffian {
    /// Strictly increasing 0-based indices.
    pub indices: Vec<usize>,
    #[serde(serialize_with = "crate::serial::poly")]
    pub value: Polynomial,
}

/// Memoized first-row expansion over index subsets of one matrix.
struct Expander<'a> {
    m: &'a SkewPolyMatrix,
    memo: HashMap<u64, Polynomial>,
}

impl<'a> Expander<'a> {
    fn new(m: &'a SkewPolyMatrix) -> Self {
        Expander { m, memo: HashMap::new() }
    }

    /// Pf of the principal submatrix on the set bits of `mask`.
    fn pf(&mut self, mask: u64) -> Polynomial {
        let nvars = self.m.nvars();
        if mask == 0 {
            return Polynomial::one(nvars);
        }
        if let Some(p) = self.memo.get(&mask) {
            return p.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << first);
        let mut acc = Polynomial::zero(nvars);
        let mut positive = true;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let e = self.m.entry(first, j);
            if !e.is_zero() {
                let minor = self.pf(rest & !(1u64 << j));
                if !minor.is_zero() {
                    let term = e.multiply(&minor);
                    acc = if positive { acc + term } else { acc - term };
                }
            }
            positive = !positive;
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

fn check(m: &SkewPolyMatrix) -> Result<(), PfaffianError> {
    let n = m.size();
    if n > 63 {
        return Err(PfaffianError::TooLarge(n));
    }
    for i in 0..n {
        for j in i..n {
            if *m.entry(i, j) != -m.entry(j, i).clone() {
                return Err(PfaffianError::NotSkew(i, j));
            }
        }
    }
    Ok(())
}

/// `Pf(M)`, with `Pf(M)² = det M`.
pub fn pfaffian(m: &SkewPolyMatrix) -> Result<Polynomial, PfaffianError> {
    let n = m.size();
    if n % 2 == 1 {
        return Err(PfaffianError::OddSize(n));
    }
    check(m)?;
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    Ok(Expander::new(m).pf(full))
}

/// All `t`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn go(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < t - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    go(0, n, t, &mut cur, &mut out);
    out
}

/// Pfaffians of every principal `t × t` submatrix of `A_x`, in lexicographic
/// order of index sets.
pub fn sub_pfaffians(alg: &LieAlgebra, t: usize) -> Result<Vec<SubPfaffian>, PfaffianError> {
    if t % 2 == 1 {
        return Err(PfaffianError::OddSize(t));
    }
    let a = alg.structure_matrix();
    if a.size() > 63 {
        return Err(PfaffianError::TooLarge(a.size()));
    }
    let mut ex = Expander::new(&a);
    Ok(subsets(alg.dim(), t)
        .into_iter()
        .map(|indices| {
            let mask = indices.iter().fold(0u64, |m, &i| m | (1u64 << i));
            SubPfaffian {
                value: ex.pf(mask),
                indices,
            }
        })
        .collect())
}

/// `p_g` for an algebra of the given index, normalized by
/// [`Polynomial::primitive`]; constants become 1.
pub fn fundamental_semiinvariant(alg: &LieAlgebra, index: usize) -> Polynomial {
    let t = alg.dim() - index;
    let subs = sub_pfaffians(alg, t).expect("dim − ind is even");
    let values: Vec<Polynomial> = subs.into_iter().map(|s| s.value).filter(|v| !v.is_zero()).collect();
    gcd_many(&values).expect("a sub-Pfaffian of generic-rank size is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::linalg::poly_matrix_det;
    use crate::poly::{parse_polynomial, rat};
    use crate::semiinv::verify_semiinvariant;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn skew(upper: &[&str], n: usize, nvars: usize) -> SkewPolyMatrix {
        let mut e = vec![vec![Polynomial::zero(nvars); n]; n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = p(it.next().unwrap(), nvars);
                e[j][i] = -v.clone();
                e[i][j] = v;
            }
        }
        SkewPolyMatrix::new(e, nvars).unwrap()
    }

    #[test]
    fn two_by_two() {
        let m = skew(&["x1^2 - 3"], 2, 1);
        assert_eq!(pfaffian(&m).unwrap(), p("x1^2 - 3", 1));
    }

    #[test]
    fn four_by_four_formula() {
        // a12 a34 − a13 a24 + a14 a23 with a_ij = x_k for k = 1..6.
        let m = skew(&["x1", "x2", "x3", "x4", "x5", "x6"], 4, 6);
        assert_eq!(pfaffian(&m).unwrap(), p("x1*x6 - x2*x5 + x3*x4", 6));
        assert_eq!(pfaffian(&m).unwrap().pow(2), poly_matrix_det(m.entries(), 6));
    }

    #[test]
    fn empty_and_odd() {
        let m = SkewPolyMatrix::new(vec![], 2).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), Polynomial::one(2));
        let m = skew(&["x1", "x2", "x1"], 3, 2);
        assert_eq!(pfaffian(&m), Err(PfaffianError::OddSize(3)));
        assert_eq!(sub_pfaffians(&builtin("sl2"), 1), Err(PfaffianError::OddSize(1)));
    }

    #[test]
    fn six_by_six_against_determinant() {
        let names: Vec<String> = (0..15).map(|k| format!("x{} - {}", k % 3 + 1, k)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let m = skew(&refs, 6, 3);
        let pf = pfaffian(&m).unwrap();
        assert_eq!(pf.pow(2), poly_matrix_det(m.entries(), 3));
    }

    #[test]
    fn heisenberg_and_sl2_sub_pfaffians() {
        let vals: Vec<Polynomial> = sub_pfaffians(&builtin("heisenberg"), 2).unwrap().into_iter().map(|s| s.value).collect();
        assert_eq!(vals, vec![p("x3", 3), Polynomial::zero(3), Polynomial::zero(3)]);
        let subs = sub_pfaffians(&builtin("sl2"), 2).unwrap();
        let vals: Vec<Polynomial> = subs.iter().map(|s| s.value.clone()).collect();
        assert_eq!(vals, vec![p("2*x2", 3), p("-2*x3", 3), p("x1", 3)]);
        assert_eq!(subs[2].indices, vec![1, 2]);
        let zero = sub_pfaffians(&builtin("aff1"), 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].value, Polynomial::one(2));
    }

    #[test]
    fn fundamental_semiinvariants_of_catalog() {
        let cases = [
            ("abelian3", "1", 3),
            ("aff1", "x2", 2),
            ("heisenberg", "x3", 3),
            ("sl2", "1", 3),
            ("aff1_plus_aff1", "x2*x4", 4),
            ("heisenberg_plus_aff1", "x3*x5", 5),
        ];
        for (name, expected, n) in cases {
            let alg = builtin(name);
            let pg = fundamental_semiinvariant(&alg, alg.index_exact());
            assert_eq!(pg, p(expected, n), "{name}");
            assert!(verify_semiinvariant(&alg, &pg).is_some(), "{name}");
        }
    }

    #[test]
    fn transposing_two_indices_flips_sign() {
        let m = skew(&["x1", "x2 + 1", "3", "x1*x2", "x2", "-x1"], 4, 2);
        let mut e = m.entries().to_vec();
        e.swap(1, 3);
        for row in &mut e {
            row.swap(1, 3);
        }
        let swapped = SkewPolyMatrix::new(e, 2).unwrap();
        assert_eq!(pfaffian(&swapped).unwrap(), -pfaffian(&m).unwrap());
        assert_eq!(pfaffian(&m.principal_submatrix(&[0, 1])).unwrap().evaluate(&[rat(2), rat(0)]).unwrap(), rat(2));
    }
}
