//! Lie algebras given by rational structure constants `[e_i, e_j] = Σ_k c_ij^k e_k`.
//!
//! Indices are 0-based in the API and 1-based in every message, matching the
//! `x1..xn` polynomial text form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{poly_matrix_rank, Matrix};
use crate::poly::{Polynomial, Rational};
use crate::sampling::{random_point, Sampler};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum LieError {
    #[error("structure constant index out of range: ({i}, {j}, {k}) for dim {dim}")]
    IndexOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("antisymmetry violated for [e{}, e{}] component e{}", .i + 1, .j + 1, .k + 1)]
    AntisymmetryViolation { i: usize, j: usize, k: usize },
    #[error("Jacobi identity fails on (e{}, e{}, e{}); residual {}", .triple.0 + 1, .triple.1 + 1, .triple.2 + 1, fmt_vec(.residual))]
    JacobiViolation {
        triple: (usize, usize, usize),
        residual: Vec<Rational>,
    },
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("polynomial {poly} is not an invariant: {reason}")]
    InvalidCasimir { poly: String, reason: String },
    #[error("polynomial {poly} is not a semi-invariant")]
    InvalidSemiInvariant { poly: String },
    #[error("stabilizer basis is not closed under the bracket")]
    ClosureFailure,
    #[error("skew matrix expected: entry ({}, {}) is not the negative of ({}, {})", .0 + 1, .1 + 1, .1 + 1, .0 + 1)]
    NotSkew(usize, usize),
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// One raw structure constant `c_ij^k = value` (0-based indices).
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Rational,
}

impl StructureConstant {
    pub fn new(i: usize, j: usize, k: usize, value: Rational) -> Self {
        StructureConstant { i, j, k, value }
    }
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    /// `(i, j)` with `i < j` → sparse `[(k, c_ij^k)]`.
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    dense: Vec<Rational>,
    casimirs: Vec<Polynomial>,
    semi_invariants: Vec<Polynomial>,
}

impl LieAlgebra {
    /// Builds and validates an algebra. Constants may be given for `i > j`;
    /// they are folded into the `i < j` storage by antisymmetry and must agree
    /// with any explicit `i < j` value.
    pub fn validate(name: &str, dim: usize, raw: &[StructureConstant]) -> Result<Self, LieError> {
        let mut table: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for sc in raw {
            let (i, j, k) = (sc.i, sc.j, sc.k);
            if i >= dim || j >= dim || k >= dim {
                return Err(LieError::IndexOutOfRange { i, j, k, dim });
            }
            if i == j {
                if !sc.value.is_zero() {
                    return Err(LieError::AntisymmetryViolation { i, j, k });
                }
                continue;
            }
            let (key, v) = if i < j {
                ((i, j, k), sc.value.clone())
            } else {
                ((j, i, k), -sc.value.clone())
            };
            if let Some(prev) = table.get(&key) {
                if *prev != v {
                    return Err(LieError::AntisymmetryViolation { i: key.0, j: key.1, k });
                }
            }
            table.insert(key, v);
        }
        let mut brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
        let mut dense = vec![Rational::zero(); dim * dim * dim];
        for ((i, j, k), v) in table {
            if v.is_zero() {
                continue;
            }
            dense[(i * dim + j) * dim + k] = v.clone();
            dense[(j * dim + i) * dim + k] = -v.clone();
            brackets.entry((i, j)).or_default().push((k, v));
        }
        let alg = LieAlgebra {
            name: name.to_string(),
            dim,
            brackets,
            dense,
            casimirs: Vec::new(),
            semi_invariants: Vec::new(),
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (self.basis(i), self.basis(j), self.basis(k));
                    let t1 = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let t2 = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let t3 = self.bracket(&self.bracket(&ek, &ei), &ej);
                    let residual: Vec<Rational> = (0..n).map(|m| &t1[m] + &t2[m] + &t3[m]).collect();
                    if residual.iter().any(|r| !r.is_zero()) {
                        return Err(LieError::JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches invariants; each must have weight zero.
    pub fn with_casimirs(mut self, casimirs: Vec<Polynomial>) -> Result<Self, LieError> {
        for c in &casimirs {
            match crate::semiinv::verify_semiinvariant(&self, c) {
                Some(w) if w.iter().all(Zero::is_zero) => {}
                Some(w) => {
                    return Err(LieError::InvalidCasimir {
                        poly: c.to_string(),
                        reason: format!("nonzero weight {}", fmt_vec(&w)),
                    })
                }
                None => {
                    return Err(LieError::InvalidCasimir {
                        poly: c.to_string(),
                        reason: "not a semi-invariant".into(),
                    })
                }
            }
        }
        self.casimirs = casimirs;
        Ok(self)
    }

    /// Attaches user-supplied semi-invariants; each is verified.
    pub fn with_semi_invariants(mut self, semis: Vec<Polynomial>) -> Result<Self, LieError> {
        for s in &semis {
            if crate::semiinv::verify_semiinvariant(&self, s).is_none() {
                return Err(LieError::InvalidSemiInvariant { poly: s.to_string() });
            }
        }
        self.semi_invariants = semis;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn casimirs(&self) -> &[Polynomial] {
        &self.casimirs
    }

    pub fn semi_invariants(&self) -> &[Polynomial] {
        &self.semi_invariants
    }

    /// Nonzero constants with `i < j`.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Vec<(usize, Rational)>> {
        &self.brackets
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.dense[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for ((i, j), row) in &self.brackets {
            let coef = &u[*i] * &v[*j] - &u[*j] * &v[*i];
            if coef.is_zero() {
                continue;
            }
            for (k, c) in row {
                out[*k] += &coef * c;
            }
        }
        out
    }

    /// `A_x` with entries `Σ_k c_ij^k x_k`.
    pub fn structure_matrix(&self) -> SkewPolyMatrix {
        let n = self.dim;
        let mut entries = vec![vec![Polynomial::zero(n); n]; n];
        for ((i, j), row) in &self.brackets {
            let mut coeffs = vec![Rational::zero(); n];
            for (k, c) in row {
                coeffs[*k] = c.clone();
            }
            let form = Polynomial::linear(&coeffs);
            entries[*j][*i] = -form.clone();
            entries[*i][*j] = form;
        }
        SkewPolyMatrix { n, nvars: n, entries }
    }

    /// The numeric matrix `A_a`.
    pub fn evaluate_matrix(&self, a: &[Rational]) -> Result<Matrix, LieError> {
        self.check_len(a)?;
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for ((i, j), row) in &self.brackets {
            let v: Rational = row.iter().map(|(k, c)| c * &a[*k]).sum();
            m[(j.to_owned(), i.to_owned())] = -v.clone();
            m[(*i, *j)] = v;
        }
        Ok(m)
    }

    fn check_len(&self, v: &[Rational]) -> Result<(), LieError> {
        if v.len() != self.dim {
            return Err(LieError::LengthMismatch {
                got: v.len(),
                expected: self.dim,
            });
        }
        Ok(())
    }

    /// `n − max rank A_x` over `samples` random integer points in
    /// `[-bound, bound]`.
    pub fn index_of(&self, rng: &mut Sampler, samples: usize, bound: i64) -> usize {
        let max_rank = (0..samples.max(1))
            .map(|_| {
                let x = random_point(rng, self.dim, bound);
                self.evaluate_matrix(&x).expect("length matches").rank()
            })
            .max()
            .unwrap_or(0);
        self.dim - max_rank
    }

    /// `n − rank A_x` with the rank taken over the field of rational functions.
    pub fn index_exact(&self) -> usize {
        let a = self.structure_matrix();
        self.dim - poly_matrix_rank(&a.entries, self.dim)
    }

    pub fn is_regular(&self, a: &[Rational], index: usize) -> Result<bool, LieError> {
        Ok(self.evaluate_matrix(a)?.rank() == self.dim - index)
    }

    /// The coadjoint stabilizer `g_y = Ker A_y` with its induced bracket.
    pub fn stabilizer(&self, y: &[Rational]) -> Result<Subalgebra, LieError> {
        let basis = self.evaluate_matrix(y)?.kernel();
        Subalgebra::from_basis(self, basis)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim)?;
        for ((i, j), row) in &self.brackets {
            let rhs: Vec<String> = row.iter().map(|(k, c)| format!("{c}*e{}", k + 1)).collect();
            write!(f, "; [e{}, e{}] = {}", i + 1, j + 1, rhs.join(" + "))?;
        }
        Ok(())
    }
}

/// Skew-symmetric matrix of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewPolyMatrix {
    n: usize,
    nvars: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl SkewPolyMatrix {
    pub fn new(entries: Vec<Vec<Polynomial>>, nvars: usize) -> Result<Self, LieError> {
        let n = entries.len();
        for i in 0..n {
            assert_eq!(entries[i].len(), n, "square matrix expected");
            for j in i..n {
                if entries[i][j] != -entries[j][i].clone() {
                    return Err(LieError::NotSkew(i, j));
                }
            }
        }
        Ok(SkewPolyMatrix { n, nvars, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn principal_submatrix(&self, indices: &[usize]) -> SkewPolyMatrix {
        SkewPolyMatrix {
            n: indices.len(),
            nvars: self.nvars,
            entries: indices
                .iter()
                .map(|&i| indices.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(i, j)] = self.entries[i][j].evaluate(point).expect("point length");
            }
        }
        m
    }
}

/// A subalgebra given by basis vectors in the ambient algebra, with its
/// structure constants re-expressed in that basis.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    basis: Vec<Vec<Rational>>,
    /// `induced[(a * s + b) * s + c]` = coefficient of `b_c` in `[b_a, b_b]`.
    induced: Vec<Rational>,
}

impl Subalgebra {
    pub fn from_basis(ambient: &LieAlgebra, basis: Vec<Vec<Rational>>) -> Result<Self, LieError> {
        let s = basis.len();
        let n = ambient.dim();
        let b = Matrix::from_columns(&basis, n);
        let mut induced = vec![Rational::zero(); s * s * s];
        for a in 0..s {
            for c in a + 1..s {
                let br = ambient.bracket(&basis[a], &basis[c]);
                let coords = b.solve(&br).ok_or(LieError::ClosureFailure)?;
                for (k, v) in coords.into_iter().enumerate() {
                    induced[(c * s + a) * s + k] = -v.clone();
                    induced[(a * s + c) * s + k] = v;
                }
            }
        }
        Ok(Subalgebra { basis, induced })
    }

    /// An abstract algebra from its own structure constants (0-based).
    pub fn from_constants(dim: usize, raw: &[StructureConstant]) -> Result<Self, LieError> {
        let alg = LieAlgebra::validate("subalgebra", dim, raw)?;
        let basis = (0..dim).map(|i| alg.basis(i)).collect();
        Subalgebra::from_basis(&alg, basis)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn induced_constant(&self, a: usize, b: usize, c: usize) -> &Rational {
        let s = self.dim();
        &self.induced[(a * s + b) * s + c]
    }

    /// Bracket of coordinate vectors in the subalgebra basis.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let s = self.dim();
        let mut out = vec![Rational::zero(); s];
        for a in 0..s {
            for b in 0..s {
                let coef = &u[a] * &v[b];
                if coef.is_zero() {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    let k = self.induced_constant(a, b, c);
                    if !k.is_zero() {
                        *o += &coef * k;
                    }
                }
            }
        }
        out
    }

    /// Basis of `[S, S]` in subalgebra coordinates.
    pub fn derived_basis(&self) -> Vec<Vec<Rational>> {
        let s = self.dim();
        let mut rows = Vec::new();
        for a in 0..s {
            for b in a + 1..s {
                rows.push((0..s).map(|c| self.induced_constant(a, b, c).clone()).collect());
            }
        }
        crate::linalg::span_basis(&rows, s)
    }

    /// `S ≅ aff(1) ⊕ abelian`: the derived algebra is one-dimensional and
    /// not central.
    pub fn is_aff1_plus_abelian(&self) -> bool {
        let derived = self.derived_basis();
        if derived.len() != 1 {
            return false;
        }
        let d = &derived[0];
        let s = self.dim();
        (0..s).any(|b| {
            let mut e = vec![Rational::zero(); s];
            e[b] = Rational::one();
            self.bracket(d, &e).iter().any(|v| !v.is_zero())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::poly::{parse_polynomial, rat};
    use crate::sampling::seeded;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn abelian_is_valid() {
        let a = LieAlgebra::validate("abelian", 3, &[]).unwrap();
        assert!(a.structure_matrix().entries().iter().flatten().all(Polynomial::is_zero));
        assert_eq!(a.index_of(&mut seeded(1), 4, 999), 3);
    }

    /// Brute-force Jacobi check straight from the dense constants.
    fn jacobi_residual(alg: &LieAlgebra) -> Rational {
        let n = alg.dim();
        let mut worst = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut s = Rational::zero();
                        for l in 0..n {
                            s += alg.constant(i, j, l) * alg.constant(l, k, m)
                                + alg.constant(j, k, l) * alg.constant(l, i, m)
                                + alg.constant(k, i, l) * alg.constant(l, j, m);
                        }
                        if s != Rational::zero() {
                            worst = s;
                        }
                    }
                }
            }
        }
        worst
    }

    /// Same enumeration on raw constants, without going through validation.
    fn jacobi_residual_raw(raw: &[StructureConstant]) -> Rational {
        let n = 3;
        let mut c = vec![Rational::zero(); n * n * n];
        for sc in raw {
            c[(sc.i * n + sc.j) * n + sc.k] = sc.value.clone();
            c[(sc.j * n + sc.i) * n + sc.k] = -sc.value.clone();
        }
        let at = |i: usize, j: usize, k: usize| c[(i * n + j) * n + k].clone();
        let mut worst = Rational::zero();
        for m in 0..n {
            let mut s = Rational::zero();
            for l in 0..n {
                s += at(0, 1, l) * at(l, 2, m) + at(1, 2, l) * at(l, 0, m) + at(2, 0, l) * at(l, 1, m);
            }
            if !s.is_zero() {
                worst = s;
            }
        }
        worst
    }

    #[test]
    fn sl2_passes_and_perturbed_sl2_fails() {
        let sl2 = builtin("sl2");
        assert!(jacobi_residual(&sl2).is_zero());
        // Rescaling c_23^1 only rescales a basis vector, so Jacobi survives.
        let rescaled = vec![
            StructureConstant::new(0, 1, 1, rat(2)),
            StructureConstant::new(0, 2, 2, rat(-2)),
            StructureConstant::new(1, 2, 0, rat(2)),
        ];
        let ok = LieAlgebra::validate("rescaled", 3, &rescaled).unwrap();
        assert!(jacobi_residual(&ok).is_zero());
        // [e1, e2] = e1 + 2 e2 breaks it: residual -2 e3.
        let raw = vec![
            StructureConstant::new(0, 1, 0, rat(1)),
            StructureConstant::new(0, 1, 1, rat(2)),
            StructureConstant::new(0, 2, 2, rat(-2)),
            StructureConstant::new(1, 2, 0, rat(1)),
        ];
        let err = LieAlgebra::validate("bad", 3, &raw).unwrap_err();
        match err {
            LieError::JacobiViolation { triple, residual } => {
                assert_eq!(triple, (0, 1, 2));
                assert_eq!(residual, v(&[0, 0, -2]));
                assert!(!jacobi_residual_raw(&raw).is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn antisymmetry_violations() {
        let raw = vec![StructureConstant::new(1, 1, 0, rat(1))];
        assert!(matches!(
            LieAlgebra::validate("x", 2, &raw),
            Err(LieError::AntisymmetryViolation { .. })
        ));
        let raw = vec![
            StructureConstant::new(0, 1, 1, rat(1)),
            StructureConstant::new(1, 0, 1, rat(1)),
        ];
        assert!(matches!(
            LieAlgebra::validate("x", 2, &raw),
            Err(LieError::AntisymmetryViolation { .. })
        ));
        // Consistent reversed entry is accepted.
        let raw = vec![StructureConstant::new(1, 0, 1, rat(-1))];
        let a = LieAlgebra::validate("aff1", 2, &raw).unwrap();
        assert_eq!(*a.constant(0, 1, 1), rat(1));
    }

    #[test]
    fn structure_matrices() {
        let aff = builtin("aff1");
        let a = aff.structure_matrix();
        assert_eq!(*a.entry(0, 1), parse_polynomial("x2", 2).unwrap());
        assert_eq!(*a.entry(1, 0), parse_polynomial("-x2", 2).unwrap());
        let h = builtin("heisenberg").structure_matrix();
        assert_eq!(*h.entry(0, 1), parse_polynomial("x3", 3).unwrap());
        assert!(h.entry(0, 2).is_zero() && h.entry(1, 2).is_zero());
    }

    #[test]
    fn evaluate_matrix_consistent_with_structure_matrix() {
        let mut rng = seeded(7);
        for alg in crate::catalog::builtin_all() {
            let sm = alg.structure_matrix();
            for _ in 0..3 {
                let x = random_point(&mut rng, alg.dim(), 50);
                assert_eq!(sm.evaluate(&x), alg.evaluate_matrix(&x).unwrap());
            }
            assert!(alg.evaluate_matrix(&vec![Rational::zero(); alg.dim()]).unwrap().is_zero());
        }
        let aff = builtin("aff1");
        assert_eq!(
            aff.evaluate_matrix(&v(&[0, 1])).unwrap(),
            Matrix::from_rows(vec![v(&[0, 1]), v(&[-1, 0])], 2)
        );
        assert!(aff.evaluate_matrix(&v(&[1])).is_err());
    }

    #[test]
    fn indices() {
        let mut rng = seeded(42);
        assert_eq!(builtin("sl2").index_of(&mut rng, 8, 999), 1);
        assert_eq!(builtin("aff1").index_of(&mut rng, 8, 999), 0);
        assert_eq!(builtin("heisenberg").index_of(&mut rng, 8, 999), 1);
        for alg in crate::catalog::builtin_all() {
            let i = alg.index_of(&mut rng, 8, 999);
            assert_eq!(i, alg.index_exact());
            assert_eq!((alg.dim() - i) % 2, 0);
        }
    }

    #[test]
    fn regularity() {
        let aff = builtin("aff1");
        assert!(aff.is_regular(&v(&[0, 1]), 0).unwrap());
        assert!(!aff.is_regular(&v(&[0, 0]), 0).unwrap());
        let h = builtin("heisenberg");
        // A_a only sees a3: (1, 0, 0) is singular, (0, 0, 1) has rank 2.
        assert!(!h.is_regular(&v(&[1, 0, 0]), 1).unwrap());
        assert!(h.is_regular(&v(&[0, 0, 1]), 1).unwrap());
    }

    #[test]
    fn stabilizers() {
        let h = builtin("heisenberg");
        let s = h.stabilizer(&v(&[1, 2, 0])).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(!s.is_aff1_plus_abelian());

        let sl2 = builtin("sl2");
        let s = sl2.stabilizer(&v(&[1, 0, 0])).unwrap();
        assert_eq!(s.basis(), &[v(&[1, 0, 0])]);
        assert!(s.derived_basis().is_empty());

        let aa = builtin("aff1_plus_aff1");
        let s = aa.stabilizer(&v(&[5, 0, 0, 1])).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(crate::linalg::same_span(s.basis(), &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])], 4));
        assert!(s.is_aff1_plus_abelian());
    }

    #[test]
    fn aff1_classification() {
        let aff = Subalgebra::from_constants(2, &[StructureConstant::new(0, 1, 1, rat(1))]).unwrap();
        assert!(aff.is_aff1_plus_abelian());
        let heis = Subalgebra::from_constants(3, &[StructureConstant::new(0, 1, 2, rat(1))]).unwrap();
        assert!(!heis.is_aff1_plus_abelian());
        let ab = Subalgebra::from_constants(3, &[]).unwrap();
        assert!(!ab.is_aff1_plus_abelian());
        // aff(1) ⊕ C²
        let big = Subalgebra::from_constants(4, &[StructureConstant::new(0, 1, 1, rat(1))]).unwrap();
        assert!(big.is_aff1_plus_abelian());
    }
}
