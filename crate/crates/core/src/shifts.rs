//! Shifted generator families at a regular covector `a` and the root
//! covectors of `λ ↦ g(x − λa)`.
//!
//! Every family is built from the coefficients of `f(a + λx) = Σ λ^j f_j(x)`;
//! `f_0 = f(a)` is a constant and never stored.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::liealg::LieAlgebra;
use crate::linalg::{span_basis, Matrix};
use crate::poly::{rat, Polynomial, Rational};
use crate::roots::{self, rational_roots};
use crate::semiinv::{verify_semiinvariant, SemiInvariant};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ShiftError {
    #[error("base point has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("base point {0} is not regular")]
    NotRegular(String),
    #[error("{0} is not an invariant")]
    NonInvariantInput(String),
    #[error("{0} is not a semi-invariant")]
    NonSemiInvariantInput(String),
    #[error("g(x - λa) vanishes identically at this point")]
    ZeroRestriction,
    #[error("root λ = {0} has ⟨∇g(x − λa), a⟩ = 0")]
    DegenerateRoot(Rational),
    #[error("covector for root λ = {0} is not in Ker(A_x − λA_a)")]
    PencilCondition(Rational),
}

/// A regular base point together with the algebra and its index.
#[derive(Clone, Debug)]
pub struct BasePoint<'a> {
    pub alg: &'a LieAlgebra,
    pub index: usize,
    pub a: Vec<Rational>,
    a_matrix: Matrix,
}

impl<'a> BasePoint<'a> {
    pub fn new(alg: &'a LieAlgebra, index: usize, a: Vec<Rational>) -> Result<Self, ShiftError> {
        let a_matrix = alg.evaluate_matrix(&a).map_err(|_| ShiftError::LengthMismatch {
            got: a.len(),
            expected: alg.dim(),
        })?;
        if a_matrix.rank() != alg.dim() - index {
            return Err(ShiftError::NotRegular(fmt_point(&a)));
        }
        Ok(BasePoint { alg, index, a, a_matrix })
    }

    pub fn a_matrix(&self) -> &Matrix {
        &self.a_matrix
    }

    /// `A_x − λA_a`.
    pub fn pencil(&self, x: &[Rational], lambda: &Rational) -> Matrix {
        let ax = self.alg.evaluate_matrix(x).expect("point length");
        ax.add_scaled(&self.a_matrix, &-lambda.clone())
    }
}

pub fn fmt_point(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    Fa,
    Ftilde,
    Fsi,
}

impl FamilyKind {
    pub fn label(self) -> &'static str {
        match self {
            FamilyKind::Fa => "fa",
            FamilyKind::Ftilde => "ftilde",
            FamilyKind::Fsi => "fsi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SourceRole {
    Invariant,
    FundamentalSemiInvariant,
    SemiInvariant,
}

/// Where a generator came from: the `power`-th λ-coefficient of `source`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub role: SourceRole,
    #[serde(serialize_with = "crate::serial::poly")]
    pub source: Polynomial,
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generator {
    #[serde(serialize_with = "crate::serial::poly")]
    pub poly: Polynomial,
    /// Every source coefficient equal to this generator.
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorFamily {
    pub kind: FamilyKind,
    #[serde(serialize_with = "crate::serial::point")]
    pub base_point: Vec<Rational>,
    pub generators: Vec<Generator>,
}

impl GeneratorFamily {
    fn empty(kind: FamilyKind, a: &[Rational]) -> Self {
        GeneratorFamily {
            kind,
            base_point: a.to_vec(),
            generators: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }

    /// Adds the nonconstant shift coefficients of `source`.
    fn absorb(&mut self, source: &Polynomial, role: SourceRole) {
        let coeffs = source.shift_expand(&self.base_point).expect("length checked");
        for (power, c) in coeffs.into_iter().enumerate().skip(1) {
            if c.is_constant() {
                continue;
            }
            let tag = Provenance {
                role,
                source: source.clone(),
                power,
            };
            match self.generators.iter_mut().find(|g| g.poly == c) {
                Some(g) => {
                    if !g.provenance.contains(&tag) {
                        g.provenance.push(tag);
                    }
                }
                None => self.generators.push(Generator {
                    poly: c,
                    provenance: vec![tag],
                }),
            }
        }
    }

    fn promote(mut self, kind: FamilyKind) -> Self {
        self.kind = kind;
        self
    }

    /// Rebuilds `source(a + λx)` from the tagged coefficients and `source(a)`.
    pub fn reconstruct(&self, source: &Polynomial) -> Vec<Polynomial> {
        let n = self.base_point.len();
        let deg = source.degree().unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(n); deg + 1];
        out[0] = Polynomial::constant(n, source.evaluate(&self.base_point).expect("length"));
        for g in &self.generators {
            for t in &g.provenance {
                if &t.source == source {
                    out[t.power] = g.poly.clone();
                }
            }
        }
        out
    }
}

fn check_invariants(bp: &BasePoint, invariants: &[Polynomial]) -> Result<(), ShiftError> {
    for f in invariants {
        match verify_semiinvariant(bp.alg, f) {
            Some(w) if w.iter().all(Zero::is_zero) => {}
            _ => return Err(ShiftError::NonInvariantInput(f.to_string())),
        }
    }
    Ok(())
}

/// `F_a`: shift coefficients of the invariants.
pub fn shift_family(bp: &BasePoint, invariants: &[Polynomial]) -> Result<GeneratorFamily, ShiftError> {
    check_invariants(bp, invariants)?;
    let mut fam = GeneratorFamily::empty(FamilyKind::Fa, &bp.a);
    for f in invariants {
        fam.absorb(f, SourceRole::Invariant);
    }
    Ok(fam)
}

/// `F̃_a`: `F_a` plus the shift coefficients of `p_g`.
pub fn extended_family(bp: &BasePoint, invariants: &[Polynomial], p_g: &Polynomial) -> Result<GeneratorFamily, ShiftError> {
    let mut fam = shift_family(bp, invariants)?.promote(FamilyKind::Ftilde);
    fam.absorb(p_g, SourceRole::FundamentalSemiInvariant);
    Ok(fam)
}

/// `F^si_a`: `F̃_a` plus the shift coefficients of each semi-invariant.
pub fn semiinvariant_family(
    bp: &BasePoint,
    invariants: &[Polynomial],
    p_g: &Polynomial,
    semis: &[SemiInvariant],
) -> Result<GeneratorFamily, ShiftError> {
    for s in semis {
        if verify_semiinvariant(bp.alg, &s.poly).is_none() {
            return Err(ShiftError::NonSemiInvariantInput(s.poly.to_string()));
        }
    }
    let mut fam = extended_family(bp, invariants, p_g)?.promote(FamilyKind::Fsi);
    for s in semis {
        fam.absorb(&s.poly, SourceRole::SemiInvariant);
    }
    Ok(fam)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelSpan {
    #[serde(serialize_with = "crate::serial::points")]
    pub basis: Vec<Vec<Rational>>,
    #[serde(serialize_with = "crate::serial::point")]
    pub used: Vec<Rational>,
    /// λ values where `A_x − λA_a` drops rank.
    #[serde(serialize_with = "crate::serial::point")]
    pub skipped: Vec<Rational>,
}

impl KernelSpan {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The default λ sample `0, 1, ..., dim + 2`.
pub fn default_lambdas(dim: usize) -> Vec<Rational> {
    (0..=dim as i64 + 2).map(rat).collect()
}

/// `Σ_λ Ker(A_x − λA_a)` over the λ values where the pencil has full
/// generic rank.
pub fn kernel_span(bp: &BasePoint, x: &[Rational], lambdas: &[Rational]) -> KernelSpan {
    let n = bp.alg.dim();
    let generic = n - bp.index;
    let mut vectors = Vec::new();
    let mut used = Vec::new();
    let mut skipped = Vec::new();
    for l in lambdas {
        let m = bp.pencil(x, l);
        if m.rank() == generic {
            vectors.extend(m.kernel());
            used.push(l.clone());
        } else {
            skipped.push(l.clone());
        }
    }
    KernelSpan {
        basis: span_basis(&vectors, n),
        used,
        skipped,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootCovector {
    #[serde(serialize_with = "crate::serial::rational")]
    pub lambda: Rational,
    #[serde(serialize_with = "crate::serial::point")]
    pub covector: Vec<Rational>,
}

impl RootCovector {
    /// `(A_x − λA_a)·dλ = 0`.
    pub fn satisfies_pencil(&self, bp: &BasePoint, x: &[Rational]) -> bool {
        bp.pencil(x, &self.lambda).mul_vec(&self.covector).iter().all(Zero::is_zero)
    }
}

/// Coefficients of `λ ↦ g(x − λa)`, low degree first.
pub fn line_polynomial(g: &Polynomial, a: &[Rational], x: &[Rational]) -> Vec<Rational> {
    let minus_a: Vec<Rational> = a.iter().map(|v| -v.clone()).collect();
    g.restrict_to_line(x, &minus_a).expect("point length")
}

/// For each rational root `λ` of `g(x − λa)`, the covector
/// `dλ = ∇g(y) / ⟨∇g(y), a⟩` at `y = x − λa`, checked against the pencil.
pub fn root_covectors(bp: &BasePoint, g: &SemiInvariant, x: &[Rational]) -> Result<Vec<Result<RootCovector, ShiftError>>, ShiftError> {
    let line = line_polynomial(&g.poly, &bp.a, x);
    if line.is_empty() {
        return Err(ShiftError::ZeroRestriction);
    }
    let (lambdas, _) = rational_roots(&line);
    Ok(lambdas
        .into_iter()
        .map(|lambda| {
            let y: Vec<Rational> = x.iter().zip(&bp.a).map(|(xi, ai)| xi - &lambda * ai).collect();
            let grad = g.poly.gradient_at(&y).expect("point length");
            let denom: Rational = grad.iter().zip(&bp.a).map(|(d, ai)| d * ai).sum();
            if denom.is_zero() {
                return Err(ShiftError::DegenerateRoot(lambda));
            }
            let rc = RootCovector {
                covector: grad.iter().map(|d| d / &denom).collect(),
                lambda,
            };
            if rc.satisfies_pencil(bp, x) {
                Ok(rc)
            } else {
                Err(ShiftError::PencilCondition(rc.lambda))
            }
        })
        .collect())
}

/// Number of distinct complex roots of `λ ↦ g(x − λa)`.
pub fn distinct_root_count(g: &Polynomial, a: &[Rational], x: &[Rational]) -> Result<usize, ShiftError> {
    roots::distinct_root_count(&line_polynomial(g, a, x)).ok_or(ShiftError::ZeroRestriction)
}

/// The coefficients `h_k` of `g(x − λa) = Σ λ^k h_k(x)`, via
/// `h_k = (−1)^k / k! · (a·∇)^k g`.
pub fn line_coefficients(g: &Polynomial, a: &[Rational]) -> Vec<Polynomial> {
    let n = g.nvars();
    let directional = |p: &Polynomial| -> Polynomial {
        let mut out = Polynomial::zero(n);
        for (j, aj) in a.iter().enumerate() {
            if !aj.is_zero() {
                out = out + p.partial_derivative(j).expect("index").scale(aj);
            }
        }
        out
    };
    let mut out = Vec::new();
    let mut cur = g.clone();
    let mut factor = Rational::one();
    let mut k = 0i64;
    while !cur.is_zero() {
        out.push(cur.scale(&factor));
        cur = directional(&cur);
        k += 1;
        factor = -factor / rat(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::poly::parse_polynomial;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn sl2_argument_shift() {
        let alg = builtin("sl2");
        let bp = BasePoint::new(&alg, 1, v(&[0, 1, 0])).unwrap();
        let fa = shift_family(&bp, alg.casimirs()).unwrap();
        assert_eq!(fa.polynomials(), vec![p("4*x3", 3), p("x1^2 + 4*x2*x3", 3)]);
        let ft = extended_family(&bp, alg.casimirs(), &Polynomial::one(3)).unwrap();
        assert_eq!(ft.polynomials(), fa.polynomials());
        assert_eq!(fa.reconstruct(&alg.casimirs()[0]), alg.casimirs()[0].shift_expand(&bp.a).unwrap());
    }

    #[test]
    fn small_families() {
        let h = builtin("heisenberg");
        let bp = BasePoint::new(&h, 1, v(&[1, 1, 1])).unwrap();
        assert_eq!(shift_family(&bp, h.casimirs()).unwrap().polynomials(), vec![p("x3", 3)]);
        assert!(matches!(
            shift_family(&bp, &[p("x1", 3)]),
            Err(ShiftError::NonInvariantInput(s)) if s == "x1"
        ));
        assert!(matches!(BasePoint::new(&h, 1, v(&[1, 1, 0])), Err(ShiftError::NotRegular(_))));

        let aff = builtin("aff1");
        let bp = BasePoint::new(&aff, 0, v(&[0, 1])).unwrap();
        let ft = extended_family(&bp, &[], &p("x2", 2)).unwrap();
        assert_eq!(ft.polynomials(), vec![p("x2", 2)]);
        let x2 = SemiInvariant::new(&aff, p("x2", 2)).unwrap();
        let fsi = semiinvariant_family(&bp, &[], &p("x2", 2), &[x2]).unwrap();
        assert_eq!(fsi.polynomials(), vec![p("x2", 2)]);
        assert_eq!(fsi.generators[0].provenance.len(), 2);
    }

    #[test]
    fn aff1_plus_aff1_families() {
        let alg = builtin("aff1_plus_aff1");
        let bp = BasePoint::new(&alg, 0, v(&[0, 1, 0, 1])).unwrap();
        let pg = p("x2*x4", 4);
        let ft = extended_family(&bp, &[], &pg).unwrap();
        assert_eq!(ft.polynomials(), vec![p("x2 + x4", 4), p("x2*x4", 4)]);
        let semis: Vec<SemiInvariant> = ["x2", "x4"].iter().map(|s| SemiInvariant::new(&alg, p(s, 4)).unwrap()).collect();
        let fsi = semiinvariant_family(&bp, &[], &pg, &semis).unwrap();
        assert_eq!(fsi.polynomials(), vec![p("x2 + x4", 4), p("x2*x4", 4), p("x2", 4), p("x4", 4)]);
        assert_eq!(fsi.reconstruct(&pg), pg.shift_expand(&bp.a).unwrap());
    }

    #[test]
    fn kernel_spans() {
        let sl2 = builtin("sl2");
        let bp = BasePoint::new(&sl2, 1, v(&[0, 1, 0])).unwrap();
        let x = v(&[3, -7, 11]);
        let ks = kernel_span(&bp, &x, &v(&[0, 1, 2, 3]));
        assert_eq!(ks.dim(), 2);
        let fa = shift_family(&bp, sl2.casimirs()).unwrap();
        let grads: Vec<Vec<Rational>> = fa.polynomials().iter().map(|f| f.gradient_at(&x).unwrap()).collect();
        assert!(crate::linalg::same_span(&ks.basis, &grads, 3));

        let ab = builtin("abelian3");
        let bp = BasePoint::new(&ab, 3, v(&[1, 2, 3])).unwrap();
        assert_eq!(kernel_span(&bp, &v(&[4, 5, 6]), &default_lambdas(3)).dim(), 3);

        let aff = builtin("aff1");
        let bp = BasePoint::new(&aff, 0, v(&[0, 1])).unwrap();
        // Index 0: every regular pencil member is invertible.
        let ks = kernel_span(&bp, &v(&[7, 3]), &default_lambdas(2));
        assert_eq!(ks.dim(), 0);
        assert_eq!(ks.used.len(), 4);
        assert_eq!(ks.skipped, vec![rat(3)]);
    }

    #[test]
    fn root_covector_examples() {
        let aff = builtin("aff1");
        let bp = BasePoint::new(&aff, 0, v(&[0, 1])).unwrap();
        let g = SemiInvariant::new(&aff, p("x2", 2)).unwrap();
        let rc = root_covectors(&bp, &g, &v(&[7, 5])).unwrap();
        assert_eq!(rc, vec![Ok(RootCovector { lambda: rat(5), covector: v(&[0, 1]) })]);

        let alg = builtin("aff1_plus_aff1");
        let bp = BasePoint::new(&alg, 0, v(&[0, 1, 0, 1])).unwrap();
        let g = SemiInvariant::new(&alg, p("x2*x4", 4)).unwrap();
        let rc: Vec<RootCovector> = root_covectors(&bp, &g, &v(&[0, 2, 0, 3])).unwrap().into_iter().map(Result::unwrap).collect();
        assert_eq!(
            rc,
            vec![
                RootCovector { lambda: rat(2), covector: v(&[0, 1, 0, 0]) },
                RootCovector { lambda: rat(3), covector: v(&[0, 0, 0, 1]) },
            ]
        );
        assert_eq!(distinct_root_count(&g.poly, &bp.a, &v(&[0, 2, 0, 3])), Ok(2));
        let degenerate = root_covectors(&bp, &g, &v(&[0, 2, 0, 2])).unwrap();
        assert_eq!(degenerate, vec![Err(ShiftError::DegenerateRoot(rat(2)))]);
    }

    #[test]
    fn sl2_casimir_roots_are_irrational_in_general() {
        let sl2 = builtin("sl2");
        let bp = BasePoint::new(&sl2, 1, v(&[0, 1, 0])).unwrap();
        let c = SemiInvariant::new(&sl2, sl2.casimirs()[0].clone()).unwrap();
        // C(x − λa) = 1 + 4(2 − λ)·1 = 9 − 4λ at x = (1, 2, 1): one rational root.
        let rc = root_covectors(&bp, &c, &v(&[1, 2, 1])).unwrap();
        assert_eq!(rc.len(), 1);
        // x = (1, 0, 1), a = (1, 0, 1): C = (1 − λ)² + 0, a double root.
        assert_eq!(distinct_root_count(&c.poly, &v(&[1, 0, 1]), &v(&[1, 0, 1])), Ok(1));
    }

    #[test]
    fn distinct_roots_of_powers() {
        let g = p("x2^2", 2);
        assert_eq!(distinct_root_count(&g, &v(&[0, 1]), &v(&[3, 8])), Ok(1));
        assert_eq!(distinct_root_count(&p("x1", 2), &v(&[0, 1]), &v(&[3, 8])), Ok(0));
        assert_eq!(distinct_root_count(&p("x1", 2), &v(&[0, 1]), &v(&[0, 8])), Err(ShiftError::ZeroRestriction));
    }

    #[test]
    fn line_coefficients_match_restriction() {
        let g = p("x1^2*x2 - 3*x3 + x2*x3^2", 3);
        let a = v(&[2, -1, 5]);
        let x = v(&[3, 4, -2]);
        let hs: Vec<Rational> = line_coefficients(&g, &a).iter().map(|h| h.evaluate(&x).unwrap()).collect();
        assert_eq!(roots::trim(&hs), line_polynomial(&g, &a, &x));
    }
}
