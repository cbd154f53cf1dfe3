//! The Lie–Poisson bracket `{f, g}(x) = ⟨x, [df, dg]⟩`, the bracket with
//! frozen argument `{f, g}_a = ⟨a, [df, dg]⟩`, and pairwise involution checks.

use rayon::prelude::*;
use serde::Serialize;

use crate::liealg::LieAlgebra;
use crate::poly::{Polynomial, Rational};
use crate::shifts::GeneratorFamily;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum BracketError {
    #[error("polynomial in {got} variables, algebra has dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

fn check(alg: &LieAlgebra, ps: &[&Polynomial]) -> Result<(), BracketError> {
    for p in ps {
        if p.nvars() != alg.dim() {
            return Err(BracketError::DimensionMismatch {
                got: p.nvars(),
                expected: alg.dim(),
            });
        }
    }
    Ok(())
}

/// `Σ_{i<j} coeff_ij (∂_i f ∂_j g − ∂_j f ∂_i g)` with `coeff` supplied per
/// bracket pair.
fn skew_pairing(alg: &LieAlgebra, f: &Polynomial, g: &Polynomial, coeff: impl Fn(usize, usize) -> Polynomial) -> Polynomial {
    let n = alg.dim();
    let df = f.gradient();
    let dg = g.gradient();
    let mut out = Polynomial::zero(n);
    for &(i, j) in alg.brackets().keys() {
        let cross = &df[i] * &dg[j] - &df[j] * &dg[i];
        if cross.is_zero() {
            continue;
        }
        let c = coeff(i, j);
        if !c.is_zero() {
            out = out + c.multiply(&cross);
        }
    }
    out
}

pub fn lie_poisson(alg: &LieAlgebra, f: &Polynomial, g: &Polynomial) -> Result<Polynomial, BracketError> {
    check(alg, &[f, g])?;
    let a = alg.structure_matrix();
    Ok(skew_pairing(alg, f, g, |i, j| a.entry(i, j).clone()))
}

pub fn frozen(alg: &LieAlgebra, a: &[Rational], f: &Polynomial, g: &Polynomial) -> Result<Polynomial, BracketError> {
    check(alg, &[f, g])?;
    let n = alg.dim();
    if a.len() != n {
        return Err(BracketError::DimensionMismatch { got: a.len(), expected: n });
    }
    let m = alg.evaluate_matrix(a).expect("length checked");
    Ok(skew_pairing(alg, f, g, |i, j| Polynomial::constant(n, m[(i, j)].clone())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bracket {
    LiePoisson,
    Frozen,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    /// 0-based generator positions, `i < j`.
    pub pair: (usize, usize),
    pub bracket: Bracket,
    #[serde(serialize_with = "crate::serial::poly")]
    pub residual: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvolutionReport {
    pub generators: usize,
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
}

impl InvolutionReport {
    pub fn in_bi_involution(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every pair `i < j` of `polys` under both brackets.
pub fn involution_check(alg: &LieAlgebra, a: &[Rational], polys: &[Polynomial]) -> Result<InvolutionReport, BracketError> {
    let refs: Vec<&Polynomial> = polys.iter().collect();
    check(alg, &refs)?;
    let pairs: Vec<(usize, usize)> = (0..polys.len()).flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j))).collect();
    let violations: Vec<Violation> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut out = Vec::new();
            let lp = lie_poisson(alg, &polys[i], &polys[j]).expect("checked");
            if !lp.is_zero() {
                out.push(Violation {
                    pair: (i, j),
                    bracket: Bracket::LiePoisson,
                    residual: lp,
                });
            }
            let fr = frozen(alg, a, &polys[i], &polys[j]).expect("checked");
            if !fr.is_zero() {
                out.push(Violation {
                    pair: (i, j),
                    bracket: Bracket::Frozen,
                    residual: fr,
                });
            }
            out
        })
        .flatten()
        .collect();
    Ok(InvolutionReport {
        generators: polys.len(),
        pairs_checked: pairs.len(),
        violations,
    })
}

pub fn involution_report(alg: &LieAlgebra, family: &GeneratorFamily) -> Result<InvolutionReport, BracketError> {
    involution_check(alg, &family.base_point, &family.polynomials())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::poly::{parse_polynomial, rat};

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn basic_brackets() {
        let aff = builtin("aff1");
        assert_eq!(lie_poisson(&aff, &p("x1", 2), &p("x2", 2)).unwrap(), p("x2", 2));
        assert_eq!(frozen(&aff, &[rat(0), rat(1)], &p("x1", 2), &p("x2", 2)).unwrap(), p("1", 2));
        let sl2 = builtin("sl2");
        assert_eq!(lie_poisson(&sl2, &p("x2", 3), &p("x3", 3)).unwrap(), p("x1", 3));
        let ab = builtin("abelian3");
        assert!(lie_poisson(&ab, &p("x1^2*x2", 3), &p("x3 + x2", 3)).unwrap().is_zero());
        assert!(frozen(&sl2, &[rat(0), rat(0), rat(0)], &p("x1*x2", 3), &p("x3^2", 3)).unwrap().is_zero());
        assert!(matches!(lie_poisson(&sl2, &p("x1", 2), &p("x1", 3)), Err(BracketError::DimensionMismatch { .. })));
    }

    #[test]
    fn frozen_is_lie_poisson_at_a_for_linear_functions() {
        let sl2 = builtin("sl2");
        let a = [rat(3), rat(-2), rat(5)];
        for (f, g) in [("x1 + 2*x2", "x3"), ("x2 - x3", "4*x1 + x3")] {
            let lp = lie_poisson(&sl2, &p(f, 3), &p(g, 3)).unwrap();
            let fr = frozen(&sl2, &a, &p(f, 3), &p(g, 3)).unwrap();
            assert_eq!(fr.constant_term(), lp.evaluate(&a).unwrap());
        }
    }

    #[test]
    fn adversarial_family_is_caught() {
        let aff = builtin("aff1");
        let r = involution_check(&aff, &[rat(0), rat(1)], &[p("x1", 2), p("x2", 2)]).unwrap();
        assert_eq!(r.pairs_checked, 1);
        assert_eq!(r.violations.len(), 2);
        assert_eq!(r.violations[0].residual, p("x2", 2));
        assert_eq!(r.violations[0].bracket, Bracket::LiePoisson);
        assert_eq!(r.violations[1].residual, p("1", 2));
    }

    #[test]
    fn semi_invariant_shifts_commute() {
        let alg = builtin("aff1_plus_aff1");
        let a = [rat(0), rat(1), rat(0), rat(1)];
        let fam = ["x2 + x4", "x2*x4", "x2", "x4"].map(|s| p(s, 4));
        assert!(involution_check(&alg, &a, &fam).unwrap().in_bi_involution());
    }
}
