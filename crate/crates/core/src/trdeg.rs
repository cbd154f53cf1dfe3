//! Differential spans of generator families. The transcendence degree of a
//! family is measured as the generic rank of its differentials, estimated by
//! exact ranks at random integer points.

use serde::Serialize;

use crate::linalg::{rank_of_rows, same_span, span_contains, Matrix};
use crate::poly::{rat, Rational};
use crate::roots::{distinct_root_count, rational_roots};
use crate::sampling::{random_int, random_point, Sampler};
use crate::semiinv::SemiInvariant;
use crate::shifts::{line_coefficients, line_polynomial, root_covectors, BasePoint, FamilyKind, GeneratorFamily};
use crate::singular::{sample_on_hypersurface, HyperPoint};

/// Row `i` is the gradient of generator `i` at `x`.
pub fn differential_matrix(family: &GeneratorFamily, x: &[Rational]) -> Matrix {
    let rows: Vec<Vec<Rational>> = family.generators.iter().map(|g| g.poly.gradient_at(x).expect("point length")).collect();
    Matrix::from_rows(rows, x.len())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpanSample {
    #[serde(serialize_with = "crate::serial::point")]
    pub point: Vec<Rational>,
    pub kind: FamilyKind,
    pub rank: usize,
}

pub fn span_sample(family: &GeneratorFamily, x: &[Rational]) -> SpanSample {
    SpanSample {
        point: x.to_vec(),
        kind: family.kind,
        rank: differential_matrix(family, x).rank(),
    }
}

/// Maximum differential rank over `samples` random points with coordinates
/// in `[-bound, bound]`.
pub fn span_dimension(family: &GeneratorFamily, rng: &mut Sampler, samples: usize, bound: i64) -> usize {
    let n = family.base_point.len();
    (0..samples.max(1))
        .map(|_| span_sample(family, &random_point(rng, n, bound)).rank)
        .max()
        .unwrap_or(0)
}

/// `(dim + ind) / 2`.
pub fn completeness_bound(dim: usize, index: usize) -> usize {
    (dim + index) / 2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrdegVerdict {
    pub ftilde: usize,
    pub fsi: usize,
    pub pass: bool,
    pub samples: usize,
    pub bound: i64,
    /// Points where the `F̃_a` rank is maximal and the two spans coincide.
    pub span_equal_points: usize,
    #[serde(serialize_with = "crate::serial::points")]
    pub span_mismatch_points: Vec<Vec<Rational>>,
    /// Points where `dF̃_a(x) ⊄ dF^si_a(x)`; nested generator sets make this
    /// impossible, so any entry is a bug.
    #[serde(serialize_with = "crate::serial::points")]
    pub containment_failures: Vec<Vec<Rational>>,
}

/// Compares the generic ranks of `F̃_a` and `F^si_a` on shared sample points
/// and, where the `F̃_a` rank is maximal, the spans themselves.
pub fn verify_trdeg_equality(ftilde: &GeneratorFamily, fsi: &GeneratorFamily, rng: &mut Sampler, samples: usize, bound: i64) -> TrdegVerdict {
    let n = ftilde.base_point.len();
    let samples = samples.max(1);
    let mut rows = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = random_point(rng, n, bound);
        let dt = differential_matrix(ftilde, &x).to_rows();
        let ds = differential_matrix(fsi, &x).to_rows();
        rows.push((x, rank_of_rows(&dt, n), rank_of_rows(&ds, n), dt, ds));
    }
    let rt = rows.iter().map(|r| r.1).max().unwrap_or(0);
    let rs = rows.iter().map(|r| r.2).max().unwrap_or(0);
    let mut span_equal_points = 0;
    let mut span_mismatch_points = Vec::new();
    let mut containment_failures = Vec::new();
    for (x, r, _, dt, ds) in rows {
        if !span_contains(&ds, &dt, n) {
            containment_failures.push(x.clone());
        }
        if r == rt {
            if same_span(&dt, &ds, n) {
                span_equal_points += 1;
            } else {
                span_mismatch_points.push(x);
            }
        }
    }
    TrdegVerdict {
        ftilde: rt,
        fsi: rs,
        pass: rt == rs,
        samples,
        bound,
        span_equal_points,
        span_mismatch_points,
        containment_failures,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SpanCheck {
    Equal,
    Different,
    Skipped(String),
}

/// Whether the covectors `dλ_i` of the roots of `g(x − λa)` span the same
/// space as the gradients of the λ-coefficients of `g(x − λa)` at `x`.
/// Requires every root to be rational and simple.
pub fn root_coefficient_span_check(bp: &BasePoint, g: &SemiInvariant, x: &[Rational]) -> SpanCheck {
    let n = x.len();
    let line = line_polynomial(&g.poly, &bp.a, x);
    if line.is_empty() {
        return SpanCheck::Skipped("zero restriction".into());
    }
    let degree = line.len() - 1;
    if distinct_root_count(&line) != Some(degree) {
        return SpanCheck::Skipped("non-simple root".into());
    }
    if rational_roots(&line).0.len() != degree {
        return SpanCheck::Skipped("irrational root".into());
    }
    let covectors: Vec<Vec<Rational>> = match root_covectors(bp, g, x) {
        Ok(list) => match list.into_iter().collect::<Result<Vec<_>, _>>() {
            Ok(rc) => rc.into_iter().map(|r| r.covector).collect(),
            Err(_) => return SpanCheck::Different,
        },
        Err(_) => return SpanCheck::Skipped("zero restriction".into()),
    };
    let gradients: Vec<Vec<Rational>> = line_coefficients(&g.poly, &bp.a).iter().map(|h| h.gradient_at(x).expect("point length")).collect();
    if same_span(&covectors, &gradients, n) {
        SpanCheck::Equal
    } else {
        SpanCheck::Different
    }
}

/// A point `x = y + λ₀a` with `g(y) = 0`, so that `λ₀` is a rational root of
/// `g(x − λa)`. Returns `None` if no exact point on `{g = 0}` was found.
pub fn point_with_rational_root(bp: &BasePoint, g: &SemiInvariant, rng: &mut Sampler, bound: i64) -> Option<Vec<Rational>> {
    match sample_on_hypersurface(&g.poly, rng, 8, bound, false) {
        Ok(HyperPoint::Exact(y)) => {
            let l = rat(random_int(rng, -bound, bound));
            Some(y.iter().zip(&bp.a).map(|(yi, ai)| yi + &l * ai).collect())
        }
        _ => None,
    }
}
