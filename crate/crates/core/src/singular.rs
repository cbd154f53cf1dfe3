//! The codimension-one singular set `Sing₀ = {p_g = 0}`, split into the
//! irreducible factors of `p_g`, and the completeness test: the extended
//! family is complete exactly when, on every component, the coadjoint
//! stabilizer at a generic point is `aff(1) ⊕ abelian`.
//!
//! Points on a component are sampled exactly when a rational root is found;
//! otherwise an approximate point is used and the verdict is flagged as
//! numeric. Numeric verdicts never certify incompleteness.

use nalgebra::DMatrix;
use num_traits::Zero;
use serde::Serialize;

use crate::liealg::LieAlgebra;
use crate::poly::{rat, rational_to_f64, Polynomial, Rational};
use crate::roots::{rational_roots, real_roots_f64};
use crate::sampling::{random_int, Sampler};
use crate::semiinv::{factor_semiinvariant, SemiInvariant};

/// Residual accepted for an approximate point, relative to the size of the
/// terms of `h` at that point.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SingularError {
    #[error("no point found on {0} = 0")]
    NoPointFound(String),
    #[error("{0} is constant")]
    ConstantHypersurface(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum HyperPoint {
    Exact(Vec<Rational>),
    Approximate { point: Vec<f64>, residual: f64 },
}

fn relative_residual(h: &Polynomial, y: &[f64]) -> f64 {
    let scale: f64 = h
        .terms()
        .map(|(m, c)| {
            let mut t = rational_to_f64(c).abs();
            for (x, &e) in y.iter().zip(m.exponents()) {
                t *= x.abs().powi(e as i32);
            }
            t
        })
        .sum();
    h.evaluate_f64(y).abs() / scale.max(1.0)
}

/// A point on `{h = 0}`: fix all variables but one at random integers in
/// `[-bound, bound]` and solve for the last. Tries `attempts` times for a
/// rational root, then as many times again for a real one if `numeric` is
/// set.
pub fn sample_on_hypersurface(h: &Polynomial, rng: &mut Sampler, attempts: usize, bound: i64, numeric: bool) -> Result<HyperPoint, SingularError> {
    let vars = h.variables();
    if vars.is_empty() {
        return Err(SingularError::ConstantHypersurface(h.to_string()));
    }
    let n = h.nvars();
    let draw = |rng: &mut Sampler| {
        let v = vars[random_int(rng, 0, vars.len() as i64 - 1) as usize];
        let mut base: Vec<Rational> = (0..n).map(|_| rat(random_int(rng, -bound, bound))).collect();
        base[v] = Rational::zero();
        let mut dir = vec![Rational::zero(); n];
        dir[v] = rat(1);
        let line = h.restrict_to_line(&base, &dir).expect("lengths");
        (v, base, line)
    };
    for _ in 0..attempts {
        let (v, mut base, line) = draw(rng);
        if line.len() < 2 {
            continue;
        }
        let (roots, _) = rational_roots(&line);
        if let Some(r) = roots.first() {
            base[v] = r.clone();
            return Ok(HyperPoint::Exact(base));
        }
    }
    if numeric {
        for _ in 0..attempts {
            let (v, base, line) = draw(rng);
            if line.len() < 2 {
                continue;
            }
            if let Some(&r) = real_roots_f64(&line).first() {
                let mut y: Vec<f64> = base.iter().map(rational_to_f64).collect();
                y[v] = r;
                let residual = relative_residual(h, &y);
                if residual <= ROOT_TOLERANCE {
                    return Ok(HyperPoint::Approximate { point: y, residual });
                }
            }
        }
    }
    Err(SingularError::NoPointFound(h.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GenericClass {
    AffAbelian,
    NotAffAbelian,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointClass {
    /// Exact coordinates as strings, or decimal approximations.
    pub point: Vec<String>,
    pub numeric: bool,
    pub stabilizer_dim: usize,
    pub aff_abelian: bool,
    /// False when the stabilizer is larger than at the other samples, i.e.
    /// the point lies on a deeper stratum.
    pub generic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentVerdict {
    pub factor: SemiInvariant,
    pub points: Vec<PointClass>,
    pub generic_class: GenericClass,
    pub numeric: bool,
}

/// `ad*`-stabilizer dimension and class at an approximate point.
fn classify_numeric(alg: &LieAlgebra, y: &[f64]) -> (usize, bool) {
    let n = alg.dim();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for ((i, j), row) in alg.brackets() {
        let v: f64 = row.iter().map(|(k, c)| rational_to_f64(c) * y[*k]).sum();
        a[(*i, *j)] = v;
        a[(*j, *i)] = -v;
    }
    let kernel = null_space(&a);
    let s = kernel.ncols();
    let bracket = |u: &[f64], v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for ((i, j), row) in alg.brackets() {
            let w = u[*i] * v[*j] - u[*j] * v[*i];
            if w != 0.0 {
                for (k, c) in row {
                    out[*k] += w * rational_to_f64(c);
                }
            }
        }
        out
    };
    let col = |c: usize| -> Vec<f64> { kernel.column(c).iter().copied().collect() };
    // Induced brackets in the orthonormal kernel basis.
    let mut induced = vec![vec![vec![0.0; s]; s]; s];
    let mut rows = Vec::new();
    for p in 0..s {
        for q in p + 1..s {
            let b = bracket(&col(p), &col(q));
            let coords: Vec<f64> = (0..s).map(|c| col(c).iter().zip(&b).map(|(x, y)| x * y).sum()).collect();
            for c in 0..s {
                induced[p][q][c] = coords[c];
                induced[q][p][c] = -coords[c];
            }
            rows.push(coords);
        }
    }
    if rows.is_empty() {
        return (s, false);
    }
    let derived = DMatrix::from_fn(rows.len(), s, |r, c| rows[r][c]);
    let svd = derived.svd(false, true);
    let top = svd.singular_values.max();
    let rank = svd.singular_values.iter().filter(|&&v| v > RANK_TOLERANCE * top.max(1.0)).count();
    if rank != 1 {
        return (s, false);
    }
    let vt = svd.v_t.expect("requested");
    let best = svd.singular_values.imax();
    let d: Vec<f64> = vt.row(best).iter().copied().collect();
    let central = (0..s).all(|b| {
        (0..s).all(|c| {
            let v: f64 = (0..s).map(|a| d[a] * induced[a][b][c]).sum();
            v.abs() <= RANK_TOLERANCE * top.max(1.0)
        })
    });
    (s, !central)
}

/// Orthonormal basis of the numerical kernel, as columns.
fn null_space(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.ncols();
    let svd = a.clone().svd(false, true);
    let top = svd.singular_values.max().max(1.0);
    let vt = svd.v_t.expect("requested");
    let mut cols = Vec::new();
    for i in 0..n {
        let sigma = if i < svd.singular_values.len() { svd.singular_values[i] } else { 0.0 };
        if sigma <= RANK_TOLERANCE * top {
            cols.push(vt.row(i).transpose());
        }
    }
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Options shared by the component samplers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleOptions {
    pub points: usize,
    pub attempts: usize,
    pub bound: i64,
    pub numeric_fallback: bool,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            points: 5,
            attempts: 8,
            bound: 999,
            numeric_fallback: true,
        }
    }
}

/// Samples points on `{factor = 0}` away from `avoid`, and classifies the
/// stabilizer at each. Points with a stabilizer larger than the smallest
/// one seen are on a deeper stratum and do not count.
pub fn classify_component(alg: &LieAlgebra, factor: &SemiInvariant, avoid: &[Polynomial], rng: &mut Sampler, opts: SampleOptions) -> ComponentVerdict {
    let mut points = Vec::new();
    let mut tries = 0;
    while points.len() < opts.points && tries < 4 * opts.points.max(1) {
        tries += 1;
        let Ok(hp) = sample_on_hypersurface(&factor.poly, rng, opts.attempts, opts.bound, opts.numeric_fallback) else {
            continue;
        };
        match hp {
            HyperPoint::Exact(y) => {
                if avoid.iter().any(|h| h.evaluate(&y).expect("length").is_zero()) {
                    continue;
                }
                let stab = alg.stabilizer(&y).expect("length");
                points.push(PointClass {
                    point: y.iter().map(ToString::to_string).collect(),
                    numeric: false,
                    stabilizer_dim: stab.dim(),
                    aff_abelian: stab.is_aff1_plus_abelian(),
                    generic: true,
                });
            }
            HyperPoint::Approximate { point, .. } => {
                if avoid.iter().any(|h| relative_residual(h, &point) <= ROOT_TOLERANCE) {
                    continue;
                }
                let (dim, aff) = classify_numeric(alg, &point);
                points.push(PointClass {
                    point: point.iter().map(|v| format!("{v:e}")).collect(),
                    numeric: true,
                    stabilizer_dim: dim,
                    aff_abelian: aff,
                    generic: true,
                });
            }
        }
    }
    let generic_dim = points.iter().map(|p| p.stabilizer_dim).min();
    for p in &mut points {
        p.generic = Some(p.stabilizer_dim) == generic_dim;
    }
    let counted: Vec<&PointClass> = points.iter().filter(|p| p.generic).collect();
    let numeric = counted.iter().any(|p| p.numeric);
    let generic_class = if counted.iter().any(|p| !p.numeric && !p.aff_abelian) {
        GenericClass::NotAffAbelian
    } else if !counted.is_empty() && counted.iter().all(|p| p.aff_abelian) {
        GenericClass::AffAbelian
    } else {
        GenericClass::Undetermined
    };
    ComponentVerdict {
        factor: factor.clone(),
        points,
        generic_class,
        numeric,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sing0 {
    pub components: Vec<SemiInvariant>,
    /// Part of `p_g` not accounted for by the pool, if any. It is kept as an
    /// extra component but cannot certify completeness.
    #[serde(serialize_with = "ser_opt_poly")]
    pub unfactored: Option<Polynomial>,
}

fn ser_opt_poly<S: serde::Serializer>(p: &Option<Polynomial>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

/// The distinct irreducible factors of `p_g` found in `pool`.
pub fn sing0_components(alg: &LieAlgebra, p_g: &Polynomial, pool: &[SemiInvariant]) -> Sing0 {
    if p_g.is_constant() {
        return Sing0 {
            components: Vec::new(),
            unfactored: None,
        };
    }
    let g = SemiInvariant::new(alg, p_g.clone()).expect("p_g is a semi-invariant");
    let f = factor_semiinvariant(&g, pool);
    let mut components: Vec<SemiInvariant> = f.factors.into_iter().map(|(s, _)| s).collect();
    let unfactored = if f.cofactor.is_constant() {
        None
    } else {
        let rest = f.cofactor.primitive();
        if let Some(s) = SemiInvariant::new(alg, rest.clone()) {
            components.push(s);
        }
        Some(rest)
    };
    Sing0 { components, unfactored }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Completeness {
    Complete,
    Incomplete,
    Undetermined,
}

impl Completeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Completeness::Complete => "Complete",
            Completeness::Incomplete => "Incomplete",
            Completeness::Undetermined => "Undetermined",
        }
    }
}

impl std::fmt::Display for Completeness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompletenessReport {
    pub verdict: Completeness,
    pub sing0: Sing0,
    pub components: Vec<ComponentVerdict>,
}

/// Complete when `p_g` is constant or every component is generically
/// `aff(1) ⊕ abelian`; Incomplete on an exact counterexample at a generic
/// point of some component; Undetermined otherwise.
pub fn completeness_verdict(alg: &LieAlgebra, p_g: &Polynomial, pool: &[SemiInvariant], rng: &mut Sampler, opts: SampleOptions) -> CompletenessReport {
    let sing0 = sing0_components(alg, p_g, pool);
    let polys: Vec<Polynomial> = sing0.components.iter().map(|c| c.poly.clone()).collect();
    let components: Vec<ComponentVerdict> = sing0
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let avoid: Vec<Polynomial> = polys.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            classify_component(alg, c, &avoid, rng, opts)
        })
        .collect();
    let verdict = if p_g.is_constant() {
        Completeness::Complete
    } else if components.iter().any(|c| c.generic_class == GenericClass::NotAffAbelian) {
        Completeness::Incomplete
    } else if sing0.unfactored.is_none() && components.iter().all(|c| c.generic_class == GenericClass::AffAbelian) {
        Completeness::Complete
    } else {
        Completeness::Undetermined
    };
    CompletenessReport { verdict, sing0, components }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::poly::parse_polynomial;
    use crate::sampling::seeded;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    fn semis(alg: &LieAlgebra, list: &[&str]) -> Vec<SemiInvariant> {
        list.iter().map(|s| SemiInvariant::new(alg, p(s, alg.dim())).unwrap()).collect()
    }

    #[test]
    fn linear_hypersurfaces_are_exact() {
        let mut rng = seeded(5);
        match sample_on_hypersurface(&p("x2", 4), &mut rng, 3, 99, false).unwrap() {
            HyperPoint::Exact(y) => assert!(y[1].is_zero()),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            sample_on_hypersurface(&p("3", 2), &mut rng, 3, 99, true),
            Err(SingularError::ConstantHypersurface(_))
        ));
    }

    #[test]
    fn numeric_fallback_on_irrational_quadric() {
        // x1^2 - 2 x2^2 has no rational zeros with x2 ≠ 0, and x1 = 0 forces x2 = 0.
        let h = p("x1^2 - 2*x2^2 - 3*x3^2", 3);
        let mut rng = seeded(11);
        match sample_on_hypersurface(&h, &mut rng, 4, 20, true) {
            Ok(HyperPoint::Approximate { point, residual }) => {
                assert!(residual <= ROOT_TOLERANCE);
                assert!(relative_residual(&h, &point) <= ROOT_TOLERANCE);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            sample_on_hypersurface(&h, &mut seeded(11), 4, 20, false),
            Err(SingularError::NoPointFound(_))
        ));
    }

    #[test]
    fn component_classes() {
        let opts = SampleOptions::default();
        let aff = builtin("aff1");
        let v = classify_component(&aff, &semis(&aff, &["x2"])[0], &[], &mut seeded(1), opts);
        assert_eq!(v.generic_class, GenericClass::AffAbelian);
        assert_eq!(v.points.len(), 5);
        let h = builtin("heisenberg");
        let v = classify_component(&h, &semis(&h, &["x3"])[0], &[], &mut seeded(1), opts);
        assert_eq!(v.generic_class, GenericClass::NotAffAbelian);
        assert!(!v.numeric);
        let aa = builtin("aff1_plus_aff1");
        let v = classify_component(&aa, &semis(&aa, &["x2"])[0], &[p("x4", 4)], &mut seeded(1), opts);
        assert_eq!(v.generic_class, GenericClass::AffAbelian);
        assert!(v.points.iter().all(|pc| pc.stabilizer_dim == 2));
    }

    #[test]
    fn numeric_classification_agrees_with_exact() {
        let h = builtin("heisenberg_plus_aff1");
        for (y, dim, aff) in [([1.5, -2.0, 0.0, 3.0, 4.0], 3, false), ([1.5, -2.0, 0.7, 3.0, 0.0], 3, true)] {
            assert_eq!(classify_numeric(&h, &y), (dim, aff));
        }
    }

    #[test]
    fn sing0_of_catalog() {
        let aa = builtin("aff1_plus_aff1");
        let s = sing0_components(&aa, &p("x2*x4", 4), &semis(&aa, &["x4", "x2"]));
        let polys: Vec<String> = s.components.iter().map(|c| c.poly.to_string()).collect();
        assert_eq!(polys, vec!["x2", "x4"]);
        assert!(s.unfactored.is_none());
        let sl2 = builtin("sl2");
        assert!(sing0_components(&sl2, &p("1", 3), &[]).components.is_empty());
        let s = sing0_components(&aa, &p("x2*x4", 4), &[]);
        assert_eq!(s.unfactored, Some(p("x2*x4", 4)));
    }

    #[test]
    fn verdicts() {
        let opts = SampleOptions::default();
        let cases = [
            ("sl2", "1", vec![], Completeness::Complete),
            ("aff1", "x2", vec!["x2"], Completeness::Complete),
            ("aff1_plus_aff1", "x2*x4", vec!["x2", "x4"], Completeness::Complete),
            ("heisenberg", "x3", vec!["x3"], Completeness::Incomplete),
            ("heisenberg_plus_aff1", "x3*x5", vec!["x3", "x5"], Completeness::Incomplete),
            ("aff1_plus_aff1", "x2*x4", vec![], Completeness::Undetermined),
        ];
        for (name, pg, pool, expected) in cases {
            let alg = builtin(name);
            let r = completeness_verdict(&alg, &p(pg, alg.dim()), &semis(&alg, &pool), &mut seeded(42), opts);
            assert_eq!(r.verdict, expected, "{name}");
        }
    }
}
