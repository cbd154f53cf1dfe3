//! The full verification pipeline for one catalog entry and its JSON report.
//!
//! Each stage draws from its own ChaCha stream of the run seed, so a stage
//! run on its own (as the CLI subcommands do) sees the same random values as
//! inside a full run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::brackets::{involution_report, InvolutionReport};
use crate::catalog::{Entry, Expected};
use crate::liealg::LieAlgebra;
use crate::poly::{parse_polynomial, Polynomial, Rational};
use crate::pfaffian::fundamental_semiinvariant;
use crate::sampling::{random_point, Sampler};
use crate::semiinv::{find_semiinvariants, SearchResult, SemiInvariant};
use crate::shifts::{default_lambdas, extended_family, kernel_span, semiinvariant_family, shift_family, BasePoint, GeneratorFamily, ShiftError};
use crate::singular::{completeness_verdict, Completeness, CompletenessReport, SampleOptions};
use crate::trdeg::{completeness_bound, span_dimension, verify_trdeg_equality, TrdegVerdict};

pub const SCHEMA: &str = "argshift-report/1";

/// Coordinates of random base points are drawn from `[-BASE_BOUND, BASE_BOUND]`.
pub const BASE_BOUND: i64 = 99;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Settings {
    pub seed: u64,
    pub samples: usize,
    pub coeff_bound: i64,
    pub numeric_fallback: bool,
    /// Overrides the default search degree `max(2, deg p_g)`.
    pub max_degree: Option<u32>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 42,
            samples: 12,
            coeff_bound: 999,
            numeric_fallback: true,
            max_degree: None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Stage {
    Index = 1,
    Search = 2,
    BasePoint = 3,
    Spans = 4,
    Equality = 5,
    Completeness = 6,
}

impl Settings {
    pub fn rng(&self, stage: Stage) -> Sampler {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stage as u64);
        r
    }

    pub fn sample_options(&self) -> SampleOptions {
        SampleOptions {
            bound: self.coeff_bound,
            numeric_fallback: self.numeric_fallback,
            ..SampleOptions::default()
        }
    }
}

/// Index, `p_g` and the semi-invariant pool of an algebra.
#[derive(Clone, Debug)]
pub struct AlgebraicData {
    pub index: usize,
    pub p_g: Polynomial,
    pub search: SearchResult,
    /// Search results followed by the catalog's own semi-invariants, up to
    /// scalar multiples.
    pub pool: Vec<SemiInvariant>,
}

pub fn algebraic_data(alg: &LieAlgebra, settings: &Settings) -> AlgebraicData {
    let index = alg.index_of(&mut settings.rng(Stage::Index), settings.samples, settings.coeff_bound);
    let p_g = fundamental_semiinvariant(alg, index);
    let degree = settings.max_degree.unwrap_or_else(|| p_g.degree().unwrap_or(0).max(2));
    let search = find_semiinvariants(alg, degree, &mut settings.rng(Stage::Search));
    let mut pool: Vec<SemiInvariant> = Vec::new();
    let user = alg.semi_invariants().iter().filter_map(|p| SemiInvariant::new(alg, p.clone()));
    for s in search.found.iter().cloned().chain(user) {
        if s.degree() > 0 && !pool.iter().any(|q| s.poly.is_scalar_multiple_of(&q.poly).is_some()) {
            pool.push(s);
        }
    }
    AlgebraicData { index, p_g, search, pool }
}

/// A regular point with coordinates in `[-99, 99]`.
pub fn random_regular_point(alg: &LieAlgebra, index: usize, settings: &Settings) -> Vec<Rational> {
    let mut rng = settings.rng(Stage::BasePoint);
    for _ in 0..10_000 {
        let a = random_point(&mut rng, alg.dim(), BASE_BOUND);
        if alg.is_regular(&a, index).expect("length") {
            return a;
        }
    }
    panic!("no regular point found for {}", alg.name());
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Families {
    pub fa: GeneratorFamily,
    pub ftilde: GeneratorFamily,
    pub fsi: GeneratorFamily,
}

impl Families {
    pub fn build(bp: &BasePoint, data: &AlgebraicData) -> Result<Families, ShiftError> {
        let inv = bp.alg.casimirs();
        Ok(Families {
            fa: shift_family(bp, inv)?,
            ftilde: extended_family(bp, inv, &data.p_g)?,
            fsi: semiinvariant_family(bp, inv, &data.p_g, &data.pool)?,
        })
    }

    pub fn all(&self) -> [&GeneratorFamily; 3] {
        [&self.fa, &self.ftilde, &self.fsi]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Involutions {
    pub fa: InvolutionReport,
    pub ftilde: InvolutionReport,
    pub fsi: InvolutionReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanDimensions {
    pub fa: usize,
    pub ftilde: usize,
    pub fsi: usize,
    /// Largest `dim Σ_λ Ker(A_x − λA_a)` over the sample points.
    pub kernel_span: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchSummary {
    pub max_degree: u32,
    pub found: Vec<SemiInvariant>,
    pub irrational_degrees: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub algebra: String,
    pub dim: usize,
    pub settings: Settings,
    pub index: usize,
    #[serde(serialize_with = "crate::serial::poly")]
    pub p_g: Polynomial,
    pub semi_invariant_search: SearchSummary,
    pub pool: Vec<SemiInvariant>,
    #[serde(serialize_with = "crate::serial::point")]
    pub base_point: Vec<Rational>,
    pub families: Families,
    pub involution: Involutions,
    pub span_dimensions: SpanDimensions,
    pub completeness_bound: usize,
    pub trdeg_equality: TrdegVerdict,
    pub completeness: CompletenessReport,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn sample_spans(bp: &BasePoint, fams: &Families, settings: &Settings) -> SpanDimensions {
    let mut rng = settings.rng(Stage::Spans);
    let n = bp.alg.dim();
    let fa = span_dimension(&fams.fa, &mut rng, settings.samples, settings.coeff_bound);
    let ftilde = span_dimension(&fams.ftilde, &mut rng, settings.samples, settings.coeff_bound);
    let fsi = span_dimension(&fams.fsi, &mut rng, settings.samples, settings.coeff_bound);
    let lambdas = default_lambdas(n);
    let kernel_span = (0..settings.samples.max(1))
        .map(|_| kernel_span(bp, &random_point(&mut rng, n, settings.coeff_bound), &lambdas).dim())
        .max()
        .unwrap_or(0);
    SpanDimensions { fa, ftilde, fsi, kernel_span }
}

fn compare_expected(expected: &Expected, r: &Report, failures: &mut Vec<String>) {
    if let Some(i) = expected.index {
        if i != r.index {
            failures.push(format!("expected index {i}, computed {}", r.index));
        }
    }
    if let Some(text) = &expected.p_g {
        match parse_polynomial(text, r.dim) {
            Ok(p) if p.primitive() == r.p_g => {}
            Ok(_) => failures.push(format!("expected p_g {text}, computed {}", r.p_g)),
            Err(e) => failures.push(format!("expected p_g {text:?} does not parse: {e}")),
        }
    }
    if let Some(c) = &expected.completeness {
        if c != r.completeness.verdict.as_str() {
            failures.push(format!("expected {c}, computed {}", r.completeness.verdict));
        }
    }
    if let Some(t) = &expected.trdeg {
        let pairs = [("fa", t.fa, r.span_dimensions.fa), ("ftilde", t.ftilde, r.span_dimensions.ftilde), ("fsi", t.fsi, r.span_dimensions.fsi)];
        for (label, want, got) in pairs {
            if let Some(w) = want {
                if w != got {
                    failures.push(format!("expected trdeg {label} = {w}, computed {got}"));
                }
            }
        }
    }
}

/// Runs every stage on `alg` at base point `a` (random regular if `None`).
pub fn run_algebra(alg: &LieAlgebra, expected: Option<&Expected>, settings: &Settings, a: Option<Vec<Rational>>) -> Result<Report, ShiftError> {
    let data = algebraic_data(alg, settings);
    let a = match a {
        Some(a) => a,
        None => random_regular_point(alg, data.index, settings),
    };
    let bp = BasePoint::new(alg, data.index, a)?;
    let families = Families::build(&bp, &data)?;
    let involution = Involutions {
        fa: involution_report(alg, &families.fa).expect("dimensions match"),
        ftilde: involution_report(alg, &families.ftilde).expect("dimensions match"),
        fsi: involution_report(alg, &families.fsi).expect("dimensions match"),
    };
    let span_dimensions = sample_spans(&bp, &families, settings);
    let bound = completeness_bound(alg.dim(), data.index);
    let trdeg_equality = verify_trdeg_equality(&families.ftilde, &families.fsi, &mut settings.rng(Stage::Equality), settings.samples, settings.coeff_bound);
    let completeness = completeness_verdict(alg, &data.p_g, &data.pool, &mut settings.rng(Stage::Completeness), settings.sample_options());

    let mut failures = Vec::new();
    for (label, inv) in [("fa", &involution.fa), ("ftilde", &involution.ftilde), ("fsi", &involution.fsi)] {
        for v in &inv.violations {
            failures.push(format!(
                "{label}: generators {} and {} do not commute under {:?}: {}",
                v.pair.0 + 1,
                v.pair.1 + 1,
                v.bracket,
                v.residual
            ));
        }
    }
    let s = &span_dimensions;
    for (label, d) in [("fa", s.fa), ("ftilde", s.ftilde), ("fsi", s.fsi), ("kernel span", s.kernel_span), ("trdeg_equality ftilde", trdeg_equality.ftilde), ("trdeg_equality fsi", trdeg_equality.fsi)] {
        if d > bound {
            failures.push(format!("{label} dimension {d} exceeds the bound {bound}"));
        }
    }
    if !(s.fa <= s.ftilde && s.ftilde <= s.fsi) {
        failures.push(format!("span dimensions not monotone: {} {} {}", s.fa, s.ftilde, s.fsi));
    }
    if !trdeg_equality.pass {
        failures.push(format!("trdeg ftilde = {} differs from trdeg fsi = {}", trdeg_equality.ftilde, trdeg_equality.fsi));
    }
    if !trdeg_equality.span_mismatch_points.is_empty() {
        failures.push(format!("dF̃ ≠ dF^si at {} generic sample points", trdeg_equality.span_mismatch_points.len()));
    }
    if !trdeg_equality.containment_failures.is_empty() {
        failures.push(format!("dF̃ ⊄ dF^si at {} sample points", trdeg_equality.containment_failures.len()));
    }
    let attains = trdeg_equality.ftilde == bound;
    match completeness.verdict {
        Completeness::Complete if !attains => failures.push(format!("verdict Complete but trdeg ftilde = {} < {bound}", trdeg_equality.ftilde)),
        Completeness::Incomplete if attains => failures.push(format!("verdict Incomplete but trdeg ftilde = {bound}")),
        _ => {}
    }
    let mut report = Report {
        schema: SCHEMA,
        algebra: alg.name().to_string(),
        dim: alg.dim(),
        settings: *settings,
        index: data.index,
        p_g: data.p_g,
        semi_invariant_search: SearchSummary {
            max_degree: data.search.max_degree,
            found: data.search.found,
            irrational_degrees: data.search.irrational_degrees,
        },
        pool: data.pool,
        base_point: bp.a.clone(),
        families,
        involution,
        span_dimensions,
        completeness_bound: bound,
        trdeg_equality,
        completeness,
        failures,
        passed: false,
    };
    if let Some(e) = expected {
        let mut more = Vec::new();
        compare_expected(e, &report, &mut more);
        report.failures.extend(more);
    }
    report.passed = report.failures.is_empty();
    Ok(report)
}

pub fn run_verify(entry: &Entry, settings: &Settings) -> Report {
    run_algebra(&entry.algebra, entry.record.expected.as_ref(), settings, None).expect("random base point is regular")
}

/// Runs every entry in parallel; output follows catalog order.
pub fn run_catalog(entries: &[Entry], settings: &Settings) -> Vec<Report> {
    entries.par_iter().map(|e| run_verify(e, settings)).collect()
}

/// Parses `"r1,...,rn"` into a point.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, crate::poly::ParseError> {
    text.split(',').map(|s| crate::poly::parse_rational(s.trim())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_entries;
    use crate::poly::rat;

    #[test]
    fn builtin_catalog_verifies() {
        let entries = builtin_entries();
        let reports = run_catalog(&entries, &Settings::default());
        for r in &reports {
            assert!(r.passed, "{}: {:?}", r.algebra, r.failures);
        }
        let by_name = |n: &str| reports.iter().find(|r| r.algebra == n).unwrap();
        let h = by_name("heisenberg");
        assert_eq!((h.index, h.p_g.to_string()), (1, "x3".to_string()));
        assert_eq!((h.trdeg_equality.ftilde, h.trdeg_equality.fsi), (1, 1));
        assert_eq!(h.completeness.verdict, Completeness::Incomplete);
        let s = by_name("sl2");
        assert_eq!((s.index, s.p_g.to_string(), s.trdeg_equality.ftilde, s.completeness_bound), (1, "1".into(), 2, 2));
        let aa = by_name("aff1_plus_aff1");
        assert_eq!((aa.index, aa.p_g.to_string(), aa.trdeg_equality.fsi), (0, "x2*x4".into(), 2));
    }

    #[test]
    fn reports_are_deterministic() {
        let entries = builtin_entries();
        let s = Settings { seed: 7, ..Settings::default() };
        let a = serde_json::to_string(&run_catalog(&entries, &s)).unwrap();
        let b = serde_json::to_string(&run_catalog(&entries, &s)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(SCHEMA));
    }

    #[test]
    fn points_parse() {
        assert_eq!(parse_point("1, -2/3,0").unwrap(), vec![rat(1), crate::poly::ratio(-2, 3), rat(0)]);
        assert!(parse_point("1,,2").is_err());
    }
}
