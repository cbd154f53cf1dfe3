//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are 0-based internally and printed 1-based (`x1`, `x2`, ...).
//! Terms are kept in a `BTreeMap` under graded lexicographic order, so equal
//! polynomials always have identical term maps.

mod gcd;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use gcd::{gcd, gcd_many, squarefree_part};
pub use parse::{parse_polynomial, parse_rational, ParseError};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("point has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("gcd of an all-zero sequence")]
    AllZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroInput,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector; ordered by total degree, then lexicographically with
/// `x1 > x2 > ... > xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    /// All monomials of total degree `d` in `nvars` variables, descending.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
            if slots == 1 {
                prefix.push(left);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(prefix, left - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(nvars), d, nvars, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The coordinate function `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The linear form `sum_i coeffs[i] * x_{i+1}`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(n, i), c.clone());
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length must equal nvars");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Highest exponent of variable `v` occurring in any term.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&v| self.terms.keys().any(|m| m.0[v] > 0))
            .collect()
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    fn check_nvars(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::NvarsMismatch(self.nvars, other.nvars))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Exact product; panics on an nvars mismatch (see [`Polynomial::try_mul`]).
    pub fn multiply(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("nvars mismatch in multiply")
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn partial_derivative(&self, j: usize) -> Result<Polynomial, PolyError> {
        if j >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: j,
                nvars: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[j];
            if e > 0 {
                let mut d = m.clone();
                d.0[j] -= 1;
                out.add_term(d, c * rat(e as i64));
            }
        }
        Ok(out)
    }

    /// All first partial derivatives.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars)
            .map(|j| self.partial_derivative(j).expect("index in range"))
            .collect()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                got: point.len(),
                expected: self.nvars,
            });
        }
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rational_to_f64(c);
                for (x, &e) in point.iter().zip(&m.0) {
                    t *= x.powi(e as i32);
                }
                t
            })
            .sum()
    }

    /// Gradient evaluated exactly at `point`.
    pub fn gradient_at(&self, point: &[Rational]) -> Result<Vec<Rational>, PolyError> {
        self.gradient().iter().map(|g| g.evaluate(point)).collect()
    }

    /// Coefficients `[f_0, ..., f_m]` of `f(a + λx) = Σ λ^i f_i(x)`, with
    /// `m = deg f`. Empty for the zero polynomial.
    pub fn shift_expand(&self, a: &[Rational]) -> Result<Vec<Polynomial>, PolyError> {
        if a.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                got: a.len(),
                expected: self.nvars,
            });
        }
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        let n = self.nvars;
        let mut out = vec![Self::zero(n); deg as usize + 1];
        for (m, c) in &self.terms {
            // Product over variables of (a_v + λ x_v)^e, tracked as a list
            // of polynomial coefficients indexed by the power of λ.
            let mut acc: Vec<Polynomial> = vec![Self::constant(n, c.clone())];
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![Self::zero(n); acc.len() + 1];
                    for (p, coeff) in acc.iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        if !a[v].is_zero() {
                            next[p] = next[p].try_add(&coeff.scale(&a[v]))?;
                        }
                        next[p + 1] = next[p + 1]
                            .try_add(&coeff.mul_monomial(&Monomial::var(n, v), &Rational::one()))?;
                    }
                    acc = next;
                }
            }
            for (p, coeff) in acc.into_iter().enumerate() {
                out[p] = out[p].try_add(&coeff)?;
            }
        }
        Ok(out)
    }

    /// Coefficients `[c_0, ..., c_m]` of the univariate `λ ↦ f(base + λ·dir)`.
    pub fn restrict_to_line(&self, base: &[Rational], dir: &[Rational]) -> Result<Vec<Rational>, PolyError> {
        if base.len() != self.nvars || dir.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                got: base.len().min(dir.len()),
                expected: self.nvars,
            });
        }
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        let mut out = vec![Rational::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            let mut acc = vec![c.clone()];
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![Rational::zero(); acc.len() + 1];
                    for (p, k) in acc.iter().enumerate() {
                        next[p] += k * &base[v];
                        next[p + 1] += k * &dir[v];
                    }
                    acc = next;
                }
            }
            for (p, k) in acc.into_iter().enumerate() {
                out[p] += k;
            }
        }
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        Ok(out)
    }

    /// Substitutes `x_v = value`, keeping the variable count.
    pub fn substitute(&self, v: usize, value: &Rational) -> Polynomial {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut k = m.clone();
            let e = k.0[v];
            k.0[v] = 0;
            out.add_term(k, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            rem = rem - divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.is_zero() || (!self.is_zero() && other.exact_div(self).is_some())
    }

    /// Scalar multiple with integer coefficients of gcd 1 and positive
    /// leading coefficient; nonzero constants map to 1, zero stays zero.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let k = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&k);
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.leading_coefficient().expect("nonzero").is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Gradient-free check that this is a scalar multiple of `other`.
    pub fn is_scalar_multiple_of(&self, other: &Polynomial) -> Option<Rational> {
        if other.is_zero() {
            return self.is_zero().then(Rational::zero);
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (m, c) = other.leading_term()?;
        let k = self.coefficient(m) / c;
        (&other.scale(&k) == self).then_some(k)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        self.try_add(&rhs).expect("nvars mismatch in add")
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("nvars mismatch in add")
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.clone() - rhs.clone()
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.multiply(&rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e)
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n).unwrap()
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![1, 1]);
        let c = Monomial(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert_eq!(Monomial::all_of_degree(2, 1), vec![Monomial(vec![1, 0]), Monomial(vec![0, 1])]);
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(p("x2", 4).multiply(&p("x4", 4)), p("x2*x4", 4));
        assert_eq!(p("x2 - 1", 2).multiply(&p("x2 + 1", 2)), p("x2^2 - 1", 2));
        assert_eq!(
            p("x1", 2).try_mul(&p("x1", 3)),
            Err(PolyError::NvarsMismatch(2, 3))
        );
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x2*x4", 4).partial_derivative(1).unwrap(), p("x4", 4));
        assert_eq!(p("x1^2 + 4*x2*x3", 3).partial_derivative(0).unwrap(), p("2*x1", 3));
        assert!(matches!(
            p("x1", 2).partial_derivative(2),
            Err(PolyError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let pt: Vec<Rational> = [0, 1, 0, 1].iter().map(|&v| rat(v)).collect();
        assert_eq!(p("x2*x4", 4).evaluate(&pt).unwrap(), rat(1));
        let pt: Vec<Rational> = [1, 1, -1].iter().map(|&v| rat(v)).collect();
        assert_eq!(p("x1^2 + 4*x2*x3", 3).evaluate(&pt).unwrap(), rat(-3));
        assert!(p("x1", 2).evaluate(&[rat(1)]).is_err());
    }

    #[test]
    fn shift_expand_examples() {
        let e = p("x1^2", 2).shift_expand(&[rat(1), rat(0)]).unwrap();
        assert_eq!(e, vec![p("1", 2), p("2*x1", 2), p("x1^2", 2)]);
        let a: Vec<Rational> = [0, 1, 0, 1].iter().map(|&v| rat(v)).collect();
        let e = p("x2*x4", 4).shift_expand(&a).unwrap();
        assert_eq!(e, vec![p("1", 4), p("x2 + x4", 4), p("x2*x4", 4)]);
    }

    #[test]
    fn shift_expand_at_origin_gives_homogeneous_parts() {
        let f = p("x1^3 - 2*x1*x2 + 5*x2 + 7", 2);
        let e = f.shift_expand(&[rat(0), rat(0)]).unwrap();
        for (i, fi) in e.iter().enumerate() {
            assert_eq!(*fi, f.homogeneous_component(i as u32));
        }
    }

    #[test]
    fn restrict_to_line_matches_shift() {
        let f = p("x1*x2 + x2^2", 2);
        // f((3,2) + λ(-1,1))
        let c = f.restrict_to_line(&[rat(3), rat(2)], &[rat(-1), rat(1)]).unwrap();
        // (3-λ)(2+λ) + (2+λ)^2 = 6 + λ - λ² + 4 + 4λ + λ² = 10 + 5λ
        assert_eq!(c, vec![rat(10), rat(5)]);
    }

    #[test]
    fn exact_division_and_primitive() {
        let f = p("x2^2*x4", 4);
        assert_eq!(f.exact_div(&p("x2*x4", 4)), Some(p("x2", 4)));
        assert_eq!(f.exact_div(&p("x1", 4)), None);
        assert_eq!(p("-2/3*x1 + 4/9*x2", 2).primitive(), p("3*x1 - 2*x2", 2));
        assert_eq!(p("-5", 2).primitive(), p("1", 2));
    }

    #[test]
    fn display_format() {
        assert_eq!(p("4*x2*x3 + x1^2", 3).to_string(), "x1^2 + 4*x2*x3");
        assert_eq!(p("2/3*x1 - x1", 1).to_string(), "-1/3*x1");
        assert_eq!(p("x1 - x1", 1).to_string(), "0");
        assert_eq!(p("-x2^2 + 3", 2).to_string(), "-x2^2 + 3");
    }
}
