//! Univariate helpers: distinct-root counts, exact rational roots and
//! floating-point real roots. Coefficients are ascending powers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::poly::{rational_to_f64, squarefree_part, Monomial, Polynomial, Rational};

pub fn trim(coeffs: &[Rational]) -> Vec<Rational> {
    let mut v = coeffs.to_vec();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub fn to_polynomial(coeffs: &[Rational]) -> Polynomial {
    Polynomial::from_terms(
        1,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::from_exponents(vec![i as u32]), c.clone())),
    )
}

pub fn from_polynomial(p: &Polynomial) -> Vec<Rational> {
    assert_eq!(p.nvars(), 1);
    let d = p.degree().unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); d + 1];
    for (m, c) in p.terms() {
        out[m.exponents()[0] as usize] = c.clone();
    }
    trim(&out)
}

pub fn eval(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Squarefree part of a nonzero univariate polynomial, integer primitive.
pub fn squarefree(coeffs: &[Rational]) -> Vec<Rational> {
    let p = to_polynomial(&trim(coeffs));
    from_polynomial(&squarefree_part(&p).expect("nonzero univariate"))
}

/// Number of distinct complex roots; `None` for the zero polynomial.
pub fn distinct_root_count(coeffs: &[Rational]) -> Option<usize> {
    let t = trim(coeffs);
    if t.is_empty() {
        return None;
    }
    Some(squarefree(&t).len() - 1)
}

/// Approximate complex roots by Aberth–Ehrlich iteration.
pub fn complex_roots(coeffs: &[Rational]) -> Vec<Complex64> {
    let t = trim(coeffs);
    if t.len() <= 1 {
        return Vec::new();
    }
    let scale = t.iter().map(|c| c.abs()).max().expect("nonempty");
    let c: Vec<f64> = t.iter().map(|v| rational_to_f64(&(v / &scale))).collect();
    let n = c.len() - 1;
    if n == 1 {
        return vec![Complex64::new(-c[0] / c[1], 0.0)];
    }
    let lead = c[n];
    let radius = 1.0 + c[..n].iter().map(|v| (v / lead).abs()).fold(0.0, f64::max);
    let horner = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(c[n], 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        (p, dp)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.7, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..1000 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::new(1.0, 0.0) / d
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

/// Approximate real roots (imaginary part within a relative tolerance),
/// polished by Newton steps, sorted ascending.
pub fn real_roots_f64(coeffs: &[Rational]) -> Vec<f64> {
    let sf = squarefree(coeffs);
    let c: Vec<f64> = sf.iter().map(rational_to_f64).collect();
    let f = |x: f64| c.iter().rev().fold(0.0, |acc, v| acc * x + v);
    let df = |x: f64| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (i, v)| acc * x + v * i as f64)
    };
    let mut out: Vec<f64> = complex_roots(&sf)
        .into_iter()
        .filter(|z| z.im.abs() <= 1e-7 * (1.0 + z.re.abs()))
        .map(|z| {
            let mut x = z.re;
            for _ in 0..8 {
                let d = df(x);
                if d == 0.0 {
                    break;
                }
                let nx = x - f(x) / d;
                if !nx.is_finite() {
                    break;
                }
                x = nx;
            }
            x
        })
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn continued_fraction_convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..40 {
        if !r.is_finite() {
            break;
        }
        let a = r.floor();
        let Some(ai) = BigInt::from_f64(a) else { break };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-18 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// Distinct rational roots, sorted ascending, each verified exactly.
/// The second component is the number of distinct roots that are not
/// rational (possibly complex).
pub fn rational_roots(coeffs: &[Rational]) -> (Vec<Rational>, usize) {
    let t = trim(coeffs);
    if t.len() <= 1 {
        return (Vec::new(), 0);
    }
    let sf = squarefree(&t);
    let total = sf.len() - 1;
    // Integer coefficients: squarefree() returns an integer primitive form.
    let lead = sf.last().expect("nonempty").numer().clone();
    let dens = small_divisors(&lead);
    let mut found: Vec<Rational> = Vec::new();
    let mut remaining = sf.clone();
    let push = |r: Rational, found: &mut Vec<Rational>, rem: &mut Vec<Rational>| {
        if !found.contains(&r) && eval(rem, &r).is_zero() {
            *rem = deflate(rem, &r);
            found.push(r);
        }
    };
    if sf[0].is_zero() {
        push(Rational::zero(), &mut found, &mut remaining);
    }
    for z in complex_roots(&sf) {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        let x = z.re;
        let mut cands: Vec<Rational> = Vec::new();
        if let Some(ds) = &dens {
            for q in ds {
                let qf = q.to_f64().unwrap_or(f64::INFINITY);
                if let Some(p) = BigInt::from_f64((x * qf).round()) {
                    for off in [-1i64, 0, 1] {
                        cands.push(Rational::new(&p + off, q.clone()));
                    }
                }
            }
        }
        cands.extend(continued_fraction_convergents(x, 1_000_000_000));
        for c in cands {
            if remaining.len() <= 1 {
                break;
            }
            push(c, &mut found, &mut remaining);
        }
    }
    found.sort();
    let irrational = total - found.len();
    (found, irrational)
}

/// Synthetic division by `(λ − r)`, assuming `r` is a root.
fn deflate(coeffs: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = coeffs.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (1..=n).rev() {
        carry = &coeffs[k] + carry * r;
        out[k - 1] = carry.clone();
    }
    out
}
