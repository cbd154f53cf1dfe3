//! Multivariate GCD over the rationals by recursive primitive pseudo-remainder
//! sequences: one main variable at a time, contents handled recursively in
//! the remaining variables.

use super::{Monomial, PolyError, Polynomial};
use num_traits::One;

/// Coefficients of `f` as a univariate polynomial in `v`, indexed by power.
fn coefficients_in(f: &Polynomial, v: usize) -> Vec<Polynomial> {
    let n = f.nvars();
    let mut out = vec![Polynomial::zero(n); f.degree_in(v) as usize + 1];
    for (m, c) in f.terms() {
        let e = m.exponents()[v] as usize;
        let mut k = m.exponents().to_vec();
        k[v] = 0;
        out[e].add_term(Monomial::from_exponents(k), c.clone());
    }
    out
}

fn leading_coefficient_in(f: &Polynomial, v: usize) -> Polynomial {
    coefficients_in(f, v).pop().expect("at least one coefficient")
}

fn var_power(n: usize, v: usize, e: u32) -> Monomial {
    let mut k = vec![0; n];
    k[v] = e;
    Monomial::from_exponents(k)
}

/// Pseudo-remainder of `a` by `b` with respect to `v`.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = b.degree_in(v);
    let lb = leading_coefficient_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = leading_coefficient_in(&r, v);
        let shifted = b
            .multiply(&lr)
            .mul_monomial(&var_power(a.nvars(), v, dr - db), &One::one());
        r = r.multiply(&lb) - shifted;
        r = r.primitive();
    }
    r
}

/// Content of `f` with respect to `v`: gcd of its coefficients in `v`.
fn content_in(f: &Polynomial, v: usize) -> Polynomial {
    let coeffs: Vec<Polynomial> = coefficients_in(f, v).into_iter().filter(|c| !c.is_zero()).collect();
    gcd_many(&coeffs).expect("nonzero polynomial has a nonzero coefficient")
}

fn primitive_part_in(f: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(f, v);
    f.exact_div(&c).expect("content divides").primitive()
}

/// GCD of two polynomials, normalized primitive with positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    assert_eq!(f.nvars(), g.nvars(), "nvars mismatch in gcd");
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    let main = f.variables().into_iter().chain(g.variables()).max();
    let Some(v) = main else {
        return Polynomial::one(f.nvars());
    };
    if f.degree_in(v) == 0 {
        return gcd(f, &content_in(g, v));
    }
    if g.degree_in(v) == 0 {
        return gcd(&content_in(f, v), g);
    }
    let content = gcd(&content_in(f, v), &content_in(g, v));
    let mut a = primitive_part_in(f, v);
    let mut b = primitive_part_in(g, v);
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return content;
        }
        a = b;
        b = primitive_part_in(&r, v);
    }
    b.multiply(&content).primitive()
}

/// GCD of a sequence; zero entries are skipped.
pub fn gcd_many(fs: &[Polynomial]) -> Result<Polynomial, PolyError> {
    let mut nonzero = fs.iter().filter(|f| !f.is_zero());
    let first = nonzero.next().ok_or(PolyError::AllZero)?;
    let mut acc = first.primitive();
    for f in nonzero {
        if acc.is_constant() {
            break;
        }
        acc = gcd(&acc, f);
    }
    Ok(acc)
}

/// Product of the distinct irreducible factors of `f`, primitive.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    let mut all = vec![f.clone()];
    all.extend(f.gradient());
    let g = gcd_many(&all)?;
    Ok(f.exact_div(&g).expect("gcd divides").primitive())
}
