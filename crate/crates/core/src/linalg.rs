//! Dense exact linear algebra over the rationals, plus fraction-free
//! elimination for matrices with polynomial entries.

use num_traits::{One, Zero};

use crate::poly::{Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    /// Matrix whose columns are the given vectors of length `len`.
    pub fn from_columns(cols: &[Vec<Rational>], len: usize) -> Self {
        let mut m = Self::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..len {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn add_scaled(&self, other: &Matrix, s: &Rational) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b * s).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add_scaled(other, &-Rational::one())
    }

    /// Stacks the rows of `other` under `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = Rational::one() / &m[(r, c)];
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some `v` with `self · v = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = r[(row, self.cols)].clone();
        }
        Some(v)
    }

    /// Nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        Matrix::from_rows((0..pivots.len()).map(|i| r.row(i).to_vec()).collect(), self.cols)
    }

    /// Characteristic polynomial `det(λI − A)`, ascending coefficients.
    pub fn charpoly(&self) -> Vec<Rational> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        let h = self.hessenberg();
        // p[k] = characteristic polynomial of the leading k×k block.
        let mut p: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
        for k in 1..=n {
            let hk = &h[(k - 1, k - 1)];
            let prev = &p[k - 1];
            let mut next = vec![Rational::zero(); k + 1];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * hk;
            }
            let mut prod = Rational::one();
            for i in (1..k).rev() {
                prod *= &h[(i, i - 1)];
                if prod.is_zero() {
                    break;
                }
                let coef = &h[(i - 1, k - 1)] * &prod;
                for (j, c) in p[i - 1].iter().enumerate() {
                    next[j] -= c * &coef;
                }
            }
            p.push(next);
        }
        p.pop().expect("nonempty")
    }

    /// Upper Hessenberg matrix similar to `self`.
    fn hessenberg(&self) -> Matrix {
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if p != m {
                h.swap_rows(p, m);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + m);
                }
            }
            for i in m + 1..n {
                if h[(i, m - 1)].is_zero() {
                    continue;
                }
                let t = &h[(i, m - 1)] / &h[(m, m - 1)];
                for j in 0..n {
                    let v = &h[(m, j)] * &t;
                    h[(i, j)] -= v;
                }
                for j in 0..n {
                    let v = &h[(j, i)] * &t;
                    h[(j, m)] += v;
                }
            }
        }
        h
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Exact rank of a list of row vectors of length `cols`.
pub fn rank_of_rows(rows: &[Vec<Rational>], cols: usize) -> usize {
    Matrix::from_rows(rows.to_vec(), cols).rank()
}

/// Basis of the sum of the column spans of the given vector lists.
pub fn span_basis(vectors: &[Vec<Rational>], len: usize) -> Vec<Vec<Rational>> {
    Matrix::from_rows(vectors.to_vec(), len).row_space_basis().to_rows()
}

/// `span(a) == span(b)`, decided by `rank(a) = rank(b) = rank(a ∪ b)`.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], len: usize) -> bool {
    let ra = rank_of_rows(a, len);
    let rb = rank_of_rows(b, len);
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank_of_rows(&both, len) == ra
}

/// `span(a) ⊆ span(b)`.
pub fn span_contains(b: &[Vec<Rational>], a: &[Vec<Rational>], len: usize) -> bool {
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    rank_of_rows(&both, len) == rank_of_rows(b, len)
}

/// Fraction-free (Bareiss) elimination on a square or rectangular matrix with
/// polynomial entries, with full pivoting. Returns `(rank, sign · det)` where
/// the determinant part is only meaningful for square full-rank input.
fn bareiss(entries: &[Vec<Polynomial>], nvars: usize) -> (usize, Polynomial) {
    let mut m: Vec<Vec<Polynomial>> = entries.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = Polynomial::one(nvars);
    let mut negate = false;
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let pivot = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero());
        let Some((pi, pj)) = pivot else {
            break;
        };
        if pi != k {
            m.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in m.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        rank += 1;
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = if rank == rows && rows == cols {
        if rows == 0 {
            Polynomial::one(nvars)
        } else {
            m[rows - 1][cols - 1].clone()
        }
    } else {
        Polynomial::zero(nvars)
    };
    (rank, if negate { -det } else { det })
}

/// Rank of a polynomial matrix over the field of rational functions.
pub fn poly_matrix_rank(entries: &[Vec<Polynomial>], nvars: usize) -> usize {
    bareiss(entries, nvars).0
}

/// Determinant of a square polynomial matrix.
pub fn poly_matrix_det(entries: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    assert!(entries.iter().all(|r| r.len() == entries.len()), "det of non-square matrix");
    bareiss(entries, nvars).1
}
