use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::poly::RatPolynomial;

pub type RatVector = Vec<Rational>;

/// Dense rectangular matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of fraction-free elimination: rank plus a non-singular
/// `rank x rank` minor selected by `pivot_rows` x `pivot_cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::input("ragged matrix rows"));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers, panics on ragged input.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rational::int(v)).collect()).collect())
            .expect("ragged integer matrix")
    }

    /// `u v^T`.
    pub fn outer(u: &[Rational], v: &[Rational]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn max_abs_entry(&self) -> Rational {
        rational::max_abs(&self.data)
    }

    /// Largest absolute row sum.
    pub fn row_sum_norm(&self) -> Rational {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).fold(Rational::zero(), |a, b| a + b))
            .fold(Rational::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> RatVector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: &Rational) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Rows scaled to integers; returns the integer rows and per-row scale
    /// factors (`int_row = scale * row`).
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let l = self.row(i).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            out.push(self.row(i).iter().map(|v| v.numer() * (&l / v.denom())).collect());
            scales.push(l);
        }
        (out, scales)
    }

    /// Fraction-free (Bareiss) row echelon form over the integers.
    ///
    /// Returns the echelon rows (only the first `rank` are non-zero), the
    /// original row index of each echelon row, the pivot columns, and the
    /// parity of the row permutation.
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, Vec<usize>, bool) {
        let (mut a, _) = self.integer_rows();
        let mut order: Vec<usize> = (0..self.rows).collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut odd = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                order.swap(p, r);
                odd = !odd;
            }
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (a, order, pivots, odd)
    }

    pub fn rank(&self) -> usize {
        self.rank_certificate().rank
    }

    pub fn rank_certificate(&self) -> RankCertificate {
        let (_, order, pivots, _) = self.bareiss();
        let rank = pivots.len();
        let mut pivot_rows: Vec<usize> = order[..rank].to_vec();
        pivot_rows.sort_unstable();
        RankCertificate { rank, pivot_rows, pivot_cols: pivots }
    }

    /// Exact kernel basis: one vector per free column with that coordinate
    /// set to 1 and the other free coordinates 0.
    pub fn kernel(&self) -> Vec<RatVector> {
        let (a, _, pivots, _) = self.bareiss();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (i, &pc) in pivots.iter().enumerate().rev() {
                    let s = (pc + 1..self.cols)
                        .fold(Rational::zero(), |acc, j| acc + Rational::from_integer(a[i][j].clone()) * &x[j]);
                    x[pc] = -s / Rational::from_integer(a[i][pc].clone());
                }
                x
            })
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        if self.rows == 0 {
            return Rational::one();
        }
        let (a, _, pivots, odd) = self.bareiss();
        if pivots.len() < self.rows {
            return Rational::zero();
        }
        let (_, scales) = self.integer_rows();
        let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        let det = Rational::new(a[self.rows - 1][self.cols - 1].clone(), scale);
        if odd {
            -det
        } else {
            det
        }
    }

    /// Pivot sequence of Gaussian elimination with complete pivoting
    /// (largest remaining magnitude, first in row-major order on ties), as
    /// original `(row, col)` pairs. Its length is the rank.
    pub fn complete_pivots(&self) -> Vec<(usize, usize)> {
        let mut a = self.clone();
        let mut rows: Vec<usize> = (0..self.rows).collect();
        let mut cols: Vec<usize> = (0..self.cols).collect();
        let mut out = Vec::new();
        while !rows.is_empty() && !cols.is_empty() {
            let mut best: Option<(usize, usize, Rational)> = None;
            for (ri, &i) in rows.iter().enumerate() {
                for (ci, &j) in cols.iter().enumerate() {
                    let v = a.get(i, j).abs();
                    if !v.is_zero() && best.as_ref().is_none_or(|b| v > b.2) {
                        best = Some((ri, ci, v));
                    }
                }
            }
            let Some((ri, ci, _)) = best else { break };
            let (pi, pj) = (rows.remove(ri), cols.remove(ci));
            let pivot = a.get(pi, pj).clone();
            for &i in &rows {
                let f = a.get(i, pj) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for &j in &cols {
                    let v = a.get(i, j) - &f * a.get(pi, j);
                    a.set(i, j, v);
                }
            }
            out.push((pi, pj));
        }
        out
    }

    /// `det(lambda I - A)` by the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> RatPolynomial {
        assert!(self.is_square(), "characteristic polynomial of non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = RatMatrix::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m);
            for i in 0..n {
                let v = m.get(i, i) + &coeffs[n - k + 1];
                m.set(i, i, v);
            }
            let am = self.mul(&m);
            coeffs[n - k] = -am.trace() / rational::int(k as i64);
        }
        RatPolynomial::new(coeffs)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rational::format_rational).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// Exact Gram-Schmidt without normalization; drops dependent vectors.
pub fn orthogonalize(vs: &[RatVector]) -> Vec<RatVector> {
    let mut out: Vec<RatVector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for u in &out {
            let c = dot(&w, u) / dot(u, u);
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &c * ui;
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            out.push(w);
        }
    }
    out
}

/// Scale a rational vector to a primitive integer vector with the same
/// direction.
pub fn primitive(v: &[Rational]) -> RatVector {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Whether `u` and `v` span the same line (both non-zero).
pub fn collinear(u: &[Rational], v: &[Rational]) -> bool {
    let m = RatMatrix::from_rows(vec![u.to_vec(), v.to_vec()]).expect("equal lengths");
    m.rank() <= 1
}

/// Basis of the intersection of two subspaces given by spanning vectors.
pub fn intersect_spans(a: &[RatVector], b: &[RatVector]) -> Vec<RatVector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let dim = a[0].len();
    let m = RatMatrix::from_fn(dim, a.len() + b.len(), |i, j| {
        if j < a.len() {
            a[j][i].clone()
        } else {
            -b[j - a.len()][i].clone()
        }
    });
    let combos: Vec<RatVector> = m
        .kernel()
        .iter()
        .map(|c| {
            (0..dim)
                .map(|i| (0..a.len()).fold(Rational::zero(), |acc, j| acc + &c[j] * &a[j][i]))
                .collect()
        })
        .collect();
    independent_subset(&combos)
}

/// Dimension of the span of the given vectors.
pub fn span_rank(vs: &[RatVector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vs.to_vec()).expect("equal lengths").rank()
}

/// Greedy maximal independent subset, in input order.
pub fn independent_subset(vs: &[RatVector]) -> Vec<RatVector> {
    let mut out: Vec<RatVector> = Vec::new();
    for v in vs {
        let mut trial = out.clone();
        trial.push(v.clone());
        if span_rank(&trial) == trial.len() {
            out = trial;
        }
    }
    out
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn sign_of_det(m: &RatMatrix) -> i32 {
    let d = m.determinant();
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}
