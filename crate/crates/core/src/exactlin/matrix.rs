use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Rational, Vector};
use crate::error::{Error, Result};

/// Mersenne prime 2^31 - 1, the default modulus for rank screening.
pub const SCREEN_PRIME: u64 = 2_147_483_647;

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n_rows = rows.len();
        Ok(Matrix {
            rows: n_rows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| super::rat(x)).collect())
            .collect();
        Self::from_rows(v).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| super::dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn scale_row(&mut self, i: usize, factor: &Rational) {
        for j in 0..self.cols {
            let v = self.get(i, j) * factor;
            self.set(i, j, v);
        }
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Clears denominators row by row. Returns the integer rows and, for
    /// each row, the positive factor it was multiplied by.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut rows = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect(),
            );
            scales.push(lcm);
        }
        (rows, scales)
    }
}

struct Echelon {
    rank: usize,
    /// Parity of the row swaps performed.
    negated: bool,
    /// Last pivot; for a nonsingular square matrix this is its determinant.
    last_pivot: BigInt,
}

/// Fraction-free Bareiss elimination to row echelon form, in place.
/// Every intermediate entry is a minor of the input, so the divisions by the
/// previous pivot are exact.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> Echelon {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut negated = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            negated = !negated;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    Echelon {
        rank,
        negated,
        last_pivot: prev,
    }
}

/// Rank over the rationals, computed fraction-free.
pub fn rank_exact(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let (mut rows, _) = m.integer_rows();
    bareiss(&mut rows, m.cols).rank
}

fn mod_p(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p; Fermat.
    pow_mod(a, p - 2, p)
}

fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % p as u128;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Rank of the reduction of `m` modulo the prime `p`. Never exceeds the
/// rational rank.
pub fn rank_modular(m: &Matrix, p: u64) -> Result<usize> {
    if p < 2 || p > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!(
            "modulus {p} must be a prime below 2^32"
        )));
    }
    let mut a = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut row = Vec::with_capacity(m.cols);
        for x in m.row(i) {
            let d = mod_p(x.denom(), p);
            if d == 0 {
                return Err(Error::BadPrime { prime: p });
            }
            row.push(mod_p(x.numer(), p) * inv_mod(d, p) % p);
        }
        a.push(row);
    }
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(piv) = (rank..m.rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(piv, rank);
        let inv = inv_mod(a[rank][c], p);
        for i in rank + 1..m.rows {
            let f = a[i][c] * inv % p;
            if f == 0 {
                continue;
            }
            for j in c..m.cols {
                let sub = f * a[rank][j] % p;
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    Ok(rank)
}

/// Rank with a modular pre-screen: when the reduction mod [`SCREEN_PRIME`]
/// already attains `min(rows, cols)` the exact rank must equal it; otherwise
/// the exact computation decides.
pub fn rank_screened(m: &Matrix) -> usize {
    let full = m.rows.min(m.cols);
    if let Ok(r) = rank_modular(m, SCREEN_PRIME) {
        if r == full {
            return r;
        }
    }
    rank_exact(m)
}

/// Exact determinant via Bareiss elimination.
pub fn determinant(m: &Matrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows == 0 {
        return Ok(Rational::one());
    }
    let (mut rows, scales) = m.integer_rows();
    let ech = bareiss(&mut rows, m.cols);
    if ech.rank < m.rows {
        return Ok(Rational::zero());
    }
    let mut det = ech.last_pivot;
    if ech.negated {
        det = -det;
    }
    let denom = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(Rational::new(det, denom))
}

/// Reduced row echelon form over the rationals; returns pivot columns.
fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = a.get(row, c).recip();
        a.scale_row(row, &inv);
        for i in 0..a.rows {
            if i == row {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let v = a.get(i, j) - &f * a.get(row, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        row += 1;
    }
    (a, pivots)
}

/// Basis of the right kernel `{v : m v = 0}`; its size is `cols - rank`.
/// Basis vectors are returned as primitive integer vectors.
pub fn nullspace(m: &Matrix) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f).clone();
            }
            super::primitive(&v)
        })
        .collect()
}

/// Basis of the left kernel `{a : a m = 0}`, i.e. the covectors annihilating
/// every column of `m`; its size is `rows - rank`.
pub fn left_nullspace(m: &Matrix) -> Vec<Vector> {
    nullspace(&m.transpose())
}

/// Exact inverse, or `None` when `m` is singular.
pub fn inverse(m: &Matrix) -> Result<Option<Matrix>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, Rational::one());
    }
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Ok(None);
    }
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    Ok(Some(inv))
}
