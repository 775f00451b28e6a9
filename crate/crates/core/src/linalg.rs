//! Exact linear algebra over a prime field.
//!
//! Residues are `u64` values in `[0, p)` with `p < 2^32`, so a product of two
//! residues always fits before reduction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::face::Face;

/// `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldConfig {
    p: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig { p: DEFAULT_PRIME }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldConfig {
    pub fn new(p: u64) -> Result<FieldConfig> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldConfig { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    /// Reduce a signed integer.
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGFp {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
    field: FieldConfig,
}

impl MatrixGFp {
    pub fn zeros(rows: usize, cols: usize, field: FieldConfig) -> MatrixGFp {
        MatrixGFp {
            rows,
            cols,
            entries: vec![0; rows * cols],
            field,
        }
    }

    pub fn identity(n: usize, field: FieldConfig) -> MatrixGFp {
        let mut m = MatrixGFp::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Rows of signed integers, reduced mod `p`.
    pub fn from_rows(rows: &[Vec<i64>], field: FieldConfig) -> Result<MatrixGFp> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = MatrixGFp::zeros(rows.len(), cols, field);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(x));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        debug_assert!(x < self.field.p());
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &MatrixGFp) -> Result<MatrixGFp> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = self.field;
        let mut out = MatrixGFp::zeros(self.rows, other.cols, f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = f.add(out.entries[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut oracle = RankOracle::new(self.cols, self.field);
        for i in 0..self.rows {
            oracle.insert_unchecked(self.row(i));
        }
        oracle.rank()
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<u64> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let mut a = self.entries.clone();
        Ok(det_in_place(&mut a, self.rows, &self.field))
    }

    /// Determinant of the submatrix with rows `row_set` and columns
    /// `col_set`, both taken in increasing index order.
    pub fn minor(&self, row_set: Face, col_set: Face) -> Result<u64> {
        let k = row_set.size();
        if col_set.size() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: col_set.size(),
            });
        }
        let limit = Face::prefix(self.rows.max(self.cols));
        if !row_set.is_subset_of(Face::prefix(self.rows))
            || !col_set.is_subset_of(Face::prefix(self.cols))
            || !row_set.union(col_set).is_subset_of(limit)
        {
            return Err(Error::InvalidParameter("minor index out of range".into()));
        }
        let mut buf = Vec::with_capacity(k * k);
        for r in row_set.indices() {
            for c in col_set.indices() {
                buf.push(self.get(r, c));
            }
        }
        Ok(det_in_place(&mut buf, k, &self.field))
    }
}

/// Determinant by elimination; destroys `a`.
pub(crate) fn det_in_place(a: &mut [u64], k: usize, f: &FieldConfig) -> u64 {
    let mut det = 1u64;
    for col in 0..k {
        let Some(piv) = (col..k).find(|&r| a[r * k + col] != 0) else {
            return 0;
        };
        if piv != col {
            for j in 0..k {
                a.swap(piv * k + j, col * k + j);
            }
            det = f.neg(det);
        }
        let pv = a[col * k + col];
        det = f.mul(det, pv);
        let inv = f.inv(pv);
        for r in col + 1..k {
            let factor = a[r * k + col];
            if factor == 0 {
                continue;
            }
            let factor = f.mul(factor, inv);
            for j in col..k {
                let sub = f.mul(factor, a[col * k + j]);
                a[r * k + j] = f.sub(a[r * k + j], sub);
            }
        }
    }
    det
}

/// Seeded uniformly random matrix, resampled until invertible.
pub fn random_invertible(n: usize, field: FieldConfig, seed: u64) -> Result<MatrixGFp> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut m = MatrixGFp::zeros(n, n, field);
        for e in m.entries.iter_mut() {
            *e = rng.gen_range(0..field.p());
        }
        if m.det()? != 0 {
            return Ok(m);
        }
    }
}

/// Coordinate of `g e_{s_1} ∧ … ∧ g e_{s_k}` on `e_T`: the determinant of
/// `g` restricted to rows `T` and columns `S`.
pub fn compound_minor(g: &MatrixGFp, s: Face, t: Face) -> Result<u64> {
    if g.rows() != g.cols() {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            got: g.cols(),
        });
    }
    if s.size() > g.rows() {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            got: s.size(),
        });
    }
    g.minor(t, s)
}

/// Incremental row space with membership tests.
///
/// The basis is kept in reduced echelon form: every stored row has a 1 in its
/// pivot column and zeros in all other rows' pivot columns.
#[derive(Clone, Debug)]
pub struct RankOracle {
    dim: usize,
    field: FieldConfig,
    basis: Vec<Vec<u64>>,
    /// `pivots[i]` is the pivot column of `basis[i]`.
    pivots: Vec<usize>,
    /// `pivot_row[c]` is the basis row pivoting at column `c`.
    pivot_row: Vec<Option<usize>>,
}

impl RankOracle {
    pub fn new(dim: usize, field: FieldConfig) -> RankOracle {
        RankOracle {
            dim,
            field,
            basis: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Absorb `row` if it is independent of the current basis.
    pub fn insert(&mut self, row: &[u64]) -> Result<bool> {
        if row.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: row.len(),
            });
        }
        Ok(self.insert_unchecked(row))
    }

    /// Reduce `row` against the basis; `None` when it lies in the span.
    fn reduce(&self, row: &[u64]) -> Option<Vec<u64>> {
        let f = &self.field;
        let mut r: Vec<u64> = row.iter().map(|&x| x % f.p()).collect();
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(b) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        if r.iter().all(|&x| x == 0) {
            None
        } else {
            Some(r)
        }
    }

    pub fn contains(&self, row: &[u64]) -> bool {
        row.len() == self.dim && self.reduce(row).is_none()
    }

    pub(crate) fn insert_unchecked(&mut self, row: &[u64]) -> bool {
        let Some(mut r) = self.reduce(row) else {
            return false;
        };
        let f = self.field;
        let pc = r.iter().position(|&x| x != 0).expect("nonzero row");
        let inv = f.inv(r[pc]);
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // clear the new pivot column from the older rows
        for b in self.basis.iter_mut() {
            let c = b[pc];
            if c == 0 {
                continue;
            }
            for (x, &y) in b.iter_mut().zip(&r) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.pivot_row[pc] = Some(self.basis.len());
        self.pivots.push(pc);
        self.basis.push(r);
        true
    }
}

/// Free-standing form of [`RankOracle::insert`].
pub fn oracle_insert(oracle: &mut RankOracle, row: &[u64]) -> Result<bool> {
    oracle.insert(row)
}
