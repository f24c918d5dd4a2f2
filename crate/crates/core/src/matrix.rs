//! Dense exact matrices and rank computations.
//!
//! [`rank_exact`] clears denominators row by row and runs fraction-free
//! (Bareiss) elimination on big integers. [`rank_modp`] reduces the matrix
//! modulo a word-size prime and eliminates in `Z/p`; its result never
//! exceeds the exact rank and agrees with it with probability at least
//! `1 - size/p`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    // row-major, entries[r * cols + c]
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. `cols` is needed to describe
    /// the shape of a matrix with no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { rows: n, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, scalar::ints(entries))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &DenseMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        rank_exact(self)
    }

    /// Determinant of a square matrix (Bareiss on the cleared matrix).
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let row = self.row(r);
            let den = scalar::common_denominator(row);
            a.push(row.iter().map(|x| x.numer() * (&den / x.denom())).collect());
            scale *= den;
        }
        let (rank, det, swaps) = bareiss(&mut a);
        if rank < self.rows {
            return Ok(Scalar::zero());
        }
        let det = if swaps % 2 == 1 { -det } else { det };
        Ok(Scalar::new(det, scale))
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for (i, x) in self.row(r).iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Fraction-free elimination in place. Returns (rank, last pivot, row swaps);
/// for a square full-rank input the last pivot is the determinant up to the
/// sign of the permutation.
fn bareiss(a: &mut [Vec<BigInt>]) -> (usize, BigInt, usize) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = core::mem::take(&mut row[c]);
            if lead.is_zero() {
                for x in &mut row[c + 1..cols] {
                    if !x.is_zero() {
                        *x = &*x * pivot / &prev;
                    }
                }
            } else {
                for j in c + 1..cols {
                    let v = &row[j] * pivot - &lead * &pivot_row[j];
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    (rank, prev, swaps)
}

/// Rank over the rationals.
pub fn rank_exact(m: &DenseMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    // eliminate along the short side
    let work = if m.rows > m.cols { m.transpose() } else { m.clone() };
    let mut a: Vec<Vec<BigInt>> = (0..work.rows)
        .map(|r| {
            let row = work.row(r);
            let den = scalar::common_denominator(row);
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|x| !x.is_zero()))
        .collect();
    bareiss(&mut a).0
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Uniformly sampled prime in `[2^61, 2^62)`.
pub fn random_prime_62<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

/// Reduces an exact rational modulo `p`.
pub fn reduce_mod(x: &Scalar, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let to_u64 = |v: &BigInt| -> u64 {
        let r = v.mod_floor(&pb);
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    };
    let den = to_u64(x.denom());
    if den == 0 {
        return Err(Error::NonInvertibleDenominator { prime: p });
    }
    let num = to_u64(x.numer());
    Ok(mul_mod(num, inv_mod(den, p), p))
}

/// Incremental row echelon basis over `Z/p`: rows are inserted one at a
/// time and only independent ones are kept, so a rank can be accumulated
/// without materializing the whole matrix.
#[derive(Debug, Clone)]
pub struct ModpEchelon {
    p: u64,
    cols: usize,
    // (pivot column, row normalized so that row[pivot] == 1)
    basis: Vec<(usize, Vec<u64>)>,
}

impl ModpEchelon {
    pub fn new(p: u64, cols: usize) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            p,
            cols,
            basis: Vec::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Inserts a row already reduced mod p; returns true if it was independent.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        let p = self.p;
        for (pc, b) in &self.basis {
            let f = row[*pc];
            if f != 0 {
                let f = p - f;
                for (x, y) in row.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = ((*x as u128 + f as u128 * *y as u128) % p as u128) as u64;
                    }
                }
            }
        }
        let Some(pc) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(row[pc], p);
        for x in row.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        self.basis.push((pc, row));
        true
    }

    pub fn insert_scalars(&mut self, row: &[Scalar]) -> Result<bool> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        let reduced = row.iter().map(|x| reduce_mod(x, self.p)).collect::<Result<Vec<_>>>()?;
        Ok(self.insert(reduced))
    }
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_modp(m: &DenseMatrix, p: u64) -> Result<usize> {
    let mut ech = ModpEchelon::new(p, m.cols)?;
    for r in 0..m.rows {
        ech.insert_scalars(m.row(r))?;
        if ech.rank() == m.cols {
            break;
        }
    }
    Ok(ech.rank())
}
