//! Dense exact linear algebra over the prime field `F_p`.
//!
//! The modulus is a runtime value carried by every vector and matrix; mixing
//! moduli is a hard error. Pivot choices and greedy scans are deterministic
//! so downstream reports are byte-reproducible.

use crate::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// A vector of residues mod a prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    pub p: u64,
    pub entries: Vec<u64>,
}

impl FpVector {
    pub fn zero(p: u64, dim: usize) -> Self {
        FpVector { p, entries: vec![0; dim] }
    }

    pub fn from_entries(p: u64, entries: Vec<u64>) -> Self {
        FpVector { p, entries: entries.into_iter().map(|e| e % p).collect() }
    }

    pub fn unit(p: u64, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(p, dim);
        v.entries[i] = 1 % p;
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        debug_assert_eq!(self.p, other.p);
        FpVector {
            p: self.p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| (a + b) % self.p)
                .collect(),
        }
    }

    pub fn sub(&self, other: &FpVector) -> FpVector {
        debug_assert_eq!(self.p, other.p);
        FpVector {
            p: self.p,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| (a + self.p - b) % self.p)
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> FpVector {
        let c = c % self.p;
        FpVector { p: self.p, entries: self.entries.iter().map(|&a| a * c % self.p).collect() }
    }

    pub fn neg(&self) -> FpVector {
        self.scale(self.p - 1)
    }
}

/// A row-major matrix of residues mod a prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row.iter().map(|&v| v % self.p));
        self.rows += 1;
    }

    pub fn mul_vec(&self, v: &FpVector) -> FpVector {
        debug_assert_eq!(self.cols, v.dim());
        let mut out = FpVector::zero(self.p, self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for c in 0..self.cols {
                acc = (acc + self.get(r, c) * v.entries[c]) % self.p;
            }
            out.entries[r] = acc;
        }
        out
    }

    /// In-place row echelon form; returns the pivot columns in order.
    /// Pivot choice: leftmost column, lowest-index row.
    fn echelonize(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pivot_row != row {
                for c in 0..self.cols {
                    let a = self.get(row, c);
                    let b = self.get(pivot_row, c);
                    self.set(row, c, b);
                    self.set(pivot_row, c, a);
                }
            }
            let inv = inv_mod(self.get(row, col), p);
            for c in 0..self.cols {
                let v = self.get(row, c) * inv % p;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && self.get(r, col) != 0 {
                    let factor = self.get(r, col);
                    for c in 0..self.cols {
                        let v = (self.get(r, c) + (p - factor) * self.get(row, c)) % p;
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.echelonize().len()
    }
}

/// Solution of a consistent affine system `M x = b`.
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: FpVector,
    pub nullspace_basis: Vec<FpVector>,
}

/// Solves `M x = b` by Gaussian elimination over `F_p`.
///
/// Returns `Ok(None)` when the system is inconsistent.
pub fn solve(m: &FpMatrix, b: &FpVector) -> Result<Option<AffineSolution>> {
    if !is_prime(m.p) {
        return Err(Error::NotPrime(m.p));
    }
    if m.p != b.p || m.rows != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{} mod {}, rhs has dim {} mod {}",
            m.rows, m.cols, m.p, b.dim(), b.p
        )));
    }
    // Augmented elimination.
    let mut aug = FpMatrix::zero(m.p, m.rows, m.cols + 1);
    for r in 0..m.rows {
        for c in 0..m.cols {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, m.cols, b.entries[r]);
    }
    let pivots = aug.echelonize();
    if pivots.last() == Some(&m.cols) {
        return Ok(None); // a row reduced to 0 = 1
    }
    let mut particular = FpVector::zero(m.p, m.cols);
    for (row, &col) in pivots.iter().enumerate() {
        particular.entries[col] = aug.get(row, m.cols);
    }
    // One nullspace basis vector per free column.
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; m.cols];
        for &c in &pivots {
            s[c] = true;
        }
        s
    };
    let mut nullspace_basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = FpVector::zero(m.p, m.cols);
        v.entries[free] = 1;
        for (row, &col) in pivots.iter().enumerate() {
            let coeff = aug.get(row, free);
            v.entries[col] = (m.p - coeff) % m.p;
        }
        nullspace_basis.push(v);
    }
    Ok(Some(AffineSolution { particular, nullspace_basis }))
}

/// Greedy left-to-right scan returning the indices of a maximal linearly
/// independent subset of `vectors`.
pub fn max_independent_subset(vectors: &[FpVector]) -> Vec<usize> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let p = first.p;
    let dim = first.dim();
    let mut basis = FpMatrix::zero(p, 0, dim);
    let mut chosen = Vec::new();
    let mut rank = 0;
    for (i, v) in vectors.iter().enumerate() {
        assert_eq!(v.dim(), dim, "common dimension required");
        basis.push_row(&v.entries);
        let new_rank = basis.rank();
        if new_rank > rank {
            rank = new_rank;
            chosen.push(i);
        } else {
            // Drop the dependent row again.
            basis.data.truncate(basis.data.len() - dim);
            basis.rows -= 1;
        }
    }
    chosen
}

/// Completes a linearly independent family to an ordered basis of `F_p^dim`:
/// the input vectors come first, then standard unit vectors in index order.
pub fn complete_to_basis(independent: &[FpVector], p: u64, dim: usize) -> Result<Vec<FpVector>> {
    let mut m = FpMatrix::zero(p, 0, dim);
    for v in independent {
        if v.dim() != dim || v.p != p {
            return Err(Error::DimensionMismatch(format!(
                "vector of dim {} mod {} in basis completion to F_{}^{}",
                v.dim(), v.p, p, dim
            )));
        }
        m.push_row(&v.entries);
    }
    if m.rank() != independent.len() {
        return Err(Error::DependentInput);
    }
    let mut basis: Vec<FpVector> = independent.to_vec();
    let mut rank = independent.len();
    for i in 0..dim {
        if rank == dim {
            break;
        }
        let unit = FpVector::unit(p, dim, i);
        m.push_row(&unit.entries);
        if m.rank() > rank {
            rank += 1;
            basis.push(unit);
        } else {
            m.data.truncate(m.data.len() - dim);
            m.rows -= 1;
        }
    }
    Ok(basis)
}

/// Expresses `target` in terms of `basis` (columns), if possible.
pub fn coordinates_in_basis(basis: &[FpVector], target: &FpVector) -> Option<FpVector> {
    let p = target.p;
    let dim = target.dim();
    let mut m = FpMatrix::zero(p, dim, basis.len());
    for (j, b) in basis.iter().enumerate() {
        for i in 0..dim {
            m.set(i, j, b.entries[i]);
        }
    }
    solve(&m, target).ok().flatten().map(|s| s.particular)
}
