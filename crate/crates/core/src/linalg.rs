//! Exact arithmetic over a prime field F_p and the dense linear algebra used
//! throughout the crate.
//!
//! Entries are stored as `u32` residues in `0..p`; products are formed in
//! `u64`. All echelon computations scan columns left to right and take the
//! first nonzero entry as pivot, so every basis produced here is
//! deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// The characteristic of the ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

impl Prime {
    pub const DEFAULT: Prime = Prime(101);

    pub fn new(p: u64) -> Result<Self, LinAlgError> {
        if p >= 1 << 31 {
            return Err(LinAlgError::PrimeTooLarge(p));
        }
        if p < 2 {
            return Err(LinAlgError::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(LinAlgError::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.0);
        self.pow(a, self.0 as u64 - 2)
    }
}

impl Default for Prime {
    fn default() -> Self {
        Prime::DEFAULT
    }
}

impl TryFrom<u64> for Prime {
    type Error = LinAlgError;
    fn try_from(p: u64) -> Result<Self, Self::Error> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0 as u64
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    p: Prime,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{} [", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols], p }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing entries mod p.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&x| p.reduce(x)));
        }
        Ok(Matrix { rows: rows.len(), cols, data, p })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(p: Prime, rows: usize, columns: &[Vec<u32>]) -> Self {
        let cols = columns.len();
        let mut m = Matrix::zeros(p, rows, cols);
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, &x) in col.iter().enumerate() {
                m.data[r * cols + c] = x;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.p;
        let pm = p.get() as u64;
        let mut out = Matrix::zeros(p, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u64) % pm;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let pm = self.p.get() as u64;
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut s = 0u64;
                for (&a, &b) in row.iter().zip(v) {
                    s = (s + a as u64 * b as u64) % pm;
                }
                s as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| p.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, p }
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let p = self.p;
        let data = self.data.iter().map(|&a| p.mul(a, s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, p }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, other: &Matrix, s: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s == 0 {
            return;
        }
        let p = self.p;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = p.add(*a, p.mul(b, s));
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut m = Matrix::zeros(self.p, self.rows, cols);
        for r in 0..self.rows {
            m.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data, p: self.p }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m.data, m.rows, m.cols, m.p, true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut data = self.data.clone();
        rref_in_place(&mut data, self.rows, self.cols, self.p, false).len()
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per free
    /// column, each with a 1 in its free column and zeros in the other free
    /// columns.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = b` with all free variables zero, or `None`
    /// if the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let aug = self.hstack(&Matrix::from_columns(self.p, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.p, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.select_columns(&cols))
    }
}

/// Gauss-Jordan elimination on a row-major buffer. With `reduce == false`
/// only rows below the pivot are cleared (enough for the rank).
fn rref_in_place(data: &mut [u32], rows: usize, cols: usize, p: Prime, reduce: bool) -> Vec<usize> {
    let pm = p.get() as u64;
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr == rows {
            break;
        }
        let Some(found) = (pr..rows).find(|&r| data[r * cols + c] != 0) else {
            continue;
        };
        if found != pr {
            for k in 0..cols {
                data.swap(found * cols + k, pr * cols + k);
            }
        }
        let inv = p.inv(data[pr * cols + c]) as u64;
        for k in c..cols {
            let v = data[pr * cols + k] as u64;
            data[pr * cols + k] = (v * inv % pm) as u32;
        }
        let start = if reduce { 0 } else { pr + 1 };
        for r in start..rows {
            if r == pr {
                continue;
            }
            let f = data[r * cols + c] as u64;
            if f == 0 {
                continue;
            }
            let neg = pm - f;
            for k in c..cols {
                let a = data[r * cols + k] as u64;
                let b = data[pr * cols + k] as u64;
                data[r * cols + k] = ((a + neg * b) % pm) as u32;
            }
        }
        pivots.push(c);
        pr += 1;
    }
    pivots
}

/// Incrementally maintained subspace of F_p^n.
///
/// Rows are kept fully reduced (each pivot column is zero in every other
/// row), and each row remembers its expression in terms of the vectors that
/// were inserted, so coordinates with respect to an independent generating
/// set are available.
#[derive(Clone, Debug)]
pub struct Span {
    p: Prime,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<u32>>,
    inserted: usize,
}

impl Span {
    pub fn new(p: Prime, ambient: usize) -> Self {
        Span { p, ambient, rows: Vec::new(), pivots: Vec::new(), transform: Vec::new(), inserted: 0 }
    }

    pub fn from_vectors(p: Prime, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let mut s = Span::new(p, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` against the span, returning the remainder and the
    /// coefficients (w.r.t. the echelon rows) that were subtracted.
    fn reduce_tracked(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let p = self.p;
        let mut r = v.to_vec();
        let mut coeffs = vec![0u32; self.rows.len()];
        for (i, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = r[pc];
            if c == 0 {
                continue;
            }
            coeffs[i] = c;
            for (x, &y) in r.iter_mut().zip(row) {
                if y != 0 {
                    *x = p.sub(*x, p.mul(c, y));
                }
            }
        }
        (r, coeffs)
    }

    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient, "span ambient dimension mismatch");
        let p = self.p;
        let idx = self.inserted;
        self.inserted += 1;
        for t in &mut self.transform {
            t.push(0);
        }
        let (mut r, coeffs) = self.reduce_tracked(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        // new row = v - sum coeffs_i * row_i, expressed in inserted vectors
        let mut t = vec![0u32; self.inserted];
        t[idx] = 1;
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for (a, &b) in t.iter_mut().zip(&self.transform[i]) {
                    *a = p.sub(*a, p.mul(c, b));
                }
            }
        }
        let inv = p.inv(r[pc]);
        r.iter_mut().for_each(|x| *x = p.mul(*x, inv));
        t.iter_mut().for_each(|x| *x = p.mul(*x, inv));
        for (row, tr) in self.rows.iter_mut().zip(self.transform.iter_mut()) {
            let f = row[pc];
            if f == 0 {
                continue;
            }
            for (a, &b) in row.iter_mut().zip(&r) {
                *a = p.sub(*a, p.mul(f, b));
            }
            for (a, &b) in tr.iter_mut().zip(&t) {
                *a = p.sub(*a, p.mul(f, b));
            }
        }
        self.rows.push(r);
        self.pivots.push(pc);
        self.transform.push(t);
        true
    }

    /// Coordinates of `v` with respect to the inserted vectors, if `v` lies in
    /// the span. Unique when the inserted vectors were independent.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let p = self.p;
        let (r, coeffs) = self.reduce_tracked(v);
        if r.iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = vec![0u32; self.inserted];
        for (c, t) in coeffs.iter().zip(&self.transform) {
            if *c == 0 {
                continue;
            }
            for (a, &b) in out.iter_mut().zip(t) {
                *a = p.add(*a, p.mul(*c, b));
            }
        }
        Some(out)
    }

    /// Echelon basis of the span.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Standard basis vectors completing the span to the whole space, in
    /// increasing index order. These are the non-pivot columns, so they are
    /// exactly the coordinates that survive `reduce`.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f101() -> Prime {
        Prime::new(101).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(101).is_ok());
        assert!(Prime::new(2).is_ok());
        assert_eq!(Prime::new(100), Err(LinAlgError::NotPrime(100)));
        assert_eq!(Prime::new(1), Err(LinAlgError::NotPrime(1)));
        assert_eq!(Prime::default().get(), 101);
    }

    #[test]
    fn rank_examples() {
        let p = f101();
        assert_eq!(Matrix::identity(p, 3).rank(), 3);
        assert_eq!(Matrix::zeros(p, 2, 5).rank(), 0);
        let m = Matrix::from_rows(p, &[vec![1, 2], vec![2, 4]]).unwrap();
        // oracle: the only 2x2 minor is 1*4 - 2*2 = 0 and some entry is nonzero
        let minor = p.sub(p.mul(m.get(0, 0), m.get(1, 1)), p.mul(m.get(0, 1), m.get(1, 0)));
        assert_eq!(minor, 0);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let p = f101();
        assert!(Matrix::identity(p, 4).kernel_basis().is_empty());
        let m = Matrix::from_rows(p, &[vec![1, 100]]).unwrap();
        // brute force over F_101^2: the solutions form the line through (1,1)
        let sols: Vec<(u32, u32)> = (0..101)
            .flat_map(|x| (0..101).map(move |y| (x, y)))
            .filter(|&(x, y)| p.add(x, p.mul(100, y)) == 0)
            .collect();
        assert_eq!(sols.len(), 101);
        assert!(sols.contains(&(1, 1)));
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
        let z = Matrix::zeros(p, 2, 3);
        assert_eq!(z.kernel_basis(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn solve_examples() {
        let p = f101();
        let b = vec![3, 7, 9];
        assert_eq!(Matrix::identity(p, 3).solve(&b).unwrap(), Some(b.clone()));
        let m = Matrix::from_rows(p, &[vec![1, 1]]).unwrap();
        assert_eq!(m.solve(&[0]).unwrap(), Some(vec![0, 0]));
        let two = Matrix::from_rows(p, &[vec![2]]).unwrap();
        let brute = (0..101u32).find(|&x| p.mul(2, x) == 1).unwrap();
        assert_eq!(brute, 51);
        assert_eq!(two.solve(&[1]).unwrap(), Some(vec![51]));
        assert!(matches!(two.solve(&[1, 2]), Err(LinAlgError::DimensionMismatch { .. })));
        let sing = Matrix::from_rows(p, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(sing.solve(&[1, 0]).unwrap(), None);
    }

    #[test]
    fn invertibility() {
        let p = f101();
        assert!(Matrix::identity(p, 2).is_invertible());
        assert!(!Matrix::zeros(p, 2, 3).is_invertible());
        assert!(!Matrix::from_rows(p, &[vec![1, 2], vec![2, 4]]).unwrap().is_invertible());
        let m = Matrix::from_rows(p, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(p, 2));
    }

    #[test]
    fn span_coordinates_and_complement() {
        let p = f101();
        let vs = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let s = Span::from_vectors(p, 3, &vs);
        assert_eq!(s.dim(), 2);
        let v = vec![2, 5, 3]; // 2*(1,1,0) + 3*(0,1,1)
        assert_eq!(s.coords(&v), Some(vec![2, 3]));
        assert_eq!(s.coords(&[1, 0, 0]), None);
        assert_eq!(s.complement_indices(), vec![2]);
    }

    #[test]
    fn reduced_vectors_live_on_the_complement() {
        let p = f101();
        let s = Span::from_vectors(p, 4, &[vec![0, 1, 0, 3]]);
        let comp = s.complement_indices();
        assert_eq!(comp, vec![0, 2, 3]);
        for v in [vec![0, 1, 0, 0], vec![5, 7, 1, 2], vec![0, 0, 0, 1]] {
            let r = s.reduce(&v);
            assert!(r.iter().enumerate().all(|(i, &x)| x == 0 || comp.contains(&i)));
        }
    }
}
