//! Dense matrices over a [`Field`] with deterministic Gauss-Jordan elimination.
//!
//! Vectors are columns. Every basis returned here is canonical: pivots are
//! chosen in the leftmost nonzero column, smallest row first, and output bases
//! are brought to reduced echelon form, so downstream results do not depend on
//! the order in which intermediate vectors were produced.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Solutions of `m x = rhs`: `particular` plus any combination of `nullspace` columns.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Matrix,
    pub nullspace: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Matrix { field, rows, cols, data }
    }

    /// Integer entries, reduced into the field. Handy for tests and fixtures.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c);
                row.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row.iter().cloned());
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_data(field, v.len(), 1, v.to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        if let Field::Prime(p) = self.field {
            let a = to_u64(&self.data);
            let b = to_u64(&other.data);
            let (n, k, m) = (self.rows, self.cols, other.cols);
            let pm = p as u64;
            let mut out = vec![0u64; n * m];
            for i in 0..n {
                for l in 0..k {
                    let x = a[i * k + l];
                    if x == 0 {
                        continue;
                    }
                    let brow = &b[l * m..(l + 1) * m];
                    let orow = &mut out[i * m..(i + 1) * m];
                    for (o, &y) in orow.iter_mut().zip(brow) {
                        *o = (*o + x * y) % pm;
                    }
                }
            }
            return Matrix { field: self.field, rows: n, cols: m, data: from_u64(&out, p) };
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let x = &self.data[i * self.cols + l];
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = &other.data[l * other.cols + j];
                    if !y.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(x * y);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self.data[r * self.cols + c];
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| -a).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.rows == 0 || self.pow(self.rows as u32).is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let s = self.solve(&Matrix::identity(self.field, self.rows)).ok()?;
        (s.nullspace.cols() == 0).then_some(s.particular)
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        let field = parts[0].field;
        let rows = parts[0].rows;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let field = parts[0].field;
        let cols = parts[0].cols;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.data[r * block.cols + c].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.data[(r0 + r) * self.cols + c0 + c].clone();
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.data[r * self.cols + c].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Reduced row echelon form with deterministic pivoting.
    pub fn rref(&self) -> Rref {
        match self.field {
            Field::Prime(p) => self.rref_prime(p),
            Field::Rationals => self.rref_generic(),
        }
    }

    fn rref_prime(&self, p: u32) -> Rref {
        let pm = p as u64;
        let (rows, cols) = (self.rows, self.cols);
        let mut a = to_u64(&self.data);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
            if pr != r {
                for k in 0..cols {
                    a.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(a[r * cols + c], pm);
            for k in c..cols {
                a[r * cols + k] = a[r * cols + k] * inv % pm;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = a[i * cols + c];
                if f == 0 {
                    continue;
                }
                let nf = pm - f;
                for k in c..cols {
                    let v = a[r * cols + k];
                    if v != 0 {
                        a[i * cols + k] = (a[i * cols + k] + nf * v) % pm;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: Matrix { field: self.field, rows, cols, data: from_u64(&a, p) }, rank: pivots.len(), pivots }
    }

    fn rref_generic(&self) -> Rref {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else { continue };
            if pr != r {
                for k in 0..cols {
                    a.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = a[r * cols + c].inv();
            for k in c..cols {
                a[r * cols + k] = &a[r * cols + k] * &inv;
            }
            for i in 0..rows {
                if i == r || a[i * cols + c].is_zero() {
                    continue;
                }
                let f = a[i * cols + c].clone();
                for k in c..cols {
                    if !a[r * cols + k].is_zero() {
                        let t = &f * &a[r * cols + k];
                        a[i * cols + k] = &a[i * cols + k] - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: Matrix { field: self.field, rows, cols, data: a }, rank: pivots.len(), pivots }
    }

    /// Solves `self * x = rhs` for every column of `rhs` simultaneously.
    pub fn solve(&self, rhs: &Matrix) -> Result<Solution> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, rhs.rows
            )));
        }
        let aug = Matrix::hstack(&[self, rhs]);
        let red = aug.rref();
        let n = self.cols;
        if red.pivots.iter().any(|&c| c >= n) {
            return Err(Error::Inconsistent);
        }
        let mut particular = Matrix::zeros(self.field, n, rhs.cols);
        for (i, &pc) in red.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                particular.set(pc, j, red.matrix.get(i, n + j).clone());
            }
        }
        let nullspace = nullspace_from_rref(&red.matrix, &red.pivots, n);
        Ok(Solution { particular, nullspace })
    }

    /// Coordinates of the columns of `rhs` in the column span of `self`, which must
    /// have full column rank.
    pub fn coordinates(&self, rhs: &Matrix) -> Result<Matrix> {
        let s = self.solve(rhs)?;
        if s.nullspace.cols() != 0 {
            return Err(Error::NotInjective);
        }
        Ok(s.particular)
    }

    /// Columns spanning the kernel, in canonical reduced form.
    pub fn kernel_basis(&self) -> Matrix {
        let red = self.rref();
        let raw = nullspace_from_rref(&red.matrix, &red.pivots, self.cols);
        canonical_columns(&raw)
    }

    /// Columns spanning the image, in canonical reduced form.
    pub fn image_basis(&self) -> Matrix {
        canonical_columns(self)
    }

    /// A full-row-rank matrix `c` (in reduced row echelon form) with `c * self = 0`,
    /// together with the cokernel dimension.
    pub fn cokernel_projection(&self) -> (Matrix, usize) {
        let left_null = self.transpose().kernel_basis().transpose();
        let d = left_null.rows;
        (left_null, d)
    }
}

fn nullspace_from_rref(red: &Matrix, pivots: &[usize], n: usize) -> Matrix {
    let field = red.field;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut ns = Matrix::zeros(field, n, free.len());
    for (k, &f) in free.iter().enumerate() {
        ns.set(f, k, field.one());
        for (i, &pc) in pivots.iter().enumerate() {
            let v = red.get(i, f);
            if !v.is_zero() {
                ns.set(pc, k, -v);
            }
        }
    }
    ns
}

/// Canonical basis of the column span of `m`: reduce the transposed columns to
/// reduced echelon form and return the nonzero rows as columns.
pub fn canonical_columns(m: &Matrix) -> Matrix {
    let red = m.transpose().rref();
    let rows: Vec<usize> = (0..red.rank).collect();
    red.matrix.select_rows(&rows).transpose().with_rows(m.rows)
}

impl Matrix {
    // Keeps the row count when there are no columns (a 0-column transpose loses it).
    fn with_rows(mut self, rows: usize) -> Matrix {
        if self.cols == 0 {
            self.rows = rows;
            self.data.clear();
        }
        self
    }
}

fn to_u64(d: &[Scalar]) -> Vec<u64> {
    d.iter()
        .map(|s| match s {
            Scalar::Mod { v, .. } => *v as u64,
            Scalar::Rat(_) => unreachable!("rational entry in prime-field matrix"),
        })
        .collect()
}

fn from_u64(d: &[u64], p: u32) -> Vec<Scalar> {
    d.iter().map(|&v| Scalar::Mod { v: v as u32, p }).collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::Prime(5)
    }

    #[test]
    fn rref_empty_and_identity() {
        let e = Matrix::zeros(f5(), 0, 0).rref();
        assert_eq!(e.rank, 0);
        let i = Matrix::identity(f5(), 3).rref();
        assert_eq!(i.rank, 3);
        assert_eq!(i.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one_over_q() {
        let m = Matrix::from_i64(Field::Rationals, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix, Matrix::from_i64(Field::Rationals, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn solve_examples() {
        let z = Matrix::zeros(f5(), 2, 2);
        let s = z.solve(&Matrix::zeros(f5(), 2, 1)).unwrap();
        assert_eq!(s.nullspace.cols(), 2);

        let i = Matrix::identity(f5(), 2);
        let s = i.solve(&Matrix::from_i64(f5(), &[&[1], &[2]])).unwrap();
        assert_eq!(s.particular, Matrix::from_i64(f5(), &[&[1], &[2]]));
        assert_eq!(s.nullspace.cols(), 0);

        let m = Matrix::from_i64(f5(), &[&[1, 1]]);
        let s = m.solve(&Matrix::from_i64(f5(), &[&[3]])).unwrap();
        assert_eq!(s.particular, Matrix::from_i64(f5(), &[&[3], &[0]]));
        assert_eq!(s.nullspace.cols(), 1);
    }

    // Enumerates all 25 vectors of F_5^2 to confirm the solution set of x + y = 3.
    #[test]
    fn solve_matches_enumeration() {
        let m = Matrix::from_i64(f5(), &[&[1, 1]]);
        let s = m.solve(&Matrix::from_i64(f5(), &[&[3]])).unwrap();
        let mut brute = Vec::new();
        for x in 0..5 {
            for y in 0..5 {
                if (x + y) % 5 == 3 {
                    brute.push((x, y));
                }
            }
        }
        let mut from_solution = Vec::new();
        for t in 0..5 {
            let tv = f5().from_i64(t);
            let x = s.particular.get(0, 0) + &(&tv * s.nullspace.get(0, 0));
            let y = s.particular.get(1, 0) + &(&tv * s.nullspace.get(1, 0));
            let (Scalar::Mod { v: a, .. }, Scalar::Mod { v: b, .. }) = (x, y) else { unreachable!() };
            from_solution.push((a as i64, b as i64));
        }
        from_solution.sort();
        assert_eq!(brute, from_solution);
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_i64(f5(), &[&[1, 1], &[1, 1]]);
        let r = Matrix::from_i64(f5(), &[&[1], &[2]]);
        assert_eq!(m.solve(&r).unwrap_err(), Error::Inconsistent);
    }

    #[test]
    fn kernel_image_cokernel() {
        let z = Matrix::zeros(f5(), 2, 2);
        assert_eq!(z.kernel_basis().cols(), 2);
        assert_eq!(z.cokernel_projection().1, 2);
        let i = Matrix::identity(f5(), 2);
        assert_eq!(i.kernel_basis().cols(), 0);
        assert_eq!(i.cokernel_projection().1, 0);
        let q = Field::Rationals;
        let m = Matrix::from_i64(q, &[&[1, 0], &[0, 0]]);
        assert_eq!(m.kernel_basis().cols(), 1);
        let (c, d) = m.cokernel_projection();
        assert_eq!(d, 1);
        assert!(c.mul(&m).is_zero());
        assert_eq!(m.image_basis().cols(), 1);
    }
}
