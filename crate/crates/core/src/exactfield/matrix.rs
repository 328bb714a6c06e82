use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use crate::error::{Error, Result};

use super::field::{Field, Scalar};
use super::poly::Poly;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.code().to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`Matrix::linsolve`].
#[derive(Clone, Debug)]
pub struct Solution {
    pub rank: usize,
    /// Some X with A*X = B, when the system is consistent.
    pub particular: Option<Matrix>,
    /// Columns spanning ker(A); `cols(A)` rows.
    pub nullspace: Matrix,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Scalar::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::ONE;
        }
        m
    }

    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix::from_data(field, rows.len(), cols, rows.concat()))
    }

    /// Convenience constructor from prime-field integers.
    pub fn from_ints(field: Field, rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Matrix::from_data(field, rows, cols, vals.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Scalar] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self[(i, j)] == if i == j { Scalar::ONE } else { Scalar::ZERO })
            })
    }

    fn check_field(&self, other: &Matrix) {
        assert!(self.field == other.field, "matrices over different fields");
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * oc..(i + 1) * oc];
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if !a.is_zero() {
                    f.axpy(dst, a, &other.data[l * oc..(l + 1) * oc]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix::from_data(f, self.rows, self.cols, data)
    }

    pub fn scaled(&self, s: Scalar) -> Matrix {
        let f = self.field;
        Matrix::from_data(f, self.rows, self.cols, self.data.iter().map(|&a| f.mul(a, s)).collect())
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: Scalar, other: &Matrix) {
        self.check_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, s, &other.data);
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::ZERO, |acc, i| self.field.add(acc, self[(i, i)]))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (oi, i) in rows.enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out[(oi, oj)] = self[(i, j)];
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, idx.len());
        for i in 0..self.rows {
            for (oj, &j) in idx.iter().enumerate() {
                out[(i, oj)] = self[(i, j)];
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix::from_data(self.field, idx.len(), self.cols, data)
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for i in 0..rows {
                out.row_mut(i)[off..off + p.cols].copy_from_slice(p.row(i));
            }
            off += p.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for p in parts {
            assert_eq!(p.cols, cols);
            data.extend_from_slice(&p.data);
        }
        Matrix::from_data(field, rows, cols, data)
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, n, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                out.row_mut(r0 + i)[c0..c0 + b.cols].copy_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Vectorise column-major-free: the entries in row-major order as one column.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// In-place reduced row echelon form, pivoting only in the first
    /// `pivot_cols` columns.  Returns the pivot columns in row order.
    pub fn rref_limited(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("nonzero pivot");
            f.scale(&mut self.data[r * cols..(r + 1) * cols], inv);
            let pivot_row: Vec<Scalar> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..self.rows {
                if i != r {
                    let x = self.data[i * cols + c];
                    if !x.is_zero() {
                        f.axpy(&mut self.data[i * cols..(i + 1) * cols], f.neg(x), &pivot_row);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&mut self) -> Vec<usize> {
        let c = self.cols;
        self.rref_limited(c)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel as the columns of a `cols x nullity` matrix.
    pub fn nullspace(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref();
        kernel_from_rref(&m, &pivots, self.cols)
    }

    /// Basis of the column space (a subset of the columns, in order).
    pub fn column_space(&self) -> Matrix {
        let mut m = self.clone();
        let pivots = m.rref();
        self.select_columns(&pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(self.field, n)]);
        let piv = aug.rref_limited(n);
        if piv.len() < n {
            return None;
        }
        Some(aug.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solve A*X = B.  `B` may have zero columns, which makes this a pure
    /// rank/kernel computation.
    pub fn linsolve(&self, b: &Matrix) -> Result<Solution> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "A has {} rows, B has {}",
                self.rows, b.rows
            )));
        }
        let n = self.cols;
        let mut aug = Matrix::hstack(self.field, self.rows, &[self, b]);
        let pivots = aug.rref_limited(n);
        let rank = pivots.len();
        let consistent = (rank..aug.rows).all(|i| aug.row(i)[n..].iter().all(|x| x.is_zero()));
        let particular = consistent.then(|| {
            let mut x = Matrix::zeros(self.field, n, b.cols);
            for (i, &pc) in pivots.iter().enumerate() {
                x.row_mut(pc).copy_from_slice(&aug.row(i)[n..]);
            }
            x
        });
        let nullspace = kernel_from_rref(&aug, &pivots, n);
        Ok(Solution {
            rank,
            particular,
            nullspace,
        })
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// f(A) by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Matrix::zeros(self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                acc[(i, i)] = self.field.add(acc[(i, i)], c);
            }
        }
        acc
    }

    /// Monic minimal polynomial: lcm of the local minimal polynomials of a
    /// set of vectors generating the space as a k[A]-module.
    pub fn minpoly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field;
        let n = self.rows;
        let mut result = Poly::one(f);
        let mut covered = EchelonBasis::new(f, n, false);
        for j in 0..n {
            if covered.len() == n {
                break;
            }
            let mut e = vec![Scalar::ZERO; n];
            e[j] = Scalar::ONE;
            if covered.contains(&e) {
                continue;
            }
            let mut krylov = EchelonBasis::new(f, n, true);
            let mut v = e;
            let local = loop {
                match krylov.insert(&v) {
                    Insert::Independent => {
                        covered.insert(&v);
                        v = self.mul_vec(&v);
                    }
                    Insert::Dependent(coeffs) => {
                        // A^k v = sum c_i A^i v
                        let mut c: Vec<Scalar> = coeffs.iter().map(|&x| f.neg(x)).collect();
                        c.push(Scalar::ONE);
                        break Poly::new(f, c);
                    }
                }
            };
            result = result.lcm(&local);
        }
        Ok(result)
    }

    /// Characteristic polynomial det(xI - A) via reduction to upper
    /// Hessenberg form.
    pub fn charpoly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    let t = h[(i, j)];
                    h[(i, j)] = h[(m, j)];
                    h[(m, j)] = t;
                }
                for j in 0..n {
                    let t = h[(j, i)];
                    h[(j, i)] = h[(j, m)];
                    h[(j, m)] = t;
                }
            }
            let piv_inv = f.inv(h[(m, m - 1)]).expect("nonzero");
            for i in m + 1..n {
                let u = f.mul(h[(i, m - 1)], piv_inv);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h[(i, j)], f.mul(u, h[(m, j)]));
                    h[(i, j)] = v;
                }
                for j in 0..n {
                    let v = f.add(h[(j, m)], f.mul(u, h[(j, i)]));
                    h[(j, m)] = v;
                }
            }
        }
        // p_k = (x - h_{k-1,k-1}) p_{k-1} - sum_{i=1}^{k-1} (prod_{j=1}^{i} h_{k-j,k-j-1}) h_{k-i-1,k-1} p_{k-i-1}
        let mut ps: Vec<Poly> = vec![Poly::one(f)];
        for k in 1..=n {
            let lin = Poly::new(f, vec![f.neg(h[(k - 1, k - 1)]), Scalar::ONE]);
            let mut pk = lin.mul(&ps[k - 1]);
            let mut t = Scalar::ONE;
            for i in 1..k {
                t = f.mul(t, h[(k - i, k - i - 1)]);
                let coef = f.mul(t, h[(k - i - 1, k - 1)]);
                pk = pk.sub(&ps[k - i - 1].scaled(coef));
            }
            ps.push(pk);
        }
        Ok(ps.pop().expect("non-empty"))
    }
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize], n: usize) -> Matrix {
    let f = m.field;
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let mut out = Matrix::zeros(f, n, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out[(fc, k)] = Scalar::ONE;
        for (i, &pc) in pivots.iter().enumerate() {
            out[(pc, k)] = f.neg(m[(i, fc)]);
        }
    }
    out
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        self.mul_unchecked(rhs)
    }
}

/// Outcome of [`EchelonBasis::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insert {
    Independent,
    /// The vector equals `sum c_i u_i` over the previously inserted vectors
    /// (coefficients only available when tracking is enabled).
    Dependent(Vec<Scalar>),
}

/// Incrementally built semi-echelon basis of a subspace, optionally tracking
/// how each echelon row is expressed in the originally inserted vectors.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    track: Option<Vec<Vec<Scalar>>>,
    inserted: usize,
}

impl EchelonBasis {
    pub fn new(field: Field, dim: usize, track: bool) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            track: track.then(Vec::new),
            inserted: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Residual of `v` after clearing all pivots, plus (when tracking) the
    /// coefficients of the removed part over the inserted vectors.
    pub fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Option<Vec<Scalar>>) {
        let f = self.field;
        let mut res = v.to_vec();
        let mut coeffs = self.track.as_ref().map(|_| vec![Scalar::ZERO; self.inserted]);
        for (k, row) in self.rows.iter().enumerate() {
            let c = res[self.pivots[k]];
            if c.is_zero() {
                continue;
            }
            f.axpy(&mut res, f.neg(c), row);
            if let (Some(co), Some(tr)) = (coeffs.as_mut(), self.track.as_ref()) {
                let t = &tr[k];
                f.axpy(&mut co[..t.len()], c, t);
            }
        }
        (res, coeffs)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    pub fn insert(&mut self, v: &[Scalar]) -> Insert {
        assert_eq!(v.len(), self.dim);
        let f = self.field;
        let (mut res, coeffs) = self.reduce(v);
        let Some(pivot) = res.iter().position(|x| !x.is_zero()) else {
            return Insert::Dependent(coeffs.unwrap_or_default());
        };
        let inv = f.inv(res[pivot]).expect("nonzero");
        f.scale(&mut res, inv);
        if let Some(tr) = self.track.as_mut() {
            let mut t: Vec<Scalar> = coeffs.expect("tracking").iter().map(|&c| f.neg(c)).collect();
            t.push(Scalar::ONE);
            f.scale(&mut t, inv);
            tr.push(t);
        }
        self.rows.push(res);
        self.pivots.push(pivot);
        self.inserted += 1;
        Insert::Independent
    }

    /// Coefficients of `v` over the inserted vectors, if `v` lies in the span.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (res, coeffs) = self.reduce(v);
        res.iter().all(|x| x.is_zero()).then(|| coeffs.expect("tracking enabled"))
    }

    /// The echelon rows as the columns of a `dim x len` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.dim, &self.rows)
    }
}
