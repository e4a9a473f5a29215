use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{FieldSpec, Scalar};
use crate::error::Error;

/// Dense row-major matrix over an exact field.
///
/// A linear map `V -> W` is stored as a `dim W x dim V` matrix acting on
/// column vectors. Tensor product bases are ordered `(i, j) -> i * dim2 + j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                debug_assert_eq!(s.field(), field);
                data.push(s);
            }
        }
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Builds a matrix from integer rows (reduced into `field`).
    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_fn(field, r, c, |i, j| Scalar::from_i64(field, rows[i][j]))
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|s| s.field() != field) {
            return Err(Error::DimensionMismatch("entries from another field".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            field,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Column vector with a single `1` at position `i`.
    pub fn unit_column(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut m = Matrix::zeros(field, n, 1);
        m.set(i, 0, field.one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        // Nonzero entries of each row of `rhs`; most operands are sparse.
        let support: Vec<Vec<usize>> = (0..rhs.rows)
            .map(|k| (0..rhs.cols).filter(|&j| !rhs.get(k, j).is_zero()).collect())
            .collect();
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for &j in &support[k] {
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * rhs.get(k, j));
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; row `(i, k)` of the result is `i * b.rows + k`.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let v = b.get(k, l);
                        if v.is_zero() {
                            continue;
                        }
                        out.set(i * b.rows + k, j * b.cols + l, a * v);
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j).clone()
                } else {
                    other.get(i, j - self.cols).clone()
                }
            },
        ))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            field: self.field,
            data,
        })
    }

    /// Block diagonal `[[a, 0], [0, b]]`.
    pub fn direct_sum(&self, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows + b.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(self.rows + i, self.cols + j, b.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j]).clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| {
            self.get(rows[i], j).clone()
        })
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.select_columns(&[j])
    }

    /// Reshapes a `rows*cols`-long column vector into a `rows x cols` matrix
    /// (row-major).
    pub fn unflatten(&self, rows: usize, cols: usize) -> Matrix {
        assert_eq!(self.cols, 1);
        assert_eq!(self.rows, rows * cols);
        Matrix {
            rows,
            cols,
            field: self.field,
            data: self.data.clone(),
        }
    }

    /// Row-major flattening into a column vector.
    pub fn flatten(&self) -> Matrix {
        Matrix {
            rows: self.rows * self.cols,
            cols: 1,
            field: self.field,
            data: self.data.clone(),
        }
    }

    /// Matrix of the permutation of tensor factors sending factor `perm[t]`
    /// of `V_0 (x) ... (x) V_{n-1}` (with `dims[i] = dim V_i`) to position `t`.
    ///
    /// `tensor_permutation(f, &[a, b, c], &[0, 2, 1])` is `id (x) swap`.
    pub fn tensor_permutation(field: FieldSpec, dims: &[usize], perm: &[usize]) -> Matrix {
        let targets = permutation_targets(dims, perm);
        let mut out = Matrix::zeros(field, targets.len(), targets.len());
        for (src, &dst) in targets.iter().enumerate() {
            out.set(dst, src, field.one());
        }
        out
    }

    /// `self * tensor_permutation(dims, perm)` without forming the permutation.
    pub fn permute_tensor_columns(&self, dims: &[usize], perm: &[usize]) -> Matrix {
        let targets = permutation_targets(dims, perm);
        assert_eq!(targets.len(), self.cols, "permutation size");
        Matrix::from_fn(self.field, self.rows, self.cols, |i, src| self.get(i, targets[src]).clone())
    }

    /// First entry where `self` and `other` differ, if any.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((self.rows.min(other.rows), self.cols.min(other.cols)));
        }
        (0..self.data.len())
            .find(|&k| self.data[k] != other.data[k])
            .map(|k| (k / self.cols, k % self.cols))
    }
}

/// `targets[src]` is the index that tensor basis vector `src` is sent to.
fn permutation_targets(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    assert_eq!(dims.len(), perm.len());
    let total: usize = dims.iter().product();
    let out_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut idx = vec![0usize; dims.len()];
    (0..total)
        .map(|src| {
            let mut rem = src;
            for t in (0..dims.len()).rev() {
                idx[t] = rem % dims[t];
                rem /= dims[t];
            }
            perm.iter().zip(&out_dims).fold(0, |dst, (&p, &od)| dst * od + idx[p])
        })
        .collect()
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch in sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn column_permutation_matches_product() {
        let m = Matrix::from_fn(Q, 3, 12, |i, j| Scalar::from_i64(Q, (i * 12 + j) as i64));
        for perm in [[0, 1, 2], [2, 0, 1], [1, 0, 2]] {
            let p = Matrix::tensor_permutation(Q, &[2, 3, 2], &perm);
            assert_eq!(m.permute_tensor_columns(&[2, 3, 2], &perm), &m * &p);
        }
    }

    #[test]
    fn kron_scalar_and_identities() {
        let c = Matrix::from_i64(Q, &[vec![3]]);
        let m = Matrix::from_i64(Q, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(c.kron(&m), m.scale(&Scalar::from_i64(Q, 3)));
        assert_eq!(Matrix::identity(Q, 2).kron(&Matrix::identity(Q, 3)), Matrix::identity(Q, 6));
        let swap = Matrix::from_i64(Q, &[vec![0, 1], vec![1, 0]]);
        let two = Matrix::from_i64(Q, &[vec![2]]);
        assert_eq!(swap.kron(&two), Matrix::from_i64(Q, &[vec![0, 2], vec![2, 0]]));
    }

    #[test]
    fn tensor_swap_of_two_factors() {
        let p = Matrix::tensor_permutation(Q, &[2, 3], &[1, 0]);
        let a = Matrix::from_i64(Q, &[vec![1], vec![2]]);
        let b = Matrix::from_i64(Q, &[vec![5], vec![6], vec![7]]);
        assert_eq!(&p * &a.kron(&b), b.kron(&a));
    }

    #[test]
    fn multiplication_rejects_bad_shapes() {
        let a = Matrix::zeros(Q, 2, 3);
        assert!(a.checked_mul(&a).is_err());
    }
}
