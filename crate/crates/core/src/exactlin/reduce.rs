//! Gauss-Jordan elimination and everything built on it.
//!
//! Pivoting is deterministic (first nonzero entry of the current column among
//! the remaining rows), and every basis returned here is in reduced column
//! echelon form, which is unique for a given subspace.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;
use crate::error::Error;

/// Reduced row echelon form together with the pivot column of each nonzero row.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let field = m.field();
    let (nr, nc) = (m.rows(), m.cols());
    let mut rows = m.to_rows();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for k in c..nc {
                rows[rank][k] = &rows[rank][k] * &inv;
            }
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..nc {
                if !pivot_row[k].is_zero() {
                    row[k] = &row[k] - &(&f * &pivot_row[k]);
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let out = Matrix::from_rows(field, rows).expect("rectangular");
    let out = if nr == 0 { Matrix::zeros(field, 0, nc) } else { out };
    (out, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    if m.rows() > m.cols() {
        rref(&m.transpose()).1.len()
    } else {
        rref(m).1.len()
    }
}

/// Reduced column echelon basis of the column space of `m`.
pub fn image_basis(m: &Matrix) -> Matrix {
    let (r, pivots) = rref(&m.transpose());
    let keep: Vec<usize> = (0..pivots.len()).collect();
    r.select_rows(&keep).transpose()
}

/// Reduced column echelon basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let field = m.field();
    let n = m.cols();
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = Matrix::zeros(field, n, free.len());
    for (col, &f) in free.iter().enumerate() {
        k.set(f, col, field.one());
        for (i, &p) in pivots.iter().enumerate() {
            let v = r.get(i, f);
            if !v.is_zero() {
                k.set(p, col, -v);
            }
        }
    }
    image_basis(&k)
}

/// Some `x` with `a x = b`, free variables set to zero; `None` if inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>, Error> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {} equations but right-hand side has {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let aug = a.hstack(b)?;
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(a.field(), n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for k in 0..b.cols() {
            x.set(p, k, r.get(i, n + k).clone());
        }
    }
    Ok(Some(x))
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if a.rows() != a.cols() || rank(a) != a.rows() {
        return None;
    }
    solve(a, &Matrix::identity(a.field(), a.rows())).ok().flatten()
}

/// Determinant by Gaussian elimination; `None` for non-square input.
pub fn determinant(a: &Matrix) -> Option<Scalar> {
    if a.rows() != a.cols() {
        return None;
    }
    let field = a.field();
    let n = a.rows();
    let mut rows = a.to_rows();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
            return Some(field.zero());
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        det = &det * &rows[c][c];
        let inv = rows[c][c].inv().expect("nonzero pivot");
        let pivot_row = rows[c].clone();
        for row in rows.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for k in c..n {
                row[k] = &row[k] - &(&f * &pivot_row[k]);
            }
        }
    }
    Some(det)
}

pub fn is_invertible(a: &Matrix) -> bool {
    a.rows() == a.cols() && rank(a) == a.rows()
}

/// A subspace of `k^n` held by its reduced column echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the columns of `m`.
    pub fn span(m: &Matrix) -> Self {
        let basis = image_basis(m);
        let pivots = (0..basis.cols())
            .map(|j| {
                (0..basis.rows())
                    .find(|&i| !basis.get(i, j).is_zero())
                    .expect("nonzero basis column")
            })
            .collect();
        Subspace { basis, pivots }
    }

    pub fn kernel(m: &Matrix) -> Self {
        Subspace::span(&kernel_basis(m))
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of the columns of `v` in this basis, or `None` if some
    /// column lies outside the subspace.
    pub fn coordinates(&self, v: &Matrix) -> Option<Matrix> {
        let c = v.select_rows(&self.pivots);
        if &self.basis * &c == *v {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &Matrix) -> bool {
        self.coordinates(v).is_some()
    }

    /// The matrix of `op` restricted to this subspace and co-restricted to
    /// `target`, or `None` when `op` does not map one into the other.
    pub fn restrict(&self, op: &Matrix, target: &Subspace) -> Option<Matrix> {
        target.coordinates(&(op * &self.basis))
    }
}

/// A quotient `k^n / S` presented by a projection and a linear section.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    pub projection: Matrix,
    pub lift: Matrix,
}

impl QuotientSpace {
    /// Coordinates of `k^n / S` are the non-pivot coordinates of `S`'s
    /// echelon basis.
    pub fn new(sub: &Subspace) -> Self {
        let n = sub.ambient_dim();
        let field = sub.basis.field();
        let mut is_pivot = vec![false; n];
        for &p in &sub.pivots {
            is_pivot[p] = true;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
        let reduce = &Matrix::identity(field, n) - &(&sub.basis * &Matrix::identity(field, n).select_rows(&sub.pivots));
        let projection = reduce.select_rows(&rest);
        let lift = Matrix::identity(field, n).select_columns(&rest);
        QuotientSpace { projection, lift }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

/// Basis of `{F : Q_k F = F P_k for all k}` where `F` is `dy x dx`.
///
/// Each column is the row-major flattening of one `F`. The constraint
/// families are processed one at a time, shrinking the candidate space as
/// they go.
pub fn intertwiners(
    src: &[Matrix],
    tgt: &[Matrix],
    dx: usize,
    dy: usize,
    field: FieldSpec,
) -> Result<Matrix, Error> {
    if src.len() != tgt.len() {
        return Err(Error::DimensionMismatch(
            "intertwiner families have different lengths".into(),
        ));
    }
    let n = dx * dy;
    let mut current = Matrix::identity(field, n);
    for (p, q) in src.iter().zip(tgt) {
        if p.rows() != dx || p.cols() != dx || q.rows() != dy || q.cols() != dy {
            return Err(Error::DimensionMismatch("intertwiner family shape".into()));
        }
        if current.cols() == 0 {
            break;
        }
        let mut defect = Matrix::zeros(field, n, current.cols());
        for j in 0..current.cols() {
            let f = current.column(j).unflatten(dy, dx);
            let d = &(q * &f) - &(&f * p);
            for (i, v) in d.flatten().to_rows().into_iter().enumerate() {
                defect.set(i, j, v.into_iter().next().unwrap());
            }
        }
        if defect.is_zero() {
            continue;
        }
        let k = kernel_basis(&defect);
        current = &current * &k;
    }
    Ok(image_basis(&current))
}

/// Deterministic search for an invertible element in the span of the given
/// square matrices. Tries sparse combinations first, then dense ones with
/// varying coefficients.
pub fn find_invertible_combination(basis: &[Matrix]) -> Option<Matrix> {
    let first = basis.first()?;
    let field = first.field();
    if let Some(b) = basis.iter().find(|b| is_invertible(b)) {
        return Some(b.clone());
    }
    // Seeded so repeated runs pick the same element.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let bound = match field {
        FieldSpec::Rationals => 64,
        FieldSpec::PrimeField(p) => p.min(1 << 20) as i64,
    };
    for _ in 0..INVERTIBLE_TRIES {
        let mut acc = Matrix::zeros(field, first.rows(), first.cols());
        for b in basis {
            let c = Scalar::from_i64(field, rng.random_range(-bound..=bound));
            acc = &acc + &b.scale(&c);
        }
        if is_invertible(&acc) {
            return Some(acc);
        }
    }
    None
}

/// Random combinations tried before giving up.
const INVERTIBLE_TRIES: usize = 256;
