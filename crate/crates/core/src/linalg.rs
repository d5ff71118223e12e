//! Exact linear algebra over the rationals.
//!
//! Two independent rank routines: fraction-free (Bareiss) elimination on
//! dense integer matrices, and Gauss-Jordan reduction on sparse rational
//! rows, which also yields kernels and particular solutions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse row: `(column, value)` pairs, strictly increasing columns, no
/// stored zeros.
pub type SparseRow = Vec<(usize, BigRational)>;

/// Rank by Bareiss fraction-free elimination. Every intermediate entry is a
/// minor of the input, so all divisions are exact.
pub fn rank_bareiss(matrix: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..cols {
                let v = &pivot * &row[c] - &factor * &pivot_row[c];
                row[c] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// `y += a·x` on sparse rows.
fn axpy(y: &SparseRow, a: &BigRational, x: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let ci = y.get(i).map_or(usize::MAX, |e| e.0);
        let cj = x.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(y[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, a * &x[j].1));
            j += 1;
        } else {
            let v = &y[i].1 + a * &x[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn coeff(row: &SparseRow, col: usize) -> Option<&BigRational> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Reduced row echelon form of a row space, built incrementally.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    /// Pivot rows sorted by pivot column; each has a 1 at its pivot and
    /// zeros at every other pivot column.
    rows: Vec<SparseRow>,
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref { ncols, rows: Vec::new() }
    }

    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> Self {
        let mut r = Rref::new(ncols);
        for row in rows {
            r.insert(row);
        }
        r
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    /// Reduces `row` against the current pivots.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut r = row.clone();
        for p in &self.rows {
            if let Some(c) = coeff(&r, p[0].0) {
                let c = -c.clone();
                r = axpy(&r, &c, p);
            }
        }
        r
    }

    /// Adds a row to the spanned space; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(&row);
        let Some((lead, lv)) = r.first().cloned() else {
            return false;
        };
        let inv = lv.recip();
        let r: SparseRow = r.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        for p in self.rows.iter_mut() {
            if let Some(c) = coeff(p, lead) {
                let c = -c.clone();
                *p = axpy(p, &c, &r);
            }
        }
        let at = self.rows.partition_point(|p| p[0].0 < lead);
        self.rows.insert(at, r);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free
    /// column, as dense vectors.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let pivots = self.pivots();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![BigRational::zero(); self.ncols];
                v[f] = BigRational::one();
                for row in &self.rows {
                    if let Some(c) = coeff(row, f) {
                        v[row[0].0] = -c.clone();
                    }
                }
                v
            })
            .collect()
    }
}

pub fn to_sparse(dense: &[BigRational]) -> SparseRow {
    dense.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
}

pub fn to_dense(row: &SparseRow, ncols: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); ncols];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

/// Rank of a set of sparse rows by Gauss-Jordan elimination.
pub fn rank_rational(ncols: usize, rows: &[SparseRow]) -> usize {
    Rref::from_rows(ncols, rows.iter().cloned()).rank()
}

/// A solution of `A x = b` (free variables zero), if one exists. `A` is
/// given by its sparse rows.
pub fn solve(ncols: usize, a: &[SparseRow], b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.len(), b.len());
    let aug = a.iter().zip(b).map(|(row, rhs)| {
        let mut r = row.clone();
        if !rhs.is_zero() {
            r.push((ncols, rhs.clone()));
        }
        r
    });
    let rref = Rref::from_rows(ncols + 1, aug);
    let mut x = vec![BigRational::zero(); ncols];
    for row in rref.rows() {
        let lead = row[0].0;
        if lead == ncols {
            return None;
        }
        if let Some(v) = coeff(row, ncols) {
            x[lead] = v.clone();
        }
    }
    Some(x)
}

/// Sup norm of a dense vector.
pub fn sup_norm(v: &[BigRational]) -> BigRational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigRational::zero)
}
