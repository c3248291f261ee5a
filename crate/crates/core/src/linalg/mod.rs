//! Exact linear algebra over a [`Field`]: sparse Gauss-Jordan elimination,
//! nullspaces, ranks and determinants, plus multivariate polynomials for the
//! symbolic determinant used by the Frobenius test.

mod mpoly;

use std::collections::{BTreeMap, HashMap};

use crate::coeff::Field;

pub use mpoly::{bareiss_determinant, MPoly, MPolyRing};

/// Sparse vector: `(index, nonzero value)` pairs in increasing index order.
pub type SparseVec<E> = Vec<(usize, E)>;

pub fn to_sparse<F: Field>(f: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Field>(f: &F, v: &SparseVec<F::Elem>, len: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a - c*b` on sparse vectors.
fn axpy<F: Field>(
    f: &F,
    a: &SparseVec<F::Elem>,
    c: &F::Elem,
    b: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, f.neg(&f.mul(c, &b[j].1))));
            j += 1;
        } else {
            let v = f.sub(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row-echelon form of a sparse row set, built incrementally.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    /// pivot column -> row with leading 1 at that column
    rows: BTreeMap<usize, SparseVec<F::Elem>>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self {
            field,
            ncols,
            rows: BTreeMap::new(),
            reduced: true,
        }
    }

    pub fn from_rows(field: F, ncols: usize, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Self {
        let mut e = Self::new(field, ncols);
        for r in rows {
            e.insert(r);
        }
        e.finish();
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current pivots (forward direction only).
    fn forward(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut k = 0;
        while k < v.len() {
            let (col, c) = (v[k].0, v[k].1.clone());
            match self.rows.get(&col) {
                Some(row) => {
                    v = axpy(&self.field, &v, &c, row);
                    // entries before position k are untouched: pivot rows
                    // start at their pivot column
                }
                None => k += 1,
            }
        }
        v
    }

    /// Adds a row. Returns false if it was already in the span.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let v = self.forward(v);
        let Some((p, lead)) = v.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead).unwrap();
        let v = v.into_iter().map(|(i, x)| (i, self.field.mul(&x, &inv))).collect();
        self.rows.insert(p, v);
        self.reduced = false;
        true
    }

    /// Back-substitutes so that every pivot column is zero outside its row.
    pub fn finish(&mut self) {
        if self.reduced {
            return;
        }
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let row = self.rows.remove(&p).unwrap();
            let mut out = vec![row[0].clone()];
            let rest = self.forward(row[1..].to_vec());
            out.extend(rest);
            self.rows.insert(p, out);
        }
        self.reduced = true;
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> Vec<SparseVec<F::Elem>> {
        assert!(self.reduced, "call finish() first");
        self.rows.values().cloned().collect()
    }

    /// `v` minus its component along the rows: the result is zero in every
    /// pivot column.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.forward(v.clone())
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.forward(v.clone()).is_empty()
    }

    /// Coordinates of `v` in the row basis, or `None` if `v` is not in the
    /// span.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        assert!(self.reduced, "call finish() first");
        let f = &self.field;
        let mut coords = Vec::with_capacity(self.rows.len());
        let mut rest = v.clone();
        for (p, row) in &self.rows {
            let c = rest
                .iter()
                .find(|(i, _)| i == p)
                .map(|(_, x)| x.clone())
                .unwrap_or_else(|| f.zero());
            if !f.is_zero(&c) {
                rest = axpy(f, &rest, &c, row);
            }
            coords.push(c);
        }
        rest.is_empty().then_some(coords)
    }

    /// Basis of `{x : r.x = 0 for every row r}`: one vector per free column
    /// `c`, with a 1 at `c` and zeros at the other free columns.
    pub fn kernel(&self) -> Vec<SparseVec<F::Elem>> {
        assert!(self.reduced, "call finish() first");
        let f = &self.field;
        let mut by_free: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
        for (p, row) in &self.rows {
            for (c, x) in &row[1..] {
                by_free.entry(*c).or_default().push((*p, f.neg(x)));
            }
        }
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|c| {
                let mut v = by_free.remove(&c).unwrap_or_default();
                v.push((c, f.one()));
                v.sort_by_key(|(i, _)| *i);
                v
            })
            .collect()
    }
}

/// Kernel of a sparse matrix given by rows.
pub fn nullspace<F: Field>(
    f: &F,
    rows: impl IntoIterator<Item = SparseVec<F::Elem>>,
    ncols: usize,
) -> Vec<SparseVec<F::Elem>> {
    Echelon::from_rows(f.clone(), ncols, rows).kernel()
}

/// Kernel of a dense matrix.
pub fn dense_nullspace<F: Field>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    nullspace(f, rows.iter().map(|r| to_sparse(f, r)), ncols)
        .iter()
        .map(|v| to_dense(f, v, ncols))
        .collect()
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut e = Echelon::new(f.clone(), ncols);
    for r in rows {
        e.insert(to_sparse(f, r));
    }
    e.rank()
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(f: &F, mut a: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = a.len();
    let mut det = f.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !f.is_zero(&a[r][k])) else {
            return f.zero();
        };
        if p != k {
            a.swap(p, k);
            det = f.neg(&det);
        }
        det = f.mul(&det, &a[k][k]);
        let inv = f.inv(&a[k][k]).unwrap();
        for r in k + 1..n {
            if f.is_zero(&a[r][k]) {
                continue;
            }
            let c = f.mul(&a[r][k], &inv);
            for j in k..n {
                let v = f.sub(&a[r][j], &f.mul(&c, &a[k][j]));
                a[r][j] = v;
            }
        }
    }
    det
}

/// Product of dense matrices.
pub fn mat_mul<F: Field>(f: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(f.zero(), |acc, k| {
                        if f.is_zero(&row[k]) {
                            acc
                        } else {
                            f.add(&acc, &f.mul(&row[k], &b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        Rationals.from_int(n)
    }

    fn qm(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        let f = Rationals;
        let a = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = dense_nullspace(&f, &a, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![q(-1), q(-1), q(1)]);
        assert_eq!(rank(&f, &a), 2);
    }

    #[test]
    fn determinants() {
        let f = Rationals;
        assert_eq!(determinant(&f, qm(&[&[0, 1], &[1, 0]])), q(-1));
        assert_eq!(determinant(&f, qm(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), q(4));
        assert_eq!(determinant(&f, qm(&[&[1, 2], &[2, 4]])), q(0));
        assert_eq!(determinant(&f, vec![]), q(1));
    }

    #[test]
    fn coordinates_in_row_space() {
        let f = PrimeField::new(5).unwrap();
        let rows = vec![vec![(0, 1), (2, 3)], vec![(1, 1), (2, 1)]];
        let e = Echelon::from_rows(f, 3, rows);
        let v = vec![(0, 2), (1, 3), (2, 4)];
        // 2*(1,0,3) + 3*(0,1,1) = (2,3,9=4)
        assert_eq!(e.coordinates(&v), Some(vec![2, 3]));
        assert_eq!(e.coordinates(&vec![(2, 1)]), None);
    }

    #[test]
    fn back_substitution_reduces_fully() {
        let f = Rationals;
        let rows = vec![
            vec![(0, q(1)), (1, q(1)), (2, q(1))],
            vec![(1, q(1)), (2, q(2))],
        ];
        let e = Echelon::from_rows(f, 3, rows);
        assert_eq!(
            e.rows(),
            vec![vec![(0, q(1)), (2, q(-1))], vec![(1, q(1)), (2, q(2))]]
        );
        assert_eq!(e.kernel(), vec![vec![(0, q(1)), (1, q(-2)), (2, q(1))]]);
    }
}
