//! Finite-dimensional algebras given by structure constants: `Lambda_q`, the
//! one-parameter family `Lambda(t)` and the deformations `KQ/J_eta`, with
//! radical, socle, Frobenius test, socle quotient, rescaling isomorphisms and
//! the simple-module checks used for the socle-deformation dichotomy.

mod frobenius;
mod iso;
mod simple;
mod subspace;

use std::fmt;

use thiserror::Error;

use crate::coeff::{CoeffError, Field, QParams};
use crate::ext::Arrow;
use crate::linalg::SparseVec;

pub use frobenius::{is_frobenius, FrobeniusCertificate, FrobeniusResult, SCHWARTZ_ZIPPEL_BITS, SYMBOLIC_DIM_LIMIT};
pub use iso::{check_rescaling, rescaling_isomorphism, Rescaling};
pub use simple::{dimension_vector, hom_dimension, left_ideal, two_dim_simple_check};
pub use subspace::{arrow_radical, left_socle, radical, socle_quotient, trace_radical, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FindimError {
    #[error("multiplication is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("the given unit is not a two-sided identity")]
    NoUnit,
    #[error("trace-form radical needs characteristic 0 or above {1}, got {0}")]
    UnsupportedCharacteristic(u64, usize),
    #[error("the left socle is not a two-sided ideal")]
    SocleNotIdeal,
    #[error("algebras do not share the cyclic quiver basis shape")]
    ShapeMismatch,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("undecided: {0}")]
    Undecided(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

/// A finite-dimensional associative unital algebra, stored as the products
/// of all ordered pairs of basis elements.
#[derive(Clone)]
pub struct StructureConstAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec<F::Elem>>>,
    unit: SparseVec<F::Elem>,
    /// `m` when the basis is `e_i, a_i, abar_i, s_i` on the cyclic quiver.
    quiver: Option<usize>,
}

impl<F: Field> fmt::Debug for StructureConstAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructureConstAlgebra")
            .field("dim", &self.dim())
            .field("labels", &self.labels)
            .finish()
    }
}

impl<F: Field> StructureConstAlgebra<F> {
    /// Checks associativity on all basis triples and that `unit` is a
    /// two-sided identity.
    pub fn new(
        field: F,
        labels: Vec<String>,
        table: Vec<Vec<SparseVec<F::Elem>>>,
        unit: SparseVec<F::Elem>,
    ) -> Result<Self, FindimError> {
        let alg = Self {
            field,
            labels,
            table,
            unit,
            quiver: None,
        };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<(), FindimError> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = &self.table[a][b];
                for c in 0..n {
                    let left = self.mul_sparse_basis(ab, c);
                    let right = self.mul_basis_sparse(a, &self.table[b][c]);
                    if left != right {
                        return Err(FindimError::NotAssociative(
                            self.labels[a].clone(),
                            self.labels[b].clone(),
                            self.labels[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), FindimError> {
        for b in 0..self.dim() {
            let e = vec![(b, self.field.one())];
            let one = self.unit.clone();
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                return Err(FindimError::NoUnit);
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> &SparseVec<F::Elem> {
        &self.unit
    }

    /// `b_a * b_b`.
    pub fn product(&self, a: usize, b: usize) -> &SparseVec<F::Elem> {
        &self.table[a][b]
    }

    /// `m` for algebras on the labelled basis of the cyclic quiver.
    pub fn quiver_m(&self) -> Option<usize> {
        self.quiver
    }

    pub fn basis_vector(&self, k: usize) -> SparseVec<F::Elem> {
        vec![(k, self.field.one())]
    }

    fn accumulate(&self, acc: &mut Vec<F::Elem>, c: &F::Elem, v: &SparseVec<F::Elem>) {
        for (k, x) in v {
            acc[*k] = self.field.add(&acc[*k], &self.field.mul(c, x));
        }
    }

    fn sparsify(&self, v: Vec<F::Elem>) -> SparseVec<F::Elem> {
        crate::linalg::to_sparse(&self.field, &v)
    }

    fn mul_sparse_basis(&self, x: &SparseVec<F::Elem>, c: usize) -> SparseVec<F::Elem> {
        let mut acc = vec![self.field.zero(); self.dim()];
        for (k, xk) in x {
            self.accumulate(&mut acc, xk, &self.table[*k][c]);
        }
        self.sparsify(acc)
    }

    fn mul_basis_sparse(&self, a: usize, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut acc = vec![self.field.zero(); self.dim()];
        for (k, yk) in y {
            self.accumulate(&mut acc, yk, &self.table[a][*k]);
        }
        self.sparsify(acc)
    }

    pub fn mul(&self, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = vec![f.zero(); self.dim()];
        for (a, xa) in x {
            for (b, yb) in y {
                self.accumulate(&mut acc, &f.mul(xa, yb), &self.table[*a][*b]);
            }
        }
        self.sparsify(acc)
    }

    /// Matrix of `y -> x*y` (column `b` holds `x * b_b`), as dense rows.
    pub fn left_mult_matrix(&self, x: &SparseVec<F::Elem>) -> Vec<Vec<F::Elem>> {
        self.mult_matrix(|b| self.mul(x, &self.basis_vector(b)))
    }

    /// Matrix of `y -> y*x`.
    pub fn right_mult_matrix(&self, x: &SparseVec<F::Elem>) -> Vec<Vec<F::Elem>> {
        self.mult_matrix(|b| self.mul(&self.basis_vector(b), x))
    }

    fn mult_matrix(&self, col: impl Fn(usize) -> SparseVec<F::Elem>) -> Vec<Vec<F::Elem>> {
        let n = self.dim();
        let mut m = vec![vec![self.field.zero(); n]; n];
        for b in 0..n {
            for (k, x) in col(b) {
                m[k][b] = x;
            }
        }
        m
    }

    /// The product table in a printable form, `label*label = combination`
    /// for the nonzero products.
    pub fn format_table(&self) -> Vec<String> {
        let mut out = vec![];
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let v = &self.table[a][b];
                if !v.is_empty() {
                    out.push(format!("{}*{} = {}", self.labels[a], self.labels[b], self.format_vec(v)));
                }
            }
        }
        out
    }

    pub fn format_vec(&self, v: &SparseVec<F::Elem>) -> String {
        if v.is_empty() {
            return "0".into();
        }
        v.iter()
            .map(|(k, c)| {
                if self.field.is_one(c) {
                    self.labels[*k].clone()
                } else {
                    format!("({})*{}", self.field.format_plain(c), self.labels[*k])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `t`, `b1`, `b2`: the deformation parameter and the coordinates of
/// `eta = b1*pi + b2*chi` in the deformation relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParams<E> {
    pub t: E,
    pub b1: E,
    pub b2: E,
}

/// Basis positions on the cyclic quiver: `e_i`, `a_i`, `abar_i`, `s_i = a_i abar_i`.
pub fn quiver_labels(m: usize) -> Vec<String> {
    let mut labels = vec![];
    for name in ["e", "a", "abar", "s"] {
        labels.extend((0..m).map(|i| format!("{name}{i}")));
    }
    labels
}

/// Rewriting `abar_{j-1} a_{j-1} -> alpha_j a_j abar_j + beta_j e_j` together
/// with `a_i a_{i+1} -> 0` and `abar_i abar_{i-1} -> 0`.
struct QuiverRewriter<F: Field> {
    field: F,
    m: usize,
    alpha: Vec<F::Elem>,
    beta: Vec<F::Elem>,
}

impl<F: Field> QuiverRewriter<F> {
    fn index(&self, start: usize, word: &[Arrow]) -> usize {
        let m = self.m;
        match word {
            [] => start,
            [Arrow::A(i)] => m + i,
            [Arrow::Abar(i)] => 2 * m + i,
            [Arrow::A(i), Arrow::Abar(_)] => 3 * m + i,
            _ => unreachable!("not a normal word"),
        }
    }

    fn word(&self, k: usize) -> (usize, Vec<Arrow>) {
        let m = self.m;
        let i = k % m;
        match k / m {
            0 => (i, vec![]),
            1 => (i, vec![Arrow::A(i)]),
            2 => ((i + 1) % m, vec![Arrow::Abar(i)]),
            _ => (i, vec![Arrow::A(i), Arrow::Abar(i)]),
        }
    }

    /// Reduces `c * word` into `acc`, rewriting the leftmost redex first.
    fn reduce(&self, start: usize, word: Vec<Arrow>, c: F::Elem, acc: &mut Vec<F::Elem>) {
        let f = &self.field;
        let m = self.m;
        if f.is_zero(&c) {
            return;
        }
        for p in 0..word.len().saturating_sub(1) {
            match (word[p], word[p + 1]) {
                (Arrow::A(_), Arrow::A(_)) | (Arrow::Abar(_), Arrow::Abar(_)) => return,
                (Arrow::Abar(k), Arrow::A(_)) => {
                    let j = (k + 1) % m;
                    let mut w = word[..p].to_vec();
                    w.push(Arrow::A(j));
                    w.push(Arrow::Abar(j));
                    w.extend_from_slice(&word[p + 2..]);
                    self.reduce(start, w, f.mul(&c, &self.alpha[j]), acc);
                    let mut w = word[..p].to_vec();
                    w.extend_from_slice(&word[p + 2..]);
                    self.reduce(start, w, f.mul(&c, &self.beta[j]), acc);
                    return;
                }
                _ => {}
            }
        }
        let k = self.index(start, &word);
        acc[k] = f.add(&acc[k], &c);
    }

    fn build(&self) -> Result<StructureConstAlgebra<F>, FindimError> {
        let f = &self.field;
        let m = self.m;
        let n = 4 * m;
        let mut table = vec![vec![vec![]; n]; n];
        for a in 0..n {
            let (sa, wa) = self.word(a);
            let end = wa.last().map_or(sa, |x| x.terminus(m));
            for b in 0..n {
                let (sb, wb) = self.word(b);
                if end != sb {
                    continue;
                }
                let mut acc = vec![f.zero(); n];
                self.reduce(sa, [wa.clone(), wb].concat(), f.one(), &mut acc);
                table[a][b] = crate::linalg::to_sparse(f, &acc);
            }
        }
        let unit = (0..m).map(|i| (i, f.one())).collect();
        let mut alg = StructureConstAlgebra::new(f.clone(), quiver_labels(m), table, unit)?;
        alg.quiver = Some(m);
        Ok(alg)
    }
}

/// `Lambda_q`: `a_i abar_i = s_i`, `abar_{i-1} a_{i-1} = q_i s_i`, all other
/// products of two arrows zero.
pub fn build_lambda_q<F: Field>(params: &QParams<F>) -> Result<StructureConstAlgebra<F>, FindimError> {
    let f = params.field();
    let m = params.m();
    QuiverRewriter {
        field: f.clone(),
        m,
        alpha: (0..m).map(|j| params.q(j as i64).clone()).collect(),
        beta: vec![f.zero(); m],
    }
    .build()
}

/// `KQ/J_eta` with `eta = b1*pi + b2*chi` specialised at `t`:
/// `abar_{j-1} a_{j-1} = a_j abar_j - t(-1)^j b2 e_j` for `j = 1..m-1` and
/// `abar_{m-1} a_{m-1} = (1 - t b1) a_0 abar_0 - t b2 e_0`.
/// With `b2 = 0`, `b1 = 1` this is `Lambda(t)`, which is
/// `Lambda_q` at `q = (1 - t, 1, ..., 1)`.
pub fn build_deformed<F: Field>(
    field: &F,
    m: usize,
    dp: &DeformationParams<F::Elem>,
) -> Result<StructureConstAlgebra<F>, FindimError> {
    let f = field;
    let tb2 = f.mul(&dp.t, &dp.b2);
    let alpha = (0..m)
        .map(|j| if j == 0 { f.sub(&f.one(), &f.mul(&dp.t, &dp.b1)) } else { f.one() })
        .collect();
    let beta = (0..m)
        .map(|j| f.neg(&f.mul(&f.sign(j as i64), &tb2)))
        .collect();
    QuiverRewriter {
        field: f.clone(),
        m,
        alpha,
        beta,
    }
    .build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rationals;

    fn vec_of(alg: &StructureConstAlgebra<Rationals>, terms: &[(&str, i64)]) -> SparseVec<<Rationals as Field>::Elem> {
        let mut v: SparseVec<_> = terms
            .iter()
            .map(|(l, c)| (alg.index_of(l).unwrap(), Rationals.from_int(*c)))
            .collect();
        v.sort_by_key(|x| x.0);
        v
    }

    fn prod(alg: &StructureConstAlgebra<Rationals>, a: &str, b: &str) -> SparseVec<<Rationals as Field>::Elem> {
        alg.product(alg.index_of(a).unwrap(), alg.index_of(b).unwrap()).clone()
    }

    #[test]
    fn lambda_one_vertex() {
        let f = Rationals;
        let a = build_lambda_q(&QParams::trivial(f, 1).unwrap()).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(prod(&a, "a0", "abar0"), vec_of(&a, &[("s0", 1)]));
        assert_eq!(prod(&a, "abar0", "a0"), vec_of(&a, &[("s0", 1)]));
        assert!(prod(&a, "a0", "a0").is_empty());
        assert!(prod(&a, "abar0", "abar0").is_empty());
    }

    #[test]
    fn lambda_q_products() {
        let f = Rationals;
        let q = QParams::new(f, vec![f.from_int(2), f.from_int(3), f.from_int(5)]).unwrap();
        let a = build_lambda_q(&q).unwrap();
        assert_eq!(a.dim(), 12);
        assert_eq!(prod(&a, "abar0", "a0"), vec_of(&a, &[("s1", 3)]));
        assert_eq!(prod(&a, "abar2", "a2"), vec_of(&a, &[("s0", 2)]));
        assert!(prod(&a, "a0", "a1").is_empty());
        assert!(prod(&a, "s1", "a1").is_empty());
        assert_eq!(prod(&a, "e1", "e1"), vec_of(&a, &[("e1", 1)]));
        assert!(prod(&a, "e1", "e2").is_empty());
    }

    #[test]
    fn deformation_relations() {
        let f = Rationals;
        let dp = DeformationParams { t: f.one(), b1: f.zero(), b2: f.one() };
        let a = build_deformed(&f, 4, &dp).unwrap();
        assert_eq!(prod(&a, "abar0", "a0"), vec_of(&a, &[("e1", 1), ("s1", 1)]));
        // s_i a_i = (-1)^i t b2 a_i for i < m-1, and -t b2 a_{m-1} at the end
        for i in 0..4 {
            let sign = if i < 3 { if i % 2 == 0 { 1 } else { -1 } } else { -1 };
            assert_eq!(prod(&a, &format!("s{i}"), &format!("a{i}")), vec_of(&a, &[(&format!("a{i}"), sign)]));
        }
    }

    #[test]
    fn zero_deformation_is_lambda() {
        let f = Rationals;
        for m in 1..6 {
            let dp = DeformationParams { t: f.from_int(3), b1: f.zero(), b2: f.zero() };
            let a = build_deformed(&f, m, &dp).unwrap();
            let b = build_lambda_q(&QParams::trivial(f, m).unwrap()).unwrap();
            assert_eq!(a.table, b.table);
        }
    }

    #[test]
    fn non_associative_table_rejected() {
        let f = Rationals;
        // basis 1, x with x*x = 1 + x is fine; make x*x = x but 1*x = 0
        let labels = vec!["one".to_string(), "x".to_string()];
        let table = vec![
            vec![vec![(0, f.one())], vec![]],
            vec![vec![(1, f.one())], vec![(1, f.one())]],
        ];
        let err = StructureConstAlgebra::new(f, labels, table, vec![(0, f.one())]).unwrap_err();
        assert!(matches!(err, FindimError::NotAssociative(..) | FindimError::NoUnit));
    }
}
