use super::{FindimError, StructureConstAlgebra};
use crate::coeff::Field;
use crate::linalg::{to_sparse, Echelon, SparseVec};

/// A subspace of an algebra in reduced row-echelon form, so equal subspaces
/// have equal bases.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    ech: Echelon<F>,
}

impl<F: Field> Subspace<F> {
    pub fn span(field: &F, ambient: usize, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> Self {
        Self {
            ech: Echelon::from_rows(field.clone(), ambient, vectors),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ech.ncols()
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn basis(&self) -> Vec<SparseVec<F::Elem>> {
        self.ech.rows()
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.ech.contains(v)
    }

    pub fn echelon(&self) -> &Echelon<F> {
        &self.ech
    }

    /// Basis positions that are not pivots: a basis of a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let piv = self.ech.pivots();
        (0..self.ambient_dim()).filter(|k| !piv.contains(k)).collect()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis().iter().all(|v| other.contains(v))
    }
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.basis() == other.basis()
    }
}

/// Kernel of the trace form `(x, y) -> tr(L_{xy})`. This is the Jacobson
/// radical when the characteristic is 0 or exceeds the dimension.
pub fn trace_radical<F: Field>(alg: &StructureConstAlgebra<F>) -> Result<Subspace<F>, FindimError> {
    let f = alg.field();
    let n = alg.dim();
    let p = f.characteristic();
    if p != 0 && p as usize <= n {
        return Err(FindimError::UnsupportedCharacteristic(p, n));
    }
    let traces: Vec<F::Elem> = (0..n)
        .map(|k| {
            (0..n).fold(f.zero(), |acc, j| {
                let c = alg
                    .product(k, j)
                    .iter()
                    .find(|(i, _)| *i == j)
                    .map(|(_, x)| x.clone());
                c.map_or(acc.clone(), |c| f.add(&acc, &c))
            })
        })
        .collect();
    let rows = (0..n).map(|a| {
        let row: Vec<F::Elem> = (0..n)
            .map(|b| {
                alg.product(a, b)
                    .iter()
                    .fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &traces[*k])))
            })
            .collect();
        to_sparse(f, &row)
    });
    let kernel = Echelon::from_rows(f.clone(), n, rows).kernel();
    Ok(Subspace::span(f, n, kernel))
}

/// `span{a_i, abar_i, s_i}` for an algebra on the cyclic quiver basis,
/// returned only if it is a two-sided nilpotent ideal; the quotient is then
/// `K^m`, so it is the radical.
pub fn arrow_radical<F: Field>(alg: &StructureConstAlgebra<F>) -> Option<Subspace<F>> {
    let m = alg.quiver_m()?;
    let f = alg.field();
    let n = alg.dim();
    let sub = Subspace::span(f, n, (m..n).map(|k| alg.basis_vector(k)));
    for r in m..n {
        for b in 0..n {
            if !sub.contains(alg.product(r, b)) || !sub.contains(alg.product(b, r)) {
                return None;
            }
        }
    }
    // powers of the ideal must reach zero
    let mut power: Vec<SparseVec<F::Elem>> = sub.basis();
    for _ in 0..n {
        if power.is_empty() {
            return Some(sub);
        }
        let next = power
            .iter()
            .flat_map(|x| (m..n).map(move |r| alg.mul(x, &alg.basis_vector(r))))
            .filter(|v| !v.is_empty());
        power = Subspace::span(f, n, next).basis();
    }
    power.is_empty().then_some(sub)
}

/// The Jacobson radical: the trace-form kernel where that is valid, else the
/// arrow ideal when it qualifies.
pub fn radical<F: Field>(alg: &StructureConstAlgebra<F>) -> Result<Subspace<F>, FindimError> {
    match trace_radical(alg) {
        Ok(r) => Ok(r),
        Err(e) => arrow_radical(alg).ok_or(e),
    }
}

/// `{x : r x = 0 for all r in rad A}`.
pub fn left_socle<F: Field>(alg: &StructureConstAlgebra<F>) -> Result<Subspace<F>, FindimError> {
    let f = alg.field();
    let n = alg.dim();
    let rad = radical(alg)?;
    let rows = rad
        .basis()
        .iter()
        .flat_map(|r| alg.left_mult_matrix(r))
        .map(|row| to_sparse(f, &row))
        .collect::<Vec<_>>();
    let kernel = Echelon::from_rows(f.clone(), n, rows).kernel();
    Ok(Subspace::span(f, n, kernel))
}

/// `A / soc(A)` on the non-pivot basis elements of the socle. The quiver
/// shape survives when the kept elements are exactly the `e_i`, `a_i` and
/// `abar_i`.
pub fn socle_quotient<F: Field>(
    alg: &StructureConstAlgebra<F>,
) -> Result<StructureConstAlgebra<F>, FindimError> {
    let soc = left_socle(alg)?;
    let n = alg.dim();
    for v in soc.basis() {
        for b in 0..n {
            let e = alg.basis_vector(b);
            if !soc.contains(&alg.mul(&e, &v)) || !soc.contains(&alg.mul(&v, &e)) {
                return Err(FindimError::SocleNotIdeal);
            }
        }
    }
    let keep = soc.complement_indices();
    let pos = |k: usize| keep.iter().position(|&c| c == k).expect("reduced vector off the complement");
    let project = |v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
        soc.echelon()
            .reduce(v)
            .into_iter()
            .map(|(k, c)| (pos(k), c))
            .collect()
    };
    let table = keep
        .iter()
        .map(|&a| keep.iter().map(|&b| project(alg.product(a, b))).collect())
        .collect();
    let labels = keep.iter().map(|&k| alg.labels()[k].clone()).collect();
    let mut q = StructureConstAlgebra::new(alg.field().clone(), labels, table, project(alg.unit()))?;
    q.quiver = alg.quiver.filter(|&m| keep.iter().copied().eq(0..3 * m));
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_field, FieldSpec, QParams, Rationals};
    use crate::findim::{build_deformed, build_lambda_q, DeformationParams};

    #[test]
    fn radical_of_lambda_q() {
        let f = Rationals;
        for m in 1..5 {
            let q = QParams::new(f, (0..m).map(|i| f.from_int(i as i64 + 2)).collect()).unwrap();
            let a = build_lambda_q(&q).unwrap();
            let r = trace_radical(&a).unwrap();
            assert_eq!(r.dim(), 3 * m);
            assert_eq!(Some(r), arrow_radical(&a));
            let soc = left_socle(&a).unwrap();
            assert_eq!(soc.dim(), m);
            assert_eq!(soc, Subspace::span(&f, 4 * m, (3 * m..4 * m).map(|k| a.basis_vector(k))));
        }
    }

    #[test]
    fn finite_field_uses_arrow_ideal() {
        let f = make_field(&FieldSpec::Finite { p: 2, modulus: None }).unwrap();
        let a = build_lambda_q(&QParams::trivial(f, 2).unwrap()).unwrap();
        assert!(matches!(trace_radical(&a), Err(FindimError::UnsupportedCharacteristic(2, 8))));
        assert_eq!(radical(&a).unwrap().dim(), 6);
        assert_eq!(left_socle(&a).unwrap().dim(), 2);
    }

    #[test]
    fn semisimple_algebra() {
        let f = Rationals;
        // K x K
        let table = vec![
            vec![vec![(0, f.one())], vec![]],
            vec![vec![], vec![(1, f.one())]],
        ];
        let a = StructureConstAlgebra::new(f, vec!["u".into(), "v".into()], table, vec![(0, f.one()), (1, f.one())]).unwrap();
        assert_eq!(trace_radical(&a).unwrap().dim(), 0);
        assert_eq!(left_socle(&a).unwrap().dim(), 2);
        assert_eq!(socle_quotient(&a).unwrap().dim(), 0);
    }

    #[test]
    fn quotients() {
        let f = Rationals;
        let q = QParams::new(f, vec![f.from_int(3), f.from_int(-1), f.from_int(2)]).unwrap();
        let a = build_lambda_q(&q).unwrap();
        let qa = socle_quotient(&a).unwrap();
        assert_eq!(qa.dim(), 9);
        for x in 3..9 {
            for y in 3..9 {
                assert!(qa.product(x, y).is_empty());
            }
        }
        let dp = DeformationParams { t: f.from_int(1), b1: f.from_int(3), b2: f.zero() };
        let d = build_deformed(&f, 4, &dp).unwrap();
        let soc = left_socle(&d).unwrap();
        assert_eq!(soc.dim(), 4);
        let lam = build_lambda_q(&QParams::trivial(f, 4).unwrap()).unwrap();
        assert_eq!(socle_quotient(&d).unwrap().format_table(), socle_quotient(&lam).unwrap().format_table());
        let (qd, ql) = (socle_quotient(&d).unwrap(), socle_quotient(&lam).unwrap());
        assert_eq!(qd.quiver_m(), Some(4));
        assert!(crate::findim::rescaling_isomorphism(&qd, &ql).unwrap().is_some());
    }
}
