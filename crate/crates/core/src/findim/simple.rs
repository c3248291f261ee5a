use super::{FindimError, StructureConstAlgebra, Subspace};
use crate::coeff::Field;
use crate::linalg::{dense_nullspace, SparseVec};

/// `A * x` as a subspace.
pub fn left_ideal<F: Field>(alg: &StructureConstAlgebra<F>, x: &SparseVec<F::Elem>) -> Subspace<F> {
    let vs = (0..alg.dim()).map(|b| alg.mul(&alg.basis_vector(b), x));
    Subspace::span(alg.field(), alg.dim(), vs)
}

fn arrow<F: Field>(alg: &StructureConstAlgebra<F>, i: usize) -> Result<SparseVec<F::Elem>, FindimError> {
    let m = alg
        .quiver_m()
        .ok_or_else(|| FindimError::NotApplicable("algebra has no quiver basis".into()))?;
    if i >= m {
        return Err(FindimError::NotApplicable(format!("vertex {i} out of range")));
    }
    Ok(alg.basis_vector(m + i))
}

/// Matrices of the basis elements acting on a left ideal, in the ideal's
/// echelon basis: `rho[b][r][c]` is the `r`-th coordinate of `b * v_c`.
fn action<F: Field>(alg: &StructureConstAlgebra<F>, v: &Subspace<F>) -> Vec<Vec<Vec<F::Elem>>> {
    let f = alg.field();
    let basis = v.basis();
    let d = basis.len();
    (0..alg.dim())
        .map(|b| {
            let mut mat = vec![vec![f.zero(); d]; d];
            for (c, vc) in basis.iter().enumerate() {
                let img = alg.mul(&alg.basis_vector(b), vc);
                let coords = v.echelon().coordinates(&img).expect("left ideal is closed");
                for (r, x) in coords.into_iter().enumerate() {
                    mat[r][c] = x;
                }
            }
            mat
        })
        .collect()
}

fn roots_of_quadratic<F: Field>(f: &F, tr: &F::Elem, det: &F::Elem) -> Result<Vec<F::Elem>, FindimError> {
    // x^2 - tr x + det
    if f.characteristic() == 2 {
        let size = f.size().ok_or_else(|| {
            FindimError::NotApplicable("root finding in an infinite field of characteristic 2".into())
        })?;
        return Ok((0..size as u64)
            .map(|k| f.element(k))
            .filter(|x| f.is_zero(&f.add(&f.sub(&f.mul(x, x), &f.mul(tr, x)), det)))
            .collect());
    }
    let disc = f.sub(&f.mul(tr, tr), &f.mul(&f.from_int(4), det));
    let two_inv = f.inv(&f.from_int(2)).unwrap();
    Ok(match f.sqrt(&disc)? {
        None => vec![],
        Some(r) => vec![f.mul(&f.add(tr, &r), &two_inv), f.mul(&f.sub(tr, &r), &two_inv)],
    })
}

/// Whether `A a_i` is a 2-dimensional simple module. A 1-dimensional ideal
/// gives `false`; other dimensions are not applicable.
///
/// A submodule of a 2-dimensional module is a common invariant line. If every
/// basis element acts by a scalar, every line is one. Otherwise any invariant
/// line is an eigenline of a fixed non-scalar action matrix, so it is enough
/// to test its (at most two) eigenlines; with no eigenvalue in the field
/// there is none.
pub fn two_dim_simple_check<F: Field>(alg: &StructureConstAlgebra<F>, i: usize) -> Result<bool, FindimError> {
    let f = alg.field();
    let v = left_ideal(alg, &arrow(alg, i)?);
    match v.dim() {
        1 => return Ok(false),
        2 => {}
        d => return Err(FindimError::NotApplicable(format!("A a_{i} has dimension {d}"))),
    }
    let rho = action(alg, &v);
    let is_scalar = |m: &Vec<Vec<F::Elem>>| f.is_zero(&m[0][1]) && f.is_zero(&m[1][0]) && m[0][0] == m[1][1];
    let Some(mat) = rho.iter().find(|m| !is_scalar(m)) else {
        return Ok(false);
    };
    let tr = f.add(&mat[0][0], &mat[1][1]);
    let det = f.sub(&f.mul(&mat[0][0], &mat[1][1]), &f.mul(&mat[0][1], &mat[1][0]));
    for ev in roots_of_quadratic(f, &tr, &det)? {
        let shifted = vec![
            vec![f.sub(&mat[0][0], &ev), mat[0][1].clone()],
            vec![mat[1][0].clone(), f.sub(&mat[1][1], &ev)],
        ];
        for line in dense_nullspace(f, &shifted, 2) {
            let invariant = rho.iter().all(|m| {
                let img = [
                    f.add(&f.mul(&m[0][0], &line[0]), &f.mul(&m[0][1], &line[1])),
                    f.add(&f.mul(&m[1][0], &line[0]), &f.mul(&m[1][1], &line[1])),
                ];
                // img is parallel to line
                f.is_zero(&f.sub(&f.mul(&img[0], &line[1]), &f.mul(&img[1], &line[0])))
            });
            if invariant {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `dim Hom_A(A a_i, A a_j)`.
pub fn hom_dimension<F: Field>(alg: &StructureConstAlgebra<F>, i: usize, j: usize) -> Result<usize, FindimError> {
    let f = alg.field();
    let vi = left_ideal(alg, &arrow(alg, i)?);
    let vj = left_ideal(alg, &arrow(alg, j)?);
    let (di, dj) = (vi.dim(), vj.dim());
    let (ri, rj) = (action(alg, &vi), action(alg, &vj));
    // unknown X (dj x di), entry (r, c) at r*di + c; X rho_i(b) - rho_j(b) X = 0
    let mut rows = vec![];
    for (mi, mj) in ri.iter().zip(&rj) {
        for r in 0..dj {
            for c in 0..di {
                let mut row = vec![f.zero(); dj * di];
                for k in 0..di {
                    row[r * di + k] = f.add(&row[r * di + k], &mi[k][c]);
                }
                for k in 0..dj {
                    row[k * di + c] = f.sub(&row[k * di + c], &mj[r][k]);
                }
                rows.push(row);
            }
        }
    }
    Ok(dense_nullspace(f, &rows, dj * di).len())
}

/// `(dim e_0 M, ..., dim e_{m-1} M)` for `M = A a_i`.
pub fn dimension_vector<F: Field>(alg: &StructureConstAlgebra<F>, i: usize) -> Result<Vec<usize>, FindimError> {
    let m = alg.quiver_m().ok_or(FindimError::ShapeMismatch)?;
    let v = left_ideal(alg, &arrow(alg, i)?);
    let f = alg.field();
    Ok((0..m)
        .map(|k| {
            let images = v.basis().into_iter().map(|x| alg.mul(&alg.basis_vector(k), &x));
            Subspace::span(f, alg.dim(), images).dim()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{QParams, Rationals};
    use crate::findim::{build_deformed, build_lambda_q, DeformationParams};

    #[test]
    fn deformed_ideals_are_simple_and_distinct() {
        let f = Rationals;
        let dp = DeformationParams { t: f.one(), b1: f.zero(), b2: f.one() };
        let a = build_deformed(&f, 4, &dp).unwrap();
        for i in 0..4 {
            assert!(two_dim_simple_check(&a, i).unwrap(), "i = {i}");
            assert_eq!(hom_dimension(&a, i, i).unwrap(), 1);
            for j in 0..4 {
                if i != j {
                    assert_eq!(hom_dimension(&a, i, j).unwrap(), 0);
                }
            }
        }
        assert_eq!(dimension_vector(&a, 0).unwrap(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn undeformed_ideal_is_not_simple() {
        let f = Rationals;
        let a = build_lambda_q(&QParams::trivial(f, 4).unwrap()).unwrap();
        assert!(!two_dim_simple_check(&a, 0).unwrap());
    }
}
