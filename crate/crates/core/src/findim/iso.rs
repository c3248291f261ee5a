use super::{FindimError, StructureConstAlgebra};
use crate::coeff::{CoeffError, Field};

/// Scalars for `e_i -> e_i`, `a_i -> lambda_i a_i`, `abar_i -> mu_i abar_i`,
/// `s_i -> lambda_i mu_i s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rescaling<E> {
    pub lambda: Vec<E>,
    pub mu: Vec<E>,
}

impl<E: Clone> Rescaling<E> {
    pub fn identity<F: Field<Elem = E>>(f: &F, m: usize) -> Self {
        Self {
            lambda: vec![f.one(); m],
            mu: vec![f.one(); m],
        }
    }
}

fn shape<F: Field>(a: &StructureConstAlgebra<F>, b: &StructureConstAlgebra<F>) -> Result<usize, FindimError> {
    match (a.quiver_m(), b.quiver_m()) {
        (Some(m), Some(n)) if m == n && a.dim() == b.dim() => Ok(m),
        _ => Err(FindimError::ShapeMismatch),
    }
}

/// Exponents of `(lambda_0.., mu_0..)` in the scalar of basis element `k`.
fn kappa_exponents(m: usize, k: usize) -> Vec<i64> {
    let mut e = vec![0; 2 * m];
    let i = k % m;
    match k / m {
        0 => {}
        1 => e[i] = 1,
        2 => e[m + i] = 1,
        _ => {
            e[i] = 1;
            e[m + i] = 1;
        }
    }
    e
}

fn kappa<F: Field>(f: &F, r: &Rescaling<F::Elem>, k: usize) -> F::Elem {
    let m = r.lambda.len();
    let i = k % m;
    match k / m {
        0 => f.one(),
        1 => r.lambda[i].clone(),
        2 => r.mu[i].clone(),
        _ => f.mul(&r.lambda[i], &r.mu[i]),
    }
}

/// Whether the rescaling is an algebra isomorphism `A -> B`: for all basis
/// pairs, `phi(x y) = phi(x) phi(y)`.
pub fn check_rescaling<F: Field>(
    a: &StructureConstAlgebra<F>,
    b: &StructureConstAlgebra<F>,
    r: &Rescaling<F::Elem>,
) -> Result<bool, FindimError> {
    let m = shape(a, b)?;
    let f = a.field();
    if r.lambda.len() != m || r.mu.len() != m {
        return Err(FindimError::ShapeMismatch);
    }
    if r.lambda.iter().chain(&r.mu).any(|x| f.is_zero(x)) {
        return Ok(false);
    }
    let n = a.dim();
    for x in 0..n {
        for y in 0..n {
            let lhs: Vec<_> = a
                .product(x, y)
                .iter()
                .map(|(z, c)| (*z, f.mul(c, &kappa(f, r, *z))))
                .collect();
            let kxy = f.mul(&kappa(f, r, x), &kappa(f, r, y));
            let rhs: Vec<_> = b.product(x, y).iter().map(|(z, c)| (*z, f.mul(c, &kxy))).collect();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn ipow<F: Field>(f: &F, c: &F::Elem, e: i64) -> F::Elem {
    let p = f.pow(c, e.unsigned_abs());
    if e < 0 {
        f.inv(&p).expect("nonzero constant")
    } else {
        p
    }
}

/// Equation `prod v_j^{exps[j]} = value`.
struct Monomial<E> {
    exps: Vec<i64>,
    value: E,
}

/// Finds a rescaling isomorphism `A -> B`, or `None` if none exists.
///
/// Each structure constant gives `kappa_z A^z_{xy} = kappa_x kappa_y B^z_{xy}`,
/// a monomial equation in the unknowns. The system is brought to echelon
/// form over the integers, carrying the constants along multiplicatively;
/// free unknowns are set to 1. Pivots with exponent `+-2` need a square
/// root in the field; larger pivots are reported as unsupported.
pub fn rescaling_isomorphism<F: Field>(
    a: &StructureConstAlgebra<F>,
    b: &StructureConstAlgebra<F>,
) -> Result<Option<Rescaling<F::Elem>>, FindimError> {
    let m = shape(a, b)?;
    let f = a.field();
    let n = a.dim();
    let nv = 2 * m;
    let mut eqs: Vec<Monomial<F::Elem>> = vec![];
    for x in 0..n {
        for y in 0..n {
            let pa = a.product(x, y);
            let pb = b.product(x, y);
            for z in 0..n {
                let ca = pa.iter().find(|(k, _)| *k == z).map(|(_, c)| c);
                let cb = pb.iter().find(|(k, _)| *k == z).map(|(_, c)| c);
                match (ca, cb) {
                    (None, None) => {}
                    (Some(ca), Some(cb)) => {
                        // kappa_z / (kappa_x kappa_y) = B / A
                        let (ex, ey, ez) = (kappa_exponents(m, x), kappa_exponents(m, y), kappa_exponents(m, z));
                        let exps = (0..nv).map(|j| ez[j] - ex[j] - ey[j]).collect();
                        eqs.push(Monomial {
                            exps,
                            value: f.div(cb, ca).unwrap(),
                        });
                    }
                    _ => return Ok(None),
                }
            }
        }
    }

    // integer row reduction
    let mut row = 0;
    let mut pivots = vec![];
    for col in 0..nv {
        loop {
            let nonzero: Vec<usize> = (row..eqs.len()).filter(|&r| eqs[r].exps[col] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&r| eqs[r].exps[col].abs()).unwrap();
            eqs.swap(row, best);
            let mut done = true;
            for r in row + 1..eqs.len() {
                let k = eqs[r].exps[col] / eqs[row].exps[col];
                if k != 0 {
                    let (head, tail) = eqs.split_at_mut(r);
                    let pivot = &head[row];
                    let target = &mut tail[0];
                    for j in 0..nv {
                        target.exps[j] -= k * pivot.exps[j];
                    }
                    target.value = f.mul(&target.value, &ipow(f, &pivot.value, -k));
                }
                if eqs[r].exps[col] != 0 {
                    done = false;
                }
            }
            if done {
                pivots.push(col);
                row += 1;
                break;
            }
        }
    }
    for eq in &eqs[row..] {
        if !f.is_one(&eq.value) {
            return Ok(None);
        }
    }

    let mut v = vec![f.one(); nv];
    for (r, &col) in pivots.iter().enumerate().rev() {
        let eq = &eqs[r];
        let mut rhs = eq.value.clone();
        for j in col + 1..nv {
            if eq.exps[j] != 0 {
                rhs = f.mul(&rhs, &ipow(f, &v[j], -eq.exps[j]));
            }
        }
        let k = eq.exps[col];
        let base = if k < 0 { f.inv(&rhs).unwrap() } else { rhs };
        v[col] = match k.abs() {
            1 => base,
            2 => match f.sqrt(&base)? {
                Some(r) => r,
                None => {
                    return Err(FindimError::Coeff(CoeffError::Unsupported(
                        "rescaling needs a square root that is not in the field".into(),
                    )))
                }
            },
            _ => {
                return Err(FindimError::Coeff(CoeffError::Unsupported(format!(
                    "rescaling equation with exponent {k}"
                ))))
            }
        };
    }
    let r = Rescaling {
        lambda: v[..m].to_vec(),
        mu: v[m..].to_vec(),
    };
    Ok(check_rescaling(a, b, &r)?.then_some(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{QParams, Rationals};
    use crate::findim::build_lambda_q;

    #[test]
    fn identity_on_equal_algebras() {
        let f = Rationals;
        let q = QParams::new(f, vec![f.from_int(2), f.from_int(3)]).unwrap();
        let a = build_lambda_q(&q).unwrap();
        let r = rescaling_isomorphism(&a, &a).unwrap().unwrap();
        assert_eq!(r, Rescaling::identity(&f, 2));
    }

    #[test]
    fn normalisation() {
        let f = Rationals;
        let q = QParams::new(f, vec![f.from_int(2), f.from_int(3), f.from_int(-5)]).unwrap();
        let a = build_lambda_q(&q.normalized()).unwrap();
        let b = build_lambda_q(&q).unwrap();
        let lam = (0..3).map(|i| q.q_interval_product(0, i + 1)).collect();
        let r = Rescaling { lambda: lam, mu: vec![f.one(); 3] };
        assert!(check_rescaling(&a, &b, &r).unwrap());
        assert!(rescaling_isomorphism(&a, &b).unwrap().is_some());
    }

    #[test]
    fn one_vertex_parameters_are_invariant() {
        let f = Rationals;
        let a = build_lambda_q(&QParams::new(f, vec![f.from_int(2)]).unwrap()).unwrap();
        let b = build_lambda_q(&QParams::new(f, vec![f.from_int(3)]).unwrap()).unwrap();
        assert_eq!(rescaling_isomorphism(&a, &b).unwrap(), None);
    }
}
