//! The graded centre of `E(Lambda_q)`, degree by degree.
//!
//! An element `z` of length `n` is graded-central when `g z = (-1)^{n l(g)} z g`
//! for every homogeneous `g`. Both sides are multiplicative in `g`, and `E` is
//! generated by its idempotents and arrows, so it suffices to impose the
//! condition for those `3m` elements. The solver does exactly that, as an
//! exact sparse nullspace problem; [`is_central`] checks the full condition
//! against all monomials up to a length bound.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::coeff::{Field, QParams};
use crate::ext::{ExtAlgebra, ExtElement, ExtError, ExtMonomial, Side};
use crate::linalg::{Echelon, SparseVec};

/// Environment variable holding the worker count for parallel degree
/// solving.
pub const WORKERS_ENV: &str = "SOCDEF_WORKERS";

/// Shared worker pool, sized from [`WORKERS_ENV`] when set.
pub fn worker_pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            b = b.num_threads(n);
        }
        b.build().expect("worker pool")
    })
}

/// Constraint rows `g z - sign * z g` for one generator `g`, indexed by the
/// target monomial.
fn add_commutator_rows<F: Field>(
    alg: &ExtAlgebra<F>,
    g: &ExtMonomial,
    n: usize,
    sign: &F::Elem,
    rows: &mut BTreeMap<(usize, usize), BTreeMap<usize, F::Elem>>,
    tag: usize,
) {
    let f = alg.field();
    let left = alg.mult_map(g, Side::Left, n);
    let right = alg.mult_map(g, Side::Right, n);
    for (col, (l, r)) in left.into_iter().zip(right).enumerate() {
        let mut push = |row: usize, c: F::Elem| {
            let e = rows.entry((tag, row)).or_default().entry(col).or_insert_with(|| f.zero());
            *e = f.add(e, &c);
        };
        if let Some((row, c)) = l {
            push(row, c);
        }
        if let Some((row, c)) = r {
            push(row, f.neg(&f.mul(sign, &c)));
        }
    }
}

/// Echelonized basis of the degree-`n` part of the graded centre.
pub fn solve_degree<F: Field>(alg: &Arc<ExtAlgebra<F>>, n: usize) -> Vec<ExtElement<F>> {
    let f = alg.field();
    let m = alg.m();
    let mut rows = BTreeMap::new();
    let one = f.one();
    for k in 0..m {
        add_commutator_rows(alg, &ExtMonomial::idempotent(k), n, &one, &mut rows, 0);
    }
    let sign = f.sign(n as i64);
    for (tag, g) in alg.arrows().iter().enumerate() {
        add_commutator_rows(alg, g, n, &sign, &mut rows, tag + 1);
    }
    let sparse_rows = rows.into_values().map(|r| {
        r.into_iter()
            .filter(|(_, c)| !f.is_zero(c))
            .collect::<SparseVec<F::Elem>>()
    });
    let ncols = alg.grade_dim(n);
    let kernel = Echelon::from_rows(f.clone(), ncols, sparse_rows).kernel();
    let basis = alg.grade_basis(n);
    Echelon::from_rows(f.clone(), ncols, kernel)
        .rows()
        .into_iter()
        .map(|v| {
            ExtElement::from_terms(alg, v.into_iter().map(|(k, c)| (basis[k], c))).unwrap()
        })
        .collect()
}

/// `z g = (-1)^{n l(g)} g z` for every monomial `g` of length at most `bound`.
pub fn is_central<F: Field>(z: &ExtElement<F>, bound: usize) -> Result<bool, ExtError> {
    let n = z.homogeneous_length().ok_or(ExtError::NotHomogeneous)?;
    let alg = z.algebra();
    let f = alg.field();
    for l in 0..=bound {
        let sign = f.sign((n * l) as i64);
        for g in alg.grade_basis(l) {
            let g = ExtElement::monomial(alg, g)?;
            if z.mul(&g)? != g.mul(z)?.scale(&sign) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-degree bases of the graded centre up to a maximum degree.
#[derive(Clone, Debug)]
pub struct CentreBasis<F: Field> {
    alg: Arc<ExtAlgebra<F>>,
    degrees: Vec<Vec<ExtElement<F>>>,
}

impl<F: Field> CentreBasis<F> {
    /// Solves degrees `0..=max_degree` on the shared worker pool.
    pub fn compute(alg: &Arc<ExtAlgebra<F>>, max_degree: usize) -> Self {
        let degrees = worker_pool().install(|| {
            (0..=max_degree)
                .into_par_iter()
                .map(|n| solve_degree(alg, n))
                .collect()
        });
        Self {
            alg: alg.clone(),
            degrees,
        }
    }

    pub fn algebra(&self) -> &Arc<ExtAlgebra<F>> {
        &self.alg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &[ExtElement<F>] {
        &self.degrees[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &ExtElement<F>)> {
        self.degrees
            .iter()
            .enumerate()
            .flat_map(|(n, v)| v.iter().map(move |z| (n, z)))
    }
}

/// `[dim Z^0, ..., dim Z^N]`.
pub fn centre_dims<F: Field>(alg: &Arc<ExtAlgebra<F>>, max_degree: usize) -> Vec<usize> {
    CentreBasis::compute(alg, max_degree).dims()
}

/// A central element of the form `sum_i c_i g_i^{s0} d_i^{t0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralMonomialShape<E> {
    pub s0: usize,
    pub t0: usize,
    pub coeffs: Vec<E>,
}

/// Reads off the shape of `z` if it is supported on cycles `g_i^{s0} d_i^{t0}`
/// with a single `(s0, t0)`.
pub fn central_shape<F: Field>(z: &ExtElement<F>) -> Option<CentralMonomialShape<F::Elem>> {
    let alg = z.algebra();
    let m = alg.m();
    let f = alg.field();
    let (first, _) = z.terms().next()?;
    let (s0, t0) = (first.s, first.t);
    let mut coeffs = vec![f.zero(); m];
    for (mon, c) in z.terms() {
        if mon.s != s0 || mon.t != t0 || !mon.is_cycle(m) {
            return None;
        }
        coeffs[mon.i] = c.clone();
    }
    Some(CentralMonomialShape { s0, t0, coeffs })
}

/// The recurrences and root-of-unity conditions every nonzero central
/// element satisfies:
/// `c_{j+1} = (-1)^{s0} c_j (q_{j+1}..q_{j+t0})^{-1} = (-1)^{t0} c_j (q_{j+1}..q_{j+s0})^{-1}`,
/// `zeta^{t0} = (-1)^{m s0}`, `zeta^{s0} = (-1)^{m t0}`, `s0 = t0 (mod m)`.
pub fn shape_conditions_hold<F: Field>(
    params: &QParams<F>,
    shape: &CentralMonomialShape<F::Elem>,
) -> bool {
    let f = params.field();
    let m = params.m();
    let (s0, t0) = (shape.s0, shape.t0);
    if s0 % m != t0 % m {
        return false;
    }
    let zeta = params.zeta();
    if f.pow(zeta, t0 as u64) != f.sign((m * s0) as i64)
        || f.pow(zeta, s0 as u64) != f.sign((m * t0) as i64)
    {
        return false;
    }
    (0..m).all(|j| {
        let c = &shape.coeffs[j];
        let next = &shape.coeffs[(j + 1) % m];
        let via_t = f.div(
            &f.mul(&f.sign(s0 as i64), c),
            &params.q_interval_product(j as i64 + 1, t0),
        );
        let via_s = f.div(
            &f.mul(&f.sign(t0 as i64), c),
            &params.q_interval_product(j as i64 + 1, s0),
        );
        via_t.as_ref() == Some(next) && via_s.as_ref() == Some(next) && !f.is_zero(c)
    })
}
