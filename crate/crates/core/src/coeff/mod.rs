//! Exact coefficient fields and the q-parameter bookkeeping shared by every
//! other module.
//!
//! Four families are provided behind the [`Field`] trait: the rationals,
//! cyclotomic fields `Q(z)/Phi_D`, the rational function field `Q(u)`, and
//! finite fields (prime or given by an irreducible modulus). [`AnyField`] is a
//! runtime handle over all four, used by the command line and the bindings.

mod any;
mod extension;
mod finite;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;
use std::hash::Hash;

use num_rational::BigRational;
use thiserror::Error;

pub use any::{make_field, parse_polynomial, AnyField, FieldScalar, FieldSpec};
pub use extension::{cyclotomic_polynomial, SimpleExtension};
pub use finite::{is_prime, PrimeField};
pub use poly::{Poly, PolyRing};
pub use ratfunc::{RatFunc, RationalFunctions};
pub use rational::Rationals;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("{0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("modulus polynomial is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("modulus polynomial must have degree at least 1")]
    DegenerateModulus,
    #[error("cyclotomic order must be at least 1")]
    InvalidCyclotomicOrder,
    #[error("field of order {0}^{1} is too large")]
    FieldTooLarge(u64, usize),
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("q_{0} is zero")]
    ZeroParameter(usize),
    #[error("at least one q-parameter is required")]
    EmptyParameters,
    #[error("unsupported in this field: {0}")]
    Unsupported(String),
    #[error("cannot represent {0} in this field")]
    NotRepresentable(String),
}

/// An exact field. Elements carry no reference to their field; every
/// operation goes through the field value, which is cheap to clone and
/// read-only after construction.
///
/// `Elem` equality must coincide with field equality: every implementation
/// keeps its elements in a canonical form.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// `None` when the denominator vanishes in this field.
    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    /// Every root of unity in the field has order dividing this bound:
    /// `lcm(2, D)` for `Q(zeta_D)`, `p^k - 1` for `F_{p^k}`, 2 for `Q` and
    /// `Q(u)`.
    fn torsion_bound(&self) -> u64;

    /// Number of elements, or `None` for infinite fields.
    fn size(&self) -> Option<u128>;

    /// An injective enumeration of field elements, used to draw samples.
    /// Wraps around for finite fields.
    fn element(&self, index: u64) -> Self::Elem;

    /// Canonical string used in reports.
    fn format(&self, a: &Self::Elem) -> String;

    /// Form used for polynomial coefficients; differs from [`Field::format`]
    /// only where the latter carries a suffix.
    fn format_plain(&self, a: &Self::Elem) -> String {
        self.format(a)
    }

    /// A square root if one exists in the field. Fields that cannot decide
    /// squareness return [`CoeffError::Unsupported`].
    fn sqrt(&self, a: &Self::Elem) -> Result<Option<Self::Elem>, CoeffError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `(-1)^e`, which is 1 in characteristic 2.
    fn sign(&self, e: i64) -> Self::Elem {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }
}

/// Multiplicative order of a nonzero field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum UnityOrder {
    Finite(u64),
    Infinite,
}

impl UnityOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            UnityOrder::Finite(d) => Some(d),
            UnityOrder::Infinite => None,
        }
    }
}

impl fmt::Display for UnityOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnityOrder::Finite(d) => write!(f, "{d}"),
            UnityOrder::Infinite => f.write_str("inf"),
        }
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least `d >= 1` with `x^d = 1`, or infinite.
///
/// Roots of unity in each supported field have order dividing the field's
/// torsion bound `B`, so `x^B != 1` proves the order infinite; otherwise the
/// order is found by stripping prime factors from `B`.
pub fn unity_order<F: Field>(field: &F, x: &F::Elem) -> Result<UnityOrder, CoeffError> {
    if field.is_zero(x) {
        return Err(CoeffError::ZeroOrder);
    }
    let bound = field.torsion_bound();
    if !field.is_one(&field.pow(x, bound)) {
        return Ok(UnityOrder::Infinite);
    }
    let mut n = bound;
    for l in prime_factors(bound) {
        while n % l == 0 && field.is_one(&field.pow(x, n / l)) {
            n /= l;
        }
    }
    Ok(UnityOrder::Finite(n))
}

/// The deformation parameters `q = (q_0, ..., q_{m-1})` together with their
/// product `zeta` and its multiplicative order.
#[derive(Clone, Debug)]
pub struct QParams<F: Field> {
    field: F,
    q: Vec<F::Elem>,
    zeta: F::Elem,
    order: UnityOrder,
}

impl<F: Field> QParams<F> {
    pub fn new(field: F, q: Vec<F::Elem>) -> Result<Self, CoeffError> {
        if q.is_empty() {
            return Err(CoeffError::EmptyParameters);
        }
        if let Some(i) = q.iter().position(|x| field.is_zero(x)) {
            return Err(CoeffError::ZeroParameter(i));
        }
        let zeta = q.iter().fold(field.one(), |acc, x| field.mul(&acc, x));
        let order = unity_order(&field, &zeta)?;
        Ok(Self {
            field,
            q,
            zeta,
            order,
        })
    }

    /// `q = (1, ..., 1)`, the undeformed algebra.
    pub fn trivial(field: F, m: usize) -> Result<Self, CoeffError> {
        let one = field.one();
        Self::new(field, vec![one; m])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.q.len()
    }

    pub fn q_values(&self) -> &[F::Elem] {
        &self.q
    }

    /// `q_k` with the index read modulo `m`.
    pub fn q(&self, k: i64) -> &F::Elem {
        &self.q[k.rem_euclid(self.m() as i64) as usize]
    }

    pub fn zeta(&self) -> &F::Elem {
        &self.zeta
    }

    pub fn order(&self) -> UnityOrder {
        self.order
    }

    /// `q_k q_{k+1} ... q_{k+len-1}` with indices modulo `m`; 1 when `len = 0`.
    pub fn q_interval_product(&self, k: i64, len: usize) -> F::Elem {
        let f = &self.field;
        let full = len / self.m();
        let mut acc = f.pow(&self.zeta, full as u64);
        for j in 0..(len % self.m()) as i64 {
            acc = f.mul(&acc, self.q(k + j));
        }
        acc
    }

    /// The same parameters normalised to `(zeta, 1, ..., 1)`.
    pub fn normalized(&self) -> Self {
        let mut q = vec![self.field.one(); self.m()];
        q[0] = self.zeta.clone();
        Self {
            field: self.field.clone(),
            q,
            zeta: self.zeta.clone(),
            order: self.order,
        }
    }

    pub fn format_q(&self) -> Vec<String> {
        self.q.iter().map(|x| self.field.format(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn interval_product_examples() {
        let f = Rationals;
        let p = QParams::new(f, vec![rat(2, 1), rat(3, 1)]).unwrap();
        assert_eq!(p.q_interval_product(1, 0), rat(1, 1));
        assert_eq!(p.q_interval_product(1, 2), rat(6, 1));
        assert_eq!(p.q_interval_product(-3, 2), rat(6, 1));
        for k in -4..4 {
            assert_eq!(p.q_interval_product(k, 2), *p.zeta());
        }
        // len > m wraps around the cycle: q1 q0 q1 = 18
        assert_eq!(p.q_interval_product(1, 3), rat(18, 1));
    }

    #[test]
    fn unity_orders() {
        let f = Rationals;
        assert_eq!(unity_order(&f, &rat(1, 1)), Ok(UnityOrder::Finite(1)));
        assert_eq!(unity_order(&f, &rat(-1, 1)), Ok(UnityOrder::Finite(2)));
        assert_eq!(unity_order(&f, &rat(2, 1)), Ok(UnityOrder::Infinite));
        assert_eq!(unity_order(&f, &rat(0, 1)), Err(CoeffError::ZeroOrder));
    }

    #[test]
    fn zero_parameter_rejected() {
        let f = Rationals;
        let err = QParams::new(f, vec![rat(1, 1), rat(0, 1)]).unwrap_err();
        assert_eq!(err, CoeffError::ZeroParameter(1));
        assert_eq!(
            QParams::new(Rationals, vec![]).unwrap_err(),
            CoeffError::EmptyParameters
        );
    }

    #[test]
    fn prime_factorisation() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(97), vec![97]);
        assert_eq!(prime_factors(6 * 49), vec![2, 3, 7]);
    }
}
