use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CoeffError, Field};

/// The rational numbers, as reduced fractions with positive denominator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(&self, r: &BigRational) -> Option<BigRational> {
        Some(r.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn torsion_bound(&self) -> u64 {
        2
    }

    fn size(&self) -> Option<u128> {
        None
    }

    /// 0, 1, -1, 2, -2, ...
    fn element(&self, index: u64) -> BigRational {
        let k = index.div_ceil(2) as i64;
        self.from_int(if index % 2 == 1 { k } else { -k })
    }

    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }

    fn sqrt(&self, a: &BigRational) -> Result<Option<BigRational>, CoeffError> {
        Ok(exact_sqrt(a.numer())
            .zip(exact_sqrt(a.denom()))
            .map(|(n, d)| BigRational::new(n, d)))
    }
}
