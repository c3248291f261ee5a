use num_rational::BigRational;

use super::poly::{Poly, PolyRing};
use super::{CoeffError, Field, Rationals};

/// A reduced fraction of polynomials over `Q` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly<BigRational>,
    den: Poly<BigRational>,
}

impl RatFunc {
    pub fn numerator(&self) -> &Poly<BigRational> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<BigRational> {
        &self.den
    }
}

/// The rational function field `Q(u)`. Its only roots of unity are `±1`,
/// and any nonconstant element has infinite order.
#[derive(Clone, Debug)]
pub struct RationalFunctions {
    ring: PolyRing<Rationals>,
}

impl Default for RationalFunctions {
    fn default() -> Self {
        Self::new()
    }
}

impl RationalFunctions {
    pub fn new() -> Self {
        Self {
            ring: PolyRing::new(Rationals),
        }
    }

    /// The indeterminate `u`.
    pub fn indeterminate(&self) -> RatFunc {
        RatFunc {
            num: self.ring.x(),
            den: self.ring.one(),
        }
    }

    /// Builds `num/den` in lowest terms. Panics if `den` is zero.
    pub fn fraction(&self, num: Poly<BigRational>, den: Poly<BigRational>) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: self.ring.one(),
            };
        }
        let g = self.ring.gcd(&num, &den);
        let (num, _) = self.ring.div_rem(&num, &g);
        let (den, _) = self.ring.div_rem(&den, &g);
        let lead = den.leading().unwrap().clone();
        let li = Rationals.inv(&lead).unwrap();
        RatFunc {
            num: self.ring.scale(&li, &num),
            den: self.ring.scale(&li, &den),
        }
    }

    pub fn is_constant(&self, a: &RatFunc) -> bool {
        a.num.degree().unwrap_or(0) == 0 && a.den.degree() == Some(0)
    }
}

impl Field for RationalFunctions {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc {
            num: self.ring.zero(),
            den: self.ring.one(),
        }
    }

    fn one(&self) -> RatFunc {
        RatFunc {
            num: self.ring.one(),
            den: self.ring.one(),
        }
    }

    fn from_int(&self, n: i64) -> RatFunc {
        RatFunc {
            num: self.ring.constant(Rationals.from_int(n)),
            den: self.ring.one(),
        }
    }

    fn from_rational(&self, r: &BigRational) -> Option<RatFunc> {
        Some(RatFunc {
            num: self.ring.constant(r.clone()),
            den: self.ring.one(),
        })
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.den == b.den {
            return self.fraction(self.ring.add(&a.num, &b.num), a.den.clone());
        }
        let num = self.ring.add(
            &self.ring.mul(&a.num, &b.den),
            &self.ring.mul(&b.num, &a.den),
        );
        self.fraction(num, self.ring.mul(&a.den, &b.den))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        self.fraction(
            self.ring.mul(&a.num, &b.num),
            self.ring.mul(&a.den, &b.den),
        )
    }

    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        (!a.num.is_zero()).then(|| self.fraction(a.den.clone(), a.num.clone()))
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
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

    fn element(&self, index: u64) -> RatFunc {
        let c = Rationals.element(index);
        self.from_rational(&c).unwrap()
    }

    fn format(&self, a: &RatFunc) -> String {
        let num = self.ring.format(&a.num, "u");
        if a.den.degree() == Some(0) {
            return num;
        }
        let den = self.ring.format(&a.den, "u");
        let wrap = |s: String| {
            if s.contains(['+', '*', '/', '^']) || s[1..].contains('-') {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(num), wrap(den))
    }

    fn sqrt(&self, a: &RatFunc) -> Result<Option<RatFunc>, CoeffError> {
        if self.is_constant(a) {
            let c = a.num.coeffs().first().cloned().unwrap_or_else(|| Rationals.zero());
            return Ok(Rationals.sqrt(&c)?.map(|r| self.from_rational(&r).unwrap()));
        }
        Err(CoeffError::Unsupported(
            "square roots of nonconstant rational functions".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{unity_order, UnityOrder};

    #[test]
    fn indeterminate_has_infinite_order() {
        let f = RationalFunctions::new();
        let u = f.indeterminate();
        assert_eq!(unity_order(&f, &u), Ok(UnityOrder::Infinite));
        assert_eq!(unity_order(&f, &f.from_int(-1)), Ok(UnityOrder::Finite(2)));
        assert_eq!(f.format(&u), "u");
    }

    #[test]
    fn reduction_to_lowest_terms() {
        let f = RationalFunctions::new();
        let u = f.indeterminate();
        let one = f.one();
        // (u^2 - 1)/(u - 1) = u + 1
        let num = f.sub(&f.mul(&u, &u), &one);
        let den = f.sub(&u, &one);
        let q = f.div(&num, &den).unwrap();
        assert_eq!(q, f.add(&u, &one));
        assert_eq!(f.format(&q), "u+1");
        let inv = f.inv(&f.mul(&u, &f.from_int(2))).unwrap();
        assert_eq!(f.format(&inv), "(1/2)/u");
        assert_eq!(f.mul(&inv, &f.mul(&u, &f.from_int(2))), one);
    }
}
