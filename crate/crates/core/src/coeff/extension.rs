use num_integer::Integer;
use num_rational::BigRational;

use super::finite::is_irreducible;
use super::poly::{Poly, PolyRing};
use super::{CoeffError, Field, PrimeField, Rationals};

/// `Phi_d` by the recursion `x^d - 1 = prod_{e | d} Phi_e`.
pub fn cyclotomic_polynomial(d: u64) -> Poly<BigRational> {
    let ring = PolyRing::new(Rationals);
    let f = Rationals;
    let mut num = ring.monomial(f.one(), d as usize);
    num = ring.sub(&num, &ring.one());
    for e in (1..d).filter(|e| d % e == 0) {
        let (q, r) = ring.div_rem(&num, &cyclotomic_polynomial(e));
        debug_assert!(r.is_zero());
        num = q;
    }
    num
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Cyclotomic(u64),
    Modulus,
}

/// `F[z]/(f)` for a monic irreducible `f`. Elements are reduced polynomials
/// of degree below `deg f`.
#[derive(Clone, Debug)]
pub struct SimpleExtension<F: Field> {
    ring: PolyRing<F>,
    modulus: Poly<F::Elem>,
    kind: Kind,
    torsion: u64,
}

impl SimpleExtension<Rationals> {
    /// The cyclotomic field `Q(zeta_D)`, of dimension `phi(D)` over `Q`.
    pub fn cyclotomic(order: u64) -> Result<Self, CoeffError> {
        if order == 0 {
            return Err(CoeffError::InvalidCyclotomicOrder);
        }
        Ok(Self {
            ring: PolyRing::new(Rationals),
            modulus: cyclotomic_polynomial(order),
            kind: Kind::Cyclotomic(order),
            torsion: 2u64.lcm(&order),
        })
    }

    pub fn cyclotomic_order(&self) -> Option<u64> {
        match self.kind {
            Kind::Cyclotomic(d) => Some(d),
            Kind::Modulus => None,
        }
    }
}

impl SimpleExtension<PrimeField> {
    /// `F_p[z]/(f)`; `coeffs` lists `f` in ascending degree.
    pub fn finite(p: u64, coeffs: &[i64]) -> Result<Self, CoeffError> {
        let base = PrimeField::new(p)?;
        let ring = PolyRing::new(base);
        let f = ring.from_coeffs(coeffs.iter().map(|&c| base.from_int(c)).collect());
        let k = match f.degree() {
            None | Some(0) => return Err(CoeffError::DegenerateModulus),
            Some(k) => k,
        };
        if !is_irreducible(&ring, &f) {
            return Err(CoeffError::ReducibleModulus(p));
        }
        let size = (p as u128)
            .checked_pow(k as u32)
            .filter(|s| *s <= u64::MAX as u128)
            .ok_or(CoeffError::FieldTooLarge(p, k))?;
        let modulus = ring.monic(&f);
        Ok(Self {
            ring,
            modulus,
            kind: Kind::Modulus,
            torsion: (size - 1) as u64,
        })
    }
}

impl<F: Field> SimpleExtension<F> {
    pub fn base(&self) -> &F {
        self.ring.field()
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        &self.modulus
    }

    /// Degree of the extension.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The class of `z`.
    pub fn generator(&self) -> Poly<F::Elem> {
        self.ring.rem(&self.ring.x(), &self.modulus)
    }

    pub fn from_poly(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.ring.rem(p, &self.modulus)
    }

    pub fn from_base(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_poly(&self.ring.constant(c))
    }

    pub fn poly_ring(&self) -> &PolyRing<F> {
        &self.ring
    }
}

impl<F: Field> Field for SimpleExtension<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        self.ring.zero()
    }

    fn one(&self) -> Self::Elem {
        self.from_base(self.base().one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_base(self.base().from_int(n))
    }

    fn from_rational(&self, r: &BigRational) -> Option<Self::Elem> {
        self.base().from_rational(r).map(|c| self.from_base(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ring.add(a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.ring.neg(a)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        self.ring.rem(&self.ring.mul(a, b), &self.modulus)
    }

    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = self.ring.ext_gcd(a, &self.modulus);
        debug_assert_eq!(g.degree(), Some(0));
        Some(self.ring.rem(&s, &self.modulus))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn torsion_bound(&self) -> u64 {
        self.torsion
    }

    fn size(&self) -> Option<u128> {
        self.base()
            .size()
            .map(|q| q.saturating_pow(self.degree() as u32))
    }

    fn element(&self, index: u64) -> Self::Elem {
        match self.base().size() {
            None => self.from_base(self.base().element(index)),
            Some(q) => {
                let q = q as u64;
                let mut rest = index;
                let digits = (0..self.degree())
                    .map(|_| {
                        let d = rest % q;
                        rest /= q;
                        self.base().element(d)
                    })
                    .collect();
                self.ring.from_coeffs(digits)
            }
        }
    }

    fn format(&self, a: &Self::Elem) -> String {
        let body = self.ring.format(a, "z");
        match self.kind {
            Kind::Cyclotomic(d) => format!("{body} mod Phi_{d}"),
            Kind::Modulus => format!(
                "{body} mod ({})",
                self.ring.format(&self.modulus, "z")
            ),
        }
    }

    fn format_plain(&self, a: &Self::Elem) -> String {
        self.ring.format(a, "z")
    }

    fn sqrt(&self, a: &Self::Elem) -> Result<Option<Self::Elem>, CoeffError> {
        if self.degree() == 1 {
            let c = a.coeffs().first().cloned().unwrap_or_else(|| self.base().zero());
            return Ok(self.base().sqrt(&c)?.map(|r| self.from_base(r)));
        }
        match self.size() {
            Some(n) if n <= 1 << 16 => Ok((0..n as u64)
                .map(|i| self.element(i))
                .find(|x| self.mul(x, x) == *a)),
            _ => Err(CoeffError::Unsupported(
                "square roots in a non-trivial number field".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{unity_order, UnityOrder};

    #[test]
    fn cyclotomic_polynomials() {
        let ring = PolyRing::new(Rationals);
        let fmt = |d| ring.format(&cyclotomic_polynomial(d), "x");
        assert_eq!(fmt(1), "x-1");
        assert_eq!(fmt(2), "x+1");
        assert_eq!(fmt(3), "x^2+x+1");
        assert_eq!(fmt(4), "x^2+1");
        assert_eq!(fmt(6), "x^2-x+1");
        assert_eq!(fmt(12), "x^4-x^2+1");
        assert_eq!(cyclotomic_polynomial(30).degree(), Some(8));
    }

    #[test]
    fn cyclotomic_field_dimensions() {
        assert_eq!(SimpleExtension::cyclotomic(3).unwrap().degree(), 2);
        let q = SimpleExtension::cyclotomic(1).unwrap();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.generator(), q.one());
        assert_eq!(
            SimpleExtension::cyclotomic(0).unwrap_err(),
            CoeffError::InvalidCyclotomicOrder
        );
    }

    #[test]
    fn root_of_unity_orders() {
        let f = SimpleExtension::cyclotomic(6).unwrap();
        let z = f.generator();
        assert_eq!(unity_order(&f, &z), Ok(UnityOrder::Finite(6)));
        assert_eq!(unity_order(&f, &f.pow(&z, 2)), Ok(UnityOrder::Finite(3)));
        assert_eq!(unity_order(&f, &f.neg(&z)), Ok(UnityOrder::Finite(3)));
        let one_plus = f.add(&z, &f.one());
        assert_eq!(unity_order(&f, &one_plus), Ok(UnityOrder::Infinite));
        assert_eq!(f.format(&f.sub(&f.pow(&z, 2), &f.one())), "z-2 mod Phi_6");
    }

    #[test]
    fn inverses() {
        let f = SimpleExtension::cyclotomic(5).unwrap();
        let z = f.generator();
        let a = f.add(&f.mul(&z, &z), &f.from_int(3));
        let ai = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &ai), f.one());
    }

    #[test]
    fn four_element_field() {
        let f = SimpleExtension::finite(2, &[1, 1, 1]).unwrap();
        assert_eq!(f.size(), Some(4));
        assert_eq!(f.torsion_bound(), 3);
        let z = f.generator();
        assert_eq!(unity_order(&f, &z), Ok(UnityOrder::Finite(3)));
        assert_eq!(f.format(&z), "z mod (z^2+z+1)");
        assert_eq!(
            SimpleExtension::finite(2, &[1, 0, 1]).unwrap_err(),
            CoeffError::ReducibleModulus(2)
        );
        assert_eq!(
            SimpleExtension::finite(4, &[1, 1, 1]).unwrap_err(),
            CoeffError::CompositeCharacteristic(4)
        );
    }

    #[test]
    fn small_extension_square_roots() {
        let f = SimpleExtension::finite(3, &[1, 0, 1]).unwrap();
        for i in 0..9 {
            let a = f.element(i);
            let r = f.sqrt(&a).unwrap();
            let brute = (0..9).any(|j| {
                let x = f.element(j);
                f.mul(&x, &x) == a
            });
            assert_eq!(r.is_some(), brute);
        }
        // -1 = z^2 in F_3[z]/(z^2+1)
        assert!(f.sqrt(&f.from_int(-1)).unwrap().is_some());
    }
}
