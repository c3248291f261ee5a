use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::poly::{Poly, PolyRing};
use super::{prime_factors, CoeffError, Field};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `F_p`, elements stored as residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, CoeffError> {
        if !is_prime(p) {
            return Err(CoeffError::CompositeCharacteristic(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }

    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow_mod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_mod(acc, a);
            }
            a = self.mul_mod(a, a);
            e >>= 1;
        }
        acc
    }

    fn tonelli_shanks(&self, n: u64) -> Option<u64> {
        let p = self.p;
        if n == 0 || p == 2 {
            return Some(n);
        }
        if self.pow_mod(n, (p - 1) / 2) != 1 {
            return None;
        }
        let (mut q, mut s) = (p - 1, 0u32);
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| self.pow_mod(z, (p - 1) / 2) == p - 1)?;
        let mut c = self.pow_mod(z, q);
        let mut r = self.pow_mod(n, q.div_ceil(2));
        let mut t = self.pow_mod(n, q);
        let mut m = s;
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul_mod(tt, tt);
                i += 1;
            }
            let b = self.pow_mod(c, 1 << (m - i - 1));
            r = self.mul_mod(r, b);
            c = self.mul_mod(b, b);
            t = self.mul_mod(t, c);
            m = i;
        }
        Some(r)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_int(&self, n: i64) -> u64 {
        self.reduce(n as i128)
    }

    fn from_rational(&self, r: &BigRational) -> Option<u64> {
        let p = BigInt::from(self.p);
        let n = r.numer().mod_floor(&p).to_u64()?;
        let d = r.denom().mod_floor(&p).to_u64()?;
        self.inv(&d).map(|di| self.mul_mod(n, di))
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mul_mod(*a, *b)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow_mod(*a, self.p - 2))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn torsion_bound(&self) -> u64 {
        self.p - 1
    }

    fn size(&self) -> Option<u128> {
        Some(self.p as u128)
    }

    fn element(&self, index: u64) -> u64 {
        index % self.p
    }

    fn format(&self, a: &u64) -> String {
        format!("{a} mod {}", self.p)
    }

    fn format_plain(&self, a: &u64) -> String {
        a.to_string()
    }

    fn sqrt(&self, a: &u64) -> Result<Option<u64>, CoeffError> {
        Ok(self.tonelli_shanks(*a))
    }

    fn pow(&self, a: &u64, e: u64) -> u64 {
        self.pow_mod(*a, e)
    }
}

/// Rabin's irreducibility test for a polynomial over `F_p`.
pub(crate) fn is_irreducible(ring: &PolyRing<PrimeField>, f: &Poly<u64>) -> bool {
    let Some(n) = f.degree() else {
        return false;
    };
    if n == 0 {
        return false;
    }
    let f = ring.monic(f);
    let p = ring.field().modulus() as u128;
    let x = ring.x();
    // frob[k] = x^(p^k) mod f
    let mut frob = vec![ring.rem(&x, &f)];
    for k in 1..=n {
        let next = ring.pow_mod(&frob[k - 1], p, &f);
        frob.push(next);
    }
    if ring.sub(&frob[n], &ring.rem(&x, &f)) != ring.zero() {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let k = n / r as usize;
        let g = ring.gcd(&ring.sub(&frob[k], &x), &f);
        g.degree() == Some(0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(
            PrimeField::new(9).unwrap_err(),
            CoeffError::CompositeCharacteristic(9)
        );
    }

    #[test]
    fn two_element_field() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(f.characteristic(), 2);
        assert_eq!(f.neg(&1), 1);
        assert_eq!(f.sign(1), f.one());
        assert_eq!(f.size(), Some(2));
    }

    #[test]
    fn square_roots_mod_p() {
        for p in [2u64, 3, 5, 7, 13, 17, 97] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                let brute = (0..p).any(|x| f.mul(&x, &x) == a);
                let r = f.sqrt(&a).unwrap();
                assert_eq!(r.is_some(), brute, "p={p} a={a}");
                if let Some(r) = r {
                    assert_eq!(f.mul(&r, &r), a);
                }
            }
        }
    }

    #[test]
    fn rabin_test() {
        let f = PrimeField::new(2).unwrap();
        let ring = PolyRing::new(f);
        // x^2 + x + 1 irreducible, x^2 + 1 = (x + 1)^2 not
        assert!(is_irreducible(&ring, &ring.from_coeffs(vec![1, 1, 1])));
        assert!(!is_irreducible(&ring, &ring.from_coeffs(vec![1, 0, 1])));
        // x^3 + x + 1 irreducible over F_2, x^4 + x^2 + 1 = (x^2+x+1)^2 not
        assert!(is_irreducible(&ring, &ring.from_coeffs(vec![1, 1, 0, 1])));
        assert!(!is_irreducible(&ring, &ring.from_coeffs(vec![1, 0, 1, 0, 1])));
        let f3 = PrimeField::new(3).unwrap();
        let r3 = PolyRing::new(f3);
        // x^2 + 1 irreducible over F_3
        assert!(is_irreducible(&r3, &r3.from_coeffs(vec![1, 0, 1])));
    }

    #[test]
    fn rationals_reduce_mod_p() {
        let f = PrimeField::new(7).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half), Some(4));
        let seventh = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert_eq!(f.from_rational(&seventh), None);
    }
}
