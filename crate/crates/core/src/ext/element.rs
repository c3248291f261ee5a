use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use super::{ExtAlgebra, ExtError, ExtMonomial};
use crate::coeff::Field;

/// A finite linear combination of normal-form monomials. Zero coefficients
/// are never stored, and terms iterate in grade order.
#[derive(Clone)]
pub struct ExtElement<F: Field> {
    alg: Arc<ExtAlgebra<F>>,
    terms: BTreeMap<ExtMonomial, F::Elem>,
}

impl<F: Field> ExtElement<F> {
    pub fn zero(alg: &Arc<ExtAlgebra<F>>) -> Self {
        Self {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The unit `e_0 + ... + e_{m-1}`.
    pub fn one(alg: &Arc<ExtAlgebra<F>>) -> Self {
        let f = alg.field();
        Self::from_terms(alg, (0..alg.m()).map(|i| (ExtMonomial::idempotent(i), f.one())))
            .unwrap()
    }

    pub fn monomial(alg: &Arc<ExtAlgebra<F>>, mon: ExtMonomial) -> Result<Self, ExtError> {
        Self::from_terms(alg, [(mon, alg.field().one())])
    }

    /// Sums the given terms; rejects monomials with an origin outside `0..m`.
    pub fn from_terms(
        alg: &Arc<ExtAlgebra<F>>,
        terms: impl IntoIterator<Item = (ExtMonomial, F::Elem)>,
    ) -> Result<Self, ExtError> {
        let mut z = Self::zero(alg);
        for (mon, c) in terms {
            if mon.i >= alg.m() {
                return Err(ExtError::VertexOutOfRange(mon.i, alg.m()));
            }
            z.add_term(mon, c);
        }
        Ok(z)
    }

    pub fn algebra(&self) -> &Arc<ExtAlgebra<F>> {
        &self.alg
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    fn add_term(&mut self, mon: ExtMonomial, c: F::Elem) {
        let f = self.alg.field();
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&mon) {
            Some(old) => {
                let s = f.add(old, &c);
                if f.is_zero(&s) {
                    self.terms.remove(&mon);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(mon, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtMonomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mon: &ExtMonomial) -> F::Elem {
        self.terms
            .get(mon)
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_same(&self, other: &Self) -> Result<(), ExtError> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(ExtError::MixedParams)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExtError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (mon, c) in &other.terms {
            out.add_term(*mon, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExtError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Self {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Self::zero(&self.alg);
        }
        Self {
            alg: self.alg.clone(),
            terms: self.terms.iter().map(|(m, x)| (*m, f.mul(c, x))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExtError> {
        self.check_same(other)?;
        let f = self.field();
        let mut out = Self::zero(&self.alg);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((c, p)) = self.alg.mon_mul(ma, mb) {
                    out.add_term(p, f.mul(&f.mul(ca, cb), &c));
                }
            }
        }
        Ok(out)
    }

    /// `self^k`, with `self^0` the unit.
    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.alg);
        for _ in 0..k {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    pub fn lengths(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.length()).collect()
    }

    pub fn zdegs(&self) -> BTreeSet<i64> {
        self.terms.keys().map(|m| m.zdeg()).collect()
    }

    /// The common length of all terms; zero counts as homogeneous of
    /// length 0.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let l = self.lengths();
        match l.len() {
            0 => Some(0),
            1 => l.into_iter().next(),
            _ => None,
        }
    }

    pub fn homogeneous_zdeg(&self) -> Option<i64> {
        let z = self.zdegs();
        match z.len() {
            0 => Some(0),
            1 => z.into_iter().next(),
            _ => None,
        }
    }

    /// Signed sum such as `g[0]^2 d[0]^2 - 1/2*g[1]^2 d[1]^2`.
    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = self.field();
        let m = self.alg.m();
        let mut out = String::new();
        for (k, (mon, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if f.is_one(&f.neg(c)) {
                (true, String::new())
            } else if f.is_one(c) {
                (false, String::new())
            } else {
                let s = f.format_plain(c);
                let compound = s[1..].contains(['+', '-']);
                match s.strip_prefix('-') {
                    Some(rest) if !compound => (true, format!("{rest}*")),
                    _ if compound => (false, format!("({s})*")),
                    _ => (false, format!("{s}*")),
                }
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&mag);
            out.push_str(&mon.format(m));
        }
        out
    }
}

impl<F: Field> PartialEq for ExtElement<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for ExtElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl<F: Field> fmt::Display for ExtElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{QParams, Rationals};

    fn alg(q: &[i64]) -> Arc<ExtAlgebra<Rationals>> {
        let f = Rationals;
        Arc::new(ExtAlgebra::new(
            QParams::new(f, q.iter().map(|&x| f.from_int(x)).collect()).unwrap(),
        ))
    }

    #[test]
    fn unit_is_neutral() {
        let e = alg(&[2, 3]);
        let z = ExtElement::from_terms(
            &e,
            [
                (ExtMonomial::new(0, 2, 1), Rationals.from_int(3)),
                (ExtMonomial::new(1, 0, 1), Rationals.from_int(-1)),
            ],
        )
        .unwrap();
        let one = ExtElement::one(&e);
        assert_eq!(one.mul(&z).unwrap(), z);
        assert_eq!(z.mul(&one).unwrap(), z);
        assert_eq!(z.format(), "-d[0]^1 + 3*g[0]^2 d[1]^1");
    }

    #[test]
    fn power_with_q_minus_one() {
        // d g = -q^{-1} g d = g d when q = -1
        let e = alg(&[-1]);
        let gd = ExtElement::monomial(&e, ExtMonomial::new(0, 1, 1)).unwrap();
        let sq = gd.power(2);
        assert_eq!(sq, ExtElement::monomial(&e, ExtMonomial::new(0, 2, 2)).unwrap());
    }

    #[test]
    fn mixed_algebras_rejected() {
        let e1 = alg(&[1]);
        let e2 = alg(&[1]);
        let a = ExtElement::one(&e1);
        let b = ExtElement::one(&e2);
        assert_eq!(a.mul(&b).unwrap_err(), ExtError::MixedParams);
        assert_eq!(a.add(&b).unwrap_err(), ExtError::MixedParams);
    }

    #[test]
    fn cancellation_prunes_terms() {
        let e = alg(&[1, 1]);
        let z = ExtElement::monomial(&e, ExtMonomial::new(0, 1, 0)).unwrap();
        assert!(z.sub(&z).unwrap().is_zero());
        assert_eq!(z.sub(&z).unwrap().format(), "0");
    }
}
