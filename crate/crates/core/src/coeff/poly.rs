//! Dense univariate polynomials over an exact field.

use std::fmt::Write;

use super::Field;

/// Coefficients in ascending degree; never carries trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E>(pub(crate) Vec<E>);

impl<E> Poly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.0.last()
    }
}

/// Arithmetic on `Poly<F::Elem>`, parameterised by the coefficient field.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        Self { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> Poly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Poly(Vec::new())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    /// The monomial `c * x^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            return self.zero();
        }
        let mut v = vec![self.field.zero(); k];
        v.push(c);
        Poly(v)
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let n = a.0.len().max(b.0.len());
        let zero = self.field.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.0.get(i).unwrap_or(&zero);
                let y = b.0.get(i).unwrap_or(&zero);
                self.field.add(x, y)
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly(a.0.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &F::Elem, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        Poly(a.0.iter().map(|x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut v = vec![self.field.zero(); a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                let p = self.field.mul(x, y);
                v[i + j] = self.field.add(&v[i + j], &p);
            }
        }
        self.from_coeffs(v)
    }

    /// Euclidean division. Panics on division by the zero polynomial.
    pub fn div_rem(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let db = b.degree().expect("polynomial division by zero");
        let lead_inv = self
            .field
            .inv(b.leading().unwrap())
            .expect("leading coefficient is nonzero");
        let mut rem = a.0.clone();
        let Some(da) = a.degree() else {
            return (self.zero(), self.zero());
        };
        if da < db {
            return (self.zero(), a.clone());
        }
        let mut quot = vec![self.field.zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = self.field.mul(&rem[k + db], &lead_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                let t = self.field.mul(&c, bj);
                rem[k + j] = self.field.sub(&rem[k + j], &t);
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (self.from_coeffs(quot), self.from_coeffs(rem))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.leading() {
            None => self.zero(),
            Some(l) => {
                let li = self.field.inv(l).expect("nonzero leading coefficient");
                self.scale(&li, a)
            }
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn ext_gcd(
        &self,
        a: &Poly<F::Elem>,
        b: &Poly<F::Elem>,
    ) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.field.inv(l).unwrap();
                (
                    self.scale(&li, &r0),
                    self.scale(&li, &s0),
                    self.scale(&li, &t0),
                )
            }
        }
    }

    /// `a^e mod m` by square-and-multiply.
    pub fn pow_mod(&self, a: &Poly<F::Elem>, mut e: u128, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
            base = self.rem(&self.mul(&base, &base), m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.0.iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    /// Renders in the variable `var`, highest degree first, e.g. `z^2-z+1`.
    pub fn format(&self, a: &Poly<F::Elem>, var: &str) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in a.0.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let mut cs = self.field.format_plain(c);
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let unit = cs == "1";
            if k == 0 {
                out.push_str(&cs);
                continue;
            }
            if !unit {
                if cs.contains(['+', '-', ' ']) {
                    let _ = write!(out, "({cs})*");
                } else {
                    let _ = write!(out, "{cs}*");
                }
            }
            out.push_str(var);
            if k > 1 {
                let _ = write!(out, "^{k}");
            }
        }
        out
    }
}
