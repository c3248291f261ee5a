use std::collections::BTreeMap;

use crate::coeff::Field;

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
/// The map order on exponent vectors is lexicographic, which serves as the
/// monomial order for exact division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<E> {
    terms: BTreeMap<Vec<u32>, E>,
}

impl<E> MPoly<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &E)> {
        self.terms.iter()
    }

    fn leading(&self) -> Option<(&Vec<u32>, &E)> {
        self.terms.iter().next_back()
    }
}

#[derive(Clone, Debug)]
pub struct MPolyRing<F: Field> {
    field: F,
    nvars: usize,
}

impl<F: Field> MPolyRing<F> {
    pub fn new(field: F, nvars: usize) -> Self {
        Self { field, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn zero(&self) -> MPoly<F::Elem> {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: F::Elem) -> MPoly<F::Elem> {
        let mut p = self.zero();
        if !self.field.is_zero(&c) {
            p.terms.insert(vec![0; self.nvars], c);
        }
        p
    }

    /// `sum_k coeffs[k] * x_k`.
    pub fn linear(&self, coeffs: &[F::Elem]) -> MPoly<F::Elem> {
        let mut p = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !self.field.is_zero(c) {
                let mut e = vec![0; self.nvars];
                e[k] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    fn add_term(&self, p: &mut MPoly<F::Elem>, e: Vec<u32>, c: F::Elem) {
        use std::collections::btree_map::Entry;
        match p.terms.entry(e) {
            Entry::Vacant(v) => {
                if !self.field.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn sub(&self, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>) -> MPoly<F::Elem> {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            self.add_term(&mut out, e.clone(), self.field.neg(c));
        }
        out
    }

    pub fn mul(&self, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>) -> MPoly<F::Elem> {
        let mut out = self.zero();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, e, self.field.mul(ca, cb));
            }
        }
        out
    }

    /// `a / b` when `b` divides `a` exactly, else `None`.
    pub fn div_exact(&self, a: &MPoly<F::Elem>, b: &MPoly<F::Elem>) -> Option<MPoly<F::Elem>> {
        let (lb_e, lb_c) = b.leading()?;
        let lb_inv = self.field.inv(lb_c)?;
        let mut rem = a.clone();
        let mut quot = self.zero();
        while let Some((le, lc)) = rem.leading() {
            if le.iter().zip(lb_e).any(|(x, y)| x < y) {
                return None;
            }
            let e: Vec<u32> = le.iter().zip(lb_e).map(|(x, y)| x - y).collect();
            let c = self.field.mul(lc, &lb_inv);
            let mut t = self.zero();
            t.terms.insert(e.clone(), c.clone());
            rem = self.sub(&rem, &self.mul(&t, b));
            self.add_term(&mut quot, e, c);
        }
        Some(quot)
    }

    /// Value at a point.
    pub fn eval(&self, p: &MPoly<F::Elem>, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        p.terms.iter().fold(f.zero(), |acc, (e, c)| {
            let m = e
                .iter()
                .zip(point)
                .fold(c.clone(), |m, (k, x)| f.mul(&m, &f.pow(x, *k as u64)));
            f.add(&acc, &m)
        })
    }
}

/// Fraction-free (Bareiss) determinant of a square matrix of polynomials.
pub fn bareiss_determinant<F: Field>(
    ring: &MPolyRing<F>,
    mut a: Vec<Vec<MPoly<F::Elem>>>,
) -> MPoly<F::Elem> {
    let n = a.len();
    if n == 0 {
        return ring.constant(ring.field.one());
    }
    let mut negate = false;
    let mut prev = ring.constant(ring.field.one());
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return ring.zero();
            };
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&a[k][k], &a[i][j]),
                    &ring.mul(&a[i][k], &a[k][j]),
                );
                a[i][j] = ring
                    .div_exact(&num, &prev)
                    .expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        ring.sub(&ring.zero(), &det)
    } else {
        det
    }
}
