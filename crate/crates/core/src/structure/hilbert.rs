use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// `K[x, y, w] / <w^p - eps x y>` with generators in lengths `lx`, `ly`,
/// `lw`. Only the degree data matter for its Hilbert series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedRing {
    pub lx: usize,
    pub ly: usize,
    pub lw: usize,
    pub p: usize,
}

impl PresentedRing {
    /// Exponents `a` of the numerator `1 - t^a` and of the denominator
    /// factors `1 - t^b`.
    fn series(&self) -> (Vec<usize>, Vec<usize>) {
        (vec![self.p * self.lw], vec![self.lx, self.ly, self.lw])
    }
}

/// The graded centre, either `K` or a presented ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CentreShape {
    Trivial,
    Presented(PresentedRing),
}

impl CentreShape {
    fn series(&self) -> (Vec<usize>, Vec<usize>) {
        match self {
            CentreShape::Trivial => (vec![], vec![]),
            CentreShape::Presented(r) => r.series(),
        }
    }

    pub fn hilbert_coefficients(&self, max_degree: usize) -> Vec<u64> {
        let (num, den) = self.series();
        series_coefficients(&num, &den, max_degree)
    }

    /// `lcm` of the denominator exponents (1 for `K`). Along `n = kP + r`
    /// the partial sums of the coefficients are an exact polynomial in `k`.
    pub fn growth_period(&self) -> usize {
        self.series().1.into_iter().fold(1, |acc, b| acc.lcm(&b))
    }
}

/// Partial sums `dims[0] + ... + dims[kP - 1]` for every `k >= 1` the data
/// reaches.
pub fn partial_sum_samples(dims: &[usize], period: usize) -> Vec<i128> {
    let mut out = vec![];
    let mut acc = 0i128;
    for (n, &d) in dims.iter().enumerate() {
        acc += d as i128;
        if (n + 1) % period == 0 {
            out.push(acc);
        }
    }
    out
}

/// Degree of the polynomial through equally spaced values, when the data
/// determine it: the least `k` whose `(k+1)`-th differences vanish, provided
/// at least one such difference was computed.
pub fn growth_degree(values: &[i128]) -> Option<usize> {
    let mut cur = values.to_vec();
    for k in 0..values.len().saturating_sub(1) {
        let next: Vec<i128> = cur.windows(2).map(|w| w[1] - w[0]).collect();
        if next.iter().all(|&x| x == 0) {
            return Some(k);
        }
        cur = next;
    }
    None
}

/// Coefficients of `prod (1 - t^a) / prod (1 - t^b)` through `t^max_degree`.
fn series_coefficients(num: &[usize], den: &[usize], max_degree: usize) -> Vec<u64> {
    let mut c = vec![0i128; max_degree + 1];
    c[0] = 1;
    for &a in num {
        for n in (a..=max_degree).rev() {
            c[n] -= c[n - a];
        }
    }
    for &b in den {
        for n in b..=max_degree {
            c[n] += c[n - b];
        }
    }
    c.into_iter()
        .map(|x| u64::try_from(x).expect("Hilbert coefficients are nonnegative"))
        .collect()
}

pub fn hilbert_coefficients(ring: &PresentedRing, max_degree: usize) -> Vec<u64> {
    CentreShape::Presented(*ring).hilbert_coefficients(max_degree)
}

/// Pole order of the Hilbert series at `t = 1`: the number of denominator
/// factors minus the order of vanishing of the numerator there.
pub fn krull_dimension(shape: &CentreShape) -> usize {
    let (num, den) = shape.series();
    let mut poly = vec![1i128];
    for a in num {
        let mut next = vec![0i128; poly.len() + a];
        for (k, &c) in poly.iter().enumerate() {
            next[k] += c;
            next[k + a] -= c;
        }
        poly = next;
    }
    let mut vanishing = 0;
    while poly.len() > 1 && poly.iter().sum::<i128>() == 0 {
        // synthetic division by (t - 1)
        let mut quot = vec![0i128; poly.len() - 1];
        let mut carry = 0;
        for k in (1..poly.len()).rev() {
            carry += poly[k];
            quot[k - 1] = carry;
        }
        poly = quot;
        vanishing += 1;
    }
    den.len() - vanishing
}

/// Whether the values fit a polynomial of degree exactly 2: third
/// differences vanish and second differences do not. Needs at least four
/// values.
pub fn fits_quadratic(values: &[i128]) -> bool {
    let diff = |v: &[i128]| v.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>();
    if values.len() < 4 {
        return false;
    }
    let d2 = diff(&diff(values));
    let d3 = diff(&d2);
    d3.iter().all(|&x| x == 0) && d2[0] != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_series() {
        let r = PresentedRing { lx: 2, ly: 2, lw: 2, p: 2 };
        let c = hilbert_coefficients(&r, 12);
        assert_eq!(c, vec![1, 0, 3, 0, 5, 0, 7, 0, 9, 0, 11, 0, 13]);
        let r = PresentedRing { lx: 4, ly: 4, lw: 2, p: 4 };
        // (1 - t^8)/((1 - t^4)^2 (1 - t^2)): free count at t^8 is 6, minus 1
        assert_eq!(hilbert_coefficients(&r, 8)[8], 5);
    }

    #[test]
    fn krull() {
        let r = PresentedRing { lx: 2, ly: 2, lw: 2, p: 2 };
        assert_eq!(krull_dimension(&CentreShape::Presented(r)), 2);
        assert_eq!(krull_dimension(&CentreShape::Trivial), 0);
        let r = PresentedRing { lx: 2, ly: 2, lw: 4, p: 1 };
        assert_eq!(krull_dimension(&CentreShape::Presented(r)), 2);
    }

    #[test]
    fn quadratic_fit() {
        assert!(fits_quadratic(&[1, 3, 6, 10, 15]));
        assert!(!fits_quadratic(&[1, 2, 3, 4]));
        assert!(!fits_quadratic(&[1, 2, 4, 8]));
        assert_eq!(growth_degree(&[1, 3, 6, 10]), Some(2));
        assert_eq!(growth_degree(&[1, 1]), Some(0));
        assert_eq!(growth_degree(&[1, 3, 6]), None);
    }

    #[test]
    fn partial_sums_are_polynomial_along_the_period() {
        // p odd: w has length not dividing that of x
        let shape = CentreShape::Presented(PresentedRing { lx: 6, ly: 6, lw: 4, p: 3 });
        let period = shape.growth_period();
        assert_eq!(period, 12);
        let dims: Vec<usize> = shape.hilbert_coefficients(8 * period).into_iter().map(|d| d as usize).collect();
        let samples = partial_sum_samples(&dims, period);
        assert_eq!(samples.len(), 8);
        assert_eq!(growth_degree(&samples), Some(2));
        assert!(fits_quadratic(&samples));
        let trivial = CentreShape::Trivial.hilbert_coefficients(5).into_iter().map(|d| d as usize).collect::<Vec<_>>();
        assert_eq!(growth_degree(&partial_sum_samples(&trivial, 1)), Some(0));
    }
}
