use rand::{Rng, RngCore};

use super::{ExtAlgebra, ExtMonomial};
use crate::coeff::Field;

/// An arrow of the cyclic double quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arrow {
    /// `a_k : k -> k+1`
    A(usize),
    /// `abar_k : k+1 -> k`
    Abar(usize),
}

impl Arrow {
    pub fn origin(&self, m: usize) -> usize {
        match *self {
            Arrow::A(k) => k,
            Arrow::Abar(k) => (k + 1) % m,
        }
    }

    pub fn terminus(&self, m: usize) -> usize {
        match *self {
            Arrow::A(k) => (k + 1) % m,
            Arrow::Abar(k) => k,
        }
    }
}

/// A path written left to right, starting at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<Arrow>,
}

/// Which `abar a` occurrence to rewrite next.
pub enum RewriteOrder<'a> {
    Leftmost,
    Rightmost,
    Random(&'a mut dyn RngCore),
}

/// All `m * 2^n` paths of length `n`.
pub fn enumerate_paths(m: usize, n: usize) -> Vec<Path> {
    let mut out = Vec::with_capacity(m << n);
    for start in 0..m {
        for bits in 0..(1usize << n) {
            let mut v = start;
            let arrows = (0..n)
                .map(|k| {
                    let arrow = if bits >> k & 1 == 0 {
                        Arrow::A(v)
                    } else {
                        Arrow::Abar((v + m - 1) % m)
                    };
                    v = arrow.terminus(m);
                    arrow
                })
                .collect();
            out.push(Path { start, arrows });
        }
    }
    out
}

/// Reduces a path to `scalar * normal form` by repeatedly rewriting
/// `abar_k a_k -> -q_{k+1}^{-1} a_{k+1} abar_{k+1}` at positions chosen by
/// `order`. Panics if consecutive arrows do not compose.
pub fn reduce_path<F: Field>(
    alg: &ExtAlgebra<F>,
    path: &Path,
    mut order: RewriteOrder<'_>,
) -> (F::Elem, ExtMonomial) {
    let m = alg.m();
    let f = alg.field();
    let mut v = path.start;
    for a in &path.arrows {
        assert_eq!(a.origin(m), v, "arrows do not compose");
        v = a.terminus(m);
    }
    let mut word = path.arrows.clone();
    let mut scalar = f.one();
    loop {
        let spots: Vec<usize> = (0..word.len().saturating_sub(1))
            .filter(|&p| matches!((word[p], word[p + 1]), (Arrow::Abar(_), Arrow::A(_))))
            .collect();
        if spots.is_empty() {
            break;
        }
        let p = match &mut order {
            RewriteOrder::Leftmost => spots[0],
            RewriteOrder::Rightmost => spots[spots.len() - 1],
            RewriteOrder::Random(rng) => spots[rng.random_range(0..spots.len())],
        };
        let Arrow::Abar(k) = word[p] else { unreachable!() };
        let k1 = (k + 1) % m;
        word[p] = Arrow::A(k1);
        word[p + 1] = Arrow::Abar(k1);
        scalar = f.neg(&f.mul(&scalar, &alg.inv_interval(k1 as i64, 1)));
    }
    let s = word.iter().filter(|a| matches!(a, Arrow::A(_))).count();
    (scalar, ExtMonomial::new(path.start, s, word.len() - s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{QParams, Rationals};
    use std::collections::BTreeSet;

    #[test]
    fn path_counts() {
        assert_eq!(enumerate_paths(3, 2).len(), 12);
        assert_eq!(enumerate_paths(1, 0).len(), 1);
    }

    #[test]
    fn length_two_normal_forms_m3() {
        let f = Rationals;
        let alg = ExtAlgebra::new(QParams::trivial(f, 3).unwrap());
        let forms: BTreeSet<_> = enumerate_paths(3, 2)
            .iter()
            .map(|p| reduce_path(&alg, p, RewriteOrder::Leftmost).1)
            .collect();
        assert_eq!(forms.len(), 9);
        assert_eq!(forms.into_iter().collect::<Vec<_>>(), alg.grade_basis(2));
    }
}
