//! The Ext algebra `E(Lambda_q)`, presented as the path algebra of the cyclic
//! double quiver modulo `q_i^{-1} a_i abar_i + abar_{i-1} a_{i-1}`.
//!
//! Every nonzero path reduces to a scalar times a normal-form monomial
//! `g_i^s d_j^t`: `s` clockwise arrows from vertex `i` followed by `t`
//! counterclockwise arrows ending at `j = i + s - t (mod m)`. Products are
//! computed by pushing arrows `a` leftward through the `abar` block, one
//! rewrite `abar_k a_k -> -q_{k+1}^{-1} a_{k+1} abar_{k+1}` at a time.

mod element;
mod paths;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coeff::{Field, QParams};
use crate::linalg::SparseVec;

pub use element::ExtElement;
pub use paths::{enumerate_paths, reduce_path, Arrow, Path, RewriteOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error("elements belong to different Ext algebras")]
    MixedParams,
    #[error("{0} is not an arrow")]
    NotArrow(String),
    #[error("element is not length-homogeneous")]
    NotHomogeneous,
    #[error("vertex {0} out of range for m = {1}")]
    VertexOutOfRange(usize, usize),
}

/// The normal-form monomial `g_i^s d_j^t`. The terminus `j` is always
/// recomputed from `(i, s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtMonomial {
    pub i: usize,
    pub s: usize,
    pub t: usize,
}

impl ExtMonomial {
    pub fn new(i: usize, s: usize, t: usize) -> Self {
        Self { i, s, t }
    }

    pub fn idempotent(i: usize) -> Self {
        Self::new(i, 0, 0)
    }

    /// `a_i`, from `i` to `i+1`.
    pub fn a(i: usize) -> Self {
        Self::new(i, 1, 0)
    }

    /// `abar_i`, from `i+1` to `i`.
    pub fn abar(i: usize, m: usize) -> Self {
        Self::new((i + 1) % m, 0, 1)
    }

    pub fn terminus(&self, m: usize) -> usize {
        (self.i + self.s + m - self.t % m) % m
    }

    pub fn length(&self) -> usize {
        self.s + self.t
    }

    pub fn zdeg(&self) -> i64 {
        self.s as i64 - self.t as i64
    }

    pub fn is_cycle(&self, m: usize) -> bool {
        self.terminus(m) == self.i
    }

    /// `g[i]^s d[j]^t`, dropping empty factors; `e[i]` for idempotents.
    pub fn format(&self, m: usize) -> String {
        let j = self.terminus(m);
        match (self.s, self.t) {
            (0, 0) => format!("e[{}]", self.i),
            (s, 0) => format!("g[{}]^{s}", self.i),
            (0, t) => format!("d[{j}]^{t}"),
            (s, t) => format!("g[{}]^{s} d[{j}]^{t}", self.i),
        }
    }
}

/// Grade order: by length, then z-degree descending, then origin ascending.
impl Ord for ExtMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.length()
            .cmp(&other.length())
            .then(other.s.cmp(&self.s))
            .then(self.i.cmp(&other.i))
    }
}

impl PartialOrd for ExtMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `E(Lambda_q)` for fixed parameters, with the inverses of the `q_i`
/// cached.
#[derive(Debug)]
pub struct ExtAlgebra<F: Field> {
    params: QParams<F>,
    q_inv: Vec<F::Elem>,
    zeta_inv: F::Elem,
}

impl<F: Field> ExtAlgebra<F> {
    pub fn new(params: QParams<F>) -> Self {
        let f = params.field();
        let q_inv = params.q_values().iter().map(|x| f.inv(x).unwrap()).collect();
        let zeta_inv = f.inv(params.zeta()).unwrap();
        Self {
            params,
            q_inv,
            zeta_inv,
        }
    }

    pub fn params(&self) -> &QParams<F> {
        &self.params
    }

    pub fn field(&self) -> &F {
        self.params.field()
    }

    pub fn m(&self) -> usize {
        self.params.m()
    }

    /// `(q_k ... q_{k+len-1})^{-1}`.
    pub fn inv_interval(&self, k: i64, len: usize) -> F::Elem {
        let f = self.field();
        let m = self.m();
        let mut acc = f.pow(&self.zeta_inv, (len / m) as u64);
        for j in 0..(len % m) as i64 {
            acc = f.mul(&acc, &self.q_inv[(k + j).rem_euclid(m as i64) as usize]);
        }
        acc
    }

    /// Scalar picked up when `s2` arrows `a`, starting at vertex `j`, are
    /// pushed through a block of `t` arrows `abar` ending at `j`:
    /// `prod_{r < s2} (-1)^t (q_{j+r+1} ... q_{j+r+t})^{-1}`.
    fn passage_scalar(&self, j: usize, t: usize, s2: usize) -> F::Elem {
        let f = self.field();
        let m = self.m();
        if t == 0 || s2 == 0 {
            return f.one();
        }
        // count how often each q_k^{-1} occurs in the product
        let mut counts = vec![0u64; m];
        for r in 0..s2 {
            for u in 0..t {
                counts[(j + 1 + r + u) % m] += 1;
            }
        }
        let full = *counts.iter().min().unwrap();
        let mut acc = f.pow(&self.zeta_inv, full);
        for (k, c) in counts.iter().enumerate() {
            if *c > full {
                acc = f.mul(&acc, &f.pow(&self.q_inv[k], c - full));
            }
        }
        if (t * s2) % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc
    }

    /// `None` when the terminus of `a` is not the origin of `b`; otherwise
    /// the nonzero scalar and the normal form of `a*b`.
    pub fn mon_mul(&self, a: &ExtMonomial, b: &ExtMonomial) -> Option<(F::Elem, ExtMonomial)> {
        let m = self.m();
        let j = a.terminus(m);
        if j != b.i {
            return None;
        }
        let c = self.passage_scalar(j, a.t, b.s);
        Some((c, ExtMonomial::new(a.i, a.s + b.s, a.t + b.t)))
    }

    /// The monomials of length `n` in grade order: `s` descending, then `i`.
    pub fn grade_basis(&self, n: usize) -> Vec<ExtMonomial> {
        let m = self.m();
        (0..=n)
            .rev()
            .flat_map(|s| (0..m).map(move |i| ExtMonomial::new(i, s, n - s)))
            .collect()
    }

    pub fn grade_dim(&self, n: usize) -> usize {
        self.m() * (n + 1)
    }

    /// Position of `mon` in `grade_basis(mon.length())`.
    pub fn grade_index(&self, mon: &ExtMonomial) -> usize {
        (mon.length() - mon.s) * self.m() + mon.i
    }

    /// For each column of grade `n`, the image under multiplication by `g`
    /// on the given side, as `(row in grade n + len(g), scalar)`.
    pub fn mult_map(&self, g: &ExtMonomial, side: Side, n: usize) -> Vec<Option<(usize, F::Elem)>> {
        self.grade_basis(n)
            .iter()
            .map(|z| {
                let prod = match side {
                    Side::Left => self.mon_mul(g, z),
                    Side::Right => self.mon_mul(z, g),
                };
                prod.map(|(c, p)| (self.grade_index(&p), c))
            })
            .collect()
    }

    /// Matrix of `z -> g*z` (left) or `z -> z*g` (right) from grade `n` to
    /// grade `n+1`, for an arrow `g`.
    pub fn mult_matrix(
        &self,
        g: &ExtMonomial,
        side: Side,
        n: usize,
    ) -> Result<Vec<Vec<F::Elem>>, ExtError> {
        if g.length() != 1 {
            return Err(ExtError::NotArrow(g.format(self.m())));
        }
        let f = self.field();
        let mut out = vec![vec![f.zero(); self.grade_dim(n)]; self.grade_dim(n + 1)];
        for (col, entry) in self.mult_map(g, side, n).into_iter().enumerate() {
            if let Some((row, c)) = entry {
                out[row][col] = c;
            }
        }
        Ok(out)
    }

    /// The `2m` arrows `a_0, ..., a_{m-1}, abar_0, ..., abar_{m-1}`.
    pub fn arrows(&self) -> Vec<ExtMonomial> {
        let m = self.m();
        (0..m)
            .map(ExtMonomial::a)
            .chain((0..m).map(|i| ExtMonomial::abar(i, m)))
            .collect()
    }

    /// Coordinates of a grade-`n` element as a sparse vector over
    /// `grade_basis(n)`.
    pub fn grade_vector(&self, z: &ExtElement<F>, n: usize) -> SparseVec<F::Elem> {
        let mut v: SparseVec<F::Elem> = z
            .terms()
            .filter(|(mon, _)| mon.length() == n)
            .map(|(mon, c)| (self.grade_index(mon), c.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}
