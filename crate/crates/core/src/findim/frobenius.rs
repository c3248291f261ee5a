use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{left_socle, FindimError, StructureConstAlgebra};
use crate::coeff::Field;
use crate::linalg::{bareiss_determinant, determinant, MPolyRing};

/// Largest dimension for which a functional is searched through the
/// symbolic Gram determinant before falling back to random evaluation.
pub const SYMBOLIC_DIM_LIMIT: usize = 12;

/// Random functionals over an infinite field draw coordinates from
/// `[0, 2^SCHWARTZ_ZIPPEL_BITS)`. The Gram determinant has degree at most
/// `dim`, so one evaluation misses a nonzero determinant with probability
/// at most `dim / 2^48`, below `2^-40` for every `dim <= 256`.
pub const SCHWARTZ_ZIPPEL_BITS: u32 = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusCertificate<E> {
    /// A functional with nonsingular Gram matrix.
    Functional(Vec<E>),
    /// `det G(lambda)` is the zero polynomial in the coordinates of lambda.
    DeterminantVanishes,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusResult<E> {
    pub is_frobenius: bool,
    pub certificate: FrobeniusCertificate<E>,
    /// How the answer was reached: `socle_dual`, `symbolic` or `random`.
    pub method: &'static str,
}

fn gram<F: Field>(alg: &StructureConstAlgebra<F>, lambda: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let f = alg.field();
    let n = alg.dim();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    alg.product(a, b)
                        .iter()
                        .fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &lambda[*k])))
                })
                .collect()
        })
        .collect()
}

fn nondegenerate<F: Field>(alg: &StructureConstAlgebra<F>, lambda: &[F::Elem]) -> bool {
    !alg.field().is_zero(&determinant(alg.field(), gram(alg, lambda)))
}

/// Whether the algebra is Frobenius, i.e. has a functional `lambda` with
/// `(x, y) -> lambda(xy)` nondegenerate. Positive answers carry such a
/// functional; negative answers come from the exact symbolic determinant.
pub fn is_frobenius<F: Field>(
    alg: &StructureConstAlgebra<F>,
    seed: u64,
) -> Result<FrobeniusResult<F::Elem>, FindimError> {
    let f = alg.field();
    let n = alg.dim();
    let yes = |lambda: Vec<F::Elem>, method| FrobeniusResult {
        is_frobenius: true,
        certificate: FrobeniusCertificate::Functional(lambda),
        method,
    };

    if let Ok(soc) = left_socle(alg) {
        let mut lambda = vec![f.zero(); n];
        for v in soc.basis() {
            for (k, c) in v {
                lambda[k] = f.add(&lambda[k], &c);
            }
        }
        if nondegenerate(alg, &lambda) {
            return Ok(yes(lambda, "socle_dual"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut ChaCha8Rng| -> Vec<F::Elem> {
        (0..n)
            .map(|_| match f.size() {
                Some(q) => f.element(rng.random_range(0..q.min(u64::MAX as u128) as u64)),
                None => f.from_int(rng.random_range(0..1i64 << SCHWARTZ_ZIPPEL_BITS)),
            })
            .collect()
    };

    if n > SYMBOLIC_DIM_LIMIT {
        // each trial misses with probability at most dim/|S|
        let trials = match f.size() {
            None => 1,
            Some(q) if (q as f64) > 2.0 * n as f64 => {
                (40.0 / (q as f64 / n as f64).log2()).ceil() as usize
            }
            Some(_) => 0,
        };
        for _ in 0..trials {
            let lambda = sample(&mut rng);
            if nondegenerate(alg, &lambda) {
                return Ok(yes(lambda, "random"));
            }
        }
    }

    let ring = MPolyRing::new(f.clone(), n);
    let unit_vec = |k: usize| {
        let mut c = vec![f.zero(); n];
        c[k] = f.one();
        c
    };
    let matrix = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut coeffs = vec![f.zero(); n];
                    for (k, c) in alg.product(a, b) {
                        coeffs[*k] = c.clone();
                    }
                    ring.linear(&coeffs)
                })
                .collect()
        })
        .collect();
    let det = bareiss_determinant(&ring, matrix);
    if det.is_zero() {
        return Ok(FrobeniusResult {
            is_frobenius: false,
            certificate: FrobeniusCertificate::DeterminantVanishes,
            method: "symbolic",
        });
    }
    // a nonzero determinant: find a point where it does not vanish
    for k in 0..n {
        let lambda = unit_vec(k);
        if !f.is_zero(&ring.eval(&det, &lambda)) {
            return Ok(yes(lambda, "symbolic"));
        }
    }
    for _ in 0..256 {
        let lambda = sample(&mut rng);
        if !f.is_zero(&ring.eval(&det, &lambda)) {
            return Ok(yes(lambda, "symbolic"));
        }
    }
    Err(FindimError::Undecided(
        "Gram determinant is nonzero but no nonvanishing point was found".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{QParams, Rationals};
    use crate::findim::{build_deformed, build_lambda_q, DeformationParams};

    #[test]
    fn lambda_q_is_frobenius() {
        let f = Rationals;
        let q = QParams::new(f, vec![f.from_int(2), f.from_int(-3)]).unwrap();
        let r = is_frobenius(&build_lambda_q(&q).unwrap(), 0).unwrap();
        assert!(r.is_frobenius);
        assert_eq!(r.method, "socle_dual");
    }

    #[test]
    fn lambda_at_t_one_is_not() {
        let f = Rationals;
        for m in 1..4 {
            let dp = DeformationParams { t: f.one(), b1: f.one(), b2: f.zero() };
            let r = is_frobenius(&build_deformed(&f, m, &dp).unwrap(), 0).unwrap();
            assert!(!r.is_frobenius);
            assert_eq!(r.certificate, FrobeniusCertificate::DeterminantVanishes);
        }
    }

    #[test]
    fn field_is_frobenius() {
        let f = Rationals;
        let a = StructureConstAlgebra::new(f, vec!["1".into()], vec![vec![vec![(0, f.one())]]], vec![(0, f.one())]).unwrap();
        assert!(is_frobenius(&a, 0).unwrap().is_frobenius);
    }
}
