use std::sync::Arc;

use num_integer::Integer;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use socdef::centre::{is_central, CentreBasis};
use socdef::coeff::{make_field, unity_order, AnyField, Field, FieldSpec, QParams, UnityOrder};
use socdef::ext::{enumerate_paths, reduce_path, ExtAlgebra, ExtElement, ExtMonomial, RewriteOrder};
use socdef::findim::{build_deformed, build_lambda_q, is_frobenius, DeformationParams, FindimError};
use socdef::structure::{classify_case, generator_shape};

fn fields() -> Vec<AnyField> {
    [
        FieldSpec::Rationals,
        FieldSpec::Cyclotomic { order: 12 },
        FieldSpec::RationalFunction,
        FieldSpec::Finite { p: 7, modulus: None },
        FieldSpec::Finite { p: 2, modulus: Some(vec![1, 1, 1]) },
        FieldSpec::Finite { p: 3, modulus: Some(vec![2, 2, 1]) },
    ]
    .iter()
    .map(|s| make_field(s).unwrap())
    .collect()
}

fn field_and_elems(k: usize) -> impl Strategy<Value = (AnyField, Vec<<AnyField as Field>::Elem>)> {
    (0..fields().len(), prop::collection::vec(0u64..5000, k)).prop_map(|(i, idx)| {
        let f = fields()[i].clone();
        let xs = idx.into_iter().map(|n| f.element(n)).collect();
        (f, xs)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms((f, xs) in field_and_elems(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
        prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        prop_assert_eq!(f.add(a, &f.zero()), a.clone());
        prop_assert_eq!(f.mul(a, &f.one()), a.clone());
        prop_assert!(f.is_zero(&f.add(a, &f.neg(a))));
        match f.inv(a) {
            Some(ai) => prop_assert!(f.is_one(&f.mul(a, &ai))),
            None => prop_assert!(f.is_zero(a)),
        }
    }

    #[test]
    fn interval_products_split(
        (f, q) in field_and_elems(5),
        k in -6i64..6, a in 0usize..12, b in 0usize..12, m in 1usize..=5,
    ) {
        let q: Vec<_> = q.into_iter().take(m).map(|x| if f.is_zero(&x) { f.one() } else { x }).collect();
        let p = QParams::new(f.clone(), q).unwrap();
        let whole = p.q_interval_product(k, a + b);
        let split = f.mul(&p.q_interval_product(k, a), &p.q_interval_product(k + a as i64, b));
        prop_assert_eq!(whole, split);
        prop_assert_eq!(p.q_interval_product(k, m), p.zeta().clone());
    }

    #[test]
    fn unity_order_of_products((f, xs) in field_and_elems(2), e in 0u64..40) {
        prop_assume!(!f.is_zero(&xs[0]) && !f.is_zero(&xs[1]));
        let (x, y) = (&xs[0], &xs[1]);
        let (ox, oy) = (unity_order(&f, x).unwrap(), unity_order(&f, y).unwrap());
        if let (UnityOrder::Finite(a), UnityOrder::Finite(b)) = (ox, oy) {
            let oxy = unity_order(&f, &f.mul(x, y)).unwrap().finite().unwrap();
            prop_assert_eq!(a.lcm(&b) % oxy, 0);
            let pow = unity_order(&f, &f.pow(x, e)).unwrap().finite().unwrap();
            prop_assert_eq!(pow, a / a.gcd(&e));
            prop_assert!(f.is_one(&f.pow(x, a)));
        }
    }

    #[test]
    fn cyclotomic_generator_orders(d in 1u64..=30, e in 0u64..60) {
        let f = make_field(&FieldSpec::Cyclotomic { order: d }).unwrap();
        let z = f.pow(&f.generator().unwrap(), e);
        prop_assert_eq!(unity_order(&f, &z).unwrap(), UnityOrder::Finite(d / d.gcd(&e)));
    }

    #[test]
    fn generator_degrees_balance(m in 1usize..=24, d in 1u64..=40, ch in prop::sample::select(vec![0u64, 2, 3, 5])) {
        let tag = classify_case(m, ch, UnityOrder::Finite(d));
        let (l, sigma_d, p) = generator_shape(m, d, tag).unwrap();
        let lw = 2 * sigma_d;
        prop_assert_eq!(p * lw, l + l);
        prop_assert!(p >= 1);
    }
}

fn rational_q(m: usize, seed: &[i64]) -> QParams<AnyField> {
    let f = make_field(&FieldSpec::Rationals).unwrap();
    let q = seed
        .iter()
        .take(m)
        .map(|&n| {
            let n = if n == 0 { 1 } else { n };
            f.div(&f.from_int(n), &f.from_int(n.abs() % 3 + 1)).unwrap()
        })
        .collect();
    QParams::new(f, q).unwrap()
}

fn monomial(alg: &ExtAlgebra<AnyField>, raw: (usize, usize, usize)) -> ExtMonomial {
    ExtMonomial::new(raw.0 % alg.m(), raw.1, raw.2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ext_associativity(
        m in 1usize..=4,
        seed in prop::collection::vec(-5i64..6, 4),
        a in (0usize..4, 0usize..5, 0usize..5),
        b in (0usize..4, 0usize..5, 0usize..5),
        c in (0usize..4, 0usize..5, 0usize..5),
    ) {
        let alg = Arc::new(ExtAlgebra::new(rational_q(m, &seed)));
        let [a, b, c] = [a, b, c].map(|r| ExtElement::monomial(&alg, monomial(&alg, r)).unwrap());
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn rewriting_is_confluent(m in 1usize..=4, n in 0usize..=6, seed in prop::collection::vec(-5i64..6, 4), rseed: u64) {
        let alg = ExtAlgebra::new(rational_q(m, &seed));
        let mut rng = ChaCha8Rng::seed_from_u64(rseed);
        for path in enumerate_paths(m, n) {
            let left = reduce_path(&alg, &path, RewriteOrder::Leftmost);
            prop_assert_eq!(&left, &reduce_path(&alg, &path, RewriteOrder::Rightmost));
            prop_assert_eq!(&left, &reduce_path(&alg, &path, RewriteOrder::Random(&mut rng)));
        }
    }

    #[test]
    fn deformation_exists_iff_chi_is_a_class(
        m in 1usize..=6, t in -3i64..4, b1 in -3i64..4, b2 in -3i64..4,
        spec in prop::sample::select(vec![FieldSpec::Rationals, FieldSpec::Finite { p: 2, modulus: None }]),
    ) {
        let f = make_field(&spec).unwrap();
        let dp = DeformationParams { t: f.from_int(t), b1: f.from_int(b1), b2: f.from_int(b2) };
        // The constructor rejects non-associative tables. The only overlap
        // is abar_{j-1} a_{j-1} a_j, which resolves iff
        // beta_j + alpha_j beta_{j+1} = 0 for every j (indices mod m).
        // So chi integrates only for m even or in characteristic 2, and
        // never jointly with pi when m >= 2.
        let alpha = |j: usize| if j == 0 { f.sub(&f.one(), &f.mul(&dp.t, &dp.b1)) } else { f.one() };
        let beta = |j: usize| f.neg(&f.mul(&f.sign(j as i64), &f.mul(&dp.t, &dp.b2)));
        let exists = (0..m).all(|j| f.is_zero(&f.add(&beta(j), &f.mul(&alpha(j), &beta((j + 1) % m)))));
        match build_deformed(&f, m, &dp) {
            Ok(a) => {
                prop_assert_eq!(a.dim(), 4 * m);
                prop_assert!(exists);
            }
            Err(FindimError::NotAssociative(..)) => prop_assert!(!exists),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn centre_is_closed_under_products(m in 1usize..=3, d in prop::sample::select(vec![1u64, 2, 3, 4, 6]), exps in prop::collection::vec(0u64..12, 3)) {
        let f = make_field(&FieldSpec::Cyclotomic { order: d }).unwrap();
        let z = f.generator().unwrap();
        let mut q: Vec<_> = exps.iter().take(m).map(|&e| f.pow(&z, e)).collect();
        // fix the product to the generator
        let rest = q[1..].iter().fold(f.one(), |acc, x| f.mul(&acc, x));
        q[0] = f.div(&z, &rest).unwrap();
        let alg = Arc::new(ExtAlgebra::new(QParams::new(f, q).unwrap()));
        let basis = CentreBasis::compute(&alg, 8);
        for n1 in 1..=4 {
            for n2 in n1..=8 - n1 {
                for x in basis.degree(n1) {
                    for y in basis.degree(n2) {
                        let p = x.mul(y).unwrap();
                        if !p.is_zero() {
                            prop_assert!(is_central(&p, 1).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lambda_q_is_self_injective(m in 1usize..=4, seed in prop::collection::vec(-5i64..6, 4), s: u64) {
        let a = build_lambda_q(&rational_q(m, &seed)).unwrap();
        prop_assert!(is_frobenius(&a, s).unwrap().is_frobenius);
    }
}
