//! The presentation `Z_gr(E(Lambda_q)) = K[x, y, w] / <w^p - eps x y>`:
//! explicit generators, the relation scalar, and checks of the full statement
//! against the brute-force centre.

mod hilbert;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::centre::{is_central, CentreBasis};
use crate::coeff::{Field, QParams, UnityOrder};
use crate::ext::{ExtAlgebra, ExtElement, ExtError, ExtMonomial};

pub use hilbert::{
    fits_quadratic, growth_degree, hilbert_coefficients, krull_dimension, partial_sum_samples, CentreShape,
    PresentedRing,
};

/// Length bound used when cross-checking generators with [`is_central`].
pub const CENTRAL_TEST_BOUND: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("zeta is not a root of unity, so there are no generators x, y, w")]
    NoGenerators,
    #[error(transparent)]
    Ext(#[from] ExtError),
}

/// The branch of the structure theorem an instance falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "not_root_of_unity")]
    NotRootOfUnity,
    #[serde(rename = "even_or_char2")]
    EvenOrChar2,
    #[serde(rename = "odd_d_0mod4")]
    OddD0Mod4,
    #[serde(rename = "odd_d_2mod4")]
    OddD2Mod4,
    #[serde(rename = "odd_d_odd")]
    OddDOdd,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::NotRootOfUnity => "not_root_of_unity",
            CaseTag::EvenOrChar2 => "even_or_char2",
            CaseTag::OddD0Mod4 => "odd_d_0mod4",
            CaseTag::OddD2Mod4 => "odd_d_2mod4",
            CaseTag::OddDOdd => "odd_d_odd",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_case(m: usize, characteristic: u64, d: UnityOrder) -> CaseTag {
    let Some(d) = d.finite() else {
        return CaseTag::NotRootOfUnity;
    };
    if m % 2 == 0 || characteristic == 2 {
        CaseTag::EvenOrChar2
    } else if d % 4 == 0 {
        CaseTag::OddD0Mod4
    } else if d % 4 == 2 {
        CaseTag::OddD2Mod4
    } else {
        CaseTag::OddDOdd
    }
}

/// Lengths and exponents of the generators for a finite-order branch:
/// `(L_x, sigma*d, p)`, with `L_y = L_x` and `L_w = 2*sigma*d`.
pub fn generator_shape(m: usize, d: u64, tag: CaseTag) -> Option<(usize, usize, usize)> {
    let d = d as usize;
    match tag {
        CaseTag::NotRootOfUnity => None,
        CaseTag::EvenOrChar2 | CaseTag::OddD0Mod4 => Some((d * m, d, m)),
        CaseTag::OddD2Mod4 => Some((d * m, d / 2, 2 * m)),
        CaseTag::OddDOdd => Some((2 * d * m, 2 * d, m)),
    }
}

fn case_of<F: Field>(params: &QParams<F>) -> CaseTag {
    classify_case(params.m(), params.field().characteristic(), params.order())
}

/// `prod_{k=1}^{n} (q_k ... q_{k+len-1})^{-1}`.
fn nested_inverse<F: Field>(params: &QParams<F>, n: usize, len: usize) -> F::Elem {
    let f = params.field();
    let prod = (1..=n).fold(f.one(), |acc, k| {
        f.mul(&acc, &params.q_interval_product(k as i64, len))
    });
    f.inv(&prod).expect("q-products are nonzero")
}

/// The relation scalar of the branch, as printed in the theorem.
pub fn epsilon<F: Field>(params: &QParams<F>, tag: CaseTag) -> Result<F::Elem, StructureError> {
    let f = params.field();
    let m = params.m();
    let d = params.order().finite().ok_or(StructureError::NoGenerators)? as usize;
    let outer = |lmax: usize, inner: &dyn Fn(usize) -> usize, len: usize| {
        (1..=lmax).fold(f.one(), |acc, l| f.mul(&acc, &nested_inverse(params, inner(l), len)))
    };
    Ok(match tag {
        CaseTag::NotRootOfUnity => return Err(StructureError::NoGenerators),
        CaseTag::EvenOrChar2 => {
            // md is odd only in characteristic 2, where the sign is 1 anyway
            let sign = f.sign((m * d / 2) as i64);
            f.mul(&sign, &outer(m - 1, &|l| l * d, d))
        }
        CaseTag::OddD0Mod4 => outer(m - 1, &|l| l * d, d),
        CaseTag::OddD2Mod4 => outer(2 * m - 1, &|l| l * d / 2, d),
        CaseTag::OddDOdd => outer(m - 1, &|l| 2 * l * d, 2 * d),
    })
}

/// The relation scalar recomputed from the pattern of the other branches:
/// identical to [`epsilon`] except for `odd_d_2mod4`, where the inner
/// products run over `sigma*d = d/2` consecutive parameters and the sign is
/// `(-1)^{md/2} = -1`, giving
/// `-prod_{l=1}^{2m-1} prod_{k=1}^{ld/2} (q_k ... q_{k+d/2-1})^{-1}`.
pub fn epsilon_rederived<F: Field>(
    params: &QParams<F>,
    tag: CaseTag,
) -> Result<F::Elem, StructureError> {
    if tag != CaseTag::OddD2Mod4 {
        return epsilon(params, tag);
    }
    let f = params.field();
    let m = params.m();
    let h = params.order().finite().ok_or(StructureError::NoGenerators)? as usize / 2;
    let prod = (1..2 * m).fold(f.one(), |acc, l| f.mul(&acc, &nested_inverse(params, l * h, h)));
    Ok(f.neg(&prod))
}

/// `x`, `y`, `w` and the relation `w^p = eps x y`.
#[derive(Clone, Debug)]
pub struct CentralGenerators<F: Field> {
    pub case: CaseTag,
    pub x: ExtElement<F>,
    pub y: ExtElement<F>,
    pub w: ExtElement<F>,
    pub lx: usize,
    pub ly: usize,
    pub lw: usize,
    pub sigma_d: usize,
    pub p: usize,
    pub epsilon: F::Elem,
}

impl<F: Field> CentralGenerators<F> {
    pub fn presented_ring(&self) -> PresentedRing {
        PresentedRing {
            lx: self.lx,
            ly: self.ly,
            lw: self.lw,
            p: self.p,
        }
    }

    /// Text form of the relation, e.g. `w^2 = -x*y`.
    pub fn relation_string(&self) -> String {
        relation_string(self.x.field(), self.p, &self.epsilon)
    }
}

pub fn relation_string<F: Field>(f: &F, p: usize, eps: &F::Elem) -> String {
    let lhs = if p == 1 { "w".to_string() } else { format!("w^{p}") };
    let rhs = if f.is_one(eps) {
        "x*y".to_string()
    } else if f.is_one(&f.neg(eps)) {
        "-x*y".to_string()
    } else {
        format!("({})*x*y", f.format_plain(eps))
    };
    format!("{lhs} = {rhs}")
}

pub fn build_generators<F: Field>(
    alg: &Arc<ExtAlgebra<F>>,
) -> Result<CentralGenerators<F>, StructureError> {
    let params = alg.params();
    let f = params.field();
    let m = params.m();
    let case = case_of(params);
    let d = params.order().finite().ok_or(StructureError::NoGenerators)?;
    let (l, sigma_d, p) = generator_shape(m, d, case).ok_or(StructureError::NoGenerators)?;
    let x = ExtElement::from_terms(alg, (0..m).map(|i| (ExtMonomial::new(i, l, 0), f.one())))?;
    let y = ExtElement::from_terms(alg, (0..m).map(|i| (ExtMonomial::new(i, 0, l), f.one())))?;
    let w_sign = |i: usize| match case {
        CaseTag::EvenOrChar2 => f.sign((i as u64 * d) as i64),
        CaseTag::OddD2Mod4 => f.sign(i as i64),
        _ => f.one(),
    };
    let w = ExtElement::from_terms(
        alg,
        (0..m).map(|i| {
            let c = f.mul(&w_sign(i), &nested_inverse(params, i, sigma_d));
            (ExtMonomial::new(i, sigma_d, sigma_d), c)
        }),
    )?;
    debug_assert_eq!(p * sigma_d, l);
    Ok(CentralGenerators {
        case,
        x,
        y,
        w,
        lx: l,
        ly: l,
        lw: 2 * sigma_d,
        sigma_d,
        p,
        epsilon: epsilon(params, case)?,
    })
}

/// Outcome of comparing `w^p` with `eps x y`.
#[derive(Clone, Debug)]
pub struct RelationCheck<F: Field> {
    pub holds: bool,
    /// `w^p - eps x y`; zero exactly when the relation holds.
    pub difference: ExtElement<F>,
}

pub fn verify_relation<F: Field>(gens: &CentralGenerators<F>) -> RelationCheck<F> {
    verify_relation_with(gens, &gens.epsilon)
}

/// As [`verify_relation`], with the scalar replaced by `eps`.
pub fn verify_relation_with<F: Field>(gens: &CentralGenerators<F>, eps: &F::Elem) -> RelationCheck<F> {
    let lhs = gens.w.power(gens.p as u32);
    let rhs = gens.x.mul(&gens.y).unwrap().scale(eps);
    let difference = lhs.sub(&rhs).unwrap();
    RelationCheck {
        holds: difference.is_zero(),
        difference,
    }
}

/// `L_x + L_y + 2 L_w`, or 12 when the centre is trivial.
pub fn default_max_degree<F: Field>(params: &QParams<F>) -> usize {
    let case = case_of(params);
    match params.order().finite().and_then(|d| generator_shape(params.m(), d, case)) {
        Some((l, sigma_d, _)) => 2 * l + 4 * sigma_d,
        None => 12,
    }
}

/// The outcome of checking the structure theorem up to a fixed degree.
#[derive(Clone, Debug)]
pub struct StructureReport<F: Field> {
    pub case: CaseTag,
    pub order: UnityOrder,
    pub max_degree: usize,
    pub generators: Option<CentralGenerators<F>>,
    /// `is_central` for `x`, `y`, `w`.
    pub generators_central: Option<[bool; 3]>,
    pub relation: Option<RelationCheck<F>>,
    /// When the relation fails with the printed scalar: the re-derived
    /// scalar and the check against it.
    pub rederived: Option<(F::Elem, RelationCheck<F>)>,
    pub basis: CentreBasis<F>,
    pub solver_dims: Vec<usize>,
    pub hilbert_dims: Vec<u64>,
    pub first_failing_degree: Option<usize>,
}

impl<F: Field> StructureReport<F> {
    pub fn dims_match(&self) -> bool {
        self.first_failing_degree.is_none()
    }

    pub fn pass(&self) -> bool {
        self.dims_match()
            && self.generators_central.is_none_or(|c| c.iter().all(|&b| b))
            && self.relation.as_ref().is_none_or(|r| r.holds)
    }

    pub fn shape(&self) -> CentreShape {
        match &self.generators {
            Some(g) => CentreShape::Presented(g.presented_ring()),
            None => CentreShape::Trivial,
        }
    }
}

/// Checks that `x`, `y`, `w` are central, that `w^p = eps x y`, and that the
/// solver's dimensions agree with the Hilbert series of the presentation in
/// every degree up to `max_degree`. With `zeta` not a root of unity the last
/// check is against the trivial centre `K`.
pub fn verify_structure_theorem<F: Field>(
    alg: &Arc<ExtAlgebra<F>>,
    max_degree: usize,
) -> StructureReport<F> {
    let params = alg.params();
    let case = case_of(params);
    let generators = build_generators(alg).ok();
    let generators_central = generators.as_ref().map(|g| {
        [&g.x, &g.y, &g.w].map(|z| is_central(z, CENTRAL_TEST_BOUND).unwrap_or(false))
    });
    let relation = generators.as_ref().map(verify_relation);
    let rederived = match (&generators, &relation) {
        (Some(g), Some(r)) if !r.holds => epsilon_rederived(params, case)
            .ok()
            .map(|e| (e.clone(), verify_relation_with(g, &e))),
        _ => None,
    };
    let basis = CentreBasis::compute(alg, max_degree);
    let solver_dims = basis.dims();
    let shape = match &generators {
        Some(g) => CentreShape::Presented(g.presented_ring()),
        None => CentreShape::Trivial,
    };
    let hilbert_dims = shape.hilbert_coefficients(max_degree);
    let first_failing_degree = solver_dims
        .iter()
        .zip(&hilbert_dims)
        .position(|(&a, &b)| a as u64 != b);
    StructureReport {
        case,
        order: params.order(),
        max_degree,
        generators,
        generators_central,
        relation,
        rederived,
        basis,
        solver_dims,
        hilbert_dims,
        first_failing_degree,
    }
}

/// Result of the module-finiteness check for `E` over its graded centre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGeneration {
    pub holds: bool,
    /// Monomials that had to be reduced.
    pub checked: usize,
    /// First monomial that could not be written as `c * z * g`.
    pub failure: Option<ExtMonomial>,
    pub witness: String,
}

/// With `zeta` a root of unity: every monomial of length at most
/// `max_degree` with an exponent above `L_x` is `c * x^a y^b * g` for a
/// nonzero scalar `c` and a monomial `g` with both exponents at most `L_x`.
/// Otherwise the answer is negative, witnessed by the centre having no
/// elements of positive degree up to `max_degree`.
pub fn verify_finite_generation<F: Field>(
    alg: &Arc<ExtAlgebra<F>>,
    max_degree: usize,
) -> FiniteGeneration {
    let f = alg.field();
    let m = alg.m();
    let Ok(gens) = build_generators(alg) else {
        let dims = CentreBasis::compute(alg, max_degree).dims();
        let trivial = dims[1..].iter().all(|&d| d == 0);
        return FiniteGeneration {
            holds: false,
            checked: 0,
            failure: None,
            witness: if trivial {
                format!("centre is K in degrees 1..={max_degree}; E is infinite-dimensional")
            } else {
                format!("unexpected central elements: dims {dims:?}")
            },
        };
    };
    let l = gens.lx;
    let mut checked = 0;
    let mut x_pow = vec![ExtElement::one(alg)];
    let mut y_pow = vec![ExtElement::one(alg)];
    for n in 0..=max_degree {
        for mon in alg.grade_basis(n) {
            if mon.s <= l && mon.t <= l {
                continue;
            }
            checked += 1;
            let a = (mon.s.saturating_sub(1)) / l;
            let b = (mon.t.saturating_sub(1)) / l;
            while x_pow.len() <= a {
                let next = x_pow.last().unwrap().mul(&gens.x).unwrap();
                x_pow.push(next);
            }
            while y_pow.len() <= b {
                let next = y_pow.last().unwrap().mul(&gens.y).unwrap();
                y_pow.push(next);
            }
            let g = ExtMonomial::new(mon.i, mon.s - a * l, mon.t - b * l);
            let z = x_pow[a].mul(&y_pow[b]).unwrap();
            let prod = z.mul(&ExtElement::monomial(alg, g).unwrap()).unwrap();
            let ok = prod.num_terms() == 1 && !f.is_zero(&prod.coeff(&mon));
            if !ok {
                return FiniteGeneration {
                    holds: false,
                    checked,
                    failure: Some(mon),
                    witness: format!("{} is not a multiple of x^{a} y^{b} {}", mon.format(m), g.format(m)),
                };
            }
        }
    }
    FiniteGeneration {
        holds: true,
        checked,
        failure: None,
        witness: format!("generated by g[i]^s d[j]^t with s, t <= {l}"),
    }
}

/// `z^k != 0` for every computed basis element `z` of positive degree and
/// every `k` with `k * deg z <= max_degree`. Returns the first nilpotent
/// found, as `(degree, index in that degree, k)`.
pub fn find_nilpotent<F: Field>(basis: &CentreBasis<F>) -> Option<(usize, usize, u32)> {
    let max = basis.max_degree();
    for n in 1..=max {
        for (idx, z) in basis.degree(n).iter().enumerate() {
            let mut acc = z.clone();
            for k in 1..=(max / n) as u32 {
                if acc.is_zero() {
                    return Some((n, idx, k));
                }
                acc = acc.mul(z).unwrap();
            }
        }
    }
    None
}

/// `HH*(Lambda_q)/N`, via its identification with the graded centre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HhModNil {
    pub presentation: String,
    pub degrees: Option<[usize; 3]>,
    pub p: Option<usize>,
    pub epsilon: Option<String>,
    pub krull_dimension: usize,
    /// The isomorphism with the graded centre is taken from the literature,
    /// not recomputed here.
    pub imported_isomorphism: bool,
}

pub fn hh_mod_nil_report<F: Field>(alg: &Arc<ExtAlgebra<F>>) -> HhModNil {
    let f = alg.field();
    match build_generators(alg) {
        Err(_) => HhModNil {
            presentation: "K".into(),
            degrees: None,
            p: None,
            epsilon: None,
            krull_dimension: krull_dimension(&CentreShape::Trivial),
            imported_isomorphism: true,
        },
        Ok(g) => {
            let presentation = if g.p == 1 {
                "K[x,y]".to_string()
            } else {
                let rel = relation_string(f, g.p, &g.epsilon);
                let (lhs, rhs) = rel.split_once(" = ").unwrap();
                let rhs = match rhs.strip_prefix('-') {
                    Some(r) => format!("+ {r}"),
                    None => format!("- {rhs}"),
                };
                format!("K[x,y,w]/<{lhs} {rhs}>")
            };
            HhModNil {
                presentation,
                degrees: Some([g.lx, g.ly, g.lw]),
                p: Some(g.p),
                epsilon: Some(f.format(&g.epsilon)),
                krull_dimension: krull_dimension(&CentreShape::Presented(g.presented_ring())),
                imported_isomorphism: true,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_field, FieldSpec, Rationals};

    fn alg(q: &[i64]) -> Arc<ExtAlgebra<Rationals>> {
        let f = Rationals;
        Arc::new(ExtAlgebra::new(
            QParams::new(f, q.iter().map(|&x| f.from_int(x)).collect()).unwrap(),
        ))
    }

    #[test]
    fn case_classification() {
        assert_eq!(classify_case(3, 0, UnityOrder::Infinite), CaseTag::NotRootOfUnity);
        assert_eq!(classify_case(3, 0, UnityOrder::Finite(6)), CaseTag::OddD2Mod4);
        assert_eq!(classify_case(3, 2, UnityOrder::Finite(1)), CaseTag::EvenOrChar2);
        assert_eq!(classify_case(4, 0, UnityOrder::Finite(3)), CaseTag::EvenOrChar2);
        assert_eq!(classify_case(5, 7, UnityOrder::Finite(4)), CaseTag::OddD0Mod4);
        assert_eq!(classify_case(1, 0, UnityOrder::Finite(1)), CaseTag::OddDOdd);
    }

    #[test]
    fn shapes_are_length_homogeneous() {
        for m in 1..6 {
            for d in 1..13u64 {
                for tag in [CaseTag::EvenOrChar2, CaseTag::OddD0Mod4, CaseTag::OddD2Mod4, CaseTag::OddDOdd] {
                    if tag == CaseTag::OddD2Mod4 && d % 2 == 1 {
                        continue;
                    }
                    let (l, sigma_d, p) = generator_shape(m, d, tag).unwrap();
                    assert_eq!(p * 2 * sigma_d, 2 * l);
                }
            }
        }
    }

    #[test]
    fn m2_trivial_q() {
        let e = alg(&[1, 1]);
        let g = build_generators(&e).unwrap();
        assert_eq!(g.x.format(), "g[0]^2 + g[1]^2");
        assert_eq!(g.w.format(), "g[0]^1 d[0]^1 - g[1]^1 d[1]^1");
        assert_eq!(g.p, 2);
        assert_eq!(g.epsilon, Rationals.from_int(-1));
        assert!(verify_relation(&g).holds);
        assert_eq!(g.relation_string(), "w^2 = -x*y");
        let perturbed = Rationals.from_int(-2);
        let bad = verify_relation_with(&g, &perturbed);
        assert!(!bad.holds && !bad.difference.is_zero());
    }

    #[test]
    fn m1_minus_one() {
        let e = alg(&[-1]);
        let g = build_generators(&e).unwrap();
        assert_eq!(g.case, CaseTag::OddD2Mod4);
        assert_eq!((g.lx, g.lw, g.p), (2, 2, 2));
        assert_eq!(g.w.format(), "g[0]^1 d[0]^1");
        assert_eq!(g.epsilon, Rationals.one());
        assert!(verify_relation(&g).holds);
    }

    #[test]
    fn printed_epsilon_for_d_2mod4_needs_rederivation() {
        // m = 3, zeta = -1: q = (2, 1, -1/2)
        let f = Rationals;
        let q = vec![f.from_int(2), f.from_int(1), f.div(&f.from_int(-1), &f.from_int(2)).unwrap()];
        let e = Arc::new(ExtAlgebra::new(QParams::new(f, q).unwrap()));
        let r = verify_structure_theorem(&e, default_max_degree(e.params()));
        assert_eq!(r.case, CaseTag::OddD2Mod4);
        assert!(r.dims_match());
        assert_eq!(r.generators_central, Some([true; 3]));
        assert!(!r.relation.as_ref().unwrap().holds);
        let (eps, check) = r.rederived.unwrap();
        assert!(check.holds);
        assert_eq!(eps, f.from_int(4));
    }

    #[test]
    fn generic_q_has_no_generators() {
        let f = make_field(&FieldSpec::RationalFunction).unwrap();
        let p = QParams::new(f.clone(), vec![f.generator().unwrap()]).unwrap();
        let e = Arc::new(ExtAlgebra::new(p));
        assert_eq!(build_generators(&e).unwrap_err(), StructureError::NoGenerators);
        let r = verify_structure_theorem(&e, 12);
        assert!(r.pass());
        assert_eq!(r.solver_dims, [vec![1], vec![0; 12]].concat());
        assert!(!verify_finite_generation(&e, 10).holds);
        assert_eq!(hh_mod_nil_report(&e).presentation, "K");
    }

    #[test]
    fn full_statement_small_instances() {
        for q in [&[1, 1][..], &[-1], &[1], &[1, 1, 1, 1], &[-1, 1, 1]] {
            let e = alg(q);
            let n = default_max_degree(e.params()).max(12);
            let r = verify_structure_theorem(&e, n);
            assert!(r.pass(), "q = {q:?}: {r:?}");
            assert_eq!(find_nilpotent(&r.basis), None);
        }
        let r = verify_structure_theorem(&alg(&[-1]), 12);
        assert_eq!(&r.solver_dims[..7], &[1, 0, 3, 0, 5, 0, 7]);
    }

    #[test]
    fn finite_generation_m1() {
        let e = alg(&[-1]);
        let fg = verify_finite_generation(&e, 10);
        assert!(fg.holds, "{fg:?}");
        assert!(fg.checked > 0);
    }

    #[test]
    fn hh_presentations() {
        assert_eq!(hh_mod_nil_report(&alg(&[1, 1])).presentation, "K[x,y,w]/<w^2 + x*y>");
        let r = hh_mod_nil_report(&alg(&[-1]));
        assert_eq!(r.presentation, "K[x,y,w]/<w^2 - x*y>");
        assert_eq!(r.krull_dimension, 2);
        assert_eq!(hh_mod_nil_report(&alg(&[1])).presentation, "K[x,y]");
    }
}
