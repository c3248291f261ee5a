use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::{
    CoeffError, Field, PrimeField, RatFunc, RationalFunctions, Rationals, SimpleExtension,
};

/// Which exact field to build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    Cyclotomic { order: u64 },
    RationalFunction,
    /// `F_p`, or `F_p[z]/(modulus)` with the modulus in ascending degree.
    Finite { p: u64, modulus: Option<Vec<i64>> },
}

/// Runtime handle over the four field families.
#[derive(Clone, Debug)]
pub enum AnyField {
    Rationals(Rationals),
    Cyclotomic(Arc<SimpleExtension<Rationals>>),
    RationalFunctions(Arc<RationalFunctions>),
    Prime(PrimeField),
    FiniteExtension(Arc<SimpleExtension<PrimeField>>),
}

/// An element of an [`AnyField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Cyclotomic(Poly<BigRational>),
    RationalFunction(RatFunc),
    Prime(u64),
    FiniteExtension(Poly<u64>),
}

pub fn make_field(spec: &FieldSpec) -> Result<AnyField, CoeffError> {
    Ok(match spec {
        FieldSpec::Rationals => AnyField::Rationals(Rationals),
        FieldSpec::Cyclotomic { order } => {
            AnyField::Cyclotomic(Arc::new(SimpleExtension::cyclotomic(*order)?))
        }
        FieldSpec::RationalFunction => {
            AnyField::RationalFunctions(Arc::new(RationalFunctions::new()))
        }
        FieldSpec::Finite { p, modulus: None } => AnyField::Prime(PrimeField::new(*p)?),
        FieldSpec::Finite {
            p,
            modulus: Some(coeffs),
        } => AnyField::FiniteExtension(Arc::new(SimpleExtension::finite(*p, coeffs)?)),
    })
}

macro_rules! dispatch {
    ($self:expr, $f:ident => $body:expr) => {
        match $self {
            AnyField::Rationals($f) => $body,
            AnyField::Cyclotomic($f) => $body,
            AnyField::RationalFunctions($f) => $body,
            AnyField::Prime($f) => $body,
            AnyField::FiniteExtension($f) => $body,
        }
    };
}

macro_rules! lift {
    ($self:expr, $f:ident, |$($a:ident),*| $body:expr) => {
        match $self {
            AnyField::Rationals($f) => {
                $(let FieldScalar::Rational($a) = $a else { mismatch() };)*
                FieldScalar::Rational($body)
            }
            AnyField::Cyclotomic($f) => {
                $(let FieldScalar::Cyclotomic($a) = $a else { mismatch() };)*
                FieldScalar::Cyclotomic($body)
            }
            AnyField::RationalFunctions($f) => {
                $(let FieldScalar::RationalFunction($a) = $a else { mismatch() };)*
                FieldScalar::RationalFunction($body)
            }
            AnyField::Prime($f) => {
                $(let FieldScalar::Prime($a) = $a else { mismatch() };)*
                FieldScalar::Prime($body)
            }
            AnyField::FiniteExtension($f) => {
                $(let FieldScalar::FiniteExtension($a) = $a else { mismatch() };)*
                FieldScalar::FiniteExtension($body)
            }
        }
    };
}

macro_rules! inspect {
    ($self:expr, $f:ident, |$($a:ident),*| $body:expr) => {
        match $self {
            AnyField::Rationals($f) => {
                $(let FieldScalar::Rational($a) = $a else { mismatch() };)*
                $body
            }
            AnyField::Cyclotomic($f) => {
                $(let FieldScalar::Cyclotomic($a) = $a else { mismatch() };)*
                $body
            }
            AnyField::RationalFunctions($f) => {
                $(let FieldScalar::RationalFunction($a) = $a else { mismatch() };)*
                $body
            }
            AnyField::Prime($f) => {
                $(let FieldScalar::Prime($a) = $a else { mismatch() };)*
                $body
            }
            AnyField::FiniteExtension($f) => {
                $(let FieldScalar::FiniteExtension($a) = $a else { mismatch() };)*
                $body
            }
        }
    };
}

fn mismatch() -> ! {
    panic!("scalar does not belong to this field family")
}

impl AnyField {
    fn wrap_opt<T>(&self, x: Option<T>, w: impl FnOnce(T) -> FieldScalar) -> Option<FieldScalar> {
        x.map(w)
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyField::Rationals(_) => FieldSpec::Rationals,
            AnyField::Cyclotomic(f) => FieldSpec::Cyclotomic {
                order: f.cyclotomic_order().unwrap(),
            },
            AnyField::RationalFunctions(_) => FieldSpec::RationalFunction,
            AnyField::Prime(f) => FieldSpec::Finite {
                p: f.modulus(),
                modulus: None,
            },
            AnyField::FiniteExtension(f) => FieldSpec::Finite {
                p: f.base().modulus(),
                modulus: Some(f.modulus().coeffs().iter().map(|&c| c as i64).collect()),
            },
        }
    }

    /// Short human-readable name, e.g. `Q(zeta_6)` or `F_2[z]/(z^2+z+1)`.
    pub fn describe(&self) -> String {
        match self {
            AnyField::Rationals(_) => "Q".into(),
            AnyField::Cyclotomic(f) => format!("Q(zeta_{})", f.cyclotomic_order().unwrap()),
            AnyField::RationalFunctions(_) => "Q(u)".into(),
            AnyField::Prime(f) => format!("F_{}", f.modulus()),
            AnyField::FiniteExtension(f) => format!(
                "F_{}[z]/({})",
                f.base().modulus(),
                f.poly_ring().format(f.modulus(), "z")
            ),
        }
    }

    /// The distinguished generator: `z` for polynomial quotients, `u` for
    /// the rational function field.
    pub fn generator(&self) -> Option<FieldScalar> {
        match self {
            AnyField::Cyclotomic(f) => Some(FieldScalar::Cyclotomic(f.generator())),
            AnyField::FiniteExtension(f) => Some(FieldScalar::FiniteExtension(f.generator())),
            AnyField::RationalFunctions(f) => {
                Some(FieldScalar::RationalFunction(f.indeterminate()))
            }
            _ => None,
        }
    }

    /// Parses a polynomial expression with rational coefficients in the
    /// field's generator (`z`, or `u` for rational functions), e.g. `3/2`,
    /// `-z^2+1`, `2*u`.
    pub fn parse(&self, text: &str) -> Result<FieldScalar, CoeffError> {
        let terms = parse_terms(text).ok_or_else(|| CoeffError::NotRepresentable(text.into()))?;
        let var_ok = match self {
            AnyField::Cyclotomic(_) | AnyField::FiniteExtension(_) => Some('z'),
            AnyField::RationalFunctions(_) => Some('u'),
            _ => None,
        };
        let mut acc = self.zero();
        for (coef, var, exp) in terms {
            let c = self
                .from_rational(&coef)
                .ok_or_else(|| CoeffError::NotRepresentable(text.into()))?;
            let term = match var {
                None => c,
                Some(v) if Some(v) == var_ok => {
                    let g = self.generator().unwrap();
                    self.mul(&c, &self.pow(&g, exp))
                }
                Some(_) => return Err(CoeffError::NotRepresentable(text.into())),
            };
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }
}

type Term = (BigRational, Option<char>, u64);

/// Coefficients, lowest degree first, of a polynomial in `var` with
/// rational coefficients such as `z^2 + z + 1`.
pub fn parse_polynomial(text: &str, var: char) -> Result<Vec<BigRational>, CoeffError> {
    let bad = || CoeffError::NotRepresentable(text.into());
    let mut coeffs: Vec<BigRational> = vec![];
    for (c, v, e) in parse_terms(text).ok_or_else(bad)? {
        let e = match v {
            None => 0,
            Some(v) if v == var => e as usize,
            Some(_) => return Err(bad()),
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, BigRational::from_integer(0.into()));
        }
        coeffs[e] += c;
    }
    Ok(coeffs)
}

fn parse_terms(text: &str) -> Option<Vec<Term>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut pieces = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            pieces.push(&s[start..i]);
            start = i;
        }
    }
    pieces.push(&s[start..]);
    pieces.into_iter().map(parse_term).collect()
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn parse_term(t: &str) -> Option<Term> {
    let (neg, body) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let var_pos = body.find(|c: char| c.is_ascii_alphabetic());
    let (coef, var, exp) = match var_pos {
        None => (parse_rational(body)?, None, 0),
        Some(p) => {
            let coef_str = body[..p].trim_end_matches('*');
            let coef = if coef_str.is_empty() {
                BigRational::from_integer(1.into())
            } else {
                parse_rational(coef_str)?
            };
            let var = body[p..].chars().next()?;
            let rest = &body[p + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')?.parse().ok()?
            };
            (coef, Some(var), exp)
        }
    };
    Some((if neg { -coef } else { coef }, var, exp))
}

impl Field for AnyField {
    type Elem = FieldScalar;

    fn zero(&self) -> FieldScalar {
        lift!(self, f, | | f.zero())
    }

    fn one(&self) -> FieldScalar {
        lift!(self, f, | | f.one())
    }

    fn from_int(&self, n: i64) -> FieldScalar {
        lift!(self, f, | | f.from_int(n))
    }

    fn from_rational(&self, r: &BigRational) -> Option<FieldScalar> {
        match self {
            AnyField::Rationals(f) => self.wrap_opt(f.from_rational(r), FieldScalar::Rational),
            AnyField::Cyclotomic(f) => self.wrap_opt(f.from_rational(r), FieldScalar::Cyclotomic),
            AnyField::RationalFunctions(f) => {
                self.wrap_opt(f.from_rational(r), FieldScalar::RationalFunction)
            }
            AnyField::Prime(f) => self.wrap_opt(f.from_rational(r), FieldScalar::Prime),
            AnyField::FiniteExtension(f) => {
                self.wrap_opt(f.from_rational(r), FieldScalar::FiniteExtension)
            }
        }
    }

    fn add(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        lift!(self, f, |a, b| f.add(a, b))
    }

    fn neg(&self, a: &FieldScalar) -> FieldScalar {
        lift!(self, f, |a| f.neg(a))
    }

    fn sub(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        lift!(self, f, |a, b| f.sub(a, b))
    }

    fn mul(&self, a: &FieldScalar, b: &FieldScalar) -> FieldScalar {
        lift!(self, f, |a, b| f.mul(a, b))
    }

    fn inv(&self, a: &FieldScalar) -> Option<FieldScalar> {
        match (self, a) {
            (AnyField::Rationals(f), FieldScalar::Rational(a)) => {
                f.inv(a).map(FieldScalar::Rational)
            }
            (AnyField::Cyclotomic(f), FieldScalar::Cyclotomic(a)) => {
                f.inv(a).map(FieldScalar::Cyclotomic)
            }
            (AnyField::RationalFunctions(f), FieldScalar::RationalFunction(a)) => {
                f.inv(a).map(FieldScalar::RationalFunction)
            }
            (AnyField::Prime(f), FieldScalar::Prime(a)) => f.inv(a).map(FieldScalar::Prime),
            (AnyField::FiniteExtension(f), FieldScalar::FiniteExtension(a)) => {
                f.inv(a).map(FieldScalar::FiniteExtension)
            }
            _ => mismatch(),
        }
    }

    fn is_zero(&self, a: &FieldScalar) -> bool {
        inspect!(self, f, |a| f.is_zero(a))
    }

    fn characteristic(&self) -> u64 {
        dispatch!(self, f => f.characteristic())
    }

    fn torsion_bound(&self) -> u64 {
        dispatch!(self, f => f.torsion_bound())
    }

    fn size(&self) -> Option<u128> {
        dispatch!(self, f => f.size())
    }

    fn element(&self, index: u64) -> FieldScalar {
        lift!(self, f, | | f.element(index))
    }

    fn format(&self, a: &FieldScalar) -> String {
        inspect!(self, f, |a| f.format(a))
    }

    fn format_plain(&self, a: &FieldScalar) -> String {
        inspect!(self, f, |a| f.format_plain(a))
    }

    fn sqrt(&self, a: &FieldScalar) -> Result<Option<FieldScalar>, CoeffError> {
        match (self, a) {
            (AnyField::Rationals(f), FieldScalar::Rational(a)) => {
                Ok(f.sqrt(a)?.map(FieldScalar::Rational))
            }
            (AnyField::Cyclotomic(f), FieldScalar::Cyclotomic(a)) => {
                Ok(f.sqrt(a)?.map(FieldScalar::Cyclotomic))
            }
            (AnyField::RationalFunctions(f), FieldScalar::RationalFunction(a)) => {
                Ok(f.sqrt(a)?.map(FieldScalar::RationalFunction))
            }
            (AnyField::Prime(f), FieldScalar::Prime(a)) => Ok(f.sqrt(a)?.map(FieldScalar::Prime)),
            (AnyField::FiniteExtension(f), FieldScalar::FiniteExtension(a)) => {
                Ok(f.sqrt(a)?.map(FieldScalar::FiniteExtension))
            }
            _ => mismatch(),
        }
    }

    fn pow(&self, a: &FieldScalar, e: u64) -> FieldScalar {
        lift!(self, f, |a| f.pow(a, e))
    }
}
