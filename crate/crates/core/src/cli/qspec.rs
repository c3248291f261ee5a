use num_traits::ToPrimitive;

use crate::coeff::{make_field, parse_polynomial, AnyField, Field, FieldScalar, FieldSpec, QParams};

/// Parses a q-specification into parameters for `m` vertices:
///
/// - `rat:v0,v1,...` rationals, `3/2` allowed
/// - `cyclo:D:e0,e1,...` with `q_i = z^{e_i}` in `Q(zeta_D)`
/// - `fp:p:v0,...` in `F_p`
/// - `fpx:p:modulus:v0,...` in `F_p[z]/(modulus)`, values polynomials in `z`
/// - `generic`: `q_0 = u` in `Q(u)`, other entries 1
pub fn parse_qspec(text: &str, m: usize) -> Result<QParams<AnyField>, String> {
    if m == 0 {
        return Err("m must be at least 1".into());
    }
    let text = text.trim();
    let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
    let (field, values) = match kind {
        "generic" => {
            if !rest.is_empty() {
                return Err("generic takes no values".into());
            }
            let f = field(&FieldSpec::RationalFunction)?;
            let mut q = vec![f.one(); m];
            q[0] = f.generator().unwrap();
            return QParams::new(f, q).map_err(|e| e.to_string());
        }
        "rat" => (field(&FieldSpec::Rationals)?, rest),
        "cyclo" => {
            let (d, exps) = rest.split_once(':').ok_or("expected cyclo:D:e0,e1,...")?;
            let order = parse_num(d, "cyclotomic order")?;
            let f = field(&FieldSpec::Cyclotomic { order })?;
            let z = f.generator().unwrap();
            let zinv = f.inv(&z).unwrap();
            let q = split_values(exps, m)?
                .into_iter()
                .map(|e| {
                    let e: i64 = e.parse().map_err(|_| format!("bad exponent {e:?}"))?;
                    Ok(f.pow(if e < 0 { &zinv } else { &z }, e.unsigned_abs()))
                })
                .collect::<Result<Vec<_>, String>>()?;
            return QParams::new(f, q).map_err(|e| e.to_string());
        }
        "fp" => {
            let (p, vals) = rest.split_once(':').ok_or("expected fp:p:v0,v1,...")?;
            let p = parse_num(p, "characteristic")?;
            (field(&FieldSpec::Finite { p, modulus: None })?, vals)
        }
        "fpx" => {
            let mut parts = rest.splitn(3, ':');
            let (Some(p), Some(modulus), Some(vals)) = (parts.next(), parts.next(), parts.next()) else {
                return Err("expected fpx:p:modulus:v0,v1,...".into());
            };
            let p = parse_num(p, "characteristic")?;
            let coeffs = parse_polynomial(modulus, 'z')
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|c| {
                    c.is_integer()
                        .then(|| c.to_integer().to_i64())
                        .flatten()
                        .ok_or_else(|| format!("modulus coefficient {c} is not a small integer"))
                })
                .collect::<Result<Vec<_>, String>>()?;
            (field(&FieldSpec::Finite { p, modulus: Some(coeffs) })?, vals)
        }
        _ => return Err(format!("unknown q-spec kind {kind:?}")),
    };
    let q = split_values(values, m)?
        .into_iter()
        .map(|v| field.parse(v).map_err(|e| e.to_string()))
        .collect::<Result<Vec<FieldScalar>, String>>()?;
    QParams::new(field, q).map_err(|e| e.to_string())
}

/// The default q-spec: all entries 1 over the rationals.
pub fn trivial_qspec(m: usize) -> String {
    format!("rat:{}", vec!["1"; m].join(","))
}

fn field(spec: &FieldSpec) -> Result<AnyField, String> {
    make_field(spec).map_err(|e| e.to_string())
}

fn parse_num(s: &str, what: &str) -> Result<u64, String> {
    s.trim().parse().map_err(|_| format!("bad {what} {s:?}"))
}

fn split_values(s: &str, m: usize) -> Result<Vec<&str>, String> {
    let vals: Vec<&str> = s.split(',').map(str::trim).collect();
    if vals.len() != m || vals.iter().any(|v| v.is_empty()) {
        return Err(format!("expected {m} q-values, got {s:?}"));
    }
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::UnityOrder;

    #[test]
    fn families() {
        let q = parse_qspec("rat:3/2,-1,2/3", 3).unwrap();
        assert_eq!(q.format_q(), vec!["3/2", "-1", "2/3"]);
        assert_eq!(q.order(), UnityOrder::Finite(2));

        let q = parse_qspec("cyclo:6:1,-2,2", 3).unwrap();
        assert_eq!(q.order(), UnityOrder::Finite(6));

        let q = parse_qspec("fp:7:3,1", 2).unwrap();
        assert_eq!(q.order(), UnityOrder::Finite(6));

        let q = parse_qspec("fpx:2:z^2+z+1:z,1,1", 3).unwrap();
        assert_eq!(q.order(), UnityOrder::Finite(3));

        let q = parse_qspec("generic", 2).unwrap();
        assert_eq!(q.order(), UnityOrder::Infinite);
    }

    #[test]
    fn rejects() {
        assert!(parse_qspec("rat:0,1", 2).is_err());
        assert!(parse_qspec("rat:1", 2).is_err());
        assert!(parse_qspec("rat:1,,", 3).is_err());
        assert!(parse_qspec("fp:6:1", 1).is_err());
        assert!(parse_qspec("fpx:2:z^2+1:z", 1).is_err());
        assert!(parse_qspec("poly:1", 1).is_err());
        assert!(parse_qspec("cyclo:4:x", 1).is_err());
        assert!(parse_qspec("fp:5:0", 1).is_err());
    }
}
