use std::fmt::Write as _;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{RationalFunction, ZetaFunction, ZetaTerm};
use crate::arith::PAdicContext;
use crate::{Error, Integer, Rational, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub coeff: String,
    #[serde(with = "crate::decimal")]
    pub t_pow: u64,
    #[serde(with = "crate::decimal")]
    pub den_pow: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDocument {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

/// Serialized form of a [`ZetaFunction`]; every number is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaDocument {
    pub p: String,
    #[serde(with = "crate::decimal")]
    pub shift: i64,
    pub terms: Vec<TermDocument>,
    pub normalized: RationalDocument,
}

impl From<&RationalFunction> for RationalDocument {
    fn from(r: &RationalFunction) -> Self {
        let strings = |c: &[Integer]| c.iter().map(|x| x.to_string()).collect();
        RationalDocument {
            num: strings(r.numerator().coeffs()),
            den: strings(r.denominator().coeffs()),
        }
    }
}

impl From<&ZetaFunction> for ZetaDocument {
    fn from(z: &ZetaFunction) -> Self {
        ZetaDocument {
            p: z.ctx().p().to_string(),
            shift: z.shift(),
            terms: z
                .terms()
                .iter()
                .map(|t| TermDocument {
                    coeff: t.coeff.to_string(),
                    t_pow: t.t_pow,
                    den_pow: t.den_pow,
                })
                .collect(),
            normalized: (&z.normalize()).into(),
        }
    }
}

fn document_error(what: impl std::fmt::Display) -> Error {
    Error::Document(what.to_string())
}

/// Reads a document back, checking the stored normalized form against the
/// terms.
pub(super) fn from_json(text: &str) -> Result<ZetaFunction> {
    let doc: ZetaDocument = serde_json::from_str(text).map_err(document_error)?;
    let p: Integer = doc.p.parse().map_err(|_| document_error("p"))?;
    let ctx = PAdicContext::new(p)?;
    let terms = doc
        .terms
        .iter()
        .map(|t| {
            let coeff: Rational = t.coeff.parse().map_err(|_| document_error("coeff"))?;
            Ok(ZetaTerm::new(coeff, t.t_pow, t.den_pow))
        })
        .collect::<Result<Vec<_>>>()?;
    let z = ZetaFunction::new(ctx, doc.shift, terms);
    if RationalDocument::from(&z.normalize()) != doc.normalized {
        return Err(document_error("normalized form does not match the terms"));
    }
    Ok(z)
}

fn power(p: &Integer, k: u64) -> String {
    match k {
        1 => format!("{p}^(-s)"),
        _ => format!("{p}^(-{k}s)"),
    }
}

/// E.g. `2/3 + 1/9*3^(-3s) + 2/27*3^(-4s)/(1 - 3^(-1)*3^(-s))`.
pub(super) fn display_terms(z: &ZetaFunction) -> String {
    let p = z.ctx().p();
    let mut body = String::new();
    for term in z.terms() {
        let c = &term.coeff;
        if body.is_empty() {
            if c.is_negative() {
                body.push('-');
            }
        } else {
            body.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let c = c.abs();
        match (c.is_one(), term.t_pow) {
            (_, 0) => {
                let _ = write!(body, "{c}");
            }
            (true, a) => body.push_str(&power(p, a)),
            (false, a) => {
                let _ = write!(body, "{c}*{}", power(p, a));
            }
        }
        if term.den_pow > 0 {
            let _ = write!(body, "/(1 - {p}^(-1)*{})", power(p, term.den_pow));
        }
    }
    if body.is_empty() {
        body.push('0');
    }
    match z.shift() {
        0 => body,
        k if k > 0 => format!("{} * ({body})", power(p, k as u64)),
        -1 => format!("{p}^s * ({body})"),
        k => format!("{p}^({}s) * ({body})", k.unsigned_abs()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyio::FactoredPoly;
    use crate::zeta::compute_zeta;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn worked() -> ZetaFunction {
        let f = FactoredPoly::monic([(q(1, 1), 2), (q(4, 1), 1)]).unwrap();
        compute_zeta(&f, &PAdicContext::new(3).unwrap()).unwrap().zeta
    }

    #[test]
    fn human_rendering() {
        let ctx = PAdicContext::new(3).unwrap();
        let z = ZetaFunction::new(
            ctx.clone(),
            0,
            [ZetaTerm::new(q(2, 3), 0, 0), ZetaTerm::new(q(2, 27), 4, 1), ZetaTerm::new(q(1, 1), 1, 2)],
        );
        assert_eq!(
            z.display_terms(),
            "2/3 + 2/27*3^(-4s)/(1 - 3^(-1)*3^(-s)) + 3^(-s)/(1 - 3^(-1)*3^(-2s))"
        );
        let z = ZetaFunction::new(ctx, -2, [ZetaTerm::new(q(-1, 2), 0, 0)]);
        assert_eq!(z.display_terms(), "3^(2s) * (-1/2)");
        let z = z.with_shift(-1);
        assert_eq!(z.display_terms(), "3^s * (-1/2)");
    }

    #[test]
    fn json_round_trip() {
        let z = worked();
        let text = z.to_json();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["p"], "3");
        assert_eq!(value["shift"], "0");
        assert!(value["terms"][0]["t_pow"].is_string());
        assert!(value["normalized"]["num"][0].is_string());
        assert_eq!(ZetaFunction::from_json(&text).unwrap(), z);
    }

    #[test]
    fn json_rejects_inconsistent_documents() {
        let mut doc = worked().to_document();
        doc.terms.pop();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(ZetaFunction::from_json(&text), Err(Error::Document(_))));

        let mut doc = worked().to_document();
        doc.p = "4".into();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(ZetaFunction::from_json(&text), Err(Error::NotPrime(_))));
        assert!(ZetaFunction::from_json("{").is_err());
    }
}
