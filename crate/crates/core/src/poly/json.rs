//! Polynomial JSON document: `{"vars": n, "terms": [{"c": "3/2", "e": [2,0,1]}, ...]}`.

use serde::{Deserialize, Serialize};

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDocument {
    pub vars: usize,
    pub terms: Vec<TermDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDocument {
    pub c: String,
    pub e: Vec<u32>,
}

impl From<&Polynomial> for PolynomialDocument {
    fn from(p: &Polynomial) -> Self {
        PolynomialDocument {
            vars: p.n(),
            terms: p
                .terms()
                .map(|(m, c)| TermDocument {
                    c: c.to_string(),
                    e: m.exponents().to_vec(),
                })
                .collect(),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Document(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if den <= 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

impl PolynomialDocument {
    /// Strict conversion: rejects zero coefficients, duplicate exponents and
    /// out-of-order terms, so accepted documents round-trip byte-for-byte.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        if self.vars == 0 {
            return Err(Error::NoVariables);
        }
        let mut prev: Option<Monomial> = None;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.e.len() != self.vars {
                return Err(Error::Document(format!(
                    "exponent vector {:?} has length {}, expected {}",
                    t.e,
                    t.e.len(),
                    self.vars
                )));
            }
            let m = Monomial::new(t.e.clone())?;
            if let Some(p) = &prev {
                if &m >= p {
                    return Err(Error::Document(format!(
                        "terms not in descending graded-lex order at {:?}",
                        t.e
                    )));
                }
            }
            let c = parse_rational(&t.c)?;
            if num_traits::Zero::is_zero(&c) {
                return Err(Error::Document(format!("zero coefficient at {:?}", t.e)));
            }
            if c.to_string() != t.c {
                return Err(Error::Document(format!(
                    "coefficient `{}` is not reduced",
                    t.c
                )));
            }
            prev = Some(m.clone());
            terms.push((m, c));
        }
        Polynomial::from_terms(self.vars, terms)
    }
}

pub fn to_json(p: &Polynomial) -> String {
    let mut s = serde_json::to_string(&PolynomialDocument::from(p)).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<Polynomial> {
    let doc: PolynomialDocument =
        serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_polynomial()
}

/// Accepts either a JSON document or the text syntax.
pub fn parse_any(s: &str, vars: Option<usize>) -> Result<Polynomial> {
    if s.trim_start().starts_with('{') {
        let p = from_json(s)?;
        if let Some(n) = vars {
            if n != p.n() {
                return Err(Error::VarCountMismatch {
                    left: n,
                    right: p.n(),
                });
            }
        }
        Ok(p)
    } else {
        super::parse_text(s.trim(), vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_text;

    #[test]
    fn exact_schema() {
        let p = parse_text("3/2 x^2 z + y", Some(3)).unwrap();
        assert_eq!(
            to_json(&p),
            "{\"vars\":3,\"terms\":[{\"c\":\"3/2\",\"e\":[2,0,1]},{\"c\":\"1\",\"e\":[0,1,0]}]}\n"
        );
    }

    #[test]
    fn rejects_non_canonical_documents() {
        let unordered = r#"{"vars":2,"terms":[{"c":"1","e":[0,1]},{"c":"1","e":[1,0]}]}"#;
        assert!(from_json(unordered).is_err());
        let dup = r#"{"vars":2,"terms":[{"c":"1","e":[1,0]},{"c":"1","e":[1,0]}]}"#;
        assert!(from_json(dup).is_err());
        let zero = r#"{"vars":2,"terms":[{"c":"0","e":[1,0]}]}"#;
        assert!(from_json(zero).is_err());
        let unreduced = r#"{"vars":2,"terms":[{"c":"2/4","e":[1,0]}]}"#;
        assert!(from_json(unreduced).is_err());
        let short = r#"{"vars":2,"terms":[{"c":"1","e":[1]}]}"#;
        assert!(from_json(short).is_err());
    }

    #[test]
    fn zero_polynomial_document() {
        let z = Polynomial::zero(2);
        assert_eq!(to_json(&z), "{\"vars\":2,\"terms\":[]}\n");
        assert_eq!(from_json(&to_json(&z)).unwrap(), z);
    }
}
