//! Canonical JSON form of a [`Poly`]: an array of
//! `{"exponents": {name: int}, "coeff": "p/q" | "n"}` objects in ascending
//! monomial order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Monomial, Poly, Rational, Var};
use crate::Error;

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: BTreeMap<String, u32>,
    coeff: String,
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational, Error> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

impl Poly {
    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms()
            .map(|(m, c)| TermJson {
                exponents: m.iter().map(|(v, e)| (v.name().to_owned(), e)).collect(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(terms).expect("term list serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("term list serializes")
    }

    pub fn from_json_value(v: serde_json::Value) -> Result<Poly, Error> {
        let terms: Vec<TermJson> =
            serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        let mut p = Poly::zero();
        for t in terms {
            let m = Monomial::from_pairs(t.exponents.iter().map(|(k, e)| (Var::new(k), *e)));
            p.add_term(m, parse_rational(&t.coeff)?);
        }
        Ok(p)
    }

    pub fn from_json(s: &str) -> Result<Poly, Error> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Poly::from_json_value(v)
    }
}
