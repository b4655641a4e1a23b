use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CoefficientRing, Generator, RingElem, SeriesError, TruncatedSeries, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coefficient: Vec<String>,
}

/// Terms appear in canonical (ascending) monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub variables: Vec<Variable>,
    pub truncation: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub generators: Vec<Generator>,
    pub relations: Vec<Vec<String>>,
    pub presented_bound: Option<u32>,
    pub total_bound: Option<u32>,
}

fn coefficient_strings(ring: &CoefficientRing, c: &RingElem) -> Vec<String> {
    c.terms().map(|m| ring.format_monomial(m)).collect()
}

impl TruncatedSeries {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            variables: self.variables().to_vec(),
            truncation: self.truncation(),
            terms: self
                .terms()
                .map(|(e, c)| TermJson {
                    exponents: e.as_slice().to_vec(),
                    coefficient: coefficient_strings(self.ring(), c),
                })
                .collect(),
        }
    }

    pub fn from_json(ring: &Arc<CoefficientRing>, json: &SeriesJson) -> Result<Self, SeriesError> {
        if json.variables.iter().any(|v| v.weight == 0) {
            return Err(SeriesError::Json("variable weights must be positive".into()));
        }
        let mut out = TruncatedSeries::zero(ring, &json.variables, json.truncation);
        for term in &json.terms {
            if term.exponents.len() != json.variables.len() {
                return Err(SeriesError::Json(format!(
                    "term has {} exponents for {} variables",
                    term.exponents.len(),
                    json.variables.len()
                )));
            }
            let mut c = RingElem::zero();
            for m in &term.coefficient {
                c += &ring.parse(m)?;
            }
            let single =
                TruncatedSeries::monomial(ring, &json.variables, json.truncation, &term.exponents, &c);
            out.add_assign(&single)?;
        }
        Ok(out)
    }
}

impl CoefficientRing {
    pub fn to_json(&self) -> RingJson {
        RingJson {
            generators: self.generators().to_vec(),
            relations: self
                .relations()
                .iter()
                .map(|r| coefficient_strings(self, r))
                .collect(),
            presented_bound: self.presented_bound(),
            total_bound: self.total_bound(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::vars;

    #[test]
    fn round_trip() {
        let r = CoefficientRing::free(vec![("a".into(), 1), ("b".into(), 2)], None).unwrap();
        let v = vars(&[("x", 1), ("t", 1)]);
        let s = TruncatedSeries::from_terms(
            &r,
            &v,
            5,
            [
                (&[1u32, 0][..], r.parse("a + b").unwrap()),
                (&[2, 1][..], r.one()),
            ],
        );
        let json = s.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(TruncatedSeries::from_json(&r, &back).unwrap(), s);
        assert_eq!(json.terms[0].exponents, vec![1, 0]);
    }
}
