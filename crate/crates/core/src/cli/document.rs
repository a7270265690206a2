//! JSON documents for algebras and subalgebras. Coefficients are strings so
//! that rationals survive exactly.

use serde::{Deserialize, Serialize};

use crate::ainfinity::{AInfAlgebra, AlgebraBuilder, SubalgebraWitness};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::space::{BasisElement, GradedSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub id: String,
    pub degree: i64,
    pub source: usize,
    pub target: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unit: bool,
}

/// One structure constant block: μ^d(inputs) = Σ coefficient · id, inputs
/// written (a_d, …, a_1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuEntry {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub output: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub field: String,
    pub num_objects: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_bound: Option<usize>,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub mu: Vec<MuEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subalgebra: Option<Vec<String>>,
}

/// A parsed document: the algebra and, if listed, the subalgebra.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub algebra: AInfAlgebra,
    pub pair: Option<SubalgebraWitness>,
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_algebra(alg: &AInfAlgebra) -> Self {
        let space = alg.space();
        let basis = space
            .basis()
            .iter()
            .enumerate()
            .map(|(k, b)| BasisEntry {
                id: b.id.clone(),
                degree: b.degree,
                source: b.source,
                target: b.target,
                unit: alg.is_unit(k),
            })
            .collect();
        let mut mu = Vec::new();
        for (d, m) in alg.maps() {
            for (inputs, value) in m.entries() {
                mu.push(MuEntry {
                    arity: d,
                    inputs: inputs.iter().map(|&k| space.id(k).to_string()).collect(),
                    output: value
                        .iter()
                        .map(|(k, c)| (c.to_text(), space.id(k).to_string()))
                        .collect(),
                });
            }
        }
        Self {
            field: alg.field().to_string(),
            num_objects: alg.num_objects(),
            arity_bound: Some(alg.arity_bound()),
            basis,
            mu,
            subalgebra: None,
        }
    }

    pub fn from_pair(pair: &SubalgebraWitness) -> Self {
        let mut doc = Self::from_algebra(pair.parent());
        doc.subalgebra = Some(
            pair.members()
                .iter()
                .map(|&k| pair.parent().space().id(k).to_string())
                .collect(),
        );
        doc
    }

    /// Builds the algebra, reading coefficients in `field` when given and in
    /// the document's own field otherwise.
    pub fn parse(&self, field: Option<Field>) -> Result<Parsed> {
        let field = match field {
            Some(f) => f,
            None => self.field.parse()?,
        };
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement::new(b.id.clone(), b.degree, b.source, b.target))
            .collect();
        let space = GradedSpace::new(self.num_objects, basis)?;
        let mut builder = AlgebraBuilder::new(field, space);
        if let Some(bound) = self.arity_bound {
            builder = builder.arity_bound(bound);
        }
        for entry in &self.mu {
            if entry.inputs.len() != entry.arity {
                return Err(Error::ArityMismatch {
                    expected: entry.arity,
                    found: entry.inputs.len(),
                });
            }
            builder = builder.arity_bound(entry.arity);
            let inputs: Vec<&str> = entry.inputs.iter().map(String::as_str).collect();
            for (c, id) in &entry.output {
                builder.entry_scalar(&inputs, id, &field.parse(c)?)?;
            }
        }
        let units: Vec<&str> = self
            .basis
            .iter()
            .filter(|b| b.unit)
            .map(|b| b.id.as_str())
            .collect();
        if !units.is_empty() {
            builder.units(&units)?;
        }
        let algebra = builder.build()?;
        let pair = match &self.subalgebra {
            Some(ids) => Some(SubalgebraWitness::from_ids(algebra.clone(), ids)?),
            None => None,
        };
        Ok(Parsed { algebra, pair })
    }
}
