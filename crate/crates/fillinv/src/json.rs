//! JSON interchange for complexes and metrics.
//!
//! A complex is `{"vertex_count": N, "simplices": {"k": [[...], ...]}}`;
//! faces may be omitted and are inferred on load. A metric extends it
//! with `"edge_lengths": [[i, j, "length"], ...]`, lengths as decimal or
//! fraction strings so rational values parse exactly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{FaceMode, SimplicialComplex};
use crate::error::{Error, Result};
use crate::metric::MetricComplex;
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertex_count: usize,
    /// dimension (as a string key) -> strictly increasing vertex tuples
    pub simplices: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_lengths: Option<Vec<(usize, usize, String)>>,
}

impl ComplexJson {
    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        let mut simplices = BTreeMap::new();
        for dim in 0..=complex.dim().unwrap_or(0) {
            simplices.insert(dim.to_string(), complex.simplices(dim).to_vec());
        }
        ComplexJson { vertex_count: complex.vertex_count(), simplices, edge_lengths: None }
    }

    pub fn from_metric(mc: &MetricComplex) -> Self {
        let mut json = Self::from_complex(mc.complex());
        json.edge_lengths = Some(
            mc.edge_lengths()
                .map(|(&(i, j), len)| (i, j, len.to_string()))
                .collect(),
        );
        json
    }

    /// Validates into a complex, inferring omitted faces.
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let mut all = Vec::new();
        for (key, list) in &self.simplices {
            let dim: usize = key
                .parse()
                .map_err(|_| Error::BadFormat(format!("bad dimension key {key:?}")))?;
            for tuple in list {
                if tuple.len() != dim + 1 {
                    return Err(Error::BadFormat(format!(
                        "tuple {tuple:?} filed under dimension {dim}"
                    )));
                }
                all.push(tuple.clone());
            }
        }
        SimplicialComplex::validate(self.vertex_count, all, FaceMode::CloseFaces)
    }

    pub fn to_metric(&self) -> Result<MetricComplex> {
        let complex = self.to_complex()?;
        let entries = self
            .edge_lengths
            .as_ref()
            .ok_or_else(|| Error::BadFormat("no edge_lengths in input".into()))?;
        let mut lengths = Vec::with_capacity(entries.len());
        for (i, j, text) in entries {
            lengths.push(((*i, *j), Scalar::parse(text)?));
        }
        MetricComplex::new(complex, lengths)
    }
}

pub fn complex_from_str(text: &str) -> Result<SimplicialComplex> {
    let json: ComplexJson =
        serde_json::from_str(text).map_err(|e| Error::BadFormat(e.to_string()))?;
    json.to_complex()
}

pub fn metric_from_str(text: &str) -> Result<MetricComplex> {
    let json: ComplexJson =
        serde_json::from_str(text).map_err(|e| Error::BadFormat(e.to_string()))?;
    json.to_metric()
}

pub fn metric_to_string(mc: &MetricComplex) -> String {
    serde_json::to_string_pretty(&ComplexJson::from_metric(mc)).expect("serializable")
}

pub fn complex_to_string(complex: &SimplicialComplex) -> String {
    serde_json::to_string_pretty(&ComplexJson::from_complex(complex)).expect("serializable")
}
