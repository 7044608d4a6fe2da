//! JSON component documents.
//!
//! ```json
//! { "n": 4, "components": [ { "idx": [0, 1, 0, 1], "value": -2.0 } ] }
//! ```
//!
//! Omitted components are zero; indices are all lowered.

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::symcore::{IndexQuad, RiemannComponents};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRecord {
    pub idx: [usize; 4],
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDocument {
    pub n: usize,
    pub components: Vec<ComponentRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

impl ComponentDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Canonical upper-triangle listing: one record per nonzero slot pair.
    pub fn from_tensor(r: &RiemannComponents) -> Self {
        let pairs = crate::symcore::PairBasis::Lex.pairs(r.dim());
        let mut components = Vec::new();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for (j, &(c, d)) in pairs.iter().enumerate().skip(i) {
                let value = r.slot_entry(i, j);
                if value != 0.0 {
                    components.push(ComponentRecord {
                        idx: [a, b, c, d],
                        value,
                    });
                }
            }
        }
        Self {
            n: r.dim(),
            components,
            metadata: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn to_tensor(&self, tol: f64) -> Result<RiemannComponents, CliError> {
        let entries: Vec<(IndexQuad, f64)> = self.components.iter().map(|c| (IndexQuad(c.idx), c.value)).collect();
        Ok(RiemannComponents::from_component_list(self.n, &entries, tol)?)
    }
}

/// Parses a document and builds the tensor, optionally projecting onto the
/// cyclic-identity subspace.
pub fn ingest(text: &str, tol: f64, enforce_bianchi: bool) -> Result<RiemannComponents, CliError> {
    let r = ComponentDocument::parse(text)?.to_tensor(tol)?;
    Ok(if enforce_bianchi { r.project_bianchi() } else { r })
}
