//! JSON graph files.
//!
//! ```json
//! {"vertices": 2, "edges": [[0,1],[0,1]], "legs": [0,1], "theory": {"valences": [3]}}
//! ```
//! Edge order defines edge ids.

use serde::{Deserialize, Serialize};

use super::{Graph, Theory};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheorySpec {
    pub valences: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u32>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub mass_insertions: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub legs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theory: Option<TheorySpec>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph, theory: Option<&Theory>) -> Self {
        GraphFile {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|e| [e.source, e.target]).collect(),
            legs: g.legs().to_vec(),
            theory: theory.map(|t| TheorySpec {
                valences: t.valences().iter().copied().collect(),
                dimension: Some(t.spacetime_dim()),
                mass_insertions: t.mass_insertions(),
            }),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::new(
            self.vertices,
            self.edges.iter().map(|&[a, b]| (a, b)).collect(),
            self.legs.clone(),
        )
    }

    /// The declared theory, defaulting the dimension to 4 for quartic-only
    /// and 6 otherwise.
    pub fn theory(&self) -> Result<Option<Theory>> {
        let Some(spec) = &self.theory else {
            return Ok(None);
        };
        let dim = spec.dimension.unwrap_or(if spec.valences == [4] { 4 } else { 6 });
        Ok(Some(
            Theory::new(spec.valences.iter().copied(), dim)?.with_mass_insertions(spec.mass_insertions),
        ))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph file serializes")
    }
}
