//! Committed golden data: the hand-decoded n = 3 moment graph
//! (38 vertices, 123 distinct arrows).

use crate::collections::AdmissibleCollection;
use crate::error::{Error, Result};
use crate::subset::Subset;

pub const MOMENT_GRAPH_N3: &str = include_str!("../fixtures/moment_graph_n3.json");

/// A decoded reference graph. Vertex ids are 1-based; edges reference
/// those ids. Parallel arrows appear once in the source data, so the edge
/// list carries distinct ordered pairs only.
#[derive(Clone, Debug)]
pub struct ReferenceGraph {
    pub n: usize,
    pub vertices: Vec<(AdmissibleCollection, bool)>,
    pub edges: Vec<(usize, usize)>,
}

impl ReferenceGraph {
    fn parse(raw: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(raw)
            .map_err(|e| Error::Integrity(format!("fixture parse: {e}")))?;
        let n = v["n"].as_u64().unwrap() as usize;
        let mut vertices = Vec::new();
        for rec in v["vertices"].as_array().unwrap() {
            let sets = rec["sets"]
                .as_array()
                .unwrap()
                .iter()
                .map(|arr| {
                    Subset::new(
                        arr.as_array()
                            .unwrap()
                            .iter()
                            .map(|x| x.as_u64().unwrap() as usize),
                        n + 1,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let smooth = rec["smooth"].as_bool().unwrap();
            vertices.push((AdmissibleCollection::new(sets)?, smooth));
        }
        let edges = v["edges"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                let pair = e.as_array().unwrap();
                (
                    pair[0].as_u64().unwrap() as usize,
                    pair[1].as_u64().unwrap() as usize,
                )
            })
            .collect();
        Ok(ReferenceGraph { n, vertices, edges })
    }

    /// Vertex by its 1-based id.
    pub fn vertex(&self, id: usize) -> &AdmissibleCollection {
        &self.vertices[id - 1].0
    }
}

/// The decoded n = 3 reference graph.
pub fn reference_graph_n3() -> ReferenceGraph {
    ReferenceGraph::parse(MOMENT_GRAPH_N3).expect("committed fixture is well-formed")
}
