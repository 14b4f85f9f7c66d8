//! One-dimensional torus orbits between fixed points and the resulting
//! moment graph, for complete and partial step vectors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cells::cell_dim;
use crate::collections::{
    enumerate_admissible, enumerate_d_admissible, is_smooth, project_to_partial,
    AdmissibleCollection, DVector, PartialCollection,
};
use crate::error::{Error, Result};
use crate::quiver::{ext1_defect, summands, tangent_dim, Summand};

/// A pair of summand indices carrying a one-dimensional orbit out of a
/// fixed point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct EffectivePair {
    pub i: usize,
    pub j: usize,
}

fn support_intersection(a: &Summand, b: &Summand) -> impl Iterator<Item = usize> {
    let lo = a.support.lo.max(b.support.lo);
    let hi = a.support.hi.min(b.support.hi);
    lo..=hi
}

/// All pairs i < j of summand indices with j - i <= n such that some common
/// support index k has label(i) in S_k and label(j) not in S_k.
pub fn effective_pairs(s: &AdmissibleCollection) -> Vec<EffectivePair> {
    let n = s.n();
    let sm = summands(n);
    let mut out = Vec::new();
    for i in 1..=2 * n {
        for j in i + 1..=(i + n).min(2 * n) {
            let (a, b) = (&sm[i - 1], &sm[j - 1]);
            let hit = support_intersection(a, b)
                .any(|k| s.set(k).contains(a.label) && !s.set(k).contains(b.label));
            if hit {
                out.push(EffectivePair { i, j });
            }
        }
    }
    out
}

/// The far endpoint of the orbit through `pair`: replace label(i) by
/// label(j) in every common-support set where the exchange is effective.
pub fn edge_target(s: &AdmissibleCollection, pair: EffectivePair) -> Result<AdmissibleCollection> {
    let n = s.n();
    let sm = summands(n);
    if pair.i < 1 || pair.j > 2 * n || pair.i >= pair.j || pair.j - pair.i > n {
        return Err(Error::Validation(format!("bad pair {pair:?}")));
    }
    let (a, b) = (&sm[pair.i - 1], &sm[pair.j - 1]);
    let (u, v) = (a.label, b.label);
    let mut sets = s.sets().to_vec();
    let mut moved = false;
    for k in support_intersection(a, b) {
        if sets[k - 1].contains(u) && !sets[k - 1].contains(v) {
            sets[k - 1] = sets[k - 1].without(u).with(v);
            moved = true;
        }
    }
    if !moved {
        return Err(Error::Domain(format!("pair {pair:?} is not effective on {s:?}")));
    }
    AdmissibleCollection::new(sets)
        .map_err(|_| Error::Integrity(format!("target of {pair:?} on {s:?} not admissible")))
}

/// A moment-graph edge between vertex indices, labelled by the effective
/// pair that produced it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub pair: EffectivePair,
}

/// The moment graph on all fixed points, vertices in canonical order.
#[derive(Clone, Debug)]
pub struct MomentGraph {
    pub n: usize,
    pub vertices: Vec<AdmissibleCollection>,
    pub edges: Vec<Edge>,
}

pub fn build_moment_graph(n: usize) -> Result<MomentGraph> {
    let vertices = enumerate_admissible(n)?;
    let index: BTreeMap<&AdmissibleCollection, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (src, v) in vertices.iter().enumerate() {
        for pair in effective_pairs(v) {
            let target = edge_target(v, pair)?;
            let dst = *index
                .get(&target)
                .ok_or_else(|| Error::Integrity(format!("target {target:?} not enumerated")))?;
            edges.push(Edge { src, dst, pair });
        }
    }
    Ok(MomentGraph { n, vertices, edges })
}

impl MomentGraph {
    /// (out-degree, in-degree) per vertex.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut outd = vec![0; self.vertices.len()];
        let mut ind = vec![0; self.vertices.len()];
        for e in &self.edges {
            outd[e.src] += 1;
            ind[e.dst] += 1;
        }
        (outd, ind)
    }

    /// Weight vector e_i - e_j of an edge in the 2n character coordinates.
    pub fn alpha(&self, e: &Edge) -> Vec<i64> {
        let mut v = vec![0i64; 2 * self.n];
        v[e.pair.i - 1] = 1;
        v[e.pair.j - 1] = -1;
        v
    }

    /// JSON export with per-vertex invariants; key order is fixed so the
    /// output is byte-stable.
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                serde_json::json!({
                    "id": i,
                    "sets": v,
                    "dim": cell_dim(v),
                    "tangent_dim": tangent_dim(v),
                    "smooth": ext1_defect(v) == 0,
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "src": e.src,
                    "dst": e.dst,
                    "pair": [e.pair.i, e.pair.j],
                    "alpha": self.alpha(e),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "vertices": vertices,
            "edges": edges,
        })
    }

    /// Graphviz export: boxes for smooth vertices, ellipses for singular
    /// ones, one arrow per edge labelled by its pair.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph moment_graph {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if is_smooth(v) { "box" } else { "ellipse" };
            let _ = writeln!(out, "  v{i} [label=\"{}\", shape={shape}];", v.text());
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"({},{})\"];",
                e.src, e.dst, e.pair.i, e.pair.j
            );
        }
        out.push_str("}\n");
        out
    }
}

/// An edge of a partial moment graph: parallel complete-flag edges are
/// folded together and remembered through their pair labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialEdge {
    pub src: usize,
    pub dst: usize,
    pub pairs: Vec<EffectivePair>,
}

/// Moment graph of a partial flag variety, obtained from the complete one
/// by projecting vertices, dropping self-loops and merging parallel edges.
#[derive(Clone, Debug)]
pub struct PartialMomentGraph {
    pub n: usize,
    pub d: DVector,
    pub vertices: Vec<PartialCollection>,
    pub edges: Vec<PartialEdge>,
}

pub fn build_partial_moment_graph(n: usize, d: &DVector) -> Result<PartialMomentGraph> {
    let full = build_moment_graph(n)?;
    let vertices = enumerate_d_admissible(n, d)?;
    let index: BTreeMap<&PartialCollection, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let projected: Vec<usize> = full
        .vertices
        .iter()
        .map(|v| {
            let p = project_to_partial(v, d)?;
            index
                .get(&p)
                .copied()
                .ok_or_else(|| Error::Integrity(format!("projection {p:?} not enumerated")))
        })
        .collect::<Result<_>>()?;

    let mut merged: BTreeMap<(usize, usize), Vec<EffectivePair>> = BTreeMap::new();
    for e in &full.edges {
        let (src, dst) = (projected[e.src], projected[e.dst]);
        if src != dst {
            let pairs = merged.entry((src, dst)).or_default();
            if !pairs.contains(&e.pair) {
                pairs.push(e.pair);
            }
        }
    }
    let edges = merged
        .into_iter()
        .map(|((src, dst), mut pairs)| {
            pairs.sort_unstable();
            PartialEdge { src, dst, pairs }
        })
        .collect();
    Ok(PartialMomentGraph {
        n,
        d: d.clone(),
        vertices,
        edges,
    })
}

impl PartialMomentGraph {
    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                serde_json::json!({
                    "id": i,
                    "sets": v,
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "src": e.src,
                    "dst": e.dst,
                    "pairs": e.pairs.iter().map(|p| [p.i, p.j]).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "d": self.d.steps(),
            "vertices": vertices,
            "edges": edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph partial_moment_graph {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", v.text());
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -> v{} [label=\"x{}\"];", e.src, e.dst, e.pairs.len());
        }
        out.push_str("}\n");
        out
    }
}
