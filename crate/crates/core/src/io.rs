//! JSON formats for graphs, plane graphs, instances, list files and
//! colorings.
//!
//! ```text
//! graph       {"n": N, "edges": [[u, v], ...], "labels": {"0": "1", ...}}
//! plane graph graph fields + "rotation": {"v": [..]}, "outer_face": [..]
//! instance    graph fields + "b": B, "lists": {"v": [colors]}
//! lists       {"lists": {"v": [colors]}, "b": B}      ("b" optional)
//! coloring    {"phi": {"v": [colors]}}
//! ```
//!
//! Map keys are decimal vertex ids. Certificates and construction trees
//! serialize through their own `serde` derives.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::coloring::{ChoosabilityInstance, ListAssignment, Multicoloring};
use crate::colorset::{Color, ColorSet, MAX_COLORS};
use crate::error::{input, Error, Result};
use crate::graph::Graph;
use crate::plane::PlaneGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneGraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<usize, String>,
    pub rotation: BTreeMap<usize, Vec<usize>>,
    pub outer_face: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<usize, String>,
    pub b: usize,
    pub lists: BTreeMap<usize, Vec<Color>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListsJson {
    pub lists: BTreeMap<usize, Vec<Color>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringJson {
    pub phi: BTreeMap<usize, Vec<Color>>,
}

pub fn graph_to_json(g: &Graph) -> GraphJson {
    GraphJson { n: g.n(), edges: g.edges().collect(), labels: g.labels().clone() }
}

pub fn graph_from_json(j: &GraphJson) -> Result<Graph> {
    build_graph(j.n, &j.edges, &j.labels)
}

fn build_graph(n: usize, edges: &[(usize, usize)], labels: &BTreeMap<usize, String>) -> Result<Graph> {
    let mut g = Graph::from_edges(n, edges.iter().copied())?;
    for (&v, l) in labels {
        g.check_vertex(v)?;
        g.set_label(v, l.clone());
    }
    Ok(g)
}

pub fn plane_graph_to_json(pg: &PlaneGraph) -> PlaneGraphJson {
    PlaneGraphJson {
        n: pg.n(),
        edges: pg.graph.edges().collect(),
        labels: pg.graph.labels().clone(),
        rotation: pg.rotation.iter().cloned().enumerate().collect(),
        outer_face: pg.outer_face.clone(),
    }
}

pub fn plane_graph_from_json(j: &PlaneGraphJson) -> Result<PlaneGraph> {
    let g = build_graph(j.n, &j.edges, &j.labels)?;
    let mut rotation = vec![Vec::new(); j.n];
    for (&v, rot) in &j.rotation {
        g.check_vertex(v)?;
        rotation[v] = rot.clone();
    }
    PlaneGraph::new(g, rotation, j.outer_face.clone())
}

fn lists_to_map(lists: &ListAssignment) -> BTreeMap<usize, Vec<Color>> {
    lists.iter().map(ColorSet::to_vec).enumerate().collect()
}

fn colors(v: usize, cs: &[Color]) -> Result<ColorSet> {
    let set = ColorSet::try_from_colors(cs.iter().copied())
        .map_err(|c| Error::Input(format!("vertex {v}: color {c} exceeds the {MAX_COLORS}-color universe")))?;
    if set.len() != cs.len() {
        return input(format!("vertex {v}: repeated color"));
    }
    Ok(set)
}

/// Lists for all `n` vertices; every vertex needs an entry. Lists of one
/// common size are declared uniform.
pub fn lists_from_map(n: usize, map: &BTreeMap<usize, Vec<Color>>) -> Result<ListAssignment> {
    if let Some(&v) = map.keys().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    let lists = (0..n)
        .map(|v| match map.get(&v) {
            Some(cs) => colors(v, cs),
            None => input(format!("no list for vertex {v}")),
        })
        .collect::<Result<Vec<ColorSet>>>()?;
    match lists.first().map(ColorSet::len) {
        Some(a) if lists.iter().all(|l| l.len() == a) => ListAssignment::uniform(lists, a),
        _ => Ok(ListAssignment::new(lists)),
    }
}

pub fn instance_to_json(inst: &ChoosabilityInstance) -> InstanceJson {
    InstanceJson {
        n: inst.n(),
        edges: inst.graph.edges().collect(),
        labels: inst.graph.labels().clone(),
        b: inst.b,
        lists: lists_to_map(&inst.lists),
    }
}

pub fn instance_from_json(j: &InstanceJson) -> Result<ChoosabilityInstance> {
    let g = build_graph(j.n, &j.edges, &j.labels)?;
    let lists = lists_from_map(j.n, &j.lists)?;
    ChoosabilityInstance::new(g, lists, j.b)
}

pub fn lists_to_json(lists: &ListAssignment, b: Option<usize>) -> ListsJson {
    ListsJson { lists: lists_to_map(lists), b }
}

pub fn coloring_to_json(phi: &Multicoloring) -> ColoringJson {
    ColoringJson { phi: phi.phi.iter().map(|(&v, s)| (v, s.to_vec())).collect() }
}

pub fn coloring_from_json(j: &ColoringJson, b: usize) -> Result<Multicoloring> {
    let mut phi = Multicoloring::new(b);
    for (&v, cs) in &j.phi {
        phi.set(v, colors(v, cs)?);
    }
    Ok(phi)
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::build_bipartite_counterexample;
    use crate::planar::generate_near_triangulation;

    #[test]
    fn instance_round_trip() {
        let (g, _) = build_bipartite_counterexample(2, 1).unwrap();
        let j = instance_to_json(&g.instance);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains(r#""labels":{"0":"1","1":"4","2":"2.1""#));
        let back: InstanceJson = serde_json::from_str(&text).unwrap();
        let inst = instance_from_json(&back).unwrap();
        assert_eq!(inst, g.instance);
        assert_eq!(instance_to_json(&inst), j);
    }

    #[test]
    fn plane_graph_round_trip() {
        let pg = generate_near_triangulation(12, 5).unwrap();
        let j = plane_graph_to_json(&pg);
        let back = plane_graph_from_json(&serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap()).unwrap();
        assert_eq!(back, pg);
    }

    #[test]
    fn bad_input_is_rejected() {
        let missing: InstanceJson = serde_json::from_str(r#"{"n":2,"edges":[[0,1]],"b":1,"lists":{"0":[1]}}"#).unwrap();
        assert!(matches!(instance_from_json(&missing), Err(Error::Input(_))));
        let big: InstanceJson = serde_json::from_str(r#"{"n":1,"edges":[],"b":1,"lists":{"0":[300]}}"#).unwrap();
        assert!(instance_from_json(&big).is_err());
        let looped: InstanceJson = serde_json::from_str(r#"{"n":1,"edges":[[0,0]],"b":1,"lists":{"0":[1]}}"#).unwrap();
        assert!(instance_from_json(&looped).is_err());
        let outside: InstanceJson =
            serde_json::from_str(r#"{"n":1,"edges":[],"b":1,"lists":{"0":[1],"4":[2]}}"#).unwrap();
        assert!(instance_from_json(&outside).is_err());
    }

    #[test]
    fn coloring_round_trip() {
        let mut phi = Multicoloring::new(2);
        phi.set(0, ColorSet::range(0, 2));
        phi.set(3, ColorSet::range(4, 6));
        let j = coloring_to_json(&phi);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"phi":{"0":[0,1],"3":[4,5]}}"#);
        assert_eq!(coloring_from_json(&j, 2).unwrap(), phi);
    }
}
