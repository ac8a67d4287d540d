//! Gadget graphs and the non-choosable counterexamples pasted from them.
//!
//! A gadget is a small graph whose lists are unions of named palette blocks.
//! The shapes live in `data/*.json` as labelled templates; a builder resolves
//! each block string (`"XPT"`) against a [`Palette`].
//!
//! A counterexample takes one copy of a gadget per tuple of pairwise disjoint
//! `b`-subsets of the common hub list `{0, .., a-1}`. Copy `i` reads its hub
//! blocks (`X`, `Y`, `Z`) from tuple `i`; the remaining blocks come from one
//! fresh palette shared by every copy. Hubs take ids `0..k`, and each copy's
//! vertices follow in one contiguous block.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::certificate::{CertificateCopy, NonChoosabilityCertificate};
use crate::coloring::{ChoosabilityInstance, ListAssignment, Palette};
use crate::colorset::{binomial, Color, ColorSet, MAX_COLORS};
use crate::error::{input, precondition, Result};
use crate::graph::{paste, Graph};
use crate::plane::PlaneGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    P4,
    F1,
    F2,
    Octahedron,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 4] = [GadgetKind::P4, GadgetKind::F1, GadgetKind::F2, GadgetKind::Octahedron];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::P4 => "p4",
            GadgetKind::F1 => "f1",
            GadgetKind::F2 => "f2",
            GadgetKind::Octahedron => "octa",
        }
    }

    /// Hub blocks (one per hub, in hub order) and fresh blocks of size `b`.
    /// Every kind also has a block `T` holding the rest of the list.
    fn blocks(self) -> (&'static str, &'static str) {
        match self {
            GadgetKind::P4 => ("XY", "P"),
            GadgetKind::F1 | GadgetKind::F2 => ("XY", "PQR"),
            GadgetKind::Octahedron => ("XYZ", "PQ"),
        }
    }

    /// Checks `lo * b <= a` and `a * den < num * b`, the ratio window in which
    /// the gadget is used.
    pub fn check_range(self, a: usize, b: usize) -> Result<()> {
        let (lo, num, den) = match self {
            GadgetKind::P4 => (2, 3, 1),
            GadgetKind::F1 | GadgetKind::F2 => (4, 22, 5),
            GadgetKind::Octahedron => (4, 5, 1),
        };
        if b == 0 || a < lo * b || a * den >= num * b {
            return precondition(format!("{} gadget needs {lo} <= a/b < {num}/{den}, got a={a}, b={b}", self.name()));
        }
        Ok(())
    }

    fn t_size(self, a: usize, b: usize) -> usize {
        match self {
            GadgetKind::P4 => a - 2 * b,
            _ => a - 4 * b,
        }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        GadgetKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown gadget kind {s:?} (expected p4, f1, f2 or octa)"))
    }
}

/// A gadget or counterexample together with the palette its lists were built
/// from and its hub vertices.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub instance: ChoosabilityInstance,
    pub palette: Palette,
    pub hubs: Vec<usize>,
}

impl GadgetInstance {
    pub fn graph(&self) -> &Graph {
        &self.instance.graph
    }
}

#[derive(Deserialize)]
struct RawTemplate {
    labels: Vec<String>,
    edges: Vec<(String, String)>,
    lists: BTreeMap<String, String>,
    hubs: Vec<String>,
    #[serde(default)]
    faces: Vec<Vec<String>>,
}

/// A resolved template: ids follow the order of `labels`.
#[derive(Debug)]
struct Template {
    graph: Graph,
    lists: Vec<String>,
    hubs: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl Template {
    fn parse(src: &str) -> Template {
        let raw: RawTemplate = serde_json::from_str(src).expect("embedded gadget template parses");
        let id: HashMap<&str, usize> = raw.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut graph = Graph::new(raw.labels.len());
        for (i, l) in raw.labels.iter().enumerate() {
            graph.set_label(i, l.clone());
        }
        for (u, v) in &raw.edges {
            graph.add_edge(id[u.as_str()], id[v.as_str()]).expect("template edge is simple");
        }
        Template {
            graph,
            lists: raw.labels.iter().map(|l| raw.lists[l].clone()).collect(),
            hubs: raw.hubs.iter().map(|h| id[h.as_str()]).collect(),
            faces: raw.faces.iter().map(|f| f.iter().map(|l| id[l.as_str()]).collect()).collect(),
        }
    }

    /// Two copies of F1 identified at both hubs, plus the edge 8-8'.
    fn double(&self) -> Template {
        let identify: BTreeMap<usize, usize> = self.hubs.iter().map(|&h| (h, h)).collect();
        let (mut graph, relabel) = paste(&self.graph, &self.graph, &identify).expect("hubs are distinct");
        let mut lists = self.lists.clone();
        for (v, &image) in relabel.iter().enumerate() {
            if !identify.contains_key(&v) {
                graph.set_label(image, format!("{}'", self.graph.display_name(v)));
                lists.push(self.lists[v].clone());
            }
        }
        let eight = self.graph.vertex_by_label("8").expect("F1 has a vertex 8");
        graph.insert_edge(eight, relabel[eight]);

        // the second copy is the mirror image, so its faces run backwards;
        // the old outer quad 1-8-9-2 becomes the triangles 1-8-8', 8-9-8'
        // and the new outer face 1-2'-9-2
        let (one, nine) = (self.hubs[0], self.hubs[1]);
        let two = self.graph.vertex_by_label("2").expect("F1 has a vertex 2");
        let inner = &self.faces[..self.faces.len() - 1];
        let mut faces: Vec<Vec<usize>> = inner.to_vec();
        faces.extend(inner.iter().map(|f| f.iter().rev().map(|&v| relabel[v]).collect()));
        faces.push(vec![one, eight, relabel[eight]]);
        faces.push(vec![eight, nine, relabel[eight]]);
        faces.push(vec![one, relabel[two], nine, two]);
        Template { graph, lists, hubs: self.hubs.clone(), faces }
    }

    fn plane_graph(&self) -> Result<PlaneGraph> {
        let (outer, inner) = self.faces.split_last().expect("template has faces");
        let mut faces = inner.to_vec();
        faces.push(outer.clone());
        PlaneGraph::from_oriented_faces(self.graph.clone(), &faces, outer.clone())
    }
}

fn template(kind: GadgetKind) -> &'static Template {
    static P4: OnceLock<Template> = OnceLock::new();
    static F1: OnceLock<Template> = OnceLock::new();
    static F2: OnceLock<Template> = OnceLock::new();
    static OCTA: OnceLock<Template> = OnceLock::new();
    match kind {
        GadgetKind::P4 => P4.get_or_init(|| Template::parse(include_str!("../data/p4.json"))),
        GadgetKind::F1 => F1.get_or_init(|| Template::parse(include_str!("../data/f1.json"))),
        GadgetKind::F2 => F2.get_or_init(|| template(GadgetKind::F1).double()),
        GadgetKind::Octahedron => OCTA.get_or_init(|| Template::parse(include_str!("../data/octahedron.json"))),
    }
}

/// The planar embedding of a gadget, for the kinds that have one on file.
pub fn gadget_embedding(kind: GadgetKind) -> Option<PlaneGraph> {
    let t = template(kind);
    if t.faces.is_empty() {
        return None;
    }
    Some(t.plane_graph().expect("gadget faces form a rotation system"))
}

/// Palette for a single gadget: hub blocks, fresh blocks and `T`, allocated
/// consecutively from color 0.
pub fn standard_palette(kind: GadgetKind, a: usize, b: usize) -> Result<Palette> {
    kind.check_range(a, b)?;
    let (hub, fresh) = kind.blocks();
    let mut sizes: Vec<(char, usize)> = hub.chars().chain(fresh.chars()).map(|c| (c, b)).collect();
    sizes.push(('T', kind.t_size(a, b)));
    let mut palette = Palette::new(a, b);
    let end = palette.allocate(0, &sizes)?;
    check_universe(end)?;
    Ok(palette)
}

fn check_universe(end: Color) -> Result<()> {
    if end as usize > MAX_COLORS {
        return input(format!("construction needs {end} colors, at most {MAX_COLORS} are supported"));
    }
    Ok(())
}

/// Instantiates the gadget `kind` with lists drawn from `palette`.
pub fn build_gadget(kind: GadgetKind, palette: &Palette) -> Result<GadgetInstance> {
    let (a, b) = (palette.a, palette.b);
    kind.check_range(a, b)?;
    let (hub, fresh) = kind.blocks();
    palette.check_sizes(&format!("{hub}{fresh}"), kind.t_size(a, b))?;
    let t = template(kind);
    let lists = t.lists.iter().map(|names| palette.union(names)).collect::<Result<Vec<_>>>()?;
    let instance = ChoosabilityInstance::new(t.graph.clone(), ListAssignment::new(lists), b)?;
    Ok(GadgetInstance { instance, palette: palette.clone(), hubs: t.hubs.clone() })
}

/// The path 1-2-3-4 with lists `X`, `XPT`, `YPT`, `Y`.
pub fn build_p4_gadget(palette: &Palette) -> Result<GadgetInstance> {
    build_gadget(GadgetKind::P4, palette)
}

pub fn build_f1(palette: &Palette) -> Result<GadgetInstance> {
    build_gadget(GadgetKind::F1, palette)
}

pub fn build_f2(palette: &Palette) -> Result<GadgetInstance> {
    build_gadget(GadgetKind::F2, palette)
}

pub fn build_octahedron_gadget(palette: &Palette) -> Result<GadgetInstance> {
    build_gadget(GadgetKind::Octahedron, palette)
}

/// Number of `k`-tuples of pairwise disjoint `b`-subsets of an `a`-set.
pub fn tuple_count(a: usize, b: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| {
        let rest = a.saturating_sub(i * b);
        let c = if a < i * b { 0 } else { binomial(rest as u64, b as u64) };
        acc.saturating_mul(c)
    })
}

/// All `k`-tuples of pairwise disjoint `b`-subsets of `pool`, in
/// lexicographic order. Empty when `pool` is too small.
pub fn disjoint_tuples_of(pool: ColorSet, b: usize, k: usize) -> Vec<Vec<ColorSet>> {
    fn rec(pool: ColorSet, b: usize, k: usize, cur: &mut Vec<ColorSet>, out: &mut Vec<Vec<ColorSet>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in pool.subsets(b) {
            cur.push(s);
            rec(pool.difference(&s), b, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, b, k, &mut Vec::new(), &mut out);
    out
}

/// [`disjoint_tuples_of`] over `{0, .., a-1}`, rejecting `a < k*b`.
pub fn enumerate_disjoint_tuples(a: usize, b: usize, k: usize) -> Result<Vec<Vec<ColorSet>>> {
    if b == 0 || a < k * b {
        return precondition(format!("need a >= k*b, got a={a}, b={b}, k={k}"));
    }
    check_universe(a as Color)?;
    Ok(disjoint_tuples_of(ColorSet::range(0, a as Color), b, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Bipartite,
    Planar,
    K5MinorFree,
    Clique,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Bipartite, Family::Planar, Family::K5MinorFree, Family::Clique];

    pub fn name(self) -> &'static str {
        match self {
            Family::Bipartite => "bipartite",
            Family::Planar => "planar",
            Family::K5MinorFree => "k5mf",
            Family::Clique => "clique",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown family {s:?} (expected bipartite, planar, k5mf or clique)"))
    }
}

/// Builds the counterexample of `family` at `(a, b)`. `t` is only used by
/// [`Family::Clique`].
pub fn build_counterexample(
    family: Family,
    a: usize,
    b: usize,
    t: Option<usize>,
) -> Result<(GadgetInstance, NonChoosabilityCertificate)> {
    match family {
        Family::Bipartite => build_bipartite_counterexample(a, b),
        Family::Planar => build_planar_counterexample(a, b),
        Family::K5MinorFree => build_k5mf_counterexample(a, b),
        Family::Clique => {
            let t = t.ok_or_else(|| crate::Error::Input("the clique family needs t".into()))?;
            let g = build_trivial_counterexample(t, a, b)?;
            let cert = clique_certificate(&g);
            Ok((g, cert))
        }
    }
}

/// `q` copies of the P4 gadget pasted at vertices 1 and 4, plus the edge
/// 1-4. Below `a/b = 2` this is `K2` with equal lists.
pub fn build_bipartite_counterexample(a: usize, b: usize) -> Result<(GadgetInstance, NonChoosabilityCertificate)> {
    check_params(a, b)?;
    if a >= 3 * b {
        return precondition(format!("bipartite construction needs a/b < 3, got a={a}, b={b}"));
    }
    if a < 2 * b {
        return Ok(clique_counterexample(2, a, b));
    }
    pasted_counterexample(GadgetKind::P4, a, b)
}

/// `q` copies of F2 pasted at vertices 1 and 9, plus the edge 1-9. Below
/// `a/b = 4` this is `K4` with equal lists.
pub fn build_planar_counterexample(a: usize, b: usize) -> Result<(GadgetInstance, NonChoosabilityCertificate)> {
    check_params(a, b)?;
    if 5 * a >= 22 * b {
        return precondition(format!("planar construction needs a/b < 22/5, got a={a}, b={b}"));
    }
    if a < 4 * b {
        return Ok(clique_counterexample(4, a, b));
    }
    pasted_counterexample(GadgetKind::F2, a, b)
}

/// `q` octahedra pasted along the triangle 1-2-3. Below `a/b = 4` this is
/// `K4` with equal lists.
pub fn build_k5mf_counterexample(a: usize, b: usize) -> Result<(GadgetInstance, NonChoosabilityCertificate)> {
    check_params(a, b)?;
    if a >= 5 * b {
        return precondition(format!("K5-minor-free construction needs a/b < 5, got a={a}, b={b}"));
    }
    if a < 4 * b {
        return Ok(clique_counterexample(4, a, b));
    }
    pasted_counterexample(GadgetKind::Octahedron, a, b)
}

/// `K_{t-1}` with every list equal to `{0, .., a-1}`, for `a/b < t-1`.
pub fn build_trivial_counterexample(t: usize, a: usize, b: usize) -> Result<GadgetInstance> {
    if b == 0 {
        return precondition("b must be at least 1");
    }
    if t < 2 {
        return precondition(format!("t must be at least 2, got {t}"));
    }
    if a >= (t - 1) * b {
        return precondition(format!("K_{} is (a:b)-choosable unless a/b < {}, got a={a}, b={b}", t - 1, t - 1));
    }
    check_universe(a as Color)?;
    Ok(clique_counterexample(t - 1, a, b).0)
}

fn check_params(a: usize, b: usize) -> Result<()> {
    if b == 0 {
        return precondition("b must be at least 1");
    }
    check_universe(a as Color)
}

fn clique_counterexample(k: usize, a: usize, b: usize) -> (GadgetInstance, NonChoosabilityCertificate) {
    let mut graph = Graph::complete(k);
    for v in 0..k {
        graph.set_label(v, (v + 1).to_string());
    }
    let hub_list = ColorSet::range(0, a as Color);
    let lists = ListAssignment::uniform(vec![hub_list; k], a).expect("equal lists");
    let instance = ChoosabilityInstance::new(graph, lists, b).expect("sizes match");
    let g = GadgetInstance { instance, palette: Palette::new(a, b), hubs: (0..k).collect() };
    let cert = clique_certificate(&g);
    (g, cert)
}

/// The certificate of a clique with equal lists: every vertex is a hub, and
/// one copy with no vertices per disjoint tuple (none when `a < k*b`).
fn clique_certificate(g: &GadgetInstance) -> NonChoosabilityCertificate {
    let hub_list = g.instance.lists.get(0);
    let copies = disjoint_tuples_of(hub_list, g.instance.b, g.hubs.len())
        .into_iter()
        .map(|tuple| CertificateCopy { tuple, vertices: Vec::new() })
        .collect();
    NonChoosabilityCertificate { hubs: g.hubs.clone(), hub_list, b: g.instance.b, copies }
}

fn pasted_counterexample(kind: GadgetKind, a: usize, b: usize) -> Result<(GadgetInstance, NonChoosabilityCertificate)> {
    let t = template(kind);
    let (hub_blocks, fresh_blocks) = kind.blocks();
    let k = t.hubs.len();
    let hub_list = ColorSet::range(0, a as Color);
    let tuples = enumerate_disjoint_tuples(a, b, k)?;

    let mut fresh: Vec<(char, usize)> = fresh_blocks.chars().map(|c| (c, b)).collect();
    fresh.push(('T', kind.t_size(a, b)));
    let mut shared = Palette::new(a, b);
    check_universe(shared.allocate(a as Color, &fresh)?)?;

    let body: Vec<usize> = (0..t.graph.n()).filter(|v| !t.hubs.contains(v)).collect();
    let n = k + tuples.len() * body.len();
    let mut graph = Graph::new(n);
    let mut lists = Vec::with_capacity(n);
    for (i, &h) in t.hubs.iter().enumerate() {
        graph.set_label(i, t.graph.display_name(h));
        lists.push(hub_list);
    }
    for u in 0..k {
        for v in u + 1..k {
            graph.insert_edge(u, v);
        }
    }

    let mut local = vec![0; t.graph.n()];
    for (i, &h) in t.hubs.iter().enumerate() {
        local[h] = i;
    }
    let mut copies = Vec::with_capacity(tuples.len());
    for (c, tuple) in tuples.into_iter().enumerate() {
        let mut palette = shared.clone();
        for (name, set) in hub_blocks.chars().zip(&tuple) {
            palette.insert(name, *set)?;
        }
        let base = k + c * body.len();
        for (j, &v) in body.iter().enumerate() {
            local[v] = base + j;
            graph.set_label(base + j, format!("{}.{}", t.graph.display_name(v), c + 1));
            lists.push(palette.union(&t.lists[v])?);
        }
        for (u, v) in t.graph.edges() {
            if !(t.hubs.contains(&u) && t.hubs.contains(&v)) {
                graph.insert_edge(local[u], local[v]);
            }
        }
        copies.push(CertificateCopy { tuple, vertices: (base..base + body.len()).collect() });
    }

    let instance = ChoosabilityInstance::new(graph, ListAssignment::uniform(lists, a)?, b)?;
    let cert = NonChoosabilityCertificate { hubs: (0..k).collect(), hub_list, b, copies };
    Ok((GadgetInstance { instance, palette: shared, hubs: (0..k).collect() }, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{for_each_coloring, solve, Budget};
    use std::collections::HashSet;
    use std::ops::ControlFlow;

    fn gadget(kind: GadgetKind, a: usize, b: usize) -> GadgetInstance {
        build_gadget(kind, &standard_palette(kind, a, b).unwrap()).unwrap()
    }

    fn unsat(inst: &ChoosabilityInstance) -> bool {
        !solve(inst, &Budget::UNLIMITED, None).unwrap().is_sat()
    }

    #[test]
    fn tuple_enumeration() {
        let t = enumerate_disjoint_tuples(2, 1, 2).unwrap();
        let as_vecs: Vec<Vec<Vec<u32>>> = t.iter().map(|tu| tu.iter().map(|s| s.to_vec()).collect()).collect();
        assert_eq!(as_vecs, vec![vec![vec![0], vec![1]], vec![vec![1], vec![0]]]);
        assert_eq!(enumerate_disjoint_tuples(4, 1, 3).unwrap().len(), 24);
        assert_eq!(enumerate_disjoint_tuples(5, 2, 2).unwrap().len(), 30);
        assert!(enumerate_disjoint_tuples(3, 2, 2).is_err());
        assert_eq!(tuple_count(9, 2, 3), 7560);
        assert_eq!(tuple_count(13, 3, 2), 286 * 120);
        assert_eq!(tuple_count(3, 1, 4), 0);
    }

    #[test]
    fn tuples_are_sorted_and_distinct() {
        let t = enumerate_disjoint_tuples(7, 2, 3).unwrap();
        assert_eq!(t.len() as u128, tuple_count(7, 2, 3));
        let keys: Vec<Vec<Vec<u32>>> = t.iter().map(|tu| tu.iter().map(|s| s.to_vec()).collect()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        for tu in &t {
            assert!(tu[0].is_disjoint(&tu[1]) && tu[0].is_disjoint(&tu[2]) && tu[1].is_disjoint(&tu[2]));
        }
    }

    #[test]
    fn p4_lists_and_verdicts() {
        let g = gadget(GadgetKind::P4, 2, 1);
        let lists: Vec<Vec<u32>> = g.instance.lists.iter().map(|l| l.to_vec()).collect();
        // X={0}, Y={1}, P={2}, T empty
        assert_eq!(lists, vec![vec![0], vec![0, 2], vec![1, 2], vec![1]]);
        assert_eq!(g.hubs, vec![0, 3]);
        assert!(unsat(&g.instance));
        let g = gadget(GadgetKind::P4, 5, 2);
        assert_eq!(g.instance.lists.get(1).len(), 5);
        assert!(unsat(&g.instance));
        assert!(standard_palette(GadgetKind::P4, 6, 2).is_err());
        assert!(standard_palette(GadgetKind::P4, 3, 2).is_err());
    }

    #[test]
    fn palette_sizes_are_checked() {
        let mut p = standard_palette(GadgetKind::P4, 5, 2).unwrap();
        p.insert('T', ColorSet::range(100, 102)).unwrap();
        assert!(build_p4_gadget(&p).is_err());
    }

    #[test]
    fn list_sizes_equal_a() {
        for (kind, a, b) in [
            (GadgetKind::F1, 4, 1),
            (GadgetKind::F1, 13, 3),
            (GadgetKind::F2, 13, 3),
            (GadgetKind::Octahedron, 9, 2),
            (GadgetKind::Octahedron, 14, 3),
        ] {
            let g = gadget(kind, a, b);
            for v in 0..g.instance.n() {
                if !g.hubs.contains(&v) {
                    assert_eq!(g.instance.lists.get(v).len(), a, "{kind} vertex {v}");
                }
            }
        }
    }

    #[test]
    fn embeddings_satisfy_euler() {
        for kind in [GadgetKind::F1, GadgetKind::F2, GadgetKind::Octahedron] {
            let pg = gadget_embedding(kind).unwrap();
            assert!(pg.is_euler_consistent(), "{kind}");
            assert_eq!(pg.graph, template(kind).graph);
        }
        assert_eq!(gadget_embedding(GadgetKind::Octahedron).unwrap().faces().len(), 8);
        assert_eq!(gadget_embedding(GadgetKind::F2).unwrap().faces().len(), 27);
        assert!(gadget_embedding(GadgetKind::P4).is_none());
    }

    #[test]
    fn f2_shape() {
        let g = gadget(GadgetKind::F2, 4, 1);
        assert_eq!(g.instance.n(), 16);
        assert_eq!(g.graph().edge_count(), 41);
        let e = g.graph().vertex_by_label("8").unwrap();
        let e2 = g.graph().vertex_by_label("8'").unwrap();
        assert!(g.graph().has_edge(e, e2));
        let two = g.graph().vertex_by_label("2").unwrap();
        let two2 = g.graph().vertex_by_label("2'").unwrap();
        assert_eq!(g.instance.lists.get(two), g.instance.lists.get(two2));
        assert!(unsat(&g.instance));
    }

    #[test]
    fn octahedron_structure() {
        let g = gadget(GadgetKind::Octahedron, 4, 1);
        let gr = g.graph();
        for i in 0..3 {
            assert!(!gr.has_edge(i, i + 3));
        }
        assert!(gr.is_clique(&[0, 1, 2]) && gr.is_clique(&[3, 4, 5]));
        assert!((0..6).all(|v| gr.degree(v) == 4));
        // after the hubs are fixed only P, Q and T remain on 4, 5, 6
        let pqt = g.palette.union("PQT").unwrap();
        for v in 3..6 {
            let hub_colors = gr
                .neighbors(v)
                .iter()
                .filter(|&&w| w < 3)
                .fold(ColorSet::EMPTY, |acc, &w| acc.union(&g.instance.lists.get(w)));
            assert_eq!(g.instance.lists.get(v).difference(&hub_colors), pqt);
        }
        for (a, b) in [(4, 1), (9, 2), (13, 3), (14, 3)] {
            assert!(unsat(&gadget(GadgetKind::Octahedron, a, b).instance));
        }
    }

    #[test]
    fn f1_is_unsat_when_t_is_empty() {
        let g = gadget(GadgetKind::F1, 4, 1);
        assert_eq!(g.palette.block('T').unwrap().len(), 0);
        assert!(unsat(&g.instance));
        assert!(g.graph().is_biconnected());
    }

    fn f1_colorings(a: usize, b: usize) -> (GadgetInstance, Vec<crate::Multicoloring>) {
        let g = gadget(GadgetKind::F1, a, b);
        let mut all = Vec::new();
        for_each_coloring(&g.instance, &Budget::nodes(50_000_000), None, |phi| {
            all.push(phi.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
        (g, all)
    }

    #[test]
    fn f1_proof_constraints() {
        for (a, b) in [(4, 1), (13, 3)] {
            let (g, all) = f1_colorings(a, b);
            let p = &g.palette;
            let xy = p.union("XY").unwrap();
            let pqrt = p.union("PQRT").unwrap();
            let t = p.block('T').unwrap();
            let id = |l: &str| g.graph().vertex_by_label(l).unwrap();
            let claim = (5 * b).saturating_sub(a);
            for phi in &all {
                for v in ["2", "3", "4", "5", "6", "7", "8"] {
                    assert!(phi.get(id(v)).unwrap().is_disjoint(&xy));
                }
                for v in ["3", "4"] {
                    assert!(phi.get(id(v)).unwrap().is_subset(&pqrt));
                }
                let (p2, p5, p8) = (phi.get(id("2")).unwrap(), phi.get(id("5")).unwrap(), phi.get(id("8")).unwrap());
                assert!(p2.intersection(&p5).len() >= claim);
                assert!(p5.intersection(&p8).len() >= claim);
                assert!(2 * p8.intersection(&t).len() > t.len());
            }
            if a == 13 {
                assert!(!all.is_empty());
            }
        }
    }

    #[test]
    fn bipartite_counterexample_shape() {
        let (g, cert) = build_bipartite_counterexample(5, 2).unwrap();
        assert_eq!(g.instance.n(), 62);
        assert_eq!(cert.copies.len(), 30);
        assert!(g.graph().is_bipartite());
        assert!(g.graph().has_edge(0, 1));
        assert_eq!(g.graph().label(1), Some("4"));
        assert_eq!(g.graph().label(2), Some("2.1"));
        assert!(g.instance.lists.iter().all(|l| l.len() == 5));
        let (small, _) = build_bipartite_counterexample(2, 1).unwrap();
        assert_eq!(small.instance.n(), 6);
        assert!(unsat(&small.instance));
    }

    #[test]
    fn fresh_blocks_avoid_the_hub_list() {
        for (family, a, b) in [(Family::Bipartite, 5, 2), (Family::Planar, 4, 1), (Family::K5MinorFree, 9, 2)] {
            let (g, cert) = build_counterexample(family, a, b, None).unwrap();
            for set in g.palette.blocks().values() {
                assert!(set.is_disjoint(&cert.hub_list));
            }
            for copy in &cert.copies {
                let union = copy.tuple.iter().fold(ColorSet::EMPTY, |acc, s| acc.union(s));
                for &v in &copy.vertices {
                    let hub_part = g.instance.lists.get(v).intersection(&cert.hub_list);
                    assert!(hub_part.is_subset(&union));
                }
            }
        }
    }

    #[test]
    fn k5mf_counterexample_cliques() {
        let (g, cert) = build_k5mf_counterexample(4, 1).unwrap();
        assert_eq!(g.instance.n(), 75);
        assert_eq!(cert.copies.len(), 24);
        // octahedra glued on a triangle: K4 appears as a minor, never as a subgraph
        assert!(g.graph().contains_clique(3));
        assert!(!g.graph().contains_clique(4));
        assert!(!g.graph().contains_clique(5));
        let (below, _) = build_k5mf_counterexample(7, 2).unwrap();
        assert!(below.graph().contains_clique(4));
        assert!(!below.graph().contains_clique(5));
        let distinct: HashSet<Vec<Vec<u32>>> =
            cert.copies.iter().map(|c| c.tuple.iter().map(|s| s.to_vec()).collect()).collect();
        assert_eq!(distinct.len(), 24);
        assert!(unsat(&g.instance));
    }

    #[test]
    fn planar_counterexample_size() {
        let (g, cert) = build_planar_counterexample(4, 1).unwrap();
        assert_eq!(g.instance.n(), 170);
        assert_eq!(cert.copies.len(), 12);
        assert_eq!(tuple_count(13, 3, 2), binomial(13, 3) * binomial(10, 3));
    }

    #[test]
    fn degenerate_ratios_fall_back_to_cliques() {
        let (g, cert) = build_planar_counterexample(3, 1).unwrap();
        assert_eq!(g.graph(), &Graph::complete(4));
        assert!(cert.copies.is_empty());
        let (g, _) = build_bipartite_counterexample(3, 2).unwrap();
        assert_eq!(g.graph(), &Graph::complete(2));
        assert!(build_k5mf_counterexample(10, 2).is_err());
    }

    #[test]
    fn trivial_counterexamples() {
        let k3 = build_trivial_counterexample(4, 2, 1).unwrap();
        assert_eq!(k3.graph(), &Graph::complete(3));
        assert!(unsat(&k3.instance));
        let k2 = build_trivial_counterexample(3, 1, 1).unwrap();
        assert!(unsat(&k2.instance));
        let k1 = build_trivial_counterexample(2, 1, 2).unwrap();
        assert_eq!(k1.instance.n(), 1);
        assert!(unsat(&k1.instance));
        assert!(build_trivial_counterexample(4, 3, 1).is_err());
    }

    #[test]
    fn kind_names_round_trip() {
        for k in GadgetKind::ALL {
            assert_eq!(k.name().parse::<GadgetKind>().unwrap(), k);
        }
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("k6".parse::<Family>().is_err());
    }
}
