//! `K5`-minor-free graphs: clique-sum construction trees, separating
//! cliques, and extension of a precolored `K2` or `K3` to an `m`-fold
//! coloring from lists of size `5m`.
//!
//! [`extend_coloring`] recurses on separating cliques. An atom (no
//! separating `K2` or `K3`) is either the Wagner graph, colored greedily, or
//! planar, in which case it is embedded with the precolored triangle as its
//! outer face and handed to [`tv_color`].

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{validate_coloring, ChoosabilityInstance, ListAssignment, Multicoloring};
use crate::colorset::ColorSet;
use crate::error::{precondition, Error, Result};
use crate::graph::{clique_sum, Graph};
use crate::planar::{generate_near_triangulation, tv_color, Precoloring};
use crate::plane::{embed, PlaneGraph};

/// The Wagner graph: the cycle `0..8` plus the long diagonals `i, i+4`.
pub fn m8() -> Graph {
    let mut g = Graph::cycle(8);
    for i in 0..4 {
        g.insert_edge(i, i + 4);
    }
    g
}

/// A separating clique and the two sides it cuts the graph into. Both sides
/// include the clique; vertex lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub clique: Vec<usize>,
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
}

impl Separation {
    /// The induced subgraphs on both sides with their maps back to `g`.
    pub fn parts(&self, g: &Graph) -> ((Graph, Vec<usize>), (Graph, Vec<usize>)) {
        (g.induced_subgraph(&self.side1), g.induced_subgraph(&self.side2))
    }
}

/// The first separating `K2`, else the first separating `K3`, in order of
/// sorted vertex ids. `side1` is the part holding the smallest vertex outside
/// the clique.
pub fn find_separating_clique(g: &Graph) -> Result<Option<Separation>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut removed = vec![false; n];
    let mut try_clique = |clique: &[usize]| -> Option<Separation> {
        for &v in clique {
            removed[v] = true;
        }
        let comps = g.components_without(&removed);
        for &v in clique {
            removed[v] = false;
        }
        if comps.len() < 2 {
            return None;
        }
        let mut side1: Vec<usize> = comps[0].iter().chain(clique).copied().collect();
        let mut side2: Vec<usize> = comps[1..].iter().flatten().chain(clique).copied().collect();
        side1.sort_unstable();
        side2.sort_unstable();
        Some(Separation { clique: clique.to_vec(), side1, side2 })
    };
    for (u, v) in g.edges() {
        if let Some(s) = try_clique(&[u, v]) {
            return Ok(Some(s));
        }
    }
    for (u, v) in g.edges() {
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                if let Some(s) = try_clique(&[u, v, w]) {
                    return Ok(Some(s));
                }
            }
        }
    }
    Ok(None)
}

/// Extends the coloring `phi_h` of the clique `h` (two or three vertices) to
/// an `m`-fold coloring of `g` from `lists`, each of at least `5m` colors.
///
/// `g` is trusted to be `K5`-minor-free. A non-planar atom other than the
/// Wagner graph is reported as a precondition failure.
pub fn extend_coloring(
    g: &Graph,
    lists: &ListAssignment,
    m: usize,
    h: &[usize],
    phi_h: &[ColorSet],
) -> Result<Multicoloring> {
    let n = g.n();
    if m == 0 {
        return precondition("m must be at least 1");
    }
    if lists.len() != n {
        return precondition(format!("{} lists for {n} vertices", lists.len()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(v) = (0..n).find(|&v| lists.get(v).len() < 5 * m) {
        return precondition(format!("vertex {v} has {} colors, needs {}", lists.get(v).len(), 5 * m));
    }
    if !(2..=3).contains(&h.len()) || h.len() != phi_h.len() {
        return precondition("the precolored subgraph must be a K2 or K3 with one set per vertex");
    }
    for &v in h {
        g.check_vertex(v)?;
    }
    if !g.is_clique(h) {
        return precondition(format!("precolored vertices {h:?} are not pairwise adjacent"));
    }
    for (i, (&v, set)) in h.iter().zip(phi_h).enumerate() {
        if set.len() != m || !set.is_subset(&lists.get(v)) {
            return precondition(format!("vertex {v} must get {m} colors from its list"));
        }
        if phi_h[..i].iter().any(|o| !o.is_disjoint(set)) {
            return precondition("precolored sets must be pairwise disjoint");
        }
    }

    let mut ext = Extension { g, lists, m, phi: vec![None; n] };
    for (&v, set) in h.iter().zip(phi_h) {
        ext.phi[v] = Some(*set);
    }
    ext.extend((0..n).collect(), h.to_vec())?;

    let mut out = Multicoloring::new(m);
    for (v, set) in ext.phi.into_iter().enumerate() {
        out.set(v, set.ok_or_else(|| Error::Internal(format!("vertex {v} left uncolored")))?);
    }
    let inst = ChoosabilityInstance::new(g.clone(), lists.clone(), m)?;
    if !validate_coloring(&inst, &out)? {
        return Err(Error::Internal("extended coloring failed validation".into()));
    }
    Ok(out)
}

struct Extension<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    m: usize,
    phi: Vec<Option<ColorSet>>,
}

impl Extension<'_> {
    /// Colors the subgraph induced by `vertices` (global ids, sorted) given
    /// that the clique `h` inside it is already colored.
    fn extend(&mut self, vertices: Vec<usize>, h: Vec<usize>) -> Result<()> {
        let (local, map) = self.g.induced_subgraph(&vertices);
        if local.n() <= 3 {
            return self.greedy(&vertices);
        }
        if let Some(sep) = find_separating_clique(&local)? {
            let to_global = |side: &[usize]| side.iter().map(|&i| map[i]).collect::<Vec<_>>();
            let (side1, side2) = (to_global(&sep.side1), to_global(&sep.side2));
            let clique = to_global(&sep.clique);
            let (first, second) = if h.iter().all(|v| side1.contains(v)) { (side1, side2) } else { (side2, side1) };
            self.extend(first, h)?;
            return self.extend(second, clique);
        }
        if local.n() == 8 && local.is_isomorphic(&m8())? {
            return self.greedy(&vertices);
        }
        self.planar_atom(&local, &map, &h)
    }

    /// Colors the uncolored vertices in order with the least `m` free colors.
    fn greedy(&mut self, vertices: &[usize]) -> Result<()> {
        for &v in vertices {
            if self.phi[v].is_some() {
                continue;
            }
            let used =
                self.g.neighbors(v).iter().filter_map(|&w| self.phi[w]).fold(ColorSet::EMPTY, |a, s| a.union(&s));
            let set = self
                .lists
                .get(v)
                .difference(&used)
                .smallest(self.m)
                .ok_or_else(|| Error::Internal(format!("greedy step at vertex {v} ran out of colors")))?;
            self.phi[v] = Some(set);
        }
        Ok(())
    }

    fn planar_atom(&mut self, local: &Graph, map: &[usize], h: &[usize]) -> Result<()> {
        let m = self.m;
        let pos = |v: usize| map.iter().position(|&x| x == v).expect("precolored clique lies in the atom");
        let (x, y) = (pos(h[0]), pos(h[1]));
        let pg = match embed(local) {
            Ok(pg) => pg,
            Err(Error::NonPlanar) => {
                return precondition(format!("atom on {} vertices is neither planar nor the Wagner graph", local.n()))
            }
            Err(e) => return Err(e),
        };
        let pg = if pg.faces().iter().all(|f| f.len() == 3) { pg } else { pg.triangulate()? };

        let z = match h.get(2) {
            Some(&z) => pos(z),
            None => {
                let common = |c: usize| pg.graph.has_edge(c, x) && pg.graph.has_edge(c, y);
                // a common neighbor in the atom itself spans a face; after
                // triangulating, fall back to a face through xy
                let z = (0..local.n()).find(|&c| local.has_edge(c, x) && local.has_edge(c, y));
                let z = z.or_else(|| {
                    pg.faces()
                        .into_iter()
                        .filter(|f| f.contains(&x) && f.contains(&y))
                        .flatten()
                        .filter(|&c| common(c))
                        .min()
                });
                let z = z.ok_or_else(|| Error::Internal(format!("edge {}-{} lies on no triangle", h[0], h[1])))?;
                let used = self.colors(map[x]).union(&self.colors(map[y]));
                let set = self
                    .lists
                    .get(map[z])
                    .difference(&used)
                    .smallest(m)
                    .ok_or_else(|| Error::Internal(format!("vertex {} has too few colors", map[z])))?;
                self.phi[map[z]] = Some(set);
                z
            }
        };

        let pg = PlaneGraph::new(pg.graph, pg.rotation, vec![x, y, z])?;
        let (px, py, pz) = (self.colors(map[x]), self.colors(map[y]), self.colors(map[z]));
        let lists: Vec<ColorSet> = (0..local.n())
            .map(|v| match v {
                _ if v == x => px,
                _ if v == y => py,
                _ if v == z => px.union(&py).union(&pz),
                _ => self.lists.get(map[v]).smallest(5 * m).expect("lists checked up front"),
            })
            .collect();
        let pre = Precoloring { u: x, v: y, set_u: px, set_v: py };
        let phi = tv_color(&pg, &ListAssignment::new(lists), m, pre, false)?;
        for (v, set) in phi.phi {
            let g = map[v];
            if self.phi[g].is_some_and(|old| old != set) {
                return Err(Error::Internal(format!("planar step recolored vertex {g}")));
            }
            self.phi[g] = Some(set);
        }
        Ok(())
    }

    fn colors(&self, v: usize) -> ColorSet {
        self.phi[v].unwrap_or_default()
    }
}

/// A recipe for a `K5`-minor-free graph: leaves are stacked triangulations
/// or the Wagner graph; an inner node pastes `right` onto `left`, identifying
/// each pair `(r, l)` of `identify` (a vertex of `right`, a vertex of
/// `left`). The identified vertices must be a clique on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConstructionTree {
    Triangulation { n: usize, seed: u64 },
    M8,
    Paste { left: Box<ConstructionTree>, right: Box<ConstructionTree>, identify: Vec<(usize, usize)> },
}

impl ConstructionTree {
    pub fn leaves(&self) -> usize {
        match self {
            ConstructionTree::Paste { left, right, .. } => left.leaves() + right.leaves(),
            _ => 1,
        }
    }
}

/// Evaluates `tree` bottom-up. `left`'s ids are kept and the unidentified
/// vertices of `right` are appended in order.
pub fn build_from_tree(tree: &ConstructionTree) -> Result<Graph> {
    match tree {
        ConstructionTree::Triangulation { n, seed } => Ok(generate_near_triangulation(*n, *seed)?.graph),
        ConstructionTree::M8 => Ok(m8()),
        ConstructionTree::Paste { left, right, identify } => {
            if !(1..=3).contains(&identify.len()) {
                return precondition(format!("paste sites have 1 to 3 vertices, got {}", identify.len()));
            }
            let (l, r) = (build_from_tree(left)?, build_from_tree(right)?);
            let map: BTreeMap<usize, usize> = identify.iter().copied().collect();
            if map.len() != identify.len() {
                return precondition("paste identifies a vertex twice");
            }
            Ok(clique_sum(&l, &r, &map)?.0)
        }
    }
}

fn random_clique(g: &Graph, size: usize, rng: &mut impl Rng) -> Option<Vec<usize>> {
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for (u, v) in g.edges() {
        if size == 2 {
            cliques.push(vec![u, v]);
            continue;
        }
        for &w in g.neighbors(v) {
            if w > v && g.has_edge(u, w) {
                cliques.push(vec![u, v, w]);
            }
        }
    }
    let mut c = cliques.choose(rng)?.clone();
    c.shuffle(rng);
    Some(c)
}

/// A random left-deep tree with `leaves` leaves. Each leaf is the Wagner
/// graph with probability `1/3`, else a stacked triangulation on `3..=max_n`
/// vertices. The Wagner graph has no triangles, so it is always pasted along
/// an edge; other pastes use a triangle half of the time.
pub fn random_tree(leaves: usize, max_n: usize, rng: &mut impl Rng) -> ConstructionTree {
    fn leaf(rng: &mut impl Rng, max_n: usize) -> ConstructionTree {
        if rng.gen_range(0..3) == 0 {
            ConstructionTree::M8
        } else {
            ConstructionTree::Triangulation { n: rng.gen_range(3..=max_n.max(3)), seed: rng.gen() }
        }
    }
    let mut tree = leaf(rng, max_n);
    let mut graph = build_from_tree(&tree).expect("leaf builds");
    for _ in 1..leaves.max(1) {
        let right = leaf(rng, max_n);
        let rg = build_from_tree(&right).expect("leaf builds");
        let mut size = if rng.gen_bool(0.5) { 3 } else { 2 };
        let (mut lc, mut rc) = (random_clique(&graph, size, rng), random_clique(&rg, size, rng));
        if lc.is_none() || rc.is_none() {
            size = 2;
            lc = random_clique(&graph, size, rng);
            rc = random_clique(&rg, size, rng);
        }
        let (lc, rc) = (lc.expect("graphs have edges"), rc.expect("graphs have edges"));
        let identify: Vec<(usize, usize)> = rc.into_iter().zip(lc).collect();
        tree = ConstructionTree::Paste { left: Box::new(tree), right: Box::new(right), identify };
        graph = build_from_tree(&tree).expect("random paste sites are cliques");
    }
    tree
}

/// Lists of exactly `5m` colors from `0..universe` and a random precolored
/// clique (a triangle if `triangle` and one exists, else an edge).
pub fn random_extension_input(
    g: &Graph,
    m: usize,
    universe: u32,
    triangle: bool,
    rng: &mut impl Rng,
) -> (ListAssignment, Vec<usize>, Vec<ColorSet>) {
    let pool: Vec<u32> = (0..universe).collect();
    let lists: Vec<ColorSet> = (0..g.n()).map(|_| pool.choose_multiple(rng, 5 * m).copied().collect()).collect();
    let h = triangle
        .then(|| random_clique(g, 3, rng))
        .flatten()
        .or_else(|| random_clique(g, 2, rng))
        .expect("graph has an edge");
    let mut used = ColorSet::EMPTY;
    let mut phi_h = Vec::new();
    for &v in &h {
        let free: Vec<u32> = lists[v].difference(&used).to_vec();
        let set: ColorSet = free.choose_multiple(rng, m).copied().collect();
        used = used.union(&set);
        phi_h.push(set);
    }
    (ListAssignment::new(lists), h, phi_h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve, Budget};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(cs: &[u32]) -> ColorSet {
        cs.iter().copied().collect()
    }

    fn girth(g: &Graph) -> usize {
        // shortest cycle through BFS from every vertex
        let n = g.n();
        let mut best = usize::MAX;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn wagner_graph_shape() {
        let g = m8();
        assert_eq!(g.edge_count(), 12);
        assert!((0..8).all(|v| g.degree(v) == 3));
        assert_eq!(girth(&g), 4);
        assert!(embed(&g).is_err());
    }

    #[test]
    fn separating_cliques() {
        let diamond = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let sep = find_separating_clique(&diamond).unwrap().unwrap();
        assert_eq!(sep.clique, vec![1, 2]);
        assert_eq!(sep.side1, vec![0, 1, 2]);
        assert_eq!(sep.side2, vec![1, 2, 3]);
        assert!(find_separating_clique(&m8()).unwrap().is_none());
        assert!(find_separating_clique(&Graph::complete(4)).unwrap().is_none());
        assert!(find_separating_clique(&Graph::new(2)).is_err());
    }

    #[test]
    fn k4_extension() {
        let lists = ListAssignment::new(vec![set(&[1, 2, 3, 4, 5]); 4]);
        let phi = extend_coloring(&Graph::complete(4), &lists, 1, &[0, 1], &[set(&[1]), set(&[2])]).unwrap();
        assert_eq!(phi.get(0), Some(set(&[1])));
        assert_eq!(phi.get(1), Some(set(&[2])));
    }

    #[test]
    fn wagner_graph_extension() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (lists, _, _) = random_extension_input(&m8(), 2, 14, false, &mut rng);
        let h = [0, 4];
        let a = lists.get(0).smallest(2).unwrap();
        let b = lists.get(4).difference(&a).smallest(2).unwrap();
        let phi = extend_coloring(&m8(), &lists, 2, &h, &[a, b]).unwrap();
        assert_eq!(phi.get(4), Some(b));
    }

    #[test]
    fn preconditions() {
        let lists = ListAssignment::new(vec![set(&[1, 2, 3, 4, 5]); 4]);
        let short = ListAssignment::new(vec![set(&[1, 2, 3, 4]); 4]);
        let k4 = Graph::complete(4);
        assert!(extend_coloring(&k4, &short, 1, &[0, 1], &[set(&[1]), set(&[2])]).is_err());
        assert!(extend_coloring(&k4, &lists, 1, &[0, 1], &[set(&[1]), set(&[1])]).is_err());
        assert!(extend_coloring(&k4, &lists, 1, &[0], &[set(&[1])]).is_err());
        let c4 = Graph::cycle(4);
        assert!(extend_coloring(&c4, &lists, 1, &[0, 2], &[set(&[1]), set(&[2])]).is_err());
        let k5 = Graph::complete(5);
        let l5 = ListAssignment::new(vec![set(&[1, 2, 3, 4, 5]); 5]);
        assert!(matches!(extend_coloring(&k5, &l5, 1, &[0, 1], &[set(&[1]), set(&[2])]), Err(Error::Precondition(_))));
    }

    #[test]
    fn tree_evaluation() {
        let k4 = ConstructionTree::Triangulation { n: 4, seed: 0 };
        assert_eq!(build_from_tree(&k4).unwrap(), Graph::complete(4));
        let two = ConstructionTree::Paste {
            left: Box::new(k4.clone()),
            right: Box::new(k4.clone()),
            identify: vec![(0, 0), (1, 1), (2, 2)],
        };
        let g = build_from_tree(&two).unwrap();
        assert_eq!((g.n(), g.edge_count()), (5, 9));
        let bad = ConstructionTree::Paste {
            left: Box::new(ConstructionTree::M8),
            right: Box::new(k4),
            identify: vec![(0, 0), (1, 1), (2, 2)],
        };
        assert!(build_from_tree(&bad).is_err());
        let json = serde_json::to_string(&two).unwrap();
        assert_eq!(serde_json::from_str::<ConstructionTree>(&json).unwrap(), two);
    }

    #[test]
    fn vertex_count_is_inclusion_exclusion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let tree = random_tree(5, 12, &mut rng);
            fn count(t: &ConstructionTree) -> (usize, usize) {
                match t {
                    ConstructionTree::Triangulation { n, .. } => (*n, 0),
                    ConstructionTree::M8 => (8, 0),
                    ConstructionTree::Paste { left, right, identify } => {
                        let (a, b) = (count(left), count(right));
                        (a.0 + b.0, a.1 + b.1 + identify.len())
                    }
                }
            }
            let (sum, shared) = count(&tree);
            assert_eq!(tree.leaves(), 5);
            assert_eq!(build_from_tree(&tree).unwrap().n(), sum - shared);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn separation_recombines(seed in any::<u64>(), leaves in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = build_from_tree(&random_tree(leaves, 12, &mut rng)).unwrap();
            if let Some(sep) = find_separating_clique(&g).unwrap() {
                let ((g1, m1), (g2, m2)) = sep.parts(&g);
                let mut edges: Vec<(usize, usize)> = Vec::new();
                for (sub, map) in [(&g1, &m1), (&g2, &m2)] {
                    for (u, v) in sub.edges() {
                        let (a, b) = (map[u], map[v]);
                        edges.push((a.min(b), a.max(b)));
                    }
                }
                edges.sort_unstable();
                edges.dedup();
                prop_assert_eq!(edges, g.edges().collect::<Vec<_>>());
                let mut all: Vec<usize> = sep.side1.iter().chain(&sep.side2).copied().collect();
                all.sort_unstable();
                all.dedup();
                prop_assert_eq!(all.len(), g.n());
                prop_assert!(g.is_clique(&sep.clique));
            }
        }

        #[test]
        fn extends_on_random_trees(seed in any::<u64>(), leaves in 1usize..=5, m in 1usize..=2, tri in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = build_from_tree(&random_tree(leaves, 20, &mut rng)).unwrap();
            let (lists, h, phi_h) = random_extension_input(&g, m, 8 * m as u32, tri, &mut rng);
            let phi = extend_coloring(&g, &lists, m, &h, &phi_h).unwrap();
            for (v, s) in h.iter().zip(&phi_h) {
                prop_assert_eq!(phi.get(*v), Some(*s));
            }
            if g.n() <= 9 && m == 1 {
                let inst = ChoosabilityInstance::new(g.clone(), lists.clone(), 1).unwrap();
                let mut pin = Multicoloring::new(1);
                for (v, s) in h.iter().zip(&phi_h) {
                    pin.set(*v, *s);
                }
                prop_assert!(solve(&inst, &Budget::UNLIMITED, Some(&pin)).unwrap().is_sat());
            }
        }
    }
}
