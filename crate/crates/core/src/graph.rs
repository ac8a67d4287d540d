//! Finite simple undirected graphs.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;

use crate::error::{input, Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so two graphs with the same edge set on
/// the same vertex ids compare equal. Labels are metadata used to mirror the
/// names vertices carry in the constructions ("1", "8'", ...) and do not take
/// part in equality.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: BTreeMap<usize, String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], labels: BTreeMap::new() }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(k: usize) -> Self {
        let mut g = Graph::new(k);
        for u in 0..k {
            for v in u + 1..k {
                g.insert_edge(u, v);
            }
        }
        g
    }

    pub fn path(k: usize) -> Self {
        let mut g = Graph::new(k);
        for u in 1..k {
            g.insert_edge(u - 1, u);
        }
        g
    }

    pub fn cycle(k: usize) -> Self {
        let mut g = Graph::path(k);
        if k >= 3 {
            g.insert_edge(0, k - 1);
        }
        g
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.insert_edge(u, v))
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert_ne!(u, v);
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    /// Label if present, else the numeric id.
    pub fn display_name(&self, v: usize) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_owned)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().find(|(_, l)| l.as_str() == label).map(|(&v, _)| v)
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// The subgraph induced by `vertices` (in the given order) and the map
    /// from its ids back to ids of `self`. Labels are carried over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && j > i {
                    sub.insert_edge(i, j);
                }
            }
            if let Some(l) = self.labels.get(&v) {
                sub.labels.insert(i, l.clone());
            }
        }
        (sub, vertices.to_vec())
    }

    /// Connected components of the graph with the `removed` vertices deleted.
    /// Each component is sorted; components are ordered by smallest vertex.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        seen.resize(n, false);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Brute-force 2-connectivity: at least three vertices, connected, and
    /// no single vertex whose removal disconnects the rest.
    pub fn is_biconnected(&self) -> bool {
        if self.n() < 3 || !self.is_connected() {
            return false;
        }
        let mut removed = vec![false; self.n()];
        for v in 0..self.n() {
            removed[v] = true;
            let split = self.components_without(&removed).len() > 1;
            removed[v] = false;
            if split {
                return false;
            }
        }
        true
    }

    /// Two-coloring by BFS; `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Whether `K_k` is a subgraph. Exponential in `k`; intended for `k <= 5`.
    pub fn contains_clique(&self, k: usize) -> bool {
        fn grow(g: &Graph, clique: &mut Vec<usize>, cands: &[usize], k: usize) -> bool {
            if clique.len() == k {
                return true;
            }
            for (i, &v) in cands.iter().enumerate() {
                let next: Vec<usize> = cands[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
                if clique.len() + 1 + next.len() < k {
                    continue;
                }
                clique.push(v);
                if grow(g, clique, &next, k) {
                    return true;
                }
                clique.pop();
            }
            false
        }
        let all: Vec<usize> = (0..self.n()).collect();
        grow(self, &mut Vec::new(), &all, k)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        for (&v, l) in &self.labels {
            g.labels.insert(perm[v], l.clone());
        }
        g
    }

    /// Brute-force isomorphism test, limited to graphs on at most
    /// [`ISOMORPHISM_LIMIT`] vertices.
    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool> {
        if self.n() > ISOMORPHISM_LIMIT || other.n() > ISOMORPHISM_LIMIT {
            return input(format!("isomorphism testing is limited to {ISOMORPHISM_LIMIT} vertices"));
        }
        if self.n() != other.n() || self.edge_count() != other.edge_count() {
            return Ok(false);
        }
        let mut da: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        let mut db: Vec<usize> = (0..other.n()).map(|v| other.degree(v)).collect();
        da.sort_unstable();
        db.sort_unstable();
        if da != db {
            return Ok(false);
        }
        fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let v = map.len();
            if v == a.n() {
                return true;
            }
            for w in 0..b.n() {
                if used[w] || a.degree(v) != b.degree(w) {
                    continue;
                }
                if (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w)) {
                    used[w] = true;
                    map.push(w);
                    if extend(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[w] = false;
                }
            }
            false
        }
        Ok(extend(self, other, &mut Vec::new(), &mut vec![false; other.n()]))
    }
}

pub const ISOMORPHISM_LIMIT: usize = 10;

/// Pastes `g2` onto `g1`, identifying each key of `identify` (a vertex of
/// `g2`) with its value (a vertex of `g1`).
///
/// The result keeps `g1`'s ids; the remaining vertices of `g2` are appended in
/// increasing order. Parallel edges collapse. Returns the pasted graph and the
/// new id of every vertex of `g2`.
pub fn paste(g1: &Graph, g2: &Graph, identify: &BTreeMap<usize, usize>) -> Result<(Graph, Vec<usize>)> {
    for (&v2, &v1) in identify {
        g2.check_vertex(v2)?;
        g1.check_vertex(v1)?;
    }
    let mut out = g1.clone();
    let mut relabel = Vec::with_capacity(g2.n());
    for v in 0..g2.n() {
        match identify.get(&v) {
            Some(&target) => relabel.push(target),
            None => {
                let id = out.add_vertex();
                if let Some(l) = g2.label(v) {
                    out.set_label(id, l);
                }
                relabel.push(id);
            }
        }
    }
    for (u, v) in g2.edges() {
        let (a, b) = (relabel[u], relabel[v]);
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        out.insert_edge(a, b);
    }
    Ok((out, relabel))
}

/// [`paste`] restricted to clique-sums: the identified vertices must form a
/// clique in both graphs.
pub fn clique_sum(g1: &Graph, g2: &Graph, identify: &BTreeMap<usize, usize>) -> Result<(Graph, Vec<usize>)> {
    let side2: Vec<usize> = identify.keys().copied().collect();
    let side1: Vec<usize> = identify.values().copied().collect();
    for &v in &side2 {
        g2.check_vertex(v)?;
    }
    for &v in &side1 {
        g1.check_vertex(v)?;
    }
    let mut distinct = side1.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != side1.len() {
        return input("clique-sum identification must be injective");
    }
    if !g1.is_clique(&side1) || !g2.is_clique(&side2) {
        return input(format!("paste site {side2:?} -> {side1:?} is not a clique in both graphs"));
    }
    paste(g1, g2, identify)
}

/// Degeneracy ordering: repeatedly remove a vertex of minimum remaining
/// degree (smallest id on ties). Returns the largest degree seen at removal
/// time and the removal order.
pub fn degeneracy_order(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (deg[v], v)).unwrap();
        d = d.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    (d, order)
}

/// A random series-parallel graph on `n` vertices: each new vertex is
/// joined to both ends of a random existing edge (a 2-tree step), or with
/// probability `1/4` to one end only. Such graphs have no `K4` minor and
/// degeneracy at most 2.
pub fn random_series_parallel(n: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new(n);
    if n < 2 {
        return g;
    }
    g.insert_edge(0, 1);
    let mut edges = vec![(0, 1)];
    for v in 2..n {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        g.insert_edge(a, v);
        edges.push((a, v));
        if rng.gen_range(0..4) != 0 {
            g.insert_edge(b, v);
            edges.push((b, v));
        }
    }
    g
}
