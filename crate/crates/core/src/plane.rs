//! Plane graphs as rotation systems.
//!
//! `rotation[v]` lists the neighbors of `v` in cyclic order. Faces are traced
//! with the rule: after walking the dart `u -> v`, continue with
//! `v -> succ_v(u)`, where `succ_v` is the cyclic successor in `rotation[v]`.
//! A face is reported as the sequence of dart tails along the walk.

use std::collections::{HashMap, HashSet};

use crate::error::{precondition, Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    pub graph: Graph,
    pub rotation: Vec<Vec<usize>>,
    /// Vertices of the designated outer face in walk order.
    pub outer_face: Vec<usize>,
}

impl PlaneGraph {
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>, outer_face: Vec<usize>) -> Result<Self> {
        check_rotation(&graph, &rotation)?;
        for &v in &outer_face {
            graph.check_vertex(v)?;
        }
        Ok(PlaneGraph { graph, rotation, outer_face })
    }

    /// Builds the rotation system from a set of consistently oriented facial
    /// walks (every dart in exactly one walk).
    pub fn from_oriented_faces(graph: Graph, faces: &[Vec<usize>], outer_face: Vec<usize>) -> Result<Self> {
        let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
        for face in faces {
            let k = face.len();
            for t in 0..k {
                let a = face[(t + k - 1) % k];
                let v = face[t];
                let b = face[(t + 1) % k];
                if succ.insert((v, a), b).is_some() {
                    return Err(Error::MalformedRotation {
                        vertex: v,
                        reason: format!("dart {a}->{v} appears in two faces"),
                    });
                }
            }
        }
        let mut rotation = Vec::with_capacity(graph.n());
        for v in 0..graph.n() {
            let ns = graph.neighbors(v);
            let mut rot = Vec::with_capacity(ns.len());
            if let Some(&start) = ns.first() {
                let mut cur = start;
                loop {
                    rot.push(cur);
                    cur = *succ.get(&(v, cur)).ok_or_else(|| Error::MalformedRotation {
                        vertex: v,
                        reason: format!("no face continues after dart {cur}->{v}"),
                    })?;
                    if cur == start || rot.len() > ns.len() {
                        break;
                    }
                }
            }
            rotation.push(rot);
        }
        PlaneGraph::new(graph, rotation, outer_face)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&w| w == u).expect("rotation checked at construction");
        rot[(i + 1) % rot.len()]
    }

    /// All facial walks. Every dart lies in exactly one of them.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut faces = Vec::new();
        for u in 0..self.n() {
            for &v in &self.rotation[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b)) {
                    face.push(a);
                    let c = self.succ(b, a);
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// `n - e + f`; equals 2 for a connected plane embedding.
    pub fn euler_characteristic(&self) -> isize {
        self.n() as isize - self.graph.edge_count() as isize + self.faces().len() as isize
    }

    pub fn is_euler_consistent(&self) -> bool {
        !self.graph.is_connected() || self.graph.n() == 1 || self.euler_characteristic() == 2
    }

    /// Position of the designated outer face in `faces`, matching cyclic
    /// rotations and reversals.
    pub fn outer_face_index(&self, faces: &[Vec<usize>]) -> Option<usize> {
        faces.iter().position(|f| same_cycle(f, &self.outer_face))
    }

    /// 2-connected, Euler-consistent, the outer face is one of the faces, and
    /// every other face is a triangle.
    pub fn check_near_triangulation(&self) -> Result<()> {
        if !self.graph.is_biconnected() {
            return precondition("a near-triangulation must be 2-connected");
        }
        let faces = self.faces();
        if self.euler_characteristic() != 2 {
            return precondition("rotation system does not describe a plane embedding");
        }
        let Some(outer) = self.outer_face_index(&faces) else {
            return precondition(format!("outer face {:?} is not a face of the embedding", self.outer_face));
        };
        if let Some(f) = faces.iter().enumerate().find(|&(i, f)| i != outer && f.len() != 3) {
            return precondition(format!("inner face {:?} is not a triangle", f.1));
        }
        Ok(())
    }

    pub fn is_near_triangulation(&self) -> bool {
        self.check_near_triangulation().is_ok()
    }

    /// Adds edges inside every face of length at least four until all faces
    /// are triangles. Requires a 2-connected embedding.
    pub fn triangulate(&self) -> Result<PlaneGraph> {
        if !self.graph.is_biconnected() {
            return precondition("triangulating requires a 2-connected embedding");
        }
        let mut graph = self.graph.clone();
        let mut faces = self.faces();
        let mut i = 0;
        while i < faces.len() {
            let f = faces[i].clone();
            let k = f.len();
            if k <= 3 {
                i += 1;
                continue;
            }
            let pair = (0..k)
                .flat_map(|s| (s + 2..k).map(move |t| (s, t)))
                .find(|&(s, t)| !(s == 0 && t == k - 1) && !graph.has_edge(f[s], f[t]));
            let Some((s, t)) = pair else {
                return Err(Error::NonPlanar);
            };
            graph.insert_edge(f[s], f[t]);
            faces[i] = f[s..=t].to_vec();
            let mut other: Vec<usize> = f[t..].to_vec();
            other.extend_from_slice(&f[..=s]);
            faces.push(other);
        }
        let outer: Vec<usize> = faces[0].clone();
        PlaneGraph::from_oriented_faces(graph, &faces, outer)
    }
}

fn check_rotation(graph: &Graph, rotation: &[Vec<usize>]) -> Result<()> {
    if rotation.len() != graph.n() {
        return Err(Error::MalformedRotation {
            vertex: rotation.len().min(graph.n()),
            reason: format!("{} rotations for {} vertices", rotation.len(), graph.n()),
        });
    }
    for (v, rot) in rotation.iter().enumerate() {
        let mut sorted = rot.clone();
        sorted.sort_unstable();
        if sorted != graph.neighbors(v) {
            return Err(Error::MalformedRotation {
                vertex: v,
                reason: format!("cyclic order {rot:?} is not a permutation of the neighbors"),
            });
        }
    }
    Ok(())
}

/// Equality of cyclic sequences up to rotation and reversal.
pub fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let k = a.len();
    let Some(start) = b.iter().position(|&x| x == a[0]) else {
        return false;
    };
    let forward = (0..k).all(|i| a[i] == b[(start + i) % k]);
    let backward = (0..k).all(|i| a[i] == b[(start + k - i) % k]);
    forward || backward
}

/// Planar embedding of a 2-connected graph by the Demoucron-Malgrange-Pertuiset
/// path-addition algorithm. Quadratic-ish; fine for a few hundred vertices.
/// The outer face of the result is the first face found.
pub fn embed(g: &Graph) -> Result<PlaneGraph> {
    if !g.is_biconnected() {
        return precondition("embedding requires a 2-connected graph");
    }
    let n = g.n();
    let cycle = find_cycle(g).ok_or_else(|| Error::Precondition("graph has no cycle".into()))?;
    let mut in_h = vec![false; n];
    let mut h_edges: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        h_edges.insert(key(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let total = g.edge_count();

    while h_edges.len() < total {
        let fragments = fragments(g, &in_h, &h_edges);
        let face_sets: Vec<HashSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
        let mut chosen: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> =
                (0..faces.len()).filter(|&i| frag.attachments.iter().all(|a| face_sets[i].contains(a))).collect();
            match admissible.len() {
                0 => return Err(Error::NonPlanar),
                1 => {
                    chosen = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = chosen.expect("at least one fragment remains");
        let path = fragment_path(g, &fragments[fi], &in_h);
        for w in path.windows(2) {
            h_edges.insert(key(w[0], w[1]));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = &faces[face_idx];
        let k = face.len();
        let (a1, a2) = (path[0], *path.last().unwrap());
        let i = face.iter().position(|&v| v == a1).unwrap();
        let j = face.iter().position(|&v| v == a2).unwrap();
        let interior = &path[1..path.len() - 1];
        let mut f1 = Vec::new();
        let mut t = i;
        loop {
            f1.push(face[t]);
            if t == j {
                break;
            }
            t = (t + 1) % k;
        }
        f1.extend(interior.iter().rev());
        let mut f2 = Vec::new();
        let mut t = j;
        loop {
            f2.push(face[t]);
            if t == i {
                break;
            }
            t = (t + 1) % k;
        }
        f2.extend(interior.iter());
        faces[face_idx] = f1;
        faces.push(f2);
    }
    let outer = faces[0].clone();
    PlaneGraph::from_oriented_faces(g.clone(), &faces, outer)
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    // iterative DFS; the first back edge closes a cycle
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let root = (0..n).find(|&v| g.degree(v) > 0)?;
    depth[root] = 0;
    let mut stack = vec![(root, 0usize)];
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx == g.degree(v) {
            stack.pop();
            continue;
        }
        let w = g.neighbors(v)[*idx];
        *idx += 1;
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, 0));
        } else if w != parent[v] && depth[w] < depth[v] {
            let mut cycle = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cycle.push(x);
            }
            return Some(cycle);
        }
    }
    None
}

struct Fragment {
    attachments: Vec<usize>,
    /// Non-embedded vertices of the fragment; empty for a single chord edge.
    vertices: Vec<usize>,
}

fn fragments(g: &Graph, in_h: &[bool], h_edges: &HashSet<(usize, usize)>) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if in_h[u] && in_h[v] && !h_edges.contains(&(u, v)) {
            out.push(Fragment { attachments: vec![u, v], vertices: Vec::new() });
        }
    }
    let removed: Vec<bool> = in_h.to_vec();
    for comp in g.components_without(&removed) {
        let mut att: Vec<usize> =
            comp.iter().flat_map(|&v| g.neighbors(v).iter().copied()).filter(|&w| in_h[w]).collect();
        att.sort_unstable();
        att.dedup();
        out.push(Fragment { attachments: att, vertices: comp });
    }
    out
}

fn fragment_path(g: &Graph, frag: &Fragment, in_h: &[bool]) -> Vec<usize> {
    if frag.vertices.is_empty() {
        return frag.attachments.clone();
    }
    let a1 = frag.attachments[0];
    let inside: HashSet<usize> = frag.vertices.iter().copied().collect();
    let start = *g.neighbors(a1).iter().find(|w| inside.contains(w)).expect("attachment touches fragment");
    let mut parent: HashMap<usize, usize> = HashMap::from([(start, usize::MAX)]);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if let Some(&a2) = g.neighbors(x).iter().find(|&&w| in_h[w] && w != a1) {
            let mut path = vec![a2];
            let mut y = x;
            while y != usize::MAX {
                path.push(y);
                y = parent[&y];
            }
            path.push(a1);
            path.reverse();
            return path;
        }
        for &w in g.neighbors(x) {
            if inside.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    unreachable!("a fragment of a 2-connected graph has two attachments")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> Graph {
        // antipodal pairs {0,3}, {1,4}, {2,5}
        let edges = Graph::complete(6).edges().filter(|&(u, v)| v != u + 3).collect::<Vec<_>>();
        Graph::from_edges(6, edges).unwrap()
    }

    #[test]
    fn triangle_has_two_faces() {
        let pg = PlaneGraph::new(Graph::complete(3), vec![vec![1, 2], vec![0, 2], vec![0, 1]], vec![0, 1, 2]).unwrap();
        let faces = pg.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert!(pg.is_near_triangulation());
    }

    #[test]
    fn k4_embedding_has_four_triangles() {
        let faces = vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 1], vec![1, 3, 2]];
        let pg = PlaneGraph::from_oriented_faces(Graph::complete(4), &faces, vec![1, 3, 2]).unwrap();
        let found = pg.faces();
        assert_eq!(found.len(), 4);
        assert!(found.iter().all(|f| f.len() == 3));
        assert_eq!(pg.euler_characteristic(), 2);
        assert!(pg.is_near_triangulation());
    }

    #[test]
    fn octahedron_embedding_has_eight_triangles() {
        let pg = embed(&octahedron()).unwrap();
        let faces = pg.faces();
        assert_eq!(faces.len(), 8);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(pg.n() as isize - 12 + 8, 2);
    }

    #[test]
    fn malformed_rotation_rejected() {
        let err = PlaneGraph::new(Graph::complete(3), vec![vec![1], vec![0, 2], vec![0, 1]], vec![0, 1, 2]);
        assert!(matches!(err, Err(Error::MalformedRotation { vertex: 0, .. })));
    }

    #[test]
    fn k5_and_k33_are_not_planar() {
        assert!(matches!(embed(&Graph::complete(5)), Err(Error::NonPlanar)));
        let mut k33 = Graph::new(6);
        for u in 0..3 {
            for v in 3..6 {
                k33.insert_edge(u, v);
            }
        }
        assert!(matches!(embed(&k33), Err(Error::NonPlanar)));
    }

    #[test]
    fn embedding_of_wheel_and_triangulation() {
        let mut wheel = Graph::cycle(6);
        let hub = wheel.add_vertex();
        for v in 0..6 {
            wheel.insert_edge(v, hub);
        }
        let pg = embed(&wheel).unwrap();
        assert_eq!(pg.euler_characteristic(), 2);
        assert_eq!(pg.faces().len(), 7);
        let tri = pg.triangulate().unwrap();
        assert_eq!(tri.graph.edge_count(), 3 * 7 - 6);
        assert!(tri.faces().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn near_triangulation_rejects_quadrilateral_inner_face() {
        let c4 = Graph::cycle(4);
        let pg = embed(&c4).unwrap();
        assert!(pg.faces().iter().all(|f| f.len() == 4));
        assert!(!pg.is_near_triangulation());
    }

    #[test]
    fn same_cycle_matches_rotations_and_reversals() {
        assert!(same_cycle(&[1, 2, 3, 4], &[3, 4, 1, 2]));
        assert!(same_cycle(&[1, 2, 3, 4], &[4, 3, 2, 1]));
        assert!(!same_cycle(&[1, 2, 3, 4], &[1, 3, 2, 4]));
    }
}
