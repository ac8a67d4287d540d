//! Constructive `m`-fold list coloring of plane near-triangulations.
//!
//! [`tv_color`] extends a precolored outer edge `uv` to the whole graph when
//! the other outer vertices have at least `3m` colors and the inner vertices
//! at least `5m`. It works on an explicit outer cycle `[u, v, c2, .., ck-1]`:
//!
//! * a chord splits the graph in two; the side holding `uv` is colored first,
//!   then the other side with the chord as its precolored edge;
//! * without a chord, `w = ck-1` reserves `2m` colors of its list outside
//!   `phi(u)`, hands them away from its inner neighbors, drops out, and is
//!   colored last from the reserve;
//! * a bare triangle colors its third vertex directly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{validate_coloring, ChoosabilityInstance, ListAssignment, Multicoloring};
use crate::colorset::ColorSet;
use crate::error::{precondition, Error, Result};
use crate::graph::Graph;
use crate::plane::PlaneGraph;

/// A stacked triangulation on `n >= 3` vertices: start from a triangle and
/// repeatedly insert a vertex into a uniformly random inner face. The outer
/// face is the initial triangle.
pub fn generate_near_triangulation(n: usize, seed: u64) -> Result<PlaneGraph> {
    if n < 3 {
        return precondition(format!("a near-triangulation needs at least 3 vertices, got {n}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = Graph::complete(3);
    let mut inner: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for v in 3..n {
        let f = rng.gen_range(0..inner.len());
        let [a, b, c] = inner.swap_remove(f);
        graph.add_vertex();
        for x in [a, b, c] {
            graph.insert_edge(x, v);
        }
        inner.extend([[a, b, v], [b, c, v], [c, a, v]]);
    }
    let outer = vec![0, 2, 1];
    let mut faces: Vec<Vec<usize>> = inner.iter().map(|f| f.to_vec()).collect();
    faces.push(outer.clone());
    PlaneGraph::from_oriented_faces(graph, &faces, outer)
}

/// The precolored outer edge: `u`, `v` and their `m`-sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precoloring {
    pub u: usize,
    pub v: usize,
    pub set_u: ColorSet,
    pub set_v: ColorSet,
}

/// Colors `pg` from `lists` with `m` colors per vertex, extending
/// `pre`. With `check_invariants`, the list-size invariants are re-checked at
/// every recursive step.
pub fn tv_color(
    pg: &PlaneGraph,
    lists: &ListAssignment,
    m: usize,
    pre: Precoloring,
    check_invariants: bool,
) -> Result<Multicoloring> {
    let cycle = check_input(pg, lists, m, &pre)?;
    let n = pg.n();
    let mut run = Run {
        pg,
        m,
        lists: lists.as_slice().to_vec(),
        phi: vec![None; n],
        check: check_invariants,
        mark: vec![false; n],
    };
    run.phi[pre.u] = Some(pre.set_u);
    run.phi[pre.v] = Some(pre.set_v);
    run.color((0..n).collect(), cycle)?;

    let mut out = Multicoloring::new(m);
    for (v, set) in run.phi.into_iter().enumerate() {
        out.set(v, set.ok_or_else(|| Error::Internal(format!("vertex {v} left uncolored")))?);
    }
    let inst = ChoosabilityInstance::new(pg.graph.clone(), lists.clone(), m)?;
    if !validate_coloring(&inst, &out)? {
        return Err(Error::Internal("near-triangulation coloring failed validation".into()));
    }
    Ok(out)
}

/// Validates the hypotheses and returns the outer cycle starting `u, v`.
fn check_input(pg: &PlaneGraph, lists: &ListAssignment, m: usize, pre: &Precoloring) -> Result<Vec<usize>> {
    let n = pg.n();
    if m == 0 {
        return precondition("m must be at least 1");
    }
    if lists.len() != n {
        return precondition(format!("{} lists for {n} vertices", lists.len()));
    }
    pg.check_near_triangulation()?;
    pg.graph.check_vertex(pre.u)?;
    pg.graph.check_vertex(pre.v)?;
    let cycle = rooted_cycle(&pg.outer_face, pre.u, pre.v).ok_or_else(|| {
        Error::Precondition(format!("{} and {} are not consecutive on the outer cycle", pre.u, pre.v))
    })?;
    if pre.set_u.len() != m || pre.set_v.len() != m || !pre.set_u.is_disjoint(&pre.set_v) {
        return precondition(format!("precolored sets must be disjoint and have {m} colors each"));
    }
    if !pre.set_u.is_subset(&lists.get(pre.u)) || !pre.set_v.is_subset(&lists.get(pre.v)) {
        return precondition("precolored sets must come from the lists of u and v");
    }
    let mut on_cycle = vec![false; n];
    for &c in &cycle {
        on_cycle[c] = true;
    }
    for x in (0..n).filter(|&x| x != pre.u && x != pre.v) {
        let need = if on_cycle[x] { 3 * m } else { 5 * m };
        if lists.get(x).len() < need {
            return precondition(format!("vertex {x} has {} colors, needs {need}", lists.get(x).len()));
        }
    }
    Ok(cycle)
}

/// `face` rotated (and reversed if needed) to start with `u, v`.
fn rooted_cycle(face: &[usize], u: usize, v: usize) -> Option<Vec<usize>> {
    let k = face.len();
    let i = face.iter().position(|&x| x == u)?;
    let mut out: Vec<usize> = (0..k).map(|t| face[(i + t) % k]).collect();
    if out.get(1) != Some(&v) {
        out[1..].reverse();
    }
    (out.get(1) == Some(&v)).then_some(out)
}

struct Run<'a> {
    pg: &'a PlaneGraph,
    m: usize,
    lists: Vec<ColorSet>,
    phi: Vec<Option<ColorSet>>,
    check: bool,
    mark: Vec<bool>,
}

impl Run<'_> {
    /// Colors the near-triangulation induced by `members` whose outer cycle is
    /// `cycle`; `cycle[0]` and `cycle[1]` are already colored.
    fn color(&mut self, members: Vec<usize>, cycle: Vec<usize>) -> Result<()> {
        if self.check {
            self.check_state(&members, &cycle)?;
        }
        let k = cycle.len();
        if k == 3 && members.len() == 3 {
            let used = self.colors_of(cycle[0]).union(&self.colors_of(cycle[1]));
            let set = self.pick(cycle[2], &used, self.m)?;
            self.phi[cycle[2]] = Some(set);
            return Ok(());
        }
        if let Some((i, j)) = self.best_chord(&cycle) {
            return self.split(members, cycle, i, j);
        }
        self.fan(members, cycle)
    }

    fn colors_of(&self, x: usize) -> ColorSet {
        self.phi[x].unwrap_or_default()
    }

    fn pick(&self, x: usize, avoid: &ColorSet, size: usize) -> Result<ColorSet> {
        self.lists[x]
            .difference(avoid)
            .smallest(size)
            .ok_or_else(|| Error::Internal(format!("vertex {x} has fewer than {size} usable colors")))
    }

    /// Chord `(i, j)`, `i < j`, minimizing the far side's arc length, then by
    /// sorted endpoint ids.
    #[allow(clippy::type_complexity)]
    fn best_chord(&mut self, cycle: &[usize]) -> Option<(usize, usize)> {
        let k = cycle.len();
        let mut pos = vec![usize::MAX; self.pg.n()];
        for (i, &c) in cycle.iter().enumerate() {
            pos[c] = i;
        }
        let mut best: Option<((usize, usize, usize), (usize, usize))> = None;
        for (i, &c) in cycle.iter().enumerate() {
            for &x in self.pg.graph.neighbors(c) {
                let j = pos[x];
                if j == usize::MAX || j <= i + 1 || (i == 0 && j == k - 1) {
                    continue;
                }
                let far = if i == 0 { k - j + 1 } else { j - i + 1 };
                let key = (far, c.min(x), c.max(x));
                if best.is_none_or(|(b, _)| key < b) {
                    best = Some((key, (i, j)));
                }
            }
        }
        best.map(|(_, ij)| ij)
    }

    fn split(&mut self, members: Vec<usize>, cycle: Vec<usize>, i: usize, j: usize) -> Result<()> {
        let k = cycle.len();
        let (near_cycle, far_cycle) = if i == 0 {
            let near = cycle[..=j].to_vec();
            let mut far = vec![cycle[0]];
            far.extend_from_slice(&cycle[j..]);
            (near, far)
        } else {
            let mut near = cycle[..=i].to_vec();
            near.extend_from_slice(&cycle[j..]);
            let mut far = vec![cycle[j]];
            far.extend_from_slice(&cycle[i..j]);
            (near, far)
        };
        debug_assert!(near_cycle.len() + far_cycle.len() == k + 2);

        // the far side is everything reachable from its arc without crossing
        // the chord
        let (x, y) = (far_cycle[0], far_cycle[1]);
        let start = far_cycle[2];
        let far_members = self.reach(&members, start, &[x, y]);
        for &v in &far_members {
            self.mark[v] = true;
        }
        let near_members: Vec<usize> = members.iter().copied().filter(|&v| !self.mark[v]).collect();
        for &v in &far_members {
            self.mark[v] = false;
        }
        let mut far_members = far_members;
        far_members.extend([x, y]);

        self.color(near_members, near_cycle)?;
        self.color(far_members, far_cycle)
    }

    /// Vertices of `members` reachable from `start` avoiding `blocked`.
    fn reach(&mut self, members: &[usize], start: usize, blocked: &[usize]) -> Vec<usize> {
        let mut allowed = vec![false; self.pg.n()];
        for &v in members {
            allowed[v] = true;
        }
        for &v in blocked {
            allowed[v] = false;
        }
        allowed[start] = false;
        let mut out = vec![start];
        let mut head = 0;
        while head < out.len() {
            let v = out[head];
            head += 1;
            for &w in self.pg.graph.neighbors(v) {
                if allowed[w] {
                    allowed[w] = false;
                    out.push(w);
                }
            }
        }
        out
    }

    fn fan(&mut self, members: Vec<usize>, cycle: Vec<usize>) -> Result<()> {
        let k = cycle.len();
        let (u, w, prev) = (cycle[0], cycle[k - 1], cycle[k - 2]);
        for &v in &members {
            self.mark[v] = true;
        }
        let rot: Vec<usize> = self.pg.rotation[w].iter().copied().filter(|&x| self.mark[x]).collect();
        for &v in &members {
            self.mark[v] = false;
        }
        let path = inner_path(&rot, u, prev)
            .ok_or_else(|| Error::Internal(format!("vertex {w} has no inner neighbors between {u} and {prev}")))?;

        let reserve = self.pick(w, &self.colors_of(u), 2 * self.m)?;
        for &p in &path {
            self.lists[p] = self.lists[p].difference(&reserve);
        }
        let rest: Vec<usize> = members.into_iter().filter(|&x| x != w).collect();
        let mut next = cycle[..k - 1].to_vec();
        next.extend(path.iter().rev());
        self.color(rest, next)?;

        let set = reserve
            .difference(&self.colors_of(prev))
            .smallest(self.m)
            .ok_or_else(|| Error::Internal(format!("reserve of vertex {w} exhausted")))?;
        self.phi[w] = Some(set);
        Ok(())
    }

    fn check_state(&self, members: &[usize], cycle: &[usize]) -> Result<()> {
        let m = self.m;
        let k = cycle.len();
        let bad = |msg: String| Err(Error::Internal(format!("boundary invariant broken: {msg}")));
        if k < 3 {
            return bad(format!("outer cycle {cycle:?} too short"));
        }
        for t in 0..k {
            if !self.pg.graph.has_edge(cycle[t], cycle[(t + 1) % k]) {
                return bad(format!("{cycle:?} is not a cycle"));
            }
        }
        let (su, sv) = (self.colors_of(cycle[0]), self.colors_of(cycle[1]));
        if su.len() != m || sv.len() != m || !su.is_disjoint(&sv) {
            return bad(format!("precolored edge {}-{} is not properly colored", cycle[0], cycle[1]));
        }
        for &x in members {
            if x == cycle[0] || x == cycle[1] {
                continue;
            }
            let need = if cycle.contains(&x) { 3 * m } else { 5 * m };
            if self.phi[x].is_some() || self.lists[x].len() < need {
                return bad(format!("vertex {x} has {} colors, needs {need}", self.lists[x].len()));
            }
        }
        Ok(())
    }
}

/// The neighbors strictly between `a` and `b` in the cyclic order `rot`, read
/// from the `a` side. Exactly one of the two arcs must be empty.
fn inner_path(rot: &[usize], a: usize, b: usize) -> Option<Vec<usize>> {
    let d = rot.len();
    let ia = rot.iter().position(|&x| x == a)?;
    let arc =
        |step: usize| -> Vec<usize> { (1..d).map(|t| rot[(ia + t * step) % d]).take_while(|&x| x != b).collect() };
    let (fwd, bwd) = (arc(1), arc(d - 1));
    match (fwd.is_empty(), bwd.is_empty()) {
        (false, true) => Some(fwd),
        (true, false) => Some(bwd),
        _ => None,
    }
}

/// Random lists meeting the colorer's hypotheses: `u` and `v` get their
/// precolored sets, other outer vertices `3m` colors and inner vertices `5m`,
/// all drawn from `0..universe`.
pub fn random_lists(pg: &PlaneGraph, m: usize, universe: u32, rng: &mut impl Rng) -> (ListAssignment, Precoloring) {
    let (u, v) = (pg.outer_face[0], pg.outer_face[1]);
    let pool: Vec<u32> = (0..universe).collect();
    let mut draw = |size: usize| -> ColorSet { pool.choose_multiple(rng, size).copied().collect() };
    let both = draw(2 * m);
    let set_u = both.smallest(m).unwrap();
    let set_v = both.difference(&set_u);
    let lists = (0..pg.n())
        .map(|x| match x {
            _ if x == u => set_u,
            _ if x == v => set_v,
            _ if pg.outer_face.contains(&x) => draw(3 * m),
            _ => draw(5 * m),
        })
        .collect();
    (ListAssignment::new(lists), Precoloring { u, v, set_u, set_v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve, Budget};
    use proptest::prelude::*;

    fn set(cs: &[u32]) -> ColorSet {
        cs.iter().copied().collect()
    }

    #[test]
    fn triangle_third_vertex() {
        let pg = generate_near_triangulation(3, 0).unwrap();
        assert_eq!(pg.graph, Graph::complete(3));
        let lists = ListAssignment::new(vec![set(&[1]), set(&[1, 2, 3]), set(&[2])]);
        let pre = Precoloring { u: 0, v: 2, set_u: set(&[1]), set_v: set(&[2]) };
        let phi = tv_color(&pg, &lists, 1, pre, true).unwrap();
        assert_eq!(phi.get(1), Some(set(&[3])));
    }

    #[test]
    fn k4_with_center() {
        let pg = generate_near_triangulation(4, 1).unwrap();
        let lists = ListAssignment::new(vec![set(&[0]), set(&[1]), set(&[0, 1, 2]), set(&[0, 1, 2, 3, 4])]);
        let pre = Precoloring { u: 0, v: 1, set_u: set(&[0]), set_v: set(&[1]) };
        let phi = tv_color(&pg, &lists, 1, pre, true).unwrap();
        let inst = ChoosabilityInstance::new(pg.graph.clone(), lists, 1).unwrap();
        assert!(validate_coloring(&inst, &phi).unwrap());
        assert!(solve(&inst, &Budget::UNLIMITED, None).unwrap().is_sat());
    }

    #[test]
    fn generator_counts() {
        let pg = generate_near_triangulation(10, 7).unwrap();
        assert_eq!(pg.n(), 10);
        assert_eq!(pg.graph.edge_count(), 24);
        assert!(pg.is_near_triangulation());
        assert_eq!(pg, generate_near_triangulation(10, 7).unwrap());
        assert!(generate_near_triangulation(2, 0).is_err());
    }

    #[test]
    fn larger_outer_cycle_uses_chords() {
        // hexagon split by the chord 0-3, each half fanned from a hub
        let mut g = Graph::cycle(6);
        g.insert_edge(0, 3);
        g.add_vertex();
        g.add_vertex();
        for i in [0, 1, 2, 3] {
            g.insert_edge(i, 6);
        }
        for i in [3, 4, 5, 0] {
            g.insert_edge(i, 7);
        }
        let pg = crate::plane::embed(&g).unwrap();
        let outer = pg.faces().into_iter().find(|f| f.len() == 6).unwrap();
        let pg = PlaneGraph::new(pg.graph.clone(), pg.rotation.clone(), outer.clone()).unwrap();
        assert!(pg.is_near_triangulation());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 1..=3 {
            let (lists, pre) = random_lists(&pg, m, 8 * m as u32, &mut rng);
            let phi = tv_color(&pg, &lists, m, pre, true).unwrap();
            assert_eq!(phi.get(pre.u), Some(pre.set_u));
        }
    }

    #[test]
    fn preconditions_are_checked() {
        let pg = generate_near_triangulation(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let (lists, pre) = random_lists(&pg, 1, 10, &mut rng);
        let inner = (0..5).find(|x| !pg.outer_face.contains(x)).unwrap();
        let mut short = lists.clone();
        short.set(inner, lists.get(inner).smallest(4).unwrap());
        assert!(matches!(tv_color(&pg, &short, 1, pre, false), Err(Error::Precondition(_))));
        let swapped = Precoloring { set_u: pre.set_v, set_v: pre.set_u, ..pre };
        assert!(tv_color(&pg, &lists, 1, swapped, false).is_err());
        let off = Precoloring { v: inner, ..pre };
        assert!(tv_color(&pg, &lists, 1, off, false).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn colors_random_stacked_triangulations(n in 3usize..60, seed in any::<u64>(), m in 1usize..4) {
            let pg = generate_near_triangulation(n, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let (lists, pre) = random_lists(&pg, m, 7 * m as u32, &mut rng);
            let phi = tv_color(&pg, &lists, m, pre, true).unwrap();
            prop_assert_eq!(phi.get(pre.u), Some(pre.set_u));
            prop_assert_eq!(phi.get(pre.v), Some(pre.set_v));
        }

        #[test]
        fn agrees_with_solver(n in 3usize..9, seed in any::<u64>()) {
            let pg = generate_near_triangulation(n, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (lists, pre) = random_lists(&pg, 1, 6, &mut rng);
            let inst = ChoosabilityInstance::new(pg.graph.clone(), lists.clone(), 1).unwrap();
            prop_assert!(solve(&inst, &Budget::UNLIMITED, None).unwrap().is_sat());
            prop_assert!(tv_color(&pg, &lists, 1, pre, false).is_ok());
        }
    }
}
