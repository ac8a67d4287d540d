//! Exact search for `b`-fold list colorings.
//!
//! [`solve`] is a complete backtracking search over per-vertex domains kept as
//! bitsets. It branches on the vertex with the fewest remaining colors (ties
//! by id), tries that vertex's `b`-subsets in lexicographic order, and after
//! every assignment removes the chosen colors from the neighbors' domains. A
//! domain that drops below `b` colors is a conflict; a domain with exactly `b`
//! colors is assigned immediately. Whenever the unassigned vertices fall apart
//! into several connected components, each component is solved on its own.
//!
//! [`brute_force_oracle`] answers the same question by plain enumeration and
//! shares no code with the search; it exists to cross-check it.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use crate::coloring::{ChoosabilityInstance, Multicoloring};
use crate::colorset::{binomial, ColorSet};
use crate::error::{input, Error, Result};
use crate::graph::degeneracy_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: u64,
    pub propagations: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub verdict: Verdict,
    pub witness: Option<Multicoloring>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        self.verdict == Verdict::Sat
    }
}

/// Node and wall-clock limits. Exceeding either aborts the search with
/// [`Error::BudgetExceeded`], which is never reported as a verdict.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: None, max_time: None };

    pub fn nodes(n: u64) -> Self {
        Budget { max_nodes: Some(n), max_time: None }
    }
}

/// Decides whether `instance` has a `b`-fold coloring extending `pinned`.
pub fn solve(instance: &ChoosabilityInstance, budget: &Budget, pinned: Option<&Multicoloring>) -> Result<SolveResult> {
    let start = Instant::now();
    let mut search = Search::new(instance, *budget, true);
    let sat = search.prepare(pinned)? && search.run()?;
    let witness = sat.then(|| search.witness());
    let mut stats = search.stats;
    stats.elapsed = start.elapsed();
    Ok(SolveResult { verdict: if sat { Verdict::Sat } else { Verdict::Unsat }, witness, stats })
}

/// Calls `visit` on every `b`-fold coloring extending `pinned`, in search
/// order, until it returns `ControlFlow::Break`. Returns the number of
/// colorings visited.
pub fn for_each_coloring<F>(
    instance: &ChoosabilityInstance,
    budget: &Budget,
    pinned: Option<&Multicoloring>,
    mut visit: F,
) -> Result<(u64, SolveStats)>
where
    F: FnMut(&Multicoloring) -> ControlFlow<()>,
{
    let start = Instant::now();
    let mut search = Search::new(instance, *budget, false);
    let mut count = 0;
    if search.prepare(pinned)? {
        let _ = search.enumerate(&mut |s: &Search| {
            count += 1;
            visit(&s.witness())
        })?;
    }
    let mut stats = search.stats;
    stats.elapsed = start.elapsed();
    Ok((count, stats))
}

#[derive(Clone, Copy)]
enum Undo {
    Domain(usize, ColorSet),
    Assign(usize),
}

struct Search<'a> {
    inst: &'a ChoosabilityInstance,
    b: usize,
    domain: Vec<ColorSet>,
    assigned: Vec<Option<ColorSet>>,
    trail: Vec<Undo>,
    pending: Vec<usize>,
    split: bool,
    budget: Budget,
    start: Instant,
    stats: SolveStats,
    // scratch for component detection
    stamp: Vec<u32>,
    epoch: u32,
}

impl<'a> Search<'a> {
    fn new(inst: &'a ChoosabilityInstance, budget: Budget, split: bool) -> Self {
        let n = inst.n();
        Search {
            inst,
            b: inst.b,
            domain: inst.lists.as_slice().to_vec(),
            assigned: vec![None; n],
            trail: Vec::new(),
            pending: Vec::new(),
            split,
            budget,
            start: Instant::now(),
            stats: SolveStats::default(),
            stamp: vec![0; n],
            epoch: 0,
        }
    }

    /// Applies the pins and the initial forced assignments. `Ok(false)` means
    /// the instance is already refuted.
    fn prepare(&mut self, pinned: Option<&Multicoloring>) -> Result<bool> {
        let g = &self.inst.graph;
        if let Some(pins) = pinned {
            for (&v, set) in &pins.phi {
                g.check_vertex(v)?;
                if set.len() != self.b {
                    return input(format!("pin of vertex {v} has {} colors, expected {}", set.len(), self.b));
                }
                if !set.is_subset(&self.inst.lists.get(v)) {
                    return input(format!("pin of vertex {v} uses colors outside its list"));
                }
                for &w in g.neighbors(v) {
                    if pins.get(w).is_some_and(|s| !s.is_disjoint(set)) {
                        return input(format!("pins of adjacent vertices {v} and {w} overlap"));
                    }
                }
            }
            for (&v, &set) in &pins.phi {
                if self.assigned[v].is_none() {
                    if !set.is_subset(&self.domain[v]) || !self.assign(v, set) {
                        return Ok(false);
                    }
                } else if self.assigned[v] != Some(set) {
                    // forced to something else by an earlier pin
                    return Ok(false);
                }
            }
        }
        for v in 0..self.inst.n() {
            if self.assigned[v].is_some() {
                continue;
            }
            let d = self.domain[v];
            if d.len() < self.b {
                return Ok(false);
            }
            if d.len() == self.b && !self.assign(v, d) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn run(&mut self) -> Result<bool> {
        let free: Vec<usize> = (0..self.inst.n()).filter(|&v| self.assigned[v].is_none()).collect();
        self.search(&free)
    }

    fn witness(&self) -> Multicoloring {
        Multicoloring {
            phi: self.assigned.iter().enumerate().map(|(v, s)| (v, s.expect("complete assignment"))).collect(),
            b: self.b,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.nodes += 1;
        let nodes = self.stats.nodes;
        if self.budget.max_nodes.is_some_and(|m| nodes > m) {
            return Err(Error::BudgetExceeded { nodes });
        }
        if nodes.is_multiple_of(1024) && self.budget.max_time.is_some_and(|t| self.start.elapsed() > t) {
            return Err(Error::BudgetExceeded { nodes });
        }
        Ok(())
    }

    /// Assigns `set` to `v` and propagates; `false` on conflict. The caller
    /// undoes partial work through the trail.
    fn assign(&mut self, v: usize, set: ColorSet) -> bool {
        let g = &self.inst.graph;
        self.pending.clear();
        self.assigned[v] = Some(set);
        self.trail.push(Undo::Assign(v));
        let mut current = (v, set);
        loop {
            let (u, colors) = current;
            for &w in g.neighbors(u) {
                if self.assigned[w].is_some() {
                    continue;
                }
                let old = self.domain[w];
                let new = old.difference(&colors);
                if new == old {
                    continue;
                }
                self.stats.propagations += 1;
                self.trail.push(Undo::Domain(w, old));
                self.domain[w] = new;
                let len = new.len();
                if len < self.b {
                    return false;
                }
                if len == self.b {
                    self.pending.push(w);
                }
            }
            loop {
                let Some(w) = self.pending.pop() else {
                    return true;
                };
                if self.assigned[w].is_none() {
                    let d = self.domain[w];
                    self.assigned[w] = Some(d);
                    self.trail.push(Undo::Assign(w));
                    current = (w, d);
                    break;
                }
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Domain(v, old) => self.domain[v] = old,
                Undo::Assign(v) => self.assigned[v] = None,
            }
        }
    }

    fn pick(&self, free: &[usize]) -> Option<usize> {
        free.iter().copied().filter(|&v| self.assigned[v].is_none()).min_by_key(|&v| (self.domain[v].len(), v))
    }

    /// Connected components of the unassigned vertices among `free`.
    fn components(&mut self, free: &[usize]) -> Vec<Vec<usize>> {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        let g = &self.inst.graph;
        let mut comps = Vec::new();
        for &s in free {
            if self.assigned[s].is_some() || self.stamp[s] == self.epoch {
                continue;
            }
            self.stamp[s] = self.epoch;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in g.neighbors(u) {
                    if self.assigned[w].is_none() && self.stamp[w] != self.epoch {
                        self.stamp[w] = self.epoch;
                        comp.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    fn search(&mut self, free: &[usize]) -> Result<bool> {
        if self.split {
            let comps = self.components(free);
            match comps.len() {
                0 => return Ok(true),
                1 => return self.branch(&comps[0]),
                _ => {
                    for comp in &comps {
                        if !self.branch(comp)? {
                            return Ok(false);
                        }
                    }
                    return Ok(true);
                }
            }
        }
        self.branch(free)
    }

    fn branch(&mut self, free: &[usize]) -> Result<bool> {
        let Some(v) = self.pick(free) else {
            return Ok(true);
        };
        self.tick()?;
        for set in self.domain[v].subsets(self.b) {
            let mark = self.trail.len();
            if self.assign(v, set) {
                let rest: Vec<usize> = free.iter().copied().filter(|&w| self.assigned[w].is_none()).collect();
                if self.search(&rest)? {
                    return Ok(true);
                }
            }
            self.undo_to(mark);
        }
        Ok(false)
    }

    fn enumerate(&mut self, visit: &mut dyn FnMut(&Search) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        let n = self.inst.n();
        let Some(v) = (0..n).filter(|&v| self.assigned[v].is_none()).min_by_key(|&v| (self.domain[v].len(), v)) else {
            return Ok(visit(self));
        };
        self.tick()?;
        for set in self.domain[v].subsets(self.b) {
            let mark = self.trail.len();
            if self.assign(v, set) && self.enumerate(visit)?.is_break() {
                self.undo_to(mark);
                return Ok(ControlFlow::Break(()));
            }
            self.undo_to(mark);
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Largest search space [`brute_force_oracle`] agrees to enumerate.
pub const ORACLE_GUARD: u128 = 1_000_000_000;

/// Plain enumeration of every choice of `b` colors per vertex, in vertex-id
/// order, rejecting a partial choice only when it clashes with an earlier
/// neighbor. No propagation, no bitsets.
pub fn brute_force_oracle(instance: &ChoosabilityInstance) -> Result<SolveResult> {
    let start = Instant::now();
    let b = instance.b;
    let lists: Vec<Vec<u32>> = instance.lists.iter().map(ColorSet::to_vec).collect();
    let space = lists.iter().fold(1u128, |acc, l| acc.saturating_mul(binomial(l.len() as u64, b as u64)));
    if space > ORACLE_GUARD {
        return input(format!("oracle search space {space} exceeds the guard {ORACLE_GUARD}"));
    }

    fn choices(list: &[u32], b: usize) -> Vec<Vec<u32>> {
        fn rec(list: &[u32], b: usize, from: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == b {
                out.push(cur.clone());
                return;
            }
            for i in from..list.len() {
                cur.push(list[i]);
                rec(list, b, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(list, b, 0, &mut Vec::new(), &mut out);
        out
    }

    fn disjoint(a: &[u32], b: &[u32]) -> bool {
        a.iter().all(|x| !b.contains(x))
    }

    let options: Vec<Vec<Vec<u32>>> = lists.iter().map(|l| choices(l, b)).collect();
    let g = &instance.graph;
    let mut chosen: Vec<Vec<u32>> = Vec::with_capacity(g.n());
    let mut nodes = 0u64;

    fn rec(
        v: usize,
        g: &crate::graph::Graph,
        options: &[Vec<Vec<u32>>],
        chosen: &mut Vec<Vec<u32>>,
        nodes: &mut u64,
    ) -> bool {
        if v == options.len() {
            return true;
        }
        for opt in &options[v] {
            *nodes += 1;
            if g.neighbors(v).iter().filter(|&&w| w < v).all(|&w| disjoint(opt, &chosen[w])) {
                chosen.push(opt.clone());
                if rec(v + 1, g, options, chosen, nodes) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let sat = rec(0, g, &options, &mut chosen, &mut nodes);
    let witness = sat.then(|| Multicoloring {
        phi: chosen.iter().enumerate().map(|(v, c)| (v, c.iter().copied().collect())).collect(),
        b,
    });
    Ok(SolveResult {
        verdict: if sat { Verdict::Sat } else { Verdict::Unsat },
        witness,
        stats: SolveStats { nodes, propagations: 0, elapsed: start.elapsed() },
    })
}

/// The greedy colorer ran out of colors at `vertex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GreedyFailure {
    pub vertex: usize,
    pub available: usize,
}

/// Colors vertices in reverse degeneracy order, each with the `b` smallest
/// colors not used by an already-colored neighbor. Always succeeds when every
/// list has at least `(d + 1) * b` colors, `d` the degeneracy.
pub fn greedy_degenerate(instance: &ChoosabilityInstance) -> Result<Multicoloring, GreedyFailure> {
    let g = &instance.graph;
    let (_, order) = degeneracy_order(g);
    let mut phi = Multicoloring::new(instance.b);
    for &v in order.iter().rev() {
        let used = g.neighbors(v).iter().filter_map(|&w| phi.get(w)).fold(ColorSet::EMPTY, |acc, s| acc.union(&s));
        let avail = instance.lists.get(v).difference(&used);
        match avail.smallest(instance.b) {
            Some(set) => phi.set(v, set),
            None => return Err(GreedyFailure { vertex: v, available: avail.len() }),
        }
    }
    Ok(phi)
}
