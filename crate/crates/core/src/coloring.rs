//! Palettes, list assignments, multicolorings and the validity check that
//! ties them together.

use std::collections::BTreeMap;

use crate::colorset::ColorSet;
use crate::error::{input, Result};
use crate::graph::Graph;

/// Named, pairwise disjoint color blocks (`X`, `Y`, `P`, ...).
///
/// Block names are single letters so that a concatenation such as `"XPT"`
/// names the union of those blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Palette {
    blocks: BTreeMap<char, ColorSet>,
    pub a: usize,
    pub b: usize,
}

impl Palette {
    pub fn new(a: usize, b: usize) -> Self {
        Palette { blocks: BTreeMap::new(), a, b }
    }

    pub fn insert(&mut self, name: char, colors: ColorSet) -> Result<()> {
        for (other, set) in &self.blocks {
            if *other != name && !set.is_disjoint(&colors) {
                return input(format!("palette blocks {other} and {name} overlap"));
            }
        }
        self.blocks.insert(name, colors);
        Ok(())
    }

    /// Allocates consecutive fresh blocks starting at color `start`.
    pub fn allocate(&mut self, start: u32, blocks: &[(char, usize)]) -> Result<u32> {
        let mut next = start;
        for &(name, size) in blocks {
            let end = next + size as u32;
            self.insert(name, ColorSet::range(next, end))?;
            next = end;
        }
        Ok(next)
    }

    pub fn block(&self, name: char) -> Option<ColorSet> {
        self.blocks.get(&name).copied()
    }

    pub fn blocks(&self) -> &BTreeMap<char, ColorSet> {
        &self.blocks
    }

    /// Union of the named blocks, e.g. `"XPT"`. Unknown names are an error.
    pub fn union(&self, names: &str) -> Result<ColorSet> {
        names.chars().try_fold(ColorSet::EMPTY, |acc, c| match self.blocks.get(&c) {
            Some(set) => Ok(acc.union(set)),
            None => input(format!("palette has no block {c}")),
        })
    }

    /// Checks the block sizes: every named block in `unit` has size `b`, and
    /// `T` (if present) has size `t_size`.
    pub fn check_sizes(&self, unit: &str, t_size: usize) -> Result<()> {
        for name in unit.chars() {
            match self.blocks.get(&name) {
                Some(set) if set.len() == self.b => {}
                Some(set) => return input(format!("block {name} has {} colors, expected {}", set.len(), self.b)),
                None => return input(format!("palette has no block {name}")),
            }
        }
        let t = self.blocks.get(&'T').map_or(0, ColorSet::len);
        if t != t_size {
            return input(format!("block T has {t} colors, expected {t_size}"));
        }
        Ok(())
    }
}

/// One color list per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
    declared_size: Option<usize>,
}

impl ListAssignment {
    pub fn new(lists: Vec<ColorSet>) -> Self {
        ListAssignment { lists, declared_size: None }
    }

    /// Lists that must all have exactly `a` colors.
    pub fn uniform(lists: Vec<ColorSet>, a: usize) -> Result<Self> {
        if let Some((v, l)) = lists.iter().enumerate().find(|(_, l)| l.len() != a) {
            return input(format!("list of vertex {v} has {} colors, declared size is {a}", l.len()));
        }
        Ok(ListAssignment { lists, declared_size: Some(a) })
    }

    pub fn declared_size(&self) -> Option<usize> {
        self.declared_size
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn set(&mut self, v: usize, list: ColorSet) {
        if self.declared_size.is_some_and(|a| a != list.len()) {
            self.declared_size = None;
        }
        self.lists[v] = list;
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn iter(&self) -> impl Iterator<Item = &ColorSet> {
        self.lists.iter()
    }

    pub fn min_size(&self) -> usize {
        self.lists.iter().map(ColorSet::len).min().unwrap_or(0)
    }

    /// Smallest `k` such that every list lies in `0..k`.
    pub fn universe(&self) -> usize {
        self.lists.iter().filter_map(|l| l.last()).map(|c| c as usize + 1).max().unwrap_or(0)
    }
}

/// A `b`-fold coloring: vertex -> set of `b` colors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multicoloring {
    pub phi: BTreeMap<usize, ColorSet>,
    pub b: usize,
}

impl Multicoloring {
    pub fn new(b: usize) -> Self {
        Multicoloring { phi: BTreeMap::new(), b }
    }

    pub fn get(&self, v: usize) -> Option<ColorSet> {
        self.phi.get(&v).copied()
    }

    pub fn set(&mut self, v: usize, colors: ColorSet) {
        self.phi.insert(v, colors);
    }
}

/// A graph, a list assignment for it and the fold size `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChoosabilityInstance {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub b: usize,
}

impl ChoosabilityInstance {
    pub fn new(graph: Graph, lists: ListAssignment, b: usize) -> Result<Self> {
        if lists.len() != graph.n() {
            return input(format!("{} lists for a graph on {} vertices", lists.len(), graph.n()));
        }
        if b == 0 {
            return input("fold size b must be at least 1");
        }
        Ok(ChoosabilityInstance { graph, lists, b })
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }
}

/// Checks a complete multicoloring against an instance: every vertex gets
/// exactly `b` colors from its own list, and adjacent vertices get disjoint
/// sets.
///
/// A coloring that mentions a vertex outside the graph, or leaves a vertex
/// uncolored, is malformed input and reported as an error rather than `false`.
pub fn validate_coloring(instance: &ChoosabilityInstance, phi: &Multicoloring) -> Result<bool> {
    let n = instance.n();
    if let Some(&v) = phi.phi.keys().find(|&&v| v >= n) {
        return input(format!("coloring references vertex {v} outside the graph"));
    }
    if let Some(v) = (0..n).find(|v| !phi.phi.contains_key(v)) {
        return input(format!("coloring leaves vertex {v} uncolored"));
    }
    for (&v, set) in &phi.phi {
        if set.len() != instance.b || !set.is_subset(&instance.lists.get(v)) {
            return Ok(false);
        }
    }
    Ok(instance.graph.edges().all(|(u, v)| phi.phi[&u].is_disjoint(&phi.phi[&v])))
}
