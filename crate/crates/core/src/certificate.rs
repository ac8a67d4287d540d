//! Checkable witnesses that a list assignment admits no `b`-fold coloring,
//! and exhaustive verifiers for the gadget lemmas.
//!
//! A certificate names `k` pairwise adjacent hubs sharing one list, and one
//! copy per `k`-tuple of pairwise disjoint `b`-subsets of that list. Every
//! coloring of the hubs is one of these tuples, so if each copy is uncolorable
//! once its hubs are pinned to its tuple, the whole graph is uncolorable.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{ChoosabilityInstance, ListAssignment, Multicoloring};
use crate::colorset::ColorSet;
use crate::error::{Error, Result};
use crate::gadgets::{build_gadget, standard_palette, tuple_count, GadgetKind};
use crate::solver::{for_each_coloring, solve, Budget};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCopy {
    pub tuple: Vec<ColorSet>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonChoosabilityCertificate {
    pub hubs: Vec<usize>,
    pub hub_list: ColorSet,
    pub b: usize,
    pub copies: Vec<CertificateCopy>,
}

/// Why a certificate was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    /// Some list does not have exactly `|hub_list|` colors.
    ListSize {
        vertex: usize,
    },
    /// A hub's list differs from the declared hub list.
    HubList {
        vertex: usize,
    },
    /// The fold size disagrees with the instance, or a hub id is bad.
    Malformed(String),
    /// A tuple is not `k` pairwise disjoint `b`-subsets of the hub list.
    BadTuple {
        copy: usize,
    },
    /// The tuples are not every disjoint tuple exactly once.
    Coverage {
        expected: u128,
        found: usize,
        duplicates: usize,
    },
    HubsNotAdjacent {
        u: usize,
        v: usize,
    },
    /// Copies overlap, contain a hub, or miss a vertex.
    Partition(String),
    CrossCopyEdge {
        u: usize,
        v: usize,
    },
    /// Pinning the hubs to the copy's tuple leaves the copy colorable.
    CopySolvable {
        copy: usize,
    },
    /// The copy's search ran out of budget.
    UndeterminedCopy {
        copy: usize,
    },
}

impl InvalidReason {
    pub fn code(&self) -> &'static str {
        match self {
            InvalidReason::ListSize { .. } => "list-size",
            InvalidReason::HubList { .. } => "hub-list",
            InvalidReason::Malformed(_) => "malformed",
            InvalidReason::BadTuple { .. } => "bad-tuple",
            InvalidReason::Coverage { .. } => "coverage",
            InvalidReason::HubsNotAdjacent { .. } => "hubs-not-adjacent",
            InvalidReason::Partition(_) => "partition",
            InvalidReason::CrossCopyEdge { .. } => "cross-copy-edge",
            InvalidReason::CopySolvable { .. } => "copy-solvable",
            InvalidReason::UndeterminedCopy { .. } => "undetermined-copy",
        }
    }
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.code())?;
        match self {
            InvalidReason::ListSize { vertex } => write!(f, "list of vertex {vertex} has the wrong size"),
            InvalidReason::HubList { vertex } => write!(f, "hub {vertex} does not carry the hub list"),
            InvalidReason::Malformed(msg) | InvalidReason::Partition(msg) => f.write_str(msg),
            InvalidReason::BadTuple { copy } => {
                write!(f, "tuple of copy {copy} is not a disjoint tuple of the hub list")
            }
            InvalidReason::Coverage { expected, found, duplicates } => {
                write!(f, "expected {expected} distinct tuples, found {found} with {duplicates} duplicates")
            }
            InvalidReason::HubsNotAdjacent { u, v } => write!(f, "hubs {u} and {v} are not adjacent"),
            InvalidReason::CrossCopyEdge { u, v } => write!(f, "edge {u}-{v} joins two copies"),
            InvalidReason::CopySolvable { copy } => write!(f, "copy {copy} is colorable with its hubs pinned"),
            InvalidReason::UndeterminedCopy { copy } => write!(f, "search on copy {copy} exceeded its budget"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    Valid,
    Invalid(InvalidReason),
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        *self == CertificateVerdict::Valid
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Budget for each copy's search.
    pub budget: Budget,
    /// Worker threads for the copy checks; `None` uses the global pool and
    /// `Some(1)` runs them serially.
    pub workers: Option<usize>,
}

/// Checks `cert` against `instance`. The verdict does not depend on the
/// number of workers: copy failures are reported by smallest copy index.
pub fn check_certificate(
    instance: &ChoosabilityInstance,
    cert: &NonChoosabilityCertificate,
    options: &CheckOptions,
) -> Result<CertificateVerdict> {
    if let Err(reason) = check_structure(instance, cert) {
        return Ok(CertificateVerdict::Invalid(reason));
    }
    let run = |i: usize| check_copy(instance, cert, i, &options.budget);
    let outcomes: Vec<Result<Option<InvalidReason>>> = match options.workers {
        Some(1) => (0..cert.copies.len()).map(run).collect(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Input(format!("cannot start {w} workers: {e}")))?
            .install(|| (0..cert.copies.len()).into_par_iter().map(run).collect()),
        None => (0..cert.copies.len()).into_par_iter().map(run).collect(),
    };
    for outcome in outcomes {
        if let Some(reason) = outcome? {
            return Ok(CertificateVerdict::Invalid(reason));
        }
    }
    Ok(CertificateVerdict::Valid)
}

fn check_structure(inst: &ChoosabilityInstance, cert: &NonChoosabilityCertificate) -> Result<(), InvalidReason> {
    let n = inst.n();
    let a = cert.hub_list.len();
    let b = cert.b;
    let k = cert.hubs.len();
    if b != inst.b {
        return Err(InvalidReason::Malformed(format!("certificate b={b}, instance b={}", inst.b)));
    }
    if k == 0 {
        return Err(InvalidReason::Malformed("no hubs".into()));
    }
    if let Some(&h) = cert.hubs.iter().find(|&&h| h >= n) {
        return Err(InvalidReason::Malformed(format!("hub {h} outside the graph")));
    }
    if let Some(v) = (0..n).find(|&v| inst.lists.get(v).len() != a) {
        return Err(InvalidReason::ListSize { vertex: v });
    }
    if let Some(&h) = cert.hubs.iter().find(|&&h| inst.lists.get(h) != cert.hub_list) {
        return Err(InvalidReason::HubList { vertex: h });
    }
    for (i, &u) in cert.hubs.iter().enumerate() {
        for &v in &cert.hubs[i + 1..] {
            if u == v || !inst.graph.has_edge(u, v) {
                return Err(InvalidReason::HubsNotAdjacent { u, v });
            }
        }
    }

    let mut seen = HashSet::with_capacity(cert.copies.len());
    let mut duplicates = 0;
    for (i, copy) in cert.copies.iter().enumerate() {
        let t = &copy.tuple;
        let ok = t.len() == k
            && t.iter().all(|s| s.len() == b && s.is_subset(&cert.hub_list))
            && t.iter().enumerate().all(|(x, s)| t[x + 1..].iter().all(|o| s.is_disjoint(o)));
        if !ok {
            return Err(InvalidReason::BadTuple { copy: i });
        }
        if !seen.insert(t.clone()) {
            duplicates += 1;
        }
    }
    // valid tuples are all distinct and there are exactly q of them, so they
    // are all of them
    let expected = tuple_count(a, b, k);
    if duplicates > 0 || cert.copies.len() as u128 != expected {
        return Err(InvalidReason::Coverage { expected, found: cert.copies.len(), duplicates });
    }

    let mut owner = vec![usize::MAX; n];
    for &h in &cert.hubs {
        owner[h] = usize::MAX - 1;
    }
    for (i, copy) in cert.copies.iter().enumerate() {
        for &v in &copy.vertices {
            if v >= n {
                return Err(InvalidReason::Partition(format!("copy {i} names vertex {v} outside the graph")));
            }
            if owner[v] != usize::MAX {
                return Err(InvalidReason::Partition(format!("vertex {v} of copy {i} is a hub or in another copy")));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = (0..n).find(|&v| owner[v] == usize::MAX) {
        return Err(InvalidReason::Partition(format!("vertex {v} is in no copy")));
    }
    for (u, v) in inst.graph.edges() {
        let (cu, cv) = (owner[u], owner[v]);
        if cu < usize::MAX - 1 && cv < usize::MAX - 1 && cu != cv {
            return Err(InvalidReason::CrossCopyEdge { u, v });
        }
    }
    Ok(())
}

fn check_copy(
    inst: &ChoosabilityInstance,
    cert: &NonChoosabilityCertificate,
    i: usize,
    budget: &Budget,
) -> Result<Option<InvalidReason>> {
    let copy = &cert.copies[i];
    let k = cert.hubs.len();
    let vertices: Vec<usize> = cert.hubs.iter().chain(&copy.vertices).copied().collect();
    let (graph, _) = inst.graph.induced_subgraph(&vertices);
    let lists = ListAssignment::new(vertices.iter().map(|&v| inst.lists.get(v)).collect());
    let sub = ChoosabilityInstance::new(graph, lists, inst.b)?;
    let mut pinned = Multicoloring::new(inst.b);
    for (j, set) in copy.tuple.iter().enumerate().take(k) {
        pinned.set(j, *set);
    }
    match solve(&sub, budget, Some(&pinned)) {
        Ok(r) if r.is_sat() => Ok(Some(InvalidReason::CopySolvable { copy: i })),
        Ok(_) => Ok(None),
        Err(Error::BudgetExceeded { .. }) => Ok(Some(InvalidReason::UndeterminedCopy { copy: i })),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaOutcome {
    /// The instance has no coloring.
    Unsat,
    /// Every coloring meets the lemma's conclusion; `colorings` were checked.
    AllColoringsConform { colorings: u64 },
    /// The lemma failed; the witness is a coloring that breaks it.
    Refuted(Multicoloring),
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub kind: GadgetKind,
    pub a: usize,
    pub b: usize,
    pub outcome: LemmaOutcome,
    pub nodes: u64,
    pub elapsed: Duration,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        !matches!(self.outcome, LemmaOutcome::Refuted(_))
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match &self.outcome {
            LemmaOutcome::Unsat => "pass: no b-fold coloring exists".to_string(),
            LemmaOutcome::AllColoringsConform { colorings } => {
                format!("pass: all {colorings} colorings put more than half of T on vertex 8")
            }
            LemmaOutcome::Refuted(_) => "FAIL: found a coloring that breaks the lemma".to_string(),
        };
        write!(
            f,
            "{} (a={}, b={}): {what} [{} nodes, {:.3}s]",
            self.kind,
            self.a,
            self.b,
            self.nodes,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Exhaustively checks the lemma attached to gadget `kind` at `(a, b)`.
///
/// For `p4`, `f2` and `octa` the gadget must have no coloring. For `f1`,
/// every coloring must give vertex 8 more than half of `T`; when `T` is empty
/// that means no coloring. Running out of budget is an error, never a pass.
///
/// `f2` is decided half by half: the two copies of `f1` meet only in the hubs
/// and the edge 8-8'.
pub fn verify_lemma(kind: GadgetKind, a: usize, b: usize, budget: &Budget) -> Result<LemmaReport> {
    let start = Instant::now();
    let g = build_gadget(kind, &standard_palette(kind, a, b)?)?;
    let t = g.palette.block('T').unwrap_or_default();
    let report = |outcome, nodes| LemmaReport { kind, a, b, outcome, nodes, elapsed: start.elapsed() };

    if kind == GadgetKind::F2 {
        let (witness, nodes) = solve_by_halves(&g.instance, budget)?;
        let outcome = witness.map_or(LemmaOutcome::Unsat, LemmaOutcome::Refuted);
        return Ok(report(outcome, nodes));
    }
    if kind != GadgetKind::F1 || t.is_empty() {
        let r = solve(&g.instance, budget, None)?;
        let outcome = match r.witness {
            Some(w) => LemmaOutcome::Refuted(w),
            None => LemmaOutcome::Unsat,
        };
        return Ok(report(outcome, r.stats.nodes));
    }

    let eight = g.graph().vertex_by_label("8").expect("F1 has a vertex 8");
    let mut refuted = None;
    let (count, stats) = for_each_coloring(&g.instance, budget, None, |phi| {
        let hit = phi.get(eight).map_or(0, |s| s.intersection(&t).len());
        if 2 * hit > t.len() {
            ControlFlow::Continue(())
        } else {
            refuted = Some(phi.clone());
            ControlFlow::Break(())
        }
    })?;
    let outcome = match refuted {
        Some(w) => LemmaOutcome::Refuted(w),
        None if count == 0 => LemmaOutcome::Unsat,
        None => LemmaOutcome::AllColoringsConform { colorings: count },
    };
    Ok(report(outcome, stats.nodes))
}

type Projection = HashMap<(ColorSet, ColorSet), Vec<(ColorSet, Multicoloring)>>;

/// Colors an `f2` instance by enumerating each half separately and joining
/// the halves on the hub colors. Returns a coloring if one exists.
fn solve_by_halves(inst: &ChoosabilityInstance, budget: &Budget) -> Result<(Option<Multicoloring>, u64)> {
    let g = &inst.graph;
    let find = |l: &str| g.vertex_by_label(l).ok_or_else(|| Error::Internal(format!("f2 has no vertex {l}")));
    let (one, nine, eight, eight2) = (find("1")?, find("9")?, find("8")?, find("8'")?);
    let primed = |v: usize| g.label(v).is_some_and(|l| l.ends_with('\''));
    let left: Vec<usize> = (0..g.n()).filter(|&v| !primed(v)).collect();
    let right: Vec<usize> = (0..g.n()).filter(|&v| primed(v) || v == one || v == nine).collect();

    let mut nodes = 0;
    let mut project = |side: &[usize], tip: usize| -> Result<Projection> {
        let (sub, back) = g.induced_subgraph(side);
        let lists = ListAssignment::new(side.iter().map(|&v| inst.lists.get(v)).collect());
        let half = ChoosabilityInstance::new(sub, lists, inst.b)?;
        let local = |v: usize| side.iter().position(|&w| w == v).expect("vertex on this side");
        let (l1, l9, lt) = (local(one), local(nine), local(tip));
        let mut out = Projection::new();
        let (_, stats) = for_each_coloring(&half, budget, None, |phi| {
            let key = (phi.get(l1).unwrap_or_default(), phi.get(l9).unwrap_or_default());
            let tip_set = phi.get(lt).unwrap_or_default();
            let seen = out.entry(key).or_default();
            if seen.iter().all(|(s, _)| *s != tip_set) {
                let mut full = Multicoloring::new(inst.b);
                for (&v, &s) in &phi.phi {
                    full.set(back[v], s);
                }
                seen.push((tip_set, full));
            }
            ControlFlow::Continue(())
        })?;
        nodes += stats.nodes;
        Ok(out)
    };
    let a = project(&left, eight)?;
    let b = project(&right, eight2)?;
    for (key, tips) in &a {
        let Some(others) = b.get(key) else { continue };
        for (s, phi) in tips {
            if let Some((_, psi)) = others.iter().find(|(s2, _)| s.is_disjoint(s2)) {
                let mut joined = phi.clone();
                for (&v, &c) in &psi.phi {
                    joined.set(v, c);
                }
                return Ok((Some(joined), nodes));
            }
        }
    }
    Ok((None, nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::{build_bipartite_counterexample, build_k5mf_counterexample, build_planar_counterexample};
    use proptest::prelude::*;

    fn serial() -> CheckOptions {
        CheckOptions { budget: Budget::UNLIMITED, workers: Some(1) }
    }

    fn verdict(inst: &ChoosabilityInstance, cert: &NonChoosabilityCertificate) -> CertificateVerdict {
        check_certificate(inst, cert, &serial()).unwrap()
    }

    fn code(v: CertificateVerdict) -> &'static str {
        match v {
            CertificateVerdict::Valid => "valid",
            CertificateVerdict::Invalid(r) => r.code(),
        }
    }

    #[test]
    fn bipartite_certificate_is_valid() {
        let (g, cert) = build_bipartite_counterexample(2, 1).unwrap();
        assert_eq!(verdict(&g.instance, &cert), CertificateVerdict::Valid);
        assert!(!solve(&g.instance, &Budget::UNLIMITED, None).unwrap().is_sat());
    }

    #[test]
    fn deleted_tuple_breaks_coverage() {
        let (g, mut cert) = build_bipartite_counterexample(2, 1).unwrap();
        let dropped = cert.copies.pop().unwrap();
        cert.copies[0].vertices.extend(dropped.vertices);
        assert_eq!(code(verdict(&g.instance, &cert)), "coverage");
    }

    #[test]
    fn structural_failures_are_named() {
        let (g, cert) = build_bipartite_counterexample(5, 2).unwrap();

        let mut dup = cert.clone();
        dup.copies[1].tuple = dup.copies[0].tuple.clone();
        assert_eq!(code(verdict(&g.instance, &dup)), "coverage");

        let mut overlap = cert.clone();
        let v = overlap.copies[0].vertices[0];
        overlap.copies[1].vertices.push(v);
        assert_eq!(code(verdict(&g.instance, &overlap)), "partition");

        let mut missing = cert.clone();
        missing.copies[3].vertices.pop();
        assert_eq!(code(verdict(&g.instance, &missing)), "partition");

        let mut swapped = cert.clone();
        let t0 = swapped.copies[0].tuple.clone();
        swapped.copies[0].tuple = swapped.copies[1].tuple.clone();
        swapped.copies[1].tuple = t0;
        assert_eq!(code(verdict(&g.instance, &swapped)), "copy-solvable");

        let mut no_edge = g.instance.clone();
        no_edge.graph =
            crate::Graph::from_edges(g.instance.n(), g.instance.graph.edges().filter(|&e| e != (0, 1))).unwrap();
        assert_eq!(code(verdict(&no_edge, &cert)), "hubs-not-adjacent");

        let mut cross = g.instance.clone();
        cross.graph.add_edge(cert.copies[0].vertices[0], cert.copies[1].vertices[0]).unwrap();
        assert_eq!(code(verdict(&cross, &cert)), "cross-copy-edge");

        let mut bad = cert.clone();
        bad.copies[0].tuple[0] = ColorSet::range(0, 3);
        assert_eq!(code(verdict(&g.instance, &bad)), "bad-tuple");

        let mut hub = g.instance.clone();
        let mut l = hub.lists.get(0);
        l.remove(0);
        l.insert(200);
        hub.lists.set(0, l);
        assert_eq!(code(verdict(&hub, &cert)), "hub-list");
    }

    #[test]
    fn tiny_budget_is_undetermined_not_valid() {
        let (g, cert) = build_planar_counterexample(4, 1).unwrap();
        let opts = CheckOptions { budget: Budget::nodes(1), workers: Some(1) };
        assert_eq!(code(check_certificate(&g.instance, &cert, &opts).unwrap()), "undetermined-copy");
    }

    #[test]
    fn k5mf_certificate_agrees_with_direct_solve() {
        let (g, cert) = build_k5mf_counterexample(4, 1).unwrap();
        let parallel = check_certificate(&g.instance, &cert, &CheckOptions::default()).unwrap();
        assert_eq!(parallel, CertificateVerdict::Valid);
        assert_eq!(verdict(&g.instance, &cert), parallel);
        assert!(!solve(&g.instance, &Budget::UNLIMITED, None).unwrap().is_sat());
    }

    #[test]
    fn json_round_trip() {
        let (_, cert) = build_bipartite_counterexample(5, 2).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.starts_with(r#"{"hubs":[0,1],"hub_list":[0,1,2,3,4],"b":2,"copies":[{"tuple":[[0,1],[2,3]]"#));
        let back: NonChoosabilityCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn lemmas_pass_at_desk_scale() {
        for (kind, a, b) in [
            (GadgetKind::P4, 2, 1),
            (GadgetKind::P4, 5, 2),
            (GadgetKind::Octahedron, 9, 2),
            (GadgetKind::F1, 4, 1),
            (GadgetKind::F2, 4, 1),
        ] {
            let r = verify_lemma(kind, a, b, &Budget::UNLIMITED).unwrap();
            assert_eq!(r.outcome, LemmaOutcome::Unsat, "{r}");
        }
        assert!(verify_lemma(GadgetKind::P4, 6, 2, &Budget::UNLIMITED).is_err());
    }

    #[test]
    fn f2_halves_agree_with_direct_solve() {
        let g = build_gadget(GadgetKind::F2, &standard_palette(GadgetKind::F2, 4, 1).unwrap()).unwrap();
        let mut instances = vec![g.instance.clone()];
        // widening lists eventually makes the gadget colorable
        let mut loose = g.instance.clone();
        for v in 0..loose.n() {
            let mut l = loose.lists.get(v);
            l.insert(9 + (v % 2) as u32);
            loose.lists.set(v, l);
            instances.push(loose.clone());
        }
        let mut sat = 0;
        for inst in &instances {
            let (w, _) = solve_by_halves(inst, &Budget::UNLIMITED).unwrap();
            let direct = solve(inst, &Budget::UNLIMITED, None).unwrap();
            assert_eq!(w.is_some(), direct.is_sat());
            if let Some(w) = w {
                assert!(crate::coloring::validate_coloring(inst, &w).unwrap());
                sat += 1;
            }
        }
        assert!(sat > 0 && sat < instances.len());
    }

    #[test]
    fn f2_at_13_3_is_decided() {
        let r = verify_lemma(GadgetKind::F2, 13, 3, &Budget::nodes(50_000_000)).unwrap();
        assert_eq!(r.outcome, LemmaOutcome::Unsat, "{r}");
    }

    #[test]
    fn f1_with_nonempty_t_enumerates() {
        let r = verify_lemma(GadgetKind::F1, 13, 3, &Budget::nodes(50_000_000)).unwrap();
        assert!(matches!(r.outcome, LemmaOutcome::AllColoringsConform { colorings } if colorings > 0), "{r}");
        let starved = verify_lemma(GadgetKind::F1, 13, 3, &Budget::nodes(10));
        assert!(matches!(starved, Err(Error::BudgetExceeded { .. })));
    }

    fn mutate(inst: &ChoosabilityInstance, v: usize, drop: usize, add: u32) -> Option<ChoosabilityInstance> {
        let mut l = inst.lists.get(v);
        let c = l.iter().nth(drop % l.len())?;
        if l.contains(add) {
            return None;
        }
        l.remove(c);
        l.insert(add);
        let mut out = inst.clone();
        out.lists.set(v, l);
        Some(out)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // a valid verdict on a mutated instance still implies no coloring exists
        #[test]
        fn mutated_instances_are_never_wrongly_accepted(
            which in 0usize..2, v in 0usize..75, drop in 0usize..16, add in 0u32..12,
        ) {
            let (g, cert) = if which == 0 {
                build_bipartite_counterexample(2, 1).unwrap()
            } else {
                build_k5mf_counterexample(4, 1).unwrap()
            };
            let v = v % g.instance.n();
            if let Some(m) = mutate(&g.instance, v, drop, add) {
                let valid = verdict(&m, &cert).is_valid();
                let sat = solve(&m, &Budget::UNLIMITED, None).unwrap().is_sat();
                prop_assert!(!(valid && sat));
                if cert.hubs.contains(&v) {
                    prop_assert!(!valid);
                }
            }
        }
    }
}
