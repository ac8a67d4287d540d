//! Exact tools for `(a:b)`-choosability.
//!
//! A graph is `(a:b)`-choosable when every assignment of `a`-color lists
//! admits a `b`-fold coloring: `b` colors per vertex, taken from its list,
//! with adjacent vertices getting disjoint sets. This crate provides
//!
//! * an exact solver for the `b`-fold list coloring problem ([`solver`]),
//! * builders for the gadget graphs and the non-choosable counterexamples
//!   assembled from them ([`gadgets`]),
//! * a checkable certificate format for non-choosability ([`certificate`]),
//! * constructive colorers for plane near-triangulations ([`planar`]) and
//!   for `K5`-minor-free graphs ([`wagner`]).

pub mod acceptance;
pub mod certificate;
pub mod coloring;
pub mod colorset;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod planar;
pub mod plane;
pub mod solver;
pub mod wagner;

pub use certificate::{
    check_certificate, verify_lemma, CertificateVerdict, CheckOptions, InvalidReason, LemmaOutcome, LemmaReport,
    NonChoosabilityCertificate,
};
pub use coloring::{validate_coloring, ChoosabilityInstance, ListAssignment, Multicoloring, Palette};
pub use colorset::{Color, ColorSet, MAX_COLORS};
pub use error::{Error, Result};
pub use gadgets::{build_counterexample, build_gadget, Family, GadgetInstance, GadgetKind};
pub use graph::{clique_sum, degeneracy_order, paste, Graph};
pub use planar::{tv_color, Precoloring};
pub use plane::PlaneGraph;
pub use solver::{brute_force_oracle, greedy_degenerate, solve, Budget, SolveResult, Verdict};
pub use wagner::{extend_coloring, ConstructionTree};
