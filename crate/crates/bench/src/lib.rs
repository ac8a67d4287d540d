//! Benchmark fixtures.

use multichoose::gadgets::{build_k5mf_counterexample, build_planar_counterexample};
use multichoose::planar::{generate_near_triangulation, random_lists};
use multichoose::{
    build_counterexample, ChoosabilityInstance, Family, ListAssignment, NonChoosabilityCertificate, PlaneGraph,
    Precoloring,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn bipartite_5_2() -> ChoosabilityInstance {
    build_counterexample(Family::Bipartite, 5, 2, None).expect("in range").0.instance
}

pub fn planar_4_1() -> ChoosabilityInstance {
    build_planar_counterexample(4, 1).expect("in range").0.instance
}

pub fn k5mf_certificate(a: usize, b: usize) -> (ChoosabilityInstance, NonChoosabilityCertificate) {
    let (g, cert) = build_k5mf_counterexample(a, b).expect("in range");
    (g.instance, cert)
}

pub fn colorer_input(n: usize, m: usize, seed: u64) -> (PlaneGraph, ListAssignment, Precoloring) {
    let pg = generate_near_triangulation(n, seed).expect("n >= 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lists, pre) = random_lists(&pg, m, 7 * m as u32, &mut rng);
    (pg, lists, pre)
}
