//! Small named graphs used throughout the tests and the CLI examples.

use crate::format::parse_graph;
use crate::graph::WeightedGraph;

pub const E: &str = include_str!("../graphs/e.graph");
pub const F: &str = include_str!("../graphs/f.graph");
pub const R: &str = include_str!("../graphs/r.graph");
pub const I: &str = include_str!("../graphs/i.graph");
pub const ROSE: &str = include_str!("../graphs/rose.graph");
pub const L23: &str = include_str!("../graphs/l23.graph");
pub const F2: &str = include_str!("../graphs/f2.graph");
pub const TWO_WEIGHTED: &str = include_str!("../graphs/two_weighted.graph");

fn load(text: &str) -> WeightedGraph {
    parse_graph(text).expect("bundled graph is valid")
}

/// `u ⇄ v` with `alpha: u → v` of weight 2 and `beta: v → u` of weight 1.
pub fn g_e() -> WeightedGraph {
    load(E)
}

/// [`g_e`] with a second unweighted edge `gamma: v → u`.
pub fn g_f() -> WeightedGraph {
    load(F)
}

/// A reducible graph on five vertices.
pub fn g_r() -> WeightedGraph {
    load(R)
}

/// An irreducible graph on five vertices.
pub fn g_i() -> WeightedGraph {
    load(I)
}

/// One vertex with loops of weights 3, 3, 3, 2.
pub fn g_rose() -> WeightedGraph {
    load(ROSE)
}

/// One vertex with three loops of weight 2.
pub fn g_l23() -> WeightedGraph {
    load(L23)
}

/// Two parallel edges `u → v` of weights 2 and 1.
pub fn g_f2() -> WeightedGraph {
    load(F2)
}

/// Two parallel edges `u → v`, both of weight 2.
pub fn g_two_weighted() -> WeightedGraph {
    load(TWO_WEIGHTED)
}

/// Name and graph of every fixture.
pub fn named() -> Vec<(&'static str, WeightedGraph)> {
    vec![
        ("E", g_e()),
        ("F", g_f()),
        ("R", g_r()),
        ("I", g_i()),
        ("ROSE", g_rose()),
        ("L23", g_l23()),
        ("F2", g_f2()),
        ("TWO_WEIGHTED", g_two_weighted()),
    ]
}

pub fn all() -> Vec<WeightedGraph> {
    named().into_iter().map(|(_, g)| g).collect()
}
