//! Finite weighted graphs.
//!
//! A weighted graph has vertices and structured edges; a structured edge
//! `alpha` of weight `w` contributes the edge letters `alpha[1] .. alpha[w]`
//! and their starred duals to the generating alphabet of the algebra.
//!
//! Graphs are built from an unvalidated [`GraphSpec`] and are immutable
//! afterwards. Vertices and edges are stored sorted by name (bytewise), so the
//! index order of [`VertexIdx`] / [`EdgeIdx`] coincides with the
//! lexicographic order of identifiers.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::word::{Letter, Word};

/// Largest accepted edge weight. Weights expand to that many letters and to
/// grading vectors of that length, so absurd weights are rejected up front.
pub const MAX_WEIGHT: i64 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIdx(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeIdx(pub u32);

impl VertexIdx {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeIdx {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Unvalidated edge declaration, as it appears in a graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub id: String,
    pub source: String,
    pub range: String,
    pub weight: i64,
}

/// Unvalidated description of a weighted graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDecl>,
}

impl GraphSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn edge(mut self, id: &str, source: &str, range: &str, weight: i64) -> Self {
        self.edges.push(EdgeDecl {
            id: id.to_string(),
            source: source.to_string(),
            range: range.to_string(),
            weight,
        });
        self
    }

    pub fn build(self) -> Result<WeightedGraph, GraphError> {
        WeightedGraph::from_spec(self)
    }
}

/// One broken well-formedness rule.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error(
        "invalid identifier {0:?}: must start with a letter or '_' and contain only [A-Za-z0-9_.']"
    )]
    InvalidName(String),
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("edge {edge}: unknown vertex {vertex}")]
    UnknownVertex { edge: String, vertex: String },
    #[error("edge {edge}: weight ≥ 1 required (got {weight})")]
    NonPositiveWeight { edge: String, weight: i64 },
    #[error("edge {edge}: weight {weight} exceeds the supported maximum {MAX_WEIGHT}")]
    WeightTooLarge { edge: String, weight: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("vertex {0} is a sink")]
    Sink(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("word is not a generalised path")]
    NotAPath,
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// Identifiers must be usable as expression tokens.
pub fn is_valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\''))
}

/// Checks every well-formedness rule and reports all violations at once.
pub fn validate_graph(spec: &GraphSpec) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    // vertices and edges share one namespace so expressions stay unambiguous
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut vertices: BTreeSet<&str> = BTreeSet::new();
    for v in &spec.vertices {
        if !is_valid_identifier(v) {
            violations.push(Violation::InvalidName(v.clone()));
        }
        if !seen.insert(v) {
            violations.push(Violation::DuplicateId(v.clone()));
        }
        vertices.insert(v);
    }
    for e in &spec.edges {
        if !is_valid_identifier(&e.id) {
            violations.push(Violation::InvalidName(e.id.clone()));
        }
        if !seen.insert(&e.id) {
            violations.push(Violation::DuplicateId(e.id.clone()));
        }
        for end in [&e.source, &e.range] {
            if !vertices.contains(end.as_str()) {
                violations.push(Violation::UnknownVertex {
                    edge: e.id.clone(),
                    vertex: end.clone(),
                });
            }
        }
        if e.weight < 1 {
            violations.push(Violation::NonPositiveWeight {
                edge: e.id.clone(),
                weight: e.weight,
            });
        } else if e.weight > MAX_WEIGHT {
            violations.push(Violation::WeightTooLarge {
                edge: e.id.clone(),
                weight: e.weight,
            });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredEdge {
    pub id: String,
    pub source: VertexIdx,
    pub range: VertexIdx,
    pub weight: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Name {
    Vertex(VertexIdx),
    Edge(EdgeIdx),
}

/// A validated finite weighted graph.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    vertices: Vec<String>,
    edges: Vec<StructuredEdge>,
    out_edges: Vec<Vec<EdgeIdx>>,
    in_edges: Vec<Vec<EdgeIdx>>,
    special: Vec<Option<EdgeIdx>>,
    names: HashMap<String, Name>,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for WeightedGraph {}

impl WeightedGraph {
    pub fn from_spec(spec: GraphSpec) -> Result<Self, GraphError> {
        validate_graph(&spec).map_err(GraphError::Invalid)?;
        let mut vertices = spec.vertices;
        vertices.sort();
        let vidx: HashMap<&str, VertexIdx> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), VertexIdx(i as u32)))
            .collect();
        let mut decls = spec.edges;
        decls.sort_by(|a, b| a.id.cmp(&b.id));
        let edges: Vec<StructuredEdge> = decls
            .iter()
            .map(|e| StructuredEdge {
                id: e.id.clone(),
                source: vidx[e.source.as_str()],
                range: vidx[e.range.as_str()],
                weight: e.weight as u32,
            })
            .collect();
        let n = vertices.len();
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.source.index()].push(EdgeIdx(i as u32));
            in_edges[e.range.index()].push(EdgeIdx(i as u32));
        }
        // least id among the edges of maximal weight; out_edges is id-sorted
        let special = out_edges
            .iter()
            .map(|outs: &Vec<EdgeIdx>| {
                let max = outs.iter().map(|e| edges[e.index()].weight).max()?;
                outs.iter()
                    .copied()
                    .find(|e| edges[e.index()].weight == max)
            })
            .collect();
        let mut names = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            names.insert(v.clone(), Name::Vertex(VertexIdx(i as u32)));
        }
        for (i, e) in edges.iter().enumerate() {
            names.insert(e.id.clone(), Name::Edge(EdgeIdx(i as u32)));
        }
        Ok(Self {
            vertices,
            edges,
            out_edges,
            in_edges,
            special,
            names,
        })
    }

    /// The declaration form of this graph, vertices and edges in id order.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDecl {
                    id: e.id.clone(),
                    source: self.vertex_name(e.source).to_string(),
                    range: self.vertex_name(e.range).to_string(),
                    weight: e.weight as i64,
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexIdx> + '_ {
        (0..self.vertices.len() as u32).map(VertexIdx)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeIdx> + '_ {
        (0..self.edges.len() as u32).map(EdgeIdx)
    }

    pub fn vertex_name(&self, v: VertexIdx) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeIdx) -> &StructuredEdge {
        &self.edges[e.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Name> {
        self.names.get(name).copied()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexIdx> {
        match self.lookup(name)? {
            Name::Vertex(v) => Some(v),
            Name::Edge(_) => None,
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeIdx> {
        match self.lookup(name)? {
            Name::Edge(e) => Some(e),
            Name::Vertex(_) => None,
        }
    }

    /// `s⁻¹(v)`, sorted by edge id.
    pub fn out_edges(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.out_edges[v.index()]
    }

    /// `r⁻¹(v)`, sorted by edge id.
    pub fn in_edges(&self, v: VertexIdx) -> &[EdgeIdx] {
        &self.in_edges[v.index()]
    }

    pub fn is_sink(&self, v: VertexIdx) -> bool {
        self.out_edges[v.index()].is_empty()
    }

    pub fn weight(&self, e: EdgeIdx) -> u32 {
        self.edges[e.index()].weight
    }

    /// Largest edge weight, i.e. the rank of the grading group. Zero for
    /// edgeless graphs.
    pub fn max_weight(&self) -> u32 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }

    /// `ω(v)`: the maximal weight of an edge emitted by `v`.
    pub fn vertex_weight(&self, v: VertexIdx) -> Result<u32, GraphError> {
        self.out_edges[v.index()]
            .iter()
            .map(|e| self.weight(*e))
            .max()
            .ok_or_else(|| GraphError::Sink(self.vertex_name(v).to_string()))
    }

    /// The special edge `α^v`: the least id among the edges of maximal
    /// weight emitted by `v`.
    pub fn special_edge(&self, v: VertexIdx) -> Result<EdgeIdx, GraphError> {
        self.special[v.index()].ok_or_else(|| GraphError::Sink(self.vertex_name(v).to_string()))
    }

    pub(crate) fn special_edge_opt(&self, v: VertexIdx) -> Option<EdgeIdx> {
        self.special[v.index()]
    }

    /// The whole special-edge assignment, one entry per non-sink.
    pub fn special_edges(&self) -> Vec<(VertexIdx, EdgeIdx)> {
        self.vertices()
            .filter_map(|v| self.special[v.index()].map(|e| (v, e)))
            .collect()
    }

    /// Vertex letters first, then edge letters, then star letters; each
    /// group in (edge id, index) order.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = self.vertices().map(Letter::Vertex).collect();
        out.extend(self.edge_letters());
        out.extend(self.edge_letters().into_iter().map(Letter::dual));
        out
    }

    /// Unstarred edge letters `α_i`.
    pub fn edge_letters(&self) -> Vec<Letter> {
        self.edges()
            .flat_map(|e| (1..=self.weight(e)).map(move |i| Letter::Edge(e, i)))
            .collect()
    }

    pub fn contains_letter(&self, x: Letter) -> bool {
        match x {
            Letter::Vertex(v) => v.index() < self.vertices.len(),
            Letter::Edge(e, i) | Letter::Star(e, i) => {
                e.index() < self.edges.len() && i >= 1 && i <= self.weight(e)
            }
        }
    }

    pub fn letter_source(&self, x: Letter) -> VertexIdx {
        match x {
            Letter::Vertex(v) => v,
            Letter::Edge(e, _) => self.edge(e).source,
            Letter::Star(e, _) => self.edge(e).range,
        }
    }

    pub fn letter_range(&self, x: Letter) -> VertexIdx {
        match x {
            Letter::Vertex(v) => v,
            Letter::Edge(e, _) => self.edge(e).range,
            Letter::Star(e, _) => self.edge(e).source,
        }
    }

    /// A single vertex letter, or a chain of edge/star letters whose ranges
    /// and sources match.
    pub fn is_generalized_path(&self, w: &Word) -> bool {
        let letters = w.letters();
        match letters {
            [] => false,
            [Letter::Vertex(_)] => true,
            _ => {
                letters.iter().all(|x| !x.is_vertex())
                    && letters
                        .windows(2)
                        .all(|p| self.letter_range(p[0]) == self.letter_source(p[1]))
            }
        }
    }

    pub fn path_source(&self, p: &Word) -> VertexIdx {
        self.letter_source(p.first())
    }

    pub fn path_range(&self, p: &Word) -> VertexIdx {
        self.letter_range(p.last())
    }

    /// `p*`: reversed, with starred and unstarred letters swapped.
    pub fn dual(&self, p: &Word) -> Result<Word, GraphError> {
        if !self.is_generalized_path(p) {
            return Err(GraphError::NotAPath);
        }
        Ok(p.dual())
    }

    /// `T(u)`: vertices reachable from `u` along (unstarred) paths,
    /// including `u` itself.
    pub fn tree(&self, u: VertexIdx) -> BTreeSet<VertexIdx> {
        let mut seen = BTreeSet::from([u]);
        let mut queue = VecDeque::from([u]);
        while let Some(v) = queue.pop_front() {
            for e in self.out_edges(v) {
                let r = self.edge(*e).range;
                if seen.insert(r) {
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Vertices `v` with `ω(v) > 1`.
    pub fn weighted_vertices(&self) -> Vec<VertexIdx> {
        self.vertices()
            .filter(|v| self.vertex_weight(*v).is_ok_and(|w| w > 1))
            .collect()
    }

    /// Union of the trees of all weighted vertices.
    pub fn weight_forest(&self) -> BTreeSet<VertexIdx> {
        self.weighted_vertices()
            .into_iter()
            .flat_map(|v| self.tree(v))
            .collect()
    }

    /// Classes of the generalised-path equivalence. Since star letters walk
    /// edges backwards this is weak connectivity. Classes are listed by
    /// their least vertex, each class sorted.
    pub fn connected_components(&self) -> Vec<Vec<VertexIdx>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let a = find(&mut parent, e.source.index());
            let b = find(&mut parent, e.range.index());
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut classes: Vec<Vec<VertexIdx>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let root = find(&mut parent, v);
            let k = *slot.entry(root).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[k].push(VertexIdx(v as u32));
        }
        classes
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Shortest generalised path from `from` to `to` using index-1 letters,
    /// or the vertex word when `from == to`.
    pub fn connecting_path(&self, from: VertexIdx, to: VertexIdx) -> Option<Word> {
        if from == to {
            return Some(Word::vertex(from));
        }
        let mut prev: HashMap<VertexIdx, (VertexIdx, Letter)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let steps = self
                .out_edges(v)
                .iter()
                .map(|e| (Letter::Edge(*e, 1), self.edge(*e).range))
                .chain(
                    self.in_edges(v)
                        .iter()
                        .map(|e| (Letter::Star(*e, 1), self.edge(*e).source)),
                );
            for (x, w) in steps {
                if w != from && !prev.contains_key(&w) {
                    prev.insert(w, (v, x));
                    if w == to {
                        let mut letters = Vec::new();
                        let mut cur = to;
                        while cur != from {
                            let (p, x) = prev[&cur];
                            letters.push(x);
                            cur = p;
                        }
                        letters.reverse();
                        return Some(Word::new(letters));
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Shortest forward path of index-1 edge letters from `from` to `to`;
    /// `Some(vec![])` when `from == to`.
    pub fn forward_path(&self, from: VertexIdx, to: VertexIdx) -> Option<Vec<Letter>> {
        if from == to {
            return Some(Vec::new());
        }
        let mut prev: HashMap<VertexIdx, (VertexIdx, EdgeIdx)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for e in self.out_edges(v) {
                let w = self.edge(*e).range;
                if w != from && !prev.contains_key(&w) {
                    prev.insert(w, (v, *e));
                    if w == to {
                        let mut letters = Vec::new();
                        let mut cur = to;
                        while cur != from {
                            let (p, e) = prev[&cur];
                            letters.push(Letter::Edge(e, 1));
                            cur = p;
                        }
                        letters.reverse();
                        return Some(letters);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }

    pub fn display_letter(&self, x: Letter) -> LetterDisplay<'_> {
        LetterDisplay {
            graph: self,
            letter: x,
        }
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay {
            graph: self,
            word: w,
        }
    }
}

pub struct LetterDisplay<'a> {
    graph: &'a WeightedGraph,
    letter: Letter,
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.letter {
            Letter::Vertex(v) => f.write_str(self.graph.vertex_name(v)),
            Letter::Edge(e, i) => write!(f, "{}[{}]", self.graph.edge(e).id, i),
            Letter::Star(e, i) => write!(f, "{}[{}]^*", self.graph.edge(e).id, i),
        }
    }
}

pub struct WordDisplay<'a> {
    graph: &'a WeightedGraph,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.word.letters().iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{}", self.graph.display_letter(*x))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(g: &WeightedGraph, name: &str) -> VertexIdx {
        g.vertex_by_name(name).unwrap()
    }

    fn e(g: &WeightedGraph, name: &str) -> EdgeIdx {
        g.edge_by_name(name).unwrap()
    }

    #[test]
    fn fixture_e_is_valid() {
        let g = fixtures::g_e();
        assert!(validate_graph(&g.to_spec()).is_ok());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn zero_weight_is_rejected() {
        let spec = GraphSpec::new().vertex("u").edge("a", "u", "u", 0);
        let err = validate_graph(&spec).unwrap_err();
        assert_eq!(err.len(), 1);
        assert!(err[0].to_string().contains("weight ≥ 1 required"));
    }

    #[test]
    fn undeclared_endpoint_is_rejected() {
        let spec = GraphSpec::new().vertex("u").edge("a", "u", "w", 1);
        let err = validate_graph(&spec).unwrap_err();
        assert_eq!(
            err,
            vec![Violation::UnknownVertex {
                edge: "a".into(),
                vertex: "w".into()
            }]
        );
    }

    #[test]
    fn duplicate_and_bad_names() {
        let spec = GraphSpec::new()
            .vertex("u")
            .vertex("u")
            .vertex("1x")
            .edge("u", "u", "u", 1);
        let err = validate_graph(&spec).unwrap_err();
        assert!(err.contains(&Violation::DuplicateId("u".into())));
        assert!(err.contains(&Violation::InvalidName("1x".into())));
        assert_eq!(err.len(), 3);
    }

    #[test]
    fn vertex_weights() {
        let g = fixtures::g_e();
        assert_eq!(g.vertex_weight(v(&g, "u")).unwrap(), 2);
        assert_eq!(g.vertex_weight(v(&g, "v")).unwrap(), 1);
        let rose = fixtures::g_rose();
        assert_eq!(rose.vertex_weight(v(&rose, "v")).unwrap(), 3);
        let two = GraphSpec::new().vertex("a").vertex("b").build().unwrap();
        assert!(matches!(
            two.vertex_weight(v(&two, "a")),
            Err(GraphError::Sink(_))
        ));
    }

    #[test]
    fn special_edges_use_least_id() {
        let rose = fixtures::g_rose();
        assert_eq!(rose.special_edge(v(&rose, "v")).unwrap(), e(&rose, "alpha"));
        let g = fixtures::g_e();
        assert_eq!(g.special_edge(v(&g, "u")).unwrap(), e(&g, "alpha"));
        assert_eq!(g.special_edge(v(&g, "v")).unwrap(), e(&g, "beta"));
        let sink = GraphSpec::new().vertex("a").build().unwrap();
        assert!(sink.special_edge(VertexIdx(0)).is_err());
    }

    #[test]
    fn special_edge_has_vertex_weight() {
        for g in fixtures::all() {
            for vx in g.vertices().filter(|x| !g.is_sink(*x)) {
                let s = g.special_edge(vx).unwrap();
                assert_eq!(g.weight(s), g.vertex_weight(vx).unwrap());
                assert_eq!(g.edge(s).source, vx);
            }
        }
    }

    #[test]
    fn generalized_paths() {
        let g = fixtures::g_e();
        let (a, b) = (e(&g, "alpha"), e(&g, "beta"));
        let u = v(&g, "u");
        assert!(g.is_generalized_path(&Word::new(vec![Letter::Edge(a, 1), Letter::Edge(b, 1)])));
        assert!(!g.is_generalized_path(&Word::new(vec![Letter::Edge(a, 1), Letter::Edge(a, 1)])));
        assert!(!g.is_generalized_path(&Word::new(vec![
            Letter::Vertex(v(&g, "v")),
            Letter::Edge(a, 1)
        ])));
        assert!(g.is_generalized_path(&Word::vertex(u)));
    }

    #[test]
    fn dual_of_paths() {
        let g = fixtures::g_e();
        let (a, b) = (e(&g, "alpha"), e(&g, "beta"));
        let p = Word::new(vec![Letter::Edge(a, 1), Letter::Edge(b, 1)]);
        let d = g.dual(&p).unwrap();
        assert_eq!(d, Word::new(vec![Letter::Star(b, 1), Letter::Star(a, 1)]));
        assert_eq!(g.path_source(&d), g.path_range(&p));
        let vw = Word::vertex(v(&g, "v"));
        assert_eq!(g.dual(&vw).unwrap(), vw);
        let q = Word::new(vec![Letter::Edge(a, 2), Letter::Edge(b, 1)]);
        assert_eq!(g.dual(&g.dual(&q).unwrap()).unwrap(), q);
        let bad = Word::new(vec![Letter::Edge(a, 1), Letter::Edge(a, 1)]);
        assert_eq!(g.dual(&bad), Err(GraphError::NotAPath));
    }

    fn names(g: &WeightedGraph, set: &BTreeSet<VertexIdx>) -> Vec<String> {
        set.iter().map(|x| g.vertex_name(*x).to_string()).collect()
    }

    #[test]
    fn weight_forests() {
        let r = fixtures::g_r();
        assert_eq!(names(&r, &r.weight_forest()), ["u", "v", "w"]);
        let i = fixtures::g_i();
        assert_eq!(names(&i, &i.weight_forest()), ["u", "v", "w", "y"]);
        let plain = crate::classify::leavitt_algebra_graph(1, 1).unwrap();
        assert!(plain.weight_forest().is_empty());
    }

    #[test]
    fn weight_forest_is_downward_closed() {
        for g in fixtures::all() {
            let forest = g.weight_forest();
            for u in &forest {
                assert!(g.tree(*u).is_subset(&forest));
            }
        }
    }

    /// Reachability under generalised paths, by brute-force transitive
    /// closure of the symmetric edge relation.
    fn closure_components(g: &WeightedGraph) -> usize {
        let n = g.vertex_count();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for ed in g.edges() {
            let (s, r) = (g.edge(ed).source.index(), g.edge(ed).range.index());
            reach[s][r] = true;
            reach[r][s] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if reach[i][k] && reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        let mut classes: BTreeSet<Vec<bool>> = BTreeSet::new();
        for row in reach {
            classes.insert(row);
        }
        classes.len()
    }

    #[test]
    fn components() {
        let r = fixtures::g_r();
        assert_eq!(closure_components(&r), 1);
        assert_eq!(r.connected_components().len(), 1);
        let two = GraphSpec::new().vertex("a").vertex("b").build().unwrap();
        assert_eq!(
            two.connected_components(),
            vec![vec![VertexIdx(0)], vec![VertexIdx(1)]]
        );
        assert_eq!(fixtures::g_rose().connected_components().len(), 1);
        for g in fixtures::all() {
            let comps = g.connected_components();
            assert_eq!(comps.len(), closure_components(&g));
            let mut all: Vec<VertexIdx> = comps.into_iter().flatten().collect();
            all.sort();
            assert_eq!(all, g.vertices().collect::<Vec<_>>());
        }
    }

    #[test]
    fn connecting_paths_are_paths() {
        for g in fixtures::all() {
            for a in g.vertices() {
                for b in g.vertices() {
                    if let Some(p) = g.connecting_path(a, b) {
                        assert!(g.is_generalized_path(&p));
                        assert_eq!(g.path_source(&p), a);
                        assert_eq!(g.path_range(&p), b);
                    }
                }
            }
        }
    }
}
