//! Structural classification: reducibility, the associated unweighted graph,
//! LV conditions, (graded) simplicity, domains, and explicit witnesses.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::element::Element;
use crate::graph::{GraphError, GraphSpec, VertexIdx, WeightedGraph};
use crate::rewrite::{ReductionRule, ReductionSystem, RuleFamily};
use crate::ring::Ring;
use crate::word::{Letter, Word};

/// Largest vertex count for exhaustive hereditary-saturated enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} is not a normal generalised path")]
    NotNormal(String),
    #[error(
        "quotient construction needs exactly one weighted and at least one unweighted edge at {0}"
    )]
    QuotientPrecondition(String),
    #[error("quotient system has an unresolvable ambiguity at {0}")]
    Unresolvable(String),
    #[error("enumeration limited to {MAX_ENUMERATION_VERTICES} vertices (graph has {0})")]
    TooManyVertices(usize),
    #[error("leavitt graph needs n ≥ 1 (got n = {0})")]
    LeavittParameters(u32),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

/// A yes/no answer, or an explanation of why none is given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Undetermined(String),
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("yes"),
            Verdict::No => f.write_str("no"),
            Verdict::Undetermined(why) => write!(f, "undetermined: {why}"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reducibility {
    Reducible,
    Irreducible,
    /// No edge has weight above 1, so the weight forest is empty.
    Unweighted,
}

impl fmt::Display for Reducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reducibility::Reducible => "yes",
            Reducibility::Irreducible => "no",
            Reducibility::Unweighted => "unweighted",
        })
    }
}

impl Serialize for Reducibility {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Every forest vertex emits at most one edge and receives at most one
/// edge from the forest.
pub fn is_reducible(g: &WeightedGraph) -> Reducibility {
    let forest = g.weight_forest();
    if forest.is_empty() {
        return Reducibility::Unweighted;
    }
    let ok = forest.iter().all(|&v| {
        let incoming = g
            .in_edges(v)
            .iter()
            .filter(|e| forest.contains(&g.edge(**e).source))
            .count();
        g.out_edges(v).len() <= 1 && incoming <= 1
    });
    if ok {
        Reducibility::Reducible
    } else {
        Reducibility::Irreducible
    }
}

/// The subgraph on the weight forest.
pub fn reduced_subgraph(g: &WeightedGraph) -> WeightedGraph {
    let forest = g.weight_forest();
    let mut spec = GraphSpec::new();
    for &v in &forest {
        spec = spec.vertex(g.vertex_name(v));
    }
    for e in g.edges() {
        let edge = g.edge(e);
        if forest.contains(&edge.source) {
            spec = spec.edge(
                &edge.id,
                g.vertex_name(edge.source),
                g.vertex_name(edge.range),
                i64::from(edge.weight),
            );
        }
    }
    spec.build().expect("subgraph of a valid graph")
}

/// A map from the letters of one graph to words of another (or zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMap {
    images: BTreeMap<Letter, Option<Word>>,
}

impl GeneratorMap {
    pub fn new() -> Self {
        Self {
            images: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, x: Letter, image: Option<Word>) {
        self.images.insert(x, image);
    }

    /// `None` when the letter is unmapped; `Some(None)` when it maps to 0.
    pub fn image(&self, x: Letter) -> Option<&Option<Word>> {
        self.images.get(&x)
    }

    pub fn is_total_on(&self, g: &WeightedGraph) -> bool {
        g.letters().iter().all(|x| self.images.contains_key(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &Option<Word>)> {
        self.images.iter()
    }
}

impl Default for GeneratorMap {
    fn default() -> Self {
        Self::new()
    }
}

/// `F` and the generator map `X → X'`. Edge letter `α_i` becomes edge
/// `alpha_i` (or `alpha` when unweighted), reversed when `s(α)` lies in the
/// weight forest; a clashing name gets primes appended.
pub fn associated_unweighted_graph(g: &WeightedGraph) -> (WeightedGraph, GeneratorMap) {
    let forest = g.weight_forest();
    let mut spec = GraphSpec::new();
    let mut taken: HashSet<String> = HashSet::new();
    for v in g.vertices() {
        spec = spec.vertex(g.vertex_name(v));
        taken.insert(g.vertex_name(v).to_string());
    }
    let mut planned = Vec::new();
    for e in g.edges() {
        let edge = g.edge(e);
        let reversed = forest.contains(&edge.source);
        for i in 1..=edge.weight {
            let mut name = if edge.weight == 1 {
                edge.id.clone()
            } else {
                format!("{}_{}", edge.id, i)
            };
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            let (s, r) = if reversed {
                (edge.range, edge.source)
            } else {
                (edge.source, edge.range)
            };
            spec = spec.edge(&name, g.vertex_name(s), g.vertex_name(r), 1);
            planned.push((e, i, name, reversed));
        }
    }
    let f = spec.build().expect("associated graph is valid");
    let mut map = GeneratorMap::new();
    for v in g.vertices() {
        let fv = f.vertex_by_name(g.vertex_name(v)).expect("same vertices");
        map.set(Letter::Vertex(v), Some(Word::vertex(fv)));
    }
    for (e, i, name, reversed) in planned {
        let fe = f.edge_by_name(&name).expect("edge just added");
        let (fwd, back) = (Letter::Edge(fe, 1), Letter::Star(fe, 1));
        let (img, img_star) = if reversed { (back, fwd) } else { (fwd, back) };
        map.set(Letter::Edge(e, i), Some(Word::letter(img)));
        map.set(Letter::Star(e, i), Some(Word::letter(img_star)));
    }
    (f, map)
}

/// Letterwise image of `a` in the target algebra, renormalised there.
pub fn map_element(gm: &GeneratorMap, target: &ReductionSystem, a: &Element) -> Element {
    let ring = target.ring();
    let mut out = Element::zero(ring);
    'terms: for (w, c) in a.terms() {
        let mut letters = Vec::new();
        for x in w.letters() {
            match gm.image(*x) {
                Some(Some(img)) => letters.extend_from_slice(img.letters()),
                Some(None) => continue 'terms,
                None => panic!("generator map is not total"),
            }
        }
        out.add_term(Word::new(letters), c);
    }
    target.normal_form(&out)
}

/// The defining relations of the algebra, each as an element that
/// vanishes in the quotient, with a label.
pub fn defining_relations(g: &WeightedGraph, ring: Ring) -> Vec<(String, Element)> {
    let mut out = Vec::new();
    let word = |ls: Vec<Letter>| Element::word(ring, Word::new(ls));
    let vertex = |v: VertexIdx| Element::word(ring, Word::vertex(v));
    let label = |kind: &str, w: &Element| format!("{kind} {}", w.display(g));
    for v in g.vertices() {
        for w in g.vertices() {
            let lhs = word(vec![Letter::Vertex(v), Letter::Vertex(w)]);
            let rel = if v == w {
                &lhs - &vertex(v)
            } else {
                lhs.clone()
            };
            out.push((label("vertex product", &lhs), rel));
        }
    }
    for e in g.edges() {
        let edge = g.edge(e);
        let (s, r) = (Letter::Vertex(edge.source), Letter::Vertex(edge.range));
        for i in 1..=edge.weight {
            let (a, b) = (Letter::Edge(e, i), Letter::Star(e, i));
            for (lhs, x) in [
                (vec![s, a], a),
                (vec![a, r], a),
                (vec![r, b], b),
                (vec![b, s], b),
            ] {
                let lhs = word(lhs);
                out.push((label("endpoint", &lhs), &lhs - &word(vec![x])));
            }
        }
    }
    for v in g.vertices() {
        let Ok(wv) = g.vertex_weight(v) else { continue };
        for i in 1..=wv {
            for j in 1..=wv {
                let mut sum = Element::zero(ring);
                for &a in g.out_edges(v) {
                    if i <= g.weight(a) && j <= g.weight(a) {
                        sum = &sum + &word(vec![Letter::Edge(a, i), Letter::Star(a, j)]);
                    }
                }
                let rel = if i == j {
                    &sum - &vertex(v)
                } else {
                    sum.clone()
                };
                out.push((
                    format!("special sum at {}, i = {i}, j = {j}", g.vertex_name(v)),
                    rel,
                ));
            }
        }
    }
    for a in g.edges() {
        for b in g.edges() {
            let top = g.weight(a).max(g.weight(b));
            let mut sum = Element::zero(ring);
            for i in 1..=top {
                if i <= g.weight(a) && i <= g.weight(b) {
                    sum = &sum + &word(vec![Letter::Star(a, i), Letter::Edge(b, i)]);
                }
            }
            let rel = if a == b {
                &sum - &vertex(g.edge(a).range)
            } else {
                sum.clone()
            };
            out.push((format!("star sum {}, {}", g.edge(a).id, g.edge(b).id), rel));
        }
    }
    out
}

/// The first defining relation of `src` whose image does not vanish.
pub fn first_broken_relation(
    src: &WeightedGraph,
    target: &ReductionSystem,
    gm: &GeneratorMap,
) -> Option<String> {
    if !gm.is_total_on(src) {
        return Some("map is not total".into());
    }
    defining_relations(src, target.ring())
        .into_iter()
        .find(|(_, rel)| !map_element(gm, target, rel).is_zero())
        .map(|(label, _)| label)
}

/// Whether `gm` induces a ring homomorphism `L(src) → L(target)`.
pub fn verify_generator_map(
    src: &WeightedGraph,
    target: &ReductionSystem,
    gm: &GeneratorMap,
) -> bool {
    first_broken_relation(src, target, gm).is_none()
}

/// Condition (LV): every weight ≥ 2, at least two maximal-weight edges at
/// every non-sink; plus at least one edge and connectedness.
pub fn is_lv_graph(g: &WeightedGraph) -> bool {
    g.edge_count() > 0
        && g.is_connected()
        && g.edges().all(|e| g.weight(e) >= 2)
        && g.vertices().all(|v| match g.vertex_weight(v) {
            Err(_) => true,
            Ok(w) => g.out_edges(v).iter().filter(|e| g.weight(**e) == w).count() >= 2,
        })
}

pub fn is_lv_rose(g: &WeightedGraph) -> bool {
    g.vertex_count() == 1 && is_lv_graph(g)
}

/// `(l, m)` for an LV-rose with least weight 2, greatest weight `l ≥ 3` and
/// `l + m` edges, `m > 0`.
pub fn module_type(g: &WeightedGraph) -> Option<(u32, u32)> {
    if !is_lv_rose(g) {
        return None;
    }
    let min = g.edges().map(|e| g.weight(e)).min()?;
    let l = g.max_weight();
    let count = g.edge_count() as u32;
    (min == 2 && l >= 3 && count > l).then(|| (l, count - l))
}

/// Smallest hereditary and saturated superset of `seed`.
pub fn hereditary_saturated_closure(
    f: &WeightedGraph,
    seed: &BTreeSet<VertexIdx>,
) -> BTreeSet<VertexIdx> {
    let mut h = seed.clone();
    loop {
        let mut grew = false;
        for v in f.vertices() {
            if h.contains(&v) {
                for e in f.out_edges(v) {
                    grew |= h.insert(f.edge(*e).range);
                }
            } else if !f.is_sink(v) && f.out_edges(v).iter().all(|e| h.contains(&f.edge(*e).range))
            {
                h.insert(v);
                grew = true;
            }
        }
        if !grew {
            return h;
        }
    }
}

pub fn is_hereditary_saturated(f: &WeightedGraph, h: &BTreeSet<VertexIdx>) -> bool {
    hereditary_saturated_closure(f, h) == *h
}

/// All hereditary and saturated vertex subsets, by exhaustive search.
pub fn hereditary_saturated_subsets(
    f: &WeightedGraph,
) -> Result<Vec<BTreeSet<VertexIdx>>, ClassifyError> {
    let n = f.vertex_count();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(ClassifyError::TooManyVertices(n));
    }
    let vs: Vec<VertexIdx> = f.vertices().collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let h: BTreeSet<VertexIdx> = (0..n)
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| vs[k])
            .collect();
        if is_hereditary_saturated(f, &h) {
            out.push(h);
        }
    }
    Ok(out)
}

/// Only `∅` and `F⁰` are hereditary and saturated. A nonempty such set
/// contains the closure of each of its vertices, so single-vertex closures
/// decide this.
pub fn has_only_trivial_hereditary_saturated(f: &WeightedGraph) -> bool {
    let all: BTreeSet<VertexIdx> = f.vertices().collect();
    f.vertices()
        .all(|v| hereditary_saturated_closure(f, &BTreeSet::from([v])) == all)
}

/// Some cycle has no exit: every vertex on it emits only the cycle edge.
pub fn has_cycle_without_exit(f: &WeightedGraph) -> bool {
    f.vertices().any(|start| {
        let mut v = start;
        for _ in 0..f.vertex_count() {
            let [e] = f.out_edges(v) else { return false };
            v = f.edge(*e).range;
            if v == start {
                return true;
            }
        }
        false
    })
}

fn field_reason(ring: Ring) -> Option<String> {
    (!ring.is_field()).then(|| format!("coefficients {ring} are not a field"))
}

/// Graded simplicity of the unweighted `L_R(F)`.
pub fn lpa_is_graded_simple(f: &WeightedGraph, ring: Ring) -> Verdict {
    if let Some(why) = field_reason(ring) {
        return Verdict::Undetermined(why);
    }
    Verdict::from_bool(f.vertex_count() > 0 && has_only_trivial_hereditary_saturated(f))
}

/// Simplicity of the unweighted `L_R(F)`.
pub fn lpa_is_simple(f: &WeightedGraph, ring: Ring) -> Verdict {
    match lpa_is_graded_simple(f, ring) {
        Verdict::Yes => Verdict::from_bool(!has_cycle_without_exit(f)),
        other => other,
    }
}

/// Simplicity and graded simplicity of `L_R(E, ω)`.
pub fn wlpa_simplicity(g: &WeightedGraph, ring: Ring) -> (Verdict, Verdict) {
    match is_reducible(g) {
        Reducibility::Irreducible => (Verdict::No, Verdict::No),
        Reducibility::Unweighted => (lpa_is_simple(g, ring), lpa_is_graded_simple(g, ring)),
        Reducibility::Reducible => {
            let (f, _) = associated_unweighted_graph(g);
            (lpa_is_simple(&f, ring), lpa_is_graded_simple(&f, ring))
        }
    }
}

fn is_small_unweighted_rose(g: &WeightedGraph) -> bool {
    g.vertex_count() == 1 && g.edge_count() <= 1 && g.edges().all(|e| g.weight(e) == 1)
}

/// Domain verdict and, when cheap, a zero-divisor pair `(a, b)` with
/// `ab = 0`.
pub fn domain(g: &WeightedGraph, ring: Ring) -> (Verdict, Option<(Word, Word)>) {
    if !ring.is_domain() {
        return (Verdict::No, None);
    }
    if is_small_unweighted_rose(g) || is_lv_rose(g) {
        return (Verdict::Yes, None);
    }
    let vs: Vec<VertexIdx> = g.vertices().collect();
    if vs.len() >= 2 {
        return (
            Verdict::No,
            Some((Word::vertex(vs[0]), Word::vertex(vs[1]))),
        );
    }
    let es: Vec<_> = g.edges().collect();
    if vs.len() == 1 && es.len() >= 2 && es.iter().all(|e| g.weight(*e) == 1) {
        let a = Word::letter(Letter::Star(es[0], 1));
        let b = Word::letter(Letter::Edge(es[1], 1));
        return (Verdict::No, Some((a, b)));
    }
    (Verdict::No, None)
}

/// Some `y` makes `yx` a type I or II word.
fn blocks_left(g: &WeightedGraph, x: Letter) -> bool {
    match x {
        Letter::Vertex(_) => false,
        Letter::Edge(_, i) => i == 1,
        Letter::Star(e, _) => g.special_edge_opt(g.edge(e).source) == Some(e),
    }
}

/// Some `y` makes `xy` a type I or II word.
fn blocks_right(g: &WeightedGraph, x: Letter) -> bool {
    match x {
        Letter::Vertex(_) => false,
        Letter::Edge(e, _) => g.special_edge_opt(g.edge(e).source) == Some(e),
        Letter::Star(_, i) => i == 1,
    }
}

/// Whether the normal path `p` is l-normal and r-normal.
pub fn is_lr_normal(rs: &ReductionSystem, p: &Word) -> Result<bool, ClassifyError> {
    let g = rs.graph();
    if !g.is_generalized_path(p) || !rs.is_irreducible(p) {
        return Err(ClassifyError::NotNormal(g.display_word(p).to_string()));
    }
    Ok(!blocks_left(g, p.first()) && !blocks_right(g, p.last()))
}

fn weighted_single_out(g: &WeightedGraph, w: VertexIdx) -> Option<crate::graph::EdgeIdx> {
    match g.out_edges(w) {
        [e] if g.weight(*e) >= 2 => Some(*e),
        _ => None,
    }
}

fn dual_path(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|x| x.dual()).collect()
}

/// Candidates from the constructive cases: two weighted edges at a vertex,
/// a branching forest vertex, and a forest vertex with two incoming forest
/// edges.
fn lr_normal_candidates(g: &WeightedGraph) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let Some(special) = g.special_edge_opt(v) else {
            continue;
        };
        for &b in g.out_edges(v) {
            if b != special && g.weight(b) >= 2 {
                out.push(vec![Letter::Edge(b, 2)]);
            }
        }
    }
    let forest = g.weight_forest();
    let heads: Vec<(VertexIdx, crate::graph::EdgeIdx)> = g
        .vertices()
        .filter_map(|w| weighted_single_out(g, w).map(|e| (w, e)))
        .collect();
    // a forest vertex emitting several edges
    for &v in &forest {
        if g.out_edges(v).len() <= 1 {
            continue;
        }
        let Some(special) = g.special_edge_opt(v) else {
            continue;
        };
        for &(u, a) in &heads {
            let Some(path) = g.forward_path(u, v) else {
                continue;
            };
            if path.is_empty() {
                continue;
            }
            for &b in g.out_edges(v) {
                if b == special {
                    continue;
                }
                let mut w = vec![Letter::Edge(a, 2)];
                w.extend_from_slice(&path[1..]);
                w.push(Letter::Edge(b, 1));
                out.push(w);
            }
        }
    }
    // a forest vertex receiving several forest edges
    for &v in &forest {
        let incoming: Vec<_> = g
            .in_edges(v)
            .iter()
            .copied()
            .filter(|e| forest.contains(&g.edge(*e).source))
            .collect();
        for &a in &incoming {
            for &b in &incoming {
                if a == b {
                    continue;
                }
                let (u1, u2) = (g.edge(a).source, g.edge(b).source);
                for &(w1, c) in &heads {
                    let Some(p1) = g.forward_path(w1, u1) else {
                        continue;
                    };
                    for &(w2, d) in &heads {
                        let Some(p2) = g.forward_path(w2, u2) else {
                            continue;
                        };
                        let mut w = Vec::new();
                        if p1.is_empty() {
                            w.push(Letter::Edge(a, 2));
                        } else {
                            w.push(Letter::Edge(c, 2));
                            w.extend_from_slice(&p1[1..]);
                            w.push(Letter::Edge(a, 1));
                        }
                        if p2.is_empty() {
                            w.push(Letter::Star(b, 2));
                        } else {
                            w.push(Letter::Star(b, 1));
                            w.extend(dual_path(&p2[1..]));
                            w.push(Letter::Star(d, 2));
                        }
                        out.push(w);
                    }
                }
            }
        }
    }
    out
}

/// A nontrivial lr-normal path from the constructive cases, or `None`
/// when none of them applies. `None` does not prove that no such path
/// exists.
pub fn find_lr_normal_witness(rs: &ReductionSystem) -> Option<Word> {
    let g = rs.graph();
    lr_normal_candidates(g).into_iter().find_map(|ls| {
        let w = Word::new(ls);
        match is_lr_normal(rs, &w) {
            Ok(true) => Some(w),
            _ => None,
        }
    })
}

/// A proper ideal generated by `α_1`, certified by a nontrivial quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWitness {
    pub vertex: VertexIdx,
    pub generator: Letter,
    /// Number of ambiguities of the extended system, all resolvable.
    pub ambiguities: usize,
    /// Strongly normal words of path length ≤ 1; each has nonzero residue.
    pub residues: Vec<Word>,
    /// Number of strongly normal words of path length ≤ 2.
    pub strongly_normal_up_to_two: usize,
}

/// The extra rules killing `α_1` at `v`, with `α` the unique weighted edge
/// and `β` the least unweighted edge at `v`.
pub fn quotient_rules(
    g: &WeightedGraph,
    v: VertexIdx,
) -> Result<Vec<ReductionRule>, ClassifyError> {
    let outs = g.out_edges(v);
    let weighted: Vec<_> = outs.iter().copied().filter(|e| g.weight(*e) >= 2).collect();
    let unweighted: Vec<_> = outs.iter().copied().filter(|e| g.weight(*e) == 1).collect();
    let ([alpha], Some(&beta)) = (weighted.as_slice(), unweighted.first()) else {
        return Err(ClassifyError::QuotientPrecondition(
            g.vertex_name(v).to_string(),
        ));
    };
    let alpha = *alpha;
    let mut rules = vec![
        ReductionRule {
            lhs: Word::letter(Letter::Edge(alpha, 1)),
            rhs: vec![],
            family: RuleFamily::KillGenerator,
        },
        ReductionRule {
            lhs: Word::letter(Letter::Star(alpha, 1)),
            rhs: vec![],
            family: RuleFamily::KillGenerator,
        },
    ];
    let mut rhs = vec![(Word::vertex(v), 1)];
    for &c in outs {
        if c != alpha && c != beta {
            rhs.push((Word::new(vec![Letter::Edge(c, 1), Letter::Star(c, 1)]), -1));
        }
    }
    rules.push(ReductionRule {
        lhs: Word::new(vec![Letter::Edge(beta, 1), Letter::Star(beta, 1)]),
        rhs,
        family: RuleFamily::UnweightedCompletion,
    });
    let mut rhs = vec![(Word::vertex(g.edge(alpha).range), 1)];
    for i in 3..=g.weight(alpha) {
        rhs.push((
            Word::new(vec![Letter::Star(alpha, i), Letter::Edge(alpha, i)]),
            -1,
        ));
    }
    rules.push(ReductionRule {
        lhs: Word::new(vec![Letter::Star(alpha, 2), Letter::Edge(alpha, 2)]),
        rhs,
        family: RuleFamily::WeightedCompletion,
    });
    Ok(rules)
}

/// The reduction system of `L_R(E, ω)/⟨α_1⟩` at `v`.
pub fn quotient_system(
    g: Arc<WeightedGraph>,
    ring: Ring,
    v: VertexIdx,
) -> Result<ReductionSystem, ClassifyError> {
    let rules = quotient_rules(&g, v)?;
    Ok(ReductionSystem::with_extra_rules(g, ring, rules)
        .expect("quotient rules have fresh left sides"))
}

pub fn quotient_witness(
    g: Arc<WeightedGraph>,
    ring: Ring,
    v: VertexIdx,
) -> Result<QuotientWitness, ClassifyError> {
    let rs = quotient_system(g, ring, v)?;
    let ambiguities = rs.enumerate_ambiguities();
    if let Some(bad) = ambiguities
        .iter()
        .find(|a| !rs.check_ambiguity_resolvable(a))
    {
        return Err(ClassifyError::Unresolvable(
            rs.graph().display_word(&bad.word()).to_string(),
        ));
    }
    let generator = rs
        .rules()
        .iter()
        .find(|r| r.family == RuleFamily::KillGenerator)
        .expect("quotient system kills a generator")
        .lhs
        .first();
    let words = rs.enumerate_normal_words(2);
    Ok(QuotientWitness {
        vertex: v,
        generator,
        ambiguities: ambiguities.len(),
        residues: words
            .iter()
            .filter(|w| w.path_len() <= 1)
            .cloned()
            .collect(),
        strongly_normal_up_to_two: words.len(),
    })
}

/// One vertex and `n + k` loops `y1 …` of weight `n`.
pub fn leavitt_algebra_graph(n: u32, k: u32) -> Result<WeightedGraph, ClassifyError> {
    if n == 0 {
        return Err(ClassifyError::LeavittParameters(n));
    }
    let mut spec = GraphSpec::new().vertex("v");
    for s in 1..=(n + k) {
        spec = spec.edge(&format!("y{s}"), "v", "v", i64::from(n));
    }
    Ok(spec.build()?)
}

/// Checks `Y·X = I_n` and `X·Y = I_{n+k}` entrywise, with `Y_{rs} = y_{rs}`
/// (edge `y_s`, index `r`) and `X_{sr} = y_{rs}*`.
pub fn check_leavitt_matrices(n: u32, k: u32, ring: Ring) -> Result<(bool, bool), ClassifyError> {
    let g = Arc::new(leavitt_algebra_graph(n, k)?);
    let rs = ReductionSystem::new(g.clone(), ring);
    let v = g.vertices().next().expect("one vertex");
    let ys: Vec<_> = g.edges().collect();
    let y = |r: u32, s: usize| Element::word(ring, Word::letter(Letter::Edge(ys[s], r)));
    let x = |s: usize, r: u32| Element::word(ring, Word::letter(Letter::Star(ys[s], r)));
    let unit = |on: bool| {
        if on {
            Element::word(ring, Word::vertex(v))
        } else {
            Element::zero(ring)
        }
    };
    let mut yx = true;
    for r in 1..=n {
        for r2 in 1..=n {
            let mut sum = Element::zero(ring);
            for s in 0..ys.len() {
                sum = &sum + &rs.multiply(&y(r, s), &x(s, r2));
            }
            yx &= rs.normal_form(&sum) == unit(r == r2);
        }
    }
    let mut xy = true;
    for s in 0..ys.len() {
        for s2 in 0..ys.len() {
            let mut sum = Element::zero(ring);
            for r in 1..=n {
                sum = &sum + &rs.multiply(&x(s, r), &y(r, s2));
            }
            xy &= rs.normal_form(&sum) == unit(s == s2);
        }
    }
    Ok((yx, xy))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub vertex: String,
    pub generator: String,
    pub residues: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub lr_normal: Option<String>,
    pub quotient: Option<QuotientReport>,
    pub zero_divisor: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub reducible: Reducibility,
    pub lv_graph: bool,
    pub lv_rose: bool,
    pub simple: Verdict,
    pub graded_simple: Verdict,
    pub domain: Verdict,
    pub module_type: Option<(u32, u32)>,
    pub witnesses: Witnesses,
}

impl ClassificationReport {
    /// `key: value` lines in the JSON key order.
    pub fn to_text(&self) -> String {
        let opt = |s: &Option<String>| s.clone().unwrap_or_else(|| "none".into());
        let mut lines = vec![
            format!("reducible: {}", self.reducible),
            format!("lv_graph: {}", self.lv_graph),
            format!("lv_rose: {}", self.lv_rose),
            format!("simple: {}", self.simple),
            format!("graded_simple: {}", self.graded_simple),
            format!("domain: {}", self.domain),
            format!(
                "module_type: {}",
                self.module_type
                    .map_or_else(|| "none".into(), |(l, m)| format!("({l},{m})"))
            ),
            format!("lr_normal_witness: {}", opt(&self.witnesses.lr_normal)),
        ];
        lines.push(format!(
            "quotient_witness: {}",
            self.witnesses.quotient.as_ref().map_or_else(
                || "none".into(),
                |q| format!(
                    "{} at {} with residues {}",
                    q.generator,
                    q.vertex,
                    q.residues.join(", ")
                )
            )
        ));
        lines.push(format!(
            "zero_divisor: {}",
            self.witnesses
                .zero_divisor
                .as_ref()
                .map_or_else(|| "none".into(), |[a, b]| format!("{a} * {b} = 0"))
        ));
        lines.join("\n") + "\n"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises") + "\n"
    }
}

/// Assembles every verdict and witness for `L_R(E, ω)`.
pub fn wlpa_classify(g: &Arc<WeightedGraph>, ring: Ring) -> ClassificationReport {
    let rs = ReductionSystem::new(g.clone(), ring);
    let reducible = is_reducible(g);
    let (simple, graded_simple) = wlpa_simplicity(g, ring);
    let (domain, zd) = domain(g, ring);
    let mut witnesses = Witnesses {
        zero_divisor: zd.map(|(a, b)| {
            [
                g.display_word(&a).to_string(),
                g.display_word(&b).to_string(),
            ]
        }),
        ..Witnesses::default()
    };
    if reducible == Reducibility::Irreducible {
        witnesses.lr_normal = find_lr_normal_witness(&rs).map(|w| g.display_word(&w).to_string());
        if witnesses.lr_normal.is_none() {
            witnesses.quotient = g.vertices().find_map(|v| {
                let q = quotient_witness(g.clone(), ring, v).ok()?;
                Some(QuotientReport {
                    vertex: g.vertex_name(v).to_string(),
                    generator: g.display_letter(q.generator).to_string(),
                    residues: q
                        .residues
                        .iter()
                        .map(|w| g.display_word(w).to_string())
                        .collect(),
                })
            });
        }
    }
    ClassificationReport {
        reducible,
        lv_graph: is_lv_graph(g),
        lv_rose: is_lv_rose(g),
        simple,
        graded_simple,
        domain,
        module_type: module_type(g),
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expression, parse_word};
    use crate::fixtures;

    fn arc(g: WeightedGraph) -> Arc<WeightedGraph> {
        Arc::new(g)
    }

    fn names(g: &WeightedGraph, s: &BTreeSet<VertexIdx>) -> Vec<String> {
        s.iter().map(|v| g.vertex_name(*v).to_string()).collect()
    }

    fn edge_line(g: &WeightedGraph, id: &str) -> String {
        let e = g.edge(g.edge_by_name(id).unwrap());
        format!(
            "{}: {}->{}",
            id,
            g.vertex_name(e.source),
            g.vertex_name(e.range)
        )
    }

    #[test]
    fn reducibility() {
        assert_eq!(is_reducible(&fixtures::g_r()), Reducibility::Reducible);
        assert_eq!(is_reducible(&fixtures::g_i()), Reducibility::Irreducible);
        assert_eq!(is_reducible(&fixtures::g_f()), Reducibility::Irreducible);
        assert_eq!(is_reducible(&fixtures::g_e()), Reducibility::Reducible);
        let plain = leavitt_algebra_graph(1, 1).unwrap();
        assert_eq!(is_reducible(&plain), Reducibility::Unweighted);
    }

    #[test]
    fn reduced_subgraphs() {
        let r = reduced_subgraph(&fixtures::g_r());
        assert_eq!(names(&r, &r.vertices().collect()), ["u", "v", "w"]);
        assert_eq!(r.edge_count(), 2);
        let i = reduced_subgraph(&fixtures::g_i());
        assert_eq!(names(&i, &i.vertices().collect()), ["u", "v", "w", "y"]);
        assert!(i.edge_by_name("delta").is_some());
        let plain = reduced_subgraph(&leavitt_algebra_graph(1, 2).unwrap());
        assert_eq!(plain.vertex_count(), 0);
    }

    #[test]
    fn associated_graph_of_r() {
        let (f, _) = associated_unweighted_graph(&fixtures::g_r());
        let lines: Vec<String> = ["alpha_1", "alpha_2", "beta", "delta", "gamma"]
            .iter()
            .map(|id| edge_line(&f, id))
            .collect();
        assert_eq!(
            lines,
            [
                "alpha_1: v->u",
                "alpha_2: v->u",
                "beta: w->v",
                "delta: y->w",
                "gamma: x->v"
            ]
        );
        assert!(f.edges().all(|e| f.weight(e) == 1));
    }

    #[test]
    fn associated_graph_of_e_and_rose() {
        let (f, map) = associated_unweighted_graph(&fixtures::g_e());
        assert_eq!(edge_line(&f, "alpha_1"), "alpha_1: v->u");
        assert_eq!(edge_line(&f, "alpha_2"), "alpha_2: v->u");
        assert_eq!(edge_line(&f, "beta"), "beta: u->v");
        let g = fixtures::g_e();
        let a1 = parse_word(&g, "alpha[1]").unwrap().first();
        let img = map.image(a1).unwrap().as_ref().unwrap();
        assert_eq!(f.display_word(img).to_string(), "alpha_1[1]^*");
        let one = GraphSpec::new()
            .vertex("v")
            .edge("a", "v", "v", 4)
            .build()
            .unwrap();
        let (rose, _) = associated_unweighted_graph(&one);
        assert_eq!(rose.vertex_count(), 1);
        assert_eq!(rose.edge_count(), 4);
    }

    #[test]
    fn name_collisions_get_primes() {
        let g = GraphSpec::new()
            .vertex("u")
            .edge("a", "u", "u", 2)
            .edge("a_1", "u", "u", 1)
            .build()
            .unwrap();
        let (f, _) = associated_unweighted_graph(&g);
        assert!(f.edge_by_name("a_1").is_some());
        assert!(f.edge_by_name("a_2").is_some());
        assert!(f.edge_by_name("a_1'").is_some());
        assert_eq!(f.edge_count(), 3);
    }

    #[test]
    fn mapping_elements() {
        let g = fixtures::g_e();
        let (f, map) = associated_unweighted_graph(&g);
        let target = ReductionSystem::new(arc(f), Ring::Integers);
        let v = parse_expression(&g, Ring::Integers, "v").unwrap();
        assert_eq!(
            map_element(&map, &target, &v)
                .display(target.graph())
                .to_string(),
            "v"
        );
        let a1 = parse_expression(&g, Ring::Integers, "alpha[1]").unwrap();
        assert_eq!(
            map_element(&map, &target, &a1)
                .display(target.graph())
                .to_string(),
            "alpha_1[1]^*"
        );
        assert!(map_element(&map, &target, &Element::zero(Ring::Integers)).is_zero());
    }

    #[test]
    fn associated_maps_are_homomorphisms() {
        for g in [fixtures::g_e(), fixtures::g_r()] {
            let (f, map) = associated_unweighted_graph(&g);
            let target = ReductionSystem::new(arc(f), Ring::Integers);
            assert_eq!(first_broken_relation(&g, &target, &map), None);
        }
    }

    #[test]
    fn identity_and_broken_maps() {
        let g = arc(fixtures::g_e());
        let rs = ReductionSystem::new(g.clone(), Ring::Integers);
        let mut id = GeneratorMap::new();
        for x in g.letters() {
            id.set(x, Some(Word::letter(x)));
        }
        assert!(verify_generator_map(&g, &rs, &id));
        let mut bad = id.clone();
        let u = g.vertex_by_name("u").unwrap();
        let v = g.vertex_by_name("v").unwrap();
        bad.set(Letter::Vertex(u), Some(Word::vertex(v)));
        assert!(!verify_generator_map(&g, &rs, &bad));
    }

    #[test]
    fn leavitt_quotient_map() {
        // y_{1i} ↦ y_i, x_{i1} ↦ y_i*, y_{2,3} ↦ 1, x_{3,2} ↦ 1, others ↦ 0
        let src = leavitt_algebra_graph(2, 1).unwrap();
        let tgt = arc(leavitt_algebra_graph(1, 1).unwrap());
        let rs = ReductionSystem::new(tgt.clone(), Ring::Rationals);
        let one = Word::vertex(tgt.vertices().next().unwrap());
        let mut map = GeneratorMap::new();
        map.set(
            Letter::Vertex(src.vertices().next().unwrap()),
            Some(one.clone()),
        );
        let ys: Vec<_> = src.edges().collect();
        let ts: Vec<_> = tgt.edges().collect();
        for (s, &e) in ys.iter().enumerate() {
            for r in 1..=2 {
                let (img, img_star) = match (r, s) {
                    (1, s) if s < 2 => (
                        Some(Word::letter(Letter::Edge(ts[s], 1))),
                        Some(Word::letter(Letter::Star(ts[s], 1))),
                    ),
                    (2, 2) => (Some(one.clone()), Some(one.clone())),
                    _ => (None, None),
                };
                map.set(Letter::Edge(e, r), img);
                map.set(Letter::Star(e, r), img_star);
            }
        }
        assert_eq!(first_broken_relation(&src, &rs, &map), None);
    }

    #[test]
    fn lv_conditions() {
        assert!(is_lv_graph(&fixtures::g_rose()));
        assert!(is_lv_rose(&fixtures::g_rose()));
        assert!(!is_lv_graph(&fixtures::g_e()));
        assert!(is_lv_graph(&fixtures::g_l23()));
        assert!(is_lv_graph(&fixtures::g_two_weighted()));
        assert!(!is_lv_graph(&fixtures::g_f2()));
    }

    #[test]
    fn module_types() {
        assert_eq!(module_type(&fixtures::g_rose()), Some((3, 1)));
        assert_eq!(module_type(&fixtures::g_l23()), None);
        assert_eq!(module_type(&fixtures::g_e()), None);
    }

    #[test]
    fn lpa_simplicity() {
        let q = Ring::Rationals;
        let (f_e, _) = associated_unweighted_graph(&fixtures::g_e());
        assert_eq!(lpa_is_simple(&f_e, q), Verdict::Yes);
        let loop1 = leavitt_algebra_graph(1, 0).unwrap();
        assert_eq!(lpa_is_graded_simple(&loop1, q), Verdict::Yes);
        assert_eq!(lpa_is_simple(&loop1, q), Verdict::No);
        let point = GraphSpec::new().vertex("v").build().unwrap();
        assert_eq!(lpa_is_simple(&point, q), Verdict::Yes);
        assert!(matches!(
            lpa_is_simple(&f_e, Ring::Integers),
            Verdict::Undetermined(_)
        ));
    }

    #[test]
    fn hereditary_saturated_enumeration_agrees_with_closures() {
        for g in fixtures::all() {
            let (f, _) = associated_unweighted_graph(&g);
            let subsets = hereditary_saturated_subsets(&f).unwrap();
            for h in &subsets {
                for &v in h {
                    for e in f.out_edges(v) {
                        assert!(h.contains(&f.edge(*e).range));
                    }
                }
                for v in f.vertices() {
                    if !f.is_sink(v) && f.out_edges(v).iter().all(|e| h.contains(&f.edge(*e).range))
                    {
                        assert!(h.contains(&v));
                    }
                }
            }
            let trivial = subsets.len() == 2 || (f.vertex_count() == 0 && subsets.len() == 1);
            assert_eq!(trivial, has_only_trivial_hereditary_saturated(&f));
        }
    }

    #[test]
    fn lr_normal_letters() {
        let two = arc(fixtures::g_two_weighted());
        let rs = ReductionSystem::new(two.clone(), Ring::Integers);
        assert!(is_lr_normal(&rs, &parse_word(&two, "beta[2]").unwrap()).unwrap());
        let gi = arc(fixtures::g_i());
        let rs = ReductionSystem::new(gi.clone(), Ring::Integers);
        let w = parse_word(&gi, "alpha[2]*beta[1]*delta[2]^*").unwrap();
        assert!(is_lr_normal(&rs, &w).unwrap());
        let f2 = arc(fixtures::g_f2());
        let rs = ReductionSystem::new(f2.clone(), Ring::Integers);
        assert!(!is_lr_normal(&rs, &parse_word(&f2, "alpha[1]").unwrap()).unwrap());
        let bad = parse_word(&f2, "alpha[1]^**alpha[1]").unwrap();
        assert!(is_lr_normal(&rs, &bad).is_err());
    }

    #[test]
    fn lr_normal_witnesses() {
        let show = |g: WeightedGraph| {
            let g = arc(g);
            let rs = ReductionSystem::new(g.clone(), Ring::Integers);
            find_lr_normal_witness(&rs).map(|w| g.display_word(&w).to_string())
        };
        assert_eq!(show(fixtures::g_two_weighted()).as_deref(), Some("beta[2]"));
        assert_eq!(
            show(fixtures::g_i()).as_deref(),
            Some("alpha[2]*beta[1]*delta[2]^*")
        );
        assert_eq!(show(fixtures::g_f2()), None);
    }

    #[test]
    fn quotient_witness_on_f2() {
        let g = arc(fixtures::g_f2());
        let u = g.vertex_by_name("u").unwrap();
        let q = quotient_witness(g.clone(), Ring::Integers, u).unwrap();
        assert_eq!(g.display_letter(q.generator).to_string(), "alpha[1]");
        let residues: Vec<String> = q
            .residues
            .iter()
            .map(|w| g.display_word(w).to_string())
            .collect();
        assert_eq!(
            residues,
            ["u", "v", "alpha[2]", "beta[1]", "alpha[2]^*", "beta[1]^*"]
        );
        assert!(q.ambiguities > 0);
    }

    #[test]
    fn quotient_ambiguity_example() {
        let g = arc(fixtures::g_f2());
        let u = g.vertex_by_name("u").unwrap();
        let rs = quotient_system(g.clone(), Ring::Integers, u).unwrap();
        let w = parse_word(&g, "alpha[2]^**alpha[2]*alpha[2]^*").unwrap();
        let amb = rs
            .enumerate_ambiguities()
            .into_iter()
            .find(|a| a.word() == w)
            .unwrap();
        let res = rs.resolve_ambiguity(&amb);
        assert!(res.is_resolved());
        assert_eq!(res.left.display(&g).to_string(), "alpha[2]^*");
    }

    #[test]
    fn quotient_precondition() {
        let g = arc(fixtures::g_two_weighted());
        let u = g.vertex_by_name("u").unwrap();
        assert!(matches!(
            quotient_witness(g, Ring::Integers, u),
            Err(ClassifyError::QuotientPrecondition(_))
        ));
    }

    #[test]
    fn leavitt_graphs() {
        let g = leavitt_algebra_graph(2, 1).unwrap();
        assert_eq!(g, fixtures::g_l23());
        let rose2 = leavitt_algebra_graph(1, 1).unwrap();
        assert_eq!(
            (rose2.vertex_count(), rose2.edge_count(), rose2.max_weight()),
            (1, 2, 1)
        );
        let laurent = leavitt_algebra_graph(1, 0).unwrap();
        assert_eq!(laurent.edge_count(), 1);
        assert!(leavitt_algebra_graph(0, 1).is_err());
        assert_eq!(
            check_leavitt_matrices(2, 1, Ring::Integers).unwrap(),
            (true, true)
        );
        assert_eq!(
            check_leavitt_matrices(3, 1, Ring::Integers).unwrap(),
            (true, true)
        );
    }

    #[test]
    fn classification_goldens() {
        let q = Ring::Rationals;
        let e = wlpa_classify(&arc(fixtures::g_e()), q);
        assert_eq!(e.simple, Verdict::Yes);
        assert_eq!(e.graded_simple, Verdict::Yes);
        let f = wlpa_classify(&arc(fixtures::g_f()), q);
        assert_eq!(f.graded_simple, Verdict::No);
        assert_eq!(f.simple, Verdict::No);
        let r = wlpa_classify(&arc(fixtures::g_r()), q);
        assert_eq!(r.reducible, Reducibility::Reducible);
        let i = wlpa_classify(&arc(fixtures::g_i()), q);
        assert_eq!(i.reducible, Reducibility::Irreducible);
        assert_eq!(
            i.witnesses.lr_normal.as_deref(),
            Some("alpha[2]*beta[1]*delta[2]^*")
        );
        let rose = wlpa_classify(&arc(fixtures::g_rose()), q);
        assert!(rose.lv_rose && rose.lv_graph);
        assert_eq!(rose.domain, Verdict::Yes);
        assert_eq!(rose.module_type, Some((3, 1)));
        let f2 = wlpa_classify(&arc(fixtures::g_f2()), q);
        let quotient = f2.witnesses.quotient.unwrap();
        assert_eq!(quotient.generator, "alpha[1]");
        assert_eq!(quotient.vertex, "u");
    }

    #[test]
    fn integer_coefficients_leave_simplicity_open() {
        let e = wlpa_classify(&arc(fixtures::g_e()), Ring::Integers);
        assert!(matches!(e.simple, Verdict::Undetermined(_)));
        let i = wlpa_classify(&arc(fixtures::g_i()), Ring::Integers);
        assert_eq!(i.simple, Verdict::No);
    }

    #[test]
    fn domain_witnesses() {
        let q = Ring::Rationals;
        let (d, w) = domain(&fixtures::g_e(), q);
        assert_eq!(d, Verdict::No);
        let (a, b) = w.unwrap();
        let rs = ReductionSystem::new(arc(fixtures::g_e()), q);
        let prod = rs.multiply(&Element::word(q, a), &Element::word(q, b));
        assert!(prod.is_zero());
        let rose2 = arc(leavitt_algebra_graph(1, 2).unwrap());
        let (d, w) = domain(&rose2, q);
        assert_eq!(d, Verdict::No);
        let (a, b) = w.unwrap();
        let rs = ReductionSystem::new(rose2.clone(), q);
        assert!(rs
            .multiply(&Element::word(q, a), &Element::word(q, b))
            .is_zero());
        assert_eq!(
            domain(&leavitt_algebra_graph(1, 0).unwrap(), q).0,
            Verdict::Yes
        );
        assert_eq!(
            domain(&GraphSpec::new().vertex("v").build().unwrap(), q).0,
            Verdict::Yes
        );
    }

    #[test]
    fn report_consistency_on_fixtures() {
        for g in fixtures::all() {
            let g = arc(g);
            let r = wlpa_classify(&g, Ring::Rationals);
            if r.simple == Verdict::Yes {
                assert_eq!(r.graded_simple, Verdict::Yes);
                assert_ne!(r.reducible, Reducibility::Irreducible);
            }
            if r.domain == Verdict::Yes {
                assert_eq!(g.vertex_count(), 1);
            }
            if r.lv_rose {
                assert!(r.lv_graph);
            }
        }
    }

    #[test]
    fn json_keys_are_stable() {
        let r = wlpa_classify(&arc(fixtures::g_rose()), Ring::Rationals);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            [
                "domain",
                "graded_simple",
                "lv_graph",
                "lv_rose",
                "module_type",
                "reducible",
                "simple",
                "witnesses"
            ]
        );
        assert_eq!(v["module_type"], serde_json::json!([3, 1]));
        assert_eq!(v["domain"], "yes");
    }
}
