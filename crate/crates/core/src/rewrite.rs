//! The confluent reduction system of a weighted Leavitt path algebra.
//!
//! Every rule has a left-hand side of one or two letters, so a system is a
//! lookup table from letters and letter pairs to integer combinations of
//! words. The base system has five families:
//!
//! | family            | left side               | right side                              |
//! |-------------------|-------------------------|-----------------------------------------|
//! | vertex-product    | `v w`                   | `δ_{vw} v`                              |
//! | vertex-absorption | `v x`, `x v`            | `x` when the endpoints match, else `0`  |
//! | non-path          | `x y`, `r(x) ≠ s(y)`    | `0`                                     |
//! | special-pair      | `α^v_i (α^v_j)*`        | `δ_ij v − Σ_{α ≠ α^v, s(α)=v} α_i α_j*` |
//! | star-edge         | `α_1* β_1`, `s(α)=s(β)` | `δ_αβ r(α) − Σ_{i ≥ 2} α_i* β_i`        |
//!
//! Terms whose index exceeds the weight of their edge are dropped when the
//! rule is built. The kill and completion families only appear in the quotient systems
//! built by [`crate::classify::quotient_witness`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;
use std::sync::Arc;

use rand::RngCore;
use thiserror::Error;

use crate::element::Element;
use crate::graph::WeightedGraph;
use crate::ring::Ring;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleFamily {
    /// `vw = δ_{vw} v`
    VertexProduct,
    /// a vertex next to an edge or star letter
    VertexAbsorption,
    /// two letters that do not form a path
    NonPath,
    /// type I words
    SpecialPair,
    /// type II words
    StarEdge,
    /// `α_1 = 0`, `α_1* = 0`
    KillGenerator,
    /// `β_1 β_1* = v − Σ γ_1 γ_1*`
    UnweightedCompletion,
    /// `α_2* α_2 = r(α) − Σ_{i≥3} α_i* α_i`
    WeightedCompletion,
}

impl RuleFamily {
    pub fn label(self) -> &'static str {
        match self {
            RuleFamily::VertexProduct => "vertex-product",
            RuleFamily::VertexAbsorption => "vertex-absorption",
            RuleFamily::NonPath => "non-path",
            RuleFamily::SpecialPair => "special-pair",
            RuleFamily::StarEdge => "star-edge",
            RuleFamily::KillGenerator => "kill",
            RuleFamily::UnweightedCompletion => "unweighted-completion",
            RuleFamily::WeightedCompletion => "weighted-completion",
        }
    }
}

impl fmt::Display for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// `lhs → Σ k·w`. Right-hand coefficients are always small integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionRule {
    pub lhs: Word,
    pub rhs: Vec<(Word, i64)>,
    pub family: RuleFamily,
}

impl ReductionRule {
    pub fn rhs_element(&self, ring: Ring) -> Element {
        Element::from_terms(
            ring,
            self.rhs.iter().map(|(w, k)| (w.clone(), ring.from_int(*k))),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("two rules share the left-hand side {0}")]
    DuplicateLhs(String),
    #[error("rule left-hand sides must have one or two letters")]
    UnsupportedLhs,
}

/// A reducible occurrence: rule `rule` applies at letter position `pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Redex {
    pub pos: usize,
    pub rule: usize,
}

/// How [`ReductionSystem::reduce_once`] picks its reduction.
pub enum Policy<'a> {
    /// First reducible term in canonical order, leftmost redex, lowest rule
    /// family on ties.
    Deterministic,
    /// Uniform over all (term, redex) pairs.
    Random(&'a mut dyn RngCore),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// An overlap `W_σ = AB, W_τ = BC` or an inclusion `W_σ = B, W_τ = ABC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub sigma: usize,
    pub tau: usize,
    pub a: Vec<Letter>,
    pub b: Vec<Letter>,
    pub c: Vec<Letter>,
}

impl Ambiguity {
    /// The word on which both rules act.
    pub fn word(&self) -> Word {
        match self.kind {
            AmbiguityKind::Overlap | AmbiguityKind::Inclusion => {
                Word::splice(&self.a, &self.b, &self.c).expect("ambiguity word is nonempty")
            }
        }
    }
}

/// Both sides of an ambiguity after full reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub left: Element,
    pub right: Element,
}

impl Resolution {
    pub fn is_resolved(&self) -> bool {
        self.left == self.right
    }
}

#[derive(Clone, Debug)]
pub struct ReductionSystem {
    graph: Arc<WeightedGraph>,
    ring: Ring,
    rules: Vec<ReductionRule>,
    pairs: HashMap<(Letter, Letter), usize>,
    singles: HashMap<Letter, usize>,
    by_first: HashMap<Letter, Vec<usize>>,
}

impl ReductionSystem {
    /// Instantiates the five base families with the graph's special edges.
    pub fn new(graph: Arc<WeightedGraph>, ring: Ring) -> Self {
        let rules = base_rules(&graph);
        Self::from_rules(graph, ring, rules).expect("base rule families have disjoint left sides")
    }

    /// The base system extended by further rules.
    pub fn with_extra_rules(
        graph: Arc<WeightedGraph>,
        ring: Ring,
        extra: Vec<ReductionRule>,
    ) -> Result<Self, RewriteError> {
        let mut rules = base_rules(&graph);
        rules.extend(extra);
        Self::from_rules(graph, ring, rules)
    }

    fn from_rules(
        graph: Arc<WeightedGraph>,
        ring: Ring,
        rules: Vec<ReductionRule>,
    ) -> Result<Self, RewriteError> {
        let mut pairs = HashMap::new();
        let mut singles = HashMap::new();
        let mut by_first: HashMap<Letter, Vec<usize>> = HashMap::new();
        for (k, rule) in rules.iter().enumerate() {
            let clash = match rule.lhs.letters() {
                [x] => singles.insert(*x, k).is_some(),
                [x, y] => {
                    by_first.entry(*x).or_default().push(k);
                    pairs.insert((*x, *y), k).is_some()
                }
                _ => return Err(RewriteError::UnsupportedLhs),
            };
            if clash {
                return Err(RewriteError::DuplicateLhs(
                    graph.display_word(&rule.lhs).to_string(),
                ));
            }
        }
        Ok(Self {
            graph,
            ring,
            rules,
            pairs,
            singles,
            by_first,
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<WeightedGraph> {
        &self.graph
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rules(&self) -> &[ReductionRule] {
        &self.rules
    }

    pub fn rule(&self, k: usize) -> &ReductionRule {
        &self.rules[k]
    }

    pub fn rule_for_pair(&self, x: Letter, y: Letter) -> Option<&ReductionRule> {
        self.pairs.get(&(x, y)).map(|k| &self.rules[*k])
    }

    pub fn rule_for_letter(&self, x: Letter) -> Option<&ReductionRule> {
        self.singles.get(&x).map(|k| &self.rules[*k])
    }

    pub fn count_family(&self, family: RuleFamily) -> usize {
        self.rules.iter().filter(|r| r.family == family).count()
    }

    /// All redexes of a word, by position.
    pub fn redexes(&self, w: &[Letter]) -> Vec<Redex> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            if let Some(k) = self.singles.get(&w[pos]) {
                out.push(Redex { pos, rule: *k });
            }
            if pos + 1 < w.len() {
                if let Some(k) = self.pairs.get(&(w[pos], w[pos + 1])) {
                    out.push(Redex { pos, rule: *k });
                }
            }
        }
        out
    }

    /// Leftmost redex; on a tie the lower rule family wins.
    pub fn leftmost_redex(&self, w: &[Letter]) -> Option<Redex> {
        for pos in 0..w.len() {
            let single = self.singles.get(&w[pos]).copied();
            let pair = if pos + 1 < w.len() {
                self.pairs.get(&(w[pos], w[pos + 1])).copied()
            } else {
                None
            };
            let pick = match (single, pair) {
                (Some(a), Some(b)) => {
                    if self.rules[b].family <= self.rules[a].family {
                        Some(b)
                    } else {
                        Some(a)
                    }
                }
                (a, b) => a.or(b),
            };
            if let Some(rule) = pick {
                return Some(Redex { pos, rule });
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.leftmost_redex(w.letters()).is_none()
    }

    /// The combination `A f_σ B` replacing `w = A W_σ B`.
    pub fn rewrite(&self, w: &Word, redex: Redex) -> Vec<(Word, i64)> {
        let rule = &self.rules[redex.rule];
        let letters = w.letters();
        let prefix = &letters[..redex.pos];
        let suffix = &letters[redex.pos + rule.lhs.len()..];
        rule.rhs
            .iter()
            .map(|(t, k)| {
                let next = Word::splice(prefix, t.letters(), suffix)
                    .expect("rule right sides are nonempty words");
                (next, *k)
            })
            .collect()
    }

    fn apply(&self, e: &mut Element, w: &Word, redex: Redex) {
        let c = e.take_term(w).expect("reduced word is a term");
        for (next, k) in self.rewrite(w, redex) {
            let kc = self.ring.mul(&c, &self.ring.from_int(k));
            e.add_term(next, &kc);
        }
    }

    /// Applies one reduction; the flag is false (and the element unchanged)
    /// when the element is irreducible.
    pub fn reduce_once(&self, e: &Element, policy: Policy<'_>) -> (Element, bool) {
        let mut out = e.clone();
        let applied = self.reduce_step(&mut out, policy);
        (out, applied)
    }

    /// In-place form of [`reduce_once`](Self::reduce_once).
    pub fn reduce_step(&self, e: &mut Element, policy: Policy<'_>) -> bool {
        match policy {
            Policy::Deterministic => {
                let found = e
                    .words()
                    .find_map(|w| self.leftmost_redex(w.letters()).map(|r| (w.clone(), r)));
                match found {
                    Some((w, r)) => {
                        self.apply(e, &w, r);
                        true
                    }
                    None => false,
                }
            }
            Policy::Random(rng) => {
                let all: Vec<(Word, Redex)> = e
                    .words()
                    .flat_map(|w| {
                        self.redexes(w.letters())
                            .into_iter()
                            .map(move |r| (w.clone(), r))
                    })
                    .collect();
                if all.is_empty() {
                    return false;
                }
                let k = (rng.next_u64() % all.len() as u64) as usize;
                let (w, r) = &all[k];
                self.apply(e, w, *r);
                true
            }
        }
    }

    /// The unique irreducible representative of `e`.
    pub fn normal_form(&self, e: &Element) -> Element {
        Normalizer::new(self).normal_form(e)
    }

    pub fn normal_form_word(&self, w: &Word) -> Element {
        Normalizer::new(self).normal_form_word(w).as_ref().clone()
    }

    /// `NF(NF(a)·NF(b))`.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut n = Normalizer::new(self);
        let a = n.normal_form(a);
        let b = n.normal_form(b);
        n.normal_form(&a.concat(&b))
    }

    /// The involution: letterwise dual, then renormalised.
    pub fn star(&self, a: &Element) -> Element {
        self.normal_form(&a.dual())
    }

    /// `(l, m)`: word length and the number of adjacent type I/II pairs.
    pub fn order_measure(&self, w: &Word) -> (usize, usize) {
        let m = w
            .letters()
            .windows(2)
            .filter(|p| {
                self.pairs.get(&(p[0], p[1])).is_some_and(|k| {
                    matches!(
                        self.rules[*k].family,
                        RuleFamily::SpecialPair | RuleFamily::StarEdge
                    )
                })
            })
            .count();
        (w.len(), m)
    }

    /// All overlap and inclusion ambiguities, overlaps first, each group in
    /// rule order.
    pub fn enumerate_ambiguities(&self) -> Vec<Ambiguity> {
        let mut out = Vec::new();
        for (sigma, rule) in self.rules.iter().enumerate() {
            if let [x, y] = rule.lhs.letters() {
                for &tau in self.by_first.get(y).into_iter().flatten() {
                    let z = self.rules[tau].lhs.letters()[1];
                    out.push(Ambiguity {
                        kind: AmbiguityKind::Overlap,
                        sigma,
                        tau,
                        a: vec![*x],
                        b: vec![*y],
                        c: vec![z],
                    });
                }
            }
        }
        for (sigma, rule) in self.rules.iter().enumerate() {
            let [x] = rule.lhs.letters() else { continue };
            for (tau, outer) in self.rules.iter().enumerate() {
                if let [p, q] = outer.lhs.letters() {
                    if p == x {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Inclusion,
                            sigma,
                            tau,
                            a: vec![],
                            b: vec![*x],
                            c: vec![*q],
                        });
                    }
                    if q == x {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Inclusion,
                            sigma,
                            tau,
                            a: vec![*p],
                            b: vec![*x],
                            c: vec![],
                        });
                    }
                }
            }
        }
        out
    }

    fn sided(&self, prefix: &[Letter], rule: usize, suffix: &[Letter]) -> Element {
        Element::from_terms(
            self.ring,
            self.rules[rule].rhs.iter().map(|(t, k)| {
                let w = Word::splice(prefix, t.letters(), suffix).expect("nonempty");
                (w, self.ring.from_int(*k))
            }),
        )
    }

    /// Reduces both one-step images of the ambiguous word to normal form.
    pub fn resolve_ambiguity(&self, amb: &Ambiguity) -> Resolution {
        let (left, right) = match amb.kind {
            AmbiguityKind::Overlap => (
                self.sided(&[], amb.sigma, &amb.c),
                self.sided(&amb.a, amb.tau, &[]),
            ),
            AmbiguityKind::Inclusion => (
                self.sided(&amb.a, amb.sigma, &amb.c),
                self.sided(&[], amb.tau, &[]),
            ),
        };
        let mut n = Normalizer::new(self);
        Resolution {
            left: n.normal_form(&left),
            right: n.normal_form(&right),
        }
    }

    pub fn check_ambiguity_resolvable(&self, amb: &Ambiguity) -> bool {
        self.resolve_ambiguity(amb).is_resolved()
    }

    /// Irreducible generalised paths of path length ≤ `max_len`, in
    /// canonical order. For the base system these are the normal paths.
    pub fn enumerate_normal_words(&self, max_len: usize) -> Vec<Word> {
        let g = &self.graph;
        let mut out: Vec<Word> = g
            .vertices()
            .map(Word::vertex)
            .filter(|w| self.is_irreducible(w))
            .collect();
        let letters: Vec<Letter> = g
            .letters()
            .into_iter()
            .filter(|x| !x.is_vertex() && !self.singles.contains_key(x))
            .collect();
        let mut level: Vec<Word> = if max_len >= 1 {
            letters.iter().map(|x| Word::letter(*x)).collect()
        } else {
            Vec::new()
        };
        for len in 1..=max_len {
            level.sort();
            out.extend(level.iter().cloned());
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for w in &level {
                let last = w.last();
                for x in &letters {
                    if g.letter_range(last) == g.letter_source(*x)
                        && !self.pairs.contains_key(&(last, *x))
                    {
                        let mut ls = w.letters().to_vec();
                        ls.push(*x);
                        next.push(Word::new(ls));
                    }
                }
            }
            level = next;
        }
        out
    }

    /// Whether every term of `e` is an irreducible generalised path.
    pub fn is_normal(&self, e: &Element) -> bool {
        e.words()
            .all(|w| self.graph.is_generalized_path(w) && self.is_irreducible(w))
    }
}

/// Normal-form evaluator with a word-level cache. Reuse one across many
/// calls on the same system to share work.
pub struct Normalizer<'a> {
    rs: &'a ReductionSystem,
    memo: HashMap<Word, Rc<Element>>,
}

impl<'a> Normalizer<'a> {
    pub fn new(rs: &'a ReductionSystem) -> Self {
        Self {
            rs,
            memo: HashMap::new(),
        }
    }

    pub fn normal_form(&mut self, e: &Element) -> Element {
        let mut out = Element::zero(self.rs.ring);
        for (w, c) in e.terms() {
            let nf = self.normal_form_word(w);
            out.add_scaled(&nf, c);
        }
        out
    }

    pub fn normal_form_word(&mut self, w: &Word) -> Rc<Element> {
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        let rs = self.rs;
        let out = match rs.leftmost_redex(w.letters()) {
            None => Element::word(rs.ring, w.clone()),
            Some(redex) => {
                let mut acc = Element::zero(rs.ring);
                for (next, k) in rs.rewrite(w, redex) {
                    let sub = self.normal_form_word(&next);
                    acc.add_scaled(&sub, &rs.ring.from_int(k));
                }
                acc
            }
        };
        let out = Rc::new(out);
        self.memo.insert(w.clone(), out.clone());
        out
    }

    pub fn multiply(&mut self, a: &Element, b: &Element) -> Element {
        let a = self.normal_form(a);
        let b = self.normal_form(b);
        self.normal_form(&a.concat(&b))
    }
}

fn base_rules(g: &WeightedGraph) -> Vec<ReductionRule> {
    let mut rules = Vec::new();
    let vertices: Vec<Letter> = g.vertices().map(Letter::Vertex).collect();
    let edge_letters: Vec<Letter> = g.letters().into_iter().filter(|x| !x.is_vertex()).collect();
    let word = |ls: Vec<Letter>| Word::new(ls);

    // vertex-product
    for &v in &vertices {
        for &w in &vertices {
            let rhs = if v == w {
                vec![(Word::letter(v), 1)]
            } else {
                vec![]
            };
            rules.push(ReductionRule {
                lhs: word(vec![v, w]),
                rhs,
                family: RuleFamily::VertexProduct,
            });
        }
    }
    // vertex-absorption
    for &v in &vertices {
        let Letter::Vertex(vi) = v else {
            unreachable!()
        };
        for &x in &edge_letters {
            let left = if g.letter_source(x) == vi {
                vec![(Word::letter(x), 1)]
            } else {
                vec![]
            };
            rules.push(ReductionRule {
                lhs: word(vec![v, x]),
                rhs: left,
                family: RuleFamily::VertexAbsorption,
            });
            let right = if g.letter_range(x) == vi {
                vec![(Word::letter(x), 1)]
            } else {
                vec![]
            };
            rules.push(ReductionRule {
                lhs: word(vec![x, v]),
                rhs: right,
                family: RuleFamily::VertexAbsorption,
            });
        }
    }
    // non-path
    for &x in &edge_letters {
        for &y in &edge_letters {
            if g.letter_range(x) != g.letter_source(y) {
                rules.push(ReductionRule {
                    lhs: word(vec![x, y]),
                    rhs: vec![],
                    family: RuleFamily::NonPath,
                });
            }
        }
    }
    // special-pair
    for (v, special) in g.special_edges() {
        let wv = g.weight(special);
        for i in 1..=wv {
            for j in 1..=wv {
                let mut rhs = Vec::new();
                if i == j {
                    rhs.push((Word::vertex(v), 1));
                }
                for &alpha in g.out_edges(v) {
                    if alpha != special && i <= g.weight(alpha) && j <= g.weight(alpha) {
                        rhs.push((
                            word(vec![Letter::Edge(alpha, i), Letter::Star(alpha, j)]),
                            -1,
                        ));
                    }
                }
                rules.push(ReductionRule {
                    lhs: word(vec![Letter::Edge(special, i), Letter::Star(special, j)]),
                    rhs,
                    family: RuleFamily::SpecialPair,
                });
            }
        }
    }
    // star-edge
    for v in g.vertices() {
        for &alpha in g.out_edges(v) {
            for &beta in g.out_edges(v) {
                let mut rhs = Vec::new();
                if alpha == beta {
                    rhs.push((Word::vertex(g.edge(alpha).range), 1));
                }
                let top = g.weight(alpha).min(g.weight(beta));
                for i in 2..=top {
                    rhs.push((
                        word(vec![Letter::Star(alpha, i), Letter::Edge(beta, i)]),
                        -1,
                    ));
                }
                rules.push(ReductionRule {
                    lhs: word(vec![Letter::Star(alpha, 1), Letter::Edge(beta, 1)]),
                    rhs,
                    family: RuleFamily::StarEdge,
                });
            }
        }
    }
    rules
}

/// Counts ambiguities by (σ family, τ family); used for reporting.
pub fn ambiguity_table(
    rs: &ReductionSystem,
    ambs: &[Ambiguity],
) -> Vec<((RuleFamily, RuleFamily, AmbiguityKind), usize)> {
    let mut counts: HashMap<(RuleFamily, RuleFamily, AmbiguityKind), usize> = HashMap::new();
    for a in ambs {
        *counts
            .entry((rs.rule(a.sigma).family, rs.rule(a.tau).family, a.kind))
            .or_default() += 1;
    }
    let mut out: Vec<_> = counts.into_iter().collect();
    out.sort_by_key(|((a, b, k), _)| (*a, *b, *k == AmbiguityKind::Inclusion));
    out
}

/// The distinct words of an element's normal form; a convenience for tests
/// and reports.
pub fn support_words(e: &Element) -> BTreeSet<Word> {
    e.words().cloned().collect()
}
