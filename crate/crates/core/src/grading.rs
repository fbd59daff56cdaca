//! The ℤⁿ grading and the local valuation `ν = max length over the support`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;

use thiserror::Error;

use crate::element::Element;
use crate::graph::WeightedGraph;
use crate::rewrite::{Normalizer, ReductionSystem};
use crate::testkit::{Sampler, SamplerConfig};
use crate::word::{Letter, Word};

/// A degree in `ℤⁿ`, `n` the maximal edge weight of the graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;

    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        assert_eq!(self.rank(), rhs.rank(), "degrees of different rank");
        MultiDegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("{0} is not a generalised path")]
    NotAPath(String),
}

/// The grading rank of a graph: its maximal edge weight (0 without edges).
pub fn grading_rank(g: &WeightedGraph) -> usize {
    g.max_weight() as usize
}

fn letter_degree(x: Letter, d: &mut [i64]) {
    match x {
        Letter::Vertex(_) => {}
        Letter::Edge(_, i) => d[i as usize - 1] += 1,
        Letter::Star(_, i) => d[i as usize - 1] -= 1,
    }
}

/// `deg(α_i) = e_i`, `deg(α_i*) = −e_i`, `deg(v) = 0`.
pub fn degree(g: &WeightedGraph, w: &Word) -> Result<MultiDegree, GradingError> {
    if !g.is_generalized_path(w) {
        return Err(GradingError::NotAPath(g.display_word(w).to_string()));
    }
    let mut d = vec![0; grading_rank(g)];
    for x in w.letters() {
        letter_degree(*x, &mut d);
    }
    Ok(MultiDegree(d))
}

/// Splits a normal element into its homogeneous parts.
pub fn homogeneous_components(
    g: &WeightedGraph,
    a: &Element,
) -> Result<BTreeMap<MultiDegree, Element>, GradingError> {
    let mut out: BTreeMap<MultiDegree, Element> = BTreeMap::new();
    for (w, c) in a.terms() {
        let d = degree(g, w)?;
        out.entry(d)
            .or_insert_with(|| Element::zero(a.ring()))
            .add_term(w.clone(), c);
    }
    Ok(out)
}

/// Words of `NF(a)`.
pub fn support(rs: &ReductionSystem, a: &Element) -> BTreeSet<Word> {
    rs.normal_form(a).words().cloned().collect()
}

/// `ℕ₀ ∪ {−∞}`, ordered with `−∞` least.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ValuationValue {
    NegInf,
    Finite(usize),
}

impl Add for ValuationValue {
    type Output = ValuationValue;

    fn add(self, rhs: ValuationValue) -> ValuationValue {
        match (self, rhs) {
            (ValuationValue::Finite(a), ValuationValue::Finite(b)) => ValuationValue::Finite(a + b),
            _ => ValuationValue::NegInf,
        }
    }
}

impl fmt::Display for ValuationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationValue::NegInf => f.write_str("-inf"),
            ValuationValue::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// `ν` of an element already in normal form.
pub fn valuation_of_normal(a: &Element) -> ValuationValue {
    a.words()
        .map(|w| ValuationValue::Finite(w.path_len()))
        .max()
        .unwrap_or(ValuationValue::NegInf)
}

pub fn local_valuation(rs: &ReductionSystem, a: &Element) -> ValuationValue {
    valuation_of_normal(&rs.normal_form(a))
}

/// The four conditions a local valuation must meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    /// `ν(a) = −∞` exactly when `a = 0`
    Zero,
    /// `ν(a) = 0` exactly when `a ≠ 0` is supported on vertices
    Vertices,
    /// `ν(a + b) ≤ max(ν(a), ν(b))`
    Ultrametric,
    /// `ν(ab) = ν(a) + ν(b)` for `a ∈ Lv`, `b ∈ vL`
    Multiplicative,
}

/// A pair violating one of the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationCounterexample {
    pub axiom: Axiom,
    pub a: Element,
    pub b: Element,
    pub found: ValuationValue,
    pub expected: ValuationValue,
}

impl ValuationCounterexample {
    pub fn describe(&self, g: &WeightedGraph) -> String {
        let a = self.a.display(g);
        let b = self.b.display(g);
        match self.axiom {
            Axiom::Multiplicative => format!(
                "multiplicativity: a = {a}, b = {b}: ν(ab) = {} ≠ {}",
                self.found, self.expected
            ),
            Axiom::Ultrametric => format!(
                "ultrametric: a = {a}, b = {b}: ν(a+b) = {} > {}",
                self.found, self.expected
            ),
            Axiom::Zero => format!("zero: a = {a}: ν(a) = {}", self.found),
            Axiom::Vertices => format!("vertices: a = {a}: ν(a) = {}", self.found),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationReport {
    pub pairs_checked: usize,
    pub counterexample: Option<ValuationCounterexample>,
}

impl ValuationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Probe pairs that break multiplicativity on graphs without the LV property:
/// `(β_1*, β_1)` for unweighted `β`, and `(α_w*, α_w)` when `α` is the only
/// edge of maximal weight `w` at its source.
pub fn obstruction_probes(g: &WeightedGraph) -> Vec<(Word, Word)> {
    let mut out = Vec::new();
    for e in g.edges() {
        if g.weight(e) == 1 {
            out.push((
                Word::letter(Letter::Star(e, 1)),
                Word::letter(Letter::Edge(e, 1)),
            ));
        }
    }
    for v in g.vertices() {
        let Ok(w) = g.vertex_weight(v) else { continue };
        let top: Vec<_> = g
            .out_edges(v)
            .iter()
            .filter(|e| g.weight(**e) == w)
            .collect();
        if let [e] = top.as_slice() {
            if w > 1 {
                out.push((
                    Word::letter(Letter::Star(**e, w)),
                    Word::letter(Letter::Edge(**e, w)),
                ));
            }
        }
    }
    out
}

fn check_pair(n: &mut Normalizer<'_>, a: &Element, b: &Element) -> Option<ValuationCounterexample> {
    let a = n.normal_form(a);
    let b = n.normal_form(b);
    let va = valuation_of_normal(&a);
    let vb = valuation_of_normal(&b);
    for (x, vx) in [(&a, va), (&b, vb)] {
        if (vx == ValuationValue::NegInf) != x.is_zero() {
            return Some(ValuationCounterexample {
                axiom: Axiom::Zero,
                a: x.clone(),
                b: x.clone(),
                found: vx,
                expected: vx,
            });
        }
        let in_vertices = !x.is_zero() && x.words().all(|w| w.path_len() == 0);
        if (vx == ValuationValue::Finite(0)) != in_vertices {
            return Some(ValuationCounterexample {
                axiom: Axiom::Vertices,
                a: x.clone(),
                b: x.clone(),
                found: vx,
                expected: vx,
            });
        }
    }
    let sum = valuation_of_normal(&(&a + &b));
    if sum > va.max(vb) {
        return Some(ValuationCounterexample {
            axiom: Axiom::Ultrametric,
            a: a.clone(),
            b: b.clone(),
            found: sum,
            expected: va.max(vb),
        });
    }
    let prod = valuation_of_normal(&n.multiply(&a, &b));
    if prod != va + vb {
        return Some(ValuationCounterexample {
            axiom: Axiom::Multiplicative,
            a,
            b,
            found: prod,
            expected: va + vb,
        });
    }
    None
}

/// Runs the deterministic obstruction probes, then `sample_count` random
/// pairs `a ∈ L·v`, `b ∈ v·L` at a random shared vertex `v`. Stops at the
/// first violation.
pub fn check_valuation_axioms(
    rs: &ReductionSystem,
    sample_count: usize,
    seed: u64,
) -> ValuationReport {
    let g = rs.graph();
    let ring = rs.ring();
    let mut n = Normalizer::new(rs);
    let mut checked = 0;
    for (a, b) in obstruction_probes(g) {
        checked += 1;
        let a = Element::word(ring, a);
        let b = Element::word(ring, b);
        if let Some(cx) = check_pair(&mut n, &a, &b) {
            return ValuationReport {
                pairs_checked: checked,
                counterexample: Some(cx),
            };
        }
    }
    let mut sampler = Sampler::new(
        g,
        SamplerConfig {
            seed,
            max_word_len: 3,
            max_terms: 3,
            coefficient_bound: 3,
        },
    );
    let vertices: Vec<_> = g.vertices().collect();
    for _ in 0..sample_count {
        if vertices.is_empty() {
            break;
        }
        let v = vertices[sampler.below(vertices.len())];
        let a = sampler.element_to(ring, v);
        let b = sampler.element_from(ring, v);
        checked += 1;
        if let Some(cx) = check_pair(&mut n, &a, &b) {
            return ValuationReport {
                pairs_checked: checked,
                counterexample: Some(cx),
            };
        }
    }
    ValuationReport {
        pairs_checked: checked,
        counterexample: None,
    }
}
