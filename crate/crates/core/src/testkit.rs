//! Seeded generators and independent oracles.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`, and every
//! choice is `next_u64() % n`, so a failure replays from its seed alone.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::classify::{associated_unweighted_graph, is_reducible, map_element, Reducibility};
use crate::element::Element;
use crate::grading::{degree, valuation_of_normal, ValuationValue};
use crate::graph::{EdgeIdx, VertexIdx, WeightedGraph};
use crate::rewrite::{Normalizer, ReductionSystem};
use crate::ring::{Coeff, Ring};
use crate::word::{Letter, Word};

/// Largest length accepted by [`brute_force_normal_words`].
pub const MAX_BRUTE_FORCE_LEN: usize = 5;

/// Longest word drawn by the confluence suite.
pub const CONFLUENCE_MAX_LEN: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("brute-force enumeration is limited to length {MAX_BRUTE_FORCE_LEN} (asked for {0})")]
    TooLong(usize),
    #[error("graph is not reducible")]
    NotReducible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub max_word_len: usize,
    pub max_terms: usize,
    pub coefficient_bound: i64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_word_len: 3,
            max_terms: 3,
            coefficient_bound: 3,
        }
    }
}

/// Reproducible source of letters, paths and elements over one graph.
pub struct Sampler<'g> {
    graph: &'g WeightedGraph,
    cfg: SamplerConfig,
    rng: ChaCha8Rng,
    letters: Vec<Letter>,
    from: Vec<Vec<Letter>>,
}

impl<'g> Sampler<'g> {
    pub fn new(graph: &'g WeightedGraph, cfg: SamplerConfig) -> Self {
        let letters: Vec<Letter> = graph.letters();
        let mut from = vec![Vec::new(); graph.vertex_count()];
        for &x in letters.iter().filter(|x| !x.is_vertex()) {
            from[graph.letter_source(x).index()].push(x);
        }
        Self {
            graph,
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            letters,
            from,
        }
    }

    pub fn config(&self) -> SamplerConfig {
        self.cfg
    }

    /// Uniform in `0..n`; `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        (self.rng.next_u64() % n as u64) as usize
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Nonzero integer in `[-bound, bound]`.
    pub fn coefficient(&mut self) -> i64 {
        let b = self.cfg.coefficient_bound.max(1);
        let k = self.below(2 * b as usize) as i64;
        if k < b {
            k - b
        } else {
            k - b + 1
        }
    }

    pub fn vertex(&mut self) -> VertexIdx {
        VertexIdx(self.below(self.graph.vertex_count()) as u32)
    }

    /// Any letter of the alphabet.
    pub fn letter(&mut self) -> Letter {
        let k = self.below(self.letters.len());
        self.letters[k]
    }

    /// A uniform word of `len ≥ 1` letters (not necessarily a path).
    pub fn word(&mut self, len: usize) -> Word {
        Word::new((0..len.max(1)).map(|_| self.letter()).collect())
    }

    /// A random walk of `len` edge/star letters from `v`, stopping early at
    /// a vertex with no letters; the vertex word when it has length 0.
    pub fn path_from(&mut self, v: VertexIdx, len: usize) -> Word {
        let mut letters = Vec::new();
        let mut at = v;
        for _ in 0..len {
            let opts = &self.from[at.index()];
            if opts.is_empty() {
                break;
            }
            let x = opts[(self.rng.next_u64() % opts.len() as u64) as usize];
            letters.push(x);
            at = self.graph.letter_range(x);
        }
        if letters.is_empty() {
            Word::vertex(v)
        } else {
            Word::new(letters)
        }
    }

    /// A generalised path ending at `v`.
    pub fn path_to(&mut self, v: VertexIdx, len: usize) -> Word {
        self.path_from(v, len).dual()
    }

    /// A generalised path of length `0..=max_word_len` from a random vertex.
    pub fn path(&mut self) -> Word {
        let v = self.vertex();
        let len = self.below(self.cfg.max_word_len + 1);
        self.path_from(v, len)
    }

    fn combination(&mut self, ring: Ring, mut draw: impl FnMut(&mut Self) -> Word) -> Element {
        if self.cfg.max_terms == 0 {
            return Element::zero(ring);
        }
        let terms = 1 + self.below(self.cfg.max_terms);
        let mut e = Element::zero(ring);
        for _ in 0..terms {
            let w = draw(self);
            let c = ring.from_int(self.coefficient());
            e.add_term(w, &c);
        }
        e
    }

    /// A combination of up to `max_terms` random generalised paths.
    pub fn element(&mut self, ring: Ring) -> Element {
        self.combination(ring, |s| s.path())
    }

    /// An element of `v·L`.
    pub fn element_from(&mut self, ring: Ring, v: VertexIdx) -> Element {
        self.combination(ring, |s| {
            let len = s.below(s.cfg.max_word_len + 1);
            s.path_from(v, len)
        })
    }

    /// An element of `L·v`.
    pub fn element_to(&mut self, ring: Ring, v: VertexIdx) -> Element {
        self.combination(ring, |s| {
            let len = s.below(s.cfg.max_word_len + 1);
            s.path_to(v, len)
        })
    }

    /// A word for confluence testing: usually a walk, sometimes with a
    /// vertex spliced in, otherwise uniform letters.
    pub fn confluence_word(&mut self, max_len: usize) -> Word {
        let len = 1 + self.below(max_len);
        match self.below(4) {
            0 => self.word(len),
            1 => {
                let v = self.vertex();
                let p = self.path_from(v, len.saturating_sub(1));
                let mut ls = p.letters().to_vec();
                let at = self.below(ls.len() + 1);
                let x = Letter::Vertex(self.vertex());
                ls.insert(at, x);
                ls.truncate(max_len);
                Word::new(ls)
            }
            _ => {
                let v = self.vertex();
                self.path_from(v, len)
            }
        }
    }
}

/// `cfg`-driven element of `R⟨X⟩` whose words are generalised paths.
pub fn random_element(g: &WeightedGraph, cfg: SamplerConfig, ring: Ring) -> Element {
    Sampler::new(g, cfg).element(ring)
}

/// Applies uniformly chosen reductions (reducible term, then redex in it)
/// until the element is irreducible.
pub fn random_reduce(rs: &ReductionSystem, e: &Element, seed: u64) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = rs.ring();
    let mut cur = e.clone();
    let mut pending: Vec<Word> = cur
        .words()
        .filter(|w| !rs.is_irreducible(w))
        .cloned()
        .collect();
    while !pending.is_empty() {
        let k = (rng.next_u64() % pending.len() as u64) as usize;
        let w = pending.swap_remove(k);
        if !cur.contains(&w) {
            continue;
        }
        let redexes = rs.redexes(w.letters());
        if redexes.is_empty() {
            continue;
        }
        let r = redexes[(rng.next_u64() % redexes.len() as u64) as usize];
        let c = cur.coefficient(&w);
        cur.add_term(w.clone(), &ring.neg(&c));
        for (next, m) in rs.rewrite(&w, r) {
            cur.add_term(next.clone(), &ring.mul(&c, &ring.from_int(m)));
            if cur.contains(&next) && !rs.is_irreducible(&next) {
                pending.push(next);
            }
        }
    }
    cur
}

fn special_edge(g: &WeightedGraph, v: VertexIdx) -> Option<EdgeIdx> {
    let w = g.vertex_weight(v).ok()?;
    g.out_edges(v).iter().copied().find(|e| g.weight(*e) == w)
}

/// `α^v_i (α^v_j)*`, read straight from the definition.
fn is_type_one(g: &WeightedGraph, x: Letter, y: Letter) -> bool {
    match (x, y) {
        (Letter::Edge(a, _), Letter::Star(b, _)) => {
            a == b && special_edge(g, g.edge(a).source) == Some(a)
        }
        _ => false,
    }
}

/// `α_1* β_1` with `s(α) = s(β)`.
fn is_type_two(g: &WeightedGraph, x: Letter, y: Letter) -> bool {
    match (x, y) {
        (Letter::Star(a, 1), Letter::Edge(b, 1)) => g.edge(a).source == g.edge(b).source,
        _ => false,
    }
}

/// Normal generalised paths of length ≤ `max_len`, found by scanning every
/// word over the alphabet.
pub fn brute_force_normal_words(
    g: &WeightedGraph,
    max_len: usize,
) -> Result<Vec<Word>, OracleError> {
    if max_len > MAX_BRUTE_FORCE_LEN {
        return Err(OracleError::TooLong(max_len));
    }
    let mut out: Vec<Word> = g.vertices().map(Word::vertex).collect();
    let alphabet: Vec<Letter> = g.letters().into_iter().filter(|x| !x.is_vertex()).collect();
    let n = alphabet.len();
    for len in 1..=max_len {
        if n == 0 {
            break;
        }
        let mut digits = vec![0usize; len];
        'all: loop {
            let letters: Vec<Letter> = digits.iter().map(|d| alphabet[*d]).collect();
            let w = Word::new(letters);
            let normal = g.is_generalized_path(&w)
                && w.letters()
                    .windows(2)
                    .all(|p| !is_type_one(g, p[0], p[1]) && !is_type_two(g, p[0], p[1]));
            if normal {
                out.push(w);
            }
            for k in (0..len).rev() {
                digits[k] += 1;
                if digits[k] < n {
                    continue 'all;
                }
                digits[k] = 0;
            }
            break;
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divergence {
    pub trial: usize,
    pub word: Word,
    pub normal_form: Element,
    pub random: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub trials: usize,
    pub divergence: Option<Divergence>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

/// For `trials` random words of length ≤ 8, a random reduction sequence
/// must end at the normal form.
pub fn run_confluence_suite(rs: &ReductionSystem, trials: usize, seed: u64) -> ConfluenceReport {
    let g = rs.graph();
    let ring = rs.ring();
    let mut sampler = Sampler::new(
        g,
        SamplerConfig {
            seed,
            ..SamplerConfig::default()
        },
    );
    let mut n = Normalizer::new(rs);
    for trial in 0..trials {
        let word = sampler.confluence_word(CONFLUENCE_MAX_LEN);
        let e = Element::word(ring, word.clone());
        let nf = n.normal_form(&e);
        let random = random_reduce(rs, &e, sampler.rng().next_u64());
        if random != nf {
            return ConfluenceReport {
                trials: trial + 1,
                divergence: Some(Divergence {
                    trial,
                    word,
                    normal_form: nf,
                    random,
                }),
            };
        }
    }
    ConfluenceReport {
        trials,
        divergence: None,
    }
}

/// Outcome of a randomized property probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub checked: usize,
    pub failure: Option<String>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn vertex_element(ring: Ring, v: VertexIdx) -> Element {
    Element::word(ring, Word::vertex(v))
}

fn nonzero_normal(n: &mut Normalizer<'_>, s: &mut Sampler<'_>, ring: Ring) -> Element {
    loop {
        let e = n.normal_form(&s.element(ring));
        if !e.is_zero() {
            return e;
        }
    }
}

/// For random nonzero `a`, `b`: vertices `u`, `v` with `au, vb ≠ 0` and a
/// path `p: u → v` give `apb ≠ 0` with `ν(apb) = ν(au) + |p| + ν(vb)`.
pub fn primality_probe(rs: &ReductionSystem, pairs: usize, seed: u64) -> ProbeReport {
    let g = rs.graph();
    let ring = rs.ring();
    let mut s = Sampler::new(
        g,
        SamplerConfig {
            seed,
            ..SamplerConfig::default()
        },
    );
    let mut n = Normalizer::new(rs);
    for k in 0..pairs {
        let a = nonzero_normal(&mut n, &mut s, ring);
        let b = nonzero_normal(&mut n, &mut s, ring);
        let found = g.vertices().find_map(|u| {
            let au = n.multiply(&a, &vertex_element(ring, u));
            (!au.is_zero()).then_some((u, au))
        });
        let Some((u, au)) = found else {
            return fail(k, "a·u = 0 for every vertex u");
        };
        let found = g.vertices().find_map(|v| {
            let vb = n.multiply(&vertex_element(ring, v), &b);
            (!vb.is_zero()).then_some((v, vb))
        });
        let Some((v, vb)) = found else {
            return fail(k, "v·b = 0 for every vertex v");
        };
        let Some(p) = g.connecting_path(u, v) else {
            return fail(k, "graph is not connected");
        };
        let pe = Element::word(ring, p.clone());
        let aup = n.multiply(&au, &pe);
        let apb = n.multiply(&aup, &vb);
        let expected = valuation_of_normal(&au)
            + ValuationValue::Finite(p.path_len())
            + valuation_of_normal(&vb);
        if apb.is_zero() || valuation_of_normal(&apb) != expected {
            return fail(
                k,
                &format!(
                    "a = {}, b = {}, p = {}: ν(apb) = {}, expected {}",
                    a.display(g),
                    b.display(g),
                    g.display_word(&p),
                    valuation_of_normal(&apb),
                    expected
                ),
            );
        }
    }
    ProbeReport {
        checked: pairs,
        failure: None,
    }
}

fn fail(k: usize, msg: &str) -> ProbeReport {
    ProbeReport {
        checked: k + 1,
        failure: Some(msg.to_string()),
    }
}

/// For an edge `α: u → v` and random `b` with `v·b·u ≠ 0`:
/// `ν(α_1 b α_1) > 1`.
pub fn regularity_probe(
    rs: &ReductionSystem,
    edge: EdgeIdx,
    count: usize,
    seed: u64,
) -> ProbeReport {
    let g = rs.graph();
    let ring = rs.ring();
    let (u, v) = (g.edge(edge).source, g.edge(edge).range);
    let a1 = Element::word(ring, Word::letter(Letter::Edge(edge, 1)));
    let mut s = Sampler::new(
        g,
        SamplerConfig {
            seed,
            ..SamplerConfig::default()
        },
    );
    let mut n = Normalizer::new(rs);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < count {
        attempts += 1;
        if attempts > 100 * count.max(1) {
            return fail(checked, "could not draw b with v·b·u ≠ 0");
        }
        let b = s.element(ring);
        let vb = n.multiply(&vertex_element(ring, v), &b);
        let vbu = n.multiply(&vb, &vertex_element(ring, u));
        if vbu.is_zero() {
            continue;
        }
        let left = n.multiply(&a1, &vbu);
        let prod = n.multiply(&left, &a1);
        if valuation_of_normal(&prod) <= ValuationValue::Finite(1) {
            return fail(
                checked,
                &format!(
                    "b = {}: ν(α_1 b α_1) = {}",
                    vbu.display(g),
                    valuation_of_normal(&prod)
                ),
            );
        }
        checked += 1;
    }
    ProbeReport {
        checked,
        failure: None,
    }
}

/// Rank of coefficient vectors over ℚ (or over `ℤ/p` for prime fields).
pub fn rank(ring: Ring, rows: &[Element]) -> usize {
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    for r in rows {
        for w in r.words() {
            let k = index.len();
            index.entry(w.clone()).or_insert(k);
        }
    }
    let cols = index.len();
    let field = match ring {
        Ring::Integers => Ring::Rationals,
        other => other,
    };
    let mut m: Vec<Vec<Coeff>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![Coeff::zero(); cols];
            for (w, c) in r.terms() {
                row[index[w]] = c.clone();
            }
            row
        })
        .collect();
    let inv = |x: &Coeff| -> Coeff {
        match field {
            Ring::PrimeField(_) => field
                .coerce(&(BigRational::one() / x))
                .expect("nonzero residue"),
            _ => BigRational::one() / x,
        }
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|i| !m[*i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_inv = inv(&m[r][c]);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = field.mul(&row[c], &pivot_inv);
            for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x = field.add(x, &field.neg(&field.mul(&f, y)));
            }
        }
        r += 1;
    }
    r
}

/// For a reducible graph: the generator map to the associated unweighted
/// graph commutes with multiplication on random pairs and is injective on
/// normal words up to `basis_len`.
pub fn isomorphism_probe(
    rs: &ReductionSystem,
    pairs: usize,
    basis_len: usize,
    seed: u64,
) -> Result<ProbeReport, OracleError> {
    let g = rs.graph();
    if is_reducible(g) != Reducibility::Reducible {
        return Err(OracleError::NotReducible);
    }
    let ring = rs.ring();
    let (f, map) = associated_unweighted_graph(g);
    let target = ReductionSystem::new(Arc::new(f), ring);
    let mut s = Sampler::new(
        g,
        SamplerConfig {
            seed,
            ..SamplerConfig::default()
        },
    );
    let mut n = Normalizer::new(rs);
    let mut nt = Normalizer::new(&target);
    for k in 0..pairs {
        let a = n.normal_form(&s.element(ring));
        let b = n.normal_form(&s.element(ring));
        let left = map_element(&map, &target, &n.multiply(&a, &b));
        let right = nt.multiply(
            &map_element(&map, &target, &a),
            &map_element(&map, &target, &b),
        );
        if left != right {
            return Ok(fail(
                k,
                &format!(
                    "f(ab) ≠ f(a)f(b) for a = {}, b = {}",
                    a.display(g),
                    b.display(g)
                ),
            ));
        }
    }
    let basis = rs.enumerate_normal_words(basis_len);
    let images: Vec<Element> = basis
        .iter()
        .map(|w| map_element(&map, &target, &Element::word(ring, w.clone())))
        .collect();
    let r = rank(ring, &images);
    if r != basis.len() {
        return Ok(ProbeReport {
            checked: pairs,
            failure: Some(format!(
                "images of {} basis words have rank {r}",
                basis.len()
            )),
        });
    }
    Ok(ProbeReport {
        checked: pairs,
        failure: None,
    })
}

/// Algebraic laws on `count` random instances: NF linear and idempotent,
/// multiplication associative, the involution anti-multiplicative and of
/// order two, and degrees additive on homogeneous products.
pub fn invariant_suite(rs: &ReductionSystem, count: usize, seed: u64) -> ProbeReport {
    let g = rs.graph();
    let ring = rs.ring();
    let mut s = Sampler::new(
        g,
        SamplerConfig {
            seed,
            ..SamplerConfig::default()
        },
    );
    let mut n = Normalizer::new(rs);
    for k in 0..count {
        let a = s.element(ring);
        let b = s.element(ring);
        let c = s.element(ring);
        let show = |x: &Element| x.display(g).to_string();
        let na = n.normal_form(&a);
        let nb = n.normal_form(&b);
        if n.normal_form(&na) != na {
            return fail(k, &format!("NF not idempotent on {}", show(&a)));
        }
        let lam = ring.from_int(s.coefficient());
        let lin = n.normal_form(&(&a.scale(&lam) + &b));
        if lin != &na.scale(&lam) + &nb {
            return fail(k, &format!("NF not linear on {}, {}", show(&a), show(&b)));
        }
        let ab = n.multiply(&a, &b);
        let bc = n.multiply(&b, &c);
        let ab_c = n.multiply(&ab, &c);
        let a_bc = n.multiply(&a, &bc);
        if ab_c != a_bc {
            return fail(
                k,
                &format!(
                    "not associative on {}, {}, {}",
                    show(&a),
                    show(&b),
                    show(&c)
                ),
            );
        }
        let star = |n: &mut Normalizer<'_>, x: &Element| n.normal_form(&x.dual());
        let sa = star(&mut n, &na);
        if star(&mut n, &sa) != na {
            return fail(k, &format!("star not an involution on {}", show(&a)));
        }
        let lhs = star(&mut n, &ab);
        let sb = star(&mut n, &b);
        let rhs = n.multiply(&sb, &sa);
        if lhs != rhs {
            return fail(k, &format!("(ab)* ≠ b*a* on {}, {}", show(&a), show(&b)));
        }
        let x = s.path();
        let y = s.path();
        let (dx, dy) = (degree(g, &x).expect("path"), degree(g, &y).expect("path"));
        let xy = n.multiply(
            &Element::word(ring, x.clone()),
            &Element::word(ring, y.clone()),
        );
        let want = &dx + &dy;
        let bad = xy
            .words()
            .find(|w| degree(g, w).ok().as_ref() != Some(&want))
            .cloned();
        if let Some(w) = bad {
            return fail(
                k,
                &format!(
                    "degree of {} in {}·{} is not {want}",
                    g.display_word(&w),
                    g.display_word(&x),
                    g.display_word(&y)
                ),
            );
        }
    }
    ProbeReport {
        checked: count,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;
    use crate::fixtures;

    fn sys(g: WeightedGraph) -> ReductionSystem {
        ReductionSystem::new(Arc::new(g), Ring::Integers)
    }

    #[test]
    fn zero_terms_gives_zero() {
        let g = fixtures::g_e();
        let cfg = SamplerConfig {
            max_terms: 0,
            ..SamplerConfig::default()
        };
        assert!(random_element(&g, cfg, Ring::Integers).is_zero());
    }

    #[test]
    fn sampling_is_deterministic() {
        let g = fixtures::g_rose();
        let cfg = SamplerConfig {
            seed: 42,
            ..SamplerConfig::default()
        };
        assert_eq!(
            random_element(&g, cfg, Ring::Integers),
            random_element(&g, cfg, Ring::Integers)
        );
    }

    #[test]
    fn samples_are_short_paths() {
        let g = fixtures::g_e();
        let cfg = SamplerConfig {
            seed: 7,
            max_word_len: 3,
            max_terms: 4,
            coefficient_bound: 5,
        };
        for k in 0..50 {
            let e = random_element(&g, SamplerConfig { seed: k, ..cfg }, Ring::Integers);
            for w in e.words() {
                assert!(w.path_len() <= 3);
                assert!(g.is_generalized_path(w));
            }
        }
    }

    #[test]
    fn random_reduce_examples() {
        let rs = sys(fixtures::g_e());
        let a2 = parse_expression(rs.graph(), rs.ring(), "alpha[2]").unwrap();
        assert_eq!(random_reduce(&rs, &a2, 3), a2);
        let e = parse_expression(rs.graph(), rs.ring(), "alpha[1]^* * alpha[1]").unwrap();
        for seed in 0..20 {
            let out = random_reduce(&rs, &e, seed);
            assert_eq!(
                out.display(rs.graph()).to_string(),
                "v - alpha[2]^**alpha[2]"
            );
        }
    }

    #[test]
    fn random_reduce_agrees_across_seeds_on_rose() {
        let rs = sys(fixtures::g_rose());
        let mut s = Sampler::new(
            rs.graph(),
            SamplerConfig {
                seed: 11,
                ..SamplerConfig::default()
            },
        );
        let w = s.word(6);
        let e = Element::word(rs.ring(), w);
        let nf = rs.normal_form(&e);
        for seed in 0..200 {
            assert_eq!(random_reduce(&rs, &e, seed), nf);
        }
    }

    #[test]
    fn brute_force_counts() {
        let e = brute_force_normal_words(&fixtures::g_e(), 2).unwrap();
        let count = |n: usize| e.iter().filter(|w| w.path_len() == n).count();
        assert_eq!((count(0), count(1), count(2)), (2, 6, 11));
        for g in fixtures::all() {
            assert_eq!(
                brute_force_normal_words(&g, 0).unwrap().len(),
                g.vertex_count()
            );
        }
        assert_eq!(
            brute_force_normal_words(&fixtures::g_rose(), 1)
                .unwrap()
                .len(),
            23
        );
        assert!(brute_force_normal_words(&fixtures::g_e(), 6).is_err());
    }

    #[test]
    fn oracle_agrees_with_engine() {
        for g in fixtures::all() {
            let rs = sys(g.clone());
            assert_eq!(
                rs.enumerate_normal_words(3),
                brute_force_normal_words(&g, 3).unwrap()
            );
        }
    }

    #[test]
    fn confluence_small() {
        for g in [fixtures::g_e(), fixtures::g_i(), fixtures::g_l23()] {
            let report = run_confluence_suite(&sys(g), 100, 5);
            assert!(report.passed(), "{:?}", report.divergence);
        }
    }

    #[test]
    fn probes_on_rose() {
        let rs = sys(fixtures::g_rose());
        assert!(primality_probe(&rs, 30, 1).passed());
        let alpha = rs.graph().edge_by_name("alpha").unwrap();
        assert!(regularity_probe(&rs, alpha, 30, 2).passed());
    }

    #[test]
    fn isomorphism_on_reducible_fixtures() {
        for g in [fixtures::g_e(), fixtures::g_r()] {
            let report = isomorphism_probe(&sys(g), 30, 2, 3).unwrap();
            assert!(report.passed(), "{:?}", report.failure);
        }
        assert_eq!(
            isomorphism_probe(&sys(fixtures::g_i()), 1, 1, 0),
            Err(OracleError::NotReducible)
        );
    }

    #[test]
    fn rank_over_fields() {
        let g = fixtures::g_e();
        let el = |s: &str| parse_expression(&g, Ring::Rationals, s).unwrap();
        assert_eq!(
            rank(Ring::Rationals, &[el("u + v"), el("u - v"), el("2*u")]),
            2
        );
        let f3 = |s: &str| parse_expression(&g, Ring::PrimeField(3), s).unwrap();
        assert_eq!(rank(Ring::PrimeField(3), &[f3("u + v"), f3("u - 2*v")]), 1);
    }

    #[test]
    fn invariants_small() {
        for g in [fixtures::g_e(), fixtures::g_rose()] {
            let report = invariant_suite(&sys(g), 40, 9);
            assert!(report.passed(), "{:?}", report.failure);
        }
    }
}
