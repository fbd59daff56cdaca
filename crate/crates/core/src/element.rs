//! Elements of the free ring `R⟨X⟩`: finite sums of coefficient-scaled words.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::graph::WeightedGraph;
use crate::ring::{Coeff, Ring};
use crate::word::Word;

/// A free-ring element. Terms are kept in canonical word order and never
/// store a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    ring: Ring,
    terms: BTreeMap<Word, Coeff>,
}

impl Element {
    pub fn zero(ring: Ring) -> Self {
        Self {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn word(ring: Ring, w: Word) -> Self {
        Self::monomial(ring, w, Coeff::one())
    }

    pub fn monomial(ring: Ring, w: Word, c: Coeff) -> Self {
        let mut e = Self::zero(ring);
        e.add_term(w, &c);
        e
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Word, Coeff)>) -> Self {
        let mut e = Self::zero(ring);
        for (w, c) in terms {
            e.add_term(w, &c);
        }
        e
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Word, Coeff> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coefficient(&self, w: &Word) -> Coeff {
        self.terms.get(w).cloned().unwrap_or_else(Coeff::zero)
    }

    pub(crate) fn take_term(&mut self, w: &Word) -> Option<Coeff> {
        self.terms.remove(w)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.terms.contains_key(w)
    }

    /// Adds `c·w`, dropping the term if the coefficient cancels.
    pub fn add_term(&mut self, w: Word, c: &Coeff) {
        let c = self.ring.reduce(c.clone());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            btree_map::Entry::Occupied(mut slot) => {
                let sum = self.ring.add(slot.get(), &c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Coeff) {
        debug_assert_eq!(self.ring, other.ring);
        for (w, d) in &other.terms {
            let k = self.ring.mul(c, d);
            self.add_term(w.clone(), &k);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        let mut out = Element::zero(self.ring);
        out.add_scaled(self, c);
        out
    }

    /// Product in the free ring (concatenation), without any reduction.
    pub fn concat(&self, other: &Element) -> Element {
        debug_assert_eq!(self.ring, other.ring);
        let mut out = Element::zero(self.ring);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.concat(q), &self.ring.mul(a, b));
            }
        }
        out
    }

    /// Letterwise dual of every word (no reduction).
    pub fn dual(&self) -> Element {
        Element::from_terms(
            self.ring,
            self.terms.iter().map(|(w, c)| (w.dual(), c.clone())),
        )
    }

    pub fn display<'a>(&'a self, g: &'a WeightedGraph) -> ElementDisplay<'a> {
        ElementDisplay {
            graph: g,
            element: self,
        }
    }
}

impl Add for &Element {
    type Output = Element;

    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coeff::one());
        out
    }
}

impl Sub for &Element {
    type Output = Element;

    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Coeff::one());
        out
    }
}

impl Neg for &Element {
    type Output = Element;

    fn neg(self) -> Element {
        self.scale(&-Coeff::one())
    }
}

/// Prints terms in canonical order: `v - alpha[2]^**alpha[2]`,
/// `3/2*u + beta[1]`, or `0` for the zero element.
pub struct ElementDisplay<'a> {
    graph: &'a WeightedGraph,
    element: &'a Element,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.element.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{}*", mag)?;
            }
            write!(f, "{}", self.graph.display_word(w))?;
        }
        Ok(())
    }
}
