//! Letters and words over the alphabet `X = E⁰ ∪ E¹ ∪ (E¹)*`.

use std::cmp::Ordering;

use crate::graph::{EdgeIdx, VertexIdx};

/// A generator of the free ring. Variant order (vertex < edge < star), then
/// edge index, then letter index, is the canonical letter order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Vertex(VertexIdx),
    /// `α_i`, with `1 ≤ i ≤ ω(α)`.
    Edge(EdgeIdx, u32),
    /// `α_i*`.
    Star(EdgeIdx, u32),
}

impl Letter {
    pub fn is_vertex(self) -> bool {
        matches!(self, Letter::Vertex(_))
    }

    /// The involution on letters; vertices are self-dual.
    pub fn dual(self) -> Letter {
        match self {
            Letter::Vertex(v) => Letter::Vertex(v),
            Letter::Edge(e, i) => Letter::Star(e, i),
            Letter::Star(e, i) => Letter::Edge(e, i),
        }
    }
}

/// A nonempty word. Words compare by length first, then lexicographically
/// by letter; this is the canonical term order for printing and for the
/// deterministic reduction policy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        assert!(!letters.is_empty(), "words are nonempty");
        Word(letters)
    }

    pub fn letter(x: Letter) -> Self {
        Word(vec![x])
    }

    pub fn vertex(v: VertexIdx) -> Self {
        Word(vec![Letter::Vertex(v)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of letters (a vertex word has one).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Path length: zero for a vertex word, the letter count otherwise.
    pub fn path_len(&self) -> usize {
        if self.0.len() == 1 && self.0[0].is_vertex() {
            0
        } else {
            self.0.len()
        }
    }

    pub fn first(&self) -> Letter {
        self.0[0]
    }

    pub fn last(&self) -> Letter {
        self.0[self.0.len() - 1]
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Letterwise dual: reversed order, stars swapped.
    pub fn dual(&self) -> Word {
        Word(self.0.iter().rev().map(|x| x.dual()).collect())
    }

    /// `prefix ++ middle ++ suffix`; returns `None` when all three are empty.
    pub fn splice(prefix: &[Letter], middle: &[Letter], suffix: &[Letter]) -> Option<Word> {
        let mut letters = Vec::with_capacity(prefix.len() + middle.len() + suffix.len());
        letters.extend_from_slice(prefix);
        letters.extend_from_slice(middle);
        letters.extend_from_slice(suffix);
        if letters.is_empty() {
            None
        } else {
            Some(Word(letters))
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::new(letters)
    }
}
