use std::cmp::Ordering;

use super::{EdgeId, VertexId};

/// A typed word `(u, ω, v)`: a walk `ω` from vertex `u` to vertex `v`.
///
/// The empty word only occurs with `u = v` and denotes the identity `id_u`.
/// Morphisms do not carry their alphabet; use
/// [`GraphAlphabet::check_morphism`](super::GraphAlphabet::check_morphism) to
/// validate one against an alphabet.
///
/// Ordering is by source, then word length, then word, then target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    source: VertexId,
    word: Vec<EdgeId>,
    target: VertexId,
}

impl Morphism {
    pub fn identity(v: VertexId) -> Self {
        Morphism {
            source: v,
            word: Vec::new(),
            target: v,
        }
    }

    /// Unchecked constructor.
    pub fn from_parts(source: VertexId, word: Vec<EdgeId>, target: VertexId) -> Self {
        Morphism {
            source,
            word,
            target,
        }
    }

    /// `d0(x)`.
    pub fn source(&self) -> VertexId {
        self.source
    }

    /// `d1(x)`.
    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn word(&self) -> &[EdgeId] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// `self·other`, defined only when `d1(self) = d0(other)`.
    pub fn compose(&self, other: &Morphism) -> Option<Morphism> {
        if self.target != other.source {
            return None;
        }
        let mut word = Vec::with_capacity(self.word.len() + other.word.len());
        word.extend_from_slice(&self.word);
        word.extend_from_slice(&other.word);
        Some(Morphism {
            source: self.source,
            word,
            target: other.target,
        })
    }

    /// Appends one edge whose target is `target`. The caller guarantees the
    /// edge starts at `self.target()`.
    pub fn extended(&self, e: EdgeId, target: VertexId) -> Morphism {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.extend_from_slice(&self.word);
        word.push(e);
        Morphism {
            source: self.source,
            word,
            target,
        }
    }

    /// If `prefix` is a typed prefix of `self`, returns the remaining suffix.
    pub fn strip_prefix(&self, prefix: &Morphism) -> Option<Morphism> {
        if prefix.source != self.source || !self.word.starts_with(&prefix.word) {
            return None;
        }
        let rest = &self.word[prefix.word.len()..];
        if rest.is_empty() && prefix.target != self.target {
            return None;
        }
        Some(Morphism {
            source: prefix.target,
            word: rest.to_vec(),
            target: self.target,
        })
    }

    /// If `suffix` is a typed suffix of `self`, returns the remaining prefix.
    pub fn strip_suffix(&self, suffix: &Morphism) -> Option<Morphism> {
        if suffix.target != self.target || !self.word.ends_with(&suffix.word) {
            return None;
        }
        let rest = &self.word[..self.word.len() - suffix.word.len()];
        if rest.is_empty() && suffix.source != self.source {
            return None;
        }
        Some(Morphism {
            source: self.source,
            word: rest.to_vec(),
            target: suffix.source,
        })
    }
}

impl Ord for Morphism {
    fn cmp(&self, other: &Self) -> Ordering {
        self.source
            .cmp(&other.source)
            .then(self.word.len().cmp(&other.word.len()))
            .then_with(|| self.word.cmp(&other.word))
            .then(self.target.cmp(&other.target))
    }
}

impl PartialOrd for Morphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
