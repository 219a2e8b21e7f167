//! Graph alphabets.
//!
//! A graph alphabet is a directed graph whose edges are the letters. A word is
//! only well formed when it spells a walk in the graph, so concatenation of two
//! words is defined only when the end vertex of the first matches the start
//! vertex of the second. Typed words are represented by [`Morphism`].
//!
//! Vertices and edges are stored sorted by name; [`VertexId`] and [`EdgeId`]
//! index into those sorted lists, so id order is name order.

mod generate;
mod morphism;
mod text;

use std::fmt;

use thiserror::Error;

pub use generate::{gen_builtin, gen_st, st_vertex_name, Builtin};
pub use morphism::Morphism;
pub use text::{parse_alphabet, serialize_alphabet};
pub(crate) use text::{strip_comment as text_strip_comment, write_body as text_write_body};

/// Index of a vertex in a [`GraphAlphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Index of an edge in a [`GraphAlphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` uses undeclared vertex `{vertex}`")]
    UndeclaredVertex { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("type mismatch: cannot compose a morphism ending in `{left_target}` with one starting in `{right_source}`")]
    TypeMismatch {
        left_target: String,
        right_source: String,
    },
    #[error("ill-typed word: {0}")]
    IllTypedWord(String),
    #[error("unknown builtin alphabet `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid event label `{0}`")]
    InvalidEvent(String),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<AlphabetError>,
    },
}

impl AlphabetError {
    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            e @ AlphabetError::AtLine { .. } => e,
            e => AlphabetError::AtLine {
                line,
                source: Box::new(e),
            },
        }
    }
}

/// Checks a vertex or edge name against the `[A-Za-z0-9_.@⟨⟩,+-]+` charset.
///
/// Names may not start with `@`, which marks silent transition labels in
/// automaton files.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('@')
        && name.chars().all(|c| {
            c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '@' | '⟨' | '⟩' | ',' | '+' | '-')
        })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeDef {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A directed graph `(V, Σ, d0, d1)` whose edges are letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GraphAlphabet {
    vertices: Vec<String>,
    edges: Vec<EdgeDef>,
    // outgoing edges per vertex, in edge id order
    outgoing: Vec<Vec<EdgeId>>,
}

impl GraphAlphabet {
    /// The alphabet with no vertices and no edges.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds an alphabet from vertex names and `(name, source, target)` edges.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, AlphabetError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut vertex_names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        for v in &vertex_names {
            if !is_valid_name(v) {
                return Err(AlphabetError::InvalidName(v.clone()));
            }
        }
        vertex_names.sort();
        if let Some(w) = vertex_names.windows(2).find(|w| w[0] == w[1]) {
            return Err(AlphabetError::DuplicateVertex(w[0].clone()));
        }

        let mut raw: Vec<(String, String, String)> = edges
            .into_iter()
            .map(|(n, s, t)| (n.into(), s.into(), t.into()))
            .collect();
        raw.sort();
        if let Some(w) = raw.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(AlphabetError::DuplicateEdge(w[0].0.clone()));
        }

        let lookup = |edge: &str, v: &str| -> Result<VertexId, AlphabetError> {
            vertex_names
                .binary_search_by(|x| x.as_str().cmp(v))
                .map(|i| VertexId(i as u32))
                .map_err(|_| AlphabetError::UndeclaredVertex {
                    edge: edge.to_string(),
                    vertex: v.to_string(),
                })
        };
        let mut edge_defs = Vec::with_capacity(raw.len());
        for (name, s, t) in &raw {
            if !is_valid_name(name) {
                return Err(AlphabetError::InvalidName(name.clone()));
            }
            edge_defs.push(EdgeDef {
                name: name.clone(),
                source: lookup(name, s)?,
                target: lookup(name, t)?,
            });
        }

        let mut outgoing = vec![Vec::new(); vertex_names.len()];
        for (i, e) in edge_defs.iter().enumerate() {
            outgoing[e.source.index()].push(EdgeId(i as u32));
        }
        Ok(GraphAlphabet {
            vertices: vertex_names,
            edges: edge_defs,
            outgoing,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge(&self, e: EdgeId) -> &EdgeDef {
        &self.edges[e.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    /// `d0(e)`.
    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    /// `d1(e)`.
    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].target
    }

    /// Edges leaving `v`, in id order.
    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[v.index()]
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.vertices.len()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.index() < self.edges.len()
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .binary_search_by(|x| x.as_str().cmp(name))
            .ok()
            .map(|i| VertexId(i as u32))
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges
            .binary_search_by(|x| x.name.as_str().cmp(name))
            .ok()
            .map(|i| EdgeId(i as u32))
    }

    pub fn lookup_vertex(&self, name: &str) -> Result<VertexId, AlphabetError> {
        self.vertex_id(name)
            .ok_or_else(|| AlphabetError::UnknownVertex(name.to_string()))
    }

    pub fn lookup_edge(&self, name: &str) -> Result<EdgeId, AlphabetError> {
        self.edge_id(name)
            .ok_or_else(|| AlphabetError::UnknownEdge(name.to_string()))
    }

    /// The identity morphism `id_v`.
    pub fn identity(&self, vertex: &str) -> Result<Morphism, AlphabetError> {
        let v = self.lookup_vertex(vertex)?;
        Ok(Morphism::identity(v))
    }

    /// The one-letter morphism `(d0(e), e, d1(e))`.
    pub fn letter(&self, e: EdgeId) -> Morphism {
        Morphism::from_parts(self.source(e), vec![e], self.target(e))
    }

    /// Builds a morphism from a walk, checking that consecutive edges chain and
    /// that the endpoints agree with the word.
    pub fn morphism(
        &self,
        source: VertexId,
        word: Vec<EdgeId>,
        target: VertexId,
    ) -> Result<Morphism, AlphabetError> {
        let m = Morphism::from_parts(source, word, target);
        self.check_morphism(&m)?;
        Ok(m)
    }

    /// Builds a morphism from edge names alone; the endpoints come from the word.
    pub fn walk(&self, edges: &[&str]) -> Result<Morphism, AlphabetError> {
        let word = edges
            .iter()
            .map(|n| self.lookup_edge(n))
            .collect::<Result<Vec<_>, _>>()?;
        let Some(first) = word.first() else {
            return Err(AlphabetError::IllTypedWord(
                "an empty walk needs an explicit vertex".into(),
            ));
        };
        let source = self.source(*first);
        let target = self.target(*word.last().unwrap());
        self.morphism(source, word, target)
    }

    /// Checks the morphism invariants against this alphabet.
    pub fn check_morphism(&self, m: &Morphism) -> Result<(), AlphabetError> {
        if !self.contains_vertex(m.source()) || !self.contains_vertex(m.target()) {
            return Err(AlphabetError::IllTypedWord(
                "endpoint is not a vertex of the alphabet".into(),
            ));
        }
        let mut at = m.source();
        for &e in m.word() {
            if !self.contains_edge(e) {
                return Err(AlphabetError::IllTypedWord(format!(
                    "edge id {} is not in the alphabet",
                    e.0
                )));
            }
            if self.source(e) != at {
                return Err(AlphabetError::IllTypedWord(format!(
                    "edge `{}` starts at `{}`, expected `{}`",
                    self.edge_name(e),
                    self.vertex_name(self.source(e)),
                    self.vertex_name(at)
                )));
            }
            at = self.target(e);
        }
        if at != m.target() {
            return Err(AlphabetError::IllTypedWord(format!(
                "word ends at `{}` but the declared target is `{}`",
                self.vertex_name(at),
                self.vertex_name(m.target())
            )));
        }
        Ok(())
    }

    /// Typed concatenation `x·y`; fails when `d1(x) ≠ d0(y)`.
    pub fn compose(&self, x: &Morphism, y: &Morphism) -> Result<Morphism, AlphabetError> {
        x.compose(y).ok_or_else(|| AlphabetError::TypeMismatch {
            left_target: self.vertex_name(x.target()).to_string(),
            right_source: self.vertex_name(y.source()).to_string(),
        })
    }

    /// Parses `<vertex> : <edge> <edge> … : <vertex>`; identities have an
    /// empty middle segment.
    pub fn parse_word(&self, text: &str) -> Result<Morphism, AlphabetError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(AlphabetError::Syntax(format!(
                "expected `<vertex> : <edges> : <vertex>`, got `{text}`"
            )));
        }
        let source = self.lookup_vertex(parts[0].trim())?;
        let target = self.lookup_vertex(parts[2].trim())?;
        let word = parts[1]
            .split_whitespace()
            .map(|n| self.lookup_edge(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.morphism(source, word, target)
    }

    /// Renders a morphism in word syntax.
    pub fn format_word(&self, m: &Morphism) -> String {
        let mut out = String::new();
        out.push_str(self.vertex_name(m.source()));
        out.push_str(" :");
        for &e in m.word() {
            out.push(' ');
            out.push_str(self.edge_name(e));
        }
        out.push_str(" : ");
        out.push_str(self.vertex_name(m.target()));
        out
    }

    pub fn display<'a>(&'a self, m: &'a Morphism) -> impl fmt::Display + 'a {
        DisplayWord { alphabet: self, m }
    }
}

struct DisplayWord<'a> {
    alphabet: &'a GraphAlphabet,
    m: &'a Morphism,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format_word(self.m))
    }
}
