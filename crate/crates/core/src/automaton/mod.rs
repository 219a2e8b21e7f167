//! Automata over a graph alphabet.
//!
//! States carry a vertex label (their type) and transitions carry an edge
//! label, or a vertex label for silent transitions. A transition labeled `a`
//! must leave a state of type `d0(a)` and enter a state of type `d1(a)`.

mod dot;
mod text;
mod untyped;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::{AlphabetError, EdgeId, GraphAlphabet, Morphism, VertexId};

pub use text::{parse_automaton, parse_automaton_with, serialize_automaton};
pub use untyped::{parse_nfa, serialize_nfa, UntypedNfa};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub name: String,
    pub vertex: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Edge(EdgeId),
    /// A silent transition; it contributes the identity of its vertex.
    Silent(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: StateId,
    pub target: StateId,
    pub label: Label,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("automaton has silent transitions; eliminate them first")]
    SilentTransitions,
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("automaton is not complete")]
    NotComplete,
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A single failure of the typing or reference invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("state `{state}` has unknown vertex label (id {vertex})")]
    UnknownStateVertex { state: String, vertex: u32 },
    #[error("state name `{0}` is used more than once")]
    DuplicateStateName(String),
    #[error("initial state id {0} does not exist")]
    DanglingInitial(usize),
    #[error("accepting state id {0} does not exist")]
    DanglingAccepting(usize),
    #[error("transition #{transition} refers to a missing state")]
    DanglingEndpoint { transition: usize },
    #[error("transition #{transition} has a label that is not in the alphabet")]
    UnknownLabel { transition: usize },
    #[error("transition #{transition}: source state `{state}` has type `{found}` but the label starts at `{expected}`")]
    SourceType {
        transition: usize,
        state: String,
        found: String,
        expected: String,
    },
    #[error("transition #{transition}: target state `{state}` has type `{found}` but the label ends at `{expected}`")]
    TargetType {
        transition: usize,
        state: String,
        found: String,
        expected: String,
    },
}

/// A finite automaton over a graph alphabet.
///
/// Construction methods do not check the typing invariants; call
/// [`Automaton::validate`] for that.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Arc<GraphAlphabet>,
    states: Vec<State>,
    initial: BTreeSet<StateId>,
    accepting: BTreeSet<StateId>,
    transitions: Vec<Transition>,
}

impl Automaton {
    /// The empty automaton.
    pub fn new(alphabet: Arc<GraphAlphabet>) -> Self {
        Automaton {
            alphabet,
            states: Vec::new(),
            initial: BTreeSet::new(),
            accepting: BTreeSet::new(),
            transitions: Vec::new(),
        }
    }

    /// Assembles an automaton from raw parts without any checks.
    pub fn from_parts(
        alphabet: Arc<GraphAlphabet>,
        states: Vec<State>,
        initial: BTreeSet<StateId>,
        accepting: BTreeSet<StateId>,
        transitions: Vec<Transition>,
    ) -> Self {
        Automaton {
            alphabet,
            states,
            initial,
            accepting,
            transitions,
        }
    }

    pub fn alphabet(&self) -> &GraphAlphabet {
        &self.alphabet
    }

    pub fn alphabet_arc(&self) -> &Arc<GraphAlphabet> {
        &self.alphabet
    }

    pub fn add_state(&mut self, name: impl Into<String>, vertex: VertexId) -> StateId {
        self.states.push(State {
            name: name.into(),
            vertex,
        });
        StateId(self.states.len() - 1)
    }

    pub fn set_initial(&mut self, q: StateId, yes: bool) {
        if yes {
            self.initial.insert(q);
        } else {
            self.initial.remove(&q);
        }
    }

    pub fn set_accepting(&mut self, q: StateId, yes: bool) {
        if yes {
            self.accepting.insert(q);
        } else {
            self.accepting.remove(&q);
        }
    }

    pub fn add_transition(&mut self, source: StateId, label: Label, target: StateId) {
        self.transitions.push(Transition {
            source,
            target,
            label,
        });
    }

    pub fn add_edge(&mut self, source: StateId, edge: EdgeId, target: StateId) {
        self.add_transition(source, Label::Edge(edge), target);
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state_ids(&self) -> impl ExactSizeIterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn state(&self, q: StateId) -> &State {
        &self.states[q.0]
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q.0].name
    }

    /// `μ(q)`.
    pub fn vertex_of(&self, q: StateId) -> VertexId {
        self.states[q.0].vertex
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.name == name).map(StateId)
    }

    pub fn initial(&self) -> &BTreeSet<StateId> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<StateId> {
        &self.accepting
    }

    pub fn is_initial(&self, q: StateId) -> bool {
        self.initial.contains(&q)
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting.contains(&q)
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn has_silent(&self) -> bool {
        self.transitions
            .iter()
            .any(|t| matches!(t.label, Label::Silent(_)))
    }

    pub fn same_alphabet(&self, other: &Automaton) -> bool {
        Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet
    }

    pub(crate) fn require_silent_free(&self) -> Result<(), AutomatonError> {
        if self.has_silent() {
            Err(AutomatonError::SilentTransitions)
        } else {
            Ok(())
        }
    }

    /// Domain and codomain of a label: `(d0, d1)`, with `d0(v) = d1(v) = v`
    /// for silent labels.
    pub fn label_endpoints(&self, label: Label) -> Option<(VertexId, VertexId)> {
        match label {
            Label::Edge(e) if self.alphabet.contains_edge(e) => {
                Some((self.alphabet.source(e), self.alphabet.target(e)))
            }
            Label::Silent(v) if self.alphabet.contains_vertex(v) => Some((v, v)),
            _ => None,
        }
    }

    pub fn label_name(&self, label: Label) -> String {
        match label {
            Label::Edge(e) => self.alphabet.edge_name(e).to_string(),
            Label::Silent(v) => format!("@{}", self.alphabet.vertex_name(v)),
        }
    }

    /// Reports every typing violation and dangling reference.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let a = &*self.alphabet;
        let mut names = BTreeSet::new();
        for s in &self.states {
            if !a.contains_vertex(s.vertex) {
                out.push(Violation::UnknownStateVertex {
                    state: s.name.clone(),
                    vertex: s.vertex.0,
                });
            }
            if !names.insert(s.name.as_str()) {
                out.push(Violation::DuplicateStateName(s.name.clone()));
            }
        }
        let n = self.states.len();
        out.extend(
            self.initial
                .iter()
                .filter(|q| q.0 >= n)
                .map(|q| Violation::DanglingInitial(q.0)),
        );
        out.extend(
            self.accepting
                .iter()
                .filter(|q| q.0 >= n)
                .map(|q| Violation::DanglingAccepting(q.0)),
        );
        let vertex_name = |v: VertexId| {
            if a.contains_vertex(v) {
                a.vertex_name(v).to_string()
            } else {
                format!("#{}", v.0)
            }
        };
        for (i, t) in self.transitions.iter().enumerate() {
            if t.source.0 >= n || t.target.0 >= n {
                out.push(Violation::DanglingEndpoint { transition: i });
                continue;
            }
            let Some((d0, d1)) = self.label_endpoints(t.label) else {
                out.push(Violation::UnknownLabel { transition: i });
                continue;
            };
            let (s, u) = (&self.states[t.source.0], &self.states[t.target.0]);
            if s.vertex != d0 {
                out.push(Violation::SourceType {
                    transition: i,
                    state: s.name.clone(),
                    found: vertex_name(s.vertex),
                    expected: vertex_name(d0),
                });
            }
            if u.vertex != d1 {
                out.push(Violation::TargetType {
                    transition: i,
                    state: u.name.clone(),
                    found: vertex_name(u.vertex),
                    expected: vertex_name(d1),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// States reached from `from` by reading `e`.
    pub(crate) fn step(&self, from: &BTreeSet<StateId>, e: EdgeId) -> BTreeSet<StateId> {
        self.transitions
            .iter()
            .filter(|t| t.label == Label::Edge(e) && from.contains(&t.source))
            .map(|t| t.target)
            .collect()
    }

    /// States from which reading `e` leads into `to`.
    pub(crate) fn step_back(&self, to: &BTreeSet<StateId>, e: EdgeId) -> BTreeSet<StateId> {
        self.transitions
            .iter()
            .filter(|t| t.label == Label::Edge(e) && to.contains(&t.target))
            .map(|t| t.source)
            .collect()
    }

    /// States reached by reading `x` from the initial states of type `d0(x)`.
    pub fn run(&self, x: &Morphism) -> Result<BTreeSet<StateId>, AutomatonError> {
        self.require_silent_free()?;
        self.alphabet.check_morphism(x)?;
        let mut current: BTreeSet<StateId> = self
            .initial
            .iter()
            .copied()
            .filter(|q| self.vertex_of(*q) == x.source())
            .collect();
        for &e in x.word() {
            if current.is_empty() {
                break;
            }
            current = self.step(&current, e);
        }
        Ok(current)
    }

    /// Whether some accepting path is labeled `x`.
    pub fn accepts(&self, x: &Morphism) -> Result<bool, AutomatonError> {
        if x.is_identity() {
            self.require_silent_free()?;
            self.alphabet.check_morphism(x)?;
            return Ok(self
                .initial
                .iter()
                .any(|q| self.is_accepting(*q) && self.vertex_of(*q) == x.source()));
        }
        Ok(self.run(x)?.iter().any(|q| self.is_accepting(*q)))
    }

    /// At most one initial state per vertex, at most one outgoing transition
    /// per state and label.
    pub fn is_deterministic(&self) -> bool {
        let mut init_types = BTreeSet::new();
        if !self.initial.iter().all(|q| init_types.insert(self.vertex_of(*q))) {
            return false;
        }
        let mut seen = BTreeSet::new();
        self.transitions
            .iter()
            .all(|t| seen.insert((t.source, t.label)))
    }

    /// Every vertex has an initial state and every state has a transition for
    /// every edge leaving its vertex.
    pub fn is_complete(&self) -> bool {
        let init_types: BTreeSet<VertexId> = self.initial.iter().map(|q| self.vertex_of(*q)).collect();
        if init_types.len() != self.alphabet.vertex_count() {
            return false;
        }
        let present: BTreeSet<(StateId, Label)> =
            self.transitions.iter().map(|t| (t.source, t.label)).collect();
        self.state_ids().all(|q| {
            self.alphabet
                .outgoing(self.vertex_of(q))
                .iter()
                .all(|e| present.contains(&(q, Label::Edge(*e))))
        })
    }

    fn closure(&self, start: &BTreeSet<StateId>, forward: bool) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            if forward {
                adj[t.source.0].push(t.target);
            } else {
                adj[t.target.0].push(t.source);
            }
        }
        let mut seen = vec![false; self.states.len()];
        let mut queue: VecDeque<StateId> = start.iter().copied().collect();
        for q in &queue {
            seen[q.0] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &r in &adj[q.0] {
                if !seen[r.0] {
                    seen[r.0] = true;
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Per-state flag: reachable from an initial state.
    pub fn reachable(&self) -> Vec<bool> {
        self.closure(&self.initial, true)
    }

    /// Per-state flag: some accepting state is reachable from it.
    pub fn coaccessible(&self) -> Vec<bool> {
        self.closure(&self.accepting, false)
    }

    pub fn is_trim(&self) -> bool {
        let (r, c) = (self.reachable(), self.coaccessible());
        r.iter().zip(&c).all(|(a, b)| *a && *b)
    }

    /// Keeps only the states that are both reachable and co-accessible.
    pub fn trim(&self) -> Automaton {
        let (r, c) = (self.reachable(), self.coaccessible());
        let keep: Vec<bool> = r.iter().zip(&c).map(|(a, b)| *a && *b).collect();
        self.restrict(&keep)
    }

    /// Sub-automaton on the states flagged in `keep`, in their original order.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Automaton {
        let mut remap = vec![None; self.states.len()];
        let mut states = Vec::new();
        for (i, s) in self.states.iter().enumerate() {
            if keep[i] {
                remap[i] = Some(StateId(states.len()));
                states.push(s.clone());
            }
        }
        let map_set = |set: &BTreeSet<StateId>| set.iter().filter_map(|q| remap[q.0]).collect();
        let transitions = self
            .transitions
            .iter()
            .filter_map(|t| {
                Some(Transition {
                    source: remap[t.source.0]?,
                    target: remap[t.target.0]?,
                    label: t.label,
                })
            })
            .collect();
        Automaton {
            alphabet: self.alphabet.clone(),
            states,
            initial: map_set(&self.initial),
            accepting: map_set(&self.accepting),
            transitions,
        }
    }

    /// `(d0(L(A)), d1(L(A)))`.
    pub fn endpoints(&self) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
        let (r, c) = (self.reachable(), self.coaccessible());
        let sources = self
            .initial
            .iter()
            .filter(|q| c[q.0])
            .map(|q| self.vertex_of(*q))
            .collect();
        let targets = self
            .accepting
            .iter()
            .filter(|q| r[q.0])
            .map(|q| self.vertex_of(*q))
            .collect();
        (sources, targets)
    }

    /// The alphabet graph itself with every state initial and accepting.
    pub fn universal(alphabet: Arc<GraphAlphabet>) -> Automaton {
        let mut aut = Automaton::new(alphabet.clone());
        for v in alphabet.vertices() {
            let q = aut.add_state(alphabet.vertex_name(v), v);
            aut.set_initial(q, true);
            aut.set_accepting(q, true);
        }
        for e in alphabet.edges() {
            let (s, t) = (alphabet.source(e), alphabet.target(e));
            aut.add_edge(StateId(s.index()), e, StateId(t.index()));
        }
        aut
    }

    /// Same automaton with every state name prefixed.
    pub fn prefixed(&self, prefix: &str) -> Automaton {
        let mut out = self.clone();
        for s in &mut out.states {
            s.name = format!("{prefix}{}", s.name);
        }
        out
    }

    /// Same automaton with states renamed `<prefix>0`, `<prefix>1`, ….
    pub fn renumbered(&self, prefix: &str) -> Automaton {
        let mut out = self.clone();
        for (i, s) in out.states.iter_mut().enumerate() {
            s.name = format!("{prefix}{i}");
        }
        out
    }

    /// Makes state names unique by appending `'` to later duplicates.
    pub(crate) fn dedup_names(&mut self) {
        let mut seen = std::collections::HashSet::new();
        for s in &mut self.states {
            while !seen.insert(s.name.clone()) {
                s.name.push('\'');
            }
        }
    }

    pub fn untyped(&self) -> Result<UntypedNfa, AutomatonError> {
        self.require_silent_free()?;
        Ok(UntypedNfa::from_automaton(self))
    }

    pub fn to_dot(&self) -> String {
        dot::to_dot(self)
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_automaton(self))
    }
}
