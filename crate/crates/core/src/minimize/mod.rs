//! Minimal deterministic automata via the Nerode congruence.
//!
//! Two states of a trimmed deterministic automaton are equivalent when they
//! have the same right language. The classes are computed by Moore-style
//! refinement, starting from the split by (vertex, acceptance).

mod morphism;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::alphabet::{Morphism, VertexId};
use crate::automaton::{Automaton, AutomatonError, Label, StateId};
use crate::ops::{complete, determinize};

pub use morphism::{check_minimal, find_morphism, AutMorphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinimizeError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error("automaton is not trimmed: state `{0}` is unreachable or cannot reach an accepting state")]
    NotTrimmed(String),
    #[error("no state of the target corresponds to `{0}`")]
    Unmatched(String),
    #[error("state `{state}` would map to both `{first}` and `{second}`")]
    Conflict { state: String, first: String, second: String },
    #[error("mapping `{state}` to `{image}` breaks the {condition} condition")]
    Condition {
        state: String,
        image: String,
        condition: &'static str,
    },
}

/// One class of the Nerode congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub states: Vec<StateId>,
    pub vertex: VertexId,
    pub accepting: bool,
}

/// The coarsest partition of a DFA's states that separates vertex labels and
/// acceptance and is stable under transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerodePartition {
    blocks: Vec<Block>,
    block_of: Vec<usize>,
}

impl NerodePartition {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_of(&self, q: StateId) -> usize {
        self.block_of[q.0]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn require_dfa(aut: &Automaton) -> Result<(), MinimizeError> {
    aut.require_silent_free()?;
    if !aut.is_deterministic() {
        return Err(AutomatonError::NotDeterministic.into());
    }
    Ok(())
}

fn require_trim(aut: &Automaton) -> Result<(), MinimizeError> {
    let (r, c) = (aut.reachable(), aut.coaccessible());
    match aut.state_ids().find(|q| !(r[q.0] && c[q.0])) {
        Some(q) => Err(MinimizeError::NotTrimmed(aut.state_name(q).to_string())),
        None => Ok(()),
    }
}

/// Renumbers class keys by first occurrence in state order.
fn normalize<K: Ord + Clone>(keys: &[K]) -> (Vec<usize>, usize) {
    let mut ids = BTreeMap::new();
    let out = keys
        .iter()
        .map(|k| {
            let n = ids.len();
            *ids.entry(k.clone()).or_insert(n)
        })
        .collect();
    (out, ids.len())
}

pub fn nerode_partition(aut: &Automaton) -> Result<NerodePartition, MinimizeError> {
    require_dfa(aut)?;
    require_trim(aut)?;
    let n = aut.state_count();
    let mut succ: Vec<Vec<(Label, StateId)>> = vec![Vec::new(); n];
    for t in aut.transitions() {
        succ[t.source.0].push((t.label, t.target));
    }
    for s in &mut succ {
        s.sort();
    }
    let initial: Vec<(VertexId, bool)> = aut
        .state_ids()
        .map(|q| (aut.vertex_of(q), aut.is_accepting(q)))
        .collect();
    let (mut block_of, mut count) = normalize(&initial);
    loop {
        let signatures: Vec<(usize, Vec<(Label, usize)>)> = (0..n)
            .map(|q| {
                let moves = succ[q].iter().map(|(l, t)| (*l, block_of[t.0])).collect();
                (block_of[q], moves)
            })
            .collect();
        let (next, next_count) = normalize(&signatures);
        block_of = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    let mut blocks: Vec<Block> = Vec::with_capacity(count);
    for q in aut.state_ids() {
        let b = block_of[q.0];
        if b == blocks.len() {
            blocks.push(Block {
                states: Vec::new(),
                vertex: aut.vertex_of(q),
                accepting: aut.is_accepting(q),
            });
        }
        blocks[b].states.push(q);
    }
    Ok(NerodePartition { blocks, block_of })
}

/// The minimal deterministic automaton of `L(aut)`.
///
/// States are the Nerode classes of `trim(determinize(aut))`, numbered
/// `m0`, `m1`, … in breadth-first order from the initial states, so the
/// result is canonical: equal languages give equal automata.
pub fn minimize(aut: &Automaton) -> Result<Automaton, MinimizeError> {
    let dfa = determinize(aut)?.trim();
    let part = nerode_partition(&dfa)?;
    let alphabet = dfa.alphabet_arc().clone();

    let mut moves: Vec<BTreeMap<Label, usize>> = vec![BTreeMap::new(); part.len()];
    for t in dfa.transitions() {
        moves[part.block_of(t.source)].insert(t.label, part.block_of(t.target));
    }
    let mut init_blocks: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &q in dfa.initial() {
        let prev = init_blocks.insert(dfa.vertex_of(q), part.block_of(q));
        assert!(prev.is_none(), "two initial classes share a vertex");
    }

    let mut order: Vec<usize> = Vec::with_capacity(part.len());
    let mut new_id = vec![None; part.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &b in init_blocks.values() {
        if new_id[b].is_none() {
            new_id[b] = Some(order.len());
            order.push(b);
            queue.push_back(b);
        }
    }
    while let Some(b) = queue.pop_front() {
        for &t in moves[b].values() {
            if new_id[t].is_none() {
                new_id[t] = Some(order.len());
                order.push(t);
                queue.push_back(t);
            }
        }
    }

    let mut out = Automaton::new(alphabet);
    for (i, &b) in order.iter().enumerate() {
        let block = &part.blocks()[b];
        let q = out.add_state(format!("m{i}"), block.vertex);
        out.set_accepting(q, block.accepting);
    }
    for &b in init_blocks.values() {
        out.set_initial(StateId(new_id[b].expect("initial blocks are numbered")), true);
    }
    for &b in &order {
        for (&label, &t) in &moves[b] {
            out.add_transition(
                StateId(new_id[b].expect("reached")),
                label,
                StateId(new_id[t].expect("reached")),
            );
        }
    }
    Ok(out)
}

/// The distinct left quotients `w⁻¹L(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixQuotients {
    /// Shortest witness `w` for each nonempty quotient, one per state of the
    /// minimal automaton, in its state order.
    pub witnesses: Vec<Morphism>,
    /// Number of quotients including the empty one, if some `w` has it.
    pub total_including_empty: usize,
}

impl SuffixQuotients {
    /// Number of nonempty quotients.
    pub fn count(&self) -> usize {
        self.witnesses.len()
    }
}

pub fn suffix_quotients(aut: &Automaton) -> Result<SuffixQuotients, MinimizeError> {
    let min = minimize(aut)?;
    let alphabet = min.alphabet_arc().clone();
    let mut witness: Vec<Option<Morphism>> = vec![None; min.state_count()];
    let mut queue = VecDeque::new();
    for &q in min.initial() {
        witness[q.0] = Some(Morphism::identity(min.vertex_of(q)));
        queue.push_back(q);
    }
    let mut succ: Vec<Vec<(Label, StateId)>> = vec![Vec::new(); min.state_count()];
    for t in min.transitions() {
        succ[t.source.0].push((t.label, t.target));
    }
    while let Some(q) = queue.pop_front() {
        let w = witness[q.0].clone().expect("queued states have witnesses");
        for &(label, t) in &succ[q.0] {
            if let (Label::Edge(e), None) = (label, &witness[t.0]) {
                witness[t.0] = Some(w.extended(e, alphabet.target(e)));
                queue.push_back(t);
            }
        }
    }
    let witnesses: Vec<Morphism> = witness
        .into_iter()
        .map(|w| w.expect("minimal automata are reachable"))
        .collect();

    // the empty quotient occurs iff some word leads the completed subset
    // automaton into a state that cannot accept
    let full = complete(&determinize(aut)?)?;
    let (r, c) = (full.reachable(), full.coaccessible());
    let has_empty = full.state_ids().any(|q| r[q.0] && !c[q.0]);
    Ok(SuffixQuotients {
        total_including_empty: witnesses.len() + usize::from(has_empty),
        witnesses,
    })
}

/// Whether two automata have the same shape up to renaming of states.
pub fn is_isomorphic(a1: &Automaton, a2: &Automaton) -> bool {
    if a1.state_count() != a2.state_count() || a1.transitions().len() != a2.transitions().len() {
        return false;
    }
    let (Ok(f), Ok(g)) = (find_morphism(a1, a2), find_morphism(a2, a1)) else {
        return false;
    };
    let edges = |a: &Automaton| -> BTreeSet<(StateId, Label, StateId)> {
        a.transitions().iter().map(|t| (t.source, t.label, t.target)).collect()
    };
    let mapped: BTreeSet<_> = edges(a1)
        .into_iter()
        .map(|(s, l, t)| (f.image(s), l, f.image(t)))
        .collect();
    f.is_injective()
        && g.is_injective()
        && mapped == edges(a2)
        && a1.state_ids().all(|q| {
            a1.is_initial(q) == a2.is_initial(f.image(q)) && a1.is_accepting(q) == a2.is_accepting(f.image(q))
        })
}

#[cfg(test)]
pub(crate) mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::alphabet::{gen_builtin, Builtin, GraphAlphabet};
    use crate::oracle::bounded_language;
    use crate::rational::{compile, parse_expr};

    fn lock() -> Arc<GraphAlphabet> {
        Arc::new(gen_builtin(Builtin::Lock))
    }

    fn aut(a: &Arc<GraphAlphabet>, e: &str) -> Automaton {
        compile(a, &parse_expr(a, e).unwrap()).unwrap()
    }

    /// q0 -P-> q2, q0 -a-> q1 -P-> q3; q2 and q3 accepting.
    pub(crate) fn p_or_ap(a: &Arc<GraphAlphabet>) -> Automaton {
        let (u, s) = (a.lookup_vertex("unsafe").unwrap(), a.lookup_vertex("safe").unwrap());
        let mut d = Automaton::new(a.clone());
        let q0 = d.add_state("q0", u);
        let q1 = d.add_state("q1", u);
        let q2 = d.add_state("q2", s);
        let q3 = d.add_state("q3", s);
        d.set_initial(q0, true);
        d.set_accepting(q2, true);
        d.set_accepting(q3, true);
        d.add_edge(q0, a.lookup_edge("P").unwrap(), q2);
        d.add_edge(q0, a.lookup_edge("a").unwrap(), q1);
        d.add_edge(q1, a.lookup_edge("P").unwrap(), q3);
        d
    }

    #[test]
    fn partition_of_p_or_ap() {
        let a = lock();
        let d = p_or_ap(&a);
        let p = nerode_partition(&d).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.block_of(StateId(2)), p.block_of(StateId(3)));
        assert_ne!(p.block_of(StateId(0)), p.block_of(StateId(1)));
    }

    #[test]
    fn partition_single_and_discrete() {
        let a = lock();
        let one = aut(&a, "id:safe");
        assert_eq!(nerode_partition(&one).unwrap().len(), 1);
        let chain = determinize(&aut(&a, "a . a . P")).unwrap().trim();
        assert_eq!(nerode_partition(&chain).unwrap().len(), chain.state_count());
    }

    #[test]
    fn partition_preconditions() {
        let a = lock();
        let mut d = p_or_ap(&a);
        d.add_state("dead", a.lookup_vertex("safe").unwrap());
        assert_eq!(nerode_partition(&d), Err(MinimizeError::NotTrimmed("dead".into())));
        let mut d = p_or_ap(&a);
        d.set_initial(StateId(1), true);
        assert_eq!(
            nerode_partition(&d),
            Err(MinimizeError::Automaton(AutomatonError::NotDeterministic))
        );
    }

    #[test]
    fn minimize_examples() {
        let a = lock();
        let d = p_or_ap(&a);
        let m = minimize(&d).unwrap();
        assert_eq!(m.state_count(), 3);
        assert_eq!(bounded_language(&m, 5).unwrap(), bounded_language(&d, 5).unwrap());
        let x = aut(&a, "P . b^+");
        let m = minimize(&x).unwrap();
        assert_eq!(m.state_count(), 3);
        assert!(m.is_deterministic() && m.is_trim());
        assert_eq!(bounded_language(&m, 6).unwrap(), bounded_language(&x, 6).unwrap());
    }

    #[test]
    fn minimize_is_idempotent_and_canonical() {
        let a = lock();
        let m = minimize(&aut(&a, "(a + a . a)^+ . P . b^+")).unwrap();
        assert_eq!(minimize(&m).unwrap(), m);
        let other = minimize(&aut(&a, "a^+ . P . b . b^+ + a^+ . P . b")).unwrap();
        assert_eq!(other, m);
        assert!(is_isomorphic(&m, &m.renumbered("z")));
    }

    #[test]
    fn quotient_counts() {
        let a = lock();
        let s = suffix_quotients(&aut(&a, "P . b^+")).unwrap();
        assert_eq!(s.count(), 3);
        assert_eq!(s.witnesses[0], a.identity("unsafe").unwrap());
        assert_eq!(s.total_including_empty, 4);
        let s = suffix_quotients(&Automaton::new(a.clone())).unwrap();
        assert_eq!((s.count(), s.total_including_empty), (0, 1));
        let s = suffix_quotients(&Automaton::universal(a.clone())).unwrap();
        assert_eq!((s.count(), s.total_including_empty), (2, 2));
    }
}
