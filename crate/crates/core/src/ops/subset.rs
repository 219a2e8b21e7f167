use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::alphabet::VertexId;
use crate::automaton::{Automaton, AutomatonError, Label, StateId};

fn subset_name(aut: &Automaton, set: &BTreeSet<StateId>) -> String {
    let mut names: Vec<&str> = set.iter().map(|q| aut.state_name(*q)).collect();
    names.sort_unstable();
    format!("{{{}}}", names.join(","))
}

/// Subset construction over nonempty reachable subsets.
///
/// Each vertex occurring in `μ(I)` gets exactly one initial subset, the set of
/// all initial states of that type. All states of a subset share one vertex,
/// since transitions on one edge all end at its target.
pub fn determinize(aut: &Automaton) -> Result<Automaton, AutomatonError> {
    aut.require_silent_free()?;
    let alphabet = aut.alphabet_arc().clone();
    let mut out = Automaton::new(alphabet.clone());
    let mut index: BTreeMap<BTreeSet<StateId>, StateId> = BTreeMap::new();
    let mut queue = VecDeque::new();

    let mut by_vertex: BTreeMap<VertexId, BTreeSet<StateId>> = BTreeMap::new();
    for &q in aut.initial() {
        by_vertex.entry(aut.vertex_of(q)).or_default().insert(q);
    }
    let mut intern = |set: BTreeSet<StateId>, v: VertexId, out: &mut Automaton, queue: &mut VecDeque<_>| {
        *index.entry(set.clone()).or_insert_with(|| {
            let id = out.add_state(subset_name(aut, &set), v);
            out.set_accepting(id, set.iter().any(|q| aut.is_accepting(*q)));
            queue.push_back((set, id));
            id
        })
    };
    for (v, set) in by_vertex {
        let id = intern(set, v, &mut out, &mut queue);
        out.set_initial(id, true);
    }
    while let Some((set, id)) = queue.pop_front() {
        for &e in alphabet.outgoing(out.vertex_of(id)) {
            let next = aut.step(&set, e);
            if !next.is_empty() {
                let target = intern(next, alphabet.target(e), &mut out, &mut queue);
                out.add_edge(id, e, target);
            }
        }
    }
    out.dedup_names();
    Ok(out)
}

/// Adds a fresh initial state `init_v` for every vertex without an initial
/// state, and routes every missing transition `q -a->` to a sink `sink_v`
/// with `v = d1(a)`. Sinks are only created when some missing transition
/// needs them, so a complete automaton is returned unchanged.
pub fn complete(aut: &Automaton) -> Result<Automaton, AutomatonError> {
    aut.require_silent_free()?;
    let alphabet = aut.alphabet_arc().clone();
    let mut out = aut.clone();
    let has_init: BTreeSet<VertexId> = aut.initial().iter().map(|q| aut.vertex_of(*q)).collect();
    for v in alphabet.vertices() {
        if !has_init.contains(&v) {
            let q = out.add_state(format!("init_{}", alphabet.vertex_name(v)), v);
            out.set_initial(q, true);
        }
    }

    let present: BTreeSet<(StateId, Label)> =
        out.transitions().iter().map(|t| (t.source, t.label)).collect();
    let missing = |q: StateId, out: &Automaton| -> Vec<_> {
        alphabet
            .outgoing(out.vertex_of(q))
            .iter()
            .copied()
            .filter(|e| !present.contains(&(q, Label::Edge(*e))))
            .collect()
    };
    // vertices needing a sink: targets of missing transitions, closed under
    // the sinks' own (entirely missing) outgoing edges
    let mut sinks: BTreeSet<VertexId> = BTreeSet::new();
    let mut work: Vec<VertexId> = out
        .state_ids()
        .flat_map(|q| missing(q, &out))
        .map(|e| alphabet.target(e))
        .collect();
    while let Some(v) = work.pop() {
        if sinks.insert(v) {
            work.extend(alphabet.outgoing(v).iter().map(|e| alphabet.target(*e)));
        }
    }
    let mut sink_of = BTreeMap::new();
    for v in sinks {
        sink_of.insert(v, out.add_state(format!("sink_{}", alphabet.vertex_name(v)), v));
    }
    for q in out.state_ids().collect::<Vec<_>>() {
        for e in missing(q, &out) {
            out.add_edge(q, e, sink_of[&alphabet.target(e)]);
        }
    }
    out.dedup_names();
    Ok(out)
}

/// Swaps accepting and non-accepting states of a complete deterministic
/// automaton, which complements its language within all morphisms.
pub fn complement(aut: &Automaton) -> Result<Automaton, AutomatonError> {
    aut.require_silent_free()?;
    if !aut.is_deterministic() {
        return Err(AutomatonError::NotDeterministic);
    }
    if !aut.is_complete() {
        return Err(AutomatonError::NotComplete);
    }
    let mut out = aut.clone();
    for q in aut.state_ids() {
        out.set_accepting(q, !aut.is_accepting(q));
    }
    Ok(out)
}
