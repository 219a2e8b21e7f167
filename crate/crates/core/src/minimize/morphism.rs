use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{minimize, require_dfa, require_trim, MinimizeError};
use crate::automaton::{Automaton, AutomatonError, Label, StateId};

/// A map from the states of one automaton to those of another preserving
/// initial and accepting membership, vertex labels and transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutMorphism {
    map: Vec<StateId>,
}

impl AutMorphism {
    pub fn image(&self, q: StateId) -> StateId {
        self.map[q.0]
    }

    pub fn map(&self) -> &[StateId] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let distinct: BTreeSet<_> = self.map.iter().collect();
        distinct.len() == self.map.len()
    }

    /// One `map <state1> -> <state2>` line per source state.
    pub fn to_text(&self, from: &Automaton, to: &Automaton) -> String {
        from.state_ids()
            .map(|q| format!("map {} -> {}\n", from.state_name(q), to.state_name(self.image(q))))
            .collect()
    }
}

fn successors(aut: &Automaton) -> Vec<BTreeMap<Label, StateId>> {
    let mut succ = vec![BTreeMap::new(); aut.state_count()];
    for t in aut.transitions() {
        succ[t.source.0].insert(t.label, t.target);
    }
    succ
}

/// Builds the morphism sending each state of `a1` reached by a word `w` to
/// the state of `a2` reached by `w`, then checks the morphism conditions.
///
/// Both automata must be deterministic and trimmed over one alphabet; a
/// failure means the languages differ or the inputs break the preconditions.
pub fn find_morphism(a1: &Automaton, a2: &Automaton) -> Result<AutMorphism, MinimizeError> {
    if !a1.same_alphabet(a2) {
        return Err(AutomatonError::AlphabetMismatch.into());
    }
    require_dfa(a1)?;
    require_dfa(a2)?;
    require_trim(a1)?;
    require_trim(a2)?;
    let init2: BTreeMap<_, _> = a2.initial().iter().map(|q| (a2.vertex_of(*q), *q)).collect();
    let (succ1, succ2) = (successors(a1), successors(a2));

    let conflict = |p: StateId, first: StateId, second: StateId| MinimizeError::Conflict {
        state: a1.state_name(p).to_string(),
        first: a2.state_name(first).to_string(),
        second: a2.state_name(second).to_string(),
    };
    let mut map: Vec<Option<StateId>> = vec![None; a1.state_count()];
    let mut queue = VecDeque::new();
    for &p in a1.initial() {
        let q = *init2
            .get(&a1.vertex_of(p))
            .ok_or_else(|| MinimizeError::Unmatched(a1.state_name(p).to_string()))?;
        map[p.0] = Some(q);
        queue.push_back(p);
    }
    while let Some(p) = queue.pop_front() {
        let q = map[p.0].expect("queued states are mapped");
        for (label, &p2) in &succ1[p.0] {
            let q2 = *succ2[q.0].get(label).ok_or_else(|| MinimizeError::Condition {
                state: a1.state_name(p).to_string(),
                image: a2.state_name(q).to_string(),
                condition: "transition",
            })?;
            match map[p2.0] {
                Some(prev) if prev != q2 => return Err(conflict(p2, prev, q2)),
                Some(_) => {}
                None => {
                    map[p2.0] = Some(q2);
                    queue.push_back(p2);
                }
            }
        }
    }

    let map: Vec<StateId> = a1
        .state_ids()
        .map(|p| map[p.0].ok_or_else(|| MinimizeError::Unmatched(a1.state_name(p).to_string())))
        .collect::<Result<_, _>>()?;
    for p in a1.state_ids() {
        let q = map[p.0];
        let broken = if a1.vertex_of(p) != a2.vertex_of(q) {
            Some("vertex label")
        } else if a1.is_initial(p) && !a2.is_initial(q) {
            Some("initial state")
        } else if a1.is_accepting(p) && !a2.is_accepting(q) {
            Some("accepting state")
        } else {
            None
        };
        if let Some(condition) = broken {
            return Err(MinimizeError::Condition {
                state: a1.state_name(p).to_string(),
                image: a2.state_name(q).to_string(),
                condition,
            });
        }
    }
    Ok(AutMorphism { map })
}

/// Whether no deterministic automaton with fewer states has the same language.
pub fn check_minimal(aut: &Automaton) -> Result<bool, MinimizeError> {
    require_dfa(aut)?;
    require_trim(aut)?;
    Ok(aut.state_count() == minimize(aut)?.state_count())
}
