//! Closure operations on automata.
//!
//! Binary operations rename states with `l:`/`r:` prefixes so their outputs
//! stay readable and disjoint.

mod quotient;
mod subset;

use crate::automaton::{Automaton, AutomatonError, Label, State, StateId, Transition};
use crate::rational::eliminate_silent;

pub use quotient::{quotient_left, quotient_right};
pub use subset::{complement, complete, determinize};

fn require_same(a1: &Automaton, a2: &Automaton) -> Result<(), AutomatonError> {
    if a1.same_alphabet(a2) {
        Ok(())
    } else {
        Err(AutomatonError::AlphabetMismatch)
    }
}

/// Disjoint sum of `l:`-prefixed `a1` and `r:`-prefixed `a2`; the offset
/// of `a2`'s state ids is returned alongside.
fn disjoint_sum(a1: &Automaton, a2: &Automaton) -> (Automaton, usize) {
    let (l, r) = (a1.prefixed("l:"), a2.prefixed("r:"));
    let off = l.state_count();
    let shift = |q: &StateId| StateId(q.0 + off);
    let mut states: Vec<State> = l.states().to_vec();
    states.extend_from_slice(r.states());
    let initial = l.initial().iter().copied().chain(r.initial().iter().map(shift)).collect();
    let accepting = l
        .accepting()
        .iter()
        .copied()
        .chain(r.accepting().iter().map(shift))
        .collect();
    let mut transitions: Vec<Transition> = l.transitions().to_vec();
    transitions.extend(r.transitions().iter().map(|t| Transition {
        source: shift(&t.source),
        target: shift(&t.target),
        label: t.label,
    }));
    let mut out = Automaton::from_parts(a1.alphabet_arc().clone(), states, initial, accepting, transitions);
    out.dedup_names();
    (out, off)
}

/// `L(union(a1, a2)) = L(a1) ∪ L(a2)`.
pub fn union(a1: &Automaton, a2: &Automaton) -> Result<Automaton, AutomatonError> {
    require_same(a1, a2)?;
    Ok(disjoint_sum(a1, a2).0)
}

/// `L(concat(a1, a2)) = L(a1) L(a2)`: silent bridges join each accepting state
/// of `a1` to each same-typed initial state of `a2`, then are eliminated.
pub fn concat(a1: &Automaton, a2: &Automaton) -> Result<Automaton, AutomatonError> {
    require_same(a1, a2)?;
    let (mut sum, off) = disjoint_sum(a1, a2);
    for &f in a1.accepting() {
        for &i in a2.initial() {
            let v = a1.vertex_of(f);
            if v == a2.vertex_of(i) {
                sum.add_transition(f, Label::Silent(v), StateId(i.0 + off));
            }
        }
    }
    for &i in a2.initial() {
        sum.set_initial(StateId(i.0 + off), false);
    }
    for &f in a1.accepting() {
        sum.set_accepting(f, false);
    }
    // after elimination, a state of `a1` accepts iff a bridge leads it to an
    // accepting identity of `a2`
    Ok(eliminate_silent(&sum))
}

/// `L(plus(a)) = L(a)⁺`: silent back-edges from accepting to same-typed
/// initial states, then eliminated.
pub fn plus(a: &Automaton) -> Automaton {
    let mut out = a.clone();
    for &f in a.accepting() {
        for &i in a.initial() {
            let v = a.vertex_of(f);
            if v == a.vertex_of(i) {
                out.add_transition(f, Label::Silent(v), i);
            }
        }
    }
    eliminate_silent(&out)
}

/// Typed product: states `(q1,q2)` with `μ1(q1) = μ2(q2)`, transitions on
/// equal labels. Every typed pair is kept, reachable or not.
pub fn intersect(a1: &Automaton, a2: &Automaton) -> Result<Automaton, AutomatonError> {
    require_same(a1, a2)?;
    a1.require_silent_free()?;
    a2.require_silent_free()?;
    let mut out = Automaton::new(a1.alphabet_arc().clone());
    let mut pair = vec![vec![None; a2.state_count()]; a1.state_count()];
    for p in a1.state_ids() {
        for q in a2.state_ids() {
            if a1.vertex_of(p) != a2.vertex_of(q) {
                continue;
            }
            let s = out.add_state(
                format!("({},{})", a1.state_name(p), a2.state_name(q)),
                a1.vertex_of(p),
            );
            out.set_initial(s, a1.is_initial(p) && a2.is_initial(q));
            out.set_accepting(s, a1.is_accepting(p) && a2.is_accepting(q));
            pair[p.0][q.0] = Some(s);
        }
    }
    for t1 in a1.transitions() {
        for t2 in a2.transitions() {
            if t1.label != t2.label {
                continue;
            }
            if let (Some(s), Some(t)) = (pair[t1.source.0][t2.source.0], pair[t1.target.0][t2.target.0]) {
                out.add_transition(s, t1.label, t);
            }
        }
    }
    out.dedup_names();
    Ok(out)
}
