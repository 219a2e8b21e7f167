use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::{RatError, RatExpr};
use crate::alphabet::GraphAlphabet;
use crate::automaton::{Automaton, Label, StateId, Transition};
use crate::ops;

/// Builds an automaton recognizing the set denoted by `expr`.
///
/// Atoms always get two states, even for self-loop edges, so that `a` alone
/// does not also accept `a·a`. The result is silent-free, trimmed, and has
/// states named `q0`, `q1`, ….
pub fn compile(alphabet: &Arc<GraphAlphabet>, expr: &RatExpr) -> Result<Automaton, RatError> {
    expr.check(alphabet)?;
    Ok(build(alphabet, expr)?.trim().renumbered("q"))
}

fn build(alphabet: &Arc<GraphAlphabet>, expr: &RatExpr) -> Result<Automaton, RatError> {
    Ok(match expr {
        RatExpr::Empty => Automaton::new(alphabet.clone()),
        RatExpr::Atom(name) => {
            let e = alphabet
                .edge_id(name)
                .ok_or_else(|| RatError::UnknownEdge(name.clone()))?;
            let mut aut = Automaton::new(alphabet.clone());
            let s = aut.add_state("s", alphabet.source(e));
            let t = aut.add_state("t", alphabet.target(e));
            aut.set_initial(s, true);
            aut.set_accepting(t, true);
            aut.add_edge(s, e, t);
            aut
        }
        RatExpr::Id(name) => {
            let v = alphabet
                .vertex_id(name)
                .ok_or_else(|| RatError::UnknownVertex(name.clone()))?;
            let mut aut = Automaton::new(alphabet.clone());
            let q = aut.add_state("i", v);
            aut.set_initial(q, true);
            aut.set_accepting(q, true);
            aut
        }
        RatExpr::Union(l, r) => ops::union(&build(alphabet, l)?, &build(alphabet, r)?)?,
        RatExpr::Concat(l, r) => ops::concat(&build(alphabet, l)?, &build(alphabet, r)?)?,
        RatExpr::Plus(e) => ops::plus(&build(alphabet, e)?),
    })
}

/// Removes silent transitions by forward closure.
///
/// A state becomes accepting when a silent path reaches an accepting state,
/// and inherits every edge transition leaving its silent closure. Silent
/// transitions never change the vertex label, so the result stays well typed.
/// Silent-free input is returned unchanged.
pub fn eliminate_silent(aut: &Automaton) -> Automaton {
    if !aut.has_silent() {
        return aut.clone();
    }
    let n = aut.state_count();
    let mut silent = vec![Vec::new(); n];
    for t in aut.transitions() {
        if let Label::Silent(_) = t.label {
            silent[t.source.0].push(t.target);
        }
    }
    let closure: Vec<BTreeSet<StateId>> = (0..n)
        .map(|q| {
            let mut seen = BTreeSet::from([StateId(q)]);
            let mut stack = vec![StateId(q)];
            while let Some(p) = stack.pop() {
                for &r in &silent[p.0] {
                    if seen.insert(r) {
                        stack.push(r);
                    }
                }
            }
            seen
        })
        .collect();

    let mut by_source = vec![Vec::new(); n];
    for t in aut.transitions() {
        if let Label::Edge(_) = t.label {
            by_source[t.source.0].push(*t);
        }
    }
    let mut seen = HashSet::new();
    let mut transitions = Vec::new();
    for t in aut.transitions() {
        if matches!(t.label, Label::Edge(_)) && seen.insert(*t) {
            transitions.push(*t);
        }
    }
    for (q, reach) in closure.iter().enumerate() {
        for p in reach {
            for t in &by_source[p.0] {
                let added = Transition {
                    source: StateId(q),
                    target: t.target,
                    label: t.label,
                };
                if seen.insert(added) {
                    transitions.push(added);
                }
            }
        }
    }
    let accepting = (0..n)
        .map(StateId)
        .filter(|q| closure[q.0].iter().any(|p| aut.is_accepting(*p)))
        .collect();
    Automaton::from_parts(
        aut.alphabet_arc().clone(),
        aut.states().to_vec(),
        aut.initial().clone(),
        accepting,
        transitions,
    )
}
