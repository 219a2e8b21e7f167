use std::collections::BTreeSet;

use crate::alphabet::Morphism;
use crate::automaton::{Automaton, AutomatonError, StateId};

/// `w⁻¹L(A)`: the initial states become those reached by reading `w`.
pub fn quotient_left(aut: &Automaton, w: &Morphism) -> Result<Automaton, AutomatonError> {
    let reached = aut.run(w)?;
    let mut out = aut.clone();
    for q in aut.state_ids() {
        out.set_initial(q, reached.contains(&q));
    }
    Ok(out)
}

/// `L(A)w⁻¹`: the accepting states become those from which reading `w`
/// reaches an accepting state.
pub fn quotient_right(aut: &Automaton, w: &Morphism) -> Result<Automaton, AutomatonError> {
    aut.require_silent_free()?;
    aut.alphabet().check_morphism(w)?;
    let mut current: BTreeSet<StateId> = aut
        .accepting()
        .iter()
        .copied()
        .filter(|q| aut.vertex_of(*q) == w.target())
        .collect();
    for &e in w.word().iter().rev() {
        current = aut.step_back(&current, e);
    }
    let mut out = aut.clone();
    for q in aut.state_ids() {
        out.set_accepting(q, current.contains(&q));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
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

    #[test]
    fn left_by_edge() {
        let a = lock();
        let x = aut(&a, "P . b^+");
        let q = quotient_left(&x, &a.parse_word("unsafe : P : safe").unwrap()).unwrap();
        assert_eq!(bounded_language(&q, 5).unwrap(), bounded_language(&aut(&a, "b^+"), 5).unwrap());
        let oracle = bounded_language(&x, 6).unwrap().left_quotient(&a.parse_word("unsafe : P : safe").unwrap()).unwrap();
        assert_eq!(bounded_language(&q, 5).unwrap(), oracle);
    }

    #[test]
    fn left_by_identity_restricts_sources() {
        let a = lock();
        let x = aut(&a, "P + b");
        let q = quotient_left(&x, &a.identity("safe").unwrap()).unwrap();
        assert_eq!(bounded_language(&q, 3).unwrap(), bounded_language(&aut(&a, "b"), 3).unwrap());
    }

    #[test]
    fn left_by_non_prefix_is_empty() {
        let a = lock();
        let x = aut(&a, "P . b^+");
        let q = quotient_left(&x, &a.parse_word("unsafe : a : unsafe").unwrap()).unwrap();
        assert!(bounded_language(&q, 6).unwrap().is_empty());
    }

    #[test]
    fn right_by_edge() {
        let a = lock();
        let x = aut(&a, "P . b^+");
        let w = a.parse_word("safe : b : safe").unwrap();
        let q = quotient_right(&x, &w).unwrap();
        assert_eq!(
            bounded_language(&q, 5).unwrap(),
            bounded_language(&aut(&a, "P + P . b^+"), 5).unwrap()
        );
        let oracle = bounded_language(&x, 6).unwrap().right_quotient(&w).unwrap();
        assert_eq!(bounded_language(&q, 5).unwrap(), oracle);
    }

    #[test]
    fn right_by_identity_and_non_suffix() {
        let a = lock();
        let x = aut(&a, "P + b + a");
        let q = quotient_right(&x, &a.identity("safe").unwrap()).unwrap();
        assert_eq!(bounded_language(&q, 3).unwrap(), bounded_language(&aut(&a, "P + b"), 3).unwrap());
        let q = quotient_right(&x, &a.parse_word("safe : V : unsafe").unwrap()).unwrap();
        assert!(bounded_language(&q, 6).unwrap().is_empty());
    }
}
