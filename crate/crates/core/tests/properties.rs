//! Language-level properties of the constructions, refereed by the bounded
//! oracle on seeded random inputs.

use std::sync::Arc;

use graph_automata::alphabet::{gen_builtin, parse_alphabet, serialize_alphabet, Builtin, GraphAlphabet};
use graph_automata::automaton::{parse_automaton, serialize_automaton, Automaton};
use graph_automata::ops::{
    complement, complete, concat, determinize, intersect, plus, quotient_left, quotient_right, union,
};
use graph_automata::oracle::{bounded_language, bounded_rat, enum_morphisms, LanguageSet};
use graph_automata::random::{random_alphabet, random_automaton, random_complete_dfa, random_expr, rng};
use graph_automata::rational::{compile, parse_expr, print_expr, to_rational};
use proptest::prelude::*;

const N: usize = 5;

fn setup(seed: u64) -> (Arc<GraphAlphabet>, Automaton, Automaton) {
    let mut r = rng(seed);
    let a = random_alphabet(&mut r, 3, 6);
    let x = random_automaton(&mut r, &a, 5);
    let y = random_automaton(&mut r, &a, 5);
    (a, x, y)
}

fn lang(aut: &Automaton, n: usize) -> LanguageSet {
    bounded_language(aut, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kleene_operations(seed in any::<u64>()) {
        let (_, x, y) = setup(seed);
        let (lx, ly) = (lang(&x, N), lang(&y, N));
        prop_assert_eq!(lang(&union(&x, &y).unwrap(), N), lx.union(&ly).unwrap());
        prop_assert_eq!(lang(&concat(&x, &y).unwrap(), N), lx.concat(&ly).unwrap());
        prop_assert_eq!(lang(&plus(&x), N), lx.plus().unwrap());
        prop_assert_eq!(lang(&intersect(&x, &y).unwrap(), N), lx.intersection(&ly).unwrap());
    }

    #[test]
    fn outputs_are_well_typed(seed in any::<u64>()) {
        let (_, x, y) = setup(seed);
        for out in [
            union(&x, &y).unwrap(),
            concat(&x, &y).unwrap(),
            plus(&x),
            intersect(&x, &y).unwrap(),
            determinize(&x).unwrap(),
            complete(&x).unwrap(),
        ] {
            prop_assert!(out.validate().is_empty(), "{:?}", out.validate());
            prop_assert!(!out.has_silent());
        }
    }

    #[test]
    fn membership_agrees_with_enumeration(seed in any::<u64>()) {
        let (a, x, _) = setup(seed);
        let l = lang(&x, 4);
        for m in enum_morphisms(&a, 4).unwrap().iter() {
            prop_assert_eq!(x.accepts(m).unwrap(), l.contains(m));
        }
    }

    #[test]
    fn state_elimination_round_trip(seed in any::<u64>()) {
        let (a, x, _) = setup(seed);
        let e = to_rational(&x).unwrap();
        prop_assert_eq!(bounded_rat(&a, &e, N).unwrap(), lang(&x, N));
        // the printed expression parses back to the same language
        let reparsed = parse_expr(&a, &print_expr(&e)).unwrap();
        prop_assert_eq!(bounded_rat(&a, &reparsed, N).unwrap(), lang(&x, N));
    }

    #[test]
    fn compile_matches_expression_semantics(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_alphabet(&mut r, 3, 6);
        let e = random_expr(&mut r, &a, 4);
        let aut = compile(&a, &e).unwrap();
        prop_assert!(aut.is_trim() || aut.is_empty());
        prop_assert_eq!(lang(&aut, N), bounded_rat(&a, &e, N).unwrap());
    }

    #[test]
    fn completion(seed in any::<u64>()) {
        let (_, x, _) = setup(seed);
        let c = complete(&x).unwrap();
        prop_assert!(c.is_complete());
        prop_assert_eq!(lang(&c, N), lang(&x, N));
        prop_assert_eq!(complete(&c).unwrap(), c.clone());
        let dc = complete(&determinize(&x).unwrap()).unwrap();
        prop_assert!(dc.is_deterministic() && dc.is_complete());
    }

    #[test]
    fn complement_is_set_difference(seed in any::<u64>()) {
        let (a, x, _) = setup(seed);
        let d = complete(&determinize(&x).unwrap()).unwrap();
        let c = complement(&d).unwrap();
        let all = enum_morphisms(&a, N).unwrap();
        prop_assert_eq!(lang(&c, N), all.difference(&lang(&x, N)).unwrap());
        prop_assert_eq!(complement(&c).unwrap(), d);
    }

    #[test]
    fn de_morgan(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_alphabet(&mut r, 3, 6);
        let (x, y) = (random_complete_dfa(&mut r, &a, 5), random_complete_dfa(&mut r, &a, 5));
        let left = complement(&intersect(&x, &y).unwrap()).unwrap();
        let right = lang(&complement(&x).unwrap(), N).union(&lang(&complement(&y).unwrap(), N)).unwrap();
        prop_assert_eq!(lang(&left, N), right);
    }

    #[test]
    fn quotients_match_the_oracle(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let (_, x, _) = setup(seed);
        let big = lang(&x, N + 2);
        let Some(member) = big.iter().nth(pick.index(big.len().max(1))).cloned() else {
            return Ok(());
        };
        let a = x.alphabet();
        for k in 0..=member.len().min(2) {
            let w_left = graph_automata::alphabet::Morphism::from_parts(
                member.source(),
                member.word()[..k].to_vec(),
                if k == 0 { member.source() } else { a.target(member.word()[k - 1]) },
            );
            let start = member.len() - k;
            let w_right = graph_automata::alphabet::Morphism::from_parts(
                if k == 0 { member.target() } else { a.source(member.word()[start]) },
                member.word()[start..].to_vec(),
                member.target(),
            );
            let l = quotient_left(&x, &w_left).unwrap();
            prop_assert_eq!(lang(&l, N + 2 - k), big.left_quotient(&w_left).unwrap());
            let rq = quotient_right(&x, &w_right).unwrap();
            prop_assert_eq!(lang(&rq, N + 2 - k), big.right_quotient(&w_right).unwrap());
        }
    }

    #[test]
    fn text_round_trips(seed in any::<u64>()) {
        let (a, x, _) = setup(seed);
        prop_assert_eq!(&parse_alphabet(&serialize_alphabet(&a)).unwrap(), a.as_ref());
        let back = parse_automaton(&serialize_automaton(&x)).unwrap();
        prop_assert_eq!(serialize_automaton(&back), serialize_automaton(&x));
        prop_assert_eq!(lang(&back, N), lang(&x, N));
    }
}

#[test]
fn silent_free_operations_reject_foreign_alphabets() {
    let lock = Arc::new(gen_builtin(Builtin::Lock));
    let types = Arc::new(gen_builtin(Builtin::Types));
    let x = compile(&lock, &parse_expr(&lock, "P").unwrap()).unwrap();
    let y = compile(&types, &parse_expr(&types, "abs").unwrap()).unwrap();
    assert!(union(&x, &y).is_err());
    assert!(concat(&x, &y).is_err());
    assert!(intersect(&x, &y).is_err());
}

#[test]
fn lock_examples_end_to_end() {
    let a = Arc::new(gen_builtin(Builtin::Lock));
    let x = compile(&a, &parse_expr(&a, "(a^+ . P . b^+ . V)^+").unwrap()).unwrap();
    let w = a.parse_word("unsafe : a P b V a a P b b V : unsafe").unwrap();
    assert!(x.accepts(&w).unwrap());
    let w = a.parse_word("unsafe : a P V : unsafe").unwrap();
    assert!(!x.accepts(&w).unwrap());
    let e = to_rational(&x).unwrap();
    assert_eq!(bounded_rat(&a, &e, 8).unwrap(), lang(&x, 8));
}
