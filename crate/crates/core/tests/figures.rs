//! The worked examples: the lock, the type conversions and the
//! starter/terminator automaton for `a ∥ bc`.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use graph_automata::alphabet::{gen_builtin, gen_st, parse_alphabet, Builtin};
use graph_automata::automaton::parse_automaton_with;
use graph_automata::minimize::{minimize, suffix_quotients};
use graph_automata::oracle::{bounded_language, LanguageSet};
use graph_automata::rational::{compile, parse_expr, to_rational};

fn fig3() -> graph_automata::automaton::Automaton {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let text = fs::read_to_string(dir.join("fig3.gaut")).unwrap();
    parse_automaton_with(&text, |rel| {
        parse_alphabet(&fs::read_to_string(dir.join(rel)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
    })
    .unwrap()
}

#[test]
fn st_alphabet_matches_the_generator() {
    let st = gen_st(&["a", "b", "c"], 2).unwrap();
    assert_eq!(fig3().alphabet(), &st);
    assert_eq!(st.edge_count(), 42);
    assert!(st.vertex_id("⟨⟩").is_some() && st.vertex_id("⟨b,c⟩").is_some());
}

#[test]
fn fig3_language_is_the_bottom_row() {
    let aut = fig3();
    assert!(aut.is_valid());
    assert_eq!(aut.state_count(), 15);
    let st = Arc::new(aut.alphabet().clone());
    let want = LanguageSet::from_words(st.clone(), 8, &["⟨⟩ : S0.b@ T0.b@b S0.c@ T0.c@c : ⟨⟩"]).unwrap();
    assert_eq!(bounded_language(&aut, 8).unwrap(), want);
    // the rational expression and the minimal automaton agree
    let e = to_rational(&aut).unwrap();
    let back = compile(&st, &e).unwrap();
    assert_eq!(bounded_language(&back, 8).unwrap(), want);
    assert_eq!(minimize(&aut).unwrap().state_count(), 5);
}

#[test]
fn lock_protocol() {
    let lock = Arc::new(gen_builtin(Builtin::Lock));
    let x = compile(&lock, &parse_expr(&lock, "(a^+ . P . b^+ . V)^+").unwrap()).unwrap();
    let m = minimize(&x).unwrap();
    assert!(m.state_count() <= x.state_count());
    let q = suffix_quotients(&x).unwrap();
    assert_eq!(q.count(), m.state_count());
    assert_eq!(q.total_including_empty, q.count() + 1);
}

#[test]
fn type_conversions() {
    let types = Arc::new(gen_builtin(Builtin::Types));
    let x = compile(&types, &parse_expr(&types, "(abs . neg)^+ + abs . sqrt . round").unwrap()).unwrap();
    let w = types.parse_word("int : abs neg abs neg : int").unwrap();
    assert!(x.accepts(&w).unwrap());
    let w = types.parse_word("int : abs sqrt round : int").unwrap();
    assert!(x.accepts(&w).unwrap());
    let w = types.parse_word("uint : neg abs : uint").unwrap();
    assert!(!x.accepts(&w).unwrap());
}
