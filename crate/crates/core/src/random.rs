//! Seeded random alphabets, automata and expressions for testing.
//!
//! Everything here is deterministic given the generator, so a failing case
//! is reproduced from its seed alone.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::alphabet::{GraphAlphabet, VertexId};
use crate::automaton::{Automaton, Label, StateId};
use crate::rational::RatExpr;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Vertices `v0`, `v1`, … and edges `e0`, `e1`, … with random endpoints.
pub fn random_alphabet(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> Arc<GraphAlphabet> {
    let nv = rng.gen_range(1..=max_vertices.max(1));
    let ne = rng.gen_range(1..=max_edges.max(1));
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
    let edges: Vec<(String, String, String)> = (0..ne)
        .map(|i| {
            let s = vertices.choose(rng).expect("at least one vertex").clone();
            let t = vertices.choose(rng).expect("at least one vertex").clone();
            (format!("e{i}"), s, t)
        })
        .collect();
    Arc::new(GraphAlphabet::new(vertices, edges).expect("generated names are valid and distinct"))
}

fn states_by_vertex(aut: &Automaton) -> Vec<Vec<StateId>> {
    let mut by = vec![Vec::new(); aut.alphabet().vertex_count()];
    for q in aut.state_ids() {
        by[aut.vertex_of(q).index()].push(q);
    }
    by
}

/// A valid, silent-free and usually nondeterministic automaton with
/// `1..=max_states` states named `s0`, `s1`, ….
pub fn random_automaton(rng: &mut impl Rng, alphabet: &Arc<GraphAlphabet>, max_states: usize) -> Automaton {
    let mut aut = Automaton::new(alphabet.clone());
    let vertices: Vec<VertexId> = alphabet.vertices().collect();
    for i in 0..rng.gen_range(1..=max_states.max(1)) {
        let v = *vertices.choose(rng).expect("nonempty alphabet");
        let q = aut.add_state(format!("s{i}"), v);
        aut.set_initial(q, rng.gen_bool(0.35));
        aut.set_accepting(q, rng.gen_bool(0.35));
    }
    let by = states_by_vertex(&aut);
    for q in aut.state_ids().collect::<Vec<_>>() {
        for &e in alphabet.outgoing(aut.vertex_of(q)) {
            let targets = &by[alphabet.target(e).index()];
            if targets.is_empty() {
                continue;
            }
            let copies = match rng.gen_range(0..10) {
                0..=4 => 0,
                5..=8 => 1,
                _ => 2,
            };
            for _ in 0..copies {
                let t = *targets.choose(rng).expect("nonempty");
                if !aut.transitions().iter().any(|x| x.source == q && x.target == t && x.label == Label::Edge(e)) {
                    aut.add_edge(q, e, t);
                }
            }
        }
    }
    aut
}

/// A complete deterministic automaton: one initial state per vertex and one
/// transition per (state, outgoing edge).
pub fn random_complete_dfa(rng: &mut impl Rng, alphabet: &Arc<GraphAlphabet>, max_states: usize) -> Automaton {
    let mut aut = Automaton::new(alphabet.clone());
    let vertices: Vec<VertexId> = alphabet.vertices().collect();
    for &v in &vertices {
        let q = aut.add_state(format!("s{}", v.index()), v);
        aut.set_initial(q, true);
    }
    let extra = max_states.saturating_sub(vertices.len());
    for i in 0..rng.gen_range(0..=extra) {
        let v = *vertices.choose(rng).expect("nonempty alphabet");
        aut.add_state(format!("s{}", vertices.len() + i), v);
    }
    for q in aut.state_ids().collect::<Vec<_>>() {
        aut.set_accepting(q, rng.gen_bool(0.4));
    }
    let by = states_by_vertex(&aut);
    for q in aut.state_ids().collect::<Vec<_>>() {
        for &e in alphabet.outgoing(aut.vertex_of(q)) {
            let t = *by[alphabet.target(e).index()].choose(rng).expect("every vertex has a state");
            aut.add_edge(q, e, t);
        }
    }
    aut
}

/// A random expression of nesting depth at most `depth`; it need not be
/// well typed, in which case parts of it denote nothing.
pub fn random_expr(rng: &mut impl Rng, alphabet: &GraphAlphabet, depth: usize) -> RatExpr {
    let leaf = |rng: &mut dyn rand::RngCore| {
        let edges: Vec<_> = alphabet.edges().collect();
        match rng.gen_range(0..10) {
            0 => RatExpr::Empty,
            1 => {
                let vs: Vec<_> = alphabet.vertices().collect();
                RatExpr::id(alphabet.vertex_name(*vs.choose(rng).expect("nonempty alphabet")))
            }
            _ => match edges.choose(rng) {
                Some(e) => RatExpr::atom(alphabet.edge_name(*e)),
                None => RatExpr::Empty,
            },
        }
    };
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    // raw constructors keep the generated shape intact
    match rng.gen_range(0..3) {
        0 => RatExpr::Union(
            Box::new(random_expr(rng, alphabet, depth - 1)),
            Box::new(random_expr(rng, alphabet, depth - 1)),
        ),
        1 => RatExpr::Concat(
            Box::new(random_expr(rng, alphabet, depth - 1)),
            Box::new(random_expr(rng, alphabet, depth - 1)),
        ),
        _ => RatExpr::Plus(Box::new(random_expr(rng, alphabet, depth - 1))),
    }
}
