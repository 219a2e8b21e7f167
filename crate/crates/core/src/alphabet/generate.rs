//! Built-in example alphabets and depth-truncated starter/terminator alphabets.

use std::collections::BTreeSet;
use std::str::FromStr;

use super::{AlphabetError, GraphAlphabet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Locking and releasing a resource: `unsafe`, `safe`; `a`, `P`, `V`, `b`.
    Lock,
    /// Some function types: `int`, `uint`, `float`; `abs`, `neg`, `sqrt`, `round`.
    Types,
}

impl FromStr for Builtin {
    type Err = AlphabetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lock" => Ok(Builtin::Lock),
            "types" => Ok(Builtin::Types),
            other => Err(AlphabetError::UnknownBuiltin(other.to_string())),
        }
    }
}

pub fn gen_builtin(which: Builtin) -> GraphAlphabet {
    let built = match which {
        Builtin::Lock => GraphAlphabet::new(
            ["unsafe", "safe"],
            [
                ("a", "unsafe", "unsafe"),
                ("P", "unsafe", "safe"),
                ("V", "safe", "unsafe"),
                ("b", "safe", "safe"),
            ],
        ),
        Builtin::Types => GraphAlphabet::new(
            ["int", "uint", "float"],
            [
                ("abs", "int", "uint"),
                ("neg", "uint", "int"),
                ("sqrt", "uint", "float"),
                ("round", "float", "int"),
            ],
        ),
    };
    built.expect("builtin alphabets are well formed")
}

/// Vertex name of a sequence of running events: `⟨⟩`, `⟨a⟩`, `⟨b,a⟩`.
pub fn st_vertex_name<S: AsRef<str>>(running: &[S]) -> String {
    let inner: Vec<&str> = running.iter().map(AsRef::as_ref).collect();
    format!("⟨{}⟩", inner.join(","))
}

fn is_valid_event(e: &str) -> bool {
    !e.is_empty()
        && e
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '+' | '-'))
}

/// Starters and terminators over `events`, truncated to at most `depth`
/// concurrently running events.
///
/// Vertices are ordered sequences of events. From a vertex `w` with
/// `|w| < depth`, the starter `S<p>.<e>@<w>` inserts event `e` at position `p`;
/// from a nonempty `w`, the terminator `T<p>.<e>@<w>` removes the event `e`
/// found at position `p`. In edge names the source sequence is written with
/// its events joined by `,`.
pub fn gen_st<S: AsRef<str>>(events: &[S], depth: usize) -> Result<GraphAlphabet, AlphabetError> {
    let events: BTreeSet<&str> = events.iter().map(AsRef::as_ref).collect();
    if let Some(bad) = events.iter().find(|e| !is_valid_event(e)) {
        return Err(AlphabetError::InvalidEvent(bad.to_string()));
    }
    let events: Vec<&str> = events.into_iter().collect();

    let mut layers: Vec<Vec<Vec<&str>>> = vec![vec![Vec::new()]];
    for k in 1..=depth {
        let next = layers[k - 1]
            .iter()
            .flat_map(|w| {
                events.iter().map(move |e| {
                    let mut w = w.clone();
                    w.push(*e);
                    w
                })
            })
            .collect();
        layers.push(next);
    }

    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for w in layers.iter().flatten() {
        let name = st_vertex_name(w);
        let flat = w.join(",");
        if w.len() < depth {
            for e in &events {
                for p in 0..=w.len() {
                    let mut to = w.clone();
                    to.insert(p, e);
                    edges.push((format!("S{p}.{e}@{flat}"), name.clone(), st_vertex_name(&to)));
                }
            }
        }
        for p in 0..w.len() {
            let mut to = w.clone();
            let e = to.remove(p);
            edges.push((format!("T{p}.{e}@{flat}"), name.clone(), st_vertex_name(&to)));
        }
        vertices.push(name);
    }
    GraphAlphabet::new(vertices, edges)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    #[test]
    fn builtins() {
        let lock = gen_builtin(Builtin::Lock);
        assert_eq!((lock.vertex_count(), lock.edge_count()), (2, 4));
        let types = gen_builtin(Builtin::Types);
        assert_eq!((types.vertex_count(), types.edge_count()), (3, 4));
        assert_eq!(
            "zoo".parse::<Builtin>(),
            Err(AlphabetError::UnknownBuiltin("zoo".into()))
        );
    }

    #[test]
    fn st_depth_one_is_the_inner_ring() {
        let a = gen_st(&["a", "b"], 1).unwrap();
        let names: Vec<&str> = a.vertices().map(|v| a.vertex_name(v)).collect();
        assert_eq!(names, vec!["⟨a⟩", "⟨b⟩", "⟨⟩"]);
        assert_eq!(a.edge_count(), 4);
        let empty = a.lookup_vertex("⟨⟩").unwrap();
        assert_eq!(a.outgoing(empty).len(), 2);
        for v in ["⟨a⟩", "⟨b⟩"] {
            let out = a.outgoing(a.lookup_vertex(v).unwrap());
            assert_eq!(out.len(), 1);
            assert_eq!(a.target(out[0]), empty);
        }
        let start_a = a.lookup_edge("S0.a@").unwrap();
        assert_eq!(a.vertex_name(a.target(start_a)), "⟨a⟩");
        let end_b = a.lookup_edge("T0.b@b").unwrap();
        assert_eq!(a.vertex_name(a.source(end_b)), "⟨b⟩");
    }

    #[test]
    fn st_depth_zero() {
        let a = gen_st(&["a", "b"], 0).unwrap();
        assert_eq!((a.vertex_count(), a.edge_count()), (1, 0));
    }

    #[test]
    fn st_depth_two_counts() {
        // Brute force: every sequence of length ≤ 2, every insertion and deletion.
        let ev = ["a", "b"];
        let mut seqs: Vec<Vec<&str>> = vec![vec![]];
        for x in ev {
            seqs.push(vec![x]);
            for y in ev {
                seqs.push(vec![x, y]);
            }
        }
        let mut expected_edges = 0;
        for s in &seqs {
            if s.len() < 2 {
                expected_edges += ev.len() * (s.len() + 1);
            }
            expected_edges += s.len();
        }
        let a = gen_st(&ev, 2).unwrap();
        assert_eq!(a.vertex_count(), seqs.len());
        assert_eq!(a.vertex_count(), 7);
        assert_eq!(a.edge_count(), expected_edges);
        for v in ["⟨a⟩", "⟨b⟩"] {
            let starters = a
                .outgoing(a.lookup_vertex(v).unwrap())
                .iter()
                .filter(|e| a.edge_name(**e).starts_with('S'))
                .count();
            assert_eq!(starters, 4);
        }
        assert!(a.edge_id("S1.a@b").is_some());
        assert_eq!(
            a.vertex_name(a.target(a.lookup_edge("S1.a@b").unwrap())),
            "⟨b,a⟩"
        );
    }

    #[test]
    fn st_edges_change_length_by_one_and_are_bounded_per_pair() {
        let events = ["a", "b", "c"];
        for depth in 0..=3 {
            let a = gen_st(&events, depth).unwrap();
            let len = |v| a.vertex_name(v).chars().filter(|c| *c == ',').count()
                + usize::from(a.vertex_name(v) != "⟨⟩");
            let mut per_pair: HashMap<_, usize> = HashMap::new();
            for e in a.edges() {
                let (s, t) = (a.source(e), a.target(e));
                assert_eq!(len(s).abs_diff(len(t)), 1);
                *per_pair.entry((s, t)).or_default() += 1;
            }
            assert!(per_pair.values().all(|&n| n <= events.len() * (depth + 1)));
        }
    }

    #[test]
    fn st_rejects_bad_events() {
        assert!(gen_st(&["a@"], 1).is_err());
        assert!(gen_st(&[""], 1).is_err());
    }
}
