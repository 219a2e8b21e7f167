//! Untyped projection: the automaton seen over the one-point graph.

use std::collections::{BTreeSet, HashMap};

use super::{Automaton, AutomatonError, Label};
use crate::alphabet;

/// A standard NFA over edge names, without state types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntypedNfa {
    pub states: Vec<String>,
    pub initial: BTreeSet<usize>,
    pub accepting: BTreeSet<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}

impl UntypedNfa {
    pub(crate) fn from_automaton(aut: &Automaton) -> Self {
        UntypedNfa {
            states: aut.states().iter().map(|s| s.name.clone()).collect(),
            initial: aut.initial().iter().map(|q| q.0).collect(),
            accepting: aut.accepting().iter().map(|q| q.0).collect(),
            transitions: aut
                .transitions()
                .iter()
                .filter_map(|t| match t.label {
                    Label::Edge(e) => Some((
                        t.source.0,
                        aut.alphabet().edge_name(e).to_string(),
                        t.target.0,
                    )),
                    Label::Silent(_) => None,
                })
                .collect(),
        }
    }

    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let mut current = self.initial.clone();
        for letter in word {
            current = self
                .transitions
                .iter()
                .filter(|(s, a, _)| a == letter.as_ref() && current.contains(s))
                .map(|(_, _, t)| *t)
                .collect();
        }
        current.iter().any(|q| self.accepting.contains(q))
    }
}

const HEADER: &str = "nfa 1";

pub fn serialize_nfa(nfa: &UntypedNfa) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for (i, name) in nfa.states.iter().enumerate() {
        out.push_str("state ");
        out.push_str(name);
        if nfa.initial.contains(&i) {
            out.push_str(" init");
        }
        if nfa.accepting.contains(&i) {
            out.push_str(" final");
        }
        out.push('\n');
    }
    for (s, a, t) in &nfa.transitions {
        out.push_str(&format!("trans {a} {} {}\n", nfa.states[*s], nfa.states[*t]));
    }
    out
}

pub fn parse_nfa(text: &str) -> Result<UntypedNfa, AutomatonError> {
    let err = |line, message: String| AutomatonError::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, alphabet::text_strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        Some((n, l)) => return Err(err(n, format!("expected `{HEADER}`, found `{l}`"))),
        None => return Err(err(1, format!("missing `{HEADER}` header"))),
    }
    let mut nfa = UntypedNfa {
        states: Vec::new(),
        initial: BTreeSet::new(),
        accepting: BTreeSet::new(),
        transitions: Vec::new(),
    };
    let mut by_name = HashMap::new();
    for (n, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["state", name, flags @ ..] => {
                let q = nfa.states.len();
                if by_name.insert(name.to_string(), q).is_some() {
                    return Err(err(n, format!("duplicate state `{name}`")));
                }
                nfa.states.push(name.to_string());
                for f in flags {
                    match *f {
                        "init" => nfa.initial.insert(q),
                        "final" => nfa.accepting.insert(q),
                        other => return Err(err(n, format!("unknown state flag `{other}`"))),
                    };
                }
            }
            ["trans", a, s, t] => {
                let look = |x: &str| {
                    by_name
                        .get(x)
                        .copied()
                        .ok_or_else(|| err(n, format!("unknown state `{x}`")))
                };
                nfa.transitions.push((look(s)?, a.to_string(), look(t)?));
            }
            _ => return Err(err(n, format!("unrecognized line `{line}`"))),
        }
    }
    Ok(nfa)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::alphabet::{gen_builtin, Builtin};

    #[test]
    fn universal_projection_accepts_walk_labels() {
        let u = Automaton::universal(Arc::new(gen_builtin(Builtin::Lock)));
        let nfa = u.untyped().unwrap();
        assert!(nfa.accepts(&["a", "P", "b"]));
        assert!(nfa.accepts::<&str>(&[]));
        assert!(!nfa.accepts(&["a", "b"]));
    }

    #[test]
    fn nfa_text_round_trip() {
        let u = Automaton::universal(Arc::new(gen_builtin(Builtin::Lock)));
        let nfa = u.untyped().unwrap();
        let text = serialize_nfa(&nfa);
        assert!(text.starts_with("nfa 1\n"));
        assert_eq!(parse_nfa(&text).unwrap(), nfa);
        assert!(parse_nfa("nfa 1\ntrans a x y\n").is_err());
    }
}
