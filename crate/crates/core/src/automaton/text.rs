//! The `.gaut` text format.
//!
//! ```text
//! gaut 1
//! use lock.galph          # or inline `vertex` / `edge` lines
//! state q0 unsafe init
//! state q1 safe final
//! trans P q0 q1
//! trans @safe q1 q1       # silent transition on `safe`
//! ```

use std::collections::HashMap;
use std::sync::Arc;

use super::{Automaton, AutomatonError, Label, StateId};
use crate::alphabet::{self, GraphAlphabet};

pub const HEADER: &str = "gaut 1";

fn parse_err(line: usize, message: impl Into<String>) -> AutomatonError {
    AutomatonError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a self-contained `.gaut` document; `use` lines are rejected.
pub fn parse_automaton(text: &str) -> Result<Automaton, AutomatonError> {
    parse_automaton_with(text, |path| {
        Err(format!("cannot resolve `use {path}` without a file context"))
    })
}

/// Parses a `.gaut` document, resolving `use <path>` through `resolve`.
pub fn parse_automaton_with<F>(text: &str, mut resolve: F) -> Result<Automaton, AutomatonError>
where
    F: FnMut(&str) -> Result<GraphAlphabet, String>,
{
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, alphabet::text_strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        Some((n, l)) => return Err(parse_err(n, format!("expected `{HEADER}`, found `{l}`"))),
        None => return Err(parse_err(1, format!("missing `{HEADER}` header"))),
    }

    let mut used: Option<(usize, GraphAlphabet)> = None;
    let mut alphabet_lines = String::from("galph 1\n");
    let mut inline_first: Option<usize> = None;
    let mut states: Vec<(usize, Vec<String>)> = Vec::new();
    let mut transitions: Vec<(usize, [String; 3])> = Vec::new();

    for (n, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["use", path] => {
                if used.is_some() {
                    return Err(parse_err(n, "more than one `use` line"));
                }
                let a = resolve(path).map_err(|m| parse_err(n, m))?;
                used = Some((n, a));
            }
            ["vertex", ..] | ["edge", ..] => {
                inline_first.get_or_insert(n);
                // keep line numbers aligned with the original document
                while alphabet_lines.lines().count() < n - 1 {
                    alphabet_lines.push('\n');
                }
                alphabet_lines.push_str(line);
                alphabet_lines.push('\n');
            }
            ["state", rest @ ..] if rest.len() >= 2 => {
                states.push((n, rest.iter().map(|s| s.to_string()).collect()))
            }
            ["trans", label, src, dst] => transitions.push((
                n,
                [label.to_string(), src.to_string(), dst.to_string()],
            )),
            _ => return Err(parse_err(n, format!("unrecognized line `{line}`"))),
        }
    }

    let alphabet = match (used, inline_first) {
        (Some(_), Some(n)) => {
            return Err(parse_err(n, "inline alphabet lines cannot be combined with `use`"))
        }
        (Some((_, a)), None) => a,
        (None, _) => alphabet::parse_alphabet(&alphabet_lines).map_err(|e| match e {
            alphabet::AlphabetError::AtLine { line, source } => parse_err(line, source.to_string()),
            other => parse_err(1, other.to_string()),
        })?,
    };
    let alphabet = Arc::new(alphabet);

    let mut aut = Automaton::new(alphabet.clone());
    let mut by_name: HashMap<String, StateId> = HashMap::new();
    for (n, fields) in states {
        let name = &fields[0];
        let vertex = alphabet
            .vertex_id(&fields[1])
            .ok_or_else(|| parse_err(n, format!("unknown vertex `{}`", fields[1])))?;
        if by_name.contains_key(name) {
            return Err(parse_err(n, format!("duplicate state `{name}`")));
        }
        let q = aut.add_state(name.clone(), vertex);
        by_name.insert(name.clone(), q);
        for flag in &fields[2..] {
            match flag.as_str() {
                "init" => aut.set_initial(q, true),
                "final" => aut.set_accepting(q, true),
                other => return Err(parse_err(n, format!("unknown state flag `{other}`"))),
            }
        }
    }
    for (n, [label, src, dst]) in transitions {
        let label = match label.strip_prefix('@') {
            Some(v) => Label::Silent(
                alphabet
                    .vertex_id(v)
                    .ok_or_else(|| parse_err(n, format!("unknown vertex `{v}`")))?,
            ),
            None => Label::Edge(
                alphabet
                    .edge_id(&label)
                    .ok_or_else(|| parse_err(n, format!("unknown edge `{label}`")))?,
            ),
        };
        let state = |s: &str| {
            by_name
                .get(s)
                .copied()
                .ok_or_else(|| parse_err(n, format!("unknown state `{s}`")))
        };
        aut.add_transition(state(&src)?, label, state(&dst)?);
    }
    Ok(aut)
}

/// Serializes with an inline alphabet; states and transitions in index order.
pub fn serialize_automaton(aut: &Automaton) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    alphabet::text_write_body(aut.alphabet(), &mut out);
    for q in aut.state_ids() {
        let s = aut.state(q);
        out.push_str(&format!("state {} {}", s.name, aut.alphabet().vertex_name(s.vertex)));
        if aut.is_initial(q) {
            out.push_str(" init");
        }
        if aut.is_accepting(q) {
            out.push_str(" final");
        }
        out.push('\n');
    }
    for t in aut.transitions() {
        out.push_str(&format!(
            "trans {} {} {}\n",
            aut.label_name(t.label),
            aut.state_name(t.source),
            aut.state_name(t.target)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{gen_builtin, serialize_alphabet, Builtin};

    const P_AUT: &str = "\
gaut 1
vertex unsafe
vertex safe
edge a unsafe unsafe
edge P unsafe safe
edge V safe unsafe
edge b safe safe
state q0 unsafe init
state q1 safe final
trans P q0 q1
trans @safe q1 q1
";

    #[test]
    fn round_trip_inline() {
        let aut = parse_automaton(P_AUT).unwrap();
        assert_eq!(aut.state_count(), 2);
        assert!(aut.has_silent());
        assert!(aut.is_valid());
        let again = parse_automaton(&serialize_automaton(&aut)).unwrap();
        assert_eq!(again, aut);
    }

    #[test]
    fn use_line_resolves_alphabet() {
        let text = "gaut 1\nuse lock.galph\nstate q unsafe init final\ntrans a q q\n";
        let aut = parse_automaton_with(text, |p| {
            assert_eq!(p, "lock.galph");
            alphabet::parse_alphabet(&serialize_alphabet(&gen_builtin(Builtin::Lock)))
                .map_err(|e| e.to_string())
        })
        .unwrap();
        assert_eq!(aut.alphabet().edge_count(), 4);
        assert!(parse_automaton(text).is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("gaut 1\nvertex u\nstate q v\n", 3),
            ("gaut 1\nvertex u\nstate q u\ntrans x q q\n", 4),
            ("gaut 1\nvertex u\nedge x u u\nstate q u\ntrans x q r\n", 5),
            ("gaut 1\nvertex u\nstate q u init maybe\n", 3),
            ("gaut 1\nvertex u\nstate q u\nstate q u\n", 4),
            ("gaut 1\nvertex u\nedge x u w\n", 3),
            ("gaut 2\n", 1),
            ("gaut 1\nbogus line\n", 2),
        ];
        for (text, line) in cases {
            match parse_automaton(text) {
                Err(AutomatonError::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
