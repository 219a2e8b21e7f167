//! The `.galph` text format.
//!
//! ```text
//! galph 1
//! # comment
//! vertex unsafe
//! vertex safe
//! edge P unsafe safe
//! ```

use super::{AlphabetError, GraphAlphabet};

pub const HEADER: &str = "galph 1";

/// Strips a `#` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

pub fn parse_alphabet(text: &str) -> Result<GraphAlphabet, AlphabetError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, l)) if l.split_whitespace().eq(HEADER.split_whitespace()) => {}
        Some((n, l)) => {
            return Err(AlphabetError::Syntax(format!("expected `{HEADER}`, found `{l}`")).at_line(n))
        }
        None => return Err(AlphabetError::Syntax(format!("missing `{HEADER}` header")).at_line(1)),
    }

    let mut vertices: Vec<(usize, String)> = Vec::new();
    let mut edges: Vec<(usize, String, String, String)> = Vec::new();
    for (n, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["vertex", name] => vertices.push((n, name.to_string())),
            ["edge", name, src, dst] => {
                edges.push((n, name.to_string(), src.to_string(), dst.to_string()))
            }
            _ => {
                return Err(
                    AlphabetError::Syntax(format!("unrecognized line `{line}`")).at_line(n)
                )
            }
        }
    }

    // Per-line checks first so errors carry the offending line.
    let mut seen = std::collections::HashSet::new();
    for (n, v) in &vertices {
        if !super::is_valid_name(v) {
            return Err(AlphabetError::InvalidName(v.clone()).at_line(*n));
        }
        if !seen.insert(v.as_str()) {
            return Err(AlphabetError::DuplicateVertex(v.clone()).at_line(*n));
        }
    }
    let mut seen_edges = std::collections::HashSet::new();
    for (n, name, src, dst) in &edges {
        if !super::is_valid_name(name) {
            return Err(AlphabetError::InvalidName(name.clone()).at_line(*n));
        }
        if !seen_edges.insert(name.as_str()) {
            return Err(AlphabetError::DuplicateEdge(name.clone()).at_line(*n));
        }
        for v in [src, dst] {
            if !seen.contains(v.as_str()) {
                return Err(AlphabetError::UndeclaredVertex {
                    edge: name.clone(),
                    vertex: v.clone(),
                }
                .at_line(*n));
            }
        }
    }

    GraphAlphabet::new(
        vertices.into_iter().map(|(_, v)| v),
        edges.into_iter().map(|(_, e, s, t)| (e, s, t)),
    )
}

/// Canonical form: header, sorted vertex lines, sorted edge lines.
pub fn serialize_alphabet(a: &GraphAlphabet) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    write_body(a, &mut out);
    out
}

pub(crate) fn write_body(a: &GraphAlphabet, out: &mut String) {
    for v in a.vertices() {
        out.push_str("vertex ");
        out.push_str(a.vertex_name(v));
        out.push('\n');
    }
    for e in a.edges() {
        let def = a.edge(e);
        out.push_str(&format!(
            "edge {} {} {}\n",
            def.name,
            a.vertex_name(def.source),
            a.vertex_name(def.target)
        ));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{gen_builtin, Builtin};

    const LOCK: &str = "\
galph 1
# locking and releasing a resource
vertex unsafe
vertex safe
edge a unsafe unsafe
edge P unsafe safe   # lock
edge V safe unsafe   # release
edge b safe safe
";

    #[test]
    fn parses_lock_figure() {
        let a = parse_alphabet(LOCK).unwrap();
        assert_eq!(a.vertex_count(), 2);
        assert_eq!(a.edge_count(), 4);
        assert_eq!(a, gen_builtin(Builtin::Lock));
    }

    #[test]
    fn serializes_lock_canonically() {
        let text = serialize_alphabet(&gen_builtin(Builtin::Lock));
        assert_eq!(
            text,
            "galph 1\nvertex safe\nvertex unsafe\nedge P unsafe safe\nedge V safe unsafe\nedge a unsafe unsafe\nedge b safe safe\n"
        );
        assert_eq!(text.lines().filter(|l| l.starts_with("vertex")).count(), 2);
        assert_eq!(text.lines().filter(|l| l.starts_with("edge")).count(), 4);
    }

    #[test]
    fn empty_document() {
        let a = parse_alphabet("galph 1\n").unwrap();
        assert_eq!(a.vertex_count(), 0);
        assert_eq!(a.edge_count(), 0);
        assert_eq!(serialize_alphabet(&a), "galph 1\n");
    }

    #[test]
    fn undeclared_vertex_reports_line() {
        let err = parse_alphabet("galph 1\nvertex v\nedge x u v\n").unwrap_err();
        assert_eq!(
            err,
            AlphabetError::UndeclaredVertex {
                edge: "x".into(),
                vertex: "u".into()
            }
            .at_line(3)
        );
        assert!(err.to_string().contains("undeclared vertex"));
        assert!(err.to_string().starts_with("line 3"));
    }

    #[test]
    fn syntax_errors_report_lines() {
        let err = parse_alphabet("galph 2\n").unwrap_err();
        assert!(err.to_string().starts_with("line 1"));
        let err = parse_alphabet("galph 1\nvertex a\nvertex\n").unwrap_err();
        assert!(err.to_string().starts_with("line 3"), "{err}");
        let err = parse_alphabet("").unwrap_err();
        assert!(matches!(err, AlphabetError::AtLine { line: 1, .. }));
        let err = parse_alphabet("galph 1\nvertex a\nvertex a\n").unwrap_err();
        assert_eq!(err, AlphabetError::DuplicateVertex("a".into()).at_line(3));
    }
}
