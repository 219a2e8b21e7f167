use super::{Automaton, Label};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering. Nodes are labeled `name:vertex`; initial states get an
/// arrow from an invisible point, accepting states are double circles.
pub(super) fn to_dot(aut: &Automaton) -> String {
    let a = aut.alphabet();
    let mut out = String::from("digraph automaton {\n");
    for q in aut.state_ids() {
        let s = aut.state(q);
        let shape = if aut.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!(
            "  n{} [label={}, shape={shape}];\n",
            q.0,
            quote(&format!("{}:{}", s.name, a.vertex_name(s.vertex)))
        ));
        if aut.is_initial(q) {
            out.push_str(&format!(
                "  start{0} [shape=point, label=\"\"];\n  start{0} -> n{0};\n",
                q.0
            ));
        }
    }
    for t in aut.transitions() {
        let style = match t.label {
            Label::Edge(_) => "",
            Label::Silent(_) => ", style=dashed",
        };
        out.push_str(&format!(
            "  n{} -> n{} [label={}{style}];\n",
            t.source.0,
            t.target.0,
            quote(&aut.label_name(t.label))
        ));
    }
    out.push_str("}\n");
    out
}
