//! Automaton to expression by state elimination.
//!
//! The automaton is split into one copy per (initial, accepting) pair. In each
//! copy, every state other than the chosen endpoints is removed in turn; paths
//! through a removed state `q` become composite labels
//! `λ(e1) . (id:μ(q) + loops^+) . λ(e2)`. What is left is one state (when the
//! endpoints coincide) or two, which have closed forms.

use std::collections::{BTreeMap, BTreeSet};

use super::{RatError, RatExpr};
use crate::automaton::{Automaton, AutomatonError, Label};

/// Transition labels are expressions; at most one label per ordered state pair.
struct Generalized<'a> {
    aut: &'a Automaton,
    alive: BTreeSet<usize>,
    labels: BTreeMap<(usize, usize), RatExpr>,
}

impl Generalized<'_> {
    fn id(&self, q: usize) -> RatExpr {
        let v = self.aut.vertex_of(crate::automaton::StateId(q));
        RatExpr::id(self.aut.alphabet().vertex_name(v))
    }

    fn add(&mut self, p: usize, r: usize, e: RatExpr) {
        let merged = match self.labels.remove(&(p, r)) {
            Some(old) => RatExpr::union(old, e),
            None => e,
        };
        if merged != RatExpr::Empty {
            self.labels.insert((p, r), merged);
        }
    }

    /// `id:μ(q) + loops^+`, or `None` when `q` has no self-loop (the identity
    /// factor is then dropped, since labels into and out of `q` are typed by `μ(q)`).
    fn loop_factor(&self, q: usize) -> Option<RatExpr> {
        self.labels
            .get(&(q, q))
            .map(|l| RatExpr::union(self.id(q), RatExpr::plus(l.clone())))
    }

    fn preds(&self, q: usize) -> Vec<usize> {
        self.alive
            .iter()
            .copied()
            .filter(|&p| p != q && self.labels.contains_key(&(p, q)))
            .collect()
    }

    fn succs(&self, q: usize) -> Vec<usize> {
        self.alive
            .iter()
            .copied()
            .filter(|&r| r != q && self.labels.contains_key(&(q, r)))
            .collect()
    }

    fn remove(&mut self, q: usize) {
        let factor = self.loop_factor(q);
        let (preds, succs) = (self.preds(q), self.succs(q));
        for &p in &preds {
            for &r in &succs {
                let mut e = self.labels[&(p, q)].clone();
                if let Some(f) = &factor {
                    e = RatExpr::concat(e, f.clone());
                }
                e = RatExpr::concat(e, self.labels[&(q, r)].clone());
                self.add(p, r, e);
            }
        }
        self.alive.remove(&q);
        self.labels.retain(|(a, b), _| *a != q && *b != q);
    }

    /// Removable state minimizing in-degree × out-degree, ties by name.
    fn pick(&self, keep: [usize; 2]) -> Option<usize> {
        self.alive
            .iter()
            .copied()
            .filter(|q| !keep.contains(q))
            .min_by(|&a, &b| {
                let cost = |q| self.preds(q).len() * self.succs(q).len();
                cost(a)
                    .cmp(&cost(b))
                    .then_with(|| self.aut.state_name(crate::automaton::StateId(a)).cmp(self.aut.state_name(crate::automaton::StateId(b))))
            })
    }
}

fn closure(aut: &Automaton, start: usize, forward: bool) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(q) = stack.pop() {
        for t in aut.transitions() {
            let (from, to) = if forward {
                (t.source.0, t.target.0)
            } else {
                (t.target.0, t.source.0)
            };
            if from == q && seen.insert(to) {
                stack.push(to);
            }
        }
    }
    seen
}

fn single_pair(aut: &Automaton, init: usize, fin: usize) -> RatExpr {
    let alive: BTreeSet<usize> = closure(aut, init, true)
        .intersection(&closure(aut, fin, false))
        .copied()
        .collect();
    if alive.is_empty() {
        return RatExpr::Empty;
    }
    let mut parallel: BTreeMap<(usize, usize), BTreeSet<String>> = BTreeMap::new();
    for t in aut.transitions() {
        let (s, u) = (t.source.0, t.target.0);
        if let Label::Edge(e) = t.label {
            if alive.contains(&s) && alive.contains(&u) {
                parallel
                    .entry((s, u))
                    .or_default()
                    .insert(aut.alphabet().edge_name(e).to_string());
            }
        }
    }
    let labels = parallel
        .into_iter()
        .map(|(k, names)| {
            let e = names
                .into_iter()
                .map(RatExpr::Atom)
                .reduce(RatExpr::union)
                .expect("nonempty");
            (k, e)
        })
        .collect();
    let mut g = Generalized { aut, alive, labels };
    while let Some(q) = g.pick([init, fin]) {
        g.remove(q);
    }

    if init == fin {
        return match g.loop_factor(init) {
            Some(f) => f,
            None => g.id(init),
        };
    }
    let Some(forward) = g.labels.get(&(init, fin)).cloned() else {
        return RatExpr::Empty;
    };
    let around_init = g.loop_factor(init);
    let around_fin = g.loop_factor(fin);
    let with = |e: RatExpr, f: &Option<RatExpr>| match f {
        Some(f) => RatExpr::concat(e, f.clone()),
        None => e,
    };
    // forward leg: L12 . P2
    let leg = with(forward, &around_fin);
    let middle = match g.labels.get(&(fin, init)).cloned() {
        // cycle back to the initial state: L12 . P2 . L21 . P1
        Some(back) => {
            let cycle = with(RatExpr::concat(leg.clone(), back), &around_init);
            Some(RatExpr::union(g.id(init), RatExpr::plus(cycle)))
        }
        None => None,
    };
    let mut e = around_init.clone();
    for part in [middle, Some(leg)].into_iter().flatten() {
        e = Some(match e {
            Some(prev) => RatExpr::concat(prev, part),
            None => part,
        });
    }
    e.expect("the forward leg is always present")
}

/// A rational expression denoting `L(aut)`.
pub fn to_rational(aut: &Automaton) -> Result<RatExpr, RatError> {
    if aut.has_silent() {
        return Err(AutomatonError::SilentTransitions.into());
    }
    let mut out = RatExpr::Empty;
    for &i in aut.initial() {
        for &f in aut.accepting() {
            if aut.vertex_of(i) == aut.vertex_of(f) || i != f {
                out = RatExpr::union(out, single_pair(aut, i.0, f.0));
            }
        }
    }
    Ok(out)
}
