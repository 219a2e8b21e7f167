//! Brute-force bounded semantics.
//!
//! Everything here works on explicit finite sets of morphisms, enumerated up
//! to a length bound. The traversals are deliberately naive and share no code
//! with the automaton constructions, so they can referee them.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::{AlphabetError, GraphAlphabet, Morphism};
use crate::automaton::{Automaton, Label};
use crate::rational::RatExpr;

/// Largest supported length bound.
pub const MAX_BOUND: usize = 8;
/// Hard cap on the number of morphisms held during one enumeration.
pub const MAX_ELEMENTS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("length bound {0} exceeds the maximum of {MAX_BOUND}")]
    BoundTooLarge(usize),
    #[error("enumeration exceeded {MAX_ELEMENTS} elements")]
    TooManyElements,
    #[error("automaton has silent transitions")]
    SilentTransitions,
    #[error("languages are over different alphabets")]
    AlphabetMismatch,
    #[error("languages were computed under different bounds ({0} and {1})")]
    BoundMismatch(usize, usize),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

fn check_bound(maxlen: usize) -> Result<(), OracleError> {
    if maxlen > MAX_BOUND {
        Err(OracleError::BoundTooLarge(maxlen))
    } else {
        Ok(())
    }
}

fn check_size(n: usize) -> Result<(), OracleError> {
    if n > MAX_ELEMENTS {
        Err(OracleError::TooManyElements)
    } else {
        Ok(())
    }
}

/// A finite set of morphisms, all of length at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageSet {
    alphabet: Arc<GraphAlphabet>,
    bound: usize,
    members: BTreeSet<Morphism>,
}

impl LanguageSet {
    pub fn empty(alphabet: Arc<GraphAlphabet>, bound: usize) -> Self {
        LanguageSet {
            alphabet,
            bound,
            members: BTreeSet::new(),
        }
    }

    /// Builds a set, checking every member against the alphabet and bound.
    pub fn from_members(
        alphabet: Arc<GraphAlphabet>,
        bound: usize,
        members: impl IntoIterator<Item = Morphism>,
    ) -> Result<Self, OracleError> {
        let members: BTreeSet<Morphism> = members.into_iter().collect();
        for m in &members {
            alphabet.check_morphism(m)?;
            if m.len() > bound {
                return Err(OracleError::BoundTooLarge(m.len()));
            }
        }
        Ok(LanguageSet {
            alphabet,
            bound,
            members,
        })
    }

    /// Parses members given in word syntax.
    pub fn from_words(
        alphabet: Arc<GraphAlphabet>,
        bound: usize,
        words: &[&str],
    ) -> Result<Self, OracleError> {
        let members = words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_members(alphabet, bound, members)
    }

    pub fn alphabet(&self) -> &Arc<GraphAlphabet> {
        &self.alphabet
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn members(&self) -> &BTreeSet<Morphism> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Morphism) -> bool {
        self.members.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Morphism> {
        self.members.iter()
    }

    /// `d0(X)`.
    pub fn sources(&self) -> BTreeSet<crate::alphabet::VertexId> {
        self.members.iter().map(Morphism::source).collect()
    }

    /// `d1(X)`.
    pub fn targets(&self) -> BTreeSet<crate::alphabet::VertexId> {
        self.members.iter().map(Morphism::target).collect()
    }

    fn with_members(&self, members: BTreeSet<Morphism>) -> LanguageSet {
        LanguageSet {
            alphabet: self.alphabet.clone(),
            bound: self.bound,
            members,
        }
    }

    fn compatible(&self, other: &LanguageSet) -> Result<(), OracleError> {
        if !(Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet) {
            return Err(OracleError::AlphabetMismatch);
        }
        if self.bound != other.bound {
            return Err(OracleError::BoundMismatch(self.bound, other.bound));
        }
        Ok(())
    }

    pub fn union(&self, other: &LanguageSet) -> Result<LanguageSet, OracleError> {
        self.compatible(other)?;
        Ok(self.with_members(self.members.union(&other.members).cloned().collect()))
    }

    pub fn intersection(&self, other: &LanguageSet) -> Result<LanguageSet, OracleError> {
        self.compatible(other)?;
        Ok(self.with_members(self.members.intersection(&other.members).cloned().collect()))
    }

    pub fn difference(&self, other: &LanguageSet) -> Result<LanguageSet, OracleError> {
        self.compatible(other)?;
        Ok(self.with_members(self.members.difference(&other.members).cloned().collect()))
    }

    /// Typed concatenation `XY`, keeping only results within the bound.
    pub fn concat(&self, other: &LanguageSet) -> Result<LanguageSet, OracleError> {
        self.compatible(other)?;
        Ok(self.with_members(concat_sets(&self.members, &other.members, self.bound)?))
    }

    /// `X⁺` restricted to the bound: iterate `X ∪ X·acc` to a fixpoint.
    pub fn plus(&self) -> Result<LanguageSet, OracleError> {
        Ok(self.with_members(plus_set(&self.members, self.bound)?))
    }

    /// `w⁻¹X`. The result's bound shrinks by `|w|`.
    pub fn left_quotient(&self, w: &Morphism) -> Result<LanguageSet, OracleError> {
        self.alphabet.check_morphism(w)?;
        let bound = self.bound.saturating_sub(w.len());
        let members = self
            .members
            .iter()
            .filter_map(|x| x.strip_prefix(w))
            .collect();
        Ok(LanguageSet {
            alphabet: self.alphabet.clone(),
            bound,
            members,
        })
    }

    /// `Xw⁻¹`. The result's bound shrinks by `|w|`.
    pub fn right_quotient(&self, w: &Morphism) -> Result<LanguageSet, OracleError> {
        self.alphabet.check_morphism(w)?;
        let bound = self.bound.saturating_sub(w.len());
        let members = self
            .members
            .iter()
            .filter_map(|x| x.strip_suffix(w))
            .collect();
        Ok(LanguageSet {
            alphabet: self.alphabet.clone(),
            bound,
            members,
        })
    }

    /// Drops members longer than `bound`.
    pub fn truncate(&self, bound: usize) -> LanguageSet {
        LanguageSet {
            alphabet: self.alphabet.clone(),
            bound,
            members: self
                .members
                .iter()
                .filter(|m| m.len() <= bound)
                .cloned()
                .collect(),
        }
    }

    /// Raw edge words of the members, endpoint types forgotten.
    pub fn untyped_words(&self) -> BTreeSet<Vec<String>> {
        self.members
            .iter()
            .map(|m| {
                m.word()
                    .iter()
                    .map(|e| self.alphabet.edge_name(*e).to_string())
                    .collect()
            })
            .collect()
    }

    /// One member per line in word syntax, in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            out.push_str(&self.alphabet.format_word(m));
            out.push('\n');
        }
        out
    }
}

fn concat_sets(
    left: &BTreeSet<Morphism>,
    right: &BTreeSet<Morphism>,
    bound: usize,
) -> Result<BTreeSet<Morphism>, OracleError> {
    let mut by_source: HashMap<_, Vec<&Morphism>> = HashMap::new();
    for y in right {
        by_source.entry(y.source()).or_default().push(y);
    }
    let mut out = BTreeSet::new();
    for x in left {
        for y in by_source.get(&x.target()).into_iter().flatten() {
            if x.len() + y.len() <= bound {
                out.insert(x.compose(y).expect("endpoints checked"));
                check_size(out.len())?;
            }
        }
    }
    Ok(out)
}

fn plus_set(x: &BTreeSet<Morphism>, bound: usize) -> Result<BTreeSet<Morphism>, OracleError> {
    let mut acc = x.clone();
    loop {
        let mut next = acc.clone();
        next.extend(concat_sets(x, &acc, bound)?);
        check_size(next.len())?;
        if next.len() == acc.len() {
            return Ok(acc);
        }
        acc = next;
    }
}

/// All morphisms of length at most `maxlen`: identities plus walk labels.
pub fn enum_morphisms(alphabet: &Arc<GraphAlphabet>, maxlen: usize) -> Result<LanguageSet, OracleError> {
    check_bound(maxlen)?;
    let mut members: BTreeSet<Morphism> = alphabet.vertices().map(Morphism::identity).collect();
    let mut layer: Vec<Morphism> = members.iter().cloned().collect();
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for m in &layer {
            for &e in alphabet.outgoing(m.target()) {
                next.push(m.extended(e, alphabet.target(e)));
            }
        }
        check_size(members.len() + next.len())?;
        members.extend(next.iter().cloned());
        layer = next;
    }
    Ok(LanguageSet {
        alphabet: alphabet.clone(),
        bound: maxlen,
        members,
    })
}

/// Labels of accepting paths with at most `maxlen` transitions, by
/// breadth-first enumeration of `(label so far, current state)` pairs.
pub fn bounded_language(aut: &Automaton, maxlen: usize) -> Result<LanguageSet, OracleError> {
    check_bound(maxlen)?;
    let mut outgoing: Vec<Vec<(crate::alphabet::EdgeId, usize)>> = vec![Vec::new(); aut.state_count()];
    for t in aut.transitions() {
        match t.label {
            Label::Edge(e) => outgoing[t.source.0].push((e, t.target.0)),
            Label::Silent(_) => return Err(OracleError::SilentTransitions),
        }
    }
    let alphabet = aut.alphabet_arc();
    let accepting: HashSet<usize> = aut.accepting().iter().map(|q| q.0).collect();

    let mut frontier: HashSet<(Morphism, usize)> = aut
        .initial()
        .iter()
        .map(|q| (Morphism::identity(aut.vertex_of(*q)), q.0))
        .collect();
    let mut members = BTreeSet::new();
    for step in 0..=maxlen {
        for (m, q) in &frontier {
            if accepting.contains(q) {
                members.insert(m.clone());
            }
        }
        if step == maxlen {
            break;
        }
        let mut next = HashSet::new();
        for (m, q) in &frontier {
            for &(e, r) in &outgoing[*q] {
                next.insert((m.extended(e, alphabet.target(e)), r));
            }
        }
        check_size(members.len() + next.len())?;
        frontier = next;
    }
    Ok(LanguageSet {
        alphabet: alphabet.clone(),
        bound: maxlen,
        members,
    })
}

/// Set semantics of an expression, cut off at `maxlen`.
pub fn bounded_rat(
    alphabet: &Arc<GraphAlphabet>,
    expr: &RatExpr,
    maxlen: usize,
) -> Result<LanguageSet, OracleError> {
    check_bound(maxlen)?;
    Ok(LanguageSet {
        alphabet: alphabet.clone(),
        bound: maxlen,
        members: rat_members(alphabet, expr, maxlen)?,
    })
}

fn rat_members(
    alphabet: &GraphAlphabet,
    expr: &RatExpr,
    maxlen: usize,
) -> Result<BTreeSet<Morphism>, OracleError> {
    Ok(match expr {
        RatExpr::Empty => BTreeSet::new(),
        RatExpr::Atom(name) => {
            let e = alphabet.lookup_edge(name)?;
            if maxlen == 0 {
                BTreeSet::new()
            } else {
                BTreeSet::from([alphabet.letter(e)])
            }
        }
        RatExpr::Id(name) => BTreeSet::from([Morphism::identity(alphabet.lookup_vertex(name)?)]),
        RatExpr::Union(l, r) => {
            let mut s = rat_members(alphabet, l, maxlen)?;
            s.extend(rat_members(alphabet, r, maxlen)?);
            s
        }
        RatExpr::Concat(l, r) => concat_sets(
            &rat_members(alphabet, l, maxlen)?,
            &rat_members(alphabet, r, maxlen)?,
            maxlen,
        )?,
        RatExpr::Plus(x) => plus_set(&rat_members(alphabet, x, maxlen)?, maxlen)?,
    })
}

/// Outcome of comparing two bounded languages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    /// Up to ten members only in the left language.
    pub only_left: Vec<Morphism>,
    /// Up to ten members only in the right language.
    pub only_right: Vec<Morphism>,
}

impl Comparison {
    pub fn report(&self, alphabet: &GraphAlphabet) -> String {
        if self.equal {
            return "languages are equal\n".to_string();
        }
        let mut out = String::new();
        for m in &self.only_left {
            let _ = writeln!(out, "only in left:  {}", alphabet.format_word(m));
        }
        for m in &self.only_right {
            let _ = writeln!(out, "only in right: {}", alphabet.format_word(m));
        }
        out
    }
}

pub fn bounded_equal(left: &LanguageSet, right: &LanguageSet) -> Result<Comparison, OracleError> {
    left.compatible(right)?;
    let only_left: Vec<Morphism> = left.members.difference(&right.members).take(10).cloned().collect();
    let only_right: Vec<Morphism> = right.members.difference(&left.members).take(10).cloned().collect();
    Ok(Comparison {
        equal: only_left.is_empty() && only_right.is_empty(),
        only_left,
        only_right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{gen_builtin, Builtin};
    use crate::rational::parse_expr;

    fn lock() -> Arc<GraphAlphabet> {
        Arc::new(gen_builtin(Builtin::Lock))
    }

    /// Walk counts by adjacency-matrix powers.
    fn walk_count(a: &GraphAlphabet, maxlen: usize) -> usize {
        let n = a.vertex_count();
        let mut adj = vec![vec![0usize; n]; n];
        for e in a.edges() {
            adj[a.source(e).index()][a.target(e).index()] += 1;
        }
        let mut power: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
        let mut total = n;
        for _ in 0..maxlen {
            let mut next = vec![vec![0; n]; n];
            for i in 0..n {
                for k in 0..n {
                    for j in 0..n {
                        next[i][j] += power[i][k] * adj[k][j];
                    }
                }
            }
            power = next;
            total += power.iter().flatten().sum::<usize>();
        }
        total
    }

    #[test]
    fn enum_lock_sizes() {
        let a = lock();
        assert_eq!(enum_morphisms(&a, 0).unwrap().len(), 2);
        assert_eq!(enum_morphisms(&a, 1).unwrap().len(), 6);
        assert_eq!(enum_morphisms(&a, 2).unwrap().len(), 14);
        for n in 0..=6 {
            assert_eq!(enum_morphisms(&a, n).unwrap().len(), walk_count(&a, n));
        }
        let t = Arc::new(gen_builtin(Builtin::Types));
        for n in 0..=6 {
            assert_eq!(enum_morphisms(&t, n).unwrap().len(), walk_count(&t, n));
        }
    }

    #[test]
    fn bound_and_size_guards() {
        let a = lock();
        assert_eq!(enum_morphisms(&a, 9), Err(OracleError::BoundTooLarge(9)));
        // 10 self-loops: 10^8 walks of length 8 trips the element cap.
        let loops: Vec<(String, String, String)> =
            (0..10).map(|i| (format!("e{i}"), "v".into(), "v".into())).collect();
        let big = Arc::new(GraphAlphabet::new(["v".to_string()], loops).unwrap());
        assert_eq!(enum_morphisms(&big, 8), Err(OracleError::TooManyElements));
    }

    #[test]
    fn universal_language_is_everything() {
        let a = lock();
        let u = Automaton::universal(a.clone());
        for n in 0..=5 {
            assert_eq!(bounded_language(&u, n).unwrap(), enum_morphisms(&a, n).unwrap());
        }
    }

    #[test]
    fn rational_semantics() {
        let a = lock();
        let e = parse_expr(&a, "P . b^+").unwrap();
        let l = bounded_rat(&a, &e, 3).unwrap();
        let want = LanguageSet::from_words(a.clone(), 3, &["unsafe : P b : safe", "unsafe : P b b : safe"]).unwrap();
        assert_eq!(l, want);

        let zero = parse_expr(&a, "0").unwrap();
        assert!(bounded_rat(&a, &zero, 5).unwrap().is_empty());

        let e = parse_expr(&a, "id:safe + b").unwrap();
        let l = bounded_rat(&a, &e, 1).unwrap();
        let want = LanguageSet::from_words(a.clone(), 1, &["safe : : safe", "safe : b : safe"]).unwrap();
        assert_eq!(l, want);
    }

    #[test]
    fn plus_is_closed_under_one_more_concatenation() {
        let a = lock();
        let e = parse_expr(&a, "a + P . V").unwrap();
        let x = bounded_rat(&a, &e, 6).unwrap();
        let p = x.plus().unwrap();
        assert!(x.members().is_subset(p.members()));
        let more = x.concat(&p).unwrap();
        assert!(more.members().is_subset(p.members()));
    }

    #[test]
    fn comparison_reports_witnesses() {
        let a = lock();
        let p = LanguageSet::from_words(a.clone(), 2, &["unsafe : P : safe"]).unwrap();
        let v = LanguageSet::from_words(a.clone(), 2, &["safe : V : unsafe"]).unwrap();
        assert!(bounded_equal(&p, &p).unwrap().equal);
        let c = bounded_equal(&p, &v).unwrap();
        assert!(!c.equal);
        assert_eq!(c.only_left, p.members().iter().cloned().collect::<Vec<_>>());
        assert_eq!(c.only_right, v.members().iter().cloned().collect::<Vec<_>>());
        assert!(c.report(&a).contains("only in left:  unsafe : P : safe"));
        let p3 = p.truncate(3);
        assert_eq!(bounded_equal(&p, &p3), Err(OracleError::BoundMismatch(2, 3)));
    }

    #[test]
    fn quotients_of_sets() {
        let a = lock();
        let x = LanguageSet::from_words(a.clone(), 3, &["unsafe : P b : safe", "unsafe : a P : safe"]).unwrap();
        let p = a.walk(&["P"]).unwrap();
        let q = x.left_quotient(&p).unwrap();
        assert_eq!(q.bound(), 2);
        assert_eq!(a.format_word(q.iter().next().unwrap()), "safe : b : safe");
        let r = x.right_quotient(&p).unwrap();
        assert_eq!(a.format_word(r.iter().next().unwrap()), "unsafe : a : unsafe");
        let id = a.identity("safe").unwrap();
        assert_eq!(x.right_quotient(&id).unwrap().len(), 2);
        assert_eq!(x.left_quotient(&id).unwrap().len(), 0);
    }
}
