//! Syntactic certificates of generalized definiteness.
//!
//! A [`GdExpr`] is a Boolean tree over three atom kinds: prefix tests
//! `⋃_{u∈S} uA*`, suffix tests `⋃_{v∈S} A*v` (S a set of words of one fixed
//! length), and explicit finite sets. Every denoted language is generalized
//! definite by construction.
//!
//! Prefix/suffix sets may be kept symbolic: a [`SetMembers::Tracked`] set
//! holds element-action tables of a finite monoid and a target set, denoting
//! `{u ∈ A^ℓ : action(u) ∈ targets}`. Compilation walks the action tables
//! level by level and never enumerates `A^ℓ`.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::Alphabet;
use crate::automata::Dfa;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Boolean tree over generalized-definite atoms.
#[derive(Debug, Clone)]
pub enum GdExpr {
    Atom(GdAtom),
    Not(Box<GdExpr>),
    And(Box<GdExpr>, Box<GdExpr>),
    Or(Box<GdExpr>, Box<GdExpr>),
}

/// The three atom kinds of generalized definiteness.
#[derive(Debug, Clone)]
pub enum GdAtom {
    /// `⋃_{u ∈ S} uA*` for a fixed-length set `S`.
    Prefix(FixedLengthSet),
    /// `⋃_{v ∈ S} A*v` for a fixed-length set `S`.
    Suffix(FixedLengthSet),
    /// An explicit finite language.
    Finite(BTreeSet<String>),
}

/// A set of words of one fixed length.
#[derive(Debug, Clone)]
pub struct FixedLengthSet {
    len: usize,
    members: SetMembers,
}

#[derive(Debug, Clone)]
pub enum SetMembers {
    Explicit(BTreeSet<String>),
    Tracked(ElementTracker),
}

/// `{u : fold(u) ∈ targets}` evaluated through per-letter element actions;
/// the word set is never materialized.
#[derive(Debug, Clone)]
pub struct ElementTracker {
    identity: usize,
    /// Per letter, the right action on element ids.
    letter_action: Vec<Vec<usize>>,
    targets: BTreeSet<usize>,
}

impl ElementTracker {
    pub fn new(
        identity: usize,
        letter_action: Vec<Vec<usize>>,
        targets: BTreeSet<usize>,
    ) -> Result<Self> {
        if letter_action.is_empty() {
            return Err(Error::invalid("tracker needs at least one letter action"));
        }
        let n = letter_action[0].len();
        if identity >= n
            || letter_action.iter().any(|m| m.len() != n)
            || letter_action
                .iter()
                .any(|m| m.iter().any(|&x| x >= n))
            || targets.iter().any(|&t| t >= n)
        {
            return Err(Error::invalid("tracker tables are inconsistent"));
        }
        Ok(ElementTracker {
            identity,
            letter_action,
            targets,
        })
    }

    fn element_count(&self) -> usize {
        self.letter_action[0].len()
    }

    fn fold(&self, from: usize, letters: &[u8]) -> usize {
        letters
            .iter()
            .fold(from, |x, &a| self.letter_action[a as usize][x])
    }

    fn hits(&self, letters: &[u8]) -> bool {
        self.targets.contains(&self.fold(self.identity, letters))
    }
}

impl FixedLengthSet {
    pub fn explicit(len: usize, words: BTreeSet<String>) -> Result<Self> {
        if let Some(w) = words.iter().find(|w| w.chars().count() != len) {
            return Err(Error::invalid(format!(
                "word '{w}' does not have the declared length {len}"
            )));
        }
        Ok(FixedLengthSet {
            len,
            members: SetMembers::Explicit(words),
        })
    }

    pub fn tracked(len: usize, tracker: ElementTracker) -> Self {
        FixedLengthSet {
            len,
            members: SetMembers::Tracked(tracker),
        }
    }

    /// The shared word length of the set's members.
    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn is_empty_set(&self) -> bool {
        match &self.members {
            SetMembers::Explicit(words) => words.is_empty(),
            SetMembers::Tracked(t) => t.targets.is_empty(),
        }
    }

    pub fn members(&self) -> &SetMembers {
        &self.members
    }

    fn contains_indices(&self, letters: &[u8], alphabet: &Alphabet) -> bool {
        if letters.len() != self.len {
            return false;
        }
        match &self.members {
            SetMembers::Explicit(words) => words.contains(&alphabet.decode(letters)),
            SetMembers::Tracked(t) => t.hits(letters),
        }
    }
}

impl GdExpr {
    pub fn atom(a: GdAtom) -> GdExpr {
        GdExpr::Atom(a)
    }

    pub fn finite(words: BTreeSet<String>) -> GdExpr {
        GdExpr::Atom(GdAtom::Finite(words))
    }

    pub fn complement(e: GdExpr) -> GdExpr {
        GdExpr::Not(Box::new(e))
    }

    pub fn and(a: GdExpr, b: GdExpr) -> GdExpr {
        GdExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: GdExpr, b: GdExpr) -> GdExpr {
        GdExpr::Or(Box::new(a), Box::new(b))
    }

    /// Union of a list of expressions; the empty union is the empty language.
    pub fn union_all(mut exprs: Vec<GdExpr>) -> GdExpr {
        match exprs.pop() {
            None => GdExpr::finite(BTreeSet::new()),
            Some(last) => exprs.into_iter().rev().fold(last, |acc, e| GdExpr::or(e, acc)),
        }
    }

    /// Membership by direct denotation, independent of compilation.
    pub fn contains(&self, word: &str, alphabet: &Alphabet) -> Result<bool> {
        let letters = alphabet.encode(word)?;
        Ok(self.contains_indices(&letters, alphabet))
    }

    fn contains_indices(&self, letters: &[u8], alphabet: &Alphabet) -> bool {
        match self {
            GdExpr::Atom(GdAtom::Prefix(set)) => {
                letters.len() >= set.len && set.contains_indices(&letters[..set.len], alphabet)
            }
            GdExpr::Atom(GdAtom::Suffix(set)) => {
                letters.len() >= set.len
                    && set.contains_indices(&letters[letters.len() - set.len..], alphabet)
            }
            GdExpr::Atom(GdAtom::Finite(words)) => words.contains(&alphabet.decode(letters)),
            GdExpr::Not(e) => !e.contains_indices(letters, alphabet),
            GdExpr::And(a, b) => {
                a.contains_indices(letters, alphabet) && b.contains_indices(letters, alphabet)
            }
            GdExpr::Or(a, b) => {
                a.contains_indices(letters, alphabet) || b.contains_indices(letters, alphabet)
            }
        }
    }

    /// Compile to a complete DFA whose language equals the denotation.
    pub fn compile(&self, alphabet: &Alphabet, caps: &Caps) -> Result<Dfa> {
        let d = match self {
            GdExpr::Atom(GdAtom::Prefix(set)) => compile_prefix(set, alphabet, caps)?,
            GdExpr::Atom(GdAtom::Suffix(set)) => compile_suffix(set, alphabet, caps)?,
            GdExpr::Atom(GdAtom::Finite(words)) => compile_finite(words, alphabet, caps)?,
            GdExpr::Not(e) => e.compile(alphabet, caps)?.complement(),
            GdExpr::And(a, b) => a
                .compile(alphabet, caps)?
                .combine_with_caps(&b.compile(alphabet, caps)?, crate::automata::BoolOp::And, caps)?,
            GdExpr::Or(a, b) => a
                .compile(alphabet, caps)?
                .combine_with_caps(&b.compile(alphabet, caps)?, crate::automata::BoolOp::Or, caps)?,
        };
        Ok(d.minimize())
    }
}

/// Trie children table plus the member-node set.
type Trie = (Vec<Vec<Option<usize>>>, BTreeSet<usize>);

/// Shared trie construction.
fn build_trie(words: &BTreeSet<String>, alphabet: &Alphabet, caps: &Caps) -> Result<Trie> {
    if words.len() > caps.finite_atom_words {
        return Err(Error::cap(
            "finite atom words",
            format!("limit {}", caps.finite_atom_words),
        ));
    }
    let k = alphabet.len();
    let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
    let mut members: BTreeSet<usize> = BTreeSet::new();
    for word in words {
        let letters = alphabet.encode(word)?;
        let mut node = 0usize;
        for &a in &letters {
            node = match children[node][a as usize] {
                Some(c) => c,
                None => {
                    let id = children.len();
                    if id >= caps.product_states {
                        return Err(Error::cap(
                            "trie states",
                            format!("limit {}", caps.product_states),
                        ));
                    }
                    children.push(vec![None; k]);
                    children[node][a as usize] = Some(id);
                    id
                }
            };
        }
        members.insert(node);
    }
    Ok((children, members))
}

/// Trie of the word set, accepting exactly at member nodes, completed with a
/// rejecting sink.
fn compile_finite(words: &BTreeSet<String>, alphabet: &Alphabet, caps: &Caps) -> Result<Dfa> {
    let k = alphabet.len();
    let (children, members) = build_trie(words, alphabet, caps)?;
    let sink = children.len();
    let mut delta = Vec::with_capacity((sink + 1) * k);
    for row in &children {
        for child in row {
            delta.push(child.unwrap_or(sink));
        }
    }
    for _ in 0..k {
        delta.push(sink);
    }
    Dfa::new(alphabet.clone(), sink + 1, 0, members, delta)
}

fn compile_prefix(set: &FixedLengthSet, alphabet: &Alphabet, caps: &Caps) -> Result<Dfa> {
    let k = alphabet.len();
    match &set.members {
        SetMembers::Explicit(words) => {
            // Trie of S whose member nodes become accept-everything: all
            // members share the fixed length, so member nodes are exactly
            // the depth-ℓ survivors and everything after them is accepted.
            let (children, members) = build_trie(words, alphabet, caps)?;
            let reject = children.len();
            let accept = reject + 1;
            let mut delta = Vec::with_capacity((accept + 1) * k);
            for (node, row) in children.iter().enumerate() {
                for child in row {
                    if members.contains(&node) {
                        delta.push(accept);
                    } else {
                        delta.push(child.unwrap_or(reject));
                    }
                }
            }
            for _ in 0..k {
                delta.push(reject);
            }
            for _ in 0..k {
                delta.push(accept);
            }
            let mut accepting = members;
            accepting.insert(accept);
            Dfa::new(alphabet.clone(), accept + 1, 0, accepting, delta)
        }
        SetMembers::Tracked(t) => {
            if set.len == 0 {
                return Ok(constant_dfa(alphabet, t.targets.contains(&t.identity)));
            }
            // Layered automaton: (depth, element) for depth < ℓ, then two sinks.
            let n = t.element_count();
            let layers = set.len;
            let accept = layers * n;
            let reject = accept + 1;
            let state_count = reject + 1;
            if state_count > caps.product_states {
                return Err(Error::cap(
                    "prefix tracker states",
                    format!("limit {}", caps.product_states),
                ));
            }
            let mut delta = Vec::with_capacity(state_count * k);
            for depth in 0..layers {
                for x in 0..n {
                    for a in 0..k {
                        let next = t.letter_action[a][x];
                        if depth + 1 < layers {
                            delta.push((depth + 1) * n + next);
                        } else if t.targets.contains(&next) {
                            delta.push(accept);
                        } else {
                            delta.push(reject);
                        }
                    }
                }
            }
            for _ in 0..k {
                delta.push(accept);
            }
            for _ in 0..k {
                delta.push(reject);
            }
            Dfa::new(
                alphabet.clone(),
                state_count,
                t.identity,
                BTreeSet::from([accept]),
                delta,
            )
        }
    }
}

fn compile_suffix(set: &FixedLengthSet, alphabet: &Alphabet, caps: &Caps) -> Result<Dfa> {
    match &set.members {
        SetMembers::Explicit(words) => {
            // NFA: a self-looping start guesses where the suffix begins.
            let mut total_states = 1usize;
            for w in words {
                total_states += w.chars().count() + 1;
            }
            let mut nfa = crate::automata::Nfa::with_states(total_states);
            for a in 0..alphabet.len() {
                nfa.add_step(0, a as u8, 0);
            }
            let mut next_free = 1usize;
            for word in words {
                let letters = alphabet.encode(word)?;
                nfa.add_eps(0, next_free);
                for (i, &a) in letters.iter().enumerate() {
                    nfa.add_step(next_free + i, a, next_free + i + 1);
                }
                nfa.add_final(next_free + letters.len());
                next_free += letters.len() + 1;
            }
            nfa.set_start(0);
            nfa.determinize(alphabet, caps)
        }
        SetMembers::Tracked(t) => {
            if set.len == 0 {
                return Ok(constant_dfa(alphabet, t.targets.contains(&t.identity)));
            }
            // Track, for each window size i ≤ ℓ, the element of the last i
            // letters. Appending a letter shifts the tuple.
            let k = alphabet.len();
            let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut tuples: Vec<Vec<usize>> = Vec::new();
            let start: Vec<usize> = Vec::new();
            index.insert(start.clone(), 0);
            tuples.push(start);
            let mut delta: Vec<usize> = Vec::new();
            let mut head = 0usize;
            while head < tuples.len() {
                for a in 0..k {
                    let current = &tuples[head];
                    let mut next = Vec::with_capacity((current.len() + 1).min(set.len));
                    next.push(t.letter_action[a][t.identity]);
                    for &m in current.iter().take(set.len - 1) {
                        next.push(t.letter_action[a][m]);
                    }
                    let id = match index.get(&next) {
                        Some(&id) => id,
                        None => {
                            let id = tuples.len();
                            if id >= caps.product_states {
                                return Err(Error::cap(
                                    "suffix tracker states",
                                    format!("limit {}", caps.product_states),
                                ));
                            }
                            index.insert(next.clone(), id);
                            tuples.push(next);
                            id
                        }
                    };
                    delta.push(id);
                }
                head += 1;
            }
            let accepting = tuples
                .iter()
                .enumerate()
                .filter(|(_, tuple)| {
                    tuple.len() == set.len && t.targets.contains(&tuple[set.len - 1])
                })
                .map(|(i, _)| i)
                .collect();
            Dfa::new(alphabet.clone(), tuples.len(), 0, accepting, delta)
        }
    }
}

fn constant_dfa(alphabet: &Alphabet, accept_all: bool) -> Dfa {
    let accepting = if accept_all {
        BTreeSet::from([0])
    } else {
        BTreeSet::new()
    };
    Dfa::new(
        alphabet.clone(),
        1,
        0,
        accepting,
        vec![0; alphabet.len()],
    )
    .expect("one-state automaton is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::ab()
    }

    fn check_against_denotation(expr: &GdExpr, max_len: usize) {
        let caps = Caps::standard();
        let dfa = expr.compile(&ab(), &caps).unwrap();
        let all = crate::fixtures::universal().unwrap();
        for w in all.enumerate_words(max_len).unwrap() {
            assert_eq!(
                dfa.accepts(&w).unwrap(),
                expr.contains(&w, &ab()).unwrap(),
                "word '{w}'"
            );
        }
    }

    #[test]
    fn explicit_prefix_atom_matches_denotation() {
        let set = FixedLengthSet::explicit(2, BTreeSet::from(["ab".into(), "ba".into()])).unwrap();
        check_against_denotation(&GdExpr::Atom(GdAtom::Prefix(set)), 6);
    }

    #[test]
    fn explicit_suffix_atom_matches_denotation() {
        let set = FixedLengthSet::explicit(2, BTreeSet::from(["ab".into()])).unwrap();
        check_against_denotation(&GdExpr::Atom(GdAtom::Suffix(set)), 6);
    }

    #[test]
    fn finite_atom_matches_denotation() {
        let words = BTreeSet::from(["".into(), "a".into(), "bab".into()]);
        check_against_denotation(&GdExpr::finite(words), 6);
    }

    #[test]
    fn boolean_structure_matches_denotation() {
        let p = FixedLengthSet::explicit(1, BTreeSet::from(["a".into()])).unwrap();
        let s = FixedLengthSet::explicit(1, BTreeSet::from(["b".into()])).unwrap();
        let expr = GdExpr::and(
            GdExpr::Atom(GdAtom::Prefix(p)),
            GdExpr::complement(GdExpr::Atom(GdAtom::Suffix(s))),
        );
        check_against_denotation(&expr, 6);
    }

    #[test]
    fn tracked_sets_match_explicit_sets() {
        // Track parity of word length: action x -> 1-x for both letters.
        let tracker = ElementTracker::new(
            0,
            vec![vec![1, 0], vec![1, 0]],
            BTreeSet::from([0]),
        )
        .unwrap();
        // Length-2 prefixes with even... every length-2 word folds to 0.
        let tracked = GdExpr::Atom(GdAtom::Prefix(FixedLengthSet::tracked(2, tracker.clone())));
        let explicit = GdExpr::Atom(GdAtom::Prefix(
            FixedLengthSet::explicit(
                2,
                BTreeSet::from(["aa".into(), "ab".into(), "ba".into(), "bb".into()]),
            )
            .unwrap(),
        ));
        let caps = Caps::standard();
        let a = tracked.compile(&ab(), &caps).unwrap();
        let b = explicit.compile(&ab(), &caps).unwrap();
        assert!(a.language_equal(&b).unwrap());
        check_against_denotation(&tracked, 5);
        let suffix = GdExpr::Atom(GdAtom::Suffix(FixedLengthSet::tracked(2, tracker)));
        check_against_denotation(&suffix, 5);
    }

    #[test]
    fn empty_union_is_empty_language() {
        let expr = GdExpr::union_all(vec![]);
        let d = expr.compile(&ab(), &Caps::standard()).unwrap();
        assert!(d.is_empty_language());
    }
}
