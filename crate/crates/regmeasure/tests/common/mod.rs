//! Shared helpers for the integration suites: a seeded generator, random
//! instances, and independent oracles (regex derivatives, residual counting).

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use regmeasure::measure::{FixedLengthSet, GdAtom, GdExpr};
use regmeasure::monoid::{build_group, GroupPreset, RecognizingMorphism};
use regmeasure::{Alphabet, Caps, Dfa, RegexAst};

/// SplitMix64: tiny, deterministic, good enough for test-case generation.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn flip(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }
}

/// A random complete DFA over `{a, b}` with up to `max_states` states.
pub fn random_dfa(rng: &mut Rng, max_states: usize) -> Dfa {
    let n = 1 + rng.below(max_states);
    let alphabet = Alphabet::ab();
    let mut delta = Vec::with_capacity(n * 2);
    for _ in 0..n * 2 {
        delta.push(rng.below(n));
    }
    let accepting: BTreeSet<usize> = (0..n).filter(|_| rng.flip()).collect();
    Dfa::new(alphabet, n, 0, accepting, delta).expect("random table is valid")
}

/// A random group language: a preset group with a random accepting subset,
/// realized on the group's right Cayley automaton.
pub fn random_group_language(rng: &mut Rng) -> (RecognizingMorphism, Dfa) {
    let preset = match rng.below(17) {
        0..=10 => GroupPreset::Cyclic(2 + rng.below(11)),
        11..=15 => GroupPreset::Dihedral(4 + 2 * rng.below(5)),
        _ => GroupPreset::Symmetric3,
    };
    let phi = build_group(preset).expect("preset groups build");
    let n = phi.monoid().size();
    let accepting: BTreeSet<usize> = (0..n).filter(|_| rng.flip()).collect();
    let dfa = phi.cayley_dfa(accepting);
    (phi, dfa)
}

/// A random regular expression over `{a, b}` of bounded depth.
pub fn random_regex(rng: &mut Rng, depth: usize) -> RegexAst {
    if depth == 0 {
        return match rng.below(8) {
            0 => RegexAst::Epsilon,
            1 => RegexAst::Empty,
            x if x % 2 == 0 => RegexAst::Letter('a'),
            _ => RegexAst::Letter('b'),
        };
    }
    match rng.below(6) {
        0 | 1 => RegexAst::Union(
            Box::new(random_regex(rng, depth - 1)),
            Box::new(random_regex(rng, depth - 1)),
        ),
        2 | 3 => RegexAst::Concat(
            Box::new(random_regex(rng, depth - 1)),
            Box::new(random_regex(rng, depth - 1)),
        ),
        4 => RegexAst::Star(Box::new(random_regex(rng, depth - 1))),
        _ => random_regex(rng, 0),
    }
}

/// A random generalized-definite certificate with short explicit atoms.
pub fn random_gd_expr(rng: &mut Rng, depth: usize) -> GdExpr {
    if depth == 0 {
        let word = |rng: &mut Rng, len: usize| -> String {
            (0..len).map(|_| if rng.flip() { 'a' } else { 'b' }).collect()
        };
        return match rng.below(3) {
            0 => {
                let len = 1 + rng.below(2);
                let mut words = BTreeSet::new();
                for _ in 0..1 + rng.below(2) {
                    words.insert(word(rng, len));
                }
                GdExpr::Atom(GdAtom::Prefix(
                    FixedLengthSet::explicit(len, words).expect("equal lengths"),
                ))
            }
            1 => {
                let len = 1 + rng.below(2);
                let mut words = BTreeSet::new();
                for _ in 0..1 + rng.below(2) {
                    words.insert(word(rng, len));
                }
                GdExpr::Atom(GdAtom::Suffix(
                    FixedLengthSet::explicit(len, words).expect("equal lengths"),
                ))
            }
            _ => {
                let mut words = BTreeSet::new();
                for _ in 0..rng.below(4) {
                    let len = rng.below(4);
                    words.insert(word(rng, len));
                }
                GdExpr::finite(words)
            }
        };
    }
    match rng.below(5) {
        0 => GdExpr::complement(random_gd_expr(rng, depth - 1)),
        1 | 2 => GdExpr::and(
            random_gd_expr(rng, depth - 1),
            random_gd_expr(rng, depth - 1),
        ),
        _ => GdExpr::or(
            random_gd_expr(rng, depth - 1),
            random_gd_expr(rng, depth - 1),
        ),
    }
}

/// All words over the alphabet up to the given length, in length-lex order.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for c in alphabet.symbols() {
                let mut w2 = w.clone();
                w2.push(*c);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

// Brzozowski derivatives with simplifying constructors: an independent
// membership oracle for regular expressions.

fn nullable(ast: &RegexAst) -> bool {
    match ast {
        RegexAst::Empty | RegexAst::Letter(_) => false,
        RegexAst::Epsilon | RegexAst::Star(_) => true,
        RegexAst::Union(a, b) => nullable(a) || nullable(b),
        RegexAst::Concat(a, b) => nullable(a) && nullable(b),
    }
}

fn smart_union(a: RegexAst, b: RegexAst) -> RegexAst {
    match (a, b) {
        (RegexAst::Empty, r) => r,
        (l, RegexAst::Empty) => l,
        (l, r) => {
            if l == r {
                l
            } else {
                RegexAst::Union(Box::new(l), Box::new(r))
            }
        }
    }
}

fn smart_concat(a: RegexAst, b: RegexAst) -> RegexAst {
    match (a, b) {
        (RegexAst::Empty, _) | (_, RegexAst::Empty) => RegexAst::Empty,
        (RegexAst::Epsilon, r) => r,
        (l, RegexAst::Epsilon) => l,
        (l, r) => RegexAst::Concat(Box::new(l), Box::new(r)),
    }
}

fn derivative(ast: &RegexAst, c: char) -> RegexAst {
    match ast {
        RegexAst::Empty | RegexAst::Epsilon => RegexAst::Empty,
        RegexAst::Letter(l) => {
            if *l == c {
                RegexAst::Epsilon
            } else {
                RegexAst::Empty
            }
        }
        RegexAst::Union(a, b) => smart_union(derivative(a, c), derivative(b, c)),
        RegexAst::Concat(a, b) => {
            let head = smart_concat(derivative(a, c), (**b).clone());
            if nullable(a) {
                smart_union(head, derivative(b, c))
            } else {
                head
            }
        }
        RegexAst::Star(a) => smart_concat(derivative(a, c), RegexAst::Star(a.clone())),
    }
}

/// Derivative-oracle membership.
pub fn regex_matches(ast: &RegexAst, word: &str) -> bool {
    let mut current = ast.clone();
    for c in word.chars() {
        current = derivative(&current, c);
    }
    nullable(&current)
}

/// Walk the word trie once, deriving incrementally, and compare the oracle
/// against the DFA on every word of length at most `max_len`.
pub fn assert_regex_agrees(ast: &RegexAst, dfa: &Dfa, max_len: usize) {
    fn rec(ast: &RegexAst, dfa: &Dfa, state: usize, remaining: usize, path: &mut String) {
        assert_eq!(
            nullable(ast),
            dfa.accepting().contains(&state),
            "disagreement on '{path}'"
        );
        if remaining == 0 {
            return;
        }
        for (i, c) in dfa.alphabet().symbols().to_vec().into_iter().enumerate() {
            path.push(c);
            rec(&derivative(ast, c), dfa, dfa.step(state, i), remaining - 1, path);
            path.pop();
        }
    }
    let mut path = String::new();
    rec(ast, dfa, dfa.initial(), max_len, &mut path);
}

/// Brute-force Myhill-Nerode class count: distinct membership signatures of
/// prefixes (up to `prefix_max`) against all suffixes up to `suffix_max`,
/// using only word membership.
pub fn residual_class_count(d: &Dfa, prefix_max: usize, suffix_max: usize) -> usize {
    let alphabet = d.alphabet().clone();
    let prefixes = all_words(&alphabet, prefix_max);
    let suffixes = all_words(&alphabet, suffix_max);
    let mut signatures: HashSet<Vec<bool>> = HashSet::new();
    for p in &prefixes {
        let signature: Vec<bool> = suffixes
            .iter()
            .map(|s| {
                let mut w = p.clone();
                w.push_str(s);
                d.accepts(&w).expect("in-alphabet word")
            })
            .collect();
        signatures.insert(signature);
    }
    signatures.len()
}

/// Compare a DFA against a predicate on every word up to `max_len`.
pub fn assert_language_agrees_by_enumeration(
    d: &Dfa,
    max_len: usize,
    predicate: impl Fn(&str) -> bool,
) {
    for w in all_words(d.alphabet(), max_len) {
        assert_eq!(
            d.accepts(&w).expect("alphabet word"),
            predicate(&w),
            "word '{w}'"
        );
    }
}

/// Compile helper used across suites.
pub fn compile(pattern: &str) -> Dfa {
    let ab = Alphabet::ab();
    regmeasure::compile_regex(&regmeasure::parse_regex(pattern, &ab).unwrap(), &ab).unwrap()
}

/// Syntactic-monoid-size-capped aperiodic language sampler: rejection-samples
/// random DFAs until one has an aperiodic syntactic monoid of modest size.
pub fn random_aperiodic_dfa(rng: &mut Rng, max_states: usize) -> Dfa {
    let caps = Caps {
        monoid_size: 2000,
        ..Caps::standard()
    };
    loop {
        let d = random_dfa(rng, max_states);
        let Ok(phi) = regmeasure::monoid::syntactic_monoid_with_caps(&d, &caps) else {
            continue;
        };
        if phi.monoid().is_aperiodic() {
            return d;
        }
    }
}
