//! Complete deterministic finite automata and their Boolean algebra.
//!
//! Every [`Dfa`] is total: the transition function is defined for each
//! (state, letter) pair. Completeness is what makes the density and monoid
//! computations downstream well defined, so it is enforced at construction
//! and preserved by every operation here.

mod minimize;
mod parse;
mod regex;

pub use parse::{parse_dfa, serialize_dfa};
pub use regex::{affix_language, compile_regex, parse_regex, RegexAst};

pub(crate) use regex::Nfa;

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A complete deterministic finite automaton over a declared alphabet.
///
/// States are `0..state_count`; `delta` is stored row-major as
/// `delta[state * |A| + letter]`. When `minimal` is set the automaton is the
/// canonical minimal one: states are numbered by breadth-first reachability
/// from the initial state, letters taken in alphabet order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    state_count: usize,
    initial: usize,
    accepting: BTreeSet<usize>,
    delta: Vec<usize>,
    minimal: bool,
}

/// Boolean combinations supported by [`Dfa::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Minus,
    Xor,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Minus => a && !b,
            BoolOp::Xor => a != b,
        }
    }
}

impl Dfa {
    /// Build and validate a DFA. `delta` must hold `state_count * |A|` entries.
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initial: usize,
        accepting: BTreeSet<usize>,
        delta: Vec<usize>,
    ) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::invalid("a DFA needs at least one state"));
        }
        if initial >= state_count {
            return Err(Error::invalid(format!(
                "initial state {initial} out of range (states: {state_count})"
            )));
        }
        if let Some(&q) = accepting.iter().find(|&&q| q >= state_count) {
            return Err(Error::invalid(format!(
                "accepting state {q} out of range (states: {state_count})"
            )));
        }
        if delta.len() != state_count * alphabet.len() {
            return Err(Error::invalid(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                state_count * alphabet.len()
            )));
        }
        if let Some(&q) = delta.iter().find(|&&q| q >= state_count) {
            return Err(Error::invalid(format!(
                "transition target {q} out of range (states: {state_count})"
            )));
        }
        Ok(Dfa {
            alphabet,
            state_count,
            initial,
            accepting,
            delta,
            minimal: false,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.delta[state * self.alphabet.len() + letter]
    }

    /// Run the automaton on letter indices starting from `state`.
    pub fn run_indices(&self, state: usize, word: &[u8]) -> usize {
        word.iter()
            .fold(state, |q, &a| self.step(q, a as usize))
    }

    pub fn accepts_indices(&self, word: &[u8]) -> bool {
        self.accepting
            .contains(&self.run_indices(self.initial, word))
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepts_indices(&self.alphabet.encode(word)?))
    }

    /// The transformation a word induces on the state set.
    pub fn word_action(&self, word: &[u8]) -> Vec<usize> {
        (0..self.state_count)
            .map(|q| self.run_indices(q, word))
            .collect()
    }

    /// Flip the accepting set; the language becomes its complement.
    pub fn complement(&self) -> Dfa {
        let accepting = (0..self.state_count)
            .filter(|q| !self.accepting.contains(q))
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            state_count: self.state_count,
            initial: self.initial,
            accepting,
            delta: self.delta.clone(),
            minimal: false,
        }
    }

    /// Product construction for the Boolean combination of two languages.
    /// Only the part reachable from the initial pair is kept.
    pub fn combine(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        self.combine_with_caps(other, op, &Caps::standard())
    }

    pub fn combine_with_caps(&self, other: &Dfa, op: BoolOp, caps: &Caps) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "{} vs {}",
                self.alphabet, other.alphabet
            )));
        }
        let k = self.alphabet.len();
        let mut index = std::collections::HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut delta: Vec<usize> = Vec::new();
        let start = (self.initial, other.initial);
        index.insert(start, 0usize);
        pairs.push(start);
        let mut head = 0;
        while head < pairs.len() {
            let (p, q) = pairs[head];
            for a in 0..k {
                let target = (self.step(p, a), other.step(q, a));
                let next = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = pairs.len();
                        if id >= caps.product_states {
                            return Err(Error::cap(
                                "product states",
                                format!("limit {}", caps.product_states),
                            ));
                        }
                        index.insert(target, id);
                        pairs.push(target);
                        id
                    }
                };
                delta.push(next);
            }
            head += 1;
        }
        let accepting = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(p, q))| {
                op.apply(self.accepting.contains(&p), other.accepting.contains(&q))
            })
            .map(|(i, _)| i)
            .collect();
        Dfa::new(self.alphabet.clone(), pairs.len(), 0, accepting, delta)
    }

    /// Two-sided quotient: accepts `{w : u w v ∈ L}`.
    pub fn quotient(&self, u: &str, v: &str) -> Result<Dfa> {
        let u = self.alphabet.encode(u)?;
        let v = self.alphabet.encode(v)?;
        let initial = self.run_indices(self.initial, &u);
        let accepting = (0..self.state_count)
            .filter(|&q| self.accepting.contains(&self.run_indices(q, &v)))
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            state_count: self.state_count,
            initial,
            accepting,
            delta: self.delta.clone(),
            minimal: false,
        })
    }

    /// Exact `|L ∩ A^k|` by dynamic programming over states.
    pub fn count_words(&self, k: usize) -> BigUint {
        let mut counts = vec![BigUint::zero(); self.state_count];
        counts[self.initial] = BigUint::from(1u32);
        for _ in 0..k {
            let mut next = vec![BigUint::zero(); self.state_count];
            for (q, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for a in 0..self.alphabet.len() {
                    let t = self.step(q, a);
                    next[t] += c;
                }
            }
            counts = next;
        }
        self.accepting
            .iter()
            .fold(BigUint::zero(), |acc, q| acc + &counts[*q])
    }

    /// All accepted words of length at most `max_len`, in
    /// length-then-lexicographic order (lexicographic by alphabet order).
    pub fn enumerate_words(&self, max_len: usize) -> Result<Vec<String>> {
        self.enumerate_words_with_caps(max_len, &Caps::standard())
    }

    pub fn enumerate_words_with_caps(&self, max_len: usize, caps: &Caps) -> Result<Vec<String>> {
        if max_len > caps.enum_max_len {
            return Err(Error::cap(
                "enumeration length",
                format!("max_len {} exceeds limit {}", max_len, caps.enum_max_len),
            ));
        }
        // Distance from each state to the nearest accepting state, used to
        // prune branches that cannot accept within the remaining budget.
        let dist = self.distance_to_accepting();
        let mut out: Vec<String> = Vec::new();
        let mut word: Vec<u8> = Vec::new();
        for len in 0..=max_len {
            self.enumerate_rec(self.initial, len, &dist, &mut word, &mut out, caps)?;
        }
        Ok(out)
    }

    fn enumerate_rec(
        &self,
        state: usize,
        remaining: usize,
        dist: &[usize],
        word: &mut Vec<u8>,
        out: &mut Vec<String>,
        caps: &Caps,
    ) -> Result<()> {
        if dist[state] > remaining {
            return Ok(());
        }
        if remaining == 0 {
            if self.accepting.contains(&state) {
                if out.len() >= caps.enum_words {
                    return Err(Error::cap(
                        "enumerated words",
                        format!("limit {}", caps.enum_words),
                    ));
                }
                out.push(self.alphabet.decode(word));
            }
            return Ok(());
        }
        for a in 0..self.alphabet.len() {
            word.push(a as u8);
            self.enumerate_rec(self.step(state, a), remaining - 1, dist, word, out, caps)?;
            word.pop();
        }
        Ok(())
    }

    fn distance_to_accepting(&self) -> Vec<usize> {
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.state_count];
        for q in 0..self.state_count {
            for a in 0..self.alphabet.len() {
                rev[self.step(q, a)].push(q);
            }
        }
        let mut dist = vec![usize::MAX; self.state_count];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &q in &self.accepting {
            dist[q] = 0;
            queue.push_back(q);
        }
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if dist[p] == usize::MAX {
                    dist[p] = dist[q] + 1;
                    queue.push_back(p);
                }
            }
        }
        dist
    }

    /// True iff no accepting state is reachable from the initial state.
    pub fn is_empty_language(&self) -> bool {
        let mut seen = vec![false; self.state_count];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            if self.accepting.contains(&q) {
                return false;
            }
            for a in 0..self.alphabet.len() {
                let t = self.step(q, a);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        true
    }

    /// Language equality via symmetric-difference emptiness.
    pub fn language_equal(&self, other: &Dfa) -> Result<bool> {
        Ok(self.combine(other, BoolOp::Xor)?.is_empty_language())
    }

    /// States reachable from the initial state, in BFS order (letters in
    /// alphabet order). The canonical numbering used after minimization.
    pub(crate) fn reachable_in_bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.state_count);
        let mut seen = vec![false; self.state_count];
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for a in 0..self.alphabet.len() {
                let t = self.step(q, a);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }
}

/// The finite language of all words strictly shorter than `n`.
pub fn words_shorter_than(alphabet: &Alphabet, n: usize) -> Dfa {
    // n+1 counting states plus a rejecting sink.
    let k = alphabet.len();
    let states = n + 2;
    let sink = n + 1;
    let mut delta = Vec::with_capacity(states * k);
    for q in 0..states {
        let target = if q < n { q + 1 } else { sink };
        for _ in 0..k {
            delta.push(target);
        }
    }
    let accepting = (0..n).collect();
    Dfa::new(alphabet.clone(), states, 0, accepting, delta).expect("counter automaton is valid")
}
