//! Finite monoids presented by generator actions.
//!
//! A [`FiniteMonoid`] is generated by the letter actions of a DFA (or by a
//! group preset). Elements are discovered by breadth-first closure over the
//! generators in alphabet order, so element ids — and the shortest generating
//! word stored for each element — are stable across runs: id order equals
//! length-then-lexicographic order of shortest generating words.
//!
//! Multiplication is word-indexed: `x · y` folds the stored shortest word of
//! `y` through the right-generator maps starting at `x`. This keeps memory at
//! `O(|M| · |A|)` instead of `O(|M|²)` and is associative by construction
//! since the generator maps come from one consistent action.

mod green;
mod groups;

pub use green::{green_structure, GreenStructure};
pub use groups::{
    are_isomorphic, build_group, derived_length, nilpotency_class, GroupPreset,
};

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::alphabet::Alphabet;
use crate::automata::Dfa;
use crate::caps::Caps;
use crate::error::{Error, Result};

pub type ElementId = usize;

/// A total map on a finite carrier; `image[q]` is where `q` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transformation {
    image: Vec<usize>,
}

impl Transformation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if let Some(&q) = image.iter().find(|&&q| q >= n) {
            return Err(Error::invalid(format!(
                "transformation image {q} out of range (carrier size {n})"
            )));
        }
        Ok(Transformation { image })
    }

    pub fn identity(n: usize) -> Self {
        Transformation {
            image: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, q: usize) -> usize {
        self.image[q]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `self` then `other`, matching word concatenation left to right.
    pub fn then(&self, other: &Transformation) -> Transformation {
        Transformation {
            image: self.image.iter().map(|&q| other.image[q]).collect(),
        }
    }
}

/// A finite monoid generated by a list of transformations, with a stable
/// element order and shortest generating words.
#[derive(Debug, Clone)]
pub struct FiniteMonoid {
    size: usize,
    identity: ElementId,
    /// `right_by_gen[g][x] = x · gen_g` — the right Cayley graph.
    right_by_gen: Vec<Vec<ElementId>>,
    /// Shortest generating word per element (letter indices), found by BFS
    /// over generators in alphabet order; ties resolve lexicographically.
    element_words: Vec<Vec<u8>>,
    /// Image of each generator letter.
    generators: Vec<ElementId>,
}

impl FiniteMonoid {
    /// Breadth-first closure of the generators. Also returns the concrete
    /// transformation for every element, aligned with element ids.
    pub fn from_generators(
        gens: &[Transformation],
        caps: &Caps,
    ) -> Result<(FiniteMonoid, Vec<Transformation>)> {
        if gens.is_empty() {
            return Err(Error::invalid("a monoid needs at least one generator"));
        }
        let degree = gens[0].degree();
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::invalid("generators act on different carriers"));
        }
        let identity = Transformation::identity(degree);
        let mut index: HashMap<Transformation, ElementId> = HashMap::new();
        let mut elements: Vec<Transformation> = Vec::new();
        let mut queue: VecDeque<ElementId> = VecDeque::new();
        index.insert(identity.clone(), 0);
        elements.push(identity);
        queue.push_back(0);
        let mut edges: Vec<Vec<ElementId>> = Vec::new();
        while let Some(x) = queue.pop_front() {
            let mut row = Vec::with_capacity(gens.len());
            for g in gens {
                let next = elements[x].then(g);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = elements.len();
                        if id >= caps.monoid_size {
                            return Err(Error::cap(
                                "monoid size",
                                format!("limit {} (stopped at {} elements)", caps.monoid_size, id),
                            ));
                        }
                        index.insert(next.clone(), id);
                        elements.push(next);
                        queue.push_back(id);
                        id
                    }
                };
                row.push(id);
            }
            edges.push(row);
        }
        // Shortest generating words, rebuilt over the discovery order so that
        // ids sort by (length, lexicographic) of their word.
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); elements.len()];
        let mut discovered = vec![false; elements.len()];
        discovered[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (g, &t) in edges[x].iter().enumerate() {
                if !discovered[t] {
                    discovered[t] = true;
                    let mut w = words[x].clone();
                    w.push(g as u8);
                    words[t] = w;
                    queue.push_back(t);
                }
            }
        }
        // edges is indexed by BFS pop order, which equals element id order.
        let mut right_by_gen = vec![vec![0; elements.len()]; gens.len()];
        for (x, row) in edges.iter().enumerate() {
            for (g, &t) in row.iter().enumerate() {
                right_by_gen[g][x] = t;
            }
        }
        let generators = (0..gens.len()).map(|g| right_by_gen[g][0]).collect();
        let monoid = FiniteMonoid {
            size: elements.len(),
            identity: 0,
            right_by_gen,
            element_words: words,
            generators,
        };
        monoid.audit_structure()?;
        Ok((monoid, elements))
    }

    /// Identity laws plus an associativity audit: exhaustive up to 200
    /// elements, 10^4 sampled triples beyond.
    fn audit_structure(&self) -> Result<()> {
        for x in 0..self.size {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::internal(format!("identity law fails at element {x}")));
            }
        }
        let check = |x: usize, y: usize, z: usize| -> Result<()> {
            let xy_z = self.mul(self.mul(x, y), z);
            let x_yz = self.mul(x, self.mul(y, z));
            if xy_z != x_yz {
                return Err(Error::internal(format!(
                    "associativity fails at ({x}, {y}, {z})"
                )));
            }
            Ok(())
        };
        if self.size <= 200 {
            for x in 0..self.size {
                for y in 0..self.size {
                    for z in 0..self.size {
                        check(x, y, z)?;
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..10_000 {
                let x = (next() % self.size as u64) as usize;
                let y = (next() % self.size as u64) as usize;
                let z = (next() % self.size as u64) as usize;
                check(x, y, z)?;
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Image of each generator letter, in letter order.
    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    pub fn element_word(&self, x: ElementId) -> &[u8] {
        &self.element_words[x]
    }

    /// Right multiplication by a generator.
    pub fn right_by_generator(&self, x: ElementId, g: usize) -> ElementId {
        self.right_by_gen[g][x]
    }

    /// Monoid product `x · y`.
    pub fn mul(&self, x: ElementId, y: ElementId) -> ElementId {
        self.element_words[y]
            .iter()
            .fold(x, |acc, &g| self.right_by_gen[g as usize][acc])
    }

    /// Evaluate a word of letter indices.
    pub fn eval_word(&self, word: &[u8]) -> ElementId {
        word.iter()
            .fold(self.identity, |acc, &g| self.right_by_gen[g as usize][acc])
    }

    /// Left-multiplication maps `x ↦ g · x` for each generator, computed on
    /// demand (the left Cayley graph).
    pub fn left_by_generator_maps(&self) -> Vec<Vec<ElementId>> {
        (0..self.generators.len())
            .map(|g| {
                (0..self.size)
                    .map(|x| {
                        self.element_words[x]
                            .iter()
                            .fold(self.generators[g], |acc, &h| {
                                self.right_by_gen[h as usize][acc]
                            })
                    })
                    .collect()
            })
            .collect()
    }

    /// Full multiplication table, row-major. Guarded because it is quadratic.
    pub fn table(&self, max_size: usize) -> Result<Vec<ElementId>> {
        if self.size > max_size {
            return Err(Error::cap(
                "multiplication table",
                format!("monoid has {} elements, table limit {max_size}", self.size),
            ));
        }
        let mut table = Vec::with_capacity(self.size * self.size);
        for x in 0..self.size {
            for y in 0..self.size {
                table.push(self.mul(x, y));
            }
        }
        Ok(table)
    }

    /// The unique idempotent among the powers of `x`.
    pub fn omega_power(&self, x: ElementId) -> ElementId {
        // Walk the power sequence until it repeats; the cycle contains
        // exactly one idempotent, reached at the first multiple of the cycle
        // length past the tail.
        let mut seen: HashMap<ElementId, usize> = HashMap::new();
        let mut power = x;
        let mut k = 1usize;
        loop {
            if let Some(&first) = seen.get(&power) {
                let period = k - first;
                let mut target = first;
                while target % period != 0 {
                    target += 1;
                }
                let mut result = x;
                for _ in 1..target {
                    result = self.mul(result, x);
                }
                debug_assert_eq!(self.mul(result, result), result);
                return result;
            }
            if self.mul(power, power) == power {
                return power;
            }
            seen.insert(power, k);
            power = self.mul(power, x);
            k += 1;
        }
    }

    /// True iff `x^{ω+1} = x^ω` for every element.
    pub fn is_aperiodic(&self) -> bool {
        (0..self.size).all(|x| {
            let e = self.omega_power(x);
            self.mul(e, x) == e
        })
    }

    /// Finite-monoid group test: the identity is the unique idempotent.
    pub fn is_group(&self) -> bool {
        (0..self.size).all(|x| self.mul(x, x) != x || x == self.identity)
    }

    /// Commutativity. Generator pairs suffice: every element is a product of
    /// generators.
    pub fn is_commutative(&self) -> bool {
        self.generators.iter().all(|&g| {
            self.generators
                .iter()
                .all(|&h| self.mul(g, h) == self.mul(h, g))
        })
    }

    pub fn idempotents(&self) -> Vec<ElementId> {
        (0..self.size).filter(|&x| self.mul(x, x) == x).collect()
    }

    /// Right ideal `xM`: reachable set in the right Cayley graph.
    pub fn right_ideal(&self, x: ElementId) -> BTreeSet<ElementId> {
        self.ideal_closure(x, |y, g| self.right_by_gen[g][y])
    }

    /// Left ideal `Mx`: reachable set in the left Cayley graph.
    pub fn left_ideal(&self, x: ElementId) -> BTreeSet<ElementId> {
        let left = self.left_by_generator_maps();
        self.ideal_closure(x, |y, g| left[g][y])
    }

    fn ideal_closure(
        &self,
        x: ElementId,
        step: impl Fn(ElementId, usize) -> ElementId,
    ) -> BTreeSet<ElementId> {
        let mut seen = BTreeSet::from([x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for g in 0..self.generators.len() {
                let t = step(y, g);
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen
    }
}

/// A letter-to-element map η together with an accepting subset P, recognizing
/// `L = η⁻¹(P)`.
#[derive(Debug, Clone)]
pub struct RecognizingMorphism {
    monoid: FiniteMonoid,
    alphabet: Alphabet,
    accepting: BTreeSet<ElementId>,
}

impl RecognizingMorphism {
    pub fn new(monoid: FiniteMonoid, alphabet: Alphabet, accepting: BTreeSet<ElementId>) -> Result<Self> {
        if alphabet.len() != monoid.generator_count() {
            return Err(Error::invalid(format!(
                "alphabet has {} letters but the monoid has {} generators",
                alphabet.len(),
                monoid.generator_count()
            )));
        }
        if let Some(&m) = accepting.iter().find(|&&m| m >= monoid.size()) {
            return Err(Error::invalid(format!("accepting element {m} out of range")));
        }
        Ok(RecognizingMorphism {
            monoid,
            alphabet,
            accepting,
        })
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn accepting(&self) -> &BTreeSet<ElementId> {
        &self.accepting
    }

    /// Image of each letter, in alphabet order.
    pub fn letter_map(&self) -> &[ElementId] {
        self.monoid.generators()
    }

    pub fn eval(&self, word: &str) -> Result<ElementId> {
        Ok(self.monoid.eval_word(&self.alphabet.encode(word)?))
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.accepting.contains(&self.eval(word)?))
    }

    /// Canonical display name of an element: "id" for the identity, otherwise
    /// its shortest generating word spelled with the alphabet's letters.
    pub fn element_name(&self, x: ElementId) -> String {
        if x == self.monoid.identity() {
            "id".to_string()
        } else {
            self.alphabet.decode(self.monoid.element_word(x))
        }
    }

    /// The right Cayley automaton with accepting set `targets`; it accepts
    /// `{ w : η(w) ∈ targets }`.
    pub fn cayley_dfa(&self, targets: BTreeSet<ElementId>) -> Dfa {
        let size = self.monoid.size();
        let k = self.alphabet.len();
        let mut delta = Vec::with_capacity(size * k);
        for x in 0..size {
            for g in 0..k {
                delta.push(self.monoid.right_by_generator(x, g));
            }
        }
        Dfa::new(
            self.alphabet.clone(),
            size,
            self.monoid.identity(),
            targets,
            delta,
        )
        .expect("Cayley automaton is valid")
    }

    /// DFA of the fiber `η⁻¹(m)`.
    pub fn fiber_dfa(&self, m: ElementId) -> Dfa {
        self.cayley_dfa(BTreeSet::from([m]))
    }

    /// DFA of the recognized language `η⁻¹(P)`.
    pub fn language_dfa(&self) -> Dfa {
        self.cayley_dfa(self.accepting.clone())
    }
}

/// The syntactic monoid of `L(d)`: the transition monoid of the minimal DFA,
/// with the letter map and the accepting subset `P = η(L)`.
pub fn syntactic_monoid(d: &Dfa) -> Result<RecognizingMorphism> {
    syntactic_monoid_with_caps(d, &Caps::standard())
}

pub fn syntactic_monoid_with_caps(d: &Dfa, caps: &Caps) -> Result<RecognizingMorphism> {
    let minimal = if d.is_minimal() { d.clone() } else { d.minimize() };
    let k = minimal.alphabet().len();
    let gens: Vec<Transformation> = (0..k)
        .map(|a| {
            Transformation::new(
                (0..minimal.state_count())
                    .map(|q| minimal.step(q, a))
                    .collect(),
            )
            .expect("letter action is a transformation")
        })
        .collect();
    let (monoid, elements) = FiniteMonoid::from_generators(&gens, caps)?;
    let accepting = elements
        .iter()
        .enumerate()
        .filter(|(_, t)| minimal.accepting().contains(&t.apply(minimal.initial())))
        .map(|(i, _)| i)
        .collect();
    RecognizingMorphism::new(monoid, minimal.alphabet().clone(), accepting)
}

/// True iff every H-class inside the kernel is a singleton.
pub fn kernel_h_trivial(m: &FiniteMonoid) -> bool {
    let green = green_structure(m);
    green
        .kernel()
        .iter()
        .all(|&x| green.h_class_of(x).len() == 1)
}

/// The word problem of a group: the DFA of `η⁻¹(1)` on the group's right
/// Cayley graph (states are group elements, initial = accepting = identity).
pub fn word_problem_language(g: &RecognizingMorphism) -> Result<Dfa> {
    if !g.monoid().is_group() {
        return Err(Error::NotGroup(
            "word problems are defined for group morphisms".to_string(),
        ));
    }
    Ok(g.fiber_dfa(g.monoid().identity()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile_regex, parse_regex};
    use crate::fixtures;

    #[test]
    fn parity_monoid_is_z2() {
        let phi = syntactic_monoid(&fixtures::balanced_mod(2).unwrap()).unwrap();
        assert_eq!(phi.monoid().size(), 2);
        assert!(phi.monoid().is_group());
        assert!(phi.monoid().is_commutative());
    }

    #[test]
    fn universal_language_has_trivial_monoid() {
        let ab = Alphabet::ab();
        let d = compile_regex(&parse_regex("(a|b)*", &ab).unwrap(), &ab).unwrap();
        let phi = syntactic_monoid(&d).unwrap();
        assert_eq!(phi.monoid().size(), 1);
        assert!(phi.monoid().is_group());
    }

    #[test]
    fn syntactic_monoid_recognizes_the_language() {
        let d = fixtures::contains_ab().unwrap();
        let phi = syntactic_monoid(&d).unwrap();
        for w in crate::Dfa::enumerate_words(
            &compile_regex(&parse_regex("(a|b)*", &Alphabet::ab()).unwrap(), &Alphabet::ab())
                .unwrap(),
            8,
        )
        .unwrap()
        {
            assert_eq!(phi.accepts(&w).unwrap(), d.accepts(&w).unwrap(), "word {w}");
        }
    }

    #[test]
    fn omega_powers() {
        let phi = syntactic_monoid(&fixtures::balanced_mod(2).unwrap()).unwrap();
        let m = phi.monoid();
        let g = phi.letter_map()[0];
        assert_eq!(m.omega_power(g), m.identity());
        // idempotents are fixed points
        for e in m.idempotents() {
            assert_eq!(m.omega_power(e), e);
        }
    }

    #[test]
    fn aperiodicity_examples() {
        let contains = syntactic_monoid(&fixtures::contains_ab().unwrap()).unwrap();
        assert!(contains.monoid().is_aperiodic());
        let parity = syntactic_monoid(&fixtures::balanced_mod(2).unwrap()).unwrap();
        assert!(!parity.monoid().is_aperiodic());
    }

    #[test]
    fn group_test_examples() {
        let contains = syntactic_monoid(&fixtures::contains_ab().unwrap()).unwrap();
        assert!(!contains.monoid().is_group());
        let z3 = build_group(GroupPreset::Cyclic(3)).unwrap();
        assert!(z3.monoid().is_group());
    }

    #[test]
    fn kernel_h_triviality_examples() {
        let contains = syntactic_monoid(&fixtures::contains_ab().unwrap()).unwrap();
        assert!(kernel_h_trivial(contains.monoid()));
        let parity = syntactic_monoid(&fixtures::balanced_mod(2).unwrap()).unwrap();
        assert!(!kernel_h_trivial(parity.monoid()));
    }

    #[test]
    fn word_problem_of_z2_is_even_length() {
        let z2 = build_group(GroupPreset::Cyclic(2)).unwrap();
        let d = word_problem_language(&z2).unwrap();
        for w in ["", "aa", "ab", "ba", "bb", "abab"] {
            assert!(d.accepts(w).unwrap(), "{w}");
        }
        for w in ["a", "b", "aab", "bbb"] {
            assert!(!d.accepts(w).unwrap(), "{w}");
        }
    }

    #[test]
    fn word_problem_of_trivial_group_is_universal() {
        let t = build_group(GroupPreset::Cyclic(1)).unwrap();
        let d = word_problem_language(&t).unwrap();
        assert!(d.accepts("abba").unwrap());
    }

    #[test]
    fn word_problem_requires_a_group() {
        let contains = syntactic_monoid(&fixtures::contains_ab().unwrap()).unwrap();
        assert!(matches!(
            word_problem_language(&contains),
            Err(Error::NotGroup(_))
        ));
    }

    #[test]
    fn element_ids_follow_shortest_word_order() {
        let phi = syntactic_monoid(&fixtures::counterexample_fiber().unwrap()).unwrap();
        let m = phi.monoid();
        for x in 1..m.size() {
            let prev = m.element_word(x - 1);
            let cur = m.element_word(x);
            assert!(
                (prev.len(), prev) < (cur.len(), cur),
                "ids must sort by (length, lex) of shortest words"
            );
        }
        // Every stored word evaluates to its element.
        for x in 0..m.size() {
            assert_eq!(m.eval_word(m.element_word(x)), x);
        }
    }

    #[test]
    fn monoid_size_cap_reports_partial_count() {
        let caps = Caps {
            monoid_size: 3,
            ..Caps::standard()
        };
        let d = fixtures::contains_ab().unwrap();
        match syntactic_monoid_with_caps(&d, &caps) {
            Err(Error::CapExceeded { detail, .. }) => {
                assert!(detail.contains("stopped at"), "{detail}");
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }
}
