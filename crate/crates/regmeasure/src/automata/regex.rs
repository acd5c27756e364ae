//! Regular expressions: parsing and compilation to complete DFAs.
//!
//! Grammar (no complement/intersection operators; Boolean structure comes
//! from [`Dfa::combine`](super::Dfa::combine)):
//!
//! ```text
//! expr   := union
//! union  := concat ('|' concat)*
//! concat := star+
//! star   := atom '*'*
//! atom   := '(' expr ')' | letter | '_' (epsilon) | '#' (empty set)
//! ```

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::error::{Error, Result};

use super::Dfa;

/// Abstract syntax tree of a regular expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexAst {
    Empty,
    Epsilon,
    Letter(char),
    Union(Box<RegexAst>, Box<RegexAst>),
    Concat(Box<RegexAst>, Box<RegexAst>),
    Star(Box<RegexAst>),
}

/// Parse a regular expression, validating letters against `alphabet`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<RegexAst> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser {
        chars: &chars,
        pos: 0,
        alphabet,
    };
    let ast = p.union()?;
    if p.pos < p.chars.len() {
        return Err(Error::parse(
            format!("position {}", p.pos),
            format!("unexpected '{}'", p.chars[p.pos]),
        ));
    }
    Ok(ast)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn union(&mut self) -> Result<RegexAst> {
        let mut node = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let rhs = self.concat()?;
            node = RegexAst::Union(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn concat(&mut self) -> Result<RegexAst> {
        let mut node = self.star()?;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let rhs = self.star()?;
            node = RegexAst::Concat(Box::new(node), Box::new(rhs));
        }
        Ok(node)
    }

    fn star(&mut self) -> Result<RegexAst> {
        let mut node = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            node = RegexAst::Star(Box::new(node));
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<RegexAst> {
        match self.peek() {
            None => Err(Error::parse(
                format!("position {}", self.pos),
                "unexpected end of expression",
            )),
            Some('(') => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(')') {
                    return Err(Error::parse(
                        format!("position {}", self.pos),
                        "expected ')'",
                    ));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('_') => {
                self.pos += 1;
                Ok(RegexAst::Epsilon)
            }
            Some('#') => {
                self.pos += 1;
                Ok(RegexAst::Empty)
            }
            Some(c) if c == '*' || c == '|' || c == ')' => Err(Error::parse(
                format!("position {}", self.pos),
                format!("unexpected '{c}'"),
            )),
            Some(c) => {
                if self.alphabet.index_of(c).is_none() {
                    return Err(Error::parse(
                        format!("position {}", self.pos),
                        format!("letter '{c}' outside alphabet {}", self.alphabet),
                    ));
                }
                self.pos += 1;
                Ok(RegexAst::Letter(c))
            }
        }
    }
}

// Thompson construction on an epsilon-NFA, then subset construction. The
// empty subset acts as the sink, so the result is complete by construction.
pub(crate) struct Nfa {
    eps: Vec<Vec<usize>>,
    steps: Vec<Vec<(u8, usize)>>,
    start: usize,
    finals: BTreeSet<usize>,
}

impl Nfa {
    pub(crate) fn with_states(n: usize) -> Nfa {
        Nfa {
            eps: vec![Vec::new(); n],
            steps: vec![Vec::new(); n],
            start: 0,
            finals: BTreeSet::new(),
        }
    }

    fn add_state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.steps.push(Vec::new());
        self.eps.len() - 1
    }

    pub(crate) fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    pub(crate) fn add_step(&mut self, from: usize, letter: u8, to: usize) {
        self.steps[from].push((letter, to));
    }

    pub(crate) fn set_start(&mut self, q: usize) {
        self.start = q;
    }

    pub(crate) fn add_final(&mut self, q: usize) {
        self.finals.insert(q);
    }

    fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }

    pub(crate) fn determinize(&self, alphabet: &Alphabet, caps: &Caps) -> Result<Dfa> {
        let k = alphabet.len();
        let start = self.closure(&BTreeSet::from([self.start]));
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut sets: Vec<BTreeSet<usize>> = Vec::new();
        index.insert(start.clone(), 0);
        sets.push(start);
        let mut delta: Vec<usize> = Vec::new();
        let mut head = 0;
        while head < sets.len() {
            for a in 0..k {
                let mut target = BTreeSet::new();
                for &q in &sets[head] {
                    for &(letter, t) in &self.steps[q] {
                        if letter as usize == a {
                            target.insert(t);
                        }
                    }
                }
                let target = self.closure(&target);
                let next = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        if id >= caps.product_states {
                            return Err(Error::cap(
                                "subset construction states",
                                format!("limit {}", caps.product_states),
                            ));
                        }
                        index.insert(target.clone(), id);
                        sets.push(target);
                        id
                    }
                };
                delta.push(next);
            }
            head += 1;
        }
        let accepting = sets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.iter().any(|q| self.finals.contains(q)))
            .map(|(i, _)| i)
            .collect();
        Dfa::new(alphabet.clone(), sets.len(), 0, accepting, delta)
    }
}

/// Compile a regular expression into a complete DFA over `alphabet`.
pub fn compile_regex(ast: &RegexAst, alphabet: &Alphabet) -> Result<Dfa> {
    compile_regex_with_caps(ast, alphabet, &Caps::standard())
}

pub fn compile_regex_with_caps(ast: &RegexAst, alphabet: &Alphabet, caps: &Caps) -> Result<Dfa> {
    let mut nfa = Nfa::with_states(0);
    let (start, end) = thompson(ast, alphabet, &mut nfa)?;
    nfa.set_start(start);
    nfa.add_final(end);
    nfa.determinize(alphabet, caps)
}

fn thompson(ast: &RegexAst, alphabet: &Alphabet, nfa: &mut Nfa) -> Result<(usize, usize)> {
    match ast {
        RegexAst::Empty => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            Ok((s, e))
        }
        RegexAst::Epsilon => {
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_eps(s, e);
            Ok((s, e))
        }
        RegexAst::Letter(c) => {
            let letter = alphabet
                .index_of(*c)
                .ok_or_else(|| Error::invalid(format!("letter '{c}' outside alphabet {alphabet}")))?
                as u8;
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_step(s, letter, e);
            Ok((s, e))
        }
        RegexAst::Union(l, r) => {
            let (ls, le) = thompson(l, alphabet, nfa)?;
            let (rs, re) = thompson(r, alphabet, nfa)?;
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_eps(s, ls);
            nfa.add_eps(s, rs);
            nfa.add_eps(le, e);
            nfa.add_eps(re, e);
            Ok((s, e))
        }
        RegexAst::Concat(l, r) => {
            let (ls, le) = thompson(l, alphabet, nfa)?;
            let (rs, re) = thompson(r, alphabet, nfa)?;
            nfa.add_eps(le, rs);
            Ok((ls, re))
        }
        RegexAst::Star(inner) => {
            let (is, ie) = thompson(inner, alphabet, nfa)?;
            let s = nfa.add_state();
            let e = nfa.add_state();
            nfa.add_eps(s, is);
            nfa.add_eps(s, e);
            nfa.add_eps(ie, is);
            nfa.add_eps(ie, e);
            Ok((s, e))
        }
    }
}

/// The language `{ u w v : w ∈ L(d) }` for fixed affixes `u` and `v`.
pub fn affix_language(u: &str, d: &Dfa, v: &str) -> Result<Dfa> {
    let alphabet = d.alphabet();
    let u = alphabet.encode(u)?;
    let v = alphabet.encode(v)?;
    let n = d.state_count();
    // Layout: u-chain nodes, then the DFA states, then the v-chain nodes.
    let dfa_base = u.len() + 1;
    let v_base = dfa_base + n;
    let mut nfa = Nfa::with_states(v_base + v.len() + 1);
    for (i, &a) in u.iter().enumerate() {
        nfa.add_step(i, a, i + 1);
    }
    nfa.add_eps(u.len(), dfa_base + d.initial());
    for q in 0..n {
        for a in 0..alphabet.len() {
            nfa.add_step(dfa_base + q, a as u8, dfa_base + d.step(q, a));
        }
    }
    for &q in d.accepting() {
        nfa.add_eps(dfa_base + q, v_base);
    }
    for (i, &a) in v.iter().enumerate() {
        nfa.add_step(v_base + i, a, v_base + i + 1);
    }
    nfa.set_start(0);
    nfa.add_final(v_base + v.len());
    nfa.determinize(alphabet, &Caps::standard())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::ab()
    }

    #[test]
    fn parses_with_precedence() {
        let ast = parse_regex("ab|c*", &Alphabet::new("abc".chars()).unwrap()).unwrap();
        match ast {
            RegexAst::Union(l, r) => {
                assert!(matches!(*l, RegexAst::Concat(_, _)));
                assert!(matches!(*r, RegexAst::Star(_)));
            }
            other => panic!("unexpected parse: {other:?}"),
        }
    }

    #[test]
    fn rejects_letter_outside_alphabet() {
        let err = parse_regex("axb", &ab()).unwrap_err();
        assert!(err.to_string().contains("outside alphabet"));
    }

    #[test]
    fn reports_positions() {
        let err = parse_regex("a(b", &ab()).unwrap_err();
        assert!(err.to_string().contains("position 3"));
        let err = parse_regex("*a", &ab()).unwrap_err();
        assert!(err.to_string().contains("position 0"));
    }

    #[test]
    fn empty_set_and_epsilon() {
        let empty = compile_regex(&parse_regex("#", &ab()).unwrap(), &ab()).unwrap();
        assert!(empty.is_empty_language());
        let eps = compile_regex(&parse_regex("_", &ab()).unwrap(), &ab()).unwrap();
        assert!(eps.accepts("").unwrap());
        assert!(!eps.accepts("a").unwrap());
        assert_eq!(eps.enumerate_words(2).unwrap(), vec![""]);
    }

    #[test]
    fn compiled_dfa_is_complete() {
        let d = compile_regex(&parse_regex("ab", &ab()).unwrap(), &ab()).unwrap();
        // completeness: long foreign words run without panicking
        assert!(!d.accepts("bbbb").unwrap());
        assert!(d.accepts("ab").unwrap());
    }

    #[test]
    fn affix_language_wraps_words() {
        let inner = compile_regex(&parse_regex("(a|b)*", &ab()).unwrap(), &ab()).unwrap();
        let d = affix_language("ab", &inner, "").unwrap();
        assert!(d.accepts("ab").unwrap());
        assert!(d.accepts("abba").unwrap());
        assert!(!d.accepts("ba").unwrap());
    }
}
