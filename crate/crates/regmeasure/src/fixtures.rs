//! Named example languages used by the CLI fixture emitter and the test
//! suites. All builders are deterministic: they produce canonical minimal
//! DFAs, so repeated runs yield identical automata byte for byte.

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::automata::{compile_regex, parse_regex, Dfa};
use crate::error::Result;
use crate::monoid::{
    build_group, word_problem_language, FiniteMonoid, GroupPreset, RecognizingMorphism,
    Transformation,
};
use crate::Caps;

fn compiled(pattern: &str) -> Result<Dfa> {
    let ab = Alphabet::ab();
    Ok(compile_regex(&parse_regex(pattern, &ab)?, &ab)?.minimize())
}

/// `{ w : |w|_a ≡ |w|_b (mod k) }` over `{a, b}`: the word problem of Z/k
/// under a ↦ 1, b ↦ k−1.
pub fn balanced_mod(k: usize) -> Result<Dfa> {
    let group = build_group(GroupPreset::Cyclic(k))?;
    Ok(word_problem_language(&group)?.minimize())
}

/// All words containing `ab` as a factor.
pub fn contains_ab() -> Result<Dfa> {
    compiled("(a|b)*ab(a|b)*")
}

/// All words starting with `ab`.
pub fn starts_ab() -> Result<Dfa> {
    compiled("ab(a|b)*")
}

/// The language `(ba)*`.
pub fn ba_star() -> Result<Dfa> {
    compiled("(ba)*")
}

/// The empty language over `{a, b}`.
pub fn empty_language() -> Result<Dfa> {
    compiled("#")
}

/// The universal language over `{a, b}`.
pub fn universal() -> Result<Dfa> {
    compiled("(a|b)*")
}

/// The nine-element submonoid of the full transformation monoid on four
/// points generated by the two idempotents
/// `e: 1↦1, 2↦2, 3↦1, 4↦2` and `f: 1↦4, 2↦3, 3↦3, 4↦4`,
/// presented over the alphabet `{e, f}` so that element names read as
/// products of the generators.
pub fn counterexample_morphism() -> Result<RecognizingMorphism> {
    let e = Transformation::new(vec![0, 1, 0, 1])?;
    let f = Transformation::new(vec![3, 2, 2, 3])?;
    let (monoid, _) = FiniteMonoid::from_generators(&[e, f], &Caps::standard())?;
    let alphabet = Alphabet::new("ef".chars())?;
    let e_id = monoid.generators()[0];
    RecognizingMorphism::new(monoid, alphabet, BTreeSet::from([e_id]))
}

/// The fiber `η⁻¹(e)` of the counterexample morphism, as a DFA on the right
/// Cayley graph of the monoid (nine states, not minimized further).
pub fn counterexample_fiber() -> Result<Dfa> {
    Ok(counterexample_morphism()?.language_dfa())
}

/// Word problem of a preset group, minimized.
pub fn word_problem(preset: GroupPreset) -> Result<Dfa> {
    let group = build_group(preset)?;
    Ok(word_problem_language(&group)?.minimize())
}

/// The full deterministic fixture set written by `emit-fixtures`, with file
/// stems.
pub fn all() -> Result<Vec<(&'static str, Dfa)>> {
    Ok(vec![
        ("parity", balanced_mod(2)?),
        ("mod3", balanced_mod(3)?),
        ("mod4", balanced_mod(4)?),
        ("mod5", balanced_mod(5)?),
        ("contains_ab", contains_ab()?),
        ("starts_ab", starts_ab()?),
        ("ba_star", ba_star()?),
        ("counterexample_e", counterexample_fiber()?),
        ("wp_z6", word_problem(GroupPreset::Cyclic(6))?),
        ("wp_s3", word_problem(GroupPreset::Symmetric3)?),
        ("wp_d8", word_problem(GroupPreset::Dihedral(8))?),
        ("wp_d16", word_problem(GroupPreset::Dihedral(16))?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_fixture_shape() {
        let d = balanced_mod(2).unwrap();
        assert_eq!(d.state_count(), 2);
        assert!(d.accepting().contains(&d.initial()));
    }

    #[test]
    fn counterexample_fiber_has_nine_states() {
        let d = counterexample_fiber().unwrap();
        assert_eq!(d.state_count(), 9);
    }

    #[test]
    fn fixtures_are_deterministic() {
        for ((name_a, a), (_, b)) in all().unwrap().into_iter().zip(all().unwrap()) {
            assert_eq!(a, b, "{name_a}");
        }
    }
}
