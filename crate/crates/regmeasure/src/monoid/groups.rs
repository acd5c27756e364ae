//! Group constructions and group-theoretic classifiers.

use std::collections::BTreeSet;

use crate::alphabet::Alphabet;
use crate::caps::Caps;
use crate::error::{Error, Result};

use super::{ElementId, FiniteMonoid, RecognizingMorphism, Transformation};

/// Built-in two-generated groups with a fixed two-letter generator map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupPreset {
    /// Z/k with a ↦ 1 and b ↦ k−1.
    Cyclic(usize),
    /// The dihedral group of the given (even, ≥ 4) order: a ↦ rotation,
    /// b ↦ reflection.
    Dihedral(usize),
    /// S₃ on three points: a ↦ the transposition (0 1), b ↦ the 3-cycle (0 1 2).
    Symmetric3,
}

/// Build a preset group as a recognizing morphism over `{a, b}` whose
/// accepting set is the identity (the word problem's subset).
pub fn build_group(preset: GroupPreset) -> Result<RecognizingMorphism> {
    build_group_with_caps(preset, &Caps::standard())
}

pub fn build_group_with_caps(preset: GroupPreset, caps: &Caps) -> Result<RecognizingMorphism> {
    let gens: Vec<Transformation> = match preset {
        GroupPreset::Cyclic(k) => {
            if k == 0 {
                return Err(Error::invalid("cyclic group order must be positive"));
            }
            if k > caps.group_order {
                return Err(Error::cap("group order", format!("limit {}", caps.group_order)));
            }
            let rot = |s: usize| {
                Transformation::new((0..k).map(|q| (q + s) % k).collect())
                    .expect("rotation is a permutation")
            };
            vec![rot(1 % k), rot((k - 1) % k)]
        }
        GroupPreset::Dihedral(order) => {
            if order < 4 || order % 2 != 0 {
                return Err(Error::invalid(
                    "dihedral order must be an even number at least 4",
                ));
            }
            if order > caps.group_order {
                return Err(Error::cap("group order", format!("limit {}", caps.group_order)));
            }
            let m = order / 2;
            let rotation = Transformation::new((0..m).map(|q| (q + 1) % m).collect())
                .expect("rotation is a permutation");
            let reflection = Transformation::new((0..m).map(|q| (m - q) % m).collect())
                .expect("reflection is a permutation");
            vec![rotation, reflection]
        }
        GroupPreset::Symmetric3 => {
            let swap = Transformation::new(vec![1, 0, 2]).expect("transposition");
            let cycle = Transformation::new(vec![1, 2, 0]).expect("3-cycle");
            vec![swap, cycle]
        }
    };
    let (monoid, _) = FiniteMonoid::from_generators(&gens, caps)?;
    if !monoid.is_group() {
        return Err(Error::internal("group preset did not generate a group"));
    }
    let identity = monoid.identity();
    RecognizingMorphism::new(monoid, Alphabet::ab(), BTreeSet::from([identity]))
}

/// Inverse map of a group, computed once from the right Cayley graph: each
/// generator acts as a permutation, so inverting those permutations lets the
/// inverse of `x` be folded along its word in reverse.
fn inverse_map(m: &FiniteMonoid) -> Result<Vec<ElementId>> {
    if !m.is_group() {
        return Err(Error::NotGroup(
            "inverses exist only in group monoids".to_string(),
        ));
    }
    let k = m.generator_count();
    let n = m.size();
    let mut inv_gen: Vec<Vec<ElementId>> = vec![vec![0; n]; k];
    for (g, row) in inv_gen.iter_mut().enumerate() {
        for x in 0..n {
            let t = m.right_by_generator(x, g);
            row[t] = x;
        }
    }
    let inv = (0..n)
        .map(|x| {
            m.element_word(x)
                .iter()
                .rev()
                .fold(m.identity(), |acc, &g| inv_gen[g as usize][acc])
        })
        .collect();
    Ok(inv)
}

fn commutator(m: &FiniteMonoid, inv: &[ElementId], x: ElementId, y: ElementId) -> ElementId {
    m.mul(m.mul(x, y), m.mul(inv[x], inv[y]))
}

/// A subgroup kept as its element set plus a generating set closed under
/// inverses; series computations only ever commutate generators.
struct Subgroup {
    elements: BTreeSet<ElementId>,
    gens: BTreeSet<ElementId>,
}

/// Normal closure in the whole group of the seed elements: close the
/// generating set under inverses and conjugation by the group's generators,
/// regenerating the subgroup as needed.
fn normal_closure(m: &FiniteMonoid, inv: &[ElementId], seed: Vec<ElementId>) -> Subgroup {
    let group_gens: Vec<ElementId> = m.generators().to_vec();
    let mut gens: BTreeSet<ElementId> = BTreeSet::new();
    for x in seed {
        if x != m.identity() {
            gens.insert(x);
            gens.insert(inv[x]);
        }
    }
    loop {
        let mut elements = BTreeSet::from([m.identity()]);
        let mut stack = vec![m.identity()];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = m.mul(x, g);
                if elements.insert(y) {
                    stack.push(y);
                }
            }
        }
        // Conjugates of the generators by the group's generators suffice:
        // conjugation is an automorphism, so generator conjugates in the
        // subgroup force all member conjugates in.
        let mut missing: Vec<ElementId> = Vec::new();
        for &s in &gens {
            for &g in &group_gens {
                let c = m.mul(m.mul(g, s), inv[g]);
                if !elements.contains(&c) {
                    missing.push(c);
                }
            }
        }
        if missing.is_empty() {
            return Subgroup { elements, gens };
        }
        for c in missing {
            gens.insert(c);
            gens.insert(inv[c]);
        }
    }
}

/// [H, K] for normal subgroups given by generating sets: the normal closure
/// of the pairwise generator commutators.
fn commutator_subgroup(
    m: &FiniteMonoid,
    inv: &[ElementId],
    left: &Subgroup,
    right: &Subgroup,
) -> Subgroup {
    let seed: Vec<ElementId> = left
        .gens
        .iter()
        .flat_map(|&x| right.gens.iter().map(move |&y| commutator(m, inv, x, y)))
        .collect();
    normal_closure(m, inv, seed)
}

fn whole_group(m: &FiniteMonoid, inv: &[ElementId]) -> Subgroup {
    let mut gens: BTreeSet<ElementId> = BTreeSet::new();
    for &g in m.generators() {
        if g != m.identity() {
            gens.insert(g);
            gens.insert(inv[g]);
        }
    }
    Subgroup {
        elements: (0..m.size()).collect(),
        gens,
    }
}

/// Least `n` such that the lower central series reaches the trivial subgroup;
/// `None` if the group is not nilpotent. The trivial group has class 0.
pub fn nilpotency_class(m: &FiniteMonoid) -> Result<Option<usize>> {
    if !m.is_group() {
        return Err(Error::NotGroup("nilpotency class requires a group".to_string()));
    }
    let inv = inverse_map(m)?;
    let whole = whole_group(m, &inv);
    let mut current = whole_group(m, &inv);
    let mut class = 0usize;
    while current.elements.len() > 1 {
        let next = commutator_subgroup(m, &inv, &current, &whole);
        if next.elements == current.elements {
            return Ok(None);
        }
        current = next;
        class += 1;
        if class > m.size() {
            return Err(Error::internal("lower central series failed to stabilize"));
        }
    }
    Ok(Some(class))
}

/// Least `n` with trivial n-th derived subgroup; `None` if not solvable.
/// The trivial group has derived length 0.
pub fn derived_length(m: &FiniteMonoid) -> Result<Option<usize>> {
    if !m.is_group() {
        return Err(Error::NotGroup("derived length requires a group".to_string()));
    }
    let inv = inverse_map(m)?;
    let mut current = whole_group(m, &inv);
    let mut length = 0usize;
    while current.elements.len() > 1 {
        let next = commutator_subgroup(m, &inv, &current, &current);
        if next.elements == current.elements {
            return Ok(None);
        }
        current = next;
        length += 1;
        if length > m.size() {
            return Err(Error::internal("derived series failed to stabilize"));
        }
    }
    Ok(Some(length))
}

/// Brute-force monoid isomorphism by generator-image backtracking. Both
/// monoids are generated by their letter maps, so an isomorphism is fixed by
/// where the generators go. Intended for small carriers (order ≤ 16).
pub fn are_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let n = a.size();
    let candidates: Vec<Vec<ElementId>> = (0..a.generator_count())
        .map(|_| (0..n).collect())
        .collect();
    let mut images: Vec<ElementId> = Vec::new();
    try_generator_images(a, b, &candidates, &mut images)
}

fn try_generator_images(
    a: &FiniteMonoid,
    b: &FiniteMonoid,
    candidates: &[Vec<ElementId>],
    images: &mut Vec<ElementId>,
) -> bool {
    if images.len() == candidates.len() {
        return check_morphism(a, b, images);
    }
    for &c in &candidates[images.len()] {
        images.push(c);
        if try_generator_images(a, b, candidates, images) {
            images.pop();
            return true;
        }
        images.pop();
    }
    false
}

fn check_morphism(a: &FiniteMonoid, b: &FiniteMonoid, gen_images: &[ElementId]) -> bool {
    // φ(x) is the word of x evaluated over the candidate generator images.
    let phi: Vec<ElementId> = (0..a.size())
        .map(|x| {
            a.element_word(x)
                .iter()
                .fold(b.identity(), |acc, &g| b.mul(acc, gen_images[g as usize]))
        })
        .collect();
    let mut hit = vec![false; b.size()];
    for &y in &phi {
        if hit[y] {
            return false;
        }
        hit[y] = true;
    }
    for x in 0..a.size() {
        for y in 0..a.size() {
            if phi[a.mul(x, y)] != b.mul(phi[x], phi[y]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_orders() {
        assert_eq!(build_group(GroupPreset::Cyclic(2)).unwrap().monoid().size(), 2);
        assert_eq!(build_group(GroupPreset::Dihedral(8)).unwrap().monoid().size(), 8);
        assert_eq!(build_group(GroupPreset::Symmetric3).unwrap().monoid().size(), 6);
    }

    #[test]
    fn dihedral_relations_hold() {
        let d8 = build_group(GroupPreset::Dihedral(8)).unwrap();
        let m = d8.monoid();
        let r = d8.letter_map()[0];
        let s = d8.letter_map()[1];
        let e = m.identity();
        let r4 = m.mul(m.mul(r, r), m.mul(r, r));
        assert_eq!(r4, e);
        assert_eq!(m.mul(s, s), e);
        // s r s = r^{-1} = r^3
        let srs = m.mul(m.mul(s, r), s);
        let r3 = m.mul(m.mul(r, r), r);
        assert_eq!(srs, r3);
    }

    #[test]
    fn commutativity_examples() {
        assert!(build_group(GroupPreset::Cyclic(6)).unwrap().monoid().is_commutative());
        assert!(!build_group(GroupPreset::Dihedral(8)).unwrap().monoid().is_commutative());
        assert!(!build_group(GroupPreset::Symmetric3).unwrap().monoid().is_commutative());
    }

    #[test]
    fn nilpotency_examples() {
        for k in 2..=5 {
            let g = build_group(GroupPreset::Cyclic(k)).unwrap();
            assert_eq!(nilpotency_class(g.monoid()).unwrap(), Some(1), "Z/{k}");
        }
        let d8 = build_group(GroupPreset::Dihedral(8)).unwrap();
        assert_eq!(nilpotency_class(d8.monoid()).unwrap(), Some(2));
        let s3 = build_group(GroupPreset::Symmetric3).unwrap();
        assert_eq!(nilpotency_class(s3.monoid()).unwrap(), None);
        let trivial = build_group(GroupPreset::Cyclic(1)).unwrap();
        assert_eq!(nilpotency_class(trivial.monoid()).unwrap(), Some(0));
    }

    #[test]
    fn derived_length_examples() {
        let z6 = build_group(GroupPreset::Cyclic(6)).unwrap();
        assert_eq!(derived_length(z6.monoid()).unwrap(), Some(1));
        let s3 = build_group(GroupPreset::Symmetric3).unwrap();
        assert_eq!(derived_length(s3.monoid()).unwrap(), Some(2));
        let d8 = build_group(GroupPreset::Dihedral(8)).unwrap();
        assert_eq!(derived_length(d8.monoid()).unwrap(), Some(2));
    }

    #[test]
    fn classifier_preconditions() {
        let contains = crate::monoid::syntactic_monoid(&crate::fixtures::contains_ab().unwrap())
            .unwrap();
        assert!(matches!(
            nilpotency_class(contains.monoid()),
            Err(Error::NotGroup(_))
        ));
        assert!(matches!(
            derived_length(contains.monoid()),
            Err(Error::NotGroup(_))
        ));
    }

    #[test]
    fn isomorphism_checker_distinguishes_groups() {
        let z6 = build_group(GroupPreset::Cyclic(6)).unwrap();
        let s3 = build_group(GroupPreset::Symmetric3).unwrap();
        assert!(are_isomorphic(z6.monoid(), z6.monoid()));
        assert!(!are_isomorphic(z6.monoid(), s3.monoid()));
    }
}
