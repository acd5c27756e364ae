//! The generalized-definite approximant sandwich.
//!
//! For a language whose syntactic kernel is H-trivial, each kernel fiber
//! `η⁻¹(m)` is pinned between a prefix test and a suffix test: a word whose
//! first ℓ letters land in the right ideal `mM` and whose last ℓ letters land
//! in the left ideal `Mm` must evaluate into `mM ∩ Mm`, which is exactly
//! `{m}` when the kernel is H-trivial. Unioning the accepted kernel fibers
//! gives an inner approximant; excluding the rejected kernel fibers gives an
//! outer one. Non-kernel fibers are null and need no approximant. Words
//! shorter than `2ℓ` are corrected exactly with explicit finite atoms.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::automata::{words_shorter_than, BoolOp, Dfa};
use crate::caps::Caps;
use crate::density::{density, BigRational};
use crate::error::{Error, Result};
use crate::monoid::{green_structure, syntactic_monoid, ElementId, RecognizingMorphism};

use super::gd_expr::{ElementTracker, FixedLengthSet, GdAtom, GdExpr};

/// One level of the sandwich: certified inner/outer approximants with exact
/// densities and a verified inclusion chain `inner ⊆ L ⊆ outer`.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub level: usize,
    pub inner: GdExpr,
    pub outer: GdExpr,
    pub inner_density: BigRational,
    pub outer_density: BigRational,
    pub gap: BigRational,
    pub inclusion_verified: bool,
}

fn tracker(phi: &RecognizingMorphism, targets: BTreeSet<ElementId>) -> ElementTracker {
    let m = phi.monoid();
    let actions: Vec<Vec<usize>> = (0..m.generator_count())
        .map(|g| (0..m.size()).map(|x| m.right_by_generator(x, g)).collect())
        .collect();
    ElementTracker::new(m.identity(), actions, targets).expect("monoid tables are consistent")
}

/// The prefix half of the fiber approximant: `{w : |w| ≥ ℓ, η(w[..ℓ]) ∈ mM}`.
pub fn prefix_approximant(phi: &RecognizingMorphism, m: ElementId, level: usize) -> GdExpr {
    let targets = phi.monoid().right_ideal(m);
    GdExpr::Atom(GdAtom::Prefix(FixedLengthSet::tracked(
        level,
        tracker(phi, targets),
    )))
}

/// The suffix half: `{w : |w| ≥ ℓ, η(w[|w|−ℓ..]) ∈ Mm}`.
pub fn suffix_approximant(phi: &RecognizingMorphism, m: ElementId, level: usize) -> GdExpr {
    let targets = phi.monoid().left_ideal(m);
    GdExpr::Atom(GdAtom::Suffix(FixedLengthSet::tracked(
        level,
        tracker(phi, targets),
    )))
}

fn fiber_atoms(phi: &RecognizingMorphism, fibers: &[ElementId], level: usize) -> GdExpr {
    GdExpr::union_all(
        fibers
            .iter()
            .map(|&m| {
                GdExpr::and(
                    prefix_approximant(phi, m, level),
                    suffix_approximant(phi, m, level),
                )
            })
            .collect(),
    )
}

/// Explicit corrections below length `2ℓ`: the members of `target` shorter
/// than `2ℓ` that the atoms miss.
fn short_corrections(
    target: &Dfa,
    atoms_dfa: &Dfa,
    level: usize,
    caps: &Caps,
) -> Result<BTreeSet<String>> {
    let bound = 2 * level;
    let short = words_shorter_than(target.alphabet(), bound);
    let missed = target
        .combine_with_caps(&atoms_dfa.complement(), BoolOp::And, caps)?
        .combine_with_caps(&short, BoolOp::And, caps)?;
    let words = missed.enumerate_words_with_caps(
        bound.saturating_sub(1),
        &Caps {
            enum_max_len: bound.max(1),
            enum_words: caps.finite_atom_words,
            ..*caps
        },
    )?;
    Ok(words.into_iter().collect())
}

/// Build the sandwich at one level.
pub fn gd_sandwich(d: &Dfa, level: usize) -> Result<SandwichReport> {
    gd_sandwich_with_caps(d, level, &Caps::standard())
}

pub fn gd_sandwich_with_caps(d: &Dfa, level: usize, caps: &Caps) -> Result<SandwichReport> {
    if level > caps.level_max {
        return Err(Error::cap(
            "sandwich level",
            format!("limit {}", caps.level_max),
        ));
    }
    if d.alphabet().len() < 2 {
        return Err(Error::invalid(
            "measurability analysis requires an alphabet with at least two symbols",
        ));
    }
    let minimal = d.minimize();
    let phi = syntactic_monoid(&minimal)?;
    let green = green_structure(phi.monoid());

    // The fiber construction overshoots to the whole H-class when a kernel
    // H-class is nontrivial, violating inner ⊆ L; refuse instead.
    for &x in green.kernel() {
        let class = green.h_class_of(x);
        if class.len() > 1 {
            return Err(Error::ImmeasurableKernel {
                h_class: class.iter().map(|&y| phi.element_name(y)).collect(),
            });
        }
    }

    let accepted_kernel: Vec<ElementId> = green
        .kernel()
        .iter()
        .copied()
        .filter(|m| phi.accepting().contains(m))
        .collect();
    let rejected_kernel: Vec<ElementId> = green
        .kernel()
        .iter()
        .copied()
        .filter(|m| !phi.accepting().contains(m))
        .collect();

    let alphabet = minimal.alphabet();

    let inner_atoms = fiber_atoms(&phi, &accepted_kernel, level);
    let inner_atoms_dfa = inner_atoms.compile(alphabet, caps)?;
    let inner_fix = short_corrections(&minimal, &inner_atoms_dfa, level, caps)?;
    let inner = GdExpr::or(inner_atoms, GdExpr::finite(inner_fix));
    let inner_dfa = inner.compile(alphabet, caps)?;

    let outer_atoms = fiber_atoms(&phi, &rejected_kernel, level);
    let outer_atoms_dfa = outer_atoms.compile(alphabet, caps)?;
    let outer_fix = short_corrections(&minimal.complement(), &outer_atoms_dfa, level, caps)?;
    let outer = GdExpr::complement(GdExpr::or(outer_atoms, GdExpr::finite(outer_fix)));
    let outer_dfa = outer.compile(alphabet, caps)?;

    // Certified inclusions by product emptiness.
    let inner_inside = inner_dfa
        .combine_with_caps(&minimal.complement(), BoolOp::And, caps)?
        .is_empty_language();
    let outer_outside = minimal
        .combine_with_caps(&outer_dfa.complement(), BoolOp::And, caps)?
        .is_empty_language();
    let inclusion_verified = inner_inside && outer_outside;
    if !inclusion_verified {
        return Err(Error::internal(format!(
            "sandwich inclusion failed at level {level} (inner ⊆ L: {inner_inside}, L ⊆ outer: {outer_outside})"
        )));
    }

    let inner_density = density(&inner_dfa);
    let outer_density = density(&outer_dfa);
    let gap = &outer_density - &inner_density;
    if gap < BigRational::zero() {
        return Err(Error::internal("sandwich gap is negative"));
    }
    Ok(SandwichReport {
        level,
        inner,
        outer,
        inner_density,
        outer_density,
        gap,
        inclusion_verified,
    })
}

/// One sandwich report per requested level.
pub fn gap_table(d: &Dfa, levels: &[usize]) -> Result<Vec<SandwichReport>> {
    gap_table_with_caps(d, levels, &Caps::standard())
}

pub fn gap_table_with_caps(d: &Dfa, levels: &[usize], caps: &Caps) -> Result<Vec<SandwichReport>> {
    levels
        .iter()
        .map(|&level| gd_sandwich_with_caps(d, level, caps))
        .collect()
}
