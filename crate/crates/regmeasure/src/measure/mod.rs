//! Measure-theoretic approximability of regular languages.
//!
//! A regular language can be approximated from inside and outside by
//! generalized-definite languages with vanishing density gap exactly when
//! every H-class in the kernel of its syntactic monoid is trivial; star-free
//! approximants have the same reach. [`decide_sf_measurable`] decides that
//! criterion and names a nontrivial kernel H-class otherwise,
//! [`gd_sandwich`] synthesizes the approximants at a finite level, and
//! [`subvariety_measurable`] decides approximability of group languages by
//! the commutative / bounded-nilpotency / bounded-solvability subclasses,
//! which group languages cannot escape.

mod counterexample;
mod gd_expr;
mod independence;
mod sandwich;

pub use counterexample::{counterexample_report, CounterexampleReport};
pub use gd_expr::{ElementTracker, FixedLengthSet, GdAtom, GdExpr, SetMembers};
pub use independence::{check_independence, IndependenceReport};
pub use sandwich::{
    gap_table, gap_table_with_caps, gd_sandwich, gd_sandwich_with_caps, prefix_approximant,
    suffix_approximant, SandwichReport,
};

use std::fmt;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::monoid::{
    derived_length, green_structure, nilpotency_class, syntactic_monoid, ElementId,
};

/// Outcome of the star-free measurability decision.
#[derive(Debug, Clone)]
pub struct SfDecision {
    pub measurable: bool,
    /// A nontrivial kernel H-class when immeasurable.
    pub certificate: Option<HClassCertificate>,
}

/// A nontrivial H-class inside the kernel, named by canonical element words.
#[derive(Debug, Clone)]
pub struct HClassCertificate {
    pub element_ids: Vec<ElementId>,
    pub element_names: Vec<String>,
}

/// Decide approximability by star-free (equivalently generalized-definite)
/// languages: true iff the kernel of the syntactic monoid is H-trivial.
pub fn decide_sf_measurable(d: &Dfa) -> Result<SfDecision> {
    if d.alphabet().len() < 2 {
        return Err(Error::invalid(
            "measurability analysis requires an alphabet with at least two symbols",
        ));
    }
    let phi = syntactic_monoid(d)?;
    let green = green_structure(phi.monoid());
    let mut nontrivial: Option<Vec<ElementId>> = None;
    for &x in green.kernel() {
        let class = green.h_class_of(x);
        if class.len() > 1 {
            match &nontrivial {
                Some(current) if current[0] <= class[0] => {}
                _ => nontrivial = Some(class.to_vec()),
            }
        }
    }
    Ok(match nontrivial {
        None => SfDecision {
            measurable: true,
            certificate: None,
        },
        Some(ids) => SfDecision {
            measurable: false,
            certificate: Some(HClassCertificate {
                element_names: ids.iter().map(|&x| phi.element_name(x)).collect(),
                element_ids: ids,
            }),
        },
    })
}

/// Group-language subclasses whose measuring power is decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubvarietyClass {
    /// Commutative groups.
    Gcom,
    /// Nilpotent groups of class at most `n`.
    Gnil(usize),
    /// Solvable groups of derived length at most `n`.
    Gsol(usize),
    /// All finite groups.
    G,
}

impl fmt::Display for SubvarietyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubvarietyClass::Gcom => write!(f, "gcom"),
            SubvarietyClass::Gnil(n) => write!(f, "gnil:{n}"),
            SubvarietyClass::Gsol(n) => write!(f, "gsol:{n}"),
            SubvarietyClass::G => write!(f, "g"),
        }
    }
}

impl std::str::FromStr for SubvarietyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if lower == "gcom" {
            return Ok(SubvarietyClass::Gcom);
        }
        if lower == "g" {
            return Ok(SubvarietyClass::G);
        }
        if let Some(n) = lower.strip_prefix("gnil:") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::invalid(format!("bad class bound in '{s}'")))?;
            return Ok(SubvarietyClass::Gnil(n));
        }
        if let Some(n) = lower.strip_prefix("gsol:") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::invalid(format!("bad class bound in '{s}'")))?;
            return Ok(SubvarietyClass::Gsol(n));
        }
        Err(Error::invalid(format!(
            "unknown subvariety class '{s}' (expected gcom, gnil:n, gsol:n, or g)"
        )))
    }
}

/// Decide whether a group language is measurable by the given subclass.
/// Approximability within group languages collapses to membership, so this
/// reduces to classifying the syntactic group.
pub fn subvariety_measurable(d: &Dfa, cls: SubvarietyClass) -> Result<bool> {
    if d.alphabet().len() < 2 {
        return Err(Error::invalid(
            "measurability analysis requires an alphabet with at least two symbols",
        ));
    }
    let phi = syntactic_monoid(d)?;
    let m = phi.monoid();
    if !m.is_group() {
        return Err(Error::NotGroupLanguage(
            "the syntactic monoid is not a group".to_string(),
        ));
    }
    Ok(match cls {
        SubvarietyClass::Gcom => m.is_commutative(),
        SubvarietyClass::Gnil(n) => matches!(nilpotency_class(m)?, Some(c) if c <= n),
        SubvarietyClass::Gsol(n) => matches!(derived_length(m)?, Some(c) if c <= n),
        SubvarietyClass::G => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn contains_ab_is_measurable() {
        let r = decide_sf_measurable(&fixtures::contains_ab().unwrap()).unwrap();
        assert!(r.measurable);
        assert!(r.certificate.is_none());
    }

    #[test]
    fn counterexample_fiber_is_immeasurable_with_named_class() {
        let r = decide_sf_measurable(&fixtures::counterexample_fiber().unwrap()).unwrap();
        assert!(!r.measurable);
        let cert = r.certificate.unwrap();
        assert_eq!(cert.element_names, vec!["e", "efe"]);
    }

    #[test]
    fn parity_is_immeasurable() {
        let r = decide_sf_measurable(&fixtures::balanced_mod(2).unwrap()).unwrap();
        assert!(!r.measurable);
        assert_eq!(r.certificate.unwrap().element_ids.len(), 2);
    }

    #[test]
    fn zero_and_one_densities_are_measurable() {
        use crate::density::{density, ratio};
        for d in [
            fixtures::empty_language().unwrap(),
            fixtures::universal().unwrap(),
            fixtures::ba_star().unwrap(),
            fixtures::contains_ab().unwrap(),
        ] {
            let value = density(&d);
            if value == ratio(0, 1) || value == ratio(1, 1) {
                assert!(decide_sf_measurable(&d).unwrap().measurable);
            }
        }
    }

    #[test]
    fn unary_alphabet_is_rejected() {
        let a = crate::Alphabet::new("a".chars()).unwrap();
        let d = crate::Dfa::new(a, 1, 0, [0].into(), vec![0]).unwrap();
        assert!(decide_sf_measurable(&d).is_err());
        assert!(subvariety_measurable(&d, SubvarietyClass::G).is_err());
    }

    #[test]
    fn subvariety_examples() {
        let s3 = fixtures::word_problem(crate::monoid::GroupPreset::Symmetric3).unwrap();
        assert!(!subvariety_measurable(&s3, SubvarietyClass::Gcom).unwrap());
        assert!(subvariety_measurable(&s3, SubvarietyClass::Gsol(2)).unwrap());
        for n in 1..=4 {
            assert!(!subvariety_measurable(&s3, SubvarietyClass::Gnil(n)).unwrap());
        }
        let d8 = fixtures::word_problem(crate::monoid::GroupPreset::Dihedral(8)).unwrap();
        assert!(!subvariety_measurable(&d8, SubvarietyClass::Gnil(1)).unwrap());
        assert!(subvariety_measurable(&d8, SubvarietyClass::Gnil(2)).unwrap());
        let parity = fixtures::balanced_mod(2).unwrap();
        assert!(subvariety_measurable(&parity, SubvarietyClass::Gcom).unwrap());
    }

    #[test]
    fn subvariety_rejects_non_group_languages() {
        let d = fixtures::contains_ab().unwrap();
        assert!(matches!(
            subvariety_measurable(&d, SubvarietyClass::Gcom),
            Err(Error::NotGroupLanguage(_))
        ));
    }

    #[test]
    fn class_parsing_round_trips() {
        for s in ["gcom", "gnil:2", "gsol:3", "g"] {
            let cls: SubvarietyClass = s.parse().unwrap();
            assert_eq!(cls.to_string(), s);
        }
        assert!("gnil".parse::<SubvarietyClass>().is_err());
    }
}
