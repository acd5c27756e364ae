//! Exact analysis of regular languages under the word-density measure.
//!
//! The crate decides whether a regular language can be approximated
//! arbitrarily well — in density — by star-free / generalized-definite
//! languages or by languages recognized in restricted group classes,
//! computes exact rational densities, synthesizes explicit inner/outer
//! generalized-definite approximants with certified inclusions, and checks
//! the probabilistic independence of star-free and group languages.
//!
//! Everything is exact: densities are arbitrary-precision rationals obtained
//! from linear solves over the DFA's uniform-letter Markov chain; no floating
//! point appears anywhere on a density path.
//!
//! Modules:
//! - [`automata`]: complete DFAs, parsing, regex compilation, minimization,
//!   Boolean algebra, counting and enumeration oracles.
//! - [`monoid`]: transition/syntactic monoids, Green's relations, kernels,
//!   group classifiers (aperiodicity, commutativity, nilpotency class,
//!   derived length), group constructions and word problems.
//! - [`density`]: exact Cesàro densities, partial averages, forbidden words,
//!   fiber densities of recognizing morphisms.
//! - [`measure`]: measurability decisions with certificates, the
//!   generalized-definite sandwich construction with exact gap tables,
//!   independence checks, group-subvariety decisions, and the regression
//!   check for the nine-element transformation monoid counterexample.
//! - [`cli`]: the batch front end behind the `regmeasure` binary.

pub mod alphabet;
pub mod automata;
pub mod caps;
pub mod cli;
pub mod density;
pub mod error;
pub mod fixtures;
mod graph;
pub mod measure;
pub mod monoid;

pub use alphabet::Alphabet;
pub use automata::{
    affix_language, compile_regex, parse_dfa, parse_regex, serialize_dfa, words_shorter_than,
    BoolOp, Dfa, RegexAst,
};
pub use caps::Caps;
pub use density::{
    density, density_partial, fiber_densities, forbidden_word, format_rational, BigRational,
    ChainAnalysis,
};
pub use error::{Error, Result};
pub use measure::{
    check_independence, counterexample_report, decide_sf_measurable, gap_table, gd_sandwich,
    subvariety_measurable, CounterexampleReport, GdAtom, GdExpr, IndependenceReport,
    SandwichReport, SfDecision, SubvarietyClass,
};
pub use monoid::{
    build_group, derived_length, green_structure, kernel_h_trivial, nilpotency_class,
    syntactic_monoid, word_problem_language, FiniteMonoid, GreenStructure, GroupPreset,
    RecognizingMorphism, Transformation,
};
