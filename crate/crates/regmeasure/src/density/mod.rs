//! Exact word densities of regular languages.
//!
//! The density of `L` is the Cesàro average of `|L ∩ A^k| / |A|^k`. For a
//! complete DFA it always exists and is rational; it is computed here from
//! the DFA's uniform-letter Markov chain with exact arithmetic. No floating
//! point appears on any density path.

mod chain;
mod linalg;
mod rational;

pub use chain::ChainAnalysis;
pub use rational::{format_rational, ratio, BigRational};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::automata::Dfa;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::monoid::{green_structure, syntactic_monoid, RecognizingMorphism};

/// Exact Cesàro density of the language of `d`. Total for every DFA.
pub fn density(d: &Dfa) -> BigRational {
    ChainAnalysis::new(d)
        .expect("chain invariants hold for a complete DFA")
        .accepting_density(d.accepting())
}

/// Exact partial Cesàro average `(1/n) Σ_{k<n} |L ∩ A^k| / |A|^k`.
pub fn density_partial(d: &Dfa, horizon: u32) -> Result<BigRational> {
    density_partial_with_caps(d, horizon, &Caps::standard())
}

pub fn density_partial_with_caps(d: &Dfa, horizon: u32, caps: &Caps) -> Result<BigRational> {
    if horizon == 0 {
        return Err(Error::invalid("partial average horizon must be at least 1"));
    }
    if horizon > caps.partial_horizon {
        return Err(Error::cap(
            "partial average horizon",
            format!("limit {}", caps.partial_horizon),
        ));
    }
    let n = horizon as usize;
    let k = BigInt::from(d.alphabet().len());
    // Accumulate sum_k count_k * |A|^{n-1-k} over one incremental count DP,
    // then divide by n * |A|^{n-1}.
    let mut counts = vec![BigInt::zero(); d.state_count()];
    counts[d.initial()] = BigInt::one();
    let mut numerator = BigInt::zero();
    let mut scale = {
        let mut s = BigInt::one();
        for _ in 0..n - 1 {
            s *= &k;
        }
        s
    };
    for step in 0..n {
        let accepted: BigInt = d.accepting().iter().map(|&q| counts[q].clone()).sum();
        numerator += &accepted * &scale;
        if step + 1 < n {
            scale /= &k;
            let mut next = vec![BigInt::zero(); d.state_count()];
            for (q, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for a in 0..d.alphabet().len() {
                    let t = d.step(q, a);
                    next[t] += c;
                }
            }
            counts = next;
        }
    }
    let mut denominator = BigInt::from(n);
    for _ in 0..n - 1 {
        denominator *= &k;
    }
    Ok(BigRational::new(numerator, denominator))
}

/// A shortest forbidden word — a word `w` with `L ∩ A*wA* = ∅` — if the
/// density is zero; `None` otherwise. Ties break lexicographically by
/// alphabet order.
///
/// A forbidden word exists exactly when the accepting image misses the
/// kernel of the syntactic monoid, and then the first element reaching the
/// kernel in breadth-first word order is a shortest witness.
pub fn forbidden_word(d: &Dfa) -> Result<Option<String>> {
    let phi = syntactic_monoid(d)?;
    let green = green_structure(phi.monoid());
    if phi.accepting().iter().any(|m| green.kernel().contains(m)) {
        return Ok(None);
    }
    // Element ids are assigned in length-then-lexicographic word order, so
    // the least kernel id carries the shortest (then smallest) witness.
    let witness = *green
        .kernel()
        .iter()
        .next()
        .expect("finite monoids have a nonempty kernel");
    Ok(Some(
        phi.alphabet().decode(phi.monoid().element_word(witness)),
    ))
}

/// Exact density of every fiber `η⁻¹(m)`, indexed by element id. One chain
/// analysis of the right Cayley automaton serves all fibers.
pub fn fiber_densities(phi: &RecognizingMorphism) -> Result<Vec<BigRational>> {
    let cayley = phi.cayley_dfa(Default::default());
    let chain = ChainAnalysis::new(&cayley)?;
    Ok((0..phi.monoid().size())
        .map(|m| chain.accepting_density(&std::collections::BTreeSet::from([m])))
        .collect())
}
