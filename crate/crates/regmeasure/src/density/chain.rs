//! The uniform-letter Markov chain of a DFA and its Cesàro limit data.
//!
//! Reading uniformly random letters turns a complete DFA into a finite Markov
//! chain on its states. The Cesàro limit of the acceptance probability is
//! determined by the bottom strongly connected components: each is an
//! irreducible chain whose Cesàro average equals its unique stationary
//! distribution (irreducibility suffices; periodicity averages out), weighted
//! by the probability of being absorbed there from the initial state.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::automata::Dfa;
use crate::error::{Error, Result};

use super::linalg::solve_exact;
use super::rational::BigRational;

/// Exact chain data for a DFA: sparse stochastic matrix, bottom components,
/// absorption probabilities from the initial state, and one stationary
/// distribution per bottom component.
#[derive(Debug, Clone)]
pub struct ChainAnalysis {
    state_count: usize,
    /// Sparse rows: `(target, probability)` with probabilities summing to 1.
    rows: Vec<Vec<(usize, BigRational)>>,
    /// Bottom strongly connected components, each sorted.
    bottom_components: Vec<Vec<usize>>,
    /// Probability of absorption into each bottom component, from the
    /// initial state.
    absorption: Vec<BigRational>,
    /// Stationary distribution of each bottom component, aligned with its
    /// state list.
    stationary: Vec<Vec<BigRational>>,
}

impl ChainAnalysis {
    pub fn new(d: &Dfa) -> Result<ChainAnalysis> {
        let n = d.state_count();
        let k = d.alphabet().len();
        let letter_weight = BigRational::new(BigInt::one(), BigInt::from(k));

        // Sparse stochastic rows with multiplicities.
        let mut rows: Vec<Vec<(usize, BigRational)>> = Vec::with_capacity(n);
        for q in 0..n {
            let mut counts: std::collections::BTreeMap<usize, u32> = Default::default();
            for a in 0..k {
                *counts.entry(d.step(q, a)).or_insert(0) += 1;
            }
            let row: Vec<(usize, BigRational)> = counts
                .into_iter()
                .map(|(t, c)| (t, &letter_weight * BigRational::from(BigInt::from(c))))
                .collect();
            rows.push(row);
        }
        for row in &rows {
            let sum: BigRational = row.iter().map(|(_, p)| p.clone()).sum();
            if !sum.is_one() {
                return Err(Error::internal("stochastic row does not sum to 1"));
            }
        }

        // SCCs in emission order: every edge leads to an earlier component.
        let adj: Vec<Vec<usize>> = rows
            .iter()
            .map(|row| row.iter().map(|&(t, _)| t).collect())
            .collect();
        let comp_of = crate::graph::tarjan_scc(&adj);
        let comp_count = comp_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); comp_count];
        for (q, &c) in comp_of.iter().enumerate() {
            members[c].push(q);
        }
        let mut leaves = vec![false; comp_count];
        for q in 0..n {
            for &(t, _) in &rows[q] {
                if comp_of[t] != comp_of[q] {
                    leaves[comp_of[q]] = true;
                }
            }
        }
        let bottom_ids: Vec<usize> = (0..comp_count).filter(|&c| !leaves[c]).collect();
        let bottom_index_of: Vec<Option<usize>> = {
            let mut v = vec![None; comp_count];
            for (i, &c) in bottom_ids.iter().enumerate() {
                v[c] = Some(i);
            }
            v
        };
        let bottom_components: Vec<Vec<usize>> =
            bottom_ids.iter().map(|&c| members[c].clone()).collect();
        let b = bottom_components.len();

        // Stationary distribution per bottom component: replace one balance
        // equation by the normalization row; any single balance row is
        // redundant because they sum to zero.
        let mut stationary = Vec::with_capacity(b);
        for comp in &bottom_components {
            let size = comp.len();
            let pos_of = |state: usize| comp.binary_search(&state).expect("state in component");
            let mut a = vec![vec![BigRational::zero(); size]; size];
            for (j, &q) in comp.iter().enumerate() {
                for &(t, ref p) in &rows[q] {
                    let i = pos_of(t);
                    // balance row i: sum_j pi_j P(j, i) - pi_i = 0
                    a[i][j] += p.clone();
                }
            }
            for (i, row) in a.iter_mut().enumerate() {
                row[i] -= BigRational::one();
            }
            for entry in a[size - 1].iter_mut() {
                *entry = BigRational::one();
            }
            let mut rhs = vec![vec![BigRational::zero()]; size];
            rhs[size - 1][0] = BigRational::one();
            let pi = solve_exact(&a, &rhs)?;
            let pi: Vec<BigRational> = pi.into_iter().map(|mut r| r.remove(0)).collect();
            stationary.push(pi);
        }

        // Absorption probabilities from every state, component by component
        // in emission (reverse-topological) order. Transient components need
        // a linear solve of their own size; bottom components are immediate.
        let mut hit: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); b]; n];
        for c in 0..comp_count {
            if let Some(bi) = bottom_index_of[c] {
                for &q in &members[c] {
                    hit[q][bi] = BigRational::one();
                }
                continue;
            }
            let comp = &members[c];
            let size = comp.len();
            let pos_of = |state: usize| comp.binary_search(&state).expect("state in component");
            let mut a = vec![vec![BigRational::zero(); size]; size];
            let mut rhs = vec![vec![BigRational::zero(); b]; size];
            for (i, &q) in comp.iter().enumerate() {
                a[i][i] = BigRational::one();
                for &(t, ref p) in &rows[q] {
                    if comp_of[t] == c {
                        a[i][pos_of(t)] -= p.clone();
                    } else {
                        for (col, h) in hit[t].clone().into_iter().enumerate() {
                            rhs[i][col] += p * h;
                        }
                    }
                }
            }
            let solved = solve_exact(&a, &rhs)?;
            for (i, &q) in comp.iter().enumerate() {
                hit[q] = solved[i].clone();
            }
        }
        let absorption = hit[d.initial()].clone();

        let analysis = ChainAnalysis {
            state_count: n,
            rows,
            bottom_components,
            absorption,
            stationary,
        };
        analysis.audit()?;
        Ok(analysis)
    }

    /// Internal invariants: absorption probabilities sum to 1; each
    /// stationary distribution sums to 1 and satisfies pi = pi P on its
    /// component. Row sums were checked at construction.
    fn audit(&self) -> Result<()> {
        let total: BigRational = self.absorption.iter().cloned().sum();
        if !total.is_one() {
            return Err(Error::internal("absorption probabilities do not sum to 1"));
        }
        for (comp, pi) in self.bottom_components.iter().zip(&self.stationary) {
            let sum: BigRational = pi.iter().cloned().sum();
            if !sum.is_one() {
                return Err(Error::internal("stationary distribution does not sum to 1"));
            }
            // pi P = pi restricted to the component
            let pos_of = |state: usize| comp.binary_search(&state).expect("state in component");
            let mut image = vec![BigRational::zero(); comp.len()];
            for (j, &q) in comp.iter().enumerate() {
                for &(t, ref p) in &self.rows[q] {
                    image[pos_of(t)] += &pi[j] * p;
                }
            }
            if image != *pi {
                return Err(Error::internal("stationary distribution is not invariant"));
            }
        }
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn rows(&self) -> &[Vec<(usize, BigRational)>] {
        &self.rows
    }

    pub fn bottom_components(&self) -> &[Vec<usize>] {
        &self.bottom_components
    }

    pub fn absorption(&self) -> &[BigRational] {
        &self.absorption
    }

    pub fn stationary(&self) -> &[Vec<BigRational>] {
        &self.stationary
    }

    /// Cesàro density of `{ w : run(w) ∈ accepting }`.
    pub fn accepting_density(&self, accepting: &BTreeSet<usize>) -> BigRational {
        let mut total = BigRational::zero();
        for ((comp, pi), weight) in self
            .bottom_components
            .iter()
            .zip(&self.stationary)
            .zip(&self.absorption)
        {
            if weight.is_zero() {
                continue;
            }
            let mass: BigRational = comp
                .iter()
                .zip(pi)
                .filter(|(q, _)| accepting.contains(q))
                .map(|(_, p)| p.clone())
                .sum();
            total += weight * mass;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parity_chain_has_uniform_stationary() {
        let d = fixtures::balanced_mod(2).unwrap();
        let chain = ChainAnalysis::new(&d).unwrap();
        assert_eq!(chain.bottom_components().len(), 1);
        let pi = &chain.stationary()[0];
        assert!(pi.iter().all(|p| *p == BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn starts_ab_absorbs_quarters() {
        let d = fixtures::starts_ab().unwrap();
        let chain = ChainAnalysis::new(&d).unwrap();
        let density = chain.accepting_density(d.accepting());
        assert_eq!(density, BigRational::new(1.into(), 4.into()));
    }
}
