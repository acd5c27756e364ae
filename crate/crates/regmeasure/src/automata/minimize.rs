//! DFA minimization with canonical state numbering.

use std::collections::{BTreeSet, HashMap};

use super::Dfa;

impl Dfa {
    /// Minimal complete DFA of the same language, states renumbered in
    /// breadth-first reachability order from the initial state (letters in
    /// alphabet order). Idempotent: minimizing a minimal DFA returns an
    /// identical value.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();

        // Restrict to the reachable part first; completeness is preserved.
        let order = self.reachable_in_bfs_order();
        let mut old_to_new = vec![usize::MAX; self.state_count];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        let n = order.len();
        let mut delta = vec![0usize; n * k];
        for (new, &old) in order.iter().enumerate() {
            for a in 0..k {
                delta[new * k + a] = old_to_new[self.step(old, a)];
            }
        }
        let accepting: Vec<bool> = order
            .iter()
            .map(|old| self.accepting.contains(old))
            .collect();

        // Partition refinement by successor-block signatures until stable.
        let mut block = vec![0usize; n];
        for (q, &acc) in accepting.iter().enumerate() {
            block[q] = usize::from(acc);
        }
        let mut block_count = if accepting.iter().any(|&b| b) && accepting.iter().any(|&b| !b) {
            2
        } else {
            1
        };
        if block_count == 1 {
            for b in block.iter_mut() {
                *b = 0;
            }
        }
        loop {
            let mut index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next_block = vec![0usize; n];
            for q in 0..n {
                let sig: Vec<usize> = (0..k).map(|a| block[delta[q * k + a]]).collect();
                let key = (block[q], sig);
                let next = index.len();
                let id = *index.entry(key).or_insert(next);
                next_block[q] = id;
            }
            let next_count = index.len();
            block = next_block;
            if next_count == block_count {
                break;
            }
            block_count = next_count;
        }

        // Quotient automaton on blocks.
        let mut repr = vec![usize::MAX; block_count];
        for q in 0..n {
            if repr[block[q]] == usize::MAX {
                repr[block[q]] = q;
            }
        }
        let q_initial = block[0];
        let mut q_delta = vec![0usize; block_count * k];
        for b in 0..block_count {
            let q = repr[b];
            for a in 0..k {
                q_delta[b * k + a] = block[delta[q * k + a]];
            }
        }
        let q_accepting: BTreeSet<usize> = (0..block_count)
            .filter(|&b| accepting[repr[b]])
            .collect();

        // Canonical BFS renumbering of the quotient.
        let quotient = Dfa {
            alphabet: self.alphabet.clone(),
            state_count: block_count,
            initial: q_initial,
            accepting: q_accepting,
            delta: q_delta,
            minimal: false,
        };
        let order = quotient.reachable_in_bfs_order();
        debug_assert_eq!(order.len(), block_count);
        let mut renum = vec![usize::MAX; block_count];
        for (new, &old) in order.iter().enumerate() {
            renum[old] = new;
        }
        let mut delta = vec![0usize; block_count * k];
        for (new, &old) in order.iter().enumerate() {
            for a in 0..k {
                delta[new * k + a] = renum[quotient.step(old, a)];
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            state_count: block_count,
            initial: 0,
            accepting: quotient
                .accepting
                .iter()
                .map(|&b| renum[b])
                .collect(),
            delta,
            minimal: true,
        }
    }
}
