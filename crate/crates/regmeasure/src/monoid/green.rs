//! Green's relations and the kernel of a finite monoid.
//!
//! R-, L- and J-classes are the strongly connected components of the right,
//! left and two-sided Cayley graphs over the generators; H is the pairwise
//! intersection of R and L. The kernel is the unique J-class that is a
//! minimal two-sided ideal.

use std::collections::{BTreeSet, HashMap};

use crate::graph::tarjan_scc;

use super::{ElementId, FiniteMonoid};

/// One of the four partitions; classes are sorted internally and listed by
/// their smallest element.
#[derive(Debug, Clone)]
pub struct GreenPartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<ElementId>>,
}

impl GreenPartition {
    fn from_class_of(mut class_of: Vec<usize>) -> GreenPartition {
        // Renumber classes by their least member for stable output.
        let count = class_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<ElementId>> = vec![Vec::new(); count];
        for (x, &c) in class_of.iter().enumerate() {
            members[c].push(x);
        }
        let mut classes: Vec<Vec<ElementId>> =
            members.into_iter().filter(|c| !c.is_empty()).collect();
        classes.sort_by_key(|c| c[0]);
        for (i, class) in classes.iter().enumerate() {
            for &x in class {
                class_of[x] = i;
            }
        }
        GreenPartition { class_of, classes }
    }

    pub fn class_index(&self, x: ElementId) -> usize {
        self.class_of[x]
    }

    pub fn class_of(&self, x: ElementId) -> &[ElementId] {
        &self.classes[self.class_of[x]]
    }

    pub fn classes(&self) -> &[Vec<ElementId>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// The R/L/J/H partitions of a finite monoid together with its kernel.
#[derive(Debug, Clone)]
pub struct GreenStructure {
    r: GreenPartition,
    l: GreenPartition,
    j: GreenPartition,
    h: GreenPartition,
    kernel: BTreeSet<ElementId>,
}

impl GreenStructure {
    pub fn r(&self) -> &GreenPartition {
        &self.r
    }

    pub fn l(&self) -> &GreenPartition {
        &self.l
    }

    pub fn j(&self) -> &GreenPartition {
        &self.j
    }

    pub fn h(&self) -> &GreenPartition {
        &self.h
    }

    pub fn kernel(&self) -> &BTreeSet<ElementId> {
        &self.kernel
    }

    pub fn h_class_of(&self, x: ElementId) -> &[ElementId] {
        self.h.class_of(x)
    }

    /// R-classes inside the kernel (the minimal right ideals).
    pub fn kernel_r_classes(&self) -> Vec<&[ElementId]> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &x in &self.kernel {
            let idx = self.r.class_index(x);
            if seen.insert(idx) {
                out.push(self.r.class_of(x));
            }
        }
        out
    }
}

/// Compute Green's relations and the kernel.
pub fn green_structure(m: &FiniteMonoid) -> GreenStructure {
    let n = m.size();
    let k = m.generator_count();
    let left = m.left_by_generator_maps();

    let right_adj: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..k).map(|g| m.right_by_generator(x, g)).collect())
        .collect();
    let left_adj: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..k).map(|g| left[g][x]).collect())
        .collect();
    let two_sided_adj: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            right_adj[x]
                .iter()
                .chain(left_adj[x].iter())
                .copied()
                .collect()
        })
        .collect();

    let r = GreenPartition::from_class_of(tarjan_scc(&right_adj));
    let l = GreenPartition::from_class_of(tarjan_scc(&left_adj));
    let j = GreenPartition::from_class_of(tarjan_scc(&two_sided_adj));

    // H = R ∧ L.
    let mut pair_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut h_class_of = vec![0usize; n];
    for (x, slot) in h_class_of.iter_mut().enumerate() {
        let key = (r.class_index(x), l.class_index(x));
        let next = pair_index.len();
        *slot = *pair_index.entry(key).or_insert(next);
    }
    let h = GreenPartition::from_class_of(h_class_of);

    // Kernel: the unique J-class no two-sided edge leaves.
    let mut is_sink = vec![true; j.len()];
    for x in 0..n {
        for &t in &two_sided_adj[x] {
            if j.class_index(t) != j.class_index(x) {
                is_sink[j.class_index(x)] = false;
            }
        }
    }
    let sinks: Vec<usize> = (0..j.len()).filter(|&c| is_sink[c]).collect();
    assert_eq!(
        sinks.len(),
        1,
        "a finite monoid has exactly one minimal two-sided ideal"
    );
    let kernel: BTreeSet<ElementId> = j.classes()[sinks[0]].iter().copied().collect();

    GreenStructure { r, l, j, h, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::monoid::syntactic_monoid;

    #[test]
    fn trivial_monoid_has_single_classes() {
        let phi = syntactic_monoid(&fixtures::universal().unwrap()).unwrap();
        let g = green_structure(phi.monoid());
        assert_eq!(g.r().len(), 1);
        assert_eq!(g.l().len(), 1);
        assert_eq!(g.j().len(), 1);
        assert_eq!(g.h().len(), 1);
        assert_eq!(g.kernel().len(), 1);
    }

    #[test]
    fn h_refines_r_and_l() {
        let phi = syntactic_monoid(&fixtures::counterexample_fiber().unwrap()).unwrap();
        let g = green_structure(phi.monoid());
        for class in g.h().classes() {
            let r = g.r().class_index(class[0]);
            let l = g.l().class_index(class[0]);
            for &x in class {
                assert_eq!(g.r().class_index(x), r);
                assert_eq!(g.l().class_index(x), l);
            }
        }
    }

    #[test]
    fn kernel_is_a_two_sided_ideal() {
        let phi = syntactic_monoid(&fixtures::counterexample_fiber().unwrap()).unwrap();
        let m = phi.monoid();
        let g = green_structure(m);
        for &x in g.kernel() {
            for y in 0..m.size() {
                assert!(g.kernel().contains(&m.mul(x, y)));
                assert!(g.kernel().contains(&m.mul(y, x)));
            }
        }
    }

    #[test]
    fn group_kernel_is_whole_group() {
        let phi = syntactic_monoid(&fixtures::balanced_mod(2).unwrap()).unwrap();
        let g = green_structure(phi.monoid());
        assert_eq!(g.kernel().len(), 2);
        assert_eq!(g.h().len(), 1);
    }
}
