//! Regression check for the nine-element transformation monoid whose
//! accepted kernel fiber is not approximable by Boolean combinations of
//! star-free and group languages.
//!
//! The monoid lives inside the full transformation monoid on four points and
//! is generated by two idempotents. Every fact the analysis depends on is
//! recomputed and hard-checked here; any mismatch is an internal error.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::density::{fiber_densities, ratio, BigRational};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::measure::decide_sf_measurable;
use crate::monoid::green_structure;

/// Everything the counterexample asserts, in display form.
#[derive(Debug, Clone)]
pub struct CounterexampleReport {
    pub monoid_size: usize,
    /// Canonical element names in id order.
    pub elements: Vec<String>,
    /// e·e = e, f·f = f, efefe = e, fefef = f.
    pub relations_hold: bool,
    pub kernel: Vec<String>,
    pub h_class_e: Vec<String>,
    pub h_class_f: Vec<String>,
    pub kernel_r_class_count: usize,
    pub kernel_h_class_sizes: Vec<usize>,
    /// Decision for the fiber of `e`; must be immeasurable.
    pub sf_measurable: bool,
    pub certificate_h_class: Vec<String>,
    /// `(name, density)` per element.
    pub fiber_densities: Vec<(String, BigRational)>,
    pub identity_fiber_null: bool,
    pub kernel_fiber_sum_one: bool,
    pub kernel_fibers_positive: bool,
}

fn ensure(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::internal(format!("counterexample check failed: {what}")))
    }
}

/// Rebuild the counterexample monoid and verify every asserted fact.
pub fn counterexample_report() -> Result<CounterexampleReport> {
    let phi = fixtures::counterexample_morphism()?;
    let monoid = phi.monoid();

    ensure(monoid.size() == 9, "monoid has 9 elements")?;
    let names: Vec<String> = (0..monoid.size()).map(|x| phi.element_name(x)).collect();
    let expected: BTreeSet<&str> = ["id", "e", "ef", "efe", "efef", "f", "fe", "fef", "fefe"]
        .into_iter()
        .collect();
    let actual: BTreeSet<&str> = names.iter().map(|s| s.as_str()).collect();
    ensure(actual == expected, "element set matches the generator words")?;

    let eval = |w: &str| phi.eval(w).expect("generator words are in-alphabet");
    let relations_hold = eval("ee") == eval("e")
        && eval("ff") == eval("f")
        && eval("efefe") == eval("e")
        && eval("fefef") == eval("f");
    ensure(relations_hold, "defining relations hold")?;

    let green = green_structure(monoid);
    let kernel_names: Vec<String> = green.kernel().iter().map(|&x| phi.element_name(x)).collect();
    ensure(
        green.kernel().len() == 8 && !green.kernel().contains(&monoid.identity()),
        "kernel is the 8 non-identity elements",
    )?;

    let h_of = |w: &str| -> Vec<String> {
        let mut class: Vec<String> = green
            .h_class_of(eval(w))
            .iter()
            .map(|&x| phi.element_name(x))
            .collect();
        class.sort();
        class
    };
    let h_class_e = h_of("e");
    let h_class_f = h_of("f");
    ensure(h_class_e == ["e", "efe"], "H-class of e is {e, efe}")?;
    ensure(h_class_f == ["f", "fef"], "H-class of f is {f, fef}")?;

    let kernel_r_class_count = green.kernel_r_classes().len();
    ensure(kernel_r_class_count == 2, "kernel splits into two minimal right ideals")?;
    let mut kernel_h_class_sizes: Vec<usize> = {
        let mut seen = BTreeSet::new();
        let mut sizes = Vec::new();
        for &x in green.kernel() {
            let class = green.h_class_of(x);
            if seen.insert(class[0]) {
                sizes.push(class.len());
            }
        }
        sizes
    };
    kernel_h_class_sizes.sort();
    ensure(
        kernel_h_class_sizes == vec![2, 2, 2, 2],
        "kernel H-classes all have size 2",
    )?;

    let fiber = fixtures::counterexample_fiber()?;
    let decision = decide_sf_measurable(&fiber)?;
    ensure(!decision.measurable, "the fiber of e is immeasurable")?;
    let certificate_h_class = decision
        .certificate
        .map(|c| c.element_names)
        .unwrap_or_default();
    ensure(
        certificate_h_class == vec!["e", "efe"],
        "certificate names the H-class of e",
    )?;

    let fibers = fiber_densities(&phi)?;
    let identity_fiber_null = fibers[monoid.identity()].is_zero();
    ensure(identity_fiber_null, "identity fiber is null")?;
    let kernel_sum: BigRational = green.kernel().iter().map(|&x| fibers[x].clone()).sum();
    let kernel_fiber_sum_one = kernel_sum == ratio(1, 1);
    ensure(kernel_fiber_sum_one, "kernel fibers sum to 1")?;
    let kernel_fibers_positive = green
        .kernel()
        .iter()
        .all(|&x| fibers[x] > BigRational::zero());
    ensure(kernel_fibers_positive, "every kernel fiber has positive density")?;

    Ok(CounterexampleReport {
        monoid_size: monoid.size(),
        elements: names.clone(),
        relations_hold,
        kernel: kernel_names,
        h_class_e,
        h_class_f,
        kernel_r_class_count,
        kernel_h_class_sizes,
        sf_measurable: decision.measurable,
        certificate_h_class,
        fiber_densities: names
            .into_iter()
            .zip(fibers)
            .collect(),
        identity_fiber_null,
        kernel_fiber_sum_one,
        kernel_fibers_positive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::format_rational;

    #[test]
    fn report_reproduces_all_facts() {
        let r = counterexample_report().unwrap();
        assert_eq!(r.monoid_size, 9);
        assert!(r.relations_hold);
        assert_eq!(r.kernel.len(), 8);
        assert_eq!(r.h_class_e, vec!["e", "efe"]);
        assert_eq!(r.h_class_f, vec!["f", "fef"]);
        assert_eq!(r.kernel_r_class_count, 2);
        assert!(!r.sf_measurable);
        assert!(r.identity_fiber_null);
        assert!(r.kernel_fiber_sum_one);
        assert!(r.kernel_fibers_positive);
    }

    #[test]
    fn each_kernel_fiber_is_one_eighth() {
        let r = counterexample_report().unwrap();
        for (name, value) in &r.fiber_densities {
            if name == "id" {
                assert_eq!(format_rational(value), "0/1");
            } else {
                assert_eq!(format_rational(value), "1/8", "fiber {name}");
            }
        }
    }
}
