//! Invariants of the measurability layer: sandwich soundness and
//! convergence, closure of the measurable class under the local-variety
//! operations, and extensivity of certificates.

mod common;

use common::Rng;
use regmeasure::density::ratio;
use regmeasure::measure::{decide_sf_measurable, gap_table, gd_sandwich};
use regmeasure::{fixtures, Alphabet, BoolOp, Caps, Dfa};

#[test]
fn sandwich_soundness_on_star_free_fixtures() {
    let caps = Caps::standard();
    let star_free: Vec<(&str, Dfa)> = vec![
        ("contains_ab", fixtures::contains_ab().unwrap()),
        ("starts_ab", fixtures::starts_ab().unwrap()),
        ("ba_star", fixtures::ba_star().unwrap()),
        ("empty", fixtures::empty_language().unwrap()),
        ("universal", fixtures::universal().unwrap()),
    ];
    for (name, d) in &star_free {
        for level in [0usize, 2, 4] {
            let r = gd_sandwich(d, level).unwrap();
            assert!(r.inclusion_verified, "{name} level {level}");
            // Recompile the certificates and re-verify the inclusions.
            let inner = r.inner.compile(d.alphabet(), &caps).unwrap();
            let outer = r.outer.compile(d.alphabet(), &caps).unwrap();
            assert!(inner
                .combine(&d.complement(), BoolOp::And)
                .unwrap()
                .is_empty_language());
            assert!(d
                .combine(&outer.complement(), BoolOp::And)
                .unwrap()
                .is_empty_language());
            assert!(r.gap >= ratio(0, 1));
        }
    }
}

#[test]
fn sandwich_gaps_shrink_on_star_free_fixtures() {
    for (name, d) in [
        ("contains_ab", fixtures::contains_ab().unwrap()),
        ("starts_ab", fixtures::starts_ab().unwrap()),
        ("ba_star", fixtures::ba_star().unwrap()),
    ] {
        let table = gap_table(&d, &[0, 2, 4, 6]).unwrap();
        for pair in table.windows(2) {
            assert!(
                pair[1].gap <= pair[0].gap,
                "{name}: gap grew from level {} to {}",
                pair[0].level,
                pair[1].level
            );
        }
        let last = table.last().unwrap();
        assert!(last.gap < ratio(1, 2), "{name}: gap at level 6");
    }
}

#[test]
fn full_gap_table_for_contains_ab() {
    let d = fixtures::contains_ab().unwrap();
    let table = gap_table(&d, &[0, 2, 4, 6, 8, 10]).unwrap();
    assert_eq!(table.len(), 6);
    assert_eq!(table[0].gap, ratio(1, 1));
    for pair in table.windows(2).skip(1) {
        assert!(pair[1].gap <= pair[0].gap, "weakly decreasing after level 2");
    }
    assert!(table[5].gap <= ratio(1, 10));
}

#[test]
fn measurable_class_is_closed_under_boolean_ops_and_quotients() {
    let mut rng = Rng::new(0x10CA1);
    let mut pairs = 0usize;
    while pairs < 100 {
        let a = common::random_dfa(&mut rng, 5);
        let b = common::random_dfa(&mut rng, 5);
        if !decide_sf_measurable(&a).unwrap().measurable
            || !decide_sf_measurable(&b).unwrap().measurable
        {
            continue;
        }
        pairs += 1;
        for op in [BoolOp::And, BoolOp::Or, BoolOp::Minus, BoolOp::Xor] {
            let c = a.combine(&b, op).unwrap();
            assert!(
                decide_sf_measurable(&c).unwrap().measurable,
                "Boolean combination must stay measurable"
            );
        }
        assert!(decide_sf_measurable(&a.complement()).unwrap().measurable);
        for (u, v) in [("a", ""), ("", "b"), ("ab", "ba"), ("b", "a")] {
            let q = a.quotient(u, v).unwrap();
            assert!(
                decide_sf_measurable(&q).unwrap().measurable,
                "quotient by ({u}, {v}) must stay measurable"
            );
        }
    }
}

#[test]
fn certified_expressions_are_always_measurable() {
    let mut rng = Rng::new(0xE57);
    let caps = Caps::standard();
    let ab = Alphabet::ab();
    for _ in 0..40 {
        let expr = common::random_gd_expr(&mut rng, 2);
        let d = expr.compile(&ab, &caps).unwrap();
        assert!(decide_sf_measurable(&d).unwrap().measurable);
    }
}
