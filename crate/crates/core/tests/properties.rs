//! Structural laws of lengths, distances and surveys, checked exhaustively
//! on small blocks and by random sampling on larger ones.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use zerosum::metrics::catenary_degree_with;
use zerosum::survey::survey_with_limits;
use zerosum::{
    distance, enumerate_atoms, Block, Factorization, Factorizer, LengthSet, Limits, NumericalMonoid64, Status,
    SurveyConfig,
};

fn global_engine(n: u64) -> Factorizer {
    Factorizer::new(Arc::new(enumerate_atoms(z(n)).unwrap()), Limits::default())
}

#[test]
fn distance_is_a_metric() {
    for (n, max_len) in [(3, 15), (4, 14), (5, 13)] {
        let mut engine = global_engine(n);
        for x in all_blocks(n, max_len, true) {
            let zs = engine.factorizations(&x).unwrap();
            if zs.len() > 50 {
                continue;
            }
            for a in &zs {
                assert_eq!(distance(a, a).unwrap(), 0);
                for b in &zs {
                    let d = distance(a, b).unwrap();
                    assert_eq!(d, distance(b, a).unwrap());
                    if a != b {
                        assert!(d > 0);
                        let gap = a.length().abs_diff(b.length());
                        assert!(gap + 2 <= d, "{a} vs {b}: lengths differ by {gap}, d = {d}");
                    }
                    for c in &zs {
                        assert!(d <= distance(a, c).unwrap() + distance(c, b).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn distance_is_translation_invariant() {
    for (n, max_len) in [(3, 10), (4, 9), (5, 8)] {
        let mut engine = global_engine(n);
        let table = engine.table().clone();
        let shifts: Vec<Factorization> = (0..table.len())
            .map(|i| Factorization::new(table.clone(), vec![(i, 1)]).unwrap())
            .chain([Factorization::new(table.clone(), vec![(0, 2), (table.len() - 1, 1)]).unwrap()])
            .collect();
        for x in all_blocks(n, max_len, true) {
            let zs = engine.factorizations(&x).unwrap();
            if zs.len() > 50 {
                continue;
            }
            for a in &zs {
                for b in &zs {
                    let d = distance(a, b).unwrap();
                    for w in &shifts {
                        assert_eq!(distance(&a.concat(w).unwrap(), &b.concat(w).unwrap()).unwrap(), d);
                    }
                }
            }
        }
    }
}

#[test]
fn lengths_invariant_under_automorphisms() {
    for (n, max_len) in [(4, 10), (5, 10), (6, 9), (7, 8)] {
        let mut engine = global_engine(n);
        for x in all_blocks(n, max_len, false) {
            let l = engine.length_set(&x).unwrap();
            assert_eq!(engine.length_set(&x.negate()).unwrap(), l, "-({x})");
            for u in z(n).units() {
                let y = x.scale(u).unwrap();
                assert_eq!(engine.length_set(&y).unwrap(), l, "{u}·({x})");
            }
        }
    }
}

#[test]
fn catenary_invariant_under_automorphisms() {
    for (n, max_len) in [(5, 10), (7, 8)] {
        let mut engine = global_engine(n);
        for x in all_blocks(n, max_len, false) {
            let c = catenary_degree_with(&x, &mut engine).unwrap();
            assert!(c <= n);
            for u in z(n).units() {
                assert_eq!(catenary_degree_with(&x.scale(u).unwrap(), &mut engine).unwrap(), c);
            }
        }
    }
}

fn block_strategy(n: u64, max_mult: u64) -> impl Strategy<Value = Block> {
    proptest::collection::vec(0..=max_mult, n as usize).prop_map(move |mut v| {
        // close up the sum with the generator
        let s: u64 = v.iter().enumerate().map(|(i, &m)| i as u64 * m).sum::<u64>() % n;
        v[1] += (n - s) % n;
        Block::from_mult(z(n), v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_prime_shift(x in block_strategy(6, 3), t in 0u64..5) {
        let mut engine = global_engine(6);
        let (v0, stripped) = x.strip_zeros();
        let base = engine.length_set(&stripped).unwrap();
        prop_assert_eq!(engine.length_set(&x).unwrap(), base.shift(v0));
        prop_assert_eq!(engine.length_set(&x.with_zeros(t).unwrap()).unwrap(), base.shift(v0 + t));
        prop_assert_eq!(engine.delta_set(&x.with_zeros(t).unwrap()).unwrap(), base.delta());
    }

    #[test]
    fn lengths_are_superadditive(x in block_strategy(5, 3), y in block_strategy(5, 3)) {
        let mut engine = global_engine(5);
        let lx = engine.length_set(&x).unwrap();
        let ly = engine.length_set(&y).unwrap();
        let lxy = engine.length_set(&x.concat(&y).unwrap()).unwrap();
        let sums = LengthSet::from_iter_unsorted(
            lx.as_slice().iter().flat_map(|a| ly.as_slice().iter().map(move |b| a + b)),
        );
        prop_assert!(sums.is_subset_of(&lxy));
    }

    #[test]
    fn local_and_global_tables_agree(x in block_strategy(7, 2)) {
        let mut global = global_engine(7);
        let mut local = Factorizer::for_block(&x, Limits::default()).unwrap();
        prop_assert_eq!(local.length_set(&x).unwrap(), global.length_set(&x).unwrap());
        prop_assert_eq!(
            local.factorizations(&x).unwrap().len(),
            global.factorizations(&x).unwrap().len()
        );
    }

    #[test]
    fn factorizations_recompose(x in block_strategy(6, 2)) {
        let mut engine = Factorizer::for_block(&x, Limits::default()).unwrap();
        let zs = engine.factorizations(&x).unwrap();
        prop_assert!(!zs.is_empty());
        let lengths: BTreeSet<u64> = zs.iter().map(Factorization::length).collect();
        for z in &zs {
            prop_assert_eq!(&z.recompose().unwrap(), &x);
        }
        let lengths: Vec<u64> = lengths.into_iter().collect();
        let l = engine.length_set(&x).unwrap();
        prop_assert_eq!(l.as_slice(), lengths.as_slice());
    }

    #[test]
    fn text_forms_round_trip(x in block_strategy(9, 4)) {
        prop_assert_eq!(Block::parse(z(9), &x.to_text()).unwrap(), x.clone());
        prop_assert_eq!(Block::parse_serialized(&x.to_serialized()).unwrap(), x);
    }

    #[test]
    fn numerical_shift_law(s in 0u64..300, i in 0usize..3) {
        let m = NumericalMonoid64::new(vec![7, 10, 12]).unwrap();
        let a = m.generators()[i];
        let l = m.length_set(s);
        prop_assert!(l.shift(1).is_subset_of(&m.length_set(s + a)));
    }
}

#[test]
fn quotient_by_units_keeps_classification() {
    for (n, max_len) in [(5, 11), (6, 10), (7, 9)] {
        let full = SurveyConfig::new(z(n), max_len).unwrap();
        let a = survey_with_limits(&full, Limits::default()).unwrap();
        let b = survey_with_limits(&full.clone().quotient_by_units(true), Limits::default()).unwrap();
        assert!(b.blocks_examined < a.blocks_examined);
        assert_eq!(a.delta_union, b.delta_union);
        for ((t, sa), (u, sb)) in a.entries.iter().zip(&b.entries) {
            assert_eq!(t, u);
            assert_eq!(sa.label(), sb.label(), "{t:?} over Z_{n}");
            if let Status::Realized(w) = sb {
                assert_eq!(zerosum::delta_set(w).unwrap().as_slice(), t.as_slice());
                if let Status::Realized(v) = sa {
                    assert_eq!(v.len(), w.len(), "{t:?}: shortest witness length must agree");
                }
            }
        }
    }
}

#[test]
fn restricting_support_shrinks_realized_sets() {
    for (n, max_len) in [(5, 12), (6, 10)] {
        let full = SurveyConfig::new(z(n), max_len).unwrap();
        let a = survey_with_limits(&full, Limits::default()).unwrap();
        let realized: BTreeSet<Vec<u64>> = a.sets_with("realized").into_iter().collect();
        for support in [vec![1, n - 1], vec![1, 2, n - 1], vec![2, 3, n - 2]] {
            let b =
                survey_with_limits(&full.clone().with_support(support.clone()).unwrap(), Limits::default()).unwrap();
            assert!(b.blocks_examined <= a.blocks_examined);
            assert!(b.delta_union.is_subset(&a.delta_union));
            for t in b.sets_with("realized") {
                assert!(realized.contains(&t), "{t:?} over Z_{n} with support {support:?}");
            }
            if let Some((_, w)) = &b.max_delta_card {
                assert!(w.support().iter().all(|r| support.contains(r)));
            }
        }
    }
}

#[test]
fn surveys_do_not_depend_on_thread_count() {
    let config = SurveyConfig::new(z(6), 11).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| survey_with_limits(&config, Limits::default()).unwrap())
    };
    let one = run(1);
    assert_eq!(zerosum::report::survey_json(&one), zerosum::report::survey_json(&run(4)));
}
