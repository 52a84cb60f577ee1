use proptest::prelude::*;

use quandle_core::composition::{compose, power, OpWord};
use quandle_core::enumerate::{canonical_form, enumerate_quandles};
use quandle_core::iso::is_isomorphic;
use quandle_core::table::{Classification, OpTable, Sign};
use quandle_core::Permutation;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

/// A random right quasigroup: every column a permutation.
fn right_quasigroup(n: usize) -> impl Strategy<Value = OpTable> {
    prop::collection::vec(permutation(n), n)
        .prop_map(move |cols| OpTable::from_fn(n, |a, b| cols[b].apply(a)).unwrap())
}

fn sized_right_quasigroups() -> impl Strategy<Value = (OpTable, OpTable, OpTable)> {
    (1usize..=6).prop_flat_map(|n| {
        (
            right_quasigroup(n),
            right_quasigroup(n),
            right_quasigroup(n),
        )
    })
}

fn any_table() -> impl Strategy<Value = OpTable> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(0..n, n * n).prop_map(move |entries| {
            OpTable::from_rows(entries.chunks(n).map(<[usize]>::to_vec).collect()).unwrap()
        })
    })
}

fn quandle_of_order(n: usize) -> impl Strategy<Value = OpTable> {
    let all = enumerate_quandles(n, false).unwrap();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn labelled_quandle() -> impl Strategy<Value = OpTable> {
    (1usize..=5).prop_flat_map(quandle_of_order)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_forms_a_group((a, b, c) in sized_right_quasigroups()) {
        let trivial = OpTable::trivial(a.n()).unwrap();
        let ab_c = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let a_bc = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(compose(&a, &trivial).unwrap(), a.clone());
        prop_assert_eq!(compose(&trivial, &a).unwrap(), a.clone());
        let inv = a.right_inverse().unwrap();
        prop_assert_eq!(compose(&a, &inv).unwrap(), trivial.clone());
        prop_assert_eq!(inv.right_inverse().unwrap(), a.clone());
        prop_assert!(compose(&a, &b).unwrap().is_right_quasigroup());
    }

    #[test]
    fn powers_add((a, _, _) in sized_right_quasigroups(), m in -4i64..=4, k in -4i64..=4) {
        let lhs = compose(&power(&a, m).unwrap(), &power(&a, k).unwrap()).unwrap();
        prop_assert_eq!(lhs, power(&a, m + k).unwrap());
    }

    #[test]
    fn classification_matches_axioms(t in any_table()) {
        let report = t.axioms_report();
        prop_assert_eq!(report.idempotent, (0..t.n()).all(|a| t.get(a, a) == a));
        let sd = (0..t.n()).all(|a| (0..t.n()).all(|b| (0..t.n()).all(|c| {
            t.get(t.get(a, b), c) == t.get(t.get(a, c), t.get(b, c))
        })));
        prop_assert_eq!(report.self_distributive, sd);
        prop_assert_eq!(
            report.classification,
            Classification::from_axioms(report.idempotent, report.right_quasigroup, sd)
        );
    }

    #[test]
    fn relabelling_preserves_structure(t in labelled_quandle(), seed in any::<u64>()) {
        let n = t.n();
        let mut images: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            images.swap(i, (state >> 33) as usize % (i + 1));
        }
        let sigma = Permutation::from_images(images).unwrap();
        let moved = t.relabel(&sigma);
        prop_assert!(moved.is_quandle());
        let iso = is_isomorphic(&t, &moved);
        prop_assert!(iso.is_some());
        prop_assert_eq!(t.relabel(&iso.unwrap()), moved.clone());
        prop_assert_eq!(canonical_form(&t).table, canonical_form(&moved).table);
        prop_assert_eq!(t.rank().unwrap(), moved.rank().unwrap());
        prop_assert_eq!(t.inner_group().unwrap().order(), moved.inner_group().unwrap().order());
    }

    #[test]
    fn quandle_invariants(t in labelled_quandle()) {
        let n = t.n();
        let rank = t.rank().unwrap();
        prop_assert!(rank >= t.orbit_count().unwrap() && rank <= n);
        let witness = t.rank_witness().unwrap();
        prop_assert_eq!(witness.len(), rank);
        let closure = t.subquandle_closure(&witness.iter().copied().collect()).unwrap();
        prop_assert_eq!(closure.len(), n);
        // the right inverse of a quandle is a quandle
        prop_assert!(t.right_inverse().unwrap().is_quandle());
        // (a * b) *^-1 b = a, written as a left-normed product
        for a in 0..n {
            for b in 0..n {
                let v = t.evaluate_left_normed(a, &[(b, Sign::Plus), (b, Sign::Minus)]).unwrap();
                prop_assert_eq!(v, a);
            }
        }
        // every power of a quandle is a quandle
        for k in -3..=3 {
            prop_assert!(power(&t, k).unwrap().is_quandle());
        }
    }

    #[test]
    fn words_reduce_freely(syllables in prop::collection::vec((0usize..3, -3i64..=3), 0..8)) {
        let w = OpWord::new(syllables.clone());
        prop_assert!(w.syllables().windows(2).all(|p| p[0].0 != p[1].0));
        prop_assert!(w.syllables().iter().all(|&(_, e)| e != 0));
        prop_assert_eq!(w.concat(&w.inverse()), OpWord::empty());
        let names = ["a", "b", "c"];
        prop_assert_eq!(OpWord::parse(&w.display_with(&names), &names).unwrap(), w.clone());
        let total: i64 = syllables.iter().map(|&(_, e)| e).sum();
        let reduced: i64 = w.syllables().iter().map(|&(_, e)| e).sum();
        prop_assert_eq!(total, reduced);
    }
}
