use proptest::prelude::*;

use murasugi_core::braid::{free_reduce, murasugi_concat, split_braid, BraidWord, Letter, Shuffle, Sign};
use murasugi_core::construction::{apply_crossing_changes, unknotting_crossing_set};
use murasugi_core::distance::{dm_interval, dm_lower_bounds, dm_upper_bound, ConnectedSumStatus, DistanceData, KnotInput};
use murasugi_core::invariants::{alexander_via_burau, profile_of_braid, seifert_matrix_of_braid};
use murasugi_core::plumbing::{
    apply_rule2, apply_rule3, apply_rule3_inverse, boundary_profile, two_bridge_fraction, PlumbingWord,
};
use murasugi_core::KnotTable;
use num_bigint::BigInt;
use num_traits::Signed;

fn word(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec((1..n, any::<bool>()), 0..=max_len).prop_map(move |ls| {
            let letters = ls
                .into_iter()
                .map(|(i, pos)| Letter::new(i, if pos { Sign::Positive } else { Sign::Negative }))
                .collect();
            BraidWord::new(n, letters).unwrap()
        })
    })
}

fn knot_word() -> impl Strategy<Value = BraidWord> {
    word(5, 12).prop_filter("closure must be a knot", |w| w.components() == 1)
}

fn shuffle_for(a: usize, b: usize) -> impl Strategy<Value = Shuffle> {
    Just(Shuffle::concatenation(a, b).0).prop_shuffle().prop_map(Shuffle)
}

fn plumbing(max_len: usize) -> impl Strategy<Value = PlumbingWord> {
    prop::collection::vec((-3i64..=3).prop_map(|x| 2 * x), 0..=max_len).prop_map(|t| PlumbingWord::new(t).unwrap())
}

fn table_names() -> Vec<String> {
    KnotTable::builtin().entries().iter().map(|e| e.name.clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn seifert_and_burau_agree(w in word(5, 12)) {
        prop_assert_eq!(seifert_matrix_of_braid(&w).alexander(), alexander_via_burau(&w));
    }

    #[test]
    fn knot_alexander_normalisation(w in knot_word()) {
        let p = profile_of_braid(&w);
        prop_assert_eq!(p.alexander.eval_at_one(), BigInt::from(1));
        prop_assert_eq!(p.alexander.eval_at_minus_one().abs(), BigInt::from(p.determinant));
        prop_assert!(p.alexander.is_symmetric());
        prop_assert_eq!(p.signature % 2, 0);
    }

    #[test]
    fn free_reduction_keeps_profile(w in word(5, 10), at in 0usize..11, i in 1usize..5, pos in any::<bool>()) {
        let i = 1 + (i - 1) % (w.strands() - 1);
        let l = Letter::new(i, if pos { Sign::Positive } else { Sign::Negative });
        let mut letters = w.letters().to_vec();
        let at = at.min(letters.len());
        letters.splice(at..at, [l, l.inverse()]);
        let padded = BraidWord::new(w.strands(), letters).unwrap();
        prop_assert_eq!(free_reduce(&padded).components(), w.components());
        let (a, b) = (profile_of_braid(&padded), profile_of_braid(&w));
        prop_assert!(a.same_link_invariants(&b));
    }

    #[test]
    fn markov_moves_keep_profile(w in word(4, 10), r in 0usize..10, pos in any::<bool>()) {
        let p = profile_of_braid(&w);
        let sign = if pos { Sign::Positive } else { Sign::Negative };
        prop_assert!(profile_of_braid(&w.stabilized(sign)).same_link_invariants(&p));
        prop_assert!(profile_of_braid(&w.rotated(r)).same_link_invariants(&p));
    }

    #[test]
    fn split_inverts_concat(
        (inner, outer, s) in (word(4, 6), word(4, 6)).prop_flat_map(|(a, b)| {
            let (x, y) = (a.len(), b.len());
            (Just(a), Just(b), shuffle_for(x, y))
        })
    ) {
        let c = murasugi_concat(&inner, &outer, Some(&s)).unwrap();
        let (o, i) = split_braid(&c.word, c.split_index).unwrap();
        prop_assert_eq!(&o, &outer);
        prop_assert_eq!(&i, &inner);
        prop_assert_eq!(c.shuffle(), s);
        let k = c.split_index;
        prop_assert_eq!(c.gon_size, 2 * (inner.count_index(k) + outer.count_index(1)));
        let plain = murasugi_concat(&inner, &outer, None).unwrap();
        prop_assert_eq!(plain.gon_size, c.gon_size);
    }

    #[test]
    fn walk_unknots_every_knot(w in knot_word()) {
        for basepoint in 1..=w.strands() {
            let set = unknotting_crossing_set(&w, basepoint).unwrap();
            prop_assert!(set.len() <= w.len().div_ceil(2));
            let (flipped, annuli) = apply_crossing_changes(&w, &set.iter().copied().collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(annuli.len(), set.len());
            prop_assert!(profile_of_braid(&flipped).is_unknot_consistent());
        }
    }

    #[test]
    fn rewrites_keep_boundary(p in plumbing(6), a in (-3i64..=3).prop_map(|x| 2 * x), at in 0usize..8) {
        let before = boundary_profile(&p);
        let grown = apply_rule2(&p, a, true).unwrap();
        prop_assert!(boundary_profile(&grown).same_link_invariants(&before));
        prop_assert_eq!(apply_rule2(&grown, 0, false).unwrap(), p.clone());
        if !p.is_empty() {
            let i = at % p.len();
            let split = apply_rule3_inverse(&p, i, a).unwrap();
            prop_assert!(boundary_profile(&split).same_link_invariants(&before));
            prop_assert_eq!(apply_rule3(&split, i).unwrap(), p);
        }
    }

    #[test]
    fn two_bridge_numerator_is_determinant(p in plumbing(6)) {
        prop_assume!(p.is_minimal_genus());
        let f = two_bridge_fraction(&p);
        let prof = boundary_profile(&p);
        prop_assert_eq!(f.p as u64, prof.determinant);
        prop_assert_eq!(f.components, prof.components);
    }
}

#[test]
fn table_words_pass_oracle_and_walk() {
    for e in KnotTable::builtin().entries() {
        assert_eq!(seifert_matrix_of_braid(&e.braid).alexander(), alexander_via_burau(&e.braid), "{}", e.name);
        let set = unknotting_crossing_set(&e.braid, 1).unwrap();
        let (flipped, _) = apply_crossing_changes(&e.braid, &set.into_iter().collect::<Vec<_>>()).unwrap();
        assert!(profile_of_braid(&flipped).is_unknot_consistent(), "{}", e.name);
    }
}

#[test]
fn connected_sum_is_additive_on_table_pairs() {
    let table = KnotTable::builtin();
    for a in table.entries() {
        for b in table.entries().iter().filter(|e| e.crossings <= 5) {
            let c = murasugi_concat(&a.braid, &b.braid, None).unwrap();
            let p = profile_of_braid(&c.word);
            assert_eq!(p.alexander, (&a.profile.alexander * &b.profile.alexander).normalized(), "{}#{}", a.name, b.name);
            assert_eq!(p.signature, a.profile.signature + b.profile.signature);
            assert_eq!(p.determinant, a.profile.determinant * b.profile.determinant);
        }
    }
}

#[test]
fn bounds_are_even_and_symmetric() {
    let data = DistanceData::builtin();
    let names = table_names();
    for x in &names {
        for y in &names {
            for z in &names {
                let (k1, k2, k3) = (KnotInput::named(x).unwrap(), KnotInput::named(y).unwrap(), KnotInput::named(z).unwrap());
                let i = dm_interval(&k1, &k2, &k3, &data).unwrap();
                assert!(i.lower >= 2 && i.lower % 2 == 0);
                assert!(i.upper.is_some_and(|u| u % 2 == 0 && u >= i.lower), "{x} {y} {z}: {i}");
                if i.status == ConnectedSumStatus::CertifiedDistinct {
                    assert!(i.lower >= 4);
                }
                assert_eq!(dm_lower_bounds(&k1, &k2, &k3, &data).value, dm_lower_bounds(&k2, &k1, &k3, &data).value);
                assert_eq!(dm_upper_bound(&k1, &k2, &k3, &data).value, dm_upper_bound(&k2, &k1, &k3, &data).value);
            }
        }
    }
}
