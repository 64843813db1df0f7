use murasugi_core::construction::{search_triples, SearchBudget};
use murasugi_core::distance::{dm_lower_bounds, DistanceData, KnotInput};
use murasugi_core::invariants::identify;
use murasugi_core::plumbing::{
    apply_rule2, apply_rule3, boundary_profile, rewrite_search, star4, two_bridge_fraction, PlumbingWord,
    RewriteBudget, RewriteOutcome, RewriteStep,
};
use murasugi_core::KnotTable;

fn s(text: &str) -> PlumbingWord {
    text.parse().unwrap()
}

fn found(start: &str, target: &str) -> murasugi_core::RewriteTrace {
    let target = KnotTable::builtin().lookup(target).unwrap().profile.clone();
    match rewrite_search(&s(start), &target, RewriteBudget::default()) {
        RewriteOutcome::Found(t) => t,
        other => panic!("{start}: {other:?}"),
    }
}

#[test]
fn plumbing_two_trefoils_gives_5_1() {
    let p = star4(&s("S[2,2]"), &s("S[2,2]"));
    assert_eq!(p, s("S[2,2,2,2]"));
    assert_eq!(identify(&boundary_profile(&p)), vec!["5_1"]);
}

#[test]
fn five_two_chain() {
    let start = star4(&apply_rule2(&s("S[2,2]"), -2, true).unwrap(), &s("S[2,2]"));
    assert_eq!(start, s("S[2,2,-2,0,2,2]"));
    let mid = apply_rule3(&start, 2).unwrap();
    assert_eq!(mid, s("S[2,2,0,2]"));
    assert_eq!(apply_rule3(&mid, 1).unwrap(), s("S[2,4]"));
    let t = found("S[2,2,-2,0,2,2]", "5_2");
    assert_eq!(t.end, s("S[2,4]"));
    assert_eq!(
        t.steps,
        vec![RewriteStep::MergeAcrossZero { position: 2 }, RewriteStep::MergeAcrossZero { position: 1 }]
    );
    assert!(t.is_consistent());
    assert_eq!(identify(&boundary_profile(&t.end)), vec!["5_2"]);
}

#[test]
fn unknot_sums_to_trefoil() {
    let start = star4(&s("S[2,0]"), &s("S[0,2]"));
    let t = found(&start.to_string(), "3_1");
    assert_eq!(t.end, s("S[2,2]"));
    assert_eq!(t.steps.len(), 1);
}

#[test]
fn unknot_sums_to_unknot() {
    let start = star4(&s("S[2,-2]"), &s("S[2,0]"));
    let start = star4(&start, &s("S[-2,2]"));
    assert_eq!(start, s("S[2,-2,2,0,-2,2]"));
    let mid = apply_rule3(&start, 2).unwrap();
    assert_eq!(mid, s("S[2,-2,0,2]"));
    let end = apply_rule3(&mid, 1).unwrap();
    assert_eq!(end, s("S[2,0]"));
    assert!(boundary_profile(&end).is_unknot_consistent());
    let t = found(&start.to_string(), "unknot");
    assert_eq!(t.end, s("S[]"));
    eprintln!("{:?}", t.steps);
}

#[test]
fn two_bridge_determinants() {
    for w in ["S[2,2]", "S[2,4]", "S[2,2,2,2]", "S[2,-2]", "S[4,-2,6]", "S[2,2,2]"] {
        let w = s(w);
        assert_eq!(two_bridge_fraction(&w).p as u64, boundary_profile(&w).determinant, "{w}");
    }
}

#[test]
fn nine_one_obstruction_and_search() {
    let k = |n| KnotInput::named(n).unwrap();
    let lb = dm_lower_bounds(&k("3_1"), &k("3_1"), &k("9_1"), &DistanceData::builtin());
    assert!(lb.value >= 6);
    let r = search_triples(["3_1", "3_1", "9_1"], SearchBudget { max_letters: 8, ..Default::default() }).unwrap();
    assert!(r.witnesses.iter().all(|w| w.gon_size() as u64 >= lb.value));
}

#[test]
fn unknots_sum_to_trefoil_by_search() {
    let t = std::time::Instant::now();
    let r = search_triples(["O", "O", "3_1"], SearchBudget::default()).unwrap();
    eprintln!("{} witnesses, {} states, {:?}", r.witnesses.len(), r.states_explored, t.elapsed());
    for w in &r.witnesses {
        eprintln!("{} k={} m={}", w.composite.word, w.composite.split_index, w.gon_size());
    }
    assert!(!r.witnesses.is_empty());
}

#[test]
fn witnessed_gordian_pairs() {
    let table = KnotTable::builtin();
    let trefoil = &table.lookup("3_1").unwrap().profile;
    let five_one = &table.lookup("5_1").unwrap().braid;
    for i in 0..five_one.len() {
        let flipped = murasugi_core::invariants::profile_of_braid(&five_one.with_flip(i).unwrap());
        assert!(flipped.same_link_invariants(trefoil));
    }
    let five_two = &table.lookup("5_2").unwrap().braid;
    let flipped = five_two.with_flip(3).unwrap();
    assert_eq!(flipped.to_string(), "1 1 1 -2 -1 2");
    assert!(murasugi_core::invariants::profile_of_braid(&flipped).same_link_invariants(trefoil));
}
