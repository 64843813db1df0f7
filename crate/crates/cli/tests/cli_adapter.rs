//! The CLI must report exactly what the library computes.

use serde_json::Value;

use murasugi_cli::{braid_json, profile_json, run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use murasugi_core::braid::{murasugi_concat, parse_braid, split_braid, Shuffle};
use murasugi_core::construction::{apply_crossing_changes, unknotting_crossing_set};
use murasugi_core::distance::{dm_interval, gon_merge, plan_triple_sum, DistanceData, KnotInput};
use murasugi_core::invariants::profile_of_braid;
use murasugi_core::plumbing::{boundary_profile, PlumbingWord};

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["murasugi"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--format", "json"]);
    let out = run(full);
    let v = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, v)
}

fn code(args: &[&str]) -> i32 {
    let mut full = vec!["murasugi"];
    full.extend_from_slice(args);
    run(full).code
}

#[test]
fn envelope() {
    let (c, v) = json(&["gon-merge", "4", "4", "--knot"]);
    assert_eq!(c, EXIT_OK);
    assert_eq!((v["version"].as_u64(), v["ok"].as_bool()), (Some(1), Some(true)));
    assert_eq!(v["gon"], gon_merge(&[4, 4], true).unwrap());
}

#[test]
fn invariants_match_library() {
    let w = parse_braid("1 -2 1 -2", None).unwrap();
    let (c, v) = json(&["invariants", "1 -2 1 -2"]);
    assert_eq!(c, EXIT_OK);
    assert_eq!(v["braid"], braid_json(&w));
    assert_eq!(v["profile"], profile_json(&profile_of_braid(&w)));
    assert_eq!(v["identified"], serde_json::json!(["4_1"]));

    let p: PlumbingWord = "S[2,4]".parse().unwrap();
    let (_, v) = json(&["invariants", "S[2,4]"]);
    assert_eq!(v["profile"], profile_json(&boundary_profile(&p)));
    assert_eq!((v["two_bridge"]["p"].as_i64(), v["two_bridge"]["q"].as_i64()), (Some(7), Some(4)));
}

#[test]
fn emitted_words_round_trip() {
    let (_, v) = json(&["split", "1 2 1 3 -2 4 -3 4", "--at", "2"]);
    let w = parse_braid("1 2 1 3 -2 4 -3 4", None).unwrap();
    let (outer, inner) = split_braid(&w, 2).unwrap();
    for (key, expected) in [("outer", &outer), ("inner", &inner)] {
        let b = &v[key]["braid"];
        let reparsed = parse_braid(b["text"].as_str().unwrap(), b["strands"].as_u64().map(|n| n as usize)).unwrap();
        assert_eq!(&reparsed, expected);
    }

    let (_, v) = json(&["concat", "1 1 1", "-1 -1 -1", "--shuffle", "010101"]);
    let shuffle: Shuffle = "010101".parse().unwrap();
    let lib = murasugi_concat(
        &parse_braid("1 1 1", None).unwrap(),
        &parse_braid("-1 -1 -1", None).unwrap(),
        Some(&shuffle),
    )
    .unwrap();
    assert_eq!(v["word"], braid_json(&lib.word));
    assert_eq!(v["gon_size"], lib.gon_size);
    assert_eq!(v["shuffle"], "010101");

    let (_, v) = json(&["plumbing", "normalize", "S[2,0,0,2]"]);
    let end: PlumbingWord = v["end"].as_str().unwrap().parse().unwrap();
    assert_eq!(end.to_string(), "S[2,2]");
}

#[test]
fn unknot_set_matches_library() {
    let w = parse_braid("1 2 1 2", None).unwrap();
    let set: Vec<usize> = unknotting_crossing_set(&w, 2).unwrap().into_iter().collect();
    let (flipped, _) = apply_crossing_changes(&w, &set).unwrap();
    let (c, v) = json(&["unknot-set", "1 2 1 2", "--basepoint", "2"]);
    assert_eq!(c, EXIT_OK);
    assert_eq!(v["positions"], serde_json::json!(set));
    assert_eq!(v["flipped"], braid_json(&flipped));
    assert_eq!(v["certificate"], "certified_descending");
}

#[test]
fn dm_bounds_match_library() {
    let k = |n: &str| KnotInput::named(n).unwrap();
    let i = dm_interval(&k("3_1"), &k("3_1"), &k("5_2"), &DistanceData::builtin()).unwrap();
    let (c, v) = json(&["dm-bounds", "3_1", "3_1", "5_2", "--plan"]);
    assert_eq!(c, EXIT_OK);
    assert_eq!(v["interval"]["lower"], i.lower);
    assert_eq!(v["interval"]["upper"], i.upper.unwrap());
    assert_eq!(v["interval"]["connected_sum_status"], i.status.to_string());
    assert_eq!(v["plan"]["final_gon"], plan_triple_sum(1, 1).final_gon);
}

#[test]
fn plumbing_search_reports_chain() {
    let (c, v) = json(&["plumbing", "search", "S[2,2,-2,0,2,2]", "--target", "5_2"]);
    assert_eq!(c, EXIT_OK);
    let results: Vec<&str> = v["steps"].as_array().unwrap().iter().map(|s| s["result"].as_str().unwrap()).collect();
    assert_eq!(results, ["S[2,2,0,2]", "S[2,4]"]);
    let (c, v) = json(&["plumbing", "search", "S[2,2]", "--target", "4_1"]);
    assert_eq!((c, v["found"].as_bool()), (EXIT_FAILED, Some(false)));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify-triple", "1 2", "--at", "1", "--expect", "O,O,O"]), EXIT_OK);
    assert_eq!(code(&["verify-triple", "1 2", "--at", "1", "--expect", "O,O,3_1"]), EXIT_FAILED);
    assert_eq!(code(&["verify-triple", "1 2", "--at", "1", "--expect", "O,O"]), EXIT_USAGE);
    assert_eq!(code(&["invariants", "1 x"]), EXIT_USAGE);
    assert_eq!(code(&["dm-bounds", "3_1", "3_1", "13_1"]), EXIT_USAGE);
    assert_eq!(code(&["split", "1 2", "--at", "5"]), EXIT_USAGE);
    assert_eq!(code(&["bogus"]), EXIT_USAGE);
    assert_eq!(code(&["--help"]), EXIT_OK);
}

#[test]
fn table_lists_entries() {
    let out = run(["murasugi", "table"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("3_1") && out.stdout.contains("9_1"));
}
