mod common;

use common::*;
use lie_gsb::semigroup::{congruence_pairs, knuth_bendix, orient, words_up_to, SgpPresentation, StringRS};
use lie_gsb::Alphabet;
use proptest::prelude::*;

fn completed(names: &[&str], rules: &[&str]) -> StringRS {
    let a = Alphabet::new(names.iter().copied()).unwrap();
    let p = SgpPresentation::parse(a, rules).unwrap();
    knuth_bendix(&orient(&p), 10, 64).unwrap()
}

fn raw_rules(rs: &StringRS) -> Vec<(Raw, Raw)> {
    rs.rules().iter().map(|r| (raw(&r.lhs), raw(&r.rhs))).collect()
}

/// Normal forms agree exactly when the breadth-first closure connects the
/// two words.
#[test]
fn normal_forms_decide_congruence() {
    let cases: [(&[&str], &[&str], usize); 4] = [
        (&["y", "x"], &["xy=yx"], 0),
        (&["y", "x"], &["xx=x"], 0),
        (&["a", "b"], &["aba=b", "bb=b"], 3),
        (&["a", "b", "c"], &["ba=ab", "ca=ac", "cb=bc"], 0),
    ];
    for (names, rules, slack) in cases {
        let a = Alphabet::new(names.iter().copied()).unwrap();
        let given: Vec<(Raw, Raw)> = rules
            .iter()
            .map(|r| {
                let (u, v) = r.split_once('=').unwrap();
                (raw(&a.parse_word(u).unwrap()), raw(&a.parse_word(v).unwrap()))
            })
            .collect();
        let rs = completed(names, rules);
        let max = if names.len() == 3 { 5 } else { 6 };
        let words = words_up_to(&a, max);
        for u in &words {
            let class = congruence_class(&given, &raw(u), max + slack);
            let nu = rs.normal_form(u);
            for v in &words {
                let same = nu == rs.normal_form(v);
                assert_eq!(same, class.contains(&raw(v)), "{rules:?}: {u:?} {v:?}");
            }
        }
    }
}

#[test]
fn completion_is_reduced_and_oriented() {
    let rs = completed(&["a", "b"], &["aba=b", "bb=b"]);
    for (i, r) in rs.rules().iter().enumerate() {
        assert!(r.lhs > r.rhs);
        for (j, s) in rs.rules().iter().enumerate() {
            if i != j {
                assert!(!r.lhs.contains_factor(&s.lhs));
            }
        }
    }
    assert!(raw_rules(&rs).len() == 3);
}

#[test]
fn congruence_pairs_are_congruent() {
    let rs = completed(&["y", "x"], &["xx=x"]);
    for (u, v) in congruence_pairs(&rs, 4).unwrap() {
        assert!(u > v);
        assert_eq!(rs.normal_form(&u), rs.normal_form(&v));
    }
    let incomplete = orient(&SgpPresentation::parse(Alphabet::new(["a", "b"]).unwrap(), &["aba=b"]).unwrap());
    assert!(congruence_pairs(&incomplete, 3).is_err());
}

#[test]
fn completion_can_stop_early() {
    let a = Alphabet::new(["a", "b"]).unwrap();
    // aba = bab has no finite deg-lex completion.
    let p = SgpPresentation::parse(a, &["aba=bab"]).unwrap();
    let err = knuth_bendix(&orient(&p), 6, 8).unwrap_err();
    assert!(!err.system.is_complete());
}

proptest! {
    #[test]
    fn rewriting_decreases(rules in prop::collection::vec((prop::collection::vec(0u16..3, 1..4), prop::collection::vec(0u16..3, 1..4)), 1..4),
                           u in prop::collection::vec(0u16..3, 0..10)) {
        let a = Alphabet::new(["a", "b", "c"]).unwrap();
        let rules = rules.into_iter().map(|(l, r)| (lie_gsb::Word::from_indices(&l), lie_gsb::Word::from_indices(&r))).collect();
        let rs = orient(&SgpPresentation::new(a, rules).unwrap());
        prop_assert!(rs.rules().iter().all(|r| r.lhs > r.rhs));
        let u = lie_gsb::Word::from_indices(&u);
        let nf = rs.normal_form(&u);
        prop_assert!(nf <= u);
        prop_assert!(rs.is_irreducible(&nf));
        prop_assert_eq!(rs.normal_form(&nf), nf);
    }
}
