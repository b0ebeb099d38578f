use lie_gsb::drinfeld_kohno::dk_build;
use lie_gsb::gsb::{
    all_ambiguities, check_gsb, check_gsb_with, complete, composition, find_ambiguities, ideal_member, reduce,
    special_s_word, CheckOptions, Reducer, Relation,
};
use lie_gsb::words::alsws_up_to;
use lie_gsb::{Alphabet, Coeff, Error, LiePoly, RelationSet, Ring, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, pool: &[Word], terms: usize) -> LiePoly {
    let mut p = LiePoly::zero();
    for _ in 0..terms {
        let w = pool[rng.gen_range(0..pool.len())].clone();
        p.add_scaled(&LiePoly::basis(w).unwrap(), Coeff::int(rng.gen_range(-4..=4)));
    }
    p
}

/// A verified ℚ-basis obtained by completion of a small presentation.
fn completed_example() -> RelationSet {
    let a = Alphabet::new(["a", "b", "c"]).unwrap();
    let p = |terms: &[(&str, i64)]| {
        LiePoly::from_terms(terms.iter().map(|(w, c)| (a.parse_word(w).unwrap(), Coeff::int(*c)))).unwrap()
    };
    let mut set = RelationSet::new(a.clone(), Ring::Rationals);
    set.push(Relation::new("R1", "input", p(&[("cb", 1), ("ca", -1)]), Ring::Rationals).unwrap())
        .unwrap();
    set.push(Relation::new("R2", "input", p(&[("ba", 2), ("caa", 1)]), Ring::Rationals).unwrap())
        .unwrap();
    let out = complete(&set, 6, 10).unwrap();
    assert!(out.complete);
    out.set
}

fn verified_sets() -> Vec<RelationSet> {
    let mut dk5 = dk_build(5).unwrap().into_relations();
    dk5.verify();
    vec![dk5, completed_example()]
}

/// Random sums of special normal S-words `[a s b]` reduce to zero.
#[test]
fn diamond_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for set in verified_sets() {
        assert!(set.is_verified());
        let pool = alsws_up_to(set.alphabet().len(), 5);
        let mut s_words = Vec::new();
        for w in &pool {
            for (i, r) in set.relations().iter().enumerate() {
                for pos in w.occurrences(r.lead()) {
                    let (a, b) = (w.subword(0, pos), w.subword(pos + r.lead().len(), w.len()));
                    let sw = special_s_word(&a, set.get(i), &b).unwrap();
                    assert_eq!(sw.leading_word().unwrap(), w);
                    s_words.push(sw);
                }
            }
        }
        assert!(!s_words.is_empty());
        for _ in 0..100 {
            let mut h = LiePoly::zero();
            for _ in 0..rng.gen_range(1..=4) {
                let sw = &s_words[rng.gen_range(0..s_words.len())];
                h.add_scaled(sw, Coeff::int(rng.gen_range(-5..=5)));
            }
            assert!(reduce(&h, &set).unwrap().is_zero());
            assert!(ideal_member(&h, &set).unwrap());
        }
    }
}

#[test]
fn reduction_is_confluent_and_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for set in verified_sets() {
        let pool = alsws_up_to(set.alphabet().len(), 4);
        let mut reducer = Reducer::new(&set);
        for _ in 0..15 {
            let h = random_poly(&mut rng, &pool, 4);
            let nf = reducer.reduce(&h).unwrap();
            assert_eq!(reducer.reduce(&nf).unwrap(), nf);
            assert!(nf.iter().all(|(w, _)| set.is_irreducible(w)));
            for _ in 0..20 {
                let other = reducer.reduce_with(&h, |rs| rng.gen_range(0..rs.len())).unwrap();
                assert_eq!(other, nf);
            }
        }
    }
}

#[test]
fn compositions_drop_below_ambiguity() {
    let mut sets = verified_sets();
    sets.push(dk_build(6).unwrap().into_relations());
    for set in sets {
        for (f, g, amb) in all_ambiguities(&set) {
            let c = composition(set.get(f), set.get(g), &amb).unwrap();
            if let Some((lead, _)) = c.leading() {
                assert!(lead < &amb.w);
            }
        }
    }
}

#[test]
fn indexed_ambiguities_match_pairwise_search() {
    for set in verified_sets() {
        let mut pairwise = Vec::new();
        for f in 0..set.len() {
            for g in 0..set.len() {
                for a in find_ambiguities(set.get(f), set.get(g)) {
                    pairwise.push((f, g, a.w.clone(), a.a.clone(), a.b.clone()));
                }
            }
        }
        let mut indexed: Vec<_> = all_ambiguities(&set)
            .into_iter()
            .map(|(f, g, a)| (f, g, a.w, a.a, a.b))
            .collect();
        pairwise.sort();
        indexed.sort();
        assert_eq!(indexed, pairwise);
    }
}

#[test]
fn parallel_check_is_deterministic() {
    let set = dk_build(6).unwrap().into_relations();
    let seq = check_gsb(&set);
    let par = check_gsb_with(&set, CheckOptions { parallel: true, censor_above_degree: None });
    assert_eq!(seq.to_lines(), par.to_lines());
    assert_eq!(seq.fingerprint(), par.fingerprint());
}

#[test]
fn integer_mode_needs_unit_leading_coefficients() {
    let a = Alphabet::new(["a", "b"]).unwrap();
    let p = LiePoly::from_terms([(a.parse_word("ba").unwrap(), Coeff::int(2))]).unwrap();
    assert!(Relation::new("R", "x", p.clone(), Ring::Integers).is_err());
    let r = Relation::new("R", "x", p, Ring::Rationals).unwrap();
    assert_eq!(r.poly().leading().unwrap().1, &Coeff::ONE);
}

#[test]
fn integer_reduction_refuses_non_unit_elimination() {
    assert!(matches!(
        Ring::Integers.divide(Coeff::ONE, Coeff::int(2)),
        Err(Error::NonUnitElimination { .. })
    ));
    assert_eq!(Ring::Rationals.divide(Coeff::ONE, Coeff::int(2)).unwrap(), Coeff::ratio(1, 2).unwrap());
}

#[test]
fn unverified_sets_refuse_membership() {
    let set = dk_build(4).unwrap().into_relations();
    assert!(matches!(ideal_member(&LiePoly::zero(), &set), Err(Error::UnverifiedBasis)));
}
