mod common;

use common::*;
use lie_gsb::cli::parse_expr;
use lie_gsb::drinfeld_kohno::{dk_basis, dk_build, dk_check, dk_ranks, has_constant_first_index};
use lie_gsb::gsb::{check_gsb, reduce, Relation};
use lie_gsb::linalg::rank;
use lie_gsb::words::{alsws_of_degree, alsws_up_to};
use lie_gsb::{Coeff, LiePoly, Word};

#[test]
fn relations_match_their_written_form() {
    for n in 4..=6 {
        let dk = dk_build(n).unwrap();
        let a = dk.alphabet();
        let m = n - 1;
        let mut want = Vec::new();
        for k in 1..=m {
            for i in k + 1..=m {
                for j in i + 1..=m {
                    for l in k + 1..=m {
                        if l != i && l != j {
                            want.push(format!("[t{i}{j}, t{k}{l}]"));
                        }
                    }
                }
            }
        }
        for i in 1..=m {
            for j in i + 1..=m {
                for k in j + 1..=m {
                    want.push(format!("[t{j}{k}, t{i}{j}] + [t{i}{k}, t{i}{j}]"));
                    want.push(format!("[t{j}{k}, t{i}{k}] - [t{i}{k}, t{i}{j}]"));
                }
            }
        }
        let got: Vec<&LiePoly> = dk.relations().relations().iter().map(Relation::poly).collect();
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            let p = parse_expr(w, a).unwrap().eval();
            assert!(*g == &p || *g == &p.neg(), "{w}");
        }
    }
}

/// Every ambiguity found is one of the nine families, and every instance of
/// the nine families is found.
#[test]
fn ambiguity_inventory() {
    for n in 4..=7 {
        let r = dk_check(n).unwrap();
        assert!(r.passed(), "n={n}");
        let dk = dk_build(n).unwrap();
        let mut found: Vec<(usize, usize, Raw)> = r
            .report
            .records
            .iter()
            .map(|rec| {
                (
                    dk.family_of(rec.f).unwrap().ordinal(),
                    dk.family_of(rec.g).unwrap().ordinal(),
                    raw(&rec.ambiguity.w),
                )
            })
            .collect();
        found.sort();
        assert_eq!(found, dk_ambiguity_oracle(n - 1), "n={n}");
        assert!(r.classes.iter().all(Option::is_some));
    }
    assert!(dk_ambiguity_oracle(3).is_empty());
}

#[test]
fn basis_is_constant_first_index_words() {
    for n in 4..=6 {
        let dk = dk_build(n).unwrap();
        let basis = dk_basis(n, 5).unwrap();
        let want: Vec<Word> = alsws_up_to(dk.alphabet().len(), 5)
            .into_iter()
            .filter(|w| has_constant_first_index(&dk, w))
            .collect();
        assert_eq!(basis, want, "n={n}");
        // The first-index test above is the crate's; repeat it on raw indices.
        for w in &basis {
            let firsts: Vec<usize> = w.iter().map(|&l| dk.indices(l).0).collect();
            assert!(firsts.windows(2).all(|p| p[0] == p[1]));
        }
    }
}

#[test]
fn ranks_match_witt_sum() {
    for n in 4..=6 {
        let ranks = dk_ranks(n, 6).unwrap();
        let want: Vec<usize> = (1..=6).map(|d| dk_witt_sum(n, d) as usize).collect();
        assert_eq!(ranks, want, "n={n}");
    }
    assert_eq!(dk_ranks(4, 4).unwrap(), [3, 1, 2, 3]);
    assert_eq!(dk_ranks(5, 2).unwrap()[1], 4);
}

fn vector(p: &LiePoly) -> Vec<(Word, Coeff)> {
    p.iter().map(|(w, c)| (w.clone(), *c)).collect()
}

/// Reduced images of all degree-`d` basis brackets span a space of
/// dimension `rank_d`.
#[test]
fn reduced_expansions_span() {
    let set = dk_build(4).unwrap().into_relations();
    let ranks = dk_ranks(4, 4).unwrap();
    for d in 1..=4 {
        let images = alsws_of_degree(3, d)
            .into_iter()
            .map(|w| vector(&reduce(&LiePoly::basis(w).unwrap(), &set).unwrap()));
        assert_eq!(rank(images), ranks[d - 1], "d={d}");
    }
}

/// Quotient dimension from the ideal alone: `W(3, d) - dim I_d`, where `I_d`
/// is spanned by left-normed brackets `[r, x1, ..., xk]`.
#[test]
fn quotient_dimension_from_ideal() {
    let dk = dk_build(4).unwrap();
    let gens: Vec<LiePoly> = dk.alphabet().letters().map(LiePoly::generator).collect();
    let mut layer: Vec<LiePoly> = dk.relations().relations().iter().map(|r| r.poly().clone()).collect();
    let mut ideal_rank = vec![0; 5];
    for d in 2..=4 {
        ideal_rank[d] = rank(layer.iter().map(vector));
        layer = layer.iter().flat_map(|p| gens.iter().map(move |g| p.bracket(g))).collect();
    }
    let want = dk_ranks(4, 4).unwrap();
    for d in 1..=4 {
        assert_eq!(witt(3, d as u64) as usize - ideal_rank[d], want[d - 1], "d={d}");
    }
}

fn flip_dk6(set: &mut lie_gsb::RelationSet, i: usize) {
    let r = set.get(i).clone();
    let lead = r.lead().clone();
    let mut p = r.poly().clone();
    for (w, c) in r.poly().iter().filter(|(w, _)| **w != lead) {
        p.add_scaled(&LiePoly::basis(w.clone()).unwrap(), *c * Coeff::int(-2));
    }
    set.replace(i, Relation::new(r.id(), r.family(), p, set.ring()).unwrap());
}

#[test]
fn mutations_at_five() {
    let set = dk_build(5).unwrap().into_relations();
    let mut survivors = Vec::new();
    for i in 0..set.len() {
        let mut s = set.clone();
        let r = s.remove(i);
        if check_gsb(&s).passed() {
            survivors.push(r.id().to_string());
        }
    }
    // Dropping a relation on the top index triple still leaves a basis.
    assert_eq!(survivors, ["DK5(2,3,4)", "DK6(2,3,4)"]);
    for i in 0..set.len() {
        if set.get(i).family() == "DK6" {
            let mut s = set.clone();
            flip_dk6(&mut s, i);
            assert!(!check_gsb(&s).passed(), "{}", set.get(i).id());
        }
    }
}

#[test]
fn four_has_no_ambiguities() {
    let mut set = dk_build(4).unwrap().into_relations();
    assert_eq!(check_gsb(&set).records.len(), 0);
    flip_dk6(&mut set, 1);
    assert!(check_gsb(&set).passed());
}
