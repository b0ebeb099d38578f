//! The Drinfeld-Kohno Lie algebra `L_n` over ℤ.
//!
//! Generators `t_ij`, `1 ≤ i < j ≤ n-1`, ordered by `t_ij < t_kl` iff `i < k`
//! or `i = k, j < l`. Relations, with stable ids:
//!
//! * `DK4`: `[t_ij, t_kl] = 0` for `k < i < j`, `k < l`, `l ∉ {i, j}`;
//! * `DK5`: `[t_jk, t_ij] + [t_ik, t_ij] = 0` for `i < j < k`;
//! * `DK6`: `[t_jk, t_ik] - [t_ik, t_ij] = 0` for `i < j < k`.

use std::collections::HashMap;
use std::fmt;

use crate::coeff::{Coeff, Ring};
use crate::error::{Error, Result};
use crate::gsb::{check_gsb_with, irr_enumerate, AmbiguityKind, CheckOptions, CompositionReport, Relation, RelationSet};
use crate::liepoly::LiePoly;
use crate::words::{Alphabet, Letter, Word};

/// Relation families of the presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DkFamily {
    /// `[t_ij, t_kl] = 0`
    Commuting,
    /// `[t_jk, t_ij] + [t_ik, t_ij] = 0`
    Sum,
    /// `[t_jk, t_ik] - [t_ik, t_ij] = 0`
    Difference,
}

impl DkFamily {
    pub fn tag(self) -> &'static str {
        match self {
            DkFamily::Commuting => "DK4",
            DkFamily::Sum => "DK5",
            DkFamily::Difference => "DK6",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "DK4" => Some(DkFamily::Commuting),
            "DK5" => Some(DkFamily::Sum),
            "DK6" => Some(DkFamily::Difference),
            _ => None,
        }
    }

    /// Position 1, 2, 3 in the ambiguity table.
    pub fn ordinal(self) -> usize {
        match self {
            DkFamily::Commuting => 1,
            DkFamily::Sum => 2,
            DkFamily::Difference => 3,
        }
    }
}

/// One of the nine ambiguity families `(x)∧(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyPair(pub DkFamily, pub DkFamily);

impl fmt::Display for FamilyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})∧({})", self.0.ordinal(), self.1.ordinal())
    }
}

#[derive(Clone, Debug)]
pub struct DkPresentation {
    n: usize,
    alphabet: Alphabet,
    pairs: Vec<(usize, usize)>,
    letters: HashMap<(usize, usize), Letter>,
    relations: RelationSet,
}

fn generator_name(n: usize, i: usize, j: usize) -> String {
    if n > 10 {
        format!("t{i}_{j}")
    } else {
        format!("t{i}{j}")
    }
}

impl DkPresentation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn into_relations(self) -> RelationSet {
        self.relations
    }

    /// The letter `t_ij` (either index order).
    pub fn t(&self, i: usize, j: usize) -> Option<Letter> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.letters.get(&key).copied()
    }

    /// Index pair `(i, j)`, `i < j`, of a generator.
    pub fn indices(&self, l: Letter) -> (usize, usize) {
        self.pairs[l.index()]
    }

    pub fn word(&self, pairs: &[(usize, usize)]) -> Option<Word> {
        pairs.iter().map(|&(i, j)| self.t(i, j)).collect()
    }

    /// Family of a relation by its tag.
    pub fn family_of(&self, rel: usize) -> Option<DkFamily> {
        DkFamily::from_tag(self.relations.get(rel).family())
    }

    fn bracket(&self, x: (usize, usize), y: (usize, usize), c: i64) -> (Word, Coeff) {
        let w = self.word(&[x, y]).expect("generator indices in range");
        (w, Coeff::int(c))
    }
}

/// Builds the generators and every instance of the three relation families.
pub fn dk_build(n: usize) -> Result<DkPresentation> {
    if n <= 2 {
        return Err(Error::InvalidParameter(format!("L_n needs n > 2, got {n}")));
    }
    let m = n - 1;
    let mut pairs = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            pairs.push((i, j));
        }
    }
    let names: Vec<String> = pairs.iter().map(|&(i, j)| generator_name(n, i, j)).collect();
    let alphabet = Alphabet::new(names)?;
    let letters = pairs
        .iter()
        .enumerate()
        .map(|(idx, &p)| (p, Letter(idx as u16)))
        .collect();
    let mut dk = DkPresentation {
        n,
        alphabet: alphabet.clone(),
        pairs,
        letters,
        relations: RelationSet::new(alphabet, Ring::Integers),
    };

    let mut rels = Vec::new();
    for k in 1..=m {
        for i in k + 1..=m {
            for j in i + 1..=m {
                for l in k + 1..=m {
                    if l == i || l == j {
                        continue;
                    }
                    let p = LiePoly::from_terms([dk.bracket((i, j), (k, l), 1)])?;
                    rels.push(Relation::new(format!("DK4({i}{j},{k}{l})"), "DK4", p, Ring::Integers)?);
                }
            }
        }
    }
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                let sum = LiePoly::from_terms([
                    dk.bracket((j, k), (i, j), 1),
                    dk.bracket((i, k), (i, j), 1),
                ])?;
                rels.push(Relation::new(format!("DK5({i},{j},{k})"), "DK5", sum, Ring::Integers)?);
                let diff = LiePoly::from_terms([
                    dk.bracket((j, k), (i, k), 1),
                    dk.bracket((i, k), (i, j), -1),
                ])?;
                rels.push(Relation::new(format!("DK6({i},{j},{k})"), "DK6", diff, Ring::Integers)?);
            }
        }
    }
    for r in rels {
        dk.relations.push(r)?;
    }
    Ok(dk)
}

/// Matches a degree-3 ambiguity word against the nine index patterns of the
/// ambiguity table, using only the generator indices.
pub fn classify_ambiguity_word(dk: &DkPresentation, w: &Word) -> Vec<FamilyPair> {
    use DkFamily::*;
    if w.len() != 3 {
        return Vec::new();
    }
    let [(p1, q1), (p2, q2), (p3, q3)] = [
        dk.indices(w.letters()[0]),
        dk.indices(w.letters()[1]),
        dk.indices(w.letters()[2]),
    ];
    let mut out = Vec::new();

    // (1)∧(y): w = t_ij t_kl t_..., k<i<j, k<l, l ∉ {i,j}.
    let (i, j, k, l) = (p1, q1, p2, q2);
    if k < i && k < l && l != i && l != j {
        let (m, r) = (p3, q3);
        if m < k && m < r && r != k && r != l {
            out.push(FamilyPair(Commuting, Commuting));
        }
        // t_mk with m<k<l
        if q3 == k && p3 < k {
            out.push(FamilyPair(Commuting, Sum));
        }
        // t_ml with m<k<l
        if q3 == l && p3 < k {
            out.push(FamilyPair(Commuting, Difference));
        }
    }

    // (2)∧(y): w = t_jk t_ij t_..., i<j<k.
    if q2 == p1 && p2 < p1 {
        let (i, j, k) = (p2, p1, q1);
        let (m, r) = (p3, q3);
        if m < i {
            if m < r && r != i && r != j {
                out.push(FamilyPair(Sum, Commuting));
            }
            if r == i {
                out.push(FamilyPair(Sum, Sum));
            }
            if r == j {
                out.push(FamilyPair(Sum, Difference));
            }
        }
        let _ = k;
    }

    // (3)∧(y): w = t_jk t_ik t_..., i<j<k.
    if q1 == q2 && p2 < p1 {
        let (i, _j, k) = (p2, p1, q1);
        let (m, r) = (p3, q3);
        if m < i {
            if m < r && r != i && r != k {
                out.push(FamilyPair(Difference, Commuting));
            }
            if r == i {
                out.push(FamilyPair(Difference, Sum));
            }
            if r == k {
                out.push(FamilyPair(Difference, Difference));
            }
        }
    }
    out
}

/// Verification report with every ambiguity sorted into the nine families.
#[derive(Clone, Debug)]
pub struct DkReport {
    pub n: usize,
    pub report: CompositionReport,
    /// Family pair of each record, or `None` for a straggler.
    pub classes: Vec<Option<FamilyPair>>,
}

impl DkReport {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.stragglers().next().is_none()
    }

    /// Records that fit no family of the table.
    pub fn stragglers(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_none())
            .map(|(i, _)| i)
    }

    /// Number of ambiguities per family pair.
    pub fn family_counts(&self) -> Vec<(FamilyPair, usize)> {
        let mut counts: HashMap<FamilyPair, usize> = HashMap::new();
        for c in self.classes.iter().flatten() {
            *counts.entry(*c).or_default() += 1;
        }
        let mut out: Vec<_> = counts.into_iter().collect();
        out.sort();
        out
    }
}

/// Classifies each record of `report`. A record is classified when it is an
/// intersection whose word matches exactly one index pattern and that
/// pattern agrees with the families of the two relations involved.
pub fn classify_report(dk: &DkPresentation, report: &CompositionReport) -> Vec<Option<FamilyPair>> {
    report
        .records
        .iter()
        .map(|r| {
            if r.ambiguity.kind != AmbiguityKind::Intersection {
                return None;
            }
            let by_word = classify_ambiguity_word(dk, &r.ambiguity.w);
            let by_tags = FamilyPair(dk.family_of(r.f)?, dk.family_of(r.g)?);
            match by_word.as_slice() {
                [only] if *only == by_tags => Some(by_tags),
                _ => None,
            }
        })
        .collect()
}

pub fn dk_check(n: usize) -> Result<DkReport> {
    dk_check_with(n, CheckOptions::default())
}

pub fn dk_check_with(n: usize, opts: CheckOptions) -> Result<DkReport> {
    let dk = dk_build(n)?;
    let report = check_gsb_with(dk.relations(), opts);
    let classes = classify_report(&dk, &report);
    Ok(DkReport { n, report, classes })
}

/// Truncated ℤ-basis `Irr(S)` of `L_n`.
pub fn dk_basis(n: usize, max_deg: usize) -> Result<Vec<Word>> {
    let dk = dk_build(n)?;
    Ok(irr_enumerate(dk.relations(), max_deg))
}

/// Number of basis words in each degree `1..=max_deg`.
pub fn dk_ranks(n: usize, max_deg: usize) -> Result<Vec<usize>> {
    let mut ranks = vec![0; max_deg];
    for w in dk_basis(n, max_deg)? {
        ranks[w.len() - 1] += 1;
    }
    Ok(ranks)
}

/// True iff all letters of `w` share their first index.
pub fn has_constant_first_index(dk: &DkPresentation, w: &Word) -> bool {
    let mut firsts = w.iter().map(|&l| dk.indices(l).0);
    match firsts.next() {
        Some(i) => firsts.all(|x| x == i),
        None => false,
    }
}
