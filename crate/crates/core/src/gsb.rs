//! Compositions, normal forms and Gröbner-Shirshov basis verification.
//!
//! A [`RelationSet`] holds monic Lie polynomials. For two relations `f`, `g`
//! with leading words `f̄`, `ḡ` there are two kinds of ambiguity:
//!
//! * inclusion: `w = f̄ = a ḡ b`, composition `f - [a g b]_ḡ`;
//! * intersection: `w = f̄ b = a ḡ` with a proper overlap, composition
//!   `[f b]_f̄ - [a g]_ḡ`.
//!
//! `[a s b]_s̄` is the special normal S-word: Shirshov's special bracketing of
//! `a s̄ b` relative to `s̄`, with `s` substituted for the subtree `[s̄]`. The
//! set is a Gröbner-Shirshov basis when every composition reduces to zero.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::rc::Rc;

use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::{Coeff, Ring};
use crate::error::{Error, Result};
use crate::liepoly::{expand_substituted, AssocPoly, LiePoly};
use crate::words::{alsws_up_to, special_bracketing, Alphabet, Letter, Word};

/// A monic relation `s = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    id: String,
    family: String,
    poly: LiePoly,
    lead: Word,
    scaled_by: Coeff,
}

impl Relation {
    /// Normalizes `poly` to be monic. Over the integers only a sign flip is
    /// allowed; over the rationals the polynomial is divided by its leading
    /// coefficient.
    pub fn new(id: impl Into<String>, family: impl Into<String>, poly: LiePoly, ring: Ring) -> Result<Self> {
        let (lead, lc) = match poly.leading() {
            Some((w, c)) => (w.clone(), *c),
            None => return Err(Error::ZeroPolynomial),
        };
        if let Some((_, c)) = poly.iter().find(|(_, c)| !ring.admits(c)) {
            return Err(Error::InvalidParameter(format!(
                "coefficient {c} is not an integer"
            )));
        }
        if ring == Ring::Integers && !lc.is_unit_integer() {
            return Err(Error::NonUnitLeading(lc.to_string()));
        }
        let inv = ring.divide(Coeff::ONE, lc)?;
        Ok(Relation {
            id: id.into(),
            family: family.into(),
            poly: poly.scale(inv),
            lead,
            scaled_by: inv,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Free-form family tag, e.g. `DK5` or `K3`.
    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn poly(&self) -> &LiePoly {
        &self.poly
    }

    /// Leading word `s̄`.
    pub fn lead(&self) -> &Word {
        &self.lead
    }

    /// Factor applied to make the relation monic (`-1` records a sign flip).
    pub fn scaled_by(&self) -> Coeff {
        self.scaled_by
    }
}

/// An ordered list of monic relations over one alphabet and coefficient ring.
#[derive(Clone, Debug)]
pub struct RelationSet {
    alphabet: Alphabet,
    ring: Ring,
    relations: Vec<Relation>,
    lead_index: HashMap<Vec<Letter>, Vec<usize>>,
    prefix_index: HashMap<Vec<Letter>, Vec<usize>>,
    lead_lengths: BTreeSet<usize>,
    verified: bool,
}

impl RelationSet {
    pub fn new(alphabet: Alphabet, ring: Ring) -> Self {
        RelationSet {
            alphabet,
            ring,
            relations: Vec::new(),
            lead_index: HashMap::new(),
            prefix_index: HashMap::new(),
            lead_lengths: BTreeSet::new(),
            verified: false,
        }
    }

    pub fn from_relations(alphabet: Alphabet, ring: Ring, relations: impl IntoIterator<Item = Relation>) -> Result<Self> {
        let mut set = Self::new(alphabet, ring);
        for r in relations {
            set.push(r)?;
        }
        Ok(set)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn get(&self, i: usize) -> &Relation {
        &self.relations[i]
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.relations.iter().position(|r| r.id == id)
    }

    pub fn push(&mut self, r: Relation) -> Result<()> {
        if !self.alphabet.contains(&r.lead) || r.poly.iter().any(|(w, _)| !self.alphabet.contains(w)) {
            return Err(Error::UnknownLetter(r.id.clone()));
        }
        if !self.ring.admits(&r.scaled_by) || r.poly.iter().any(|(_, c)| !self.ring.admits(c)) {
            return Err(Error::InvalidParameter(format!(
                "relation {} does not live over the {} ring",
                r.id, self.ring
            )));
        }
        let i = self.relations.len();
        self.index(i, &r.lead);
        self.relations.push(r);
        self.verified = false;
        Ok(())
    }

    pub fn remove(&mut self, i: usize) -> Relation {
        let r = self.relations.remove(i);
        self.reindex();
        self.verified = false;
        r
    }

    /// Replaces relation `i`, e.g. to build a mutated presentation.
    pub fn replace(&mut self, i: usize, r: Relation) -> Relation {
        let old = std::mem::replace(&mut self.relations[i], r);
        self.reindex();
        self.verified = false;
        old
    }

    fn index(&mut self, i: usize, lead: &Word) {
        let letters = lead.letters();
        self.lead_index.entry(letters.to_vec()).or_default().push(i);
        for k in 1..letters.len() {
            self.prefix_index.entry(letters[..k].to_vec()).or_default().push(i);
        }
        self.lead_lengths.insert(letters.len());
    }

    fn reindex(&mut self) {
        self.lead_index.clear();
        self.prefix_index.clear();
        self.lead_lengths.clear();
        let leads: Vec<Word> = self.relations.iter().map(|r| r.lead.clone()).collect();
        for (i, lead) in leads.iter().enumerate() {
            self.index(i, lead);
        }
    }

    /// Relations whose leading word equals `w`.
    pub fn with_lead(&self, w: &[Letter]) -> &[usize] {
        self.lead_index.get(w).map_or(&[], Vec::as_slice)
    }

    /// True iff no leading word occurs in `w` as a factor.
    pub fn is_irreducible(&self, w: &Word) -> bool {
        let letters = w.letters();
        !self.lead_lengths.iter().any(|&len| {
            len <= letters.len()
                && (0..=letters.len() - len).any(|i| self.lead_index.contains_key(&letters[i..i + len]))
        })
    }

    /// Stable digest of the relations, tying a report to the set it checked.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.ring.hash(&mut h);
        self.alphabet.names().hash(&mut h);
        self.relations.hash(&mut h);
        h.finish()
    }

    /// Marks the set as a verified basis if `report` passed on exactly this set.
    pub fn mark_verified(&mut self, report: &CompositionReport) -> Result<()> {
        if !report.passed() || report.fingerprint != self.fingerprint() {
            return Err(Error::UnverifiedBasis);
        }
        self.verified = true;
        Ok(())
    }

    /// Runs [`check_gsb`] and marks the set on success.
    pub fn verify(&mut self) -> CompositionReport {
        let report = check_gsb(self);
        if report.passed() {
            self.verified = true;
        }
        report
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    Inclusion,
    Intersection,
}

impl fmt::Display for AmbiguityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmbiguityKind::Inclusion => "inclusion",
            AmbiguityKind::Intersection => "intersection",
        })
    }
}

/// Inclusion: `w = f̄ = a ḡ b`. Intersection: `w = f̄ b = a ḡ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub w: Word,
    pub a: Word,
    pub b: Word,
}

fn inclusions_at<'a>(f: &'a Word, g: &'a Word, same: bool) -> impl Iterator<Item = Ambiguity> + 'a {
    f.occurrences(g)
        .filter(move |&i| !(same && i == 0 && g.len() == f.len()))
        .map(move |i| Ambiguity {
            kind: AmbiguityKind::Inclusion,
            w: f.clone(),
            a: f.subword(0, i),
            b: f.subword(i + g.len(), f.len()),
        })
}

fn intersection_with_overlap(f: &Word, g: &Word, k: usize) -> Option<Ambiguity> {
    let (fl, gl) = (f.letters(), g.letters());
    if k == 0 || k >= fl.len() || k >= gl.len() || fl[fl.len() - k..] != gl[..k] {
        return None;
    }
    let b = g.subword(k, g.len());
    Some(Ambiguity {
        kind: AmbiguityKind::Intersection,
        w: f.concat(&b),
        a: f.subword(0, f.len() - k),
        b,
    })
}

/// All ambiguities of the ordered pair `(f, g)`. The trivial self-inclusion
/// `f̄ = ḡ` with `f = g` is excluded; intersections require nonempty `a`, `b`.
pub fn find_ambiguities(f: &Relation, g: &Relation) -> Vec<Ambiguity> {
    let same = f == g;
    let mut out: Vec<Ambiguity> = inclusions_at(&f.lead, &g.lead, same).collect();
    out.extend((1..f.lead.len()).filter_map(|k| intersection_with_overlap(&f.lead, &g.lead, k)));
    out
}

/// Expansion of `[a s b]_s̄` as a Lie polynomial.
pub fn special_s_word(a: &Word, s: &Relation, b: &Word) -> Result<LiePoly> {
    special_s_word_expanded(a, s, &s.poly.expand(), b)
}

fn special_s_word_expanded(a: &Word, s: &Relation, s_expanded: &AssocPoly, b: &Word) -> Result<LiePoly> {
    let tree = special_bracketing(a, &s.lead, b)?;
    let assoc = expand_substituted(&tree, 0, a.len(), s.lead.len(), s_expanded);
    LiePoly::from_assoc(&assoc)
}

/// The composition `(f, g)_w`.
pub fn composition(f: &Relation, g: &Relation, amb: &Ambiguity) -> Result<LiePoly> {
    let (left, right) = match amb.kind {
        AmbiguityKind::Inclusion => {
            check_factor(&amb.w, &f.lead, 0)?;
            check_factor(&amb.w, &g.lead, amb.a.len())?;
            (f.poly.clone(), special_s_word(&amb.a, g, &amb.b)?)
        }
        AmbiguityKind::Intersection => {
            check_factor(&amb.w, &f.lead, 0)?;
            check_factor(&amb.w, &g.lead, amb.a.len())?;
            (
                special_s_word(&Word::empty(), f, &amb.b)?,
                special_s_word(&amb.a, g, &Word::empty())?,
            )
        }
    };
    Ok(left.sub(&right))
}

fn check_factor(w: &Word, u: &Word, offset: usize) -> Result<()> {
    let ok = offset + u.len() <= w.len() && w.letters()[offset..offset + u.len()] == u.letters()[..];
    if ok {
        Ok(())
    } else {
        Err(Error::FactorMismatch {
            word: format!("{w:?}"),
            factor: format!("{u:?}"),
            offset,
        })
    }
}

/// A reducible occurrence: relation `rel` matches support word `word` at `pos`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub word: Word,
    pub rel: usize,
    pub pos: usize,
}

/// Normal-form engine bound to one relation set. Caches the expansions of
/// relations and the special normal S-words it has built.
pub struct Reducer<'s> {
    set: &'s RelationSet,
    id_rank: Vec<usize>,
    expansions: Vec<Option<Rc<AssocPoly>>>,
    s_words: HashMap<(usize, usize, Word), Rc<LiePoly>>,
}

impl<'s> Reducer<'s> {
    pub fn new(set: &'s RelationSet) -> Self {
        let mut order: Vec<usize> = (0..set.len()).collect();
        order.sort_by(|&i, &j| set.relations[i].id.cmp(&set.relations[j].id).then(i.cmp(&j)));
        let mut id_rank = vec![0; set.len()];
        for (rank, i) in order.into_iter().enumerate() {
            id_rank[i] = rank;
        }
        Reducer {
            set,
            id_rank,
            expansions: vec![None; set.len()],
            s_words: HashMap::new(),
        }
    }

    pub fn set(&self) -> &RelationSet {
        self.set
    }

    fn expansion(&mut self, i: usize) -> Rc<AssocPoly> {
        self.expansions[i]
            .get_or_insert_with(|| Rc::new(self.set.relations[i].poly.expand()))
            .clone()
    }

    /// `[a s b]_s̄` for relation `rel` occurring in `word` at `pos`.
    pub fn s_word(&mut self, rel: usize, pos: usize, word: &Word) -> Result<Rc<LiePoly>> {
        let key = (rel, pos, word.clone());
        if let Some(hit) = self.s_words.get(&key) {
            return Ok(hit.clone());
        }
        let s = &self.set.relations[rel];
        let a = word.subword(0, pos);
        let b = word.subword(pos + s.lead.len(), word.len());
        let e = self.expansion(rel);
        let p = Rc::new(special_s_word_expanded(&a, s, &e, &b)?);
        debug_assert_eq!(p.leading().map(|(w, _)| w), Some(word));
        self.s_words.insert(key, p.clone());
        Ok(p)
    }

    fn redexes_in(&self, t: &Word) -> Vec<(usize, usize)> {
        let letters = t.letters();
        let mut out = Vec::new();
        for &len in self.set.lead_lengths.iter().filter(|&&len| len <= letters.len()) {
            for pos in 0..=letters.len() - len {
                out.extend(self.set.with_lead(&letters[pos..pos + len]).iter().map(|&rel| (rel, pos)));
            }
        }
        out
    }

    /// Deterministic choice for `t`: least relation id, then leftmost.
    fn best_redex(&self, t: &Word) -> Option<(usize, usize)> {
        self.redexes_in(t)
            .into_iter()
            .min_by_key(|&(rel, pos)| (self.id_rank[rel], pos))
    }

    fn eliminate(&mut self, h: &mut LiePoly, t: &Word, rel: usize, pos: usize) -> Result<()> {
        let c = h.coeff(t);
        let sw = self.s_word(rel, pos, t)?;
        let lc = sw.coeff(t);
        let m = self.set.ring.divide(c, lc)?;
        h.add_scaled(&sw, -m);
        Ok(())
    }

    /// Canonical normal form of `h`: every support word is reduced, greatest
    /// first. The result's support avoids all leading words.
    pub fn reduce(&mut self, h: &LiePoly) -> Result<LiePoly> {
        let mut h = h.clone();
        let mut upper: Option<Word> = None;
        loop {
            let next = {
                let range: Box<dyn DoubleEndedIterator<Item = (&Word, &Coeff)>> = match &upper {
                    Some(u) => Box::new(h.terms().range(..u.clone())),
                    None => Box::new(h.terms().iter()),
                };
                range
                    .rev()
                    .find_map(|(t, _)| self.best_redex(t).map(|(rel, pos)| (t.clone(), rel, pos)))
            };
            let Some((t, rel, pos)) = next else { break };
            self.eliminate(&mut h, &t, rel, pos)?;
            upper = Some(t);
        }
        Ok(h)
    }

    /// Reduction with an arbitrary strategy: at each step `choose` receives
    /// every available redex and returns the index of the one to apply.
    pub fn reduce_with(&mut self, h: &LiePoly, mut choose: impl FnMut(&[Redex]) -> usize) -> Result<LiePoly> {
        let mut h = h.clone();
        loop {
            let redexes: Vec<Redex> = h
                .iter()
                .flat_map(|(t, _)| {
                    self.redexes_in(t)
                        .into_iter()
                        .map(|(rel, pos)| Redex { word: t.clone(), rel, pos })
                        .collect::<Vec<_>>()
                })
                .collect();
            if redexes.is_empty() {
                return Ok(h);
            }
            let r = &redexes[choose(&redexes) % redexes.len()];
            self.eliminate(&mut h, &r.word, r.rel, r.pos)?;
        }
    }
}

/// Normal form of `h` modulo `set`.
pub fn reduce(h: &LiePoly, set: &RelationSet) -> Result<LiePoly> {
    Reducer::new(set).reduce(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Nonzero remainder in a degree where the relation set is truncated.
    Censored,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Censored => "censored",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CompositionRecord {
    pub f: usize,
    pub g: usize,
    pub f_id: String,
    pub g_id: String,
    pub ambiguity: Ambiguity,
    /// Leading word of the unreduced composition, if nonzero.
    pub composition_lead: Option<Word>,
    pub remainder: LiePoly,
    pub status: Status,
    pub error: Option<String>,
}

/// Outcome of checking every composition of a relation set.
#[derive(Clone, Debug)]
pub struct CompositionReport {
    pub alphabet: Alphabet,
    pub records: Vec<CompositionRecord>,
    fingerprint: u64,
}

impl CompositionReport {
    /// Pass iff no record failed. Censored records do not fail a report.
    pub fn passed(&self) -> bool {
        self.records
            .iter()
            .all(|r| matches!(r.status, Status::Pass | Status::Censored))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CompositionRecord> {
        self.records
            .iter()
            .filter(|r| matches!(r.status, Status::Fail | Status::Error))
    }

    pub fn censored(&self) -> impl Iterator<Item = &CompositionRecord> {
        self.records.iter().filter(|r| r.status == Status::Censored)
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// One tab-separated record per ambiguity.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "f={}\tg={}\tkind={}\tw={}\tsupport={}\tstatus={}\n",
                r.f_id,
                r.g_id,
                r.ambiguity.kind,
                self.alphabet.format_word(&r.ambiguity.w),
                r.remainder.len(),
                r.status
            ));
        }
        out
    }

    pub fn record_json(&self, r: &CompositionRecord) -> serde_json::Value {
        let mut v = serde_json::json!({
            "f": r.f_id,
            "g": r.g_id,
            "kind": r.ambiguity.kind,
            "w": self.alphabet.format_word(&r.ambiguity.w),
            "support": r.remainder.len(),
            "status": r.status,
        });
        if !r.remainder.is_zero() {
            v["remainder"] = r.remainder.display(&self.alphabet).to_string().into();
        }
        if let Some(e) = &r.error {
            v["error"] = e.clone().into();
        }
        v
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub parallel: bool,
    /// Ambiguities of degree above this bound whose remainder is nonzero are
    /// reported as [`Status::Censored`] instead of failures.
    pub censor_above_degree: Option<usize>,
}

/// Every ambiguity of every ordered pair, sorted by relation indices and then
/// by ambiguity word.
pub fn all_ambiguities(set: &RelationSet) -> Vec<(usize, usize, Ambiguity)> {
    let mut out = Vec::new();
    for (fi, f) in set.relations.iter().enumerate() {
        let fl = f.lead.letters();
        // Inclusions: leading words occurring inside f̄.
        for &len in &set.lead_lengths {
            if len > fl.len() {
                continue;
            }
            for pos in 0..=fl.len() - len {
                for &gi in set.with_lead(&fl[pos..pos + len]) {
                    if gi == fi && len == fl.len() {
                        continue;
                    }
                    out.push((
                        fi,
                        gi,
                        Ambiguity {
                            kind: AmbiguityKind::Inclusion,
                            w: f.lead.clone(),
                            a: f.lead.subword(0, pos),
                            b: f.lead.subword(pos + len, fl.len()),
                        },
                    ));
                }
            }
        }
        // Intersections: a proper suffix of f̄ is a proper prefix of ḡ.
        for k in 1..fl.len() {
            if let Some(gs) = set.prefix_index.get(&fl[fl.len() - k..]) {
                for &gi in gs {
                    if let Some(amb) = intersection_with_overlap(&f.lead, &set.relations[gi].lead, k) {
                        out.push((fi, gi, amb));
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| {
        (x.0, x.1, &x.2.w, x.2.kind, x.2.a.len()).cmp(&(y.0, y.1, &y.2.w, y.2.kind, y.2.a.len()))
    });
    out.dedup();
    out
}

fn check_one(
    reducer: &mut Reducer<'_>,
    fi: usize,
    gi: usize,
    amb: Ambiguity,
    censor: Option<usize>,
) -> CompositionRecord {
    let set = reducer.set;
    let (f, g) = (&set.relations[fi], &set.relations[gi]);
    let mut record = CompositionRecord {
        f: fi,
        g: gi,
        f_id: f.id.clone(),
        g_id: g.id.clone(),
        ambiguity: amb,
        composition_lead: None,
        remainder: LiePoly::zero(),
        status: Status::Pass,
        error: None,
    };
    let outcome = composition(f, g, &record.ambiguity).and_then(|c| {
        record.composition_lead = c.leading().map(|(w, _)| w.clone());
        reducer.reduce(&c)
    });
    match outcome {
        Ok(rem) => {
            record.status = if rem.is_zero() {
                Status::Pass
            } else if censor.is_some_and(|b| record.ambiguity.w.len() > b) {
                Status::Censored
            } else {
                Status::Fail
            };
            record.remainder = rem;
        }
        Err(e) => {
            record.status = Status::Error;
            record.error = Some(e.to_string());
        }
    }
    record
}

pub fn check_gsb(set: &RelationSet) -> CompositionReport {
    check_gsb_with(set, CheckOptions::default())
}

/// Computes and reduces every composition. The record order does not depend
/// on `opts.parallel`.
pub fn check_gsb_with(set: &RelationSet, opts: CheckOptions) -> CompositionReport {
    let tasks = all_ambiguities(set);
    let records = if opts.parallel {
        tasks
            .into_par_iter()
            .map_init(
                || Reducer::new(set),
                |r, (fi, gi, amb)| check_one(r, fi, gi, amb, opts.censor_above_degree),
            )
            .collect()
    } else {
        let mut r = Reducer::new(set);
        tasks
            .into_iter()
            .map(|(fi, gi, amb)| check_one(&mut r, fi, gi, amb, opts.censor_above_degree))
            .collect()
    };
    CompositionReport {
        alphabet: set.alphabet.clone(),
        records,
        fingerprint: set.fingerprint(),
    }
}

/// ALSWs of degree at most `max_deg` avoiding every leading word: the
/// carriers of `Irr(S)` truncated by degree, in increasing deg-lex order.
pub fn irr_enumerate(set: &RelationSet, max_deg: usize) -> Vec<Word> {
    alsws_up_to(set.alphabet.len(), max_deg)
        .into_iter()
        .filter(|w| set.is_irreducible(w))
        .collect()
}

/// Membership in the ideal generated by a verified basis.
pub fn ideal_member(f: &LiePoly, set: &RelationSet) -> Result<bool> {
    if !set.is_verified() {
        return Err(Error::UnverifiedBasis);
    }
    Ok(reduce(f, set)?.is_zero())
}

#[derive(Clone, Debug)]
pub struct CompletionOutcome {
    pub set: RelationSet,
    pub complete: bool,
    pub rounds: usize,
}

/// Bounded completion: adds nonzero reduced compositions of degree at most
/// `max_degree` as new relations until every composition reduces to zero or
/// `max_rounds` is exhausted.
pub fn complete(set: &RelationSet, max_degree: usize, max_rounds: usize) -> Result<CompletionOutcome> {
    let mut set = set.clone();
    for round in 0..max_rounds {
        let report = check_gsb(&set);
        if let Some(e) = report.records.iter().find_map(|r| r.error.clone()) {
            return Err(Error::InvalidParameter(e));
        }
        let mut added = 0;
        let mut blocked = false;
        let mut seen: BTreeSet<Vec<(Word, Coeff)>> = BTreeSet::new();
        for r in report.failures() {
            if r.remainder.degree() > max_degree {
                blocked = true;
                continue;
            }
            let rel = Relation::new(
                format!("C{}.{}", round + 1, added),
                "completion",
                r.remainder.clone(),
                set.ring,
            )?;
            let key: Vec<(Word, Coeff)> = rel.poly.iter().map(|(w, c)| (w.clone(), *c)).collect();
            if seen.insert(key) {
                set.push(rel)?;
                added += 1;
            }
        }
        if added == 0 {
            let complete = !blocked && report.passed();
            if complete {
                set.verified = true;
            }
            return Ok(CompletionOutcome { set, complete, rounds: round + 1 });
        }
    }
    let report = check_gsb(&set);
    let complete = report.passed();
    set.verified = complete;
    Ok(CompletionOutcome { set, complete, rounds: max_rounds })
}
