//! The Kukin Lie algebra `A_P` of a semigroup presentation `P`.
//!
//! Over the letters `A` of `P`, add a hatted copy `â` of every letter and one
//! more letter `z`, ordered `A < z < Â` with the hatted letters ordered like
//! their originals. The relations are
//!
//! * `K1`: `[â b] = 0` for all `â ∈ Â`, `b ∈ A`;
//! * `K2`: `[â z] + [z a] = 0` for all `a ∈ A`;
//! * `K3`: `⌊z u⌋ - ⌊z v⌋ = 0` for every congruence pair `u > v`.
//!
//! The `K3` family is infinite; it is instantiated for `|u| ≤ bound`, and
//! every decision procedure refuses words longer than the bound.

use std::fmt;

use crate::coeff::{Coeff, Ring};
use crate::error::{Error, Result};
use crate::gsb::{check_gsb_with, AmbiguityKind, CheckOptions, CompositionReport, Reducer, Relation, RelationSet};
use crate::liepoly::LiePoly;
use crate::semigroup::{congruence_pairs, knuth_bendix, orient, SgpPresentation, StringRS};
use crate::words::{Alphabet, Letter, Word};

/// Default instantiation bound for `K3`.
pub const DEFAULT_BOUND: usize = 8;

/// Name of the extra letter.
pub const Z_NAME: &str = "z";

/// Suffix marking hatted letters.
pub const HAT_SUFFIX: &str = "^";

#[derive(Clone, Debug)]
pub struct KukinContext {
    base: Alphabet,
    alphabet: Alphabet,
    rs: StringRS,
    bound: usize,
}

impl KukinContext {
    /// Completes the presentation and sets up the extended alphabet.
    pub fn new(p: &SgpPresentation, bound: usize) -> Result<Self> {
        let oriented = orient(p);
        let limit = p
            .rules
            .iter()
            .map(|(u, v)| u.len().max(v.len()))
            .max()
            .unwrap_or(1)
            .max(bound)
            * 2;
        let rs = knuth_bendix(&oriented, limit, 64).map_err(|_| Error::IncompleteSystem)?;
        Self::from_rewriting(rs, bound)
    }

    /// Uses an already complete rewriting system.
    pub fn from_rewriting(rs: StringRS, bound: usize) -> Result<Self> {
        if !rs.is_complete() {
            return Err(Error::IncompleteSystem);
        }
        if bound == 0 {
            return Err(Error::InvalidParameter("bound must be positive".into()));
        }
        let base = rs.alphabet().clone();
        for name in base.names() {
            if name == Z_NAME || name.ends_with(HAT_SUFFIX) {
                return Err(Error::ReservedLetter(name.clone()));
            }
        }
        let mut names: Vec<String> = base.names().to_vec();
        names.push(Z_NAME.to_string());
        names.extend(base.names().iter().map(|n| format!("{n}{HAT_SUFFIX}")));
        let alphabet = Alphabet::new(names)?;
        Ok(KukinContext { base, alphabet, rs, bound })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    /// `A ∪ {z} ∪ Â`.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rewriting(&self) -> &StringRS {
        &self.rs
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn z(&self) -> Letter {
        Letter(self.base.len() as u16)
    }

    pub fn hat(&self, a: Letter) -> Letter {
        Letter((self.base.len() + 1 + a.index()) as u16)
    }

    pub fn is_hatted(&self, l: Letter) -> bool {
        l.index() > self.base.len()
    }

    /// `⌊z u⌋` for `u` over the extended alphabet.
    pub fn left_normed(&self, u: &Word) -> LiePoly {
        LiePoly::left_normed(self.z(), u)
    }

    fn check_word(&self, u: &Word) -> Result<()> {
        if u.len() > self.bound {
            return Err(Error::DegreeBound {
                degree: u.len(),
                bound: self.bound,
            });
        }
        if !self.base.contains(u) {
            return Err(Error::UnknownLetter(format!("{u:?}")));
        }
        Ok(())
    }
}

/// Families of `S₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KukinFamily {
    /// `[â b] = 0`
    HatCommute,
    /// `[â z] + [z a] = 0`
    HatZ,
    /// `⌊z u⌋ - ⌊z v⌋ = 0`
    Congruence,
}

impl KukinFamily {
    pub fn tag(self) -> &'static str {
        match self {
            KukinFamily::HatCommute => "K1",
            KukinFamily::HatZ => "K2",
            KukinFamily::Congruence => "K3",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "K1" => Some(KukinFamily::HatCommute),
            "K2" => Some(KukinFamily::HatZ),
            "K3" => Some(KukinFamily::Congruence),
            _ => None,
        }
    }
}

/// Builds `S₁` with `K3` instantiated up to the context bound.
pub fn build_s1(ctx: &KukinContext) -> Result<RelationSet> {
    let ring = Ring::Rationals;
    let mut set = RelationSet::new(ctx.alphabet.clone(), ring);
    let name = |l: Letter| ctx.alphabet.name(l).to_string();
    for a in ctx.base.letters() {
        for b in ctx.base.letters() {
            let p = LiePoly::from_terms([(Word::new(vec![ctx.hat(a), b]), Coeff::ONE)])?;
            set.push(Relation::new(
                format!("K1({},{})", name(ctx.hat(a)), name(b)),
                "K1",
                p,
                ring,
            )?)?;
        }
    }
    for a in ctx.base.letters() {
        let p = LiePoly::from_terms([
            (Word::new(vec![ctx.hat(a), ctx.z()]), Coeff::ONE),
            (Word::new(vec![ctx.z(), a]), Coeff::ONE),
        ])?;
        set.push(Relation::new(format!("K2({})", name(a)), "K2", p, ring)?)?;
    }
    let mut cache: std::collections::HashMap<Word, LiePoly> = std::collections::HashMap::new();
    let mut lift = |w: &Word| {
        cache
            .entry(w.clone())
            .or_insert_with(|| ctx.left_normed(w))
            .clone()
    };
    for (u, v) in congruence_pairs(&ctx.rs, ctx.bound)? {
        let p = lift(&u).sub(&lift(&v));
        set.push(Relation::new(
            format!(
                "K3({},{})",
                ctx.base.format_word(&u),
                ctx.base.format_word(&v)
            ),
            "K3",
            p,
            ring,
        )?)?;
    }
    Ok(set)
}

/// The two ambiguity kinds that occur in `S₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KukinAmbiguity {
    /// Intersection of `K2` with `K3` at `w = â z u`.
    HatZWithCongruence,
    /// Inclusion of one `K3` leading word `z u₂` in another `z u₁ = z u₂ e`.
    CongruenceInCongruence,
}

impl fmt::Display for KukinAmbiguity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KukinAmbiguity::HatZWithCongruence => "(2)∧(3)'",
            KukinAmbiguity::CongruenceInCongruence => "(3)'∧(3)'",
        })
    }
}

#[derive(Clone, Debug)]
pub struct KukinReport {
    pub bound: usize,
    pub report: CompositionReport,
    /// Kind of each record; `None` marks a straggler.
    pub kinds: Vec<Option<KukinAmbiguity>>,
}

impl KukinReport {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.kinds.iter().all(Option::is_some)
    }

    /// Records whose ambiguity lies above the instantiated degree and whose
    /// composition did not reduce to zero.
    pub fn censored(&self) -> usize {
        self.report.censored().count()
    }

    pub fn count(&self, kind: KukinAmbiguity) -> usize {
        self.kinds.iter().filter(|k| **k == Some(kind)).count()
    }
}

fn classify(set: &RelationSet, ctx: &KukinContext, f: usize, g: usize, kind: AmbiguityKind, w: &Word) -> Option<KukinAmbiguity> {
    let ff = KukinFamily::from_tag(set.get(f).family())?;
    let gf = KukinFamily::from_tag(set.get(g).family())?;
    match (ff, gf, kind) {
        (KukinFamily::HatZ, KukinFamily::Congruence, AmbiguityKind::Intersection)
            if w.len() >= 3 && ctx.is_hatted(w.letters()[0]) && w.letters()[1] == ctx.z() =>
        {
            Some(KukinAmbiguity::HatZWithCongruence)
        }
        (KukinFamily::Congruence, KukinFamily::Congruence, AmbiguityKind::Inclusion)
            if w.first() == Some(ctx.z()) =>
        {
            Some(KukinAmbiguity::CongruenceInCongruence)
        }
        _ => None,
    }
}

pub fn verify_s1(ctx: &KukinContext) -> Result<KukinReport> {
    verify_s1_with(ctx, false)
}

/// Checks every composition of the truncated `S₁`. Ambiguities of degree
/// above `bound + 1` may need `K3` instances beyond the bound; a nonzero
/// remainder there is reported as censored rather than failed.
pub fn verify_s1_with(ctx: &KukinContext, parallel: bool) -> Result<KukinReport> {
    let set = build_s1(ctx)?;
    let report = check_gsb_with(
        &set,
        CheckOptions {
            parallel,
            censor_above_degree: Some(ctx.bound + 1),
        },
    );
    let kinds = report
        .records
        .iter()
        .map(|r| classify(&set, ctx, r.f, r.g, r.ambiguity.kind, &r.ambiguity.w))
        .collect();
    Ok(KukinReport {
        bound: ctx.bound,
        report,
        kinds,
    })
}

/// Decides `⌊z u⌋ = ⌊z v⌋` in `A_P` by normal forms modulo `S₁`.
pub struct KukinSolver {
    ctx: KukinContext,
    set: RelationSet,
}

impl KukinSolver {
    pub fn new(ctx: KukinContext) -> Result<Self> {
        let set = build_s1(&ctx)?;
        Ok(KukinSolver { ctx, set })
    }

    pub fn context(&self) -> &KukinContext {
        &self.ctx
    }

    pub fn relations(&self) -> &RelationSet {
        &self.set
    }

    /// Normal form of `⌊z u⌋` for `u` over the base letters.
    pub fn normal_form(&self, u: &Word) -> Result<LiePoly> {
        self.ctx.check_word(u)?;
        Reducer::new(&self.set).reduce(&self.ctx.left_normed(u))
    }

    /// Normal forms for many words, sharing one reducer.
    pub fn normal_forms<'w>(&self, words: impl IntoIterator<Item = &'w Word>) -> Result<Vec<LiePoly>> {
        let mut reducer = Reducer::new(&self.set);
        words
            .into_iter()
            .map(|u| {
                self.ctx.check_word(u)?;
                reducer.reduce(&self.ctx.left_normed(u))
            })
            .collect()
    }

    /// Normal form of an arbitrary Lie polynomial over the extended alphabet.
    /// Its degree must not exceed `bound + 1`.
    pub fn reduce(&self, p: &LiePoly) -> Result<LiePoly> {
        if p.degree() > self.ctx.bound + 1 {
            return Err(Error::DegreeBound {
                degree: p.degree(),
                bound: self.ctx.bound + 1,
            });
        }
        Reducer::new(&self.set).reduce(p)
    }

    pub fn lie_word_equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }
}

/// One-shot form of [`KukinSolver::lie_word_equal`].
pub fn lie_word_equal(u: &Word, v: &Word, ctx: &KukinContext) -> Result<bool> {
    KukinSolver::new(ctx.clone())?.lie_word_equal(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(rules: &[&str], bound: usize) -> KukinContext {
        let a = Alphabet::new(["y", "x"]).unwrap();
        KukinContext::new(&SgpPresentation::parse(a, rules).unwrap(), bound).unwrap()
    }

    #[test]
    fn alphabet_order() {
        let c = ctx(&[], 3);
        assert_eq!(c.alphabet().names(), ["y", "x", "z", "y^", "x^"]);
    }

    #[test]
    fn reserved_names() {
        let a = Alphabet::new(["y", "z"]).unwrap();
        let p = SgpPresentation::new(a, vec![]).unwrap();
        assert!(matches!(KukinContext::new(&p, 3), Err(Error::ReservedLetter(_))));
    }

    #[test]
    fn free_semigroup_has_only_two_families() {
        let c = ctx(&[], 4);
        let s = build_s1(&c).unwrap();
        assert_eq!(s.len(), 4 + 2);
        assert!(s.relations().iter().all(|r| r.family() != "K3"));
        let rep = verify_s1(&c).unwrap();
        assert!(rep.passed());
        assert!(rep.report.records.is_empty());
    }

    #[test]
    fn commutative_s1_at_bound_two() {
        let c = ctx(&["xy=yx"], 2);
        let s = build_s1(&c).unwrap();
        let k3: Vec<String> = s
            .relations()
            .iter()
            .filter(|r| r.family() == "K3")
            .map(|r| r.poly().display(c.alphabet()).to_string())
            .collect();
        let expected = c
            .left_normed(&c.base().parse_word("xy").unwrap())
            .sub(&c.left_normed(&c.base().parse_word("yx").unwrap()));
        assert_eq!(k3, [expected.display(c.alphabet()).to_string()]);
        let k2x = s.get(s.position("K2(x)").unwrap());
        assert_eq!(c.alphabet().format_word(k2x.lead()), "x^ z");
    }

    #[test]
    fn word_problem_examples() {
        let c = ctx(&["xy=yx"], 4);
        let solver = KukinSolver::new(c.clone()).unwrap();
        let w = |s: &str| c.base().parse_word(s).unwrap();
        assert!(solver.lie_word_equal(&w("xy"), &w("xy")).unwrap());
        assert!(solver.lie_word_equal(&w("xy"), &w("yx")).unwrap());
        assert!(!solver.lie_word_equal(&w("x"), &w("y")).unwrap());
        assert!(matches!(
            solver.lie_word_equal(&w("xxxxx"), &w("x")),
            Err(Error::DegreeBound { .. })
        ));
    }
}
