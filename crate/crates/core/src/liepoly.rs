//! Lie polynomials in the NLSW basis, embedded in the free associative
//! algebra through `[u, v] = uv - vu`.
//!
//! A [`LiePoly`] stores coordinates with respect to the NLSW basis, keyed by
//! the ALSW carrier of each basis element. Each `[w]` expands with leading
//! word `w` and coefficient 1, so the leading word of a Lie polynomial is the
//! deg-lex maximum of its support.

use std::cell::RefCell;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::words::{is_alsw, standard_bracketing, Alphabet, BracketTree, Letter, Word};

fn add_into(map: &mut BTreeMap<Word, Coeff>, w: Word, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = *e.get() + c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Element of the free associative algebra: a finitely supported map from
/// words to nonzero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct AssocPoly {
    terms: BTreeMap<Word, Coeff>,
}

impl AssocPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(w: Word, c: Coeff) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Coeff)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Coeff) {
        add_into(&mut self.terms, w, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Coeff {
        self.terms.get(w).copied().unwrap_or(Coeff::ZERO)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    /// Deg-lex greatest word of the support with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Coeff)> {
        self.terms.last_key_value()
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &AssocPoly, c: Coeff) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            add_into(&mut self.terms, w.clone(), *d * c);
        }
    }

    pub fn mul(&self, other: &AssocPoly) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                out.add_term(u.concat(v), *c * *d);
            }
        }
        out
    }

    /// `fg - gf`
    pub fn commutator(f: &AssocPoly, g: &AssocPoly) -> AssocPoly {
        let mut out = f.mul(g);
        out.add_scaled(&g.mul(f), -Coeff::ONE);
        out
    }
}

thread_local! {
    static NLSW_EXPANSIONS: RefCell<HashMap<Word, Rc<AssocPoly>>> = RefCell::new(HashMap::new());
}

/// Expansion of the NLSW basis element `[w]`, memoized per thread.
pub(crate) fn expand_nlsw(w: &Word) -> Rc<AssocPoly> {
    if let Some(hit) = NLSW_EXPANSIONS.with(|c| c.borrow().get(w).cloned()) {
        return hit;
    }
    let tree = standard_bracketing(w).expect("NLSW keys are ALSWs");
    let p = Rc::new(match &tree {
        BracketTree::Leaf(l) => AssocPoly::monomial(Word::single(*l), Coeff::ONE),
        BracketTree::Node(l, r) => {
            AssocPoly::commutator(&expand_nlsw(&l.carrier()), &expand_nlsw(&r.carrier()))
        }
    });
    NLSW_EXPANSIONS.with(|c| c.borrow_mut().insert(w.clone(), p.clone()));
    p
}

/// Expands a bracket tree into the associative algebra.
pub fn expand(t: &BracketTree) -> AssocPoly {
    match t {
        BracketTree::Leaf(l) => AssocPoly::monomial(Word::single(*l), Coeff::ONE),
        BracketTree::Node(l, r) => AssocPoly::commutator(&expand(l), &expand(r)),
    }
}

/// Expands `t` with the subtree spanning `[start, start + len)` replaced by
/// `replacement`.
pub(crate) fn expand_substituted(
    t: &BracketTree,
    offset: usize,
    start: usize,
    len: usize,
    replacement: &AssocPoly,
) -> AssocPoly {
    let deg = t.degree();
    if offset == start && deg == len {
        return replacement.clone();
    }
    if offset + deg <= start || offset >= start + len {
        return expand(t);
    }
    match t {
        BracketTree::Leaf(_) => unreachable!("a leaf span either matches or misses"),
        BracketTree::Node(l, r) => {
            let ld = l.degree();
            let le = expand_substituted(l, offset, start, len, replacement);
            let re = expand_substituted(r, offset + ld, start, len, replacement);
            AssocPoly::commutator(&le, &re)
        }
    }
}

/// Lie polynomial in coordinates of the NLSW basis.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct LiePoly {
    terms: BTreeMap<Word, Coeff>,
}

impl LiePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The NLSW basis element `[w]`.
    pub fn basis(w: Word) -> Result<Self> {
        Self::from_terms([(w, Coeff::ONE)])
    }

    pub fn generator(l: Letter) -> Self {
        let mut p = Self::zero();
        add_into(&mut p.terms, Word::single(l), Coeff::ONE);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Coeff)>) -> Result<Self> {
        let mut p = Self::zero();
        for (w, c) in terms {
            if !is_alsw(&w) {
                return Err(Error::NotAlsw(format!("{w:?}")));
            }
            add_into(&mut p.terms, w, c);
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Coeff {
        self.terms.get(w).copied().unwrap_or(Coeff::ZERO)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub(crate) fn terms(&self) -> &BTreeMap<Word, Coeff> {
        &self.terms
    }

    pub fn leading(&self) -> Option<(&Word, &Coeff)> {
        self.terms.last_key_value()
    }

    pub fn leading_word(&self) -> Result<&Word> {
        self.terms.last_key_value().map(|(w, _)| w).ok_or(Error::ZeroPolynomial)
    }

    pub fn degree(&self) -> usize {
        self.leading().map_or(0, |(w, _)| w.len())
    }

    pub fn add_scaled(&mut self, other: &LiePoly, c: Coeff) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &other.terms {
            add_into(&mut self.terms, w.clone(), *d * c);
        }
    }

    pub fn add(&self, other: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        out.add_scaled(other, Coeff::ONE);
        out
    }

    pub fn sub(&self, other: &LiePoly) -> LiePoly {
        let mut out = self.clone();
        out.add_scaled(other, -Coeff::ONE);
        out
    }

    pub fn scale(&self, c: Coeff) -> LiePoly {
        let mut out = LiePoly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LiePoly {
        self.scale(-Coeff::ONE)
    }

    /// Linear extension of the bracket expansion over the support.
    pub fn expand(&self) -> AssocPoly {
        let mut out = AssocPoly::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&expand_nlsw(w), *c);
        }
        out
    }

    /// Recovers NLSW coordinates from an associative polynomial by repeated
    /// elimination of the leading word. Fails if some leading word on the way
    /// is not an ALSW, which means `p` is not a Lie element.
    pub fn from_assoc(p: &AssocPoly) -> Result<LiePoly> {
        let mut rest = p.clone();
        let mut out = LiePoly::zero();
        while let Some((w, c)) = rest.leading() {
            let (w, c) = (w.clone(), *c);
            if !is_alsw(&w) {
                return Err(Error::NotLie(format!("{w:?}")));
            }
            rest.add_scaled(&expand_nlsw(&w), -c);
            add_into(&mut out.terms, w, c);
        }
        Ok(out)
    }

    /// `[self, other]`, computed as `fg - gf` in the associative algebra.
    pub fn bracket(&self, other: &LiePoly) -> LiePoly {
        if self.is_zero() || other.is_zero() {
            return LiePoly::zero();
        }
        let comm = AssocPoly::commutator(&self.expand(), &other.expand());
        LiePoly::from_assoc(&comm).expect("bracket of Lie elements is a Lie element")
    }

    /// Left-normed bracket `⌊z u⌋ = [… [[z, u1], u2] …, um]`.
    pub fn left_normed(z: Letter, u: &Word) -> LiePoly {
        let mut acc = AssocPoly::monomial(Word::single(z), Coeff::ONE);
        for &x in u.iter() {
            acc = AssocPoly::commutator(&acc, &AssocPoly::monomial(Word::single(x), Coeff::ONE));
        }
        LiePoly::from_assoc(&acc).expect("left-normed brackets are Lie elements")
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayLie { p: self, alphabet }
    }
}

struct DisplayLie<'a> {
    p: &'a LiePoly,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayLie<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.p.terms.iter().rev().enumerate() {
            let tree = standard_bracketing(w).expect("NLSW keys are ALSWs");
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("- ")?,
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "{}", tree.display(self.alphabet))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn assoc(alpha: &Alphabet, terms: &[(&str, i64)]) -> AssocPoly {
        AssocPoly::from_terms(
            terms
                .iter()
                .map(|(w, c)| (alpha.parse_word(w).unwrap(), Coeff::int(*c))),
        )
    }

    fn lie(alpha: &Alphabet, terms: &[(&str, i64)]) -> LiePoly {
        LiePoly::from_terms(
            terms
                .iter()
                .map(|(w, c)| (alpha.parse_word(w).unwrap(), Coeff::int(*c))),
        )
        .unwrap()
    }

    #[test]
    fn expand_examples() {
        let x = ab();
        let t = |s: &str| standard_bracketing(&x.parse_word(s).unwrap()).unwrap();
        assert_eq!(expand(&t("a")), assoc(&x, &[("a", 1)]));
        assert_eq!(expand(&t("ba")), assoc(&x, &[("ba", 1), ("ab", -1)]));
        assert_eq!(
            expand(&t("baa")),
            assoc(&x, &[("baa", 1), ("aba", -2), ("aab", 1)])
        );
    }

    #[test]
    fn contraction_examples() {
        let x = ab();
        assert_eq!(
            LiePoly::from_assoc(&assoc(&x, &[("ba", 1), ("ab", -1)])).unwrap(),
            lie(&x, &[("ba", 1)])
        );
        assert_eq!(
            LiePoly::from_assoc(&assoc(&x, &[("baa", 1), ("aba", -2), ("aab", 1)])).unwrap(),
            lie(&x, &[("baa", 1)])
        );
        // [a, b] + [b, a] expands to zero.
        let a = BracketTree::Leaf(Letter(0));
        let b = BracketTree::Leaf(Letter(1));
        let mut p = expand(&BracketTree::node(a.clone(), b.clone()));
        p.add_scaled(&expand(&BracketTree::node(b, a)), Coeff::ONE);
        assert!(LiePoly::from_assoc(&p).unwrap().is_zero());
    }

    #[test]
    fn non_lie_input_is_rejected() {
        let x = ab();
        assert!(matches!(
            LiePoly::from_assoc(&assoc(&x, &[("ab", 1)])),
            Err(Error::NotLie(_))
        ));
        assert!(matches!(
            LiePoly::from_assoc(&assoc(&x, &[("ba", 1)])),
            Err(Error::NotLie(_))
        ));
    }

    #[test]
    fn bracket_examples() {
        let x = ab();
        let a = LiePoly::generator(Letter(0));
        let b = LiePoly::generator(Letter(1));
        assert_eq!(b.bracket(&a), lie(&x, &[("ba", 1)]));
        assert_eq!(a.bracket(&b), lie(&x, &[("ba", -1)]));
        assert_eq!(lie(&x, &[("ba", 1)]).bracket(&a), lie(&x, &[("baa", 1)]));
        assert!(a.bracket(&a).is_zero());
    }

    #[test]
    fn left_normed_examples() {
        let yxz = Alphabet::new(["y", "x", "z"]).unwrap();
        let z = yxz.letter("z").unwrap();
        assert_eq!(LiePoly::left_normed(z, &Word::empty()), LiePoly::generator(z));
        assert_eq!(
            LiePoly::left_normed(z, &yxz.parse_word("x").unwrap()),
            lie(&yxz, &[("zx", 1)])
        );
        let p = LiePoly::left_normed(z, &yxz.parse_word("xy").unwrap());
        let (lw, lc) = p.leading().unwrap();
        assert_eq!(lw, &yxz.parse_word("zxy").unwrap());
        assert!(lc.is_one());
    }

    #[test]
    fn display_format() {
        let t4 = Alphabet::new(["t12", "t13", "t23"]).unwrap();
        let p = lie(&t4, &[("t13 t12", -1)]);
        assert_eq!(p.display(&t4).to_string(), "- [t13, t12]");
        let q = lie(&t4, &[("t23 t12", 1), ("t13 t12", 2), ("t12", -3)]);
        assert_eq!(
            q.display(&t4).to_string(),
            "[t23, t12] + 2 [t13, t12] - 3 t12"
        );
        assert_eq!(LiePoly::zero().display(&t4).to_string(), "0");
    }

    #[test]
    fn zero_has_no_leading_word() {
        assert_eq!(LiePoly::zero().leading_word(), Err(Error::ZeroPolynomial));
    }
}
