//! Associative and non-associative Lyndon-Shirshov words.
//!
//! Letters are ordered by their position in the [`Alphabet`] (later letters
//! are greater). Two orders live on words:
//!
//! * the lex order [`Word::cmp_lex`], in which the empty word is greater than
//!   every nonempty word, so a proper prefix is greater than its extensions;
//! * the deg-lex order, which is the [`Ord`] implementation of [`Word`]:
//!   longer words are greater, equal lengths fall back to lex.
//!
//! An ALSW is a nonempty word strictly greater than each of its proper
//! rotations; its standard bracketing is the NLSW basis element `[w]`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A generator. Its index in the alphabet is its rank in the letter order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, PartialEq, Eq)]
struct AlphabetInner {
    names: Vec<String>,
    index: HashMap<String, Letter>,
}

/// A finite, totally ordered set of named generators, listed from least to
/// greatest. Cheap to clone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet(Arc<AlphabetInner>);

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '^'))
}

impl Alphabet {
    /// Builds an alphabet from names in increasing order.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > u16::MAX as usize {
            return Err(Error::AlphabetTooLarge(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidLetterName(name.clone()));
            }
            if index.insert(name.clone(), Letter(i as u16)).is_some() {
                return Err(Error::DuplicateLetter(name.clone()));
            }
        }
        Ok(Alphabet(Arc::new(AlphabetInner { names, index })))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|i| Letter(i as u16))
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.0.names[l.index()]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.0.index.get(name).copied()
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.iter().all(|l| l.index() < self.len())
    }

    /// Parses a word. Whitespace separates tokens; each token is split by
    /// greedy longest match against the letter names, so both `x y` and `xy`
    /// read as two letters. `1` or an empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let mut rest = token;
            while !rest.is_empty() {
                let best = self
                    .0
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_str()))
                    .max_by_key(|(_, n)| n.len());
                match best {
                    Some((i, n)) => {
                        letters.push(Letter(i as u16));
                        rest = &rest[n.len()..];
                    }
                    None => return Err(Error::UnknownLetter(token.to_string())),
                }
            }
        }
        Ok(Word(letters))
    }

    /// Renders a word: letters are concatenated when every name is a single
    /// character and separated by spaces otherwise. The empty word is `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let sep = if self.0.names.iter().all(|n| n.len() == 1) { "" } else { " " };
        w.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(sep)
    }
}

/// An element of the free monoid. `Ord` is the deg-lex order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn from_indices(indices: &[u16]) -> Self {
        Word(indices.iter().map(|&i| Letter(i)).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Letter> {
        self.0.iter()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(a: &Word, u: &Word, b: &Word) -> Word {
        let mut v = Vec::with_capacity(a.len() + u.len() + b.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&u.0);
        v.extend_from_slice(&b.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn rotation(&self, k: usize) -> Word {
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Start offsets of every occurrence of `u` as a factor.
    pub fn occurrences<'a>(&'a self, u: &'a Word) -> impl Iterator<Item = usize> + 'a {
        let n = self.len();
        let m = u.len();
        (0..=n.saturating_sub(m))
            .filter(move |&i| m <= n && self.0[i..i + m] == u.0[..])
    }

    pub fn contains_factor(&self, u: &Word) -> bool {
        self.occurrences(u).next().is_some()
    }

    /// The lex order: the empty word is greatest, otherwise heads decide and
    /// ties recurse on the tails.
    pub fn cmp_lex(&self, other: &Word) -> Ordering {
        for (x, y) in self.0.iter().zip(&other.0) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        // One word is a prefix of the other: the shorter one is greater.
        other.len().cmp(&self.len())
    }

    pub fn cmp_deglex(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_lex(other))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayWord { w: self, alphabet }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_deglex(other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<u16> = self.0.iter().map(|l| l.0).collect();
        write!(f, "Word{idx:?}")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

struct DisplayWord<'a> {
    w: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.format_word(self.w))
    }
}

/// True iff `w` is nonempty and deg-lex greater than each proper rotation.
/// The empty word is not an ALSW.
pub fn is_alsw(w: &Word) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w.cmp_deglex(&w.rotation(k)) == Ordering::Greater)
}

/// Longest proper suffix of `w` that is an ALSW, as a start offset.
fn longest_proper_alsw_suffix(w: &[Letter]) -> Option<usize> {
    (1..w.len()).find(|&k| is_alsw(&Word(w[k..].to_vec())))
}

/// Factorizes `c` as `c1 c2 … cn` with every `ci` an ALSW and
/// `c1 ⪯ c2 ⪯ … ⪯ cn` in the lex order, by repeatedly stripping the longest
/// ALSW suffix.
pub fn alsw_factorization(c: &Word) -> Result<Vec<Word>> {
    if c.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut factors = Vec::new();
    let mut end = c.len();
    while end > 0 {
        let rest = &c.0[..end];
        let start = (0..end)
            .find(|&k| is_alsw(&Word(rest[k..].to_vec())))
            .expect("a single letter is an ALSW");
        factors.push(Word(rest[start..].to_vec()));
        end = start;
    }
    factors.reverse();
    Ok(factors)
}

/// A fully parenthesized non-associative word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BracketTree {
    Leaf(Letter),
    Node(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn node(left: BracketTree, right: BracketTree) -> Self {
        BracketTree::Node(Box::new(left), Box::new(right))
    }

    /// The word obtained by erasing brackets.
    pub fn carrier(&self) -> Word {
        let mut out = Word::empty();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut Word) {
        match self {
            BracketTree::Leaf(l) => out.push(*l),
            BracketTree::Node(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            BracketTree::Leaf(_) => 1,
            BracketTree::Node(l, r) => l.degree() + r.degree(),
        }
    }

    /// Checks the NLSW conditions: the carrier is an ALSW, both halves are
    /// NLSWs, and `[[u11][u12]][u2]` has `u12 ⪯ u2` in the lex order.
    pub fn is_nlsw(&self) -> bool {
        match self {
            BracketTree::Leaf(_) => true,
            BracketTree::Node(l, r) => {
                if !is_alsw(&self.carrier()) || !l.is_nlsw() || !r.is_nlsw() {
                    return false;
                }
                match l.as_ref() {
                    BracketTree::Node(_, l2) => {
                        l2.carrier().cmp_lex(&r.carrier()) != Ordering::Greater
                    }
                    BracketTree::Leaf(_) => true,
                }
            }
        }
    }

    /// Replaces the subtree whose carrier spans `[start, start + len)`.
    fn replace_span(&self, offset: usize, start: usize, len: usize, with: &BracketTree) -> BracketTree {
        let deg = self.degree();
        if offset == start && deg == len {
            return with.clone();
        }
        match self {
            BracketTree::Leaf(_) => self.clone(),
            BracketTree::Node(l, r) => {
                let ld = l.degree();
                BracketTree::node(
                    l.replace_span(offset, start, len, with),
                    r.replace_span(offset + ld, start, len, with),
                )
            }
        }
    }

    /// Smallest subtree starting at `start` whose span reaches at least
    /// `min_end`; returns its end offset.
    fn smallest_cover(&self, offset: usize, start: usize, min_end: usize) -> Option<usize> {
        let end = offset + self.degree();
        if offset > start || end < min_end || (offset < start && end <= start) {
            return None;
        }
        let here = (offset == start).then_some(end);
        let deeper = match self {
            BracketTree::Leaf(_) => None,
            BracketTree::Node(l, r) => {
                let ld = l.degree();
                l.smallest_cover(offset, start, min_end)
                    .or_else(|| r.smallest_cover(offset + ld, start, min_end))
            }
        };
        deeper.or(here)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayTree { t: self, alphabet }
    }
}

struct DisplayTree<'a> {
    t: &'a BracketTree,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayTree<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t {
            BracketTree::Leaf(l) => f.write_str(self.alphabet.name(*l)),
            BracketTree::Node(l, r) => write!(
                f,
                "[{}, {}]",
                l.display(self.alphabet),
                r.display(self.alphabet)
            ),
        }
    }
}

fn bracket_unchecked(w: &[Letter]) -> BracketTree {
    if w.len() == 1 {
        return BracketTree::Leaf(w[0]);
    }
    let k = longest_proper_alsw_suffix(w).expect("the last letter is an ALSW suffix");
    BracketTree::node(bracket_unchecked(&w[..k]), bracket_unchecked(&w[k..]))
}

/// The NLSW `[w]`: `[[u][v]]` with `v` the longest proper ALSW suffix.
pub fn standard_bracketing(w: &Word) -> Result<BracketTree> {
    if !is_alsw(w) {
        return Err(Error::NotAlsw(format!("{w:?}")));
    }
    Ok(bracket_unchecked(&w.0))
}

/// Left-normed bracket `[…[[t0, t1], t2] …, tn]`.
pub fn left_normed_tree(first: BracketTree, rest: impl IntoIterator<Item = BracketTree>) -> BracketTree {
    rest.into_iter().fold(first, BracketTree::node)
}

/// Shirshov's special bracketing `[aub]_u`.
///
/// Inside `[w]` for `w = aub`, the smallest subtree starting where `u` starts
/// and covering it has carrier `uc`. With `c = c1…cn` factored by
/// [`alsw_factorization`], that subtree is replaced by
/// `[…[[u][c1]]…[cn]]`. The subtree `[u]` occupies span `[|a|, |a|+|u|)`.
pub fn special_bracketing(a: &Word, u: &Word, b: &Word) -> Result<BracketTree> {
    if !is_alsw(u) {
        return Err(Error::NotAlsw(format!("{u:?}")));
    }
    let w = Word::concat3(a, u, b);
    let tree = standard_bracketing(&w)?;
    let start = a.len();
    let end = tree
        .smallest_cover(0, start, start + u.len())
        .ok_or_else(|| Error::FactorMismatch {
            word: format!("{w:?}"),
            factor: format!("{u:?}"),
            offset: start,
        })?;
    let c = w.subword(start + u.len(), end);
    let mut sub = bracket_unchecked(&u.0);
    if !c.is_empty() {
        let factors = alsw_factorization(&c)?;
        sub = left_normed_tree(sub, factors.iter().map(|f| bracket_unchecked(&f.0)));
    }
    Ok(tree.replace_span(0, start, end - start, &sub))
}

/// All ALSWs of exactly degree `d` over the first `q` letters, in increasing
/// deg-lex order.
pub fn alsws_of_degree(q: usize, d: usize) -> Vec<Word> {
    let mut out: Vec<Word> = alsws_up_to(q, d).into_iter().filter(|w| w.len() == d).collect();
    out.sort();
    out
}

/// All ALSWs of degree `1..=max_deg` over the first `q` letters, sorted by
/// deg-lex. Uses Duval's generation of Lyndon words under the reversed letter
/// order, which are exactly the ALSWs.
pub fn alsws_up_to(q: usize, max_deg: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if q == 0 || max_deg == 0 {
        return out;
    }
    let top = (q - 1) as i64;
    let mut w: Vec<i64> = vec![-1];
    while !w.is_empty() {
        *w.last_mut().unwrap() += 1;
        out.push(Word(w.iter().map(|&x| Letter((top - x) as u16)).collect()));
        let m = w.len();
        while w.len() < max_deg {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn w(alpha: &Alphabet, s: &str) -> Word {
        alpha.parse_word(s).unwrap()
    }

    #[test]
    fn lex_order_has_empty_word_greatest() {
        let x = ab();
        assert_eq!(Word::empty().cmp_lex(&w(&x, "a")), Ordering::Greater);
        assert_eq!(w(&x, "a").cmp_lex(&w(&x, "ab")), Ordering::Greater);
        assert_eq!(w(&x, "ba").cmp_lex(&w(&x, "ab")), Ordering::Greater);
    }

    #[test]
    fn deglex_examples() {
        let x = ab();
        assert_eq!(w(&x, "ab").cmp(&w(&x, "b")), Ordering::Greater);
        assert_eq!(w(&x, "ba").cmp(&w(&x, "ab")), Ordering::Greater);
        assert_eq!(Word::empty().cmp(&Word::empty()), Ordering::Equal);
    }

    #[test]
    fn alsw_examples() {
        let x = ab();
        assert!(is_alsw(&w(&x, "b")));
        assert!(is_alsw(&w(&x, "ba")));
        assert!(!is_alsw(&w(&x, "aab")));
        assert!(is_alsw(&w(&x, "baa")));
        assert!(!is_alsw(&Word::empty()));
    }

    #[test]
    fn factorization_examples() {
        let x = ab();
        let f = |s: &str| -> Vec<String> {
            alsw_factorization(&w(&x, s))
                .unwrap()
                .iter()
                .map(|p| x.format_word(p))
                .collect()
        };
        assert_eq!(f("ba"), ["ba"]);
        assert_eq!(f("aab"), ["a", "a", "b"]);
        assert_eq!(f("bab"), ["ba", "b"]);
        assert_eq!(alsw_factorization(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn standard_bracketing_examples() {
        let x = ab();
        let s = |t: &str| standard_bracketing(&w(&x, t)).unwrap().display(&x).to_string();
        assert_eq!(s("b"), "b");
        assert_eq!(s("ba"), "[b, a]");
        assert_eq!(s("baa"), "[[b, a], a]");
        assert!(standard_bracketing(&w(&x, "ab")).is_err());
    }

    #[test]
    fn special_bracketing_examples() {
        let cba = Alphabet::new(["a", "b", "c"]).unwrap();
        let t = special_bracketing(&Word::empty(), &w(&cba, "cb"), &w(&cba, "a")).unwrap();
        assert_eq!(t.display(&cba).to_string(), "[[c, b], a]");

        let whole = w(&cba, "cbab");
        assert!(is_alsw(&whole));
        let t = special_bracketing(&Word::empty(), &whole, &Word::empty()).unwrap();
        assert_eq!(t, standard_bracketing(&whole).unwrap());

        // Generators of L_4 in increasing order.
        let t4 = Alphabet::new(["t12", "t13", "t23"]).unwrap();
        let t = special_bracketing(&Word::empty(), &w(&t4, "t23 t12"), &w(&t4, "t13")).unwrap();
        assert_eq!(t.display(&t4).to_string(), "[[t23, t12], t13]");
        assert_eq!(t.carrier(), w(&t4, "t23 t12 t13"));
    }

    #[test]
    fn special_bracketing_rejects_non_alsw() {
        let x = ab();
        assert!(special_bracketing(&Word::empty(), &w(&x, "ab"), &Word::empty()).is_err());
        assert!(special_bracketing(&w(&x, "a"), &w(&x, "b"), &Word::empty()).is_err());
    }

    #[test]
    fn parse_word_greedy() {
        let t = Alphabet::new(["t1", "t12", "t2"]).unwrap();
        assert_eq!(t.parse_word("t12t2").unwrap(), Word::from_indices(&[1, 2]));
        assert_eq!(t.parse_word("t1 t2").unwrap(), Word::from_indices(&[0, 2]));
        assert!(t.parse_word("q").is_err());
        assert_eq!(t.parse_word("1").unwrap(), Word::empty());
        assert_eq!(t.format_word(&Word::from_indices(&[1, 2])), "t12 t2");
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert_eq!(
            Alphabet::new(["x", "x"]).unwrap_err(),
            Error::DuplicateLetter("x".into())
        );
        assert!(Alphabet::new(["1x"]).is_err());
    }

    #[test]
    fn duval_generation_matches_filter() {
        for q in 1usize..=3 {
            for d in 1usize..=6 {
                let mut brute = Vec::new();
                let total = q.pow(d as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut v = Vec::new();
                    for _ in 0..d {
                        v.push((c % q) as u16);
                        c /= q;
                    }
                    let word = Word::from_indices(&v);
                    if is_alsw(&word) {
                        brute.push(word);
                    }
                }
                brute.sort();
                assert_eq!(alsws_of_degree(q, d), brute, "q={q} d={d}");
            }
        }
    }
}
