//! String rewriting for semigroup presentations.
//!
//! Relations `u = v` are oriented from the deg-lex greater side to the
//! smaller one, completed by Knuth-Bendix, and used to compute normal forms
//! and to enumerate the pairs of the congruence they generate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

/// `sgp⟨A | u_i = v_i⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgpPresentation {
    pub alphabet: Alphabet,
    pub rules: Vec<(Word, Word)>,
}

impl SgpPresentation {
    pub fn new(alphabet: Alphabet, rules: Vec<(Word, Word)>) -> Result<Self> {
        for (u, v) in &rules {
            if u.is_empty() || v.is_empty() {
                return Err(Error::EmptyWord);
            }
            if !alphabet.contains(u) || !alphabet.contains(v) {
                return Err(Error::UnknownLetter(format!("{u:?} = {v:?}")));
            }
        }
        Ok(SgpPresentation { alphabet, rules })
    }

    /// Parses `"xy=yx"`-style rules over `alphabet`.
    pub fn parse(alphabet: Alphabet, rules: &[&str]) -> Result<Self> {
        let mut parsed = Vec::new();
        for r in rules {
            let (u, v) = r
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("rule `{r}` has no `=`")))?;
            parsed.push((alphabet.parse_word(u)?, alphabet.parse_word(v)?));
        }
        Self::new(alphabet, parsed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// Rules `l → r` with `l > r` in deg-lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringRS {
    alphabet: Alphabet,
    rules: Vec<Rule>,
    complete: bool,
}

impl StringRS {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Set once completion has shown the system confluent.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// First rewrite position: leftmost occurrence, first rule on ties.
    fn step(&self, w: &Word) -> Option<Word> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            for r in &self.rules {
                let l = r.lhs.letters();
                if letters[pos..].starts_with(l) {
                    let mut out = letters[..pos].to_vec();
                    out.extend_from_slice(r.rhs.letters());
                    out.extend_from_slice(&letters[pos + l.len()..]);
                    return Some(Word::new(out));
                }
            }
        }
        None
    }

    /// Rewrites `u` to an irreducible word. For a complete system this is the
    /// canonical representative of the class of `u`; otherwise it is merely
    /// some irreducible word in that class.
    pub fn normal_form(&self, u: &Word) -> Word {
        let mut w = u.clone();
        while let Some(next) = self.step(&w) {
            w = next;
        }
        w
    }

    pub fn is_irreducible(&self, u: &Word) -> bool {
        self.step(u).is_none()
    }

    pub fn display(&self) -> String {
        self.rules
            .iter()
            .map(|r| {
                format!(
                    "{} -> {}",
                    self.alphabet.format_word(&r.lhs),
                    self.alphabet.format_word(&r.rhs)
                )
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn oriented(u: Word, v: Word) -> Option<Rule> {
    match u.cmp(&v) {
        std::cmp::Ordering::Greater => Some(Rule { lhs: u, rhs: v }),
        std::cmp::Ordering::Less => Some(Rule { lhs: v, rhs: u }),
        std::cmp::Ordering::Equal => None,
    }
}

/// Orients every defining relation; trivial ones are dropped.
pub fn orient(p: &SgpPresentation) -> StringRS {
    let mut rules: Vec<Rule> = Vec::new();
    for (u, v) in &p.rules {
        if let Some(r) = oriented(u.clone(), v.clone()) {
            if !rules.contains(&r) {
                rules.push(r);
            }
        }
    }
    StringRS {
        alphabet: p.alphabet.clone(),
        complete: rules.is_empty(),
        rules,
    }
}

/// Returned when completion hits its bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incomplete {
    pub system: StringRS,
    /// Critical pairs that did not resolve.
    pub pending: Vec<(Word, Word)>,
}

impl fmt::Display for Incomplete {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "completion stopped with {} rules and {} unresolved critical pairs",
            self.system.rules.len(),
            self.pending.len()
        )
    }
}

/// Critical pairs of `l1 → r1` and `l2 → r2`: proper overlaps of a suffix of
/// `l1` with a prefix of `l2`, and occurrences of `l2` inside `l1`.
fn critical_pairs(a: &Rule, b: &Rule, same: bool) -> Vec<(Word, Word)> {
    let (l1, l2) = (a.lhs.letters(), b.lhs.letters());
    let mut out = Vec::new();
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let mut left = a.rhs.letters().to_vec();
            left.extend_from_slice(&l2[k..]);
            let mut right = l1[..l1.len() - k].to_vec();
            right.extend_from_slice(b.rhs.letters());
            out.push((Word::new(left), Word::new(right)));
        }
    }
    if !same {
        for pos in a.lhs.occurrences(&b.lhs) {
            let mut right = l1[..pos].to_vec();
            right.extend_from_slice(b.rhs.letters());
            right.extend_from_slice(&l1[pos + l2.len()..]);
            out.push((a.rhs.clone(), Word::new(right)));
        }
    }
    out
}

/// Deletes rules whose left side is reducible by another rule and
/// normalizes right sides. Returns the displaced equations.
fn interreduce(rules: &mut Vec<Rule>, alphabet: &Alphabet) -> Vec<(Word, Word)> {
    let mut displaced = Vec::new();
    let mut i = 0;
    while i < rules.len() {
        let others = StringRS {
            alphabet: alphabet.clone(),
            rules: rules
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.clone())
                .collect(),
            complete: false,
        };
        if !others.is_irreducible(&rules[i].lhs) {
            let r = rules.remove(i);
            displaced.push((r.lhs, r.rhs));
        } else {
            i += 1;
        }
    }
    let all = StringRS {
        alphabet: alphabet.clone(),
        rules: rules.clone(),
        complete: false,
    };
    for r in rules.iter_mut() {
        r.rhs = all.normal_form(&r.rhs);
    }
    displaced
}

/// Knuth-Bendix completion under deg-lex. New rules with a left side longer
/// than `max_len`, or more than `max_iter` rounds, stop the procedure with
/// [`Incomplete`].
pub fn knuth_bendix(rs: &StringRS, max_len: usize, max_iter: usize) -> Result<StringRS, Incomplete> {
    let mut rules = rs.rules.clone();
    let alphabet = rs.alphabet.clone();
    let mut pending: Vec<(Word, Word)> = interreduce(&mut rules, &alphabet);

    for _ in 0..max_iter {
        let current = StringRS {
            alphabet: alphabet.clone(),
            rules: rules.clone(),
            complete: false,
        };
        for (i, a) in rules.iter().enumerate() {
            for (j, b) in rules.iter().enumerate() {
                pending.extend(critical_pairs(a, b, i == j));
            }
        }
        let mut fresh: Vec<Rule> = Vec::new();
        let mut seen = BTreeSet::new();
        for (u, v) in pending.drain(..) {
            let (nu, nv) = (current.normal_form(&u), current.normal_form(&v));
            if let Some(r) = oriented(nu, nv) {
                if seen.insert((r.lhs.clone(), r.rhs.clone())) {
                    fresh.push(r);
                }
            }
        }
        if fresh.is_empty() {
            return Ok(StringRS {
                alphabet,
                rules,
                complete: true,
            });
        }
        if fresh.iter().any(|r| r.lhs.len() > max_len) {
            return Err(Incomplete {
                system: current,
                pending: fresh.into_iter().map(|r| (r.lhs, r.rhs)).collect(),
            });
        }
        rules.extend(fresh);
        pending = interreduce(&mut rules, &alphabet);
    }
    let system = StringRS {
        alphabet,
        rules,
        complete: false,
    };
    Err(Incomplete { system, pending })
}

/// All words over `alphabet` of length `1..=max_len`, in deg-lex order.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let q = alphabet.len();
    let mut out = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * q);
        for w in &layer {
            for l in alphabet.letters() {
                let mut x = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// Every pair `(u, v)` of the congruence with `u > v` and both of length at
/// most `max_len`, sorted by `u` then `v`.
pub fn congruence_pairs(rs: &StringRS, max_len: usize) -> Result<Vec<(Word, Word)>> {
    if !rs.complete {
        return Err(Error::IncompleteSystem);
    }
    let mut classes: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
    for w in words_up_to(&rs.alphabet, max_len) {
        classes.entry(rs.normal_form(&w)).or_default().push(w);
    }
    let mut out = Vec::new();
    for members in classes.values() {
        for (i, u) in members.iter().enumerate() {
            for v in &members[..i] {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}
