//! Presentation files.
//!
//! ```text
//! # comments and blank lines are ignored
//! letters: a < b < c          # generators, least first
//! mode: integer               # or `rational`
//! degree: 4                   # default degree for `basis` and `ranks`
//! rule: x y = y x             # semigroup relation
//! relation: [c, b] + 2 [c, a] # Lie relation, `= rhs` optional
//! dk: n=5                     # Drinfeld-Kohno algebra L_5
//! kukin: sgp.txt, bound=8     # Kukin algebra of another file's semigroup
//! ```
//!
//! Lie expressions use `[f, g]` for brackets, `(z ; x y)` for the
//! left-normed bracket `⌊z x y⌋`, integer or `p/q` coefficients written
//! before a term, `+`, `-` and parentheses.

use std::fmt;

use thiserror::Error;

use crate::coeff::{Coeff, Ring};
use crate::liepoly::LiePoly;
use crate::words::{Alphabet, Letter, Word};

const MAX_DEPTH: usize = 128;
const MAX_COEFF: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationKind {
    Lie,
    Semigroup,
    Kukin,
    Dk,
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationKind::Lie => "lie",
            PresentationKind::Semigroup => "semigroup",
            PresentationKind::Kukin => "kukin",
            PresentationKind::Dk => "dk",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Syntax tree of a Lie expression; printing it reproduces the source up to
/// whitespace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Letter(Letter),
    Bracket(Box<Expr>, Box<Expr>),
    LeftNormed(Letter, Word),
    Paren(Box<Expr>),
    Scaled(Coeff, Box<Expr>),
    /// Signed terms; only the first sign may be absent.
    Sum(Vec<(Option<Sign>, Expr)>),
}

impl Expr {
    pub fn eval(&self) -> LiePoly {
        match self {
            Expr::Letter(l) => LiePoly::generator(*l),
            Expr::Bracket(a, b) => a.eval().bracket(&b.eval()),
            Expr::LeftNormed(z, u) => LiePoly::left_normed(*z, u),
            Expr::Paren(e) => e.eval(),
            Expr::Scaled(c, e) => e.eval().scale(*c),
            Expr::Sum(terms) => {
                let mut acc = LiePoly::zero();
                for (s, e) in terms {
                    let c = if *s == Some(Sign::Minus) { -Coeff::ONE } else { Coeff::ONE };
                    acc.add_scaled(&e.eval(), c);
                }
                acc
            }
        }
    }

    fn coefficients(&self, out: &mut Vec<Coeff>) {
        match self {
            Expr::Letter(_) | Expr::LeftNormed(..) => {}
            Expr::Bracket(a, b) => {
                a.coefficients(out);
                b.coefficients(out);
            }
            Expr::Paren(e) => e.coefficients(out),
            Expr::Scaled(c, e) => {
                out.push(*c);
                e.coefficients(out);
            }
            Expr::Sum(ts) => ts.iter().for_each(|(_, e)| e.coefficients(out)),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        DisplayExpr { e: self, alphabet }
    }
}

struct DisplayExpr<'a> {
    e: &'a Expr,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.alphabet;
        match self.e {
            Expr::Letter(l) => f.write_str(a.name(*l)),
            Expr::Bracket(x, y) => write!(f, "[{}, {}]", x.display(a), y.display(a)),
            Expr::LeftNormed(z, u) if u.is_empty() => write!(f, "({} ; )", a.name(*z)),
            Expr::LeftNormed(z, u) => write!(f, "({} ; {})", a.name(*z), a.format_word(u)),
            Expr::Paren(x) => write!(f, "({})", x.display(a)),
            Expr::Scaled(c, x) => write!(f, "{c} {}", x.display(a)),
            Expr::Sum(terms) => {
                for (i, (s, x)) in terms.iter().enumerate() {
                    match (i, s) {
                        (0, None) => {}
                        (0, Some(Sign::Plus)) => f.write_str("+ ")?,
                        (0, Some(Sign::Minus)) => f.write_str("- ")?,
                        (_, Some(Sign::Minus)) => f.write_str(" - ")?,
                        _ => f.write_str(" + ")?,
                    }
                    write!(f, "{}", x.display(a))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KukinSpec {
    pub path: Option<String>,
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    Letters(Vec<String>),
    Mode(Ring),
    Degree(usize),
    Rule(Word, Word),
    Relation(Expr, Option<Expr>),
    Dk(usize),
    Kukin(KukinSpec),
}

/// A parsed presentation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub kind: PresentationKind,
    /// Alphabet used to resolve rules and relations; for `dk` files the
    /// generated generator names.
    pub alphabet: Alphabet,
    pub directives: Vec<Directive>,
}

impl PresentationFile {
    pub fn mode(&self) -> Option<Ring> {
        self.directives.iter().find_map(|d| match d {
            Directive::Mode(r) => Some(*r),
            _ => None,
        })
    }

    pub fn degree(&self) -> Option<usize> {
        self.directives.iter().find_map(|d| match d {
            Directive::Degree(n) => Some(*n),
            _ => None,
        })
    }

    pub fn rules(&self) -> Vec<(Word, Word)> {
        self.directives
            .iter()
            .filter_map(|d| match d {
                Directive::Rule(u, v) => Some((u.clone(), v.clone())),
                _ => None,
            })
            .collect()
    }

    /// Relations as `lhs - rhs`.
    pub fn relations(&self) -> Vec<LiePoly> {
        self.directives
            .iter()
            .filter_map(|d| match d {
                Directive::Relation(l, r) => {
                    let p = l.eval();
                    Some(match r {
                        Some(r) => p.sub(&r.eval()),
                        None => p,
                    })
                }
                _ => None,
            })
            .collect()
    }

    pub fn dk_n(&self) -> Option<usize> {
        self.directives.iter().find_map(|d| match d {
            Directive::Dk(n) => Some(*n),
            _ => None,
        })
    }

    pub fn kukin(&self) -> Option<&KukinSpec> {
        self.directives.iter().find_map(|d| match d {
            Directive::Kukin(k) => Some(k),
            _ => None,
        })
    }

    /// Canonical text; parsing it yields `self` again.
    pub fn to_text(&self) -> String {
        let a = &self.alphabet;
        let mut out = String::new();
        for d in &self.directives {
            let line = match d {
                Directive::Letters(names) => format!("letters: {}", names.join(" < ")),
                Directive::Mode(r) => format!("mode: {r}"),
                Directive::Degree(n) => format!("degree: {n}"),
                Directive::Rule(u, v) => format!("rule: {} = {}", a.format_word(u), a.format_word(v)),
                Directive::Relation(l, None) => format!("relation: {}", l.display(a)),
                Directive::Relation(l, Some(r)) => {
                    format!("relation: {} = {}", l.display(a), r.display(a))
                }
                Directive::Dk(n) => format!("dk: n={n}"),
                Directive::Kukin(k) => {
                    let mut parts = Vec::new();
                    if let Some(p) = &k.path {
                        parts.push(p.clone());
                    }
                    if let Some(b) = k.bound {
                        parts.push(format!("bound={b}"));
                    }
                    format!("kukin: {}", parts.join(", "))
                }
            };
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(Coeff),
    Sym(char),
}

fn tokenize(text: &str, line: usize, col0: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '_' | '\'' | '^'))
            {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let c = lit
                .parse::<Coeff>()
                .map_err(|_| ParseError::new(line, col, format!("bad coefficient `{lit}`")))?;
            if c.numer().abs() > MAX_COEFF || c.denom() > MAX_COEFF {
                return Err(ParseError::new(line, col, format!("coefficient `{lit}` too large")));
            }
            out.push((Tok::Num(c), col));
        } else if "[](),;+-=".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError::new(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    alphabet: &'a Alphabet,
    depth: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn letter(&mut self) -> Result<Letter, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let l = self
                    .alphabet
                    .letter(&name)
                    .ok_or_else(|| self.err(format!("unknown letter `{name}`")))?;
                self.pos += 1;
                Ok(l)
            }
            _ => Err(self.err("expected a letter")),
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("expression nested too deeply"));
        }
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(Tok::Sym('+')) => Some(Sign::Plus),
            Some(Tok::Sym('-')) => Some(Sign::Minus),
            _ => None,
        };
        if sign.is_some() {
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            terms.push((sign, t));
            sign = match self.peek() {
                Some(Tok::Sym('+')) => Some(Sign::Plus),
                Some(Tok::Sym('-')) => Some(Sign::Minus),
                _ => break,
            };
            self.pos += 1;
        }
        self.depth -= 1;
        if terms.len() == 1 && terms[0].0.is_none() {
            Ok(terms.pop().unwrap().1)
        } else {
            Ok(Expr::Sum(terms))
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Num(c)) = self.peek().cloned() {
            self.pos += 1;
            let atom = self.atom()?;
            return Ok(Expr::Scaled(c, Box::new(atom)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Ident(_)) => Ok(Expr::Letter(self.letter()?)),
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(']')?;
                Ok(Expr::Bracket(Box::new(a), Box::new(b)))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let left_normed = matches!(self.peek(), Some(Tok::Ident(_)))
                    && self.toks.get(self.pos + 1).map(|(t, _)| t) == Some(&Tok::Sym(';'));
                if left_normed {
                    let z = self.letter()?;
                    self.expect(';')?;
                    let mut u = Word::empty();
                    while let Some(Tok::Ident(name)) = self.peek().cloned() {
                        let w = self
                            .alphabet
                            .parse_word(&name)
                            .map_err(|_| self.err(format!("unknown letter in `{name}`")))?;
                        u = u.concat(&w);
                        self.pos += 1;
                    }
                    self.expect(')')?;
                    Ok(Expr::LeftNormed(z, u))
                } else {
                    let e = self.sum()?;
                    self.expect(')')?;
                    Ok(Expr::Paren(Box::new(e)))
                }
            }
            _ => Err(self.err("expected a letter, `[` or `(`")),
        }
    }
}

/// Parses a Lie expression over `alphabet`. `line`/`col0` locate the text in
/// its file for error messages (both 1-based).
pub fn parse_expr_at(text: &str, alphabet: &Alphabet, line: usize, col0: usize) -> Result<Expr, ParseError> {
    let toks = tokenize(text, line, col0)?;
    let mut p = ExprParser {
        toks,
        pos: 0,
        line,
        end_col: col0 + text.chars().count(),
        alphabet,
        depth: 0,
    };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

pub fn parse_expr(text: &str, alphabet: &Alphabet) -> Result<Expr, ParseError> {
    parse_expr_at(text, alphabet, 1, 1)
}

/// Splits `lhs = rhs` at a top-level `=`.
fn split_equation(text: &str) -> (&str, Option<(&str, usize)>) {
    match text.find('=') {
        Some(i) => (&text[..i], Some((&text[i + 1..], i + 1))),
        None => (text, None),
    }
}

fn parse_usize(s: &str, line: usize, col: usize, what: &str) -> Result<usize, ParseError> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| ParseError::new(line, col, format!("expected a number for {what}, found `{}`", s.trim())))
}

fn column_of(raw: &str, part: &str) -> usize {
    // `part` is a subslice of `raw`.
    let offset = part.as_ptr() as usize - raw.as_ptr() as usize;
    raw[..offset].chars().count() + 1
}

enum Raw<'a> {
    Letters(&'a str),
    Mode(&'a str),
    Degree(&'a str),
    Rule(&'a str),
    Relation(&'a str),
    Dk(&'a str),
    Kukin(&'a str),
}

pub fn parse_presentation(text: &str) -> Result<PresentationFile, ParseError> {
    let mut raws: Vec<(usize, &str, Raw)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            let col = column_of(raw, content.trim_start());
            return Err(ParseError::new(line, col, "expected `key: value`"));
        };
        let r = match key.trim() {
            "letters" => Raw::Letters(value),
            "mode" => Raw::Mode(value),
            "degree" => Raw::Degree(value),
            "rule" => Raw::Rule(value),
            "relation" => Raw::Relation(value),
            "dk" => Raw::Dk(value),
            "kukin" => Raw::Kukin(value),
            other => {
                return Err(ParseError::new(
                    line,
                    column_of(raw, key.trim_start()),
                    format!("unknown directive `{other}`"),
                ))
            }
        };
        raws.push((line, raw, r));
    }

    let mut letters: Option<(usize, Vec<String>)> = None;
    let mut dk: Option<usize> = None;
    let mut has_kukin = false;
    for (line, raw, r) in &raws {
        match r {
            Raw::Letters(v) => {
                if letters.is_some() {
                    return Err(ParseError::new(*line, 1, "duplicate `letters` line"));
                }
                let names: Vec<String> = v.split('<').map(|s| s.trim().to_string()).collect();
                if let Err(e) = Alphabet::new(names.clone()) {
                    return Err(ParseError::new(*line, column_of(raw, v), e.to_string()));
                }
                letters = Some((*line, names));
            }
            Raw::Dk(v) => {
                let col = column_of(raw, v);
                let n = v
                    .trim()
                    .strip_prefix("n")
                    .and_then(|s| s.trim_start().strip_prefix('='))
                    .ok_or_else(|| ParseError::new(*line, col, "expected `n=<number>`"))?;
                let n = parse_usize(n, *line, col, "n")?;
                if n <= 2 || n > 30 {
                    return Err(ParseError::new(*line, col, "dk needs 2 < n ≤ 30"));
                }
                if dk.replace(n).is_some() {
                    return Err(ParseError::new(*line, 1, "duplicate `dk` line"));
                }
            }
            Raw::Kukin(_) => {
                if has_kukin {
                    return Err(ParseError::new(*line, 1, "duplicate `kukin` line"));
                }
                has_kukin = true;
            }
            _ => {}
        }
    }
    let has_rules = raws.iter().any(|(_, _, r)| matches!(r, Raw::Rule(_)));
    let has_relations = raws.iter().any(|(_, _, r)| matches!(r, Raw::Relation(_)));

    let kind = match (dk, has_kukin) {
        (Some(_), true) => return Err(ParseError::new(1, 1, "a file cannot be both `dk` and `kukin`")),
        (Some(_), false) => PresentationKind::Dk,
        (None, true) => PresentationKind::Kukin,
        (None, false) if has_relations => PresentationKind::Lie,
        _ => PresentationKind::Semigroup,
    };
    if kind == PresentationKind::Dk {
        if let Some((line, _, _)) = raws
            .iter()
            .find(|(_, _, r)| matches!(r, Raw::Letters(_) | Raw::Rule(_) | Raw::Relation(_)))
        {
            return Err(ParseError::new(*line, 1, "`dk` files take no letters, rules or relations"));
        }
    }
    if kind == PresentationKind::Kukin && has_relations {
        let line = raws.iter().find(|(_, _, r)| matches!(r, Raw::Relation(_))).unwrap().0;
        return Err(ParseError::new(line, 1, "`kukin` files take semigroup rules, not Lie relations"));
    }
    if (has_rules || has_relations) && letters.is_none() {
        return Err(ParseError::new(1, 1, "missing `letters` line"));
    }

    let alphabet = match (kind, &letters) {
        (PresentationKind::Dk, _) => crate::drinfeld_kohno::dk_build(dk.unwrap())
            .map_err(|e| ParseError::new(1, 1, e.to_string()))?
            .alphabet()
            .clone(),
        (_, Some((_, names))) => Alphabet::new(names.clone()).expect("validated above"),
        (_, None) => Alphabet::new(Vec::<String>::new()).expect("empty alphabet"),
    };

    let integer_mode = raws
        .iter()
        .any(|(_, _, r)| matches!(r, Raw::Mode(v) if v.trim() == "integer"));
    let mut directives = Vec::new();
    for (line, raw, r) in raws {
        let d = match r {
            Raw::Letters(_) => Directive::Letters(letters.as_ref().unwrap().1.clone()),
            Raw::Mode(v) => match v.trim() {
                "integer" => Directive::Mode(Ring::Integers),
                "rational" => Directive::Mode(Ring::Rationals),
                other => {
                    return Err(ParseError::new(
                        line,
                        column_of(raw, v),
                        format!("unknown mode `{other}` (integer or rational)"),
                    ))
                }
            },
            Raw::Degree(v) => Directive::Degree(parse_usize(v, line, column_of(raw, v), "degree")?),
            Raw::Rule(v) => {
                let (l, r) = split_equation(v);
                let Some((r, _)) = r else {
                    return Err(ParseError::new(line, column_of(raw, v), "rule needs `=`"));
                };
                let word = |s: &str| {
                    let w = alphabet
                        .parse_word(s)
                        .map_err(|e| ParseError::new(line, column_of(raw, s), e.to_string()))?;
                    if w.is_empty() {
                        return Err(ParseError::new(line, column_of(raw, s), "empty word in rule"));
                    }
                    Ok(w)
                };
                Directive::Rule(word(l)?, word(r)?)
            }
            Raw::Relation(v) => {
                let (l, r) = split_equation(v);
                let lhs = parse_expr_at(l, &alphabet, line, column_of(raw, l))?;
                let rhs = match r {
                    Some((r, _)) => Some(parse_expr_at(r, &alphabet, line, column_of(raw, r))?),
                    None => None,
                };
                if integer_mode {
                    let mut cs = Vec::new();
                    lhs.coefficients(&mut cs);
                    if let Some(r) = &rhs {
                        r.coefficients(&mut cs);
                    }
                    if let Some(c) = cs.iter().find(|c| !c.is_integer()) {
                        return Err(ParseError::new(
                            line,
                            column_of(raw, v),
                            format!("coefficient {c} in integer mode"),
                        ));
                    }
                }
                Directive::Relation(lhs, rhs)
            }
            Raw::Dk(_) => Directive::Dk(dk.unwrap()),
            Raw::Kukin(v) => {
                let mut spec = KukinSpec { path: None, bound: None };
                for part in v.split(',') {
                    let p = part.trim();
                    if p.is_empty() {
                        continue;
                    }
                    if let Some(b) = p.strip_prefix("bound") {
                        let col = column_of(raw, part);
                        let b = b
                            .trim_start()
                            .strip_prefix('=')
                            .ok_or_else(|| ParseError::new(line, col, "expected `bound=<number>`"))?;
                        let b = parse_usize(b, line, col, "bound")?;
                        if b == 0 {
                            return Err(ParseError::new(line, col, "bound must be positive"));
                        }
                        spec.bound = Some(b);
                    } else if spec.path.is_none() {
                        spec.path = Some(p.to_string());
                    } else {
                        return Err(ParseError::new(line, column_of(raw, part), "unexpected kukin option"));
                    }
                }
                Directive::Kukin(spec)
            }
        };
        directives.push(d);
    }

    Ok(PresentationFile {
        kind,
        alphabet,
        directives,
    })
}
