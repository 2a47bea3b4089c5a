//! Group presentations `< S | R >`: words over signed generators, parsing,
//! free and cyclic reduction, and reducedness checking against a
//! [`GroupOracle`].

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupOracle, Triviality};

/// A generator name: letter-initial, then letters, digits or underscores.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Generator(String);

impl Generator {
    pub fn new(name: impl Into<String>) -> Result<Self, PresentationError> {
        let name = name.into();
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(Generator(name))
        } else {
            Err(PresentationError::InvalidName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Generator {
    type Error = PresentationError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Generator::new(s)
    }
}

impl From<Generator> for String {
    fn from(g: Generator) -> String {
        g.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A generator index together with a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(generator: usize) -> Self {
        Letter { generator, inverse: false }
    }

    pub const fn neg(generator: usize) -> Self {
        Letter { generator, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { inverse: !self.inverse, ..self }
    }

    pub fn is_positive(self) -> bool {
        !self.inverse
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    /// Column of this letter in a coset table: `2g` for `g`, `2g + 1` for `g^-1`.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

/// An element of the free group, not necessarily reduced. The empty word is
/// the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
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

    /// The letter `r[i]` in 1-based indexing.
    pub fn letter(&self, i: usize) -> Option<Letter> {
        i.checked_sub(1).and_then(|k| self.0.get(k).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    /// Exponent sum of every generator, indexed by generator.
    pub fn exponent_sums(&self, num_generators: usize) -> Vec<i64> {
        let mut sums = vec![0; num_generators];
        for l in &self.0 {
            sums[l.generator] += l.sign();
        }
        sums
    }

    /// Removes adjacent `x x^-1` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by trimming matching first/last letters.
    pub fn cyclic_reduce(&self) -> Word {
        let w = self.free_reduce();
        let (mut lo, mut hi) = (0, w.len());
        while hi - lo >= 2 && w.0[lo] == w.0[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        Word(w.0[lo..hi].to_vec())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced() && (self.len() < 2 || self.0[0] != self.0[self.len() - 1].inv())
    }

    /// `r[i,j] = r[i] r[i+1] ... r[j]` with `r[0] = e`.
    pub fn subword(&self, i: usize, j: usize) -> Result<Word, PresentationError> {
        if i > j || j > self.len() {
            return Err(PresentationError::IndexOutOfRange { i, j, len: self.len() });
        }
        let start = i.max(1) - 1;
        Ok(Word(self.0[start..j].to_vec()))
    }

    /// The prefix `r[0,i]`.
    pub fn prefix(&self, i: usize) -> &[Letter] {
        &self.0[..i]
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("relator uses undeclared generator `{name}` at byte {pos}")]
    UndeclaredGenerator { name: String, pos: usize },
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("relator {relator} refers to generator index {generator} out of range")]
    LetterOutOfRange { relator: usize, generator: usize },
    #[error("subword indices ({i},{j}) out of range for word of length {len}")]
    IndexOutOfRange { i: usize, j: usize, len: usize },
}

/// `< S | R >` with `S` nonempty and every relator over `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if generators.is_empty() {
            return Err(PresentationError::NoGenerators);
        }
        Self::new_allow_empty(generators, relators)
    }

    /// Like [`Presentation::new`] but accepts an empty generator list, as
    /// produced when computed presentations (edge-path groups, Tietze
    /// output) describe the trivial group.
    pub fn new_allow_empty(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.0.clone()));
            }
        }
        for (k, r) in relators.iter().enumerate() {
            if let Some(l) = r.0.iter().find(|l| l.generator >= generators.len()) {
                return Err(PresentationError::LetterOutOfRange { relator: k, generator: l.generator });
            }
        }
        Ok(Presentation { generators, relators })
    }

    /// Builds a presentation from generator names.
    pub fn from_names(names: &[&str], relators: Vec<Word>) -> Result<Self, PresentationError> {
        let gens = names.iter().map(|n| Generator::new(*n)).collect::<Result<Vec<_>, _>>()?;
        Presentation::new(gens, relators)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.as_str() == name)
    }

    pub fn format_word(&self, w: &Word) -> String {
        format_word(&self.generators, w)
    }
}

impl std::str::FromStr for Presentation {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators.iter().map(|g| g.as_str()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        f.write_str("<")?;
        if !gens.is_empty() {
            write!(f, " {}", gens.join(", "))?;
        }
        if rels.is_empty() {
            f.write_str(" | >")
        } else {
            write!(f, " | {} >", rels.join(", "))
        }
    }
}

/// Formats a word with runs collapsed to powers; the empty word prints as `1`.
pub fn format_word(generators: &[Generator], w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let l = w.0[i];
        let mut run = 1;
        while i + run < w.len() && w.0[i + run] == l {
            run += 1;
        }
        let name = generators[l.generator].as_str();
        let exp = run as i64 * l.sign();
        parts.push(if exp == 1 { name.to_string() } else { format!("{name}^{exp}") });
        i += run;
    }
    parts.join(" ")
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    gens: Vec<Generator>,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, PresentationError> {
        Err(PresentationError::Syntax { pos: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), PresentationError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), PresentationError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        match rest.chars().next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return self.err("expected identifier"),
        }
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn signed_int(&mut self) -> Result<i64, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let sign_len = usize::from(rest.starts_with(['-', '+']));
        let digits = rest[sign_len..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign_len);
        if digits == 0 {
            return self.err("expected integer exponent");
        }
        self.pos += sign_len + digits;
        rest[..sign_len + digits]
            .parse()
            .map_err(|_| PresentationError::Syntax { pos: start, message: "exponent out of range".into() })
    }

    fn resolve(&self, pos: usize, name: &str) -> Result<Word, PresentationError> {
        if let Some(g) = self.gens.iter().position(|g| g.as_str() == name) {
            return Ok(Word(vec![Letter::pos(g)]));
        }
        // Juxtaposed single-character generators, e.g. `abab`.
        let split: Option<Vec<Letter>> = name
            .char_indices()
            .map(|(k, _)| self.gens.iter().position(|g| g.as_str() == &name[k..k + 1]).map(Letter::pos))
            .collect();
        split.map(Word).ok_or_else(|| PresentationError::UndeclaredGenerator { name: name.to_string(), pos })
    }

    fn factor(&mut self) -> Result<Word, PresentationError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            _ => {
                let (pos, name) = self.ident()?;
                self.resolve(pos, name)
            }
        }
    }

    fn term(&mut self) -> Result<Word, PresentationError> {
        let base = self.factor()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.signed_int()?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn word(&mut self) -> Result<Word, PresentationError> {
        let mut w = self.term()?;
        while matches!(self.peek(), Some(c) if c == '(' || c == '1' || c.is_ascii_alphabetic()) {
            w = w.concat(&self.term()?);
        }
        Ok(w)
    }

    fn presentation(&mut self) -> Result<Presentation, PresentationError> {
        self.expect('<')?;
        loop {
            let (_, name) = self.ident()?;
            let g = Generator::new(name)?;
            if self.gens.contains(&g) {
                return Err(PresentationError::DuplicateGenerator(name.to_string()));
            }
            self.gens.push(g);
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect('|')?;
        let mut rels = Vec::new();
        if self.peek() != Some('>') {
            loop {
                rels.push(self.word()?);
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect('>')?;
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Presentation::new(std::mem::take(&mut self.gens), rels)
    }
}

/// Parses `< a, b | a^2, (a b)^3 >`. Exponents expand into repeated
/// letters, negative exponents into inverse letters, and `1` denotes the
/// empty word. An identifier that is not a declared generator is read as
/// a juxtaposition of single-character generators when that is possible.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    Parser { src: text, pos: 0, gens: Vec::new() }.presentation()
}

/// One reason a presentation fails to be reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TrivialGenerator {
        generator: String,
    },
    /// `r[start,end]` is trivial in the group for a pair other than the full word.
    TrivialSubword {
        relator: usize,
        start: usize,
        end: usize,
    },
    NotFreelyReduced {
        relator: usize,
    },
    NotCyclicallyReduced {
        relator: usize,
    },
    TooShort {
        relator: usize,
        length: usize,
    },
}

/// A word whose triviality the oracle could not decide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UndecidedQuery {
    pub word: String,
    /// `None` for a generator query, else `(relator, start, end)`.
    pub location: Option<(usize, usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReducedStatus {
    Reduced,
    NotReduced,
    /// No violation found, but some query came back unknown.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedReport {
    pub status: ReducedStatus,
    pub oracle: String,
    pub violations: Vec<Violation>,
    pub undecided: Vec<UndecidedQuery>,
    /// Names of the checks run, in order.
    pub checks: Vec<&'static str>,
}

/// Checks every condition of a reduced presentation: each generator is
/// nontrivial, each relator is cyclically reduced of length at least 2, and
/// no subword `r[i,j]` is trivial except the whole relator.
pub fn is_reduced(p: &Presentation, oracle: &dyn GroupOracle) -> ReducedReport {
    let mut violations = Vec::new();
    let mut undecided = Vec::new();
    for (g, name) in p.generators.iter().enumerate() {
        let w = Word(vec![Letter::pos(g)]);
        match oracle.triviality(&w) {
            Triviality::Trivial => violations.push(Violation::TrivialGenerator { generator: name.0.clone() }),
            Triviality::Unknown => undecided.push(UndecidedQuery { word: p.format_word(&w), location: None }),
            Triviality::Nontrivial => {}
        }
    }
    for (k, r) in p.relators.iter().enumerate() {
        if !r.is_freely_reduced() {
            violations.push(Violation::NotFreelyReduced { relator: k });
        } else if !r.is_cyclically_reduced() {
            violations.push(Violation::NotCyclicallyReduced { relator: k });
        }
        if r.len() < 2 {
            violations.push(Violation::TooShort { relator: k, length: r.len() });
        }
        let len = r.len();
        for i in 1..=len {
            for j in i..=len {
                if (i, j) == (1, len) {
                    continue;
                }
                let w = Word(r.0[i - 1..j].to_vec());
                match oracle.triviality(&w) {
                    Triviality::Trivial => violations.push(Violation::TrivialSubword { relator: k, start: i, end: j }),
                    Triviality::Unknown => {
                        undecided.push(UndecidedQuery { word: p.format_word(&w), location: Some((k, i, j)) })
                    }
                    Triviality::Nontrivial => {}
                }
            }
        }
    }
    let status = if !violations.is_empty() {
        ReducedStatus::NotReduced
    } else if !undecided.is_empty() {
        ReducedStatus::Unverified
    } else {
        ReducedStatus::Reduced
    };
    ReducedReport {
        status,
        oracle: oracle.name().to_string(),
        violations,
        undecided,
        checks: vec![
            "generators_nontrivial",
            "relators_cyclically_reduced",
            "relator_length_at_least_2",
            "proper_subwords_nontrivial",
        ],
    }
}

/// A presentation that passed [`is_reduced`] with no violations and no
/// undecided queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPresentation {
    presentation: Presentation,
    certificate: ReducedReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("presentation is not reduced: {0:?}")]
    NotReduced(Vec<Violation>),
    #[error("oracle could not decide {} quer(ies), first: {}", .0.len(), .0[0].word)]
    OracleInconclusive(Vec<UndecidedQuery>),
    #[error("reduction did not converge within {0} steps")]
    StepBudgetExceeded(usize),
    #[error("every generator is trivial; the trivial group has no reduced presentation with nonempty S")]
    TrivialGroup,
}

impl ReducedPresentation {
    pub fn certify(p: Presentation, oracle: &dyn GroupOracle) -> Result<Self, ReduceError> {
        let report = is_reduced(&p, oracle);
        match report.status {
            ReducedStatus::Reduced => Ok(ReducedPresentation { presentation: p, certificate: report }),
            ReducedStatus::NotReduced => Err(ReduceError::NotReduced(report.violations)),
            ReducedStatus::Unverified => Err(ReduceError::OracleInconclusive(report.undecided)),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn certificate(&self) -> &ReducedReport {
        &self.certificate
    }
}

impl std::ops::Deref for ReducedPresentation {
    type Target = Presentation;
    fn deref(&self) -> &Presentation {
        &self.presentation
    }
}

pub const DEFAULT_REDUCE_STEPS: usize = 1000;

fn decide(oracle: &dyn GroupOracle, p: &[Generator], w: &Word) -> Result<bool, ReduceError> {
    match oracle.triviality(w) {
        Triviality::Trivial => Ok(true),
        Triviality::Nontrivial => Ok(false),
        Triviality::Unknown => {
            Err(ReduceError::OracleInconclusive(vec![UndecidedQuery { word: format_word(p, w), location: None }]))
        }
    }
}

/// Rewrites `p` until it is reduced. Each step is one of: dropping a
/// trivial generator, normalizing relators (cyclic reduction, removing
/// empty and duplicate relators), or splitting a relator `r` at its
/// leftmost trivial proper subword `r[n,m]` into `r[n,m]` and
/// `r[1..n-1] r[m+1..L]`.
///
/// The oracle must describe the group presented by `p`; every step
/// preserves that group.
pub fn reduce(
    p: &Presentation,
    oracle: &dyn GroupOracle,
    max_steps: usize,
) -> Result<ReducedPresentation, ReduceError> {
    // Generator indices refer to the original presentation throughout, so the
    // oracle can keep answering queries.
    let mut alive: Vec<bool> = vec![true; p.num_generators()];
    let mut rels: Vec<Word> = p.relators.clone();
    let mut steps = 0;
    loop {
        if steps > max_steps {
            return Err(ReduceError::StepBudgetExceeded(max_steps));
        }
        // Trivial generators.
        let mut dropped = false;
        for (g, live) in alive.iter_mut().enumerate() {
            if *live && decide(oracle, &p.generators, &Word(vec![Letter::pos(g)]))? {
                *live = false;
                for r in &mut rels {
                    r.0.retain(|l| l.generator != g);
                }
                dropped = true;
                steps += 1;
                break;
            }
        }
        if dropped {
            continue;
        }
        if !alive.iter().any(|&a| a) {
            return Err(ReduceError::TrivialGroup);
        }
        // Normalize.
        let mut seen = HashSet::new();
        let normalized: Vec<Word> = rels
            .iter()
            .map(|r| r.cyclic_reduce())
            .filter(|r| !r.is_empty())
            .filter(|r| seen.insert(r.clone()))
            .collect();
        if normalized != rels {
            rels = normalized;
            steps += 1;
            continue;
        }
        // Leftmost split.
        let mut split = None;
        'search: for (k, r) in rels.iter().enumerate() {
            let len = r.len();
            for n in 1..=len {
                for m in n..=len {
                    if (n, m) == (1, len) {
                        continue;
                    }
                    if decide(oracle, &p.generators, &Word(r.0[n - 1..m].to_vec()))? {
                        split = Some((k, n, m));
                        break 'search;
                    }
                }
            }
        }
        if let Some((k, n, m)) = split {
            let r = rels.remove(k);
            let inner = Word(r.0[n - 1..m].to_vec());
            let outer = Word(r.0[..n - 1].iter().chain(&r.0[m..]).copied().collect());
            rels.insert(k, outer);
            rels.insert(k, inner);
            steps += 1;
            continue;
        }
        break;
    }
    // Renumber surviving generators.
    let map: Vec<Option<usize>> = alive
        .iter()
        .scan(0, |next, &a| {
            Some(if a {
                *next += 1;
                Some(*next - 1)
            } else {
                None
            })
        })
        .collect();
    let gens: Vec<Generator> = p.generators.iter().zip(&alive).filter(|(_, a)| **a).map(|(g, _)| g.clone()).collect();
    let rels: Vec<Word> = rels
        .into_iter()
        .map(|r| r.0.into_iter().map(|l| Letter { generator: map[l.generator].unwrap(), ..l }).collect())
        .collect();
    let reduced = Presentation::new(gens, rels).map_err(|_| ReduceError::TrivialGroup)?;
    if alive.iter().all(|&a| a) {
        ReducedPresentation::certify(reduced, oracle)
    } else {
        // The oracle speaks the original generator numbering; re-certify
        // through a view that maps back.
        let back: Vec<usize> = alive.iter().enumerate().filter(|(_, a)| **a).map(|(g, _)| g).collect();
        let view = RenumberedOracle { inner: oracle, back };
        ReducedPresentation::certify(reduced, &view)
    }
}

struct RenumberedOracle<'a> {
    inner: &'a dyn GroupOracle,
    back: Vec<usize>,
}

impl GroupOracle for RenumberedOracle<'_> {
    fn triviality(&self, w: &Word) -> Triviality {
        let w: Word = w.0.iter().map(|l| Letter { generator: self.back[l.generator], ..*l }).collect();
        self.inner.triviality(&w)
    }

    fn name(&self) -> &str {
        self.inner.name()
    }
}
