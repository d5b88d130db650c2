//! Finite languages with a total meaning table.
//!
//! Strings are sequences of symbols, never joined text, so multi-character
//! symbols cannot collide. Synonymy is substitutional: equal meaning, and
//! every occurrence context of one admits the other with the same meaning,
//! in both directions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Separator used wherever a string must be flattened into one label.
pub const SEPARATOR: char = '\u{241F}';

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LangError {
    #[error("spec document: {0}")]
    Parse(String),
    #[error("string {string} uses symbol {symbol:?}, which is not in the alphabet")]
    UnknownSymbol { symbol: String, string: String },
    #[error("string {0} has no meaning")]
    MissingMeaning(String),
    #[error("\"$\" is reserved and cannot be used as {0}")]
    ReservedDollar(&'static str),
    #[error("symbols cannot contain the separator U+241F: {0:?}")]
    ReservedSeparator(String),
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("symbol {0:?} is listed twice")]
    DuplicateSymbol(String),
    #[error("string {0} is listed twice")]
    DuplicateString(String),
    #[error("string {0} has more than one meaning")]
    ConflictingMeaning(String),
    #[error("meaning given for {0}, which is not in the language")]
    MeaningOutsideLanguage(String),
    #[error("string {0} is not in the language")]
    NotInLanguage(String),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(String);

impl Symbol {
    pub fn new(token: impl Into<String>) -> Result<Self, LangError> {
        let token = token.into();
        if token.is_empty() {
            return Err(LangError::Empty("symbol"));
        }
        if token == "$" {
            return Err(LangError::ReservedDollar("a symbol"));
        }
        if token.contains(SEPARATOR) {
            return Err(LangError::ReservedSeparator(token));
        }
        Ok(Symbol(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A nonempty string of symbols. Ordered lexicographically by symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Str(Vec<Symbol>);

impl Str {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self, LangError> {
        if symbols.is_empty() {
            return Err(LangError::Empty("string"));
        }
        Ok(Str(symbols))
    }

    /// Parses `"c,a"`-style comma-separated tokens.
    pub fn parse(text: &str) -> Result<Self, LangError> {
        Str::new(text.split(',').map(Symbol::new).collect::<Result<_, _>>()?)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &Str) -> Str {
        Str(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn map_symbols(&self, f: impl Fn(&Symbol) -> Symbol) -> Str {
        Str(self.0.iter().map(f).collect())
    }

    /// Symbols joined by U+241F; injective because symbols never contain it.
    pub fn key(&self) -> String {
        join_symbols(&self.0)
    }

    pub fn from_key(key: &str) -> Result<Self, LangError> {
        Str::new(key.split(SEPARATOR).map(Symbol::new).collect::<Result<_, _>>()?)
    }
}

pub(crate) fn join_symbols(symbols: &[Symbol]) -> String {
    let mut out = String::new();
    for (i, s) in symbols.iter().enumerate() {
        if i > 0 {
            out.push(SEPARATOR);
        }
        out.push_str(s.as_str());
    }
    out
}

impl fmt::Display for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeaningLabel(String);

impl MeaningLabel {
    pub fn new(label: impl Into<String>) -> Result<Self, LangError> {
        let label = label.into();
        if label.is_empty() {
            return Err(LangError::Empty("meaning label"));
        }
        if label == "$" {
            return Err(LangError::ReservedDollar("a meaning"));
        }
        Ok(MeaningLabel(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MeaningLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An occurrence context `(x, y)` of a string `a`, meaning `x·a·y ∈ L`.
/// Either side may be empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context {
    pub left: Vec<Symbol>,
    pub right: Vec<Symbol>,
}

impl Context {
    pub fn wrap(&self, a: &Str) -> Str {
        Str(self
            .left
            .iter()
            .chain(a.symbols())
            .chain(&self.right)
            .cloned()
            .collect())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &[Symbol]| {
            if s.is_empty() {
                "ε".to_string()
            } else {
                s.iter().map(Symbol::as_str).collect::<Vec<_>>().join(",")
            }
        };
        write!(f, "({}, {})", side(&self.left), side(&self.right))
    }
}

/// Alphabet, language and meaning table. The language need not be closed
/// under concatenation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguageSpec {
    alphabet: BTreeSet<Symbol>,
    meanings: BTreeMap<Str, MeaningLabel>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    alphabet: Vec<String>,
    language: Vec<Vec<String>>,
    meanings: Vec<MeaningDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeaningDoc {
    string: Vec<String>,
    value: String,
}

impl LanguageSpec {
    /// Validates and builds a spec from raw tokens.
    pub fn from_parts(
        alphabet: &[&str],
        language: &[&[&str]],
        meanings: &[(&[&str], &str)],
    ) -> Result<Self, LangError> {
        let doc = SpecDoc {
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            language: language
                .iter()
                .map(|w| w.iter().map(|s| s.to_string()).collect())
                .collect(),
            meanings: meanings
                .iter()
                .map(|(w, v)| MeaningDoc {
                    string: w.iter().map(|s| s.to_string()).collect(),
                    value: v.to_string(),
                })
                .collect(),
        };
        Self::from_doc(doc)
    }

    fn from_doc(doc: SpecDoc) -> Result<Self, LangError> {
        let mut alphabet = BTreeSet::new();
        for token in doc.alphabet {
            let sym = Symbol::new(token.clone())?;
            if !alphabet.insert(sym) {
                return Err(LangError::DuplicateSymbol(token));
            }
        }
        let to_str = |tokens: &[String]| -> Result<Str, LangError> {
            let display = tokens.join(",");
            let mut syms = Vec::with_capacity(tokens.len());
            for t in tokens {
                let sym = Symbol::new(t.clone())?;
                if !alphabet.contains(&sym) {
                    return Err(LangError::UnknownSymbol {
                        symbol: t.clone(),
                        string: display,
                    });
                }
                syms.push(sym);
            }
            Str::new(syms)
        };

        let mut language = BTreeSet::new();
        for w in &doc.language {
            let s = to_str(w)?;
            if !language.insert(s.clone()) {
                return Err(LangError::DuplicateString(s.to_string()));
            }
        }
        let mut meanings = BTreeMap::new();
        for entry in &doc.meanings {
            let s = to_str(&entry.string)?;
            if !language.contains(&s) {
                return Err(LangError::MeaningOutsideLanguage(s.to_string()));
            }
            let value = MeaningLabel::new(entry.value.clone())?;
            if let Some(prev) = meanings.insert(s.clone(), value.clone()) {
                if prev != value {
                    return Err(LangError::ConflictingMeaning(s.to_string()));
                }
            }
        }
        if let Some(missing) = language.iter().find(|s| !meanings.contains_key(*s)) {
            return Err(LangError::MissingMeaning(missing.to_string()));
        }
        Ok(LanguageSpec { alphabet, meanings })
    }

    pub fn parse_spec(text: &str) -> Result<Self, LangError> {
        let doc: SpecDoc = serde_json::from_str(text).map_err(|e| LangError::Parse(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tokens = |s: &Str| s.symbols().iter().map(|x| x.as_str().to_string()).collect();
        let doc = SpecDoc {
            alphabet: self.alphabet.iter().map(|s| s.as_str().to_string()).collect(),
            language: self.meanings.keys().map(tokens).collect(),
            meanings: self
                .meanings
                .iter()
                .map(|(s, m)| MeaningDoc {
                    string: tokens(s),
                    value: m.as_str().to_string(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("spec documents always serialize")
    }

    pub fn from_json_value(value: serde_json::Value) -> Result<Self, LangError> {
        let doc: SpecDoc = serde_json::from_value(value).map_err(|e| LangError::Parse(e.to_string()))?;
        Self::from_doc(doc)
    }

    pub fn alphabet(&self) -> impl Iterator<Item = &Symbol> {
        self.alphabet.iter()
    }

    pub fn has_symbol(&self, s: &Symbol) -> bool {
        self.alphabet.contains(s)
    }

    /// Language strings in lexicographic order.
    pub fn language(&self) -> impl Iterator<Item = &Str> {
        self.meanings.keys()
    }

    pub fn len(&self) -> usize {
        self.meanings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.meanings.is_empty()
    }

    pub fn contains(&self, s: &Str) -> bool {
        self.meanings.contains_key(s)
    }

    fn contains_seq(&self, s: &[Symbol]) -> bool {
        // BTreeMap<Str, _> cannot be probed with a slice, so build the key.
        !s.is_empty() && self.meanings.contains_key(&Str(s.to_vec()))
    }

    pub fn meaning(&self, s: &Str) -> Result<&MeaningLabel, LangError> {
        self.meanings
            .get(s)
            .ok_or_else(|| LangError::NotInLanguage(s.to_string()))
    }

    pub fn meanings(&self) -> &BTreeMap<Str, MeaningLabel> {
        &self.meanings
    }

    fn require(&self, s: &Str) -> Result<(), LangError> {
        self.meaning(s).map(|_| ())
    }

    /// Splits `x = s·t` with both halves in the language, by split position.
    pub fn decompositions(&self, x: &Str) -> Result<Vec<(Str, Str)>, LangError> {
        self.require(x)?;
        let syms = x.symbols();
        Ok((1..syms.len())
            .filter(|&k| self.contains_seq(&syms[..k]) && self.contains_seq(&syms[k..]))
            .map(|k| (Str(syms[..k].to_vec()), Str(syms[k..].to_vec())))
            .collect())
    }

    /// All `t ∈ L` with `s·t ∈ L`.
    pub fn right_extensions(&self, s: &Str) -> Result<Vec<Str>, LangError> {
        self.require(s)?;
        Ok(self
            .language()
            .filter(|t| self.contains(&s.concat(t)))
            .cloned()
            .collect())
    }

    /// One context per contiguous occurrence of `a` in a language string,
    /// overlaps included, in language order then position order.
    pub fn contexts(&self, a: &Str) -> Result<Vec<Context>, LangError> {
        self.require(a)?;
        let needle = a.symbols();
        let mut out = Vec::new();
        for w in self.language() {
            let hay = w.symbols();
            if hay.len() < needle.len() {
                continue;
            }
            for i in 0..=hay.len() - needle.len() {
                if &hay[i..i + needle.len()] == needle {
                    out.push(Context {
                        left: hay[..i].to_vec(),
                        right: hay[i + needle.len()..].to_vec(),
                    });
                }
            }
        }
        Ok(out)
    }

    /// Substitutional synonymy, checked in both directions.
    pub fn synonyms(&self, a: &Str, b: &Str) -> Result<bool, LangError> {
        if self.meaning(a)? != self.meaning(b)? {
            return Ok(false);
        }
        Ok(self.substitutable(a, b)? && self.substitutable(b, a)?)
    }

    fn substitutable(&self, from: &Str, to: &Str) -> Result<bool, LangError> {
        for ctx in self.contexts(from)? {
            let before = &self.meanings[&ctx.wrap(from)];
            match self.meanings.get(&ctx.wrap(to)) {
                Some(after) if after == before => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Unordered pairs of distinct synonyms, in language order.
    pub fn synonym_pairs(&self) -> Vec<(Str, Str)> {
        let strings: Vec<&Str> = self.language().collect();
        let mut out = Vec::new();
        for (i, a) in strings.iter().enumerate() {
            for b in &strings[i + 1..] {
                if self.synonyms(a, b).expect("both in language") {
                    out.push(((*a).clone(), (*b).clone()));
                }
            }
        }
        out
    }

    /// This language with symbols `a` and `b` exchanged everywhere.
    pub fn swap_symbols(&self, a: &Symbol, b: &Symbol) -> LanguageSpec {
        let swap = |s: &Symbol| {
            if s == a {
                b.clone()
            } else if s == b {
                a.clone()
            } else {
                s.clone()
            }
        };
        LanguageSpec {
            alphabet: self.alphabet.iter().map(swap).collect(),
            meanings: self
                .meanings
                .iter()
                .map(|(s, m)| (s.map_symbols(swap), m.clone()))
                .collect(),
        }
    }
}

/// Size limits for [`random_spec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecBounds {
    pub max_alphabet: usize,
    pub max_strings: usize,
    pub max_meanings: usize,
    pub max_len: usize,
}

impl SpecBounds {
    pub const fn new(max_alphabet: usize, max_strings: usize, max_meanings: usize, max_len: usize) -> Self {
        SpecBounds {
            max_alphabet,
            max_strings,
            max_meanings,
            max_len,
        }
    }
}

/// Deterministic random spec. About half the time two symbols are made
/// interchangeable (the language and table are closed under swapping them)
/// so that synonymy is exercised non-vacuously.
pub fn random_spec(seed: u64, bounds: SpecBounds) -> LanguageSpec {
    assert!(
        bounds.max_alphabet > 0 && bounds.max_strings > 0 && bounds.max_meanings > 0 && bounds.max_len > 0,
        "bounds must be positive"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_symbols = rng.gen_range(1..=bounds.max_alphabet);
    let alphabet: Vec<Symbol> = (0..n_symbols)
        .map(|i| Symbol(char::from(b'a' + (i % 26) as u8).to_string() + &"'".repeat(i / 26)))
        .collect();
    let labels: Vec<MeaningLabel> = (0..rng.gen_range(1..=bounds.max_meanings))
        .map(|i| MeaningLabel(format!("M{i}")))
        .collect();

    let swap = (n_symbols >= 2 && rng.gen_bool(0.5)).then(|| {
        let mut pick = alphabet.clone();
        pick.shuffle(&mut rng);
        (pick[0].clone(), pick[1].clone())
    });
    let swapped = |s: &Str| match &swap {
        Some((a, b)) => s.map_symbols(|x| {
            if x == a {
                b.clone()
            } else if x == b {
                a.clone()
            } else {
                x.clone()
            }
        }),
        None => s.clone(),
    };

    let mut meanings: BTreeMap<Str, MeaningLabel> = BTreeMap::new();
    let target = rng.gen_range(1..=bounds.max_strings);
    for _ in 0..target * 4 {
        if meanings.len() >= target {
            break;
        }
        let len = rng.gen_range(1..=bounds.max_len);
        let s = Str((0..len)
            .map(|_| alphabet[rng.gen_range(0..n_symbols)].clone())
            .collect());
        if meanings.contains_key(&s) {
            continue;
        }
        let image = swapped(&s);
        let grows = if image == s { 1 } else { 2 };
        if meanings.len() + grows > bounds.max_strings {
            continue;
        }
        let m = labels[rng.gen_range(0..labels.len())].clone();
        meanings.insert(image, m.clone());
        meanings.insert(s, m);
    }
    if meanings.is_empty() {
        meanings.insert(Str(vec![alphabet[0].clone()]), labels[0].clone());
    }
    LanguageSpec {
        alphabet: alphabet.into_iter().collect(),
        meanings,
    }
}
