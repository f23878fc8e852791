//! Symbols, alphabets and the (possibly joined) domains built from them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single outcome token. Integers order numerically and sort before text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Symbol {
    Int(i64),
    Text(String),
}

impl Symbol {
    /// Reads a token, treating anything that parses as an integer as [`Symbol::Int`].
    pub fn parse(token: &str) -> Symbol {
        let token = token.trim();
        match token.parse::<i64>() {
            Ok(v) => Symbol::Int(v),
            Err(_) => Symbol::Text(token.to_string()),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Int(v) => write!(f, "{v}"),
            Symbol::Text(s) => f.write_str(s),
        }
    }
}

impl From<i64> for Symbol {
    fn from(v: i64) -> Self {
        Symbol::Int(v)
    }
}

impl From<i32> for Symbol {
    fn from(v: i32) -> Self {
        Symbol::Int(v as i64)
    }
}

impl From<&str> for Symbol {
    fn from(v: &str) -> Self {
        Symbol::Text(v.to_string())
    }
}

impl From<String> for Symbol {
    fn from(v: String) -> Self {
        Symbol::Text(v)
    }
}

/// Ordered set of distinct symbols; position in the list is the symbol's index.
#[derive(Debug, Clone)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    /// Keeps the given order. Fails on duplicates or an empty list.
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Format("alphabet must contain at least one symbol".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (k, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), k).is_some() {
                return Err(Error::Format(format!("duplicate symbol `{s}` in alphabet")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Canonical (sorted) order.
    pub fn sorted(mut symbols: Vec<Symbol>) -> Result<Self> {
        symbols.sort();
        Alphabet::new(symbols)
    }

    /// Integer symbols `0..n`.
    pub fn range(n: usize) -> Self {
        Alphabet::new((0..n as i64).map(Symbol::Int).collect()).expect("non-empty range")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, k: usize) -> &Symbol {
        &self.symbols[k]
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.index.get(s).copied()
    }
}

/// The outcome space of a set of variables: the Cartesian product of their
/// alphabets, indexed row-major with the first variable varying slowest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain {
    names: Vec<String>,
    alphabets: Vec<Alphabet>,
}

impl Domain {
    pub fn new(names: Vec<String>, alphabets: Vec<Alphabet>) -> Result<Self> {
        if names.is_empty() || names.len() != alphabets.len() {
            return Err(Error::Shape(format!(
                "domain needs one alphabet per variable ({} names, {} alphabets)",
                names.len(),
                alphabets.len()
            )));
        }
        Ok(Domain { names, alphabets })
    }

    pub fn single(name: impl Into<String>, alphabet: Alphabet) -> Self {
        Domain { names: vec![name.into()], alphabets: vec![alphabet] }
    }

    /// Concatenation; the left domain's variables vary slowest.
    pub fn join(&self, other: &Domain) -> Domain {
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut alphabets = self.alphabets.clone();
        alphabets.extend(other.alphabets.iter().cloned());
        Domain { names, alphabets }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn alphabets(&self) -> &[Alphabet] {
        &self.alphabets
    }

    pub fn len(&self) -> usize {
        self.alphabets.iter().map(Alphabet::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Same alphabets in the same order, regardless of variable names.
    pub fn same_shape(&self, other: &Domain) -> bool {
        self.alphabets == other.alphabets
    }

    pub fn tuple(&self, mut index: usize) -> Vec<&Symbol> {
        let mut out = vec![&self.alphabets[0].symbols[0]; self.alphabets.len()];
        for (k, a) in self.alphabets.iter().enumerate().rev() {
            out[k] = a.symbol(index % a.len());
            index /= a.len();
        }
        out
    }

    pub fn index_of(&self, tuple: &[Symbol]) -> Result<usize> {
        if tuple.len() != self.alphabets.len() {
            return Err(Error::Shape(format!(
                "expected a {}-tuple for {}, got {}",
                self.alphabets.len(),
                self.names.join("+"),
                tuple.len()
            )));
        }
        let mut idx = 0;
        for ((s, a), name) in tuple.iter().zip(&self.alphabets).zip(&self.names) {
            let k = a.index_of(s).ok_or_else(|| Error::Alphabet {
                variable: name.clone(),
                symbol: s.to_string(),
            })?;
            idx = idx * a.len() + k;
        }
        Ok(idx)
    }

    /// Human-readable outcome label, e.g. `1` or `(0,1)`.
    pub fn label(&self, index: usize) -> String {
        let t = self.tuple(index);
        if t.len() == 1 {
            t[0].to_string()
        } else {
            let parts: Vec<String> = t.iter().map(|s| s.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join("+"))
    }
}
