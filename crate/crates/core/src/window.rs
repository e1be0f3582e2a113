//! Two-sided finite blocks of a symbolic sequence.
//!
//! A window holds the symbols at positions `-W..=W` together with a
//! per-position certification flag. Uncertified positions arise when a
//! point could not be classified against the partition within its error
//! radius; repetition statistics treat them as wildcards that match
//! nothing, so every reported repetition length is a certified lower bound.

use serde::de::Error as _;
use serde::{Deserialize, Serialize};

/// Symbols are small indices into the window's alphabet of label names.
pub type SymbolId = u32;

#[derive(Debug, thiserror::Error)]
pub enum WindowError {
    #[error("window arrays must have odd length 2W+1, got {0}")]
    EvenLength(usize),
    #[error("symbols and certified arrays differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// A block `omega_{-W}..omega_{W}` with certification flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicWindow {
    half_width: usize,
    /// Index `i` holds the symbol at position `i - half_width`. The value at
    /// an uncertified position is arbitrary and must never be read.
    symbols: Vec<SymbolId>,
    certified: Vec<bool>,
    alphabet: Vec<String>,
}

impl SymbolicWindow {
    pub fn new(
        symbols: Vec<SymbolId>,
        certified: Vec<bool>,
        alphabet: Vec<String>,
    ) -> Result<Self, WindowError> {
        if symbols.len() != certified.len() {
            return Err(WindowError::LengthMismatch(symbols.len(), certified.len()));
        }
        if symbols.len().is_multiple_of(2) {
            return Err(WindowError::EvenLength(symbols.len()));
        }
        Ok(SymbolicWindow { half_width: (symbols.len() - 1) / 2, symbols, certified, alphabet })
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    fn index(&self, n: i64) -> usize {
        let i = n + self.half_width as i64;
        debug_assert!(i >= 0 && i <= 2 * self.half_width as i64, "position {n} outside window");
        i as usize
    }

    pub fn in_range(&self, n: i64) -> bool {
        n.unsigned_abs() <= self.half_width as u64
    }

    /// Symbol at position `n`, or `None` when the position is uncertified.
    pub fn symbol(&self, n: i64) -> Option<SymbolId> {
        let i = self.index(n);
        self.certified[i].then(|| self.symbols[i])
    }

    pub fn is_certified(&self, n: i64) -> bool {
        self.certified[self.index(n)]
    }

    /// Certified equality: uncertified positions match nothing.
    pub fn matches(&self, a: i64, b: i64) -> bool {
        match (self.symbol(a), self.symbol(b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    pub fn uncertified_count(&self) -> usize {
        self.certified.iter().filter(|c| !**c).count()
    }

    /// Builds a window from label characters, fully certified. Test helper
    /// and convenience for hand-written sequences.
    pub fn from_chars(s: &str) -> Result<Self, WindowError> {
        let mut alphabet: Vec<String> = Vec::new();
        let mut symbols = Vec::new();
        for ch in s.chars() {
            let name = ch.to_string();
            let id = match alphabet.iter().position(|a| *a == name) {
                Some(i) => i,
                None => {
                    alphabet.push(name);
                    alphabet.len() - 1
                }
            };
            symbols.push(id as SymbolId);
        }
        let n = symbols.len();
        SymbolicWindow::new(symbols, vec![true; n], alphabet)
    }
}

/// Wire shape: `{"symbols": [...], "certified": [...]}` where an
/// uncertified position serializes its symbol as `null`.
#[derive(Serialize, Deserialize)]
struct WindowWire {
    symbols: Vec<Option<String>>,
    certified: Vec<bool>,
}

impl Serialize for SymbolicWindow {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let symbols = self
            .symbols
            .iter()
            .zip(&self.certified)
            .map(|(s, c)| c.then(|| self.alphabet[*s as usize].clone()))
            .collect();
        WindowWire { symbols, certified: self.certified.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SymbolicWindow {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = WindowWire::deserialize(de)?;
        if wire.symbols.len() != wire.certified.len() {
            return Err(D::Error::custom(WindowError::LengthMismatch(
                wire.symbols.len(),
                wire.certified.len(),
            )));
        }
        let mut alphabet: Vec<String> = Vec::new();
        let mut symbols = Vec::with_capacity(wire.symbols.len());
        for (name, certified) in wire.symbols.iter().zip(&wire.certified) {
            match name {
                Some(name) if *certified => {
                    let id = match alphabet.iter().position(|a| a == name) {
                        Some(i) => i,
                        None => {
                            alphabet.push(name.clone());
                            alphabet.len() - 1
                        }
                    };
                    symbols.push(id as SymbolId);
                }
                Some(_) => {
                    return Err(D::Error::custom("symbol present at uncertified position"));
                }
                None if *certified => {
                    return Err(D::Error::custom("null symbol at certified position"));
                }
                None => symbols.push(0),
            }
        }
        SymbolicWindow::new(symbols, wire.certified, alphabet).map_err(D::Error::custom)
    }
}
