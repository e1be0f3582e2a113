//! Flat `key = value` experiment configs with typed accessors.
//!
//! Lines are `key = value`, `#` starts a comment, keys may not repeat, and
//! every key must be consumed by the experiment that loads the file, so a
//! typo fails fast instead of silently running with a default.

use crate::AppError;
use num_bigint::BigInt;
use pinrep_core::rat::{parse_rat, Rat};
use pinrep_core::torus::TorusPartition;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Default)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
    consumed: BTreeSet<String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, AppError> {
        let mut values = BTreeMap::new();
        for (lineno, raw_line) in text.lines().enumerate() {
            let line = match raw_line.split_once('#') {
                Some((head, _)) => head,
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                AppError::config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if values.insert(key.clone(), value).is_some() {
                return Err(AppError::config(format!("duplicate key {key:?}")));
            }
        }
        Ok(RawConfig { values, consumed: BTreeSet::new() })
    }

    pub fn load(path: &std::path::Path) -> Result<Self, AppError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Sorted `key = value` echo for provenance output.
    pub fn echo(&self) -> BTreeMap<String, String> {
        self.values.clone()
    }

    fn take(&mut self, key: &str) -> Option<String> {
        let v = self.values.get(key).cloned();
        if v.is_some() {
            self.consumed.insert(key.to_string());
        }
        v
    }

    pub fn require(&mut self, key: &str) -> Result<String, AppError> {
        self.take(key).ok_or_else(|| AppError::config(format!("missing key {key:?}")))
    }

    pub fn optional(&mut self, key: &str) -> Option<String> {
        self.take(key)
    }

    pub fn require_u64(&mut self, key: &str) -> Result<u64, AppError> {
        let v = self.require(key)?;
        v.parse().map_err(|_| AppError::config(format!("{key}: expected integer, got {v:?}")))
    }

    pub fn optional_u64(&mut self, key: &str) -> Result<Option<u64>, AppError> {
        match self.optional(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| AppError::config(format!("{key}: expected integer, got {v:?}"))),
        }
    }

    pub fn require_rat(&mut self, key: &str) -> Result<Rat, AppError> {
        let v = self.require(key)?;
        parse_rat(&v).map_err(|e| AppError::config(format!("{key}: {e}")))
    }

    pub fn optional_rat(&mut self, key: &str) -> Result<Option<Rat>, AppError> {
        match self.optional(key) {
            None => Ok(None),
            Some(v) => parse_rat(&v)
                .map(Some)
                .map_err(|e| AppError::config(format!("{key}: {e}"))),
        }
    }

    pub fn require_digits(&mut self, key: &str) -> Result<Vec<BigInt>, AppError> {
        let v = self.require(key)?;
        parse_digits(&v).map_err(|e| AppError::config(format!("{key}: {e}")))
    }

    pub fn require_partition(&mut self, key: &str) -> Result<TorusPartition, AppError> {
        let v = self.require(key)?;
        parse_partition(&v).map_err(|e| AppError::config(format!("{key}: {e}")))
    }

    /// Rejects any key that was never consumed.
    pub fn finish(self) -> Result<(), AppError> {
        let leftover: Vec<&String> =
            self.values.keys().filter(|k| !self.consumed.contains(*k)).collect();
        if leftover.is_empty() {
            Ok(())
        } else {
            Err(AppError::config(format!("unknown keys: {leftover:?}")))
        }
    }
}

/// Digit lists: comma separated positive integers, each optionally with a
/// repeat count, so `1^60` is sixty ones and `1,2^3,4` is `1,2,2,2,4`.
pub fn parse_digits(text: &str) -> Result<Vec<BigInt>, String> {
    let mut out = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err("empty digit entry".into());
        }
        let (digit, count) = match piece.split_once('^') {
            None => (piece, 1usize),
            Some((d, c)) => {
                (d.trim(), c.trim().parse::<usize>().map_err(|_| format!("bad repeat {c:?}"))?)
            }
        };
        let value: BigInt =
            digit.parse().map_err(|_| format!("bad digit {digit:?}"))?;
        if value < BigInt::from(1) {
            return Err(format!("digit {value} must be >= 1"));
        }
        for _ in 0..count {
            out.push(value.clone());
        }
    }
    if out.is_empty() {
        return Err("no digits".into());
    }
    Ok(out)
}

/// Partition literal: `cut:label` pairs, comma separated. The arcs run from
/// each cut to the next (cyclically), so `0:a,1/3:b,2/3:c` is the partition
/// into thirds.
pub fn parse_partition(text: &str) -> Result<TorusPartition, String> {
    let mut cuts = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        let (cut, label) =
            piece.split_once(':').ok_or_else(|| format!("expected cut:label, got {piece:?}"))?;
        let cut = parse_rat(cut.trim()).map_err(|e| e.to_string())?;
        cuts.push((cut, label.trim().to_string()));
    }
    TorusPartition::from_cuts(cuts).map_err(|e| e.to_string())
}

/// Comma separated rationals.
pub fn parse_rat_list(text: &str) -> Result<Vec<Rat>, String> {
    text.split(',')
        .map(|p| parse_rat(p.trim()).map_err(|e| e.to_string()))
        .collect()
}

/// Comma separated machine integers.
pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| e.to_string()))
        .collect()
}
