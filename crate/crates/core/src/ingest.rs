//! Hodge-number list files.
//!
//! One record per line, two (threefold) or three (fourfold) non-negative
//! integers separated by commas and/or whitespace. `#` starts a comment;
//! blank lines are skipped. Duplicates are kept in the parsed record list and
//! counted separately.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::cy::{HodgeCY3, HodgeCY4};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}:{line}: malformed field {field:?}")]
    MalformedLine { path: String, line: usize, field: String },
    #[error("{path}:{line}: expected {expected} values, found {found}")]
    WrongArity { path: String, line: usize, expected: usize, found: usize },
    #[error("{path}:{line}: negative Hodge number {value}")]
    NegativeHodge { path: String, line: usize, value: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HodgeKind {
    Cy3,
    Cy4,
}

impl HodgeKind {
    pub fn arity(self) -> usize {
        match self {
            HodgeKind::Cy3 => 2,
            HodgeKind::Cy4 => 3,
        }
    }
}

impl fmt::Display for HodgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HodgeKind::Cy3 => "cy3",
            HodgeKind::Cy4 => "cy4",
        })
    }
}

impl FromStr for HodgeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cy3" => Ok(HodgeKind::Cy3),
            "cy4" => Ok(HodgeKind::Cy4),
            _ => Err(format!("unknown Hodge kind {s:?}")),
        }
    }
}

/// A Hodge record that can be read from and written to a list file.
pub trait HodgeRecord: Copy + Eq + Hash + fmt::Debug {
    const KIND: HodgeKind;

    fn from_fields(fields: &[u64]) -> Self;
    fn fields(&self) -> Vec<u64>;
}

impl HodgeRecord for HodgeCY3 {
    const KIND: HodgeKind = HodgeKind::Cy3;

    fn from_fields(f: &[u64]) -> Self {
        HodgeCY3::new(f[0], f[1])
    }

    fn fields(&self) -> Vec<u64> {
        vec![self.h11, self.h21]
    }
}

impl HodgeRecord for HodgeCY4 {
    const KIND: HodgeKind = HodgeKind::Cy4;

    fn from_fields(f: &[u64]) -> Self {
        HodgeCY4::new(f[0], f[1], f[2])
    }

    fn fields(&self) -> Vec<u64> {
        vec![self.h11, self.h21, self.h31]
    }
}

/// Parsed contents of one list file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeFile<R> {
    pub path: PathBuf,
    /// All records in file order, duplicates included.
    pub records: Vec<R>,
    pub raw_count: usize,
    pub distinct_count: usize,
}

impl<R: HodgeRecord> HodgeFile<R> {
    pub fn kind(&self) -> HodgeKind {
        R::KIND
    }

    pub fn distinct(&self) -> Vec<R> {
        dedup(&self.records)
    }
}

pub fn parse<R: HodgeRecord>(path: &Path) -> Result<HodgeFile<R>, IngestError> {
    let text = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text, path)
}

/// Parses file contents; `path` is only used for diagnostics and the result.
pub fn parse_str<R: HodgeRecord>(text: &str, path: &Path) -> Result<HodgeFile<R>, IngestError> {
    let name = path.display().to_string();
    let arity = R::KIND.arity();
    let mut records = Vec::new();
    let mut fields = Vec::with_capacity(arity);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        fields.clear();
        let tokens: Vec<&str> = content
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        for tok in &tokens {
            match tok.parse::<u64>() {
                Ok(v) => fields.push(v),
                Err(_) if tok.starts_with('-') && tok[1..].bytes().all(|b| b.is_ascii_digit()) && tok.len() > 1 => {
                    return Err(IngestError::NegativeHodge { path: name, line, value: tok.to_string() });
                }
                Err(_) => {
                    return Err(IngestError::MalformedLine { path: name, line, field: tok.to_string() });
                }
            }
        }
        if fields.len() != arity {
            return Err(IngestError::WrongArity { path: name, line, expected: arity, found: fields.len() });
        }
        records.push(R::from_fields(&fields));
    }
    let distinct_count = records.iter().collect::<HashSet<_>>().len();
    Ok(HodgeFile { path: path.to_path_buf(), raw_count: records.len(), distinct_count, records })
}

/// Distinct records, first occurrences in input order.
pub fn dedup<R: Copy + Eq + Hash>(records: &[R]) -> Vec<R> {
    let mut seen = HashSet::with_capacity(records.len());
    records.iter().copied().filter(|r| seen.insert(*r)).collect()
}

/// Writes records in the list format (comma separated, one per line).
pub fn write<R: HodgeRecord, W: Write>(records: &[R], mut out: W) -> std::io::Result<()> {
    writeln!(out, "# {} Hodge numbers: {}", R::KIND, match R::KIND {
        HodgeKind::Cy3 => "h11,h21",
        HodgeKind::Cy4 => "h11,h21,h31",
    })?;
    for r in records {
        let f = r.fields();
        let line: Vec<String> = f.iter().map(u64::to_string).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}
