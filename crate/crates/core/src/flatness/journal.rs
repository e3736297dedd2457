//! Append-only JSON-lines height cache.
//!
//! Each line is one record `{"n", "factors", "degree", "height"}`. A line
//! cut short by an interrupted write is dropped (and truncated away) when the
//! file is reopened; any other unreadable line is skipped and counted.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intpoly::{deserialize_exact, serialize_exact};

#[derive(Debug, Error)]
pub enum JournalError {
    #[error("journal {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightRecord {
    pub n: u64,
    pub factors: Vec<u64>,
    pub degree: u64,
    #[serde(serialize_with = "serialize_exact", deserialize_with = "deserialize_exact")]
    pub height: BigInt,
    /// Set for inclusion-exclusion polynomials, whose `factors` are the
    /// parts rather than primes.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub pseudo: bool,
}

impl HeightRecord {
    fn key(&self) -> (bool, Vec<u64>) {
        let mut f = self.factors.clone();
        f.sort_unstable();
        (self.pseudo, f)
    }
}

/// Heights loaded from a journal, keyed on `(pseudo, sorted factors)`.
#[derive(Debug, Clone, Default)]
pub struct HeightCache {
    map: HashMap<(bool, Vec<u64>), BigInt>,
    pub skipped_lines: usize,
}

impl HeightCache {
    pub fn get(&self, pseudo: bool, sorted_factors: &[u64]) -> Option<&BigInt> {
        self.map.get(&(pseudo, sorted_factors.to_vec()))
    }

    pub fn insert(&mut self, record: &HeightRecord) {
        self.map.insert(record.key(), record.height.clone());
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Reads every complete record in `path`. Returns the cache and the byte
    /// length of the well-formed prefix ending in a newline.
    fn read(path: &Path) -> io::Result<(Self, u64)> {
        let mut cache = HeightCache::default();
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((cache, 0)),
            Err(e) => return Err(e),
        };
        let mut reader = BufReader::new(file);
        let mut line = String::new();
        let mut good_len = 0u64;
        loop {
            line.clear();
            let read = reader.read_line(&mut line)?;
            if read == 0 {
                break;
            }
            if !line.ends_with('\n') {
                // Torn final write: leave it out of the good prefix.
                break;
            }
            good_len += read as u64;
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            match serde_json::from_str::<HeightRecord>(text) {
                Ok(rec) => cache.insert(&rec),
                Err(_) => cache.skipped_lines += 1,
            }
        }
        Ok((cache, good_len))
    }

    pub fn load(path: &Path) -> Result<Self, JournalError> {
        Self::read(path).map(|(c, _)| c).map_err(|source| JournalError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// The single writer of a journal file.
pub struct Journal {
    path: PathBuf,
    out: BufWriter<File>,
}

impl Journal {
    /// Opens `path` for appending, creating it if needed, and returns the
    /// records already present.
    pub fn open(path: &Path) -> Result<(Self, HeightCache), JournalError> {
        let wrap = |source| JournalError::Io {
            path: path.to_path_buf(),
            source,
        };
        let (cache, good_len) = HeightCache::read(path).map_err(wrap)?;
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(wrap)?;
        if file.metadata().map_err(wrap)?.len() > good_len {
            file.set_len(good_len).map_err(wrap)?;
        }
        Ok((
            Journal {
                path: path.to_path_buf(),
                out: BufWriter::new(file),
            },
            cache,
        ))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Appends and flushes a batch of records.
    pub fn append(&mut self, records: &[HeightRecord]) -> Result<(), JournalError> {
        let wrap = |source| JournalError::Io {
            path: self.path.clone(),
            source,
        };
        for r in records {
            let line = serde_json::to_string(r).expect("records always serialize");
            writeln!(self.out, "{line}").map_err(wrap)?;
        }
        self.out.flush().map_err(wrap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(n: u64, factors: &[u64], h: i64) -> HeightRecord {
        HeightRecord {
            n,
            factors: factors.to_vec(),
            degree: 0,
            height: BigInt::from(h),
            pseudo: false,
        }
    }

    #[test]
    fn record_format() {
        let r = rec(105, &[3, 5, 7], 2);
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"n":105,"factors":[3,5,7],"degree":0,"height":2}"#
        );
        let big: HeightRecord =
            serde_json::from_str(r#"{"n":1,"factors":[],"degree":0,"height":"123456789012345678901234"}"#).unwrap();
        assert_eq!(big.height.to_string(), "123456789012345678901234");
        assert!(serde_json::to_string(&big).unwrap().contains("\"123456789012345678901234\""));
    }

    #[test]
    fn torn_tail_is_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("j.jsonl");
        {
            let (mut j, cache) = Journal::open(&path).unwrap();
            assert!(cache.is_empty());
            j.append(&[rec(105, &[3, 5, 7], 2), rec(15, &[3, 5], 1)]).unwrap();
        }
        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        write!(f, "not json\n{{\"n\":35,\"fac").unwrap();
        drop(f);

        let (mut j, cache) = Journal::open(&path).unwrap();
        assert_eq!(cache.len(), 2);
        assert_eq!(cache.skipped_lines, 1);
        assert_eq!(cache.get(false, &[3, 5, 7]), Some(&BigInt::from(2)));
        j.append(&[rec(35, &[5, 7], 1)]).unwrap();
        drop(j);
        let cache = HeightCache::load(&path).unwrap();
        assert_eq!(cache.len(), 3);
        assert_eq!(cache.skipped_lines, 1);
    }
}
