//! Persistent factor cache.
//!
//! One record per line, sorted by input:
//!
//! ```text
//! 1 : 1 : complete
//! 1001 : 7^1 * 11^1 * 13^1 : complete
//! 10000000000000000000001 : 89^1 * 101^1 * 1112470797641561909^1 : partial
//! ```
//!
//! The middle field lists `prime^multiplicity` terms in ascending order
//! (`1` for the empty product). A `partial` record carries its unresolved
//! composite cofactor as the last term. Writes go to a temporary file in
//! the same directory which is then renamed over the cache.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use super::{is_prime, Factorization};
use crate::natural::Natural;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("corrupt factor cache at line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
    #[error("factor cache I/O error: {0}")]
    Io(#[from] io::Error),
}

/// One cache record in its textual form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCacheEntry {
    pub key: String,
    pub factors: Vec<(String, u32)>,
    pub complete: bool,
}

impl FactorCacheEntry {
    pub fn from_factorization(f: &Factorization) -> Self {
        let mut factors: Vec<(String, u32)> = f
            .factors()
            .iter()
            .map(|(p, e)| (p.to_string(), *e))
            .collect();
        if let Some(u) = f.unresolved() {
            factors.push((u.to_string(), 1));
        }
        FactorCacheEntry {
            key: f.input().to_string(),
            factors,
            complete: f.is_complete(),
        }
    }

    pub fn to_line(&self) -> String {
        let terms = if self.factors.is_empty() {
            "1".to_string()
        } else {
            self.factors
                .iter()
                .map(|(p, e)| format!("{p}^{e}"))
                .collect::<Vec<_>>()
                .join(" * ")
        };
        let flag = if self.complete { "complete" } else { "partial" };
        format!("{} : {} : {}", self.key, terms, flag)
    }

    pub fn parse_line(line: &str) -> Result<Self, String> {
        let fields: Vec<&str> = line.split(" : ").collect();
        let [key, terms, flag] = fields[..] else {
            return Err(format!(
                "expected 3 fields separated by ' : ', found {}",
                fields.len()
            ));
        };
        let complete = match flag {
            "complete" => true,
            "partial" => false,
            other => return Err(format!("unknown flag {other:?}")),
        };
        let factors = if terms == "1" {
            Vec::new()
        } else {
            terms
                .split(" * ")
                .map(|term| {
                    let (p, e) = term
                        .split_once('^')
                        .ok_or_else(|| format!("term {term:?} is not prime^multiplicity"))?;
                    let e: u32 = e
                        .parse()
                        .map_err(|_| format!("bad multiplicity in {term:?}"))?;
                    Ok((p.to_string(), e))
                })
                .collect::<Result<Vec<_>, String>>()?
        };
        Ok(FactorCacheEntry {
            key: key.to_string(),
            factors,
            complete,
        })
    }

    /// Re-parses the numbers and checks every record invariant.
    pub fn to_factorization(&self) -> Result<Factorization, String> {
        let key: Natural = self.key.parse().map_err(|e| format!("key: {e}"))?;
        let mut parsed = Vec::with_capacity(self.factors.len());
        for (p, e) in &self.factors {
            let p: Natural = p.parse().map_err(|e| format!("factor: {e}"))?;
            if *e == 0 {
                return Err(format!("zero multiplicity for {p}"));
            }
            parsed.push((p, *e));
        }
        let unresolved = if self.complete {
            None
        } else {
            match parsed.pop() {
                Some((u, 1)) if !is_prime(&u) && !u.is_one() => Some(u),
                _ => return Err("partial record without a composite cofactor".into()),
            }
        };
        if parsed.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err("primes are not strictly ascending".into());
        }
        if let Some((p, _)) = parsed.iter().find(|(p, _)| !is_prime(p)) {
            return Err(format!("{p} is not prime"));
        }
        let product: Natural = parsed.iter().map(|(p, e)| p.pow(*e)).product::<Natural>()
            * unresolved.clone().unwrap_or_else(Natural::one);
        if product != key {
            return Err(format!("factors multiply to {product}, not {key}"));
        }
        Ok(Factorization::from_parts(key, parsed, unresolved))
    }
}

/// Factorizations keyed by their input, optionally mirrored to a file.
#[derive(Debug, Default)]
pub struct FactorCache {
    path: Option<PathBuf>,
    entries: BTreeMap<Natural, Factorization>,
}

fn parse_contents(text: &str) -> Result<BTreeMap<Natural, Factorization>, CacheError> {
    let mut entries = BTreeMap::new();
    let mut previous: Option<Natural> = None;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let corrupt = |reason: String| CacheError::Corrupt {
            line: line_no,
            reason,
        };
        let f = FactorCacheEntry::parse_line(line)
            .and_then(|entry| entry.to_factorization())
            .map_err(corrupt)?;
        if previous.as_ref().is_some_and(|p| p >= f.input()) {
            return Err(corrupt("records are not sorted by input".into()));
        }
        previous = Some(f.input().clone());
        entries.insert(f.input().clone(), f);
    }
    Ok(entries)
}

impl FactorCache {
    pub fn in_memory() -> Self {
        FactorCache::default()
    }

    /// Loads the cache at `path`; a missing file is an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let path = path.into();
        let entries = match fs::read_to_string(&path) {
            Ok(text) => parse_contents(&text)?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(FactorCache {
            path: Some(path),
            entries,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A stored complete factorization of `n`.
    pub fn get(&self, n: &Natural) -> Option<Factorization> {
        self.entries.get(n).filter(|f| f.is_complete()).cloned()
    }

    /// Stores `f` and, for file-backed caches, rewrites the file atomically.
    ///
    /// Records written by other processes since this cache was opened are
    /// merged in before writing. A complete record is never replaced by a
    /// partial one.
    pub fn put(&mut self, f: &Factorization) -> Result<(), CacheError> {
        if let Some(existing) = self.entries.get(f.input()) {
            if existing.is_complete() && !f.is_complete() {
                return Ok(());
            }
        }
        self.entries.insert(f.input().clone(), f.clone());
        let Some(path) = self.path.clone() else {
            return Ok(());
        };
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(on_disk) = parse_contents(&text) {
                for (k, v) in on_disk {
                    let keep_ours = self.entries.get(&k).is_some_and(|ours| ours.is_complete());
                    if !keep_ours {
                        self.entries.insert(k, v);
                    }
                }
            }
        }
        self.write_to(&path)
    }

    fn write_to(&self, path: &Path) -> Result<(), CacheError> {
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = NamedTempFile::new_in(dir)?;
        for f in self.entries.values() {
            writeln!(tmp, "{}", FactorCacheEntry::from_factorization(f).to_line())?;
        }
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::{factorize, FactorConfig};

    fn n(s: &str) -> Natural {
        s.parse().unwrap()
    }

    #[test]
    fn line_format() {
        let f = factorize(&n("1001"), &FactorConfig::default()).unwrap();
        let e = FactorCacheEntry::from_factorization(&f);
        assert_eq!(e.to_line(), "1001 : 7^1 * 11^1 * 13^1 : complete");
        assert_eq!(FactorCacheEntry::parse_line(&e.to_line()).unwrap(), e);
        let one = factorize(&Natural::one(), &FactorConfig::default()).unwrap();
        assert_eq!(
            FactorCacheEntry::from_factorization(&one).to_line(),
            "1 : 1 : complete"
        );
        let partial = factorize(
            &n("10000000000000000000001"),
            &FactorConfig { budget: 1, seed: 0 },
        )
        .unwrap();
        let line = FactorCacheEntry::from_factorization(&partial).to_line();
        assert_eq!(
            line,
            "10000000000000000000001 : 89^1 * 101^1 * 1112470797641561909^1 : partial"
        );
        let back = FactorCacheEntry::parse_line(&line)
            .unwrap()
            .to_factorization()
            .unwrap();
        assert_eq!(back, partial);
    }

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("factors.txt");
        let mut cache = FactorCache::open(&path).unwrap();
        assert!(cache.get(&n("1001")).is_none());
        for v in ["1000000001", "1001", "1"] {
            cache
                .put(&factorize(&n(v), &FactorConfig::default()).unwrap())
                .unwrap();
        }
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(
            text,
            "1 : 1 : complete\n1001 : 7^1 * 11^1 * 13^1 : complete\n\
             1000000001 : 7^1 * 11^1 * 13^1 * 19^1 * 52579^1 : complete\n"
        );
        let reopened = FactorCache::open(&path).unwrap();
        assert_eq!(reopened.len(), 3);
        assert_eq!(reopened.get(&n("1001")).unwrap().to_string(), "7 · 11 · 13");
        assert!(reopened.get(&n("1002")).is_none());
    }

    #[test]
    fn partial_records_are_not_served() {
        let mut cache = FactorCache::in_memory();
        let partial = factorize(
            &n("10000000000000000000001"),
            &FactorConfig { budget: 1, seed: 0 },
        )
        .unwrap();
        cache.put(&partial).unwrap();
        assert!(cache.get(partial.input()).is_none());
        let full = factorize(partial.input(), &FactorConfig::default()).unwrap();
        cache.put(&full).unwrap();
        cache.put(&partial).unwrap();
        assert_eq!(cache.get(partial.input()), Some(full));
    }

    #[test]
    fn merges_concurrent_writers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("factors.txt");
        let mut a = FactorCache::open(&path).unwrap();
        let mut b = FactorCache::open(&path).unwrap();
        a.put(&factorize(&n("1001"), &FactorConfig::default()).unwrap())
            .unwrap();
        b.put(&factorize(&n("10001"), &FactorConfig::default()).unwrap())
            .unwrap();
        let merged = FactorCache::open(&path).unwrap();
        assert_eq!(merged.len(), 2);
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cases = [
            ("1001 : 7^1 * 11^1 * 17^1 : complete\n", 1, "multiply"),
            ("1001 : 7^1 * 11^1 * 13^1\n", 1, "3 fields"),
            ("1001 : 7^1 * 143^1 : complete\n", 1, "not prime"),
            ("1001 : 11^1 * 7^1 * 13^1 : complete\n", 1, "ascending"),
            ("1001 : 7^1 * 11^1 * 13^1 : done\n", 1, "flag"),
            (
                "1001 : 7^1 * 11^1 * 13^1 : complete\n1 : 1 : complete\n",
                2,
                "sorted",
            ),
            ("1001 : 7 * 11 * 13 : complete\n", 1, "prime^multiplicity"),
            ("1 001 : 7^1 * 11^1 * 13^1 : complete\n", 1, "key"),
        ];
        for (i, (text, line, needle)) in cases.iter().enumerate() {
            let path = dir.path().join(format!("bad{i}.txt"));
            fs::write(&path, text).unwrap();
            match FactorCache::open(&path) {
                Err(CacheError::Corrupt { line: l, reason }) => {
                    assert_eq!(l, *line, "{text}");
                    assert!(reason.contains(needle), "{reason:?} lacks {needle:?}");
                }
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
