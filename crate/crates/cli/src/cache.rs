//! Persistent factorization cache.
//!
//! The file is plain text, one `n<TAB>factorization` line per entry, and is
//! only ever appended to. When a key appears more than once the last line
//! wins. Lines that fail to parse or whose factorization does not multiply
//! back to `n` are skipped with a warning.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use anyhow::{Context, Result};
use num_bigint::BigUint;
use septic_core::arith::{Factorization, Factorizer};

/// Wraps another factorizer, remembering complete factorizations only, so
/// that answers never depend on the budget that was in force when an entry
/// was written.
pub struct CachedFactorizer<F> {
    inner: F,
    memory: Mutex<HashMap<BigUint, Factorization>>,
    file: Option<Mutex<File>>,
    path: Option<PathBuf>,
}

impl<F: Factorizer> CachedFactorizer<F> {
    /// In-memory cache only.
    pub fn in_memory(inner: F) -> Self {
        CachedFactorizer {
            inner,
            memory: Mutex::new(HashMap::new()),
            file: None,
            path: None,
        }
    }

    /// Loads `path` (creating it if missing) and appends new entries to it.
    pub fn open(inner: F, path: &Path) -> Result<Self> {
        let mut memory = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(
                File::open(path).with_context(|| format!("opening cache {}", path.display()))?,
            );
            for (lineno, line) in reader.lines().enumerate() {
                let line = line.with_context(|| format!("reading cache {}", path.display()))?;
                if line.trim().is_empty() {
                    continue;
                }
                match parse_entry(&line) {
                    Some((n, f)) => {
                        memory.insert(n, f);
                    }
                    None => eprintln!(
                        "warning: {}:{}: ignoring malformed cache entry",
                        path.display(),
                        lineno + 1
                    ),
                }
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening cache {} for append", path.display()))?;
        Ok(CachedFactorizer {
            inner,
            memory: Mutex::new(memory),
            file: Some(Mutex::new(file)),
            path: Some(path.to_path_buf()),
        })
    }

    pub fn len(&self) -> usize {
        self.memory.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }
}

fn parse_entry(line: &str) -> Option<(BigUint, Factorization)> {
    let (n, fact) = line.split_once('\t')?;
    let n: BigUint = n.trim().parse().ok()?;
    let fact: Factorization = fact.trim().parse().ok()?;
    (fact.value() == &n && fact.is_complete() && fact.validate().is_ok()).then_some((n, fact))
}

impl<F: Factorizer> Factorizer for CachedFactorizer<F> {
    fn factor_natural(&self, n: &BigUint) -> Factorization {
        if let Some(hit) = self.memory.lock().expect("cache lock").get(n) {
            return hit.clone();
        }
        let fact = self.inner.factor_natural(n);
        if fact.is_complete() {
            let mut memory = self.memory.lock().expect("cache lock");
            if memory.insert(n.clone(), fact.clone()).is_none() {
                if let Some(file) = &self.file {
                    let mut file = file.lock().expect("cache file lock");
                    if let Err(e) = writeln!(file, "{n}\t{fact}") {
                        eprintln!("warning: could not append to factorization cache: {e}");
                    }
                }
            }
        }
        fact
    }
}
