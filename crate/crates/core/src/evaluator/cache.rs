//! Append-only residue cache.
//!
//! One cell per line: `variant,index,signs,p,residue`, where `index` and
//! `signs` are themselves comma-separated (`zeta2,1,2,,7,1`,
//! `euler,1,2,+,-,11,4`). Unsigned variants carry an empty signs field;
//! signed ones have exactly as many signs as index entries, which makes the
//! line unambiguous.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::{evaluate, Index, SignVector, Variant};
use crate::modmath::Prime;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CacheKey {
    pub variant: Variant,
    pub index: Index,
    pub signs: Option<SignVector>,
    pub prime: Prime,
}

impl CacheKey {
    fn line(&self, residue: u64) -> String {
        let signs = self.signs.as_ref().map(|s| s.to_string()).unwrap_or_default();
        format!("{},{},{},{},{}\n", self.variant, self.index, signs, self.prime, residue)
    }

    fn parse_line(line: &str) -> Option<(CacheKey, u64)> {
        let tokens: Vec<&str> = line.split(',').collect();
        if tokens.len() < 4 {
            return None;
        }
        let variant: Variant = tokens[0].parse().ok()?;
        let residue: u64 = tokens[tokens.len() - 1].parse().ok()?;
        let prime = Prime::new(tokens[tokens.len() - 2].parse().ok()?).ok()?;
        let middle = &tokens[1..tokens.len() - 2];
        let (index, signs) = if variant.needs_signs() {
            if middle.len() % 2 != 0 {
                return None;
            }
            let half = middle.len() / 2;
            let index: Index = middle[..half.max(1)].join(",").parse().ok()?;
            let signs: SignVector = middle[half.max(1)..].join(",").parse().ok()?;
            (index, Some(signs))
        } else {
            let (last, head) = middle.split_last()?;
            if !last.is_empty() {
                return None;
            }
            (head.join(",").parse().ok()?, None)
        };
        if let Some(s) = &signs {
            if s.len() != index.depth() {
                return None;
            }
        }
        if residue >= prime.get() {
            return None;
        }
        Some((CacheKey { variant, index, signs, prime }, residue))
    }

    pub fn describe(&self) -> String {
        self.line(0).trim_end().trim_end_matches(",0").to_string()
    }
}

/// In-memory residue map, optionally mirrored to an append-only file.
///
/// Lookups and inserts may come from many threads; file appends go through a
/// single writer and are written as whole lines.
#[derive(Debug)]
pub struct ResidueCache {
    path: Option<PathBuf>,
    cells: Mutex<HashMap<CacheKey, u64>>,
    pending: Mutex<Vec<String>>,
}

impl ResidueCache {
    pub fn in_memory() -> Self {
        ResidueCache { path: None, cells: Mutex::new(HashMap::new()), pending: Mutex::new(Vec::new()) }
    }

    /// Opens (or creates on first flush) a cache file and reads it fully.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cells = HashMap::new();
        match File::open(&path) {
            Ok(f) => {
                for (n, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(|source| Error::Io { path: path.clone(), source })?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let (key, residue) = CacheKey::parse_line(line.trim_end())
                        .ok_or_else(|| Error::CacheCorrupt { path: path.clone(), line: n + 1, content: line.clone() })?;
                    cells.insert(key, residue);
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(source) => return Err(Error::Io { path, source }),
        }
        Ok(ResidueCache { path: Some(path), cells: Mutex::new(cells), pending: Mutex::new(Vec::new()) })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.cells.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &CacheKey) -> Option<u64> {
        self.cells.lock().unwrap().get(key).copied()
    }

    pub fn get_or_compute(
        &self,
        variant: Variant,
        index: &Index,
        signs: Option<&SignVector>,
        prime: Prime,
    ) -> Result<u64> {
        let key = CacheKey { variant, index: index.clone(), signs: signs.cloned(), prime };
        if let Some(v) = self.get(&key) {
            return Ok(v);
        }
        let value = evaluate(variant, index, signs, prime)?;
        let mut cells = self.cells.lock().unwrap();
        if !cells.contains_key(&key) {
            if self.path.is_some() {
                self.pending.lock().unwrap().push(key.line(value));
            }
            cells.insert(key, value);
        }
        Ok(value)
    }

    /// Appends all new cells to the backing file in one write.
    pub fn flush(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let lines: Vec<String> = std::mem::take(&mut *self.pending.lock().unwrap());
        if lines.is_empty() {
            return Ok(());
        }
        let io = |source| Error::Io { path: path.clone(), source };
        let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        f.write_all(lines.concat().as_bytes()).map_err(io)?;
        f.flush().map_err(io)
    }

    /// Recomputes every cell and checks it against the stored value.
    pub fn verify(&self) -> Result<usize> {
        let cells: Vec<(CacheKey, u64)> = {
            let map = self.cells.lock().unwrap();
            let mut v: Vec<_> = map.iter().map(|(k, &r)| (k.clone(), r)).collect();
            v.sort();
            v
        };
        for (key, cached) in &cells {
            let computed = evaluate(key.variant, &key.index, key.signs.as_ref(), key.prime)?;
            if computed != *cached {
                return Err(Error::CacheMismatch { key: key.describe(), cached: *cached, computed });
            }
        }
        Ok(cells.len())
    }
}

impl Drop for ResidueCache {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn line_format() {
        let key = CacheKey { variant: Variant::Zeta2, index: "1,2".parse().unwrap(), signs: None, prime: p(7) };
        assert_eq!(key.line(1), "zeta2,1,2,,7,1\n");
        assert_eq!(CacheKey::parse_line("zeta2,1,2,,7,1"), Some((key, 1)));
        let key = CacheKey {
            variant: Variant::Euler,
            index: "1,2".parse().unwrap(),
            signs: Some("+,-".parse().unwrap()),
            prime: p(11),
        };
        assert_eq!(key.line(4), "euler,1,2,+,-,11,4\n");
        assert_eq!(CacheKey::parse_line("euler,1,2,+,-,11,4"), Some((key, 4)));
        let empty = CacheKey { variant: Variant::Zeta, index: Index::empty(), signs: None, prime: p(5) };
        assert_eq!(CacheKey::parse_line(empty.line(1).trim_end()), Some((empty, 1)));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["zeta2,1,2,7,1", "zeta9,1,,7,1", "zeta2,1,,8,1", "zeta2,1,,7,9", "euler,1,2,+,7,1", "zeta2"] {
            assert!(CacheKey::parse_line(bad).is_none(), "{bad}");
        }
    }

    #[test]
    fn persists_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.txt");
        {
            let c = ResidueCache::open(&path).unwrap();
            let i: Index = "1,2".parse().unwrap();
            assert_eq!(c.get_or_compute(Variant::Zeta2, &i, None, p(7)).unwrap(), 1);
            assert_eq!(c.get_or_compute(Variant::Zeta2, &i, None, p(7)).unwrap(), 1);
            c.flush().unwrap();
        }
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "zeta2,1,2,,7,1\n");
        let c = ResidueCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.verify().unwrap(), 1);
    }

    #[test]
    fn corrupt_line_is_named() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.txt");
        std::fs::write(&path, "zeta2,1,,7,3\nzeta2,oops\n").unwrap();
        match ResidueCache::open(&path) {
            Err(Error::CacheCorrupt { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tampered_value_detected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.txt");
        std::fs::write(&path, "zeta2,1,,7,4\n").unwrap();
        let c = ResidueCache::open(&path).unwrap();
        assert!(matches!(c.verify(), Err(Error::CacheMismatch { cached: 4, computed: 3, .. })));
    }
}
