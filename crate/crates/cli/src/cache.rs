//! On-disk sequence cache: one b-file per `(d, r)` plus an optional layer
//! checkpoint so later runs can continue the DP instead of restarting it.
//!
//! Writes go to a temporary file in the cache directory and are renamed into
//! place. Terms are append-only facts, so a store never replaces a longer
//! record with a shorter one.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigUint;
use num_traits::One;
use seqlab_core::bfile::{self, BFile};
use seqlab_core::partition::Partition;
use seqlab_core::tableau::LayerTable;
use thiserror::Error;

pub const DEFAULT_DIR: &str = ".seqlab";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: corrupt cache file: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("{path}: stored term {index} disagrees with the new record")]
    Conflict { path: PathBuf, index: usize },
    #[error("invalid record: {0}")]
    InvalidRecord(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    ExtendedByRecurrence,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Computed => "computed",
            Provenance::ExtendedByRecurrence => "extended-by-recurrence",
        })
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "computed" => Ok(Provenance::Computed),
            "extended-by-recurrence" => Ok(Provenance::ExtendedByRecurrence),
            other => Err(format!("unknown provenance {other:?}")),
        }
    }
}

/// Terms `A_{d,r}(0..)` with where they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceRecord {
    pub d: usize,
    pub r: usize,
    pub terms: Vec<BigUint>,
    pub provenance: Provenance,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl SequenceRecord {
    pub fn new(d: usize, r: usize, terms: Vec<BigUint>, provenance: Provenance) -> Result<Self, CacheError> {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|t| t.as_secs())
            .unwrap_or(0);
        let rec = SequenceRecord { d, r, terms, provenance, timestamp };
        rec.validate().map_err(CacheError::InvalidRecord)?;
        Ok(rec)
    }

    fn validate(&self) -> Result<(), String> {
        if self.d < 2 || self.r == 0 {
            return Err(format!("bad key d={} r={}", self.d, self.r));
        }
        match self.terms.first() {
            None => Err("record has no terms".into()),
            Some(t) if !t.is_one() => Err(format!("a(0) must be 1, got {t}")),
            Some(_) => Ok(()),
        }
    }

    fn to_bfile(&self) -> String {
        let file = BFile {
            comments: vec![
                format!(" seqlab A_{{d,r}}(n) d={} r={}", self.d, self.r),
                format!(" provenance={} timestamp={}", self.provenance, self.timestamp),
            ],
            terms: self.terms.clone(),
        };
        file.render()
    }

    fn from_bfile(text: &str) -> Result<Self, String> {
        let file = bfile::parse(text).map_err(|e| e.to_string())?;
        let mut fields = std::collections::HashMap::new();
        for c in &file.comments {
            for tok in c.split_whitespace() {
                if let Some((k, v)) = tok.split_once('=') {
                    fields.insert(k.to_string(), v.to_string());
                }
            }
        }
        let get = |k: &str| fields.get(k).ok_or_else(|| format!("missing {k} in header"));
        let num = |k: &str| -> Result<u64, String> { get(k)?.parse().map_err(|_| format!("bad {k}")) };
        let rec = SequenceRecord {
            d: num("d")? as usize,
            r: num("r")? as usize,
            terms: file.terms,
            provenance: get("provenance")?.parse()?,
            timestamp: num("timestamp")?,
        };
        rec.validate()?;
        Ok(rec)
    }
}

/// What [`Cache::store`] did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StoreOutcome {
    Written,
    /// The cache already held a record at least this long; nothing written.
    KeptExisting { existing_len: usize },
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `--cache-dir`, else `SEQLAB_CACHE`, else `./.seqlab` (the first two are
    /// resolved by the argument parser).
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn record_path(&self, d: usize, r: usize) -> PathBuf {
        self.dir.join(format!("A_d{d}_r{r}.bfile"))
    }

    pub fn layer_path(&self, d: usize, r: usize) -> PathBuf {
        self.dir.join(format!("A_d{d}_r{r}.layer"))
    }

    fn read(path: &Path) -> Result<Option<String>, CacheError> {
        match fs::read_to_string(path) {
            Ok(text) => Ok(Some(text)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(source) => Err(CacheError::Io { path: path.to_path_buf(), source }),
        }
    }

    fn write_atomic(&self, path: &Path, contents: &str) -> Result<(), CacheError> {
        let io_err = |source| CacheError::Io { path: path.to_path_buf(), source };
        fs::create_dir_all(&self.dir).map_err(|source| CacheError::Io { path: self.dir.clone(), source })?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io_err)?;
        tmp.write_all(contents.as_bytes()).map_err(io_err)?;
        tmp.as_file().sync_all().map_err(io_err)?;
        tmp.persist(path).map_err(|e| io_err(e.error))?;
        Ok(())
    }

    pub fn load(&self, d: usize, r: usize) -> Result<Option<SequenceRecord>, CacheError> {
        let path = self.record_path(d, r);
        let Some(text) = Self::read(&path)? else {
            return Ok(None);
        };
        let rec = SequenceRecord::from_bfile(&text).map_err(|reason| CacheError::Corrupt { path: path.clone(), reason })?;
        if (rec.d, rec.r) != (d, r) {
            return Err(CacheError::Corrupt {
                path,
                reason: format!("header says d={} r={}", rec.d, rec.r),
            });
        }
        Ok(Some(rec))
    }

    /// Keep-longest store. Both records must agree on their common prefix.
    pub fn store(&self, rec: &SequenceRecord) -> Result<StoreOutcome, CacheError> {
        let path = self.record_path(rec.d, rec.r);
        if let Some(existing) = self.load(rec.d, rec.r)? {
            if let Some(index) = existing.terms.iter().zip(&rec.terms).position(|(a, b)| a != b) {
                return Err(CacheError::Conflict { path, index });
            }
            if existing.terms.len() > rec.terms.len() {
                return Ok(StoreOutcome::KeptExisting {
                    existing_len: existing.terms.len(),
                });
            }
        }
        self.write_atomic(&path, &rec.to_bfile())?;
        Ok(StoreOutcome::Written)
    }

    /// Saves the DP state after `table.layer()` letters.
    pub fn store_layer(&self, d: usize, r: usize, table: &LayerTable) -> Result<(), CacheError> {
        let mut out = format!("# seqlab layer d={d} r={r} layer={}\n", table.layer());
        for (shape, value) in table.iter() {
            out.push_str(&value.to_string());
            for p in shape.parts() {
                out.push(' ');
                out.push_str(&p.to_string());
            }
            out.push('\n');
        }
        self.write_atomic(&self.layer_path(d, r), &out)
    }

    pub fn load_layer(&self, d: usize, r: usize) -> Result<Option<LayerTable>, CacheError> {
        let path = self.layer_path(d, r);
        let Some(text) = Self::read(&path)? else {
            return Ok(None);
        };
        let corrupt = |reason: String| CacheError::Corrupt { path: path.clone(), reason };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| corrupt("empty file".into()))?;
        let expect_prefix = format!("# seqlab layer d={d} r={r} layer=");
        let layer: usize = header
            .strip_prefix(&expect_prefix)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| corrupt(format!("bad header {header:?}")))?;
        let mut entries = Vec::new();
        for line in lines {
            let mut fields = line.split(' ');
            let value = fields
                .next()
                .and_then(|v| BigUint::from_str(v).ok())
                .ok_or_else(|| corrupt(format!("bad line {line:?}")))?;
            let parts = fields
                .map(|p| p.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| corrupt(format!("bad line {line:?}")))?;
            let shape = Partition::new(parts).map_err(|e| corrupt(e.to_string()))?;
            entries.push((shape, value));
        }
        LayerTable::from_entries(layer, r, entries)
            .map(Some)
            .map_err(|e| corrupt(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use seqlab_core::tableau::AvoiderSequencer;

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn record(terms: &[u64]) -> SequenceRecord {
        SequenceRecord::new(3, 1, nums(terms), Provenance::Computed).unwrap()
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let rec = record(&[1, 1, 2, 5, 14]);
        assert_eq!(cache.store(&rec).unwrap(), StoreOutcome::Written);
        assert_eq!(cache.load(3, 1).unwrap().unwrap(), rec);
        assert!(cache.record_path(3, 1).ends_with("A_d3_r1.bfile"));
    }

    #[test]
    fn absent_key_is_none() {
        let dir = tempfile::tempdir().unwrap();
        assert!(Cache::new(dir.path()).load(4, 2).unwrap().is_none());
        assert!(Cache::new(dir.path().join("missing")).load(4, 2).unwrap().is_none());
    }

    #[test]
    fn keeps_longest() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache.store(&record(&[1, 1, 2])).unwrap();
        assert_eq!(cache.store(&record(&[1, 1, 2, 5, 14])).unwrap(), StoreOutcome::Written);
        assert_eq!(
            cache.store(&record(&[1, 1, 2])).unwrap(),
            StoreOutcome::KeptExisting { existing_len: 5 }
        );
        assert_eq!(cache.load(3, 1).unwrap().unwrap().terms.len(), 5);
        assert!(matches!(
            cache.store(&record(&[1, 1, 3, 5, 14, 42])),
            Err(CacheError::Conflict { index: 2, .. })
        ));
    }

    #[test]
    fn corrupt_files_are_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        cache.store(&record(&[1, 1, 2, 5])).unwrap();
        let path = cache.record_path(3, 1);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replace("3 5", "3 5x")).unwrap();
        let err = cache.load(3, 1).unwrap_err();
        assert!(matches!(err, CacheError::Corrupt { .. }));
        assert!(err.to_string().contains("A_d3_r1.bfile"));

        fs::write(&path, "0 1\n1 1\n").unwrap();
        assert!(matches!(cache.load(3, 1), Err(CacheError::Corrupt { .. })));
    }

    #[test]
    fn records_need_a_leading_one() {
        assert!(SequenceRecord::new(3, 1, vec![], Provenance::Computed).is_err());
        assert!(SequenceRecord::new(3, 1, nums(&[2]), Provenance::Computed).is_err());
    }

    #[test]
    fn layer_checkpoint_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let mut seq = AvoiderSequencer::new(4, 2);
        for _ in 0..5 {
            seq.advance();
        }
        cache.store_layer(4, 2, seq.table()).unwrap();
        assert_eq!(cache.load_layer(4, 2).unwrap().unwrap(), *seq.table());
        assert!(cache.load_layer(4, 3).unwrap().is_none());

        fs::write(cache.layer_path(4, 2), "# seqlab layer d=4 r=2 layer=1\n1 3\n").unwrap();
        assert!(matches!(cache.load_layer(4, 2), Err(CacheError::Corrupt { .. })));
    }
}
