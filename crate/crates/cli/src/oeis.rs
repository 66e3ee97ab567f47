//! OEIS lookup, either against the public search endpoint or a local copy of
//! the `stripped` dump (lines `A000108 ,1,1,2,5,14,…,`).

use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde_json::Value;
use thiserror::Error;

pub const DEFAULT_URL: &str = "https://oeis.org/search";
pub const USER_AGENT: &str = concat!(
    "seqlab/",
    env!("CARGO_PKG_VERSION"),
    " (exact enumeration of pattern-avoiding words)"
);
pub const MIN_INTERVAL: Duration = Duration::from_secs(2);

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("no query terms given")]
    EmptyQuery,
    #[error("network unavailable: {0}")]
    Network(String),
    #[error("{0}: file not found")]
    FileNotFound(PathBuf),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed response ({reason}); raw payload: {raw}")]
    Malformed { reason: String, raw: String },
    #[error("invalid sequence identifier {0:?}")]
    BadId(String),
}

/// `A` followed by six digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OeisId(String);

impl OeisId {
    pub fn parse(s: &str) -> Result<Self, OeisError> {
        let ok = s.len() == 7 && s.starts_with('A') && s[1..].bytes().all(|b| b.is_ascii_digit());
        if ok {
            Ok(OeisId(s.to_string()))
        } else {
            Err(OeisError::BadId(s.to_string()))
        }
    }

    pub fn from_number(n: u64) -> Result<Self, OeisError> {
        OeisId::parse(&format!("A{n:06}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for OeisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OeisMatch {
    pub id: OeisId,
    pub name: String,
    /// Position of the query inside the sequence's listed terms, when known.
    pub offset: Option<usize>,
}

impl fmt::Display for OeisMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.offset {
            Some(o) => write!(f, "{} offset={} {}", self.id, o, self.name),
            None => write!(f, "{} offset=? {}", self.id, self.name),
        }
    }
}

fn query_strings(terms: &[BigUint]) -> Result<Vec<String>, OeisError> {
    if terms.is_empty() {
        return Err(OeisError::EmptyQuery);
    }
    Ok(terms.iter().map(ToString::to_string).collect())
}

fn find_run(haystack: &[&str], needle: &[String]) -> Option<usize> {
    if needle.len() > haystack.len() {
        return None;
    }
    haystack
        .windows(needle.len())
        .position(|w| w.iter().zip(needle).all(|(a, b)| *a == b))
}

/// Scans a `stripped` dump for sequences containing `terms` as a contiguous
/// run. Names come from an optional `names` file (`A000108 Catalan numbers…`).
pub fn lookup_local(terms: &[BigUint], stripped: &Path, names: Option<&Path>) -> Result<Vec<OeisMatch>, OeisError> {
    let query = query_strings(terms)?;
    let open = |path: &Path| -> Result<BufReader<File>, OeisError> {
        File::open(path).map(BufReader::new).map_err(|source| {
            if source.kind() == std::io::ErrorKind::NotFound {
                OeisError::FileNotFound(path.to_path_buf())
            } else {
                OeisError::Io { path: path.to_path_buf(), source }
            }
        })
    };
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| OeisError::Io { path, source }
    };

    let mut hits: Vec<(OeisId, usize)> = Vec::new();
    for line in open(stripped)?.lines() {
        let line = line.map_err(io_err(stripped))?;
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        let Some((id, data)) = line.split_once(' ') else { continue };
        let values: Vec<&str> = data.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if let Some(offset) = find_run(&values, &query) {
            hits.push((OeisId::parse(id)?, offset));
        }
    }

    let mut name_of: HashMap<OeisId, String> = HashMap::new();
    if let Some(names) = names {
        for line in open(names)?.lines() {
            let line = line.map_err(io_err(names))?;
            if let Some((id, name)) = line.split_once(' ') {
                if let Ok(id) = OeisId::parse(id) {
                    if hits.iter().any(|(h, _)| *h == id) {
                        name_of.insert(id, name.to_string());
                    }
                }
            }
        }
    }
    Ok(hits
        .into_iter()
        .map(|(id, offset)| OeisMatch {
            name: name_of.remove(&id).unwrap_or_default(),
            id,
            offset: Some(offset),
        })
        .collect())
}

static LAST_REQUEST: Mutex<Option<Instant>> = Mutex::new(None);

fn wait_for_slot() {
    let mut last = LAST_REQUEST.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(prev) = *last {
        let elapsed = prev.elapsed();
        if elapsed < MIN_INTERVAL {
            std::thread::sleep(MIN_INTERVAL - elapsed);
        }
    }
    *last = Some(Instant::now());
}

/// Queries the search endpoint at `base_url` with JSON output requested.
/// Requests from this process are spaced at least [`MIN_INTERVAL`] apart.
pub fn lookup_remote(terms: &[BigUint], base_url: &str) -> Result<Vec<OeisMatch>, OeisError> {
    let query = query_strings(terms)?;
    wait_for_slot();
    let response = ureq::AgentBuilder::new()
        .timeout(Duration::from_secs(30))
        .user_agent(USER_AGENT)
        .build()
        .get(base_url)
        .query("q", &query.join(","))
        .query("fmt", "json")
        .call();
    let body = match response {
        Ok(resp) => resp
            .into_string()
            .map_err(|e| OeisError::Network(e.to_string()))?,
        Err(ureq::Error::Status(code, resp)) => {
            let raw = resp.into_string().unwrap_or_default();
            return Err(OeisError::Malformed { reason: format!("HTTP status {code}"), raw });
        }
        Err(e) => return Err(OeisError::Network(e.to_string())),
    };
    parse_search_response(&body, &query)
}

/// Accepts both the bare-array form and the older `{"results": [...]}` form;
/// `null` means no hits.
pub fn parse_search_response(body: &str, query: &[String]) -> Result<Vec<OeisMatch>, OeisError> {
    let malformed = |reason: &str| OeisError::Malformed {
        reason: reason.to_string(),
        raw: body.to_string(),
    };
    let json: Value = serde_json::from_str(body).map_err(|e| malformed(&e.to_string()))?;
    let results = match &json {
        Value::Null => return Ok(Vec::new()),
        Value::Array(items) => items,
        Value::Object(obj) => match obj.get("results") {
            Some(Value::Array(items)) => items,
            Some(Value::Null) | None => return Ok(Vec::new()),
            Some(_) => return Err(malformed("`results` is not an array")),
        },
        _ => return Err(malformed("unexpected top-level JSON value")),
    };
    results
        .iter()
        .map(|item| {
            let number = item
                .get("number")
                .and_then(Value::as_u64)
                .ok_or_else(|| malformed("result without numeric `number`"))?;
            let name = item.get("name").and_then(Value::as_str).unwrap_or_default().to_string();
            let offset = item.get("data").and_then(Value::as_str).and_then(|data| {
                let values: Vec<&str> = data.split(',').map(str::trim).collect();
                find_run(&values, query)
            });
            Ok(OeisMatch {
                id: OeisId::from_number(number).map_err(|_| malformed("sequence number out of range"))?,
                name,
                offset,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identifiers() {
        assert!(OeisId::parse("A000108").is_ok());
        for bad in ["A00010", "B000108", "A00010x", "A0001080", ""] {
            assert!(OeisId::parse(bad).is_err(), "{bad}");
        }
        assert_eq!(OeisId::from_number(108).unwrap().as_str(), "A000108");
        assert!(OeisId::from_number(10_000_000).is_err());
    }

    #[test]
    fn parses_both_json_shapes() {
        let modern = r#"[{"number":108,"name":"Catalan numbers","data":"1,1,2,5,14,42,132"}]"#;
        let legacy = r#"{"count":1,"results":[{"number":108,"name":"Catalan numbers","data":"1,1,2,5,14,42,132"}]}"#;
        let query = q(&["2", "5", "14"]);
        for body in [modern, legacy] {
            let m = parse_search_response(body, &query).unwrap();
            assert_eq!(m.len(), 1);
            assert_eq!(m[0].id.as_str(), "A000108");
            assert_eq!(m[0].offset, Some(2));
        }
        assert!(parse_search_response("null", &query).unwrap().is_empty());
        assert!(parse_search_response(r#"{"results":null}"#, &query).unwrap().is_empty());
    }

    #[test]
    fn malformed_payload_is_preserved() {
        let err = parse_search_response("<html>busy</html>", &q(&["1"])).unwrap_err();
        match err {
            OeisError::Malformed { raw, .. } => assert_eq!(raw, "<html>busy</html>"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_search_response(r#"[{"name":"x"}]"#, &q(&["1"])),
            Err(OeisError::Malformed { .. })
        ));
    }

    #[test]
    fn empty_query_is_rejected() {
        assert!(matches!(lookup_remote(&[], "http://127.0.0.1:1/"), Err(OeisError::EmptyQuery)));
        assert!(matches!(
            lookup_local(&[], Path::new("/nonexistent"), None),
            Err(OeisError::EmptyQuery)
        ));
    }

    #[test]
    fn missing_dump_is_reported() {
        let err = lookup_local(&[BigUint::from(1u32)], Path::new("/nonexistent/stripped"), None).unwrap_err();
        assert!(matches!(err, OeisError::FileNotFound(_)));
    }
}
