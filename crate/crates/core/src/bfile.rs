//! OEIS b-file format: ASCII lines `n a(n)` with a single space, newline
//! terminated, indices starting at 0. Comment lines start with `#` and may
//! only appear before the first data line.

use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BFileError {
    #[error("line {line}: expected `n a(n)`, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: expected index {expected}, got {found}")]
    IndexGap { line: usize, expected: u64, found: u64 },
    #[error("line {line}: comment after data")]
    LateComment { line: usize },
}

/// Parsed b-file: leading comments (without the `#`) and the terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BFile {
    pub comments: Vec<String>,
    pub terms: Vec<BigUint>,
}

impl BFile {
    pub fn new(terms: Vec<BigUint>) -> Self {
        BFile { comments: Vec::new(), terms }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push('#');
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&format_terms(&self.terms));
        out
    }
}

impl FromStr for BFile {
    type Err = BFileError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse(text)
    }
}

/// `0 a(0)\n1 a(1)\n…`
pub fn format_terms(terms: &[BigUint]) -> String {
    let mut out = String::new();
    for (n, t) in terms.iter().enumerate() {
        out.push_str(&format!("{n} {t}\n"));
    }
    out
}

/// Parses a b-file whose indices run `0, 1, 2, …` without gaps. Empty lines
/// are ignored.
pub fn parse(text: &str) -> Result<BFile, BFileError> {
    let mut file = BFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.is_empty() {
            continue;
        }
        if let Some(comment) = raw.strip_prefix('#') {
            if !file.terms.is_empty() {
                return Err(BFileError::LateComment { line });
            }
            file.comments.push(comment.to_string());
            continue;
        }
        let malformed = || BFileError::Malformed { line, text: raw.to_string() };
        let (idx, value) = raw.split_once(' ').ok_or_else(malformed)?;
        let idx: u64 = idx.parse().map_err(|_| malformed())?;
        if value.is_empty() || !value.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let value = BigUint::from_str(value).map_err(|_| malformed())?;
        let expected = file.terms.len() as u64;
        if idx != expected {
            return Err(BFileError::IndexGap { line, expected, found: idx });
        }
        file.terms.push(value);
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nums(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn formats_catalan() {
        assert_eq!(format_terms(&nums(&[1, 1, 2, 5, 14])), "0 1\n1 1\n2 2\n3 5\n4 14\n");
    }

    #[test]
    fn parses_with_comments() {
        let f = parse("# A000108\n#x\n0 1\n1 1\n2 2\n").unwrap();
        assert_eq!(f.comments, vec![" A000108".to_string(), "x".to_string()]);
        assert_eq!(f.terms, nums(&[1, 1, 2]));
        assert_eq!(parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse("0 1\n2 1\n"), Err(BFileError::IndexGap { line: 2, .. })));
        assert!(matches!(parse("1 1\n"), Err(BFileError::IndexGap { .. })));
        assert!(matches!(parse("0 1\n# late\n"), Err(BFileError::LateComment { line: 2 })));
        for bad in ["0\n", "0  1\n", "0 -1\n", "x 1\n", "0 1 2\n", "0 +1\n"] {
            assert!(matches!(parse(bad), Err(BFileError::Malformed { .. })), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn round_trip(limbs in proptest::collection::vec(proptest::collection::vec(any::<u32>(), 0..6), 0..40)) {
            let terms: Vec<BigUint> = limbs.into_iter().map(BigUint::new).collect();
            let parsed = parse(&format_terms(&terms)).unwrap();
            prop_assert_eq!(parsed.terms, terms);
        }
    }
}
