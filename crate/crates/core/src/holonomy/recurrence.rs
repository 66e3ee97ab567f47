use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::nullspace::normalize_content;
use super::poly::PolyInt;
use super::HolonomyError;

/// `Σ_{i=0}^{R} c_i(n) · a(n+i) = 0` for all `n ≥ offset`.
///
/// Always content-normalized: the integer coefficients of all `c_i` have gcd
/// one and the leading coefficient of `c_R` is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PRecurrence {
    coeffs: Vec<PolyInt>,
    offset: usize,
}

impl PRecurrence {
    /// Normalizes the coefficient list. Zero polynomials at the top are
    /// dropped, lowering the order.
    pub fn new(mut coeffs: Vec<PolyInt>, offset: usize) -> Result<Self, HolonomyError> {
        while coeffs.last().is_some_and(PolyInt::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(HolonomyError::Degenerate);
        }
        let width = coeffs.iter().filter_map(PolyInt::degree).max().unwrap_or(0) + 1;
        let mut flat: Vec<BigInt> = coeffs
            .iter()
            .flat_map(|p| (0..width).map(move |k| p.coeff(k)))
            .collect();
        // the last nonzero entry of `flat` is the leading coefficient of c_R
        normalize_content(&mut flat);
        let coeffs = flat
            .chunks(width)
            .map(|chunk| PolyInt::new(chunk.to_vec()))
            .collect();
        Ok(PRecurrence { coeffs, offset })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest degree among the coefficient polynomials.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().filter_map(PolyInt::degree).max().unwrap_or(0)
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn coeffs(&self) -> &[PolyInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &PolyInt {
        self.coeffs.last().expect("order ≥ 1")
    }

    /// `Σ c_i(n) · a(n+i)` for the window starting at `n`.
    fn residual(&self, terms: &[BigUint], n: usize) -> BigInt {
        let nn = BigInt::from(n);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.eval(&nn) * BigInt::from(terms[n + i].clone()))
            .sum()
    }

    /// Windows of `terms` where the recurrence applies: from the offset, with
    /// all `R + 1` terms present, and `c_R(n) ≠ 0`.
    fn windows(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (self.offset..len.saturating_sub(self.order()))
            .filter(move |&n| !self.leading().eval_usize(n).is_zero())
    }

    /// Serializes in the line-oriented recurrence text format.
    pub fn to_text(&self) -> String {
        let d = self.degree();
        let mut out = format!("ORDER {} DEGREE {} OFFSET {}\n", self.order(), d, self.offset);
        for c in &self.coeffs {
            let line: Vec<String> = (0..=d).map(|k| c.coeff(k).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, HolonomyError> {
        let bad = |msg: String| HolonomyError::Format(msg);
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
        let fields: Vec<&str> = header.split(' ').collect();
        let [o, order, g, degree, f, offset] = fields[..] else {
            return Err(bad(format!("malformed header {header:?}")));
        };
        if (o, g, f) != ("ORDER", "DEGREE", "OFFSET") {
            return Err(bad(format!("malformed header {header:?}")));
        }
        let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("bad number {s:?}")));
        let (order, degree, offset) = (parse(order)?, parse(degree)?, parse(offset)?);
        if order == 0 {
            return Err(bad("order must be at least 1".into()));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        for i in 0..=order {
            let line = lines
                .next()
                .ok_or_else(|| bad(format!("missing coefficient line for c_{i}")))?;
            let row = line
                .split(' ')
                .map(|s| BigInt::from_str(s).map_err(|_| bad(format!("bad integer {s:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != degree + 1 {
                return Err(bad(format!(
                    "c_{i} has {} coefficients, expected {}",
                    row.len(),
                    degree + 1
                )));
            }
            coeffs.push(PolyInt::new(row));
        }
        if lines.any(|l| !l.is_empty()) {
            return Err(bad("trailing content after coefficients".into()));
        }
        if coeffs[order].is_zero() {
            return Err(HolonomyError::Degenerate);
        }
        PRecurrence::new(coeffs, offset)
    }
}

impl FromStr for PRecurrence {
    type Err = HolonomyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PRecurrence::from_text(s)
    }
}

impl fmt::Debug for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(n+2)·a(n+1) + (-4n-2)·a(n) = 0`
impl fmt::Display for PRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            let shift = match i {
                0 => "a(n)".to_string(),
                _ => format!("a(n+{i})"),
            };
            write!(f, "({c})·{shift}")?;
            first = false;
        }
        f.write_str(" = 0")
    }
}

/// True iff every applicable window of `terms` satisfies `rec` exactly.
/// Windows with `c_R(n) = 0` are skipped; too few terms is vacuously true.
pub fn verify(rec: &PRecurrence, terms: &[BigUint]) -> bool {
    rec.windows(terms.len()).all(|n| rec.residual(terms, n).is_zero())
}

/// Extends `seed` to indices `0..=n_max` by solving each window for its
/// top term. Every division by `c_R(n)` must be exact.
pub fn extend(rec: &PRecurrence, seed: &[BigUint], n_max: usize) -> Result<Vec<BigUint>, HolonomyError> {
    let order = rec.order();
    let need = rec.offset() + order;
    if seed.len() < need {
        return Err(HolonomyError::InsufficientSeed {
            have: seed.len(),
            need,
        });
    }
    if !verify(rec, seed) {
        return Err(HolonomyError::InconsistentSeed);
    }
    let mut terms: Vec<BigUint> = seed.to_vec();
    terms.truncate(n_max + 1);
    while terms.len() <= n_max {
        let target = terms.len();
        let n = target - order;
        let nn = BigInt::from(n);
        let lead = rec.leading().eval(&nn);
        if lead.is_zero() {
            return Err(HolonomyError::SingularLeadingCoefficient { n });
        }
        let rest: BigInt = rec.coeffs()[..order]
            .iter()
            .enumerate()
            .map(|(i, c)| c.eval(&nn) * BigInt::from(terms[n + i].clone()))
            .sum();
        let (q, r) = (-rest).div_rem(&lead);
        if !r.is_zero() {
            return Err(HolonomyError::NonIntegerStep { index: target });
        }
        if q.is_negative() {
            return Err(HolonomyError::NegativeTerm { index: target });
        }
        terms.push(q.into_parts().1);
    }
    Ok(terms)
}
