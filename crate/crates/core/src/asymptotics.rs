//! Growth-rate tests for `A_{d,r}(n) ~ C · μ^n · n^{−α}` with
//! `μ = binom(d+r−2, d−2)·(d−1)^r` and `α = ((d−1)² − 1)/2`.
//!
//! Exact terms are big integers with thousands of digits, so every
//! normalization is done on the exact ratio `a(n)/μ^n` before any rounding.
//! Only the final logarithm is taken in the float type `F`.
//!
//! The Richardson ladder assumes `c_n = C(1 + e₁/n + e₂/n² + …)`. That
//! correction structure is an assumption; the ladder output is evidence,
//! not proof.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::partition::factorial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("term a({index}) is zero; growth fitting needs positive terms")]
    NonPositiveTerm { index: usize },
    #[error("need at least {need} terms, got {have}")]
    InsufficientTerms { have: usize, need: usize },
    #[error("extrapolation needs at least one level")]
    NoLevels,
    #[error("stride must be positive")]
    ZeroStride,
}

/// Conjectured growth parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthParams {
    /// Exponential base.
    pub mu: BigUint,
    /// Polynomial decay exponent.
    pub alpha: Ratio<u64>,
}

impl GrowthParams {
    pub fn alpha_f<F: Float + FromPrimitive>(&self) -> F {
        F::from_u64(*self.alpha.numer()).unwrap() / F::from_u64(*self.alpha.denom()).unwrap()
    }
}

/// `μ = binom(d+r−2, d−2)·(d−1)^r`, `α = ((d−1)² − 1)/2`, exactly.
///
/// # Panics
///
/// If `d < 2` or `r == 0`.
pub fn conjectured_params(d: usize, r: usize) -> GrowthParams {
    assert!(d >= 2 && r >= 1, "need d ≥ 2 and r ≥ 1");
    let binom = factorial(d + r - 2) / (factorial(d - 2) * factorial(r));
    let mu = binom * BigUint::from(d - 1).pow(r as u32);
    let alpha = Ratio::new(((d - 1) * (d - 1) - 1) as u64, 2);
    GrowthParams { mu, alpha }
}

/// Natural log of a positive big integer, accurate to the float's precision.
pub fn ln_big<F: Float + FloatConst + FromPrimitive>(x: &BigUint) -> F {
    ln_ratio(x, &BigUint::one())
}

/// `ln(num/den)` computed from the exact quotient scaled to ~96 bits, so the
/// result is accurate even when `num` and `den` agree in thousands of leading
/// digits' magnitude.
pub fn ln_ratio<F: Float + FloatConst + FromPrimitive>(num: &BigUint, den: &BigUint) -> F {
    assert!(!num.is_zero() && !den.is_zero(), "logarithm of a non-positive ratio");
    const TARGET_BITS: i64 = 96;
    let shift = TARGET_BITS - (num.bits() as i64 - den.bits() as i64);
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    // keep the top 64 bits of the quotient
    let extra = q.bits().saturating_sub(64);
    let top = (&q >> extra).to_u64().expect("fits in 64 bits");
    let mantissa = F::from_u64(top).unwrap();
    mantissa.ln() + F::from_i64(extra as i64 - shift).unwrap() * F::LN_2()
}

/// Least-squares growth fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit<F> {
    pub mu_hat: F,
    pub alpha_hat: F,
    /// Fitted additive constant, an estimate of `ln C`.
    pub log_constant: F,
}

/// Fits `ln a(n) ≈ n ln μ − α ln n + c` over the tail half of the indices.
pub fn empirical_growth<F>(terms: &[BigUint]) -> Result<GrowthFit<F>, AsymptoticsError>
where
    F: Float + FloatConst + FromPrimitive,
{
    empirical_growth_from(terms, terms.len() / 2)
}

/// As [`empirical_growth`], fitting indices `start..terms.len()`.
pub fn empirical_growth_from<F>(terms: &[BigUint], start: usize) -> Result<GrowthFit<F>, AsymptoticsError>
where
    F: Float + FloatConst + FromPrimitive,
{
    const MIN_TERMS: usize = 16;
    if terms.len() < MIN_TERMS {
        return Err(AsymptoticsError::InsufficientTerms { have: terms.len(), need: MIN_TERMS });
    }
    if let Some(index) = terms.iter().position(Zero::is_zero) {
        return Err(AsymptoticsError::NonPositiveTerm { index });
    }
    let start = start.max(1);
    if terms.len() < start + 3 {
        return Err(AsymptoticsError::InsufficientTerms { have: terms.len(), need: start + 3 });
    }
    let f = |v: usize| F::from_usize(v).unwrap();
    let columns: Vec<[F; 3]> = (start..terms.len())
        .map(|n| [f(n), -f(n).ln(), F::one()])
        .collect();
    let rhs: Vec<F> = (start..terms.len()).map(|n| ln_big(&terms[n])).collect();
    let [slope, alpha, c] = least_squares3(&columns, &rhs);
    Ok(GrowthFit {
        mu_hat: slope.exp(),
        alpha_hat: alpha,
        log_constant: c,
    })
}

/// Solves `min ‖A x − b‖` for a tall `m × 3` matrix by modified Gram–Schmidt.
fn least_squares3<F: Float>(rows: &[[F; 3]], b: &[F]) -> [F; 3] {
    let m = rows.len();
    let mut q: Vec<Vec<F>> = (0..3).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut r = [[F::zero(); 3]; 3];
    for j in 0..3 {
        for i in 0..j {
            let dot = (0..m).fold(F::zero(), |acc, k| acc + q[i][k] * q[j][k]);
            r[i][j] = dot;
            let (done, rest) = q.split_at_mut(j);
            for (x, y) in rest[0].iter_mut().zip(&done[i]) {
                *x = *x - dot * *y;
            }
        }
        let norm = (0..m).fold(F::zero(), |acc, k| acc + q[j][k] * q[j][k]).sqrt();
        r[j][j] = norm;
        for x in q[j].iter_mut() {
            *x = *x / norm;
        }
    }
    let qtb: Vec<F> = (0..3)
        .map(|j| (0..m).fold(F::zero(), |acc, k| acc + q[j][k] * b[k]))
        .collect();
    let mut x = [F::zero(); 3];
    for j in (0..3).rev() {
        let mut s = qtb[j];
        for i in (j + 1)..3 {
            s = s - r[j][i] * x[i];
        }
        x[j] = s / r[j][j];
    }
    x
}

/// Richardson stride and depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtrapolationConfig {
    pub stride: usize,
    pub levels: usize,
}

impl Default for ExtrapolationConfig {
    fn default() -> Self {
        ExtrapolationConfig { stride: 8, levels: 3 }
    }
}

/// Normalized sequence `c_n = a(n)·n^α/μ^n` and its Richardson ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantEstimate<F> {
    pub config: ExtrapolationConfig,
    /// `(n, c_n)` for `n ≥ 1`.
    pub normalized: Vec<(usize, F)>,
    /// `ladder[j − 1]` is the level-`j` estimate ending at the last index.
    pub ladder: Vec<F>,
}

impl<F: Float> ConstantEstimate<F> {
    /// Top-level estimate.
    pub fn estimate(&self) -> F {
        *self.ladder.last().expect("at least one level")
    }

    /// Level-`level` extrapolant using indices `n, n−s, …, n−level·s`, if
    /// they are all available.
    pub fn level_at(&self, level: usize, n: usize) -> Option<F> {
        let s = self.config.stride;
        let lowest = n.checked_sub(level * s)?;
        if lowest < 1 || n > self.normalized.len() {
            return None;
        }
        let points: Vec<(F, F)> = (0..=level)
            .map(|i| {
                let idx = lowest + i * s;
                (F::from(idx).unwrap().recip(), self.normalized[idx - 1].1)
            })
            .collect();
        Some(neville_at_zero(&points))
    }

    /// Plain-text table: `n`, `c_n`, then level-1..level-k extrapolants.
    pub fn report(&self) -> String
    where
        F: std::fmt::Display,
    {
        let k = self.config.levels;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# c_n = a(n) n^alpha / mu^n; Richardson in 1/n with stride {} (ansatz c_n = C(1 + e1/n + e2/n^2 + ...), assumed)",
            self.config.stride
        );
        let mut header = String::from("n c_n");
        for j in 1..=k {
            let _ = write!(header, " level{j}");
        }
        let _ = writeln!(out, "{header}");
        for &(n, c) in &self.normalized {
            let _ = write!(out, "{n} {c:.12}");
            for j in 1..=k {
                match self.level_at(j, n) {
                    Some(v) => {
                        let _ = write!(out, " {v:.12}");
                    }
                    None => out.push_str(" -"),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Value at `h = 0` of the polynomial through `(h_i, y_i)`.
fn neville_at_zero<F: Float>(points: &[(F, F)]) -> F {
    let h: Vec<F> = points.iter().map(|p| p.0).collect();
    let mut p: Vec<F> = points.iter().map(|p| p.1).collect();
    let m = p.len();
    for width in 1..m {
        for i in 0..(m - width) {
            let j = i + width;
            p[i] = (h[i] * p[i + 1] - h[j] * p[i]) / (h[i] - h[j]);
        }
    }
    p[0]
}

/// `c_n = a(n)·n^α/μ^n` for `n = 1..len`, in log space from the exact ratio.
pub fn normalized_sequence<F>(terms: &[BigUint], params: &GrowthParams) -> Result<Vec<(usize, F)>, AsymptoticsError>
where
    F: Float + FloatConst + FromPrimitive,
{
    let alpha: F = params.alpha_f();
    let mut mu_pow = params.mu.clone();
    let mut out = Vec::with_capacity(terms.len().saturating_sub(1));
    for (n, a) in terms.iter().enumerate().skip(1) {
        if a.is_zero() {
            return Err(AsymptoticsError::NonPositiveTerm { index: n });
        }
        let log_c = ln_ratio::<F>(a, &mu_pow) + alpha * F::from_usize(n).unwrap().ln();
        out.push((n, log_c.exp()));
        mu_pow *= &params.mu;
    }
    Ok(out)
}

/// Estimates `C` in `a(n) ~ C μ^n n^{−α}` with the default stride (8).
pub fn estimate_constant<F>(
    terms: &[BigUint],
    params: &GrowthParams,
    levels: usize,
) -> Result<ConstantEstimate<F>, AsymptoticsError>
where
    F: Float + FloatConst + FromPrimitive,
{
    let config = ExtrapolationConfig {
        levels,
        ..ExtrapolationConfig::default()
    };
    estimate_constant_with(terms, params, config)
}

pub fn estimate_constant_with<F>(
    terms: &[BigUint],
    params: &GrowthParams,
    config: ExtrapolationConfig,
) -> Result<ConstantEstimate<F>, AsymptoticsError>
where
    F: Float + FloatConst + FromPrimitive,
{
    if config.levels == 0 {
        return Err(AsymptoticsError::NoLevels);
    }
    if config.stride == 0 {
        return Err(AsymptoticsError::ZeroStride);
    }
    // indices 1..=last must include last − levels·stride ≥ 1
    let need = config.levels * config.stride + 2;
    if terms.len() < need {
        return Err(AsymptoticsError::InsufficientTerms { have: terms.len(), need });
    }
    let normalized = normalized_sequence(terms, params)?;
    let mut est = ConstantEstimate {
        config,
        normalized,
        ladder: Vec::new(),
    };
    let last = terms.len() - 1;
    est.ladder = (1..=config.levels)
        .map(|j| est.level_at(j, last).expect("indices checked above"))
        .collect();
    Ok(est)
}
