//! Exact counting of words on `{1^r, …, n^r}` that avoid the pattern
//! `12…d`, by the RSK sum `A_{d,r}(n) = Σ f_λ · K_{λ,(r^n)}` over partitions
//! of `rn` with at most `d − 1` rows, plus tooling to test the resulting
//! sequences: a brute-force oracle, recurrence guessing, growth estimation,
//! and the Bessel determinant identity for `r = 1`.
//!
//! Counts are exact [`BigCount`]s. Series arithmetic and growth estimation
//! are generic over their scalar type; the aliases below name the usual
//! choices.

pub mod asymptotics;
pub mod bfile;
pub mod brute;
pub mod gessel;
pub mod holonomy;
pub mod partition;
pub mod series;
pub mod tableau;

pub use num_bigint::BigUint;
pub use num_rational::BigRational;

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Exact series with rational coefficients.
pub type RationalSeries = series::TruncSeries<BigRational>;
/// Floating-point series, for quick numerical experiments.
pub type FloatSeries = series::TruncSeries<f64>;

pub type ConstantEstimateF64 = asymptotics::ConstantEstimate<f64>;
pub type GrowthFitF64 = asymptotics::GrowthFit<f64>;

pub use asymptotics::{conjectured_params, empirical_growth, estimate_constant, GrowthParams};
pub use brute::{brute_count, enumerate_words, longest_strict_increase};
pub use gessel::{gessel_check, gessel_coefficient, GesselReport};
pub use holonomy::{extend, guess, verify, PRecurrence, PolyInt};
pub use partition::{conjugate, is_horizontal_strip, partitions_upto_length, syt_count, Partition};
pub use series::{bessel_i_2x, series_det, SeriesScalar, TruncSeries};
pub use tableau::{advance_layer, avoiders_count, avoiders_sequence, kostka_uniform, AvoiderSequencer, LayerTable};
