//! The Bessel determinant identity for permutations:
//! `Σ_n u_k(n) x^{2n} / n!² = det(I_{|i−j|}(2x))_{k×k}`, where `u_k(n)` counts
//! permutations of `n` with no increasing subsequence longer than `k`, i.e.
//! `A_{k+1,1}(n)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::partition::factorial;
use crate::series::{bessel_matrix, series_det, TruncSeries};
use crate::tableau::avoiders_sequence;

/// The `k × k` Bessel determinant truncated at `x^{2·n_max}`.
pub fn gessel_series(k: usize, n_max: usize) -> TruncSeries<BigRational> {
    assert!(k >= 1, "determinant dimension must be positive");
    series_det(&bessel_matrix(k, 2 * n_max)).expect("Bessel matrix is square with uniform truncation")
}

/// Coefficient of `x^{2n}` in the `k × k` Bessel determinant.
pub fn gessel_coefficient(k: usize, n: usize) -> BigRational {
    gessel_series(k, n).coeff(2 * n).clone()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GesselMismatch {
    pub n: usize,
    /// `n!² · [x^{2n}] det`, exact rational.
    pub from_determinant: BigRational,
    pub from_counting: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GesselReport {
    pub k: usize,
    pub n_max: usize,
    pub mismatches: Vec<GesselMismatch>,
    /// Nonzero coefficients found at odd powers (must be empty).
    pub odd_violations: Vec<usize>,
}

impl GesselReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.odd_violations.is_empty()
    }

    pub fn render(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut out = format!(
            "{verdict} gessel k={} n<={}: n!^2 [x^2n] det(I_|i-j|(2x)) = A_{{{},1}}(n)\n",
            self.k,
            self.n_max,
            self.k + 1
        );
        for m in &self.mismatches {
            out.push_str(&format!(
                "  n={}: determinant gives {}, counting gives {}\n",
                m.n, m.from_determinant, m.from_counting
            ));
        }
        for p in &self.odd_violations {
            out.push_str(&format!("  nonzero coefficient at odd power x^{p}\n"));
        }
        out
    }
}

/// Compares `n!² · [x^{2n}] det` with `A_{k+1,1}(n)` for every `n ≤ n_max`.
pub fn gessel_check(k: usize, n_max: usize) -> GesselReport {
    let det = gessel_series(k, n_max);
    let counts = avoiders_sequence(k + 1, 1, n_max);
    let mismatches = counts
        .into_iter()
        .enumerate()
        .filter_map(|(n, count)| {
            let scaled = det.coeff(2 * n) * BigRational::from_integer(BigInt::from(factorial(n).pow(2)));
            let want = BigRational::from_integer(BigInt::from(count.clone()));
            (scaled != want).then_some(GesselMismatch {
                n,
                from_determinant: scaled,
                from_counting: count,
            })
        })
        .collect();
    let odd_violations = (0..=det.truncation())
        .filter(|p| p % 2 == 1 && !num_traits::Zero::is_zero(det.coeff(*p)))
        .collect();
    GesselReport {
        k,
        n_max,
        mismatches,
        odd_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::brute_count;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn coefficient_examples() {
        for n in 0..6 {
            let f = factorial(n);
            let want = BigRational::new(1.into(), BigInt::from(&f * &f));
            assert_eq!(gessel_coefficient(1, n), want);
        }
        assert_eq!(gessel_coefficient(2, 3), q(5, 36));
        assert_eq!(gessel_coefficient(3, 0), q(1, 1));
    }

    #[test]
    fn check_examples() {
        assert!(gessel_check(1, 10).passed());
        assert!(gessel_check(2, 10).passed());
        let report = gessel_check(3, 8);
        assert!(report.passed(), "{}", report.render());
        assert_eq!(brute_count(4, 1, 4), BigUint::from(23u32));
        let c4 = gessel_coefficient(3, 4) * BigRational::from_integer(BigInt::from(576));
        assert_eq!(c4, q(23, 1));
    }

    #[test]
    fn report_renders_failures() {
        let report = GesselReport {
            k: 2,
            n_max: 3,
            mismatches: vec![GesselMismatch {
                n: 3,
                from_determinant: q(5, 1),
                from_counting: BigUint::from(6u32),
            }],
            odd_violations: vec![],
        };
        assert!(!report.passed());
        assert!(report.render().starts_with("FAIL"));
        assert!(report.render().contains("n=3"));
    }
}
