//! Pearson chi-square and binomial confidence intervals. Floating point is
//! confined to this module.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Significance level for every chi-square verdict.
pub const ALPHA: f64 = 0.01;
/// Minimum expected count per chi-square cell.
pub const MIN_EXPECTED: f64 = 5.0;
/// Confidence level of every reported interval.
pub const CONFIDENCE: f64 = 0.99;
/// Below this many successes (or failures) the Wilson interval replaces the normal one.
pub const WILSON_THRESHOLD: u64 = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub df: u64,
    pub p_value: f64,
}

impl ChiSquare {
    pub fn passes(&self, alpha: f64) -> bool {
        self.p_value >= alpha
    }
}

/// Pearson statistic of `counts` against the uniform distribution on `counts.len()` cells.
pub fn chi_square_uniform(counts: &[u64]) -> Result<ChiSquare> {
    let cells = counts.len();
    if cells < 2 {
        return Err(Error::InvalidParameters(
            "chi-square needs at least two cells".into(),
        ));
    }
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / cells as f64;
    if expected < MIN_EXPECTED {
        return Err(Error::CellCountGuard {
            expected,
            min: MIN_EXPECTED,
        });
    }
    let statistic = counts
        .iter()
        .map(|&o| {
            let diff = o as f64 - expected;
            diff * diff / expected
        })
        .sum::<f64>();
    let df = (cells - 1) as u64;
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    Ok(ChiSquare {
        statistic,
        df,
        p_value: dist.sf(statistic),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalMethod {
    Normal,
    Wilson,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub method: IntervalMethod,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

pub fn z_score(confidence: f64) -> f64 {
    Normal::new(0.0, 1.0)
        .unwrap()
        .inverse_cdf(0.5 + confidence / 2.0)
}

/// Two-sided interval for a binomial proportion: normal approximation in the
/// bulk, Wilson score interval when successes or failures are few.
pub fn proportion_interval(successes: u64, trials: u64, confidence: f64) -> Interval {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z = z_score(confidence);
    if successes < WILSON_THRESHOLD || trials - successes < WILSON_THRESHOLD {
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let centre = (p + z2 / (2.0 * n)) / denom;
        let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
        // the exact bounds at p = 0 and p = 1 are 0 and 1
        let lo = if successes == 0 {
            0.0
        } else {
            (centre - half).max(0.0)
        };
        let hi = if successes == trials {
            1.0
        } else {
            (centre + half).min(1.0)
        };
        Interval {
            lo,
            hi,
            method: IntervalMethod::Wilson,
        }
    } else {
        let half = z * (p * (1.0 - p) / n).sqrt();
        Interval {
            lo: (p - half).max(0.0),
            hi: (p + half).min(1.0),
            method: IntervalMethod::Normal,
        }
    }
}
