//! Fixed-point proportions: the measure of elements fixing some level-`n` vertex.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::stats::{proportion_interval, Interval, CONFIDENCE};
use super::{run_blocks, SeededRng};
use crate::error::{Error, Result};
use crate::zoo::{for_each_tuple, GroupModel};

/// Exact proportion of `pi_n(G)` fixing a level-`n` vertex.
///
/// Coordinate models condition on the shared coordinates; the labels are then
/// independent, and the probability that a fixed vertex of level `l` has a
/// fixed descendant at level `n` obeys a one-step recursion in `l`.
pub fn fpp_exact(model: &GroupModel, n: usize) -> Result<BigRational> {
    let Some(c) = model.coordinates() else {
        return fpp_by_enumeration(model, n);
    };
    let d = model.arity();
    let local = c.local_dim();
    let mut buf = vec![0u8; d];
    let mut sum = BigRational::zero();
    let mut tuples = 0u64;
    for_each_tuple(&c.shared_dims(n), |shared| {
        let mut q = BigRational::one();
        for l in (0..n).rev() {
            let miss = BigRational::one() - &q;
            let mut acc = BigRational::zero();
            for loc in 0..local {
                c.write_label(shared, l, loc, &mut buf);
                let fixed = buf
                    .iter()
                    .enumerate()
                    .filter(|&(x, &y)| x == y as usize)
                    .count();
                acc += BigRational::one() - num_traits::pow(miss.clone(), fixed);
            }
            q = acc / BigRational::from_integer(BigInt::from(local));
        }
        sum += q;
        tuples += 1;
    });
    Ok(sum / BigRational::from_integer(BigInt::from(tuples)))
}

/// The same proportion, by counting the enumerated quotient.
pub fn fpp_by_enumeration(model: &GroupModel, n: usize) -> Result<BigRational> {
    let q = model.enumerate(n)?;
    let fixing = q.iter().filter(|g| g.fixes_vertex_at(n)).count();
    Ok(BigRational::new(
        BigUint::from(fixing).into(),
        BigUint::from(q.len()).into(),
    ))
}

/// `fpp_exact` at levels `1..=n`.
pub fn fpp_curve_exact(model: &GroupModel, n: usize) -> Result<Vec<BigRational>> {
    (1..=n).map(|l| fpp_exact(model, l)).collect()
}

/// `f_1 = 1/p`, `f_{k+1} = (1 - (1 - f_k)^p) / p`: the proportion for the
/// iterated wreath product of the cyclic group of order `p`.
pub fn fpp_wreath_recursion(p: usize, n: usize) -> Result<BigRational> {
    if p < 2 || (2..p).any(|i| p % i == 0) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidParameters(
            "the recursion starts at n = 1".into(),
        ));
    }
    let inv_p = BigRational::new(BigInt::one(), BigInt::from(p));
    let mut f = inv_p.clone();
    for _ in 1..n {
        f = &inv_p * (BigRational::one() - num_traits::pow(BigRational::one() - f, p));
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FppLevel {
    pub level: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<Interval>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FppReport {
    pub group: String,
    pub depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stream: Option<u64>,
    pub levels: Vec<FppLevel>,
}

impl FppReport {
    /// Exact values for levels `1..=n`.
    pub fn exact(model: &GroupModel, n: usize) -> Result<Self> {
        let levels = fpp_curve_exact(model, n)?
            .into_iter()
            .enumerate()
            .map(|(i, f)| FppLevel {
                level: i + 1,
                exact: Some(f.to_string()),
                successes: None,
                estimate: None,
                interval: None,
            })
            .collect();
        Ok(FppReport {
            group: model.id().to_string(),
            depth: n,
            samples: None,
            seed: None,
            stream: None,
            levels,
        })
    }

    /// Adds exact values to a Monte Carlo report.
    pub fn with_exact(mut self, exact: &[BigRational]) -> Self {
        for (lvl, f) in self.levels.iter_mut().zip(exact) {
            lvl.exact = Some(f.to_string());
        }
        self
    }

    pub fn level(&self, l: usize) -> Option<&FppLevel> {
        self.levels.iter().find(|x| x.level == l)
    }

    /// `level,exact,estimate,ci_lo,ci_hi`, empty fields where a value is absent.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,exact,estimate,ci_lo,ci_hi\n");
        let opt = |x: Option<f64>| x.map(|v| format!("{v}")).unwrap_or_default();
        for l in &self.levels {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                l.level,
                l.exact.clone().unwrap_or_default(),
                opt(l.estimate),
                opt(l.interval.map(|i| i.lo)),
                opt(l.interval.map(|i| i.hi)),
            ));
        }
        out
    }
}

/// Sampled proportions of elements fixing some vertex at each level `1..=n`,
/// with 99% intervals.
pub fn fpp_monte_carlo(
    model: &GroupModel,
    n: usize,
    samples: u64,
    rng: &SeededRng,
) -> Result<FppReport> {
    if samples == 0 {
        return Err(Error::InvalidParameters(
            "at least one sample is needed".into(),
        ));
    }
    model.ensure_sampler(n)?;
    let partial = run_blocks(samples, rng, |mut r, len| {
        let mut hits = vec![0u64; n + 1];
        for _ in 0..len {
            let g = model.sample(n, &mut r)?;
            for (h, &c) in hits.iter_mut().zip(&g.fixed_counts()) {
                if c > 0 {
                    *h += 1;
                }
            }
        }
        Ok(hits)
    })?;
    let mut hits = vec![0u64; n + 1];
    for block in partial {
        for (h, b) in hits.iter_mut().zip(block) {
            *h += b;
        }
    }
    let levels = (1..=n)
        .map(|l| FppLevel {
            level: l,
            exact: None,
            successes: Some(hits[l]),
            estimate: Some(hits[l] as f64 / samples as f64),
            interval: Some(proportion_interval(hits[l], samples, CONFIDENCE)),
        })
        .collect();
    Ok(FppReport {
        group: model.id().to_string(),
        depth: n,
        samples: Some(samples),
        seed: Some(rng.seed()),
        stream: Some(rng.stream()),
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn full_wreath_values() {
        let g = GroupModel::full_wreath(2).unwrap();
        assert_eq!(fpp_exact(&g, 1).unwrap(), r(1, 2));
        assert_eq!(fpp_exact(&g, 2).unwrap(), r(3, 8));
        assert_eq!(fpp_by_enumeration(&g, 3).unwrap(), r(39, 128));
        assert_eq!(fpp_wreath_recursion(2, 3).unwrap(), r(39, 128));
    }

    #[test]
    fn coordinates_agree_with_enumeration() {
        for tag in [
            "full-wreath:2",
            "full-wreath:3",
            "cyclic-wreath:3",
            "abelian-level:2",
            "abelian-level:3",
            "affine:3",
            "affine:4",
        ] {
            let g = GroupModel::from_tag(tag).unwrap();
            for n in 0..=3 {
                if g.order(n).unwrap() > BigUint::from(400_000u32) {
                    break;
                }
                assert_eq!(
                    fpp_exact(&g, n).unwrap(),
                    fpp_by_enumeration(&g, n).unwrap(),
                    "{tag} {n}"
                );
            }
        }
    }

    #[test]
    fn abelian_and_trivial() {
        let g = GroupModel::abelian_level(2).unwrap();
        for n in 1..=6 {
            assert_eq!(fpp_exact(&g, n).unwrap(), r(1, 1 << n));
        }
        let t = GroupModel::pattern("trivial", crate::zoo::PatternSpec::trivial(2, 1));
        assert_eq!(fpp_exact(&t, 3).unwrap(), r(1, 1));
    }

    #[test]
    fn recursion_is_monotone() {
        // exact denominators double in length each step, so floats beyond 12
        let mut prev = fpp_wreath_recursion(2, 1).unwrap();
        for k in 2..=12 {
            let f = fpp_wreath_recursion(2, k).unwrap();
            assert!(f <= prev);
            prev = f;
        }
        let mut x = 0.5f64;
        for _ in 2..=64 {
            let next = 0.5 * (1.0 - (1.0 - x).powi(2));
            assert!(next <= x);
            x = next;
        }
        assert!(fpp_wreath_recursion(4, 2).is_err());
    }

    #[test]
    fn monte_carlo_covers_exact() {
        let g = GroupModel::full_wreath(2).unwrap();
        let rng = SeededRng::new(5, 0);
        let rep = fpp_monte_carlo(&g, 2, 100_000, &rng).unwrap();
        assert!(rep.level(2).unwrap().interval.unwrap().contains(0.375));
        assert_eq!(rep, fpp_monte_carlo(&g, 2, 100_000, &rng).unwrap());
        let csv = rep.with_exact(&fpp_curve_exact(&g, 2).unwrap()).to_csv();
        assert!(csv.starts_with("level,exact,estimate,ci_lo,ci_hi\n1,1/2,"));
    }
}
