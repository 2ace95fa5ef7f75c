//! Probability that `k` uniform vectors of `F_p^d` span it, i.e. that a
//! uniform `k x d` matrix over `F_p` has rank `d`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::experiments::ProportionEstimate;
use crate::error::{Error, Result};
use crate::haar::{run_blocks, SeededRng};
use crate::zoo::for_each_tuple;

fn check_prime(p: usize) -> Result<()> {
    if p < 2 || (2..p).take_while(|i| i * i <= p).any(|i| p % i == 0) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationFormula {
    pub value: BigRational,
    /// Set when `k < d`, where the probability is 0.
    pub k_below_d: bool,
}

/// `prod_{j=0}^{d-1} (1 - p^{-(k-j)})`.
pub fn generation_probability_formula(p: usize, d: usize, k: usize) -> Result<GenerationFormula> {
    check_prime(p)?;
    if k < d {
        return Ok(GenerationFormula {
            value: BigRational::zero(),
            k_below_d: true,
        });
    }
    let mut value = BigRational::one();
    for j in 0..d {
        let q = BigInt::from(p).pow((k - j) as u32);
        value *= BigRational::new(&q - BigInt::one(), q);
    }
    Ok(GenerationFormula {
        value,
        k_below_d: false,
    })
}

/// Rank of a row-major `rows x cols` matrix over `F_p`, by Gaussian elimination.
pub fn rank_mod_p(entries: &mut [u32], rows: usize, cols: usize, p: u32) -> usize {
    let inv = |a: u32| -> u32 {
        // a^(p-2) mod p
        let (mut base, mut e, mut acc) = (a as u64, p as u64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| entries[r * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            entries.swap(rank * cols + j, pivot * cols + j);
        }
        let s = inv(entries[rank * cols + c]);
        for j in 0..cols {
            entries[rank * cols + j] =
                (entries[rank * cols + j] as u64 * s as u64 % p as u64) as u32;
        }
        for r in 0..rows {
            if r != rank && entries[r * cols + c] != 0 {
                let f = entries[r * cols + c] as u64;
                for j in 0..cols {
                    let sub = f * entries[rank * cols + j] as u64 % p as u64;
                    entries[r * cols + j] =
                        ((entries[r * cols + j] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exact count of `k x d` matrices over `F_p` of rank `d`, by listing all of them.
pub fn count_full_rank_exhaustive(p: usize, d: usize, k: usize) -> Result<BigUint> {
    check_prime(p)?;
    let cells = k * d;
    if (p as f64).powi(cells as i32) > 1e7 {
        return Err(Error::TooLarge {
            what: format!("{p}^{cells} matrices"),
            cap: 10_000_000,
        });
    }
    let mut count = 0u64;
    let mut m = vec![0u32; cells];
    for_each_tuple(&vec![p; cells], |t| {
        for (x, &y) in m.iter_mut().zip(t) {
            *x = y as u32;
        }
        if rank_mod_p(&mut m, k, d, p as u32) == d {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenerationEstimate {
    pub p: usize,
    pub d: usize,
    pub k: usize,
    pub transposed: bool,
    pub seed: u64,
    pub stream: u64,
    #[serde(flatten)]
    pub proportion: ProportionEstimate,
}

/// Proportion of sampled `k x d` matrices of rank `d`. Entries are drawn row
/// by row; with `transposed` the same entries are read as a `d x k` matrix.
pub fn generation_probability_monte_carlo(
    p: usize,
    d: usize,
    k: usize,
    samples: u64,
    rng: &SeededRng,
    transposed: bool,
) -> Result<GenerationEstimate> {
    check_prime(p)?;
    if k == 0 || d == 0 || samples == 0 {
        return Err(Error::InvalidParameters(
            "k, d and the sample count must be positive".into(),
        ));
    }
    let hits = run_blocks(samples, rng, |mut r, len| {
        let mut m = vec![0u32; k * d];
        let mut t = vec![0u32; k * d];
        let mut hits = 0u64;
        for _ in 0..len {
            for x in m.iter_mut() {
                *x = r.below(p) as u32;
            }
            let rank = if transposed {
                for i in 0..k {
                    for j in 0..d {
                        t[j * k + i] = m[i * d + j];
                    }
                }
                rank_mod_p(&mut t, d, k, p as u32)
            } else {
                rank_mod_p(&mut m, k, d, p as u32)
            };
            hits += u64::from(rank == d);
        }
        Ok(hits)
    })?;
    Ok(GenerationEstimate {
        p,
        d,
        k,
        transposed,
        seed: rng.seed(),
        stream: rng.stream(),
        proportion: ProportionEstimate::new(hits.into_iter().sum(), samples),
    })
}
