//! Independence of sections at several vertices, exactly and by chi-square.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::measure::section_distribution;
use super::stats::{chi_square_uniform, ChiSquare};
use super::{run_blocks, SeededRng};
use crate::error::{Error, Result};
use crate::tree::Vertex;
use crate::zoo::GroupModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndependenceMode {
    Exact,
    ChiSquare,
}

/// One outcome of the joint section law: a section per vertex and its probability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JointCell {
    pub sections: Vec<String>,
    pub probability: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndependenceReport {
    pub mode: IndependenceMode,
    pub group: String,
    pub n: usize,
    pub m: usize,
    pub vertices: Vec<String>,
    pub independent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Vec<JointCell>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_square: Option<ChiSquare>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stream: Option<u64>,
}

/// Compares the exact joint law of the sections at `V` with the uniform product law.
pub fn independence_exact(
    model: &GroupModel,
    n: usize,
    m: usize,
    vs: &[Vertex],
) -> Result<IndependenceReport> {
    let dist = section_distribution(model, n, m, vs)?;
    let independent = dist.is_uniform_product(model)?;
    let mut cells: Vec<JointCell> = dist
        .counts
        .iter()
        .map(|(key, &c)| JointCell {
            sections: dist
                .split(model.arity(), key)
                .iter()
                .map(|s| s.to_string())
                .collect(),
            probability: BigRational::new(
                BigUint::from(c).into(),
                BigUint::from(dist.total).into(),
            )
            .to_string(),
        })
        .collect();
    cells.sort_by(|a, b| a.sections.cmp(&b.sections));
    Ok(IndependenceReport {
        mode: IndependenceMode::Exact,
        group: model.id().to_string(),
        n,
        m,
        vertices: vs.iter().map(|v| v.to_string()).collect(),
        independent,
        distribution: Some(cells),
        chi_square: None,
        samples: None,
        alpha: None,
        seed: None,
        stream: None,
    })
}

/// Pearson test of the sampled joint section histogram against the uniform
/// product law on `pi_m(G)^{#V}`.
pub fn independence_chi_square(
    model: &GroupModel,
    n: usize,
    m: usize,
    vs: &[Vertex],
    samples: u64,
    alpha: f64,
    rng: &SeededRng,
) -> Result<IndependenceReport> {
    for v in vs {
        if v.level() != n {
            return Err(Error::LevelMismatch(n, v.level()));
        }
        v.check_arity(model.arity())?;
    }
    let q = model.enumerate(m)?;
    let base = q.len();
    let cells = BigUint::from(base).pow(vs.len() as u32);
    let cells = cells
        .to_usize()
        .filter(|&c| c <= model.cap())
        .ok_or_else(|| Error::TooLarge {
            what: format!("{cells} chi-square cells"),
            cap: model.cap(),
        })?;
    let expected = samples as f64 / cells as f64;
    if expected < super::stats::MIN_EXPECTED {
        return Err(Error::CellCountGuard {
            expected,
            min: super::stats::MIN_EXPECTED,
        });
    }
    model.ensure_sampler(n + m)?;
    let partial = run_blocks(samples, rng, |mut r, len| {
        let mut counts = vec![0u64; cells];
        for _ in 0..len {
            let g = model.sample(n + m, &mut r)?;
            let mut cell = 0usize;
            for v in vs {
                let s = g.section(v, m)?;
                let i = q
                    .index_of(&s)
                    .ok_or_else(|| Error::NotAMember(s.to_string()))?;
                cell = cell * base + i;
            }
            counts[cell] += 1;
        }
        Ok(counts)
    })?;
    let mut counts = vec![0u64; cells];
    for block in partial {
        for (c, b) in counts.iter_mut().zip(block) {
            *c += b;
        }
    }
    let chi = chi_square_uniform(&counts)?;
    Ok(IndependenceReport {
        mode: IndependenceMode::ChiSquare,
        group: model.id().to_string(),
        n,
        m,
        vertices: vs.iter().map(|v| v.to_string()).collect(),
        independent: chi.passes(alpha),
        distribution: None,
        chi_square: Some(chi),
        samples: Some(samples),
        alpha: Some(alpha),
        seed: Some(rng.seed()),
        stream: Some(rng.stream()),
    })
}
