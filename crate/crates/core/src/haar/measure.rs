//! Exact Haar measure on `pi_n(G)`: cone sets, section pushforwards and the
//! kernel of the joint section map.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::SeededRng;
use crate::error::{Error, Result};
use crate::tree::{are_m_cousins, interior_size, level_size, TruncatedAutomorphism, Vertex};
use crate::zoo::{for_each_tuple, GroupModel};

pub fn sample_uniform(
    model: &GroupModel,
    n: usize,
    rng: &mut SeededRng,
) -> Result<TruncatedAutomorphism> {
    model.sample(n, rng)
}

/// `#A / |pi_n(G)|` for a set `A` of depth-`n` elements (duplicates count once).
pub fn cone_measure(
    model: &GroupModel,
    n: usize,
    set: &[TruncatedAutomorphism],
) -> Result<BigRational> {
    let mut distinct = HashSet::new();
    for g in set {
        if g.depth() != n {
            return Err(Error::DepthMismatch(n, g.depth()));
        }
        if !model.contains(g)? {
            return Err(Error::NotAMember(g.to_string()));
        }
        distinct.insert(g);
    }
    Ok(BigRational::new(
        BigUint::from(distinct.len()).into(),
        model.order(n)?.into(),
    ))
}

/// Joint law of `(g|_v^m)_{v in V}` for uniform `g` in `pi_{n+m}(G)`.
///
/// `counts` maps the concatenated flat sections to a multiplicity; all
/// multiplicities share the common factor left out of `total`, so
/// `counts[x] / total` is the exact probability of `x`.
#[derive(Clone, Debug)]
pub struct SectionDistribution {
    pub vertices: Vec<Vertex>,
    pub m: usize,
    pub counts: HashMap<Vec<u8>, u64>,
    pub total: u64,
}

impl SectionDistribution {
    /// Splits a key into the per-vertex sections.
    pub fn split(&self, arity: usize, key: &[u8]) -> Vec<TruncatedAutomorphism> {
        let stride = interior_size(arity, self.m) * arity;
        if stride == 0 {
            return vec![TruncatedAutomorphism::identity(arity, 0); self.vertices.len()];
        }
        key.chunks(stride)
            .map(|c| TruncatedAutomorphism::from_flat_unchecked(arity, self.m, c.to_vec()))
            .collect()
    }

    /// Whether the law is uniform on `pi_m(G)^{#V}`.
    pub fn is_uniform_product(&self, model: &GroupModel) -> Result<bool> {
        let cells = model.order(self.m)?.pow(self.vertices.len() as u32);
        if BigUint::from(self.counts.len()) != cells {
            return Ok(false);
        }
        let mut values = self.counts.values();
        let first = values.next().copied().unwrap_or(0);
        if values.any(|&c| c != first) {
            return Ok(false);
        }
        for key in self.counts.keys() {
            for s in self.split(model.arity(), key) {
                if !model.contains(&s)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn check_vertices(model: &GroupModel, n: usize, vs: &[Vertex]) -> Result<()> {
    let mut seen = HashSet::new();
    for v in vs {
        if v.level() != n {
            return Err(Error::LevelMismatch(n, v.level()));
        }
        v.check_arity(model.arity())?;
        if !seen.insert(v) {
            return Err(Error::InvalidParameters(format!("vertex {v} listed twice")));
        }
    }
    Ok(())
}

/// Exact section law. Coordinate models enumerate only the coordinates the
/// sections depend on (the shared ones and the locals below `V`); the other
/// local coordinates contribute the same factor to every outcome.
pub fn section_distribution(
    model: &GroupModel,
    n: usize,
    m: usize,
    vs: &[Vertex],
) -> Result<SectionDistribution> {
    check_vertices(model, n, vs)?;
    let Some(c) = model.coordinates() else {
        return section_distribution_by_enumeration(model, n, m, vs);
    };
    let d = model.arity();
    let shared_dims = c.shared_dims(n + m);
    let sub = interior_size(d, m);
    let local_dims = vec![c.local_dim(); sub * vs.len()];
    let mut size = BigUint::one();
    for &s in shared_dims.iter().chain(&local_dims) {
        size *= BigUint::from(s);
    }
    if size > BigUint::from(model.cap()) {
        return Err(Error::TooLarge {
            what: format!("{size} relevant coordinate tuples"),
            cap: model.cap(),
        });
    }
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut key = vec![0u8; sub * d * vs.len()];
    let mut total = 0u64;
    for_each_tuple(&shared_dims, |shared| {
        for_each_tuple(&local_dims, |locals| {
            let mut idx = 0;
            for _ in vs {
                for j in 0..m {
                    for _ in 0..level_size(d, j) {
                        c.write_label(shared, n + j, locals[idx], &mut key[idx * d..(idx + 1) * d]);
                        idx += 1;
                    }
                }
            }
            *counts.entry(key.clone()).or_insert(0) += 1;
            total += 1;
        });
    });
    Ok(SectionDistribution {
        vertices: vs.to_vec(),
        m,
        counts,
        total,
    })
}

/// The same law, computed from the enumerated quotient `pi_{n+m}(G)`.
pub fn section_distribution_by_enumeration(
    model: &GroupModel,
    n: usize,
    m: usize,
    vs: &[Vertex],
) -> Result<SectionDistribution> {
    check_vertices(model, n, vs)?;
    let q = model.enumerate(n + m)?;
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    for g in q.iter() {
        let mut key = Vec::new();
        for v in vs {
            key.extend_from_slice(g.section(v, m)?.flat_labels());
        }
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(SectionDistribution {
        vertices: vs.to_vec(),
        m,
        counts,
        total: q.len() as u64,
    })
}

/// Whether the depth-`m` sections at `v` of uniform elements of
/// `pi_{level(v)+m}(G)` are uniform on `pi_m(G)`.
pub fn check_section_measure_preserving(
    model: &GroupModel,
    n: usize,
    m: usize,
    v: &Vertex,
) -> Result<bool> {
    check_vertices(model, n, std::slice::from_ref(v))?;
    if let Some(c) = model.coordinates() {
        let section = label_mixture(c, &c.shared_dims(n + m), n, m, model.arity());
        let target = label_mixture(c, &c.shared_dims(m), 0, m, model.arity());
        if same_proportions(&section, &target) {
            return Ok(true);
        }
    }
    section_distribution(model, n, m, std::slice::from_ref(v))?.is_uniform_product(model)
}

/// Given the shared coordinates, the labels below a vertex are independent,
/// uniform on the per-level label multisets. Collects those multisets with
/// their weights; equal weighted collections give equal section laws.
fn label_mixture(
    c: &crate::zoo::CoordinateSystem,
    shared_dims: &[usize],
    base: usize,
    m: usize,
    d: usize,
) -> HashMap<Vec<Vec<u8>>, u64> {
    let mut out = HashMap::new();
    let mut buf = vec![0u8; d];
    for_each_tuple(shared_dims, |shared| {
        let component: Vec<Vec<u8>> = (0..m)
            .map(|j| {
                let mut labels: Vec<Vec<u8>> = (0..c.local_dim())
                    .map(|loc| {
                        c.write_label(shared, base + j, loc, &mut buf);
                        buf.clone()
                    })
                    .collect();
                labels.sort();
                labels.concat()
            })
            .collect();
        *out.entry(component).or_insert(0) += 1;
    });
    out
}

fn same_proportions<K: Eq + std::hash::Hash>(a: &HashMap<K, u64>, b: &HashMap<K, u64>) -> bool {
    let (ta, tb): (u64, u64) = (a.values().sum(), b.values().sum());
    a.len() == b.len()
        && a.iter().all(|(k, &x)| b.get(k).is_some_and(|&y| x as u128 * tb as u128 == y as u128 * ta as u128))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "lowercase")]
pub enum Precondition {
    /// `n >= D` and no two vertices of `V` are `(D-1)`-cousins.
    Satisfied,
    Violated(String),
    /// The model declares no finite-type depth.
    Undeclared,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    /// Size of the kernel of the joint section map on `pi_{n+m}(St_G(n))`.
    pub observed: BigUint,
    /// `|pi_{n+m}(G)| / (|pi_m(G)|^{#V} |pi_n(G)|)`.
    pub predicted: BigRational,
    pub matches: bool,
    pub precondition: Precondition,
}

fn precondition(model: &GroupModel, n: usize, vs: &[Vertex]) -> Precondition {
    let Some(dd) = model.declared_depth() else {
        return Precondition::Undeclared;
    };
    if n < dd {
        return Precondition::Violated(format!("level {n} is above the pattern depth {dd}"));
    }
    for (i, v) in vs.iter().enumerate() {
        for w in &vs[i + 1..] {
            if are_m_cousins(v, w, dd - 1).unwrap_or(true) {
                return Precondition::Violated(format!("{v} and {w} are {}-cousins", dd - 1));
            }
        }
    }
    Precondition::Satisfied
}

/// Kernel-size identity, refusing inputs that violate the cousin precondition.
pub fn kernel_size_check(
    model: &GroupModel,
    n: usize,
    m: usize,
    vs: &[Vertex],
) -> Result<KernelReport> {
    check_vertices(model, n, vs)?;
    if let Precondition::Violated(_) = precondition(model, n, vs) {
        let dd = model.declared_depth().unwrap_or(1);
        let pair = vs
            .iter()
            .enumerate()
            .flat_map(|(i, v)| vs[i + 1..].iter().map(move |w| (v, w)))
            .find(|(v, w)| are_m_cousins(v, w, dd - 1).unwrap_or(true));
        let (a, b) = match pair {
            Some((v, w)) => (v.to_string(), w.to_string()),
            None => (format!("level {n}"), format!("depth {dd}")),
        };
        return Err(Error::CousinPrecondition(a, b, dd.saturating_sub(1)));
    }
    kernel_size_check_unchecked(model, n, m, vs)
}

/// Kernel-size identity for any `V`, with the precondition status reported
/// instead of enforced (negative controls).
pub fn kernel_size_check_unchecked(
    model: &GroupModel,
    n: usize,
    m: usize,
    vs: &[Vertex],
) -> Result<KernelReport> {
    check_vertices(model, n, vs)?;
    let observed = match model.coordinates() {
        Some(_) => kernel_by_coordinates(model, n, m, vs.len()),
        None => kernel_by_enumeration(model, n, m, vs)?,
    };
    let denominator = model.order(m)?.pow(vs.len() as u32) * model.order(n)?;
    let predicted = BigRational::new(model.order(n + m)?.into(), denominator.into());
    let matches = predicted == BigRational::from_integer(observed.clone().into());
    Ok(KernelReport {
        observed,
        predicted,
        matches,
        precondition: precondition(model, n, vs),
    })
}

/// Counts kernel elements coordinate-wise: labels above level `n` and below
/// `V` must be trivial, the rest are free.
fn kernel_by_coordinates(model: &GroupModel, n: usize, m: usize, count: usize) -> BigUint {
    let c = model.coordinates().expect("coordinate model");
    let d = model.arity();
    let free = BigUint::from(c.local_dim());
    let mut total = BigUint::zero();
    for_each_tuple(&c.shared_dims(n + m), |shared| {
        let mut term = BigUint::one();
        for l in 0..n {
            term *= BigUint::from(c.identity_multiplicity(shared, l)).pow(level_size(d, l) as u32);
        }
        for j in 0..m {
            let id = BigUint::from(c.identity_multiplicity(shared, n + j));
            term *= id.pow((count * level_size(d, j)) as u32);
            term *= free.pow(((level_size(d, n) - count) * level_size(d, j)) as u32);
        }
        total += term;
    });
    total
}

pub(crate) fn kernel_by_enumeration(
    model: &GroupModel,
    n: usize,
    m: usize,
    vs: &[Vertex],
) -> Result<BigUint> {
    let q = model.enumerate(n + m)?;
    let mut count = 0usize;
    for g in q.iter() {
        if g.in_level_stabilizer(n)
            && vs
                .iter()
                .all(|v| g.section(v, m).map(|s| s.is_identity()).unwrap_or(false))
        {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}
