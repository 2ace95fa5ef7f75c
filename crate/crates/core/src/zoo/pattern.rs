//! Finite-type groups: all automorphisms whose depth-`D` windows lie in a pattern set.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tree::{interior_size, level_size, TruncatedAutomorphism, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSpec {
    arity: usize,
    depth: usize,
    allowed: Vec<TruncatedAutomorphism>,
}

impl PatternSpec {
    /// Checks that `allowed` is a nonempty subgroup of `Aut(T^D)`.
    pub fn new(d: usize, depth: usize, allowed: Vec<TruncatedAutomorphism>) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidParameters(
                "pattern depth must be at least 1".into(),
            ));
        }
        let mut allowed: Vec<_> = allowed
            .into_iter()
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        allowed.sort();
        for p in &allowed {
            if p.arity() != d {
                return Err(Error::ArityMismatch(d, p.arity()));
            }
            if p.depth() != depth {
                return Err(Error::DepthMismatch(depth, p.depth()));
            }
        }
        let set: HashSet<&TruncatedAutomorphism> = allowed.iter().collect();
        if !set.contains(&TruncatedAutomorphism::identity(d, depth)) {
            return Err(Error::InvalidParameters(
                "pattern set must contain the identity".into(),
            ));
        }
        for p in &allowed {
            if !set.contains(&p.invert()) {
                return Err(Error::InvalidParameters(format!(
                    "pattern set is not closed under inversion at {p}"
                )));
            }
            for q in &allowed {
                if !set.contains(&p.compose(q)?) {
                    return Err(Error::InvalidParameters(format!(
                        "pattern set is not closed: {p} * {q}"
                    )));
                }
            }
        }
        Ok(PatternSpec {
            arity: d,
            depth,
            allowed,
        })
    }

    /// The trivial pattern group `{identity}`.
    pub fn trivial(d: usize, depth: usize) -> Self {
        PatternSpec {
            arity: d,
            depth,
            allowed: vec![TruncatedAutomorphism::identity(d, depth)],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn allowed(&self) -> &[TruncatedAutomorphism] {
        &self.allowed
    }

    /// The patterns that occur in some element of the group: repeatedly drops
    /// windows whose child sections are not tops of surviving windows.
    pub fn consistent_core(&self) -> Vec<TruncatedAutomorphism> {
        let d = self.arity;
        let mut current = self.allowed.clone();
        loop {
            let tops: HashSet<TruncatedAutomorphism> = current
                .iter()
                .map(|p| p.project(self.depth - 1).expect("shallower"))
                .collect();
            let next: Vec<_> = current
                .iter()
                .filter(|p| {
                    (0..d as u8).all(|x| {
                        let s = p
                            .section(&Vertex::from_indices(vec![x]), self.depth - 1)
                            .expect("fits");
                        tops.contains(&s)
                    })
                })
                .cloned()
                .collect();
            if next.len() == current.len() {
                return next;
            }
            current = next;
        }
    }
}

/// Precomputed data for enumerating and testing a pattern group.
#[derive(Clone, Debug)]
pub(crate) struct PatternIndex {
    arity: usize,
    depth: usize,
    windows: HashSet<Vec<u8>>,
    /// Top `D-1` levels of a window -> possible bottom levels.
    extensions: BTreeMap<Vec<u8>, Vec<Vec<u8>>>,
}

impl PatternIndex {
    /// Uses the given windows as they are; callers pass a consistent set.
    pub(crate) fn new(d: usize, depth: usize, windows: &[TruncatedAutomorphism]) -> Self {
        let top_len = interior_size(d, depth - 1) * d;
        let mut extensions: BTreeMap<Vec<u8>, Vec<Vec<u8>>> = BTreeMap::new();
        let mut set = HashSet::new();
        for w in windows {
            let flat = w.flat_labels();
            extensions
                .entry(flat[..top_len].to_vec())
                .or_default()
                .push(flat[top_len..].to_vec());
            set.insert(flat.to_vec());
        }
        for v in extensions.values_mut() {
            v.sort();
            v.dedup();
        }
        PatternIndex {
            arity: d,
            depth,
            windows: set,
            extensions,
        }
    }

    pub(crate) fn contains(&self, g: &TruncatedAutomorphism) -> bool {
        let (d, dd) = (self.arity, self.depth);
        if g.arity() != d {
            return false;
        }
        let n = g.depth();
        if n < dd {
            return self.windows.iter().any(|w| {
                TruncatedAutomorphism::from_flat_unchecked(d, dd, w.clone())
                    .project(n)
                    .expect("shallower")
                    == *g
            });
        }
        for level in 0..=n - dd {
            for i in 0..level_size(d, level) {
                let v = Vertex::from_level_index(d, level, i);
                let w = g.section(&v, dd).expect("fits");
                if !self.windows.contains(w.flat_labels()) {
                    return false;
                }
            }
        }
        true
    }

    /// Distinct depth-`n` truncations for `n <= D`.
    fn shallow(&self, n: usize) -> Vec<u8> {
        let len = interior_size(self.arity, n) * self.arity;
        let set: HashSet<&[u8]> = self.windows.iter().map(|w| &w[..len]).collect();
        let mut out = Vec::with_capacity(set.len() * len);
        for w in set {
            out.extend_from_slice(w);
        }
        out
    }

    /// Every depth-`n` portrait whose full windows all lie in the set, as
    /// concatenated flat labels. Fails once more than `cap` are produced.
    pub(crate) fn enumerate(&self, n: usize, cap: usize) -> Result<Vec<u8>> {
        let dd = self.depth;
        let mut data = self.shallow(n.min(dd));
        for depth in dd + 1..=n {
            data = self.extend_level(depth - 1, &data, cap)?;
        }
        Ok(data)
    }

    /// Extends each depth-`r` portrait by one level in every allowed way.
    fn extend_level(&self, r: usize, data: &[u8], cap: usize) -> Result<Vec<u8>> {
        let (d, dd) = (self.arity, self.depth);
        let stride = interior_size(d, r) * d;
        let anchor = r + 1 - dd;
        let anchors = level_size(d, anchor);
        let bottom_block = level_size(d, dd - 1) * d;
        let mut out = Vec::new();
        let mut produced = 0usize;
        let empty: Vec<Vec<u8>> = Vec::new();
        for rec in data.chunks(stride) {
            let g = TruncatedAutomorphism::from_flat_unchecked(d, r, rec.to_vec());
            let options: Vec<&Vec<Vec<u8>>> = (0..anchors)
                .map(|i| {
                    let top = g
                        .section(&Vertex::from_level_index(d, anchor, i), dd - 1)
                        .expect("fits");
                    self.extensions.get(top.flat_labels()).unwrap_or(&empty)
                })
                .collect();
            let dims: Vec<usize> = options.iter().map(|o| o.len()).collect();
            let mut total = 1usize;
            for &x in &dims {
                total = total.saturating_mul(x);
            }
            produced = produced.saturating_add(total);
            if produced > cap {
                return Err(Error::TooLarge {
                    what: format!("pattern quotient at depth {}", r + 1),
                    cap,
                });
            }
            super::coords::for_each_tuple(&dims, |choice| {
                out.extend_from_slice(rec);
                for (i, &c) in choice.iter().enumerate() {
                    debug_assert_eq!(options[i][c].len(), bottom_block);
                    out.extend_from_slice(&options[i][c]);
                }
            });
        }
        Ok(out)
    }

    /// Exact number of depth-`n` portraits whose full windows all lie in the set.
    pub(crate) fn count(&self, n: usize) -> BigUint {
        let (d, dd) = (self.arity, self.depth);
        if n <= dd {
            return BigUint::from(self.shallow(n).len() / (interior_size(d, n) * d).max(1))
                .max(BigUint::one());
        }
        // completions[t] = number of depth-r portraits with top (D-1) part t
        let top_len = interior_size(d, dd - 1) * d;
        let mut completions: BTreeMap<Vec<u8>, BigUint> = self
            .extensions
            .keys()
            .map(|t| (t.clone(), BigUint::one()))
            .collect();
        for _ in dd..=n {
            let mut next = BTreeMap::new();
            for (top, bottoms) in &self.extensions {
                let mut sum = BigUint::zero();
                for b in bottoms {
                    let mut flat = top.clone();
                    flat.extend_from_slice(b);
                    let w = TruncatedAutomorphism::from_flat_unchecked(d, dd, flat);
                    let mut prod = BigUint::one();
                    for x in 0..d as u8 {
                        let child = w
                            .section(&Vertex::from_indices(vec![x]), dd - 1)
                            .expect("fits");
                        debug_assert_eq!(child.flat_labels().len(), top_len);
                        prod *= completions
                            .get(child.flat_labels())
                            .cloned()
                            .unwrap_or_default();
                    }
                    sum += prod;
                }
                next.insert(top.clone(), sum);
            }
            completions = next;
        }
        completions.into_values().sum()
    }
}
