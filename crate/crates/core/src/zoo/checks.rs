//! Finite-depth checks of structural hypotheses on a group model.

use std::collections::HashSet;

use num_bigint::BigUint;

use super::{GroupModel, PatternIndex};
use crate::error::{Error, Result};
use crate::tree::{Perm, TruncatedAutomorphism, Vertex};

/// Whether `pi_n(G)` acts transitively on level `n`.
pub fn check_level_transitive(model: &GroupModel, n: usize) -> Result<bool> {
    let d = model.arity();
    let target = d.pow(n as u32);
    let q = model.enumerate(n)?;
    let start = Vertex::from_level_index(d, n, 0);
    let mut orbit = HashSet::new();
    for g in q.iter() {
        orbit.insert(g.act(&start)?.level_index(d));
        if orbit.len() == target {
            return Ok(true);
        }
    }
    Ok(orbit.len() == target)
}

/// Whether the depth-`n` sections at level-1 vertices of `pi_{n+1}(G)` lie in `pi_n(G)`.
pub fn check_self_similar(model: &GroupModel, n: usize) -> Result<bool> {
    let q = model.enumerate(n + 1)?;
    for g in q.iter() {
        for x in 0..model.arity() as u8 {
            if !model.contains(&g.section(&Vertex::from_indices(vec![x]), n)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Collects the depth-`m` sections at `v` of the elements of `pi_{level(v)+m}(G)`
/// satisfying `keep`, and compares the set with `pi_m(G)`.
fn sections_cover(
    model: &GroupModel,
    v: &Vertex,
    m: usize,
    keep: impl Fn(&TruncatedAutomorphism) -> bool,
) -> Result<bool> {
    let q = model.enumerate(v.level() + m)?;
    let mut seen: HashSet<TruncatedAutomorphism> = HashSet::new();
    for g in q.iter().filter(|g| keep(g)) {
        seen.insert(g.section(v, m)?);
    }
    if BigUint::from(seen.len()) != model.order(m)? {
        return Ok(false);
    }
    for s in &seen {
        if !model.contains(s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Level-transitive and self-similar at depth `n`, and for every level-1
/// vertex the sections of its stabilizer cover `pi_n(G)`.
pub fn check_fractal(model: &GroupModel, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "fractality is checked at depth n >= 1".into(),
        ));
    }
    if !check_level_transitive(model, n)? || !check_self_similar(model, n)? {
        return Ok(false);
    }
    for x in 0..model.arity() as u8 {
        let v = Vertex::from_indices(vec![x]);
        if !sections_cover(model, &v, n, |g| g.act(&v).map(|w| w == v).unwrap_or(false))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every level-`n` vertex, the depth-`m` sections of the level-`n`
/// stabilizer in `pi_{n+m}(G)` make up all of `pi_m(G)`.
pub fn check_super_strongly_fractal(model: &GroupModel, n: usize, m: usize) -> Result<bool> {
    for v in Vertex::level_vertices(model.arity(), n) {
        if !sections_cover(model, &v, m, |g| g.in_level_stabilizer(n))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every depth-`n` portrait whose depth-`D` windows all lie in
/// `pi_D(G)` belongs to `pi_n(G)`.
///
/// The filtered set is streamed and tested element by element while it fits
/// under the model's cap. Beyond that the check compares exact counts, which
/// additionally asks that `G` be self-similar at depth `D` (so that `pi_n(G)`
/// sits inside the filtered set).
pub fn check_pattern_closure(model: &GroupModel, depth: usize, n: usize) -> Result<bool> {
    if depth == 0 || n < depth {
        return Err(Error::InvalidParameters(format!(
            "pattern closure needs 1 <= D <= n, got D = {depth}, n = {n}"
        )));
    }
    let d = model.arity();
    let windows: Vec<TruncatedAutomorphism> = model.enumerate(depth)?.iter().collect();
    let index = PatternIndex::new(d, depth, &windows);
    let filtered = index.count(n);
    if filtered != model.order(n)? {
        return Ok(false);
    }
    if filtered <= BigUint::from(model.cap()) {
        let data = index.enumerate(n, model.cap())?;
        let stride = crate::tree::interior_size(d, n) * d;
        if stride == 0 {
            return Ok(true);
        }
        for rec in data.chunks(stride) {
            if !model.contains(&TruncatedAutomorphism::from_flat_unchecked(
                d,
                n,
                rec.to_vec(),
            ))? {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        check_self_similar(model, depth)
    }
}

/// Whether every portrait with trivial root label and subtree portraits drawn
/// from `pi_{n-1}(St_G(D-1))` lies in `pi_n(G)`.
pub fn check_branching_witness(model: &GroupModel, depth: usize, n: usize) -> Result<bool> {
    if depth == 0 || n < depth {
        return Err(Error::InvalidParameters(format!(
            "branching witness needs 1 <= D <= n, got D = {depth}, n = {n}"
        )));
    }
    let d = model.arity();
    let k: Vec<TruncatedAutomorphism> = model
        .enumerate(n - 1)?
        .iter()
        .filter(|s| s.in_level_stabilizer(depth - 1))
        .collect();
    let tuples = BigUint::from(k.len()).pow(d as u32);
    if tuples > BigUint::from(model.cap()) {
        return Err(Error::TooLarge {
            what: format!("{tuples} subtree tuples"),
            cap: model.cap(),
        });
    }
    let root = Perm::identity(d);
    let mut ok = true;
    let mut children = vec![k[0].clone(); d];
    super::for_each_tuple(&vec![k.len(); d], |choice| {
        if !ok {
            return;
        }
        for (slot, &c) in children.iter_mut().zip(choice) {
            slot.clone_from(&k[c]);
        }
        let g =
            TruncatedAutomorphism::from_root_and_children(&root, &children).expect("same shape");
        ok = model.contains(&g).unwrap_or(false);
    });
    Ok(ok)
}
