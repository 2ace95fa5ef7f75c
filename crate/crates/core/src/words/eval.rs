use serde::Serialize;

use super::ReducedWord;
use crate::error::{Error, Result};
use crate::haar::SeededRng;
use crate::tree::{are_m_cousins, TruncatedAutomorphism, Vertex};
use crate::zoo::GroupModel;

/// `k` independent uniform elements of `pi_n(G)`, with their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleSample {
    elements: Vec<TruncatedAutomorphism>,
    inverses: Vec<TruncatedAutomorphism>,
    pub seed: Option<u64>,
    pub stream: Option<u64>,
}

impl TupleSample {
    pub fn new(elements: Vec<TruncatedAutomorphism>) -> Result<Self> {
        if let Some(first) = elements.first() {
            for g in &elements[1..] {
                if g.arity() != first.arity() {
                    return Err(Error::ArityMismatch(first.arity(), g.arity()));
                }
                if g.depth() != first.depth() {
                    return Err(Error::DepthMismatch(first.depth(), g.depth()));
                }
            }
        }
        let inverses = elements.iter().map(|g| g.invert()).collect();
        Ok(TupleSample {
            elements,
            inverses,
            seed: None,
            stream: None,
        })
    }

    /// Draws the `k` elements in order from `rng`.
    pub fn sample(model: &GroupModel, k: usize, n: usize, rng: &mut SeededRng) -> Result<Self> {
        let elements = (0..k)
            .map(|_| model.sample(n, rng))
            .collect::<Result<Vec<_>>>()?;
        let mut t = Self::new(elements)?;
        t.seed = Some(rng.seed());
        t.stream = Some(rng.stream());
        Ok(t)
    }

    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[TruncatedAutomorphism] {
        &self.elements
    }

    /// The image of a signed letter.
    pub fn letter(&self, x: i32) -> &TruncatedAutomorphism {
        let i = x.unsigned_abs() as usize - 1;
        if x > 0 {
            &self.elements[i]
        } else {
            &self.inverses[i]
        }
    }

    pub(crate) fn identity(&self) -> Option<TruncatedAutomorphism> {
        self.elements
            .first()
            .map(|g| TruncatedAutomorphism::identity(g.arity(), g.depth()))
    }

    fn check_word(&self, w: &ReducedWord) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                word: w.rank(),
                tuple: self.rank(),
            });
        }
        Ok(())
    }
}

/// The word map: left-to-right product of the letters' images.
pub fn evaluate(word: &ReducedWord, tuple: &TupleSample) -> Result<TruncatedAutomorphism> {
    tuple.check_word(word)?;
    let mut acc = tuple
        .identity()
        .ok_or_else(|| Error::InvalidParameters("empty tuple".into()))?;
    for &x in word.letters() {
        acc = acc.compose(tuple.letter(x))?;
    }
    Ok(acc)
}

/// Trajectory vertices `v, v.w_1, ..., v.w_{l-1}` of the proper prefixes.
pub fn trajectory(word: &ReducedWord, tuple: &TupleSample, v: &Vertex) -> Result<Vec<Vertex>> {
    tuple.check_word(word)?;
    let mut out = Vec::with_capacity(word.len());
    let mut u = v.clone();
    for &x in word.letters() {
        out.push(u.clone());
        u = tuple.letter(x).act(&u)?;
    }
    Ok(out)
}

/// Depth-`m` sections of the successive letters at the trajectory vertices.
/// Their product is the section of the evaluated word at `v`.
pub fn trajectory_sections(
    word: &ReducedWord,
    tuple: &TupleSample,
    v: &Vertex,
    m: usize,
) -> Result<Vec<TruncatedAutomorphism>> {
    let verts = trajectory(word, tuple, v)?;
    word.letters()
        .iter()
        .zip(&verts)
        .map(|(&x, u)| tuple.letter(x).section(u, m))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CousinReport {
    /// Level of the ancestors that must be moved (`level(v) - D + 1`).
    pub level: usize,
    /// Every proper prefix moves the level-`N` ancestor of `v`.
    pub prefixes_move_ancestor: bool,
    /// Every factor `x_{i+1}..x_j` moves the level-`N` ancestor of the
    /// trajectory vertex `v_i`, so the ancestors of the trajectory are
    /// pairwise distinct.
    pub applicable: bool,
    /// No two trajectory vertices are `(D-1)`-cousins.
    pub pairwise_non_cousins: bool,
    pub trajectory: Vec<String>,
}

/// Checks the non-cousin property of the trajectory of `v` under `word`.
pub fn cousins_along_trajectory(
    word: &ReducedWord,
    tuple: &TupleSample,
    v: &Vertex,
    depth: usize,
) -> Result<CousinReport> {
    if depth == 0 || v.level() < depth {
        return Err(Error::InvalidParameters(format!(
            "vertex {v} must lie at level N + D - 1 with N >= 1 (D = {depth})"
        )));
    }
    let level = v.level() + 1 - depth;
    let verts = trajectory(word, tuple, v)?;
    let ancestors: Vec<Vertex> = verts.iter().map(|u| u.ancestor(level)).collect();
    let root_ancestor = v.ancestor(level);
    let prefixes_move_ancestor = ancestors[1.min(ancestors.len())..]
        .iter()
        .all(|a| *a != root_ancestor);
    let applicable = ancestors
        .iter()
        .enumerate()
        .all(|(i, a)| ancestors[i + 1..].iter().all(|b| a != b));
    let mut pairwise_non_cousins = true;
    for (i, a) in verts.iter().enumerate() {
        for b in &verts[i + 1..] {
            if are_m_cousins(a, b, depth - 1)? {
                pairwise_non_cousins = false;
            }
        }
    }
    Ok(CousinReport {
        level,
        prefixes_move_ancestor,
        applicable,
        pairwise_non_cousins,
        trajectory: verts.iter().map(|u| u.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::reduce;

    fn p(s: &str) -> TruncatedAutomorphism {
        s.parse().unwrap()
    }

    fn pair() -> TupleSample {
        TupleSample::new(vec![p("21(12(),12())"), p("12(21(),12())")]).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let t = pair();
        let x1x2 = reduce(&[1, 2], 2).unwrap();
        assert_eq!(evaluate(&x1x2, &t).unwrap(), p("21(12(),21())"));
        assert_eq!(
            evaluate(&reduce(&[1], 2).unwrap(), &t).unwrap(),
            t.elements()[0]
        );
        assert!(evaluate(&ReducedWord::empty(2), &t).unwrap().is_identity());
        assert!(matches!(
            evaluate(&reduce(&[1], 3).unwrap(), &t),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn trajectory_example() {
        let t = pair();
        let w = reduce(&[1, 2], 2).unwrap();
        let secs = trajectory_sections(&w, &t, &"1".parse().unwrap(), 1).unwrap();
        assert_eq!(secs, vec![p("12()"), p("12()")]);
        assert!(
            trajectory_sections(&ReducedWord::empty(2), &t, &"1".parse().unwrap(), 1)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn cousin_examples() {
        let t = pair();
        let w = reduce(&[1, 2], 2).unwrap();
        let r = cousins_along_trajectory(&w, &t, &"12".parse().unwrap(), 1).unwrap();
        assert!(r.applicable && r.prefixes_move_ancestor && r.pairwise_non_cousins);
        // x2 fixes 21
        let w = reduce(&[2, 1], 2).unwrap();
        let r = cousins_along_trajectory(&w, &t, &"21".parse().unwrap(), 1).unwrap();
        assert!(!r.applicable && !r.prefixes_move_ancestor);
    }
}
