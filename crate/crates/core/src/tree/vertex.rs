//! Vertices of the `d`-regular rooted tree, as words over `{1..d}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A vertex, stored as its path of 0-based child indices. The empty path is
/// the root. `Display` and `FromStr` use 1-based digits (`"21"`), which
/// limits the text form to `d <= 9`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex {
    path: Vec<u8>,
}

impl Vertex {
    pub fn root() -> Self {
        Vertex { path: Vec::new() }
    }

    /// From 0-based child indices.
    pub fn from_indices(path: Vec<u8>) -> Self {
        Vertex { path }
    }

    /// From 1-based letters, checked against the arity.
    pub fn from_letters(letters: &[usize], d: usize) -> Result<Self> {
        let mut path = Vec::with_capacity(letters.len());
        for &x in letters {
            if x == 0 || x > d {
                return Err(Error::InvalidVertex(format!("letter {x} outside 1..={d}")));
            }
            path.push((x - 1) as u8);
        }
        Ok(Vertex { path })
    }

    /// The `index`-th vertex of `level` in lexicographic order.
    pub fn from_level_index(d: usize, level: usize, mut index: usize) -> Self {
        let mut path = vec![0u8; level];
        for slot in path.iter_mut().rev() {
            *slot = (index % d) as u8;
            index /= d;
        }
        Vertex { path }
    }

    pub fn level(&self) -> usize {
        self.path.len()
    }

    pub fn indices(&self) -> &[u8] {
        &self.path
    }

    /// Position within its level, reading the path as a base-`d` number.
    pub fn level_index(&self, d: usize) -> usize {
        self.path.iter().fold(0, |acc, &x| acc * d + x as usize)
    }

    pub fn child(&self, x: u8) -> Vertex {
        let mut path = self.path.clone();
        path.push(x);
        Vertex { path }
    }

    pub fn concat(&self, other: &Vertex) -> Vertex {
        let mut path = self.path.clone();
        path.extend_from_slice(&other.path);
        Vertex { path }
    }

    pub fn ancestor(&self, level: usize) -> Vertex {
        Vertex {
            path: self.path[..level.min(self.path.len())].to_vec(),
        }
    }

    pub fn check_arity(&self, d: usize) -> Result<()> {
        match self.path.iter().find(|&&x| x as usize >= d) {
            Some(_) => Err(Error::InvalidVertex(format!(
                "{self} has a letter above {d}"
            ))),
            None => Ok(()),
        }
    }

    /// All vertices of a level, in lexicographic order.
    pub fn level_vertices(d: usize, level: usize) -> Vec<Vertex> {
        (0..level_size(d, level))
            .map(|i| Vertex::from_level_index(d, level, i))
            .collect()
    }

    pub fn common_prefix_len(&self, other: &Vertex) -> usize {
        self.path
            .iter()
            .zip(&other.path)
            .take_while(|(a, b)| a == b)
            .count()
    }
}

pub(crate) fn level_size(d: usize, level: usize) -> usize {
    d.checked_pow(level as u32)
        .expect("level size overflows usize")
}

/// Number of vertices of level `< n`, i.e. `(d^n - 1)/(d - 1)`.
pub(crate) fn interior_size(d: usize, n: usize) -> usize {
    (0..n).map(|l| level_size(d, l)).sum()
}

/// Breadth-first index of the first vertex of `level`.
pub(crate) fn level_offset(d: usize, level: usize) -> usize {
    interior_size(d, level)
}

/// Graph distance in the tree: up to the longest common prefix and back down.
pub fn tree_distance(v: &Vertex, w: &Vertex) -> usize {
    v.level() + w.level() - 2 * v.common_prefix_len(w)
}

/// Distinct same-level vertices within distance `2m`. `m = 0` is always false.
pub fn are_m_cousins(v: &Vertex, w: &Vertex, m: usize) -> Result<bool> {
    if v.level() != w.level() {
        return Err(Error::LevelMismatch(v.level(), w.level()));
    }
    Ok(v != w && tree_distance(v, w) <= 2 * m)
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.path {
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({self:?})", self = self.to_string())
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "root" || s == "-" {
            return Ok(Vertex::root());
        }
        let path = s
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(x) if x >= 1 => Some((x - 1) as u8),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidVertex(s.to_string()))?;
        Ok(Vertex { path })
    }
}
