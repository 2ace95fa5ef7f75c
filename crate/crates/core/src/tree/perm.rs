//! Permutations of the alphabet `{1..d}` in one-line notation.
//!
//! Images are stored 0-based. Composition follows the right-action
//! convention used everywhere in this crate: `p.then(q)` maps `x` to
//! `q(p(x))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d as u8).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        check_bijection(&images)?;
        Ok(Perm(images))
    }

    /// Builds a permutation from 1-based images, as written in one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(images.len());
        for &x in images {
            if x == 0 || x > images.len() || x > 256 {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            out.push((x - 1) as u8);
        }
        Self::from_images(out)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(check_bijection(&images).is_ok());
        Perm(images)
    }

    /// The cycle `x -> x + 1 mod d`.
    pub fn cycle(d: usize) -> Self {
        Perm((0..d).map(|x| ((x + 1) % d) as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `x -> other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "permutation degree mismatch");
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: usize) -> Perm {
        let mut acc = Perm::identity(self.degree());
        for _ in 0..e {
            acc = acc.then(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn fixed_points(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x == y as usize)
            .count()
    }

    /// All permutations of degree `d` in lexicographic order of their images.
    pub fn all(d: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<u8> = (0..d as u8).collect();
        loop {
            out.push(Perm(current.clone()));
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }
}

pub(crate) fn check_bijection(images: &[u8]) -> Result<()> {
    let mut seen = vec![false; images.len()];
    for &y in images {
        let y = y as usize;
        if y >= images.len() || seen[y] {
            return Err(Error::InvalidPermutation(format!(
                "{:?}",
                images.iter().map(|&v| v as usize + 1).collect::<Vec<_>>()
            )));
        }
        seen[y] = true;
    }
    Ok(())
}

fn next_permutation(xs: &mut [u8]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &y in &self.0 {
            write!(f, "{}", y + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

/// Parses single-digit one-line notation such as `"231"`; degree at most 9.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| c.to_digit(10).map(|x| x as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse(format!("bad permutation {s:?}")))?;
        Perm::from_one_line(&digits)
    }
}
