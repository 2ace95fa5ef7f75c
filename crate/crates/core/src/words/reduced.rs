use std::fmt;

use crate::error::{Error, Result};

/// A freely reduced word over `x_1..x_k`. Letters are signed 1-based
/// generator indices: `2` is `x_2`, `-2` is `x_2^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    rank: usize,
    letters: Vec<i32>,
}

fn check_letter(x: i32, k: usize) -> Result<()> {
    if x == 0 || x.unsigned_abs() as usize > k {
        return Err(Error::InvalidParameters(format!(
            "letter {x} outside ±1..={k}"
        )));
    }
    Ok(())
}

/// Free reduction of a letter sequence.
pub fn reduce(letters: &[i32], k: usize) -> Result<ReducedWord> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &x in letters {
        check_letter(x, k)?;
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    Ok(ReducedWord {
        rank: k,
        letters: out,
    })
}

/// Position of a letter in the order `x1 < x1^-1 < x2 < x2^-1 < ...`.
#[cfg(test)]
fn letter_rank(x: i32) -> usize {
    2 * (x.unsigned_abs() as usize - 1) + usize::from(x < 0)
}

pub(crate) fn letters_in_order(k: usize) -> Vec<i32> {
    (1..=k as i32).flat_map(|i| [i, -i]).collect()
}

impl ReducedWord {
    pub fn empty(k: usize) -> Self {
        ReducedWord {
            rank: k,
            letters: Vec::new(),
        }
    }

    /// Fails unless `letters` is already reduced.
    pub fn new(letters: Vec<i32>, k: usize) -> Result<Self> {
        let w = reduce(&letters, k)?;
        if w.letters != letters {
            return Err(Error::InvalidParameters(format!(
                "{letters:?} is not freely reduced"
            )));
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reduced product `self * other`.
    pub fn concat(&self, other: &ReducedWord) -> Result<ReducedWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                word: other.rank,
                tuple: self.rank,
            });
        }
        let joined: Vec<i32> = self.letters.iter().chain(&other.letters).copied().collect();
        reduce(&joined, self.rank)
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|x| -x).collect(),
        }
    }

    /// The commutator `[x_i, x_j] = x_i^-1 x_j^-1 x_i x_j`.
    pub fn commutator(i: usize, j: usize, k: usize) -> Result<ReducedWord> {
        let (a, b) = (i as i32, j as i32);
        reduce(&[-a, -b, a, b], k)
    }

    /// The first `i` letters.
    pub fn prefix(&self, i: usize) -> ReducedWord {
        ReducedWord {
            rank: self.rank,
            letters: self.letters[..i].to_vec(),
        }
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (i, &x) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if x > 0 {
                write!(f, "x{x}")?;
            } else {
                write!(f, "x{}^-1", -x)?;
            }
        }
        Ok(())
    }
}

/// All nonempty reduced words of length at most `max_len`, shortest first,
/// then lexicographic with `x1 < x1^-1 < x2 < ...`.
pub fn enumerate_reduced_words(k: usize, max_len: usize) -> Vec<ReducedWord> {
    let alphabet = letters_in_order(k);
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &x in &alphabet {
                if w.last() == Some(&-x) {
                    continue;
                }
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|l| ReducedWord {
            rank: k,
            letters: l.clone(),
        }));
        layer = next;
    }
    out
}

/// `sum_{l=1..L} 2k (2k-1)^(l-1)`.
pub fn count_reduced_words(k: usize, max_len: usize) -> u128 {
    (1..=max_len as u32)
        .map(|l| 2 * k as u128 * (2 * k as u128 - 1).pow(l - 1))
        .sum()
}
