//! Truncated tree automorphisms, stored as portraits.
//!
//! A depth-`n` portrait carries a permutation label at each of the
//! `(d^n - 1)/(d - 1)` vertices of level `< n`, in breadth-first order. The
//! group acts on the right: `v.(gh) = (v.g).h`, and the label of `gh` at `v`
//! is the label of `g` at `v` followed by the label of `h` at `v.g`.

use std::fmt;

use crate::error::{Error, Result};
use crate::tree::perm::{check_bijection, Perm};
use crate::tree::vertex::{interior_size, level_offset, level_size, Vertex};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedAutomorphism {
    arity: usize,
    depth: usize,
    /// `interior_size(arity, depth) * arity` bytes; vertex `i`'s label is
    /// `labels[i*arity..(i+1)*arity]`.
    labels: Vec<u8>,
}

impl TruncatedAutomorphism {
    pub fn identity(d: usize, n: usize) -> Self {
        assert!((2..=256).contains(&d), "arity must be in 2..=256");
        let count = interior_size(d, n);
        let mut labels = Vec::with_capacity(count * d);
        for _ in 0..count {
            labels.extend(0..d as u8);
        }
        TruncatedAutomorphism {
            arity: d,
            depth: n,
            labels,
        }
    }

    /// Builds a portrait from breadth-first labels.
    pub fn from_labels(d: usize, n: usize, labels: &[Perm]) -> Result<Self> {
        let mut flat = Vec::with_capacity(labels.len() * d);
        for p in labels {
            if p.degree() != d {
                return Err(Error::ArityMismatch(d, p.degree()));
            }
            flat.extend_from_slice(p.images());
        }
        Self::from_flat(d, n, flat)
    }

    /// Builds a portrait from concatenated 0-based label images.
    pub fn from_flat(d: usize, n: usize, labels: Vec<u8>) -> Result<Self> {
        if !(2..=256).contains(&d) {
            return Err(Error::InvalidParameters(format!(
                "arity {d} outside 2..=256"
            )));
        }
        let expected = interior_size(d, n) * d;
        if labels.len() != expected {
            return Err(Error::InvalidParameters(format!(
                "{} label bytes for a depth-{n} portrait of arity {d}, expected {expected}",
                labels.len()
            )));
        }
        for chunk in labels.chunks(d) {
            check_bijection(chunk)?;
        }
        let g = TruncatedAutomorphism {
            arity: d,
            depth: n,
            labels,
        };
        debug_assert!(g.level_action_is_bijective());
        Ok(g)
    }

    pub(crate) fn from_flat_unchecked(d: usize, n: usize, labels: Vec<u8>) -> Self {
        debug_assert_eq!(labels.len(), interior_size(d, n) * d);
        TruncatedAutomorphism {
            arity: d,
            depth: n,
            labels,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn flat_labels(&self) -> &[u8] {
        &self.labels
    }

    pub(crate) fn label_at_index(&self, bfs: usize) -> &[u8] {
        &self.labels[bfs * self.arity..(bfs + 1) * self.arity]
    }

    pub fn label(&self, v: &Vertex) -> Result<Perm> {
        if v.level() >= self.depth {
            return Err(Error::TooDeep {
                level: v.level() + 1,
                depth: self.depth,
            });
        }
        v.check_arity(self.arity)?;
        let idx = level_offset(self.arity, v.level()) + v.level_index(self.arity);
        Ok(Perm::from_images_unchecked(
            self.label_at_index(idx).to_vec(),
        ))
    }

    /// Labels in breadth-first order.
    pub fn labels(&self) -> Vec<Perm> {
        self.labels
            .chunks(self.arity)
            .map(|c| Perm::from_images_unchecked(c.to_vec()))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.labels
            .chunks(self.arity)
            .all(|c| c.iter().enumerate().all(|(x, &y)| x == y as usize))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        if self.depth != other.depth {
            return Err(Error::DepthMismatch(self.depth, other.depth));
        }
        Ok(())
    }

    /// For every level `< depth`, the level index of `v.g` for each level index of `v`.
    fn level_images(&self) -> Vec<Vec<usize>> {
        let d = self.arity;
        let mut out = Vec::with_capacity(self.depth);
        let mut current = vec![0usize];
        for level in 0..self.depth {
            let off = level_offset(d, level);
            let mut next = vec![0usize; current.len() * d];
            for (i, &img) in current.iter().enumerate() {
                let lab = self.label_at_index(off + i);
                for x in 0..d {
                    next[i * d + x] = img * d + lab[x] as usize;
                }
            }
            out.push(current);
            current = next;
        }
        out
    }

    fn level_action_is_bijective(&self) -> bool {
        let d = self.arity;
        let mut current = vec![0usize];
        for level in 0..self.depth {
            let off = level_offset(d, level);
            let mut next = vec![0usize; current.len() * d];
            for (i, &img) in current.iter().enumerate() {
                let lab = self.label_at_index(off + i);
                for x in 0..d {
                    next[i * d + x] = img * d + lab[x] as usize;
                }
            }
            let mut seen = vec![false; next.len()];
            for &y in &next {
                if seen[y] {
                    return false;
                }
                seen[y] = true;
            }
            current = next;
        }
        true
    }

    /// The product `gh` (first `g`, then `h`).
    pub fn compose(&self, h: &Self) -> Result<Self> {
        self.check_compatible(h)?;
        let d = self.arity;
        let mut out = vec![0u8; self.labels.len()];
        let mut current = vec![0usize];
        let mut next = Vec::new();
        for level in 0..self.depth {
            let off = level_offset(d, level);
            next.clear();
            next.resize(current.len() * d, 0);
            for (i, &img) in current.iter().enumerate() {
                let g_lab = &self.labels[(off + i) * d..(off + i + 1) * d];
                let h_lab = &h.labels[(off + img) * d..(off + img + 1) * d];
                let dst = &mut out[(off + i) * d..(off + i + 1) * d];
                for x in 0..d {
                    let y = g_lab[x] as usize;
                    dst[x] = h_lab[y];
                    next[i * d + x] = img * d + y;
                }
            }
            std::mem::swap(&mut current, &mut next);
        }
        Ok(TruncatedAutomorphism {
            arity: d,
            depth: self.depth,
            labels: out,
        })
    }

    pub fn invert(&self) -> Self {
        let d = self.arity;
        let mut out = vec![0u8; self.labels.len()];
        for (level, images) in self.level_images().iter().enumerate() {
            let off = level_offset(d, level);
            for (i, &img) in images.iter().enumerate() {
                let lab = self.label_at_index(off + i);
                let dst = &mut out[(off + img) * d..(off + img + 1) * d];
                for x in 0..d {
                    dst[lab[x] as usize] = x as u8;
                }
            }
        }
        TruncatedAutomorphism {
            arity: d,
            depth: self.depth,
            labels: out,
        }
    }

    /// `v.g`, read letter by letter through the labels along the path of `v`.
    pub fn act(&self, v: &Vertex) -> Result<Vertex> {
        if v.level() > self.depth {
            return Err(Error::TooDeep {
                level: v.level(),
                depth: self.depth,
            });
        }
        v.check_arity(self.arity)?;
        let d = self.arity;
        let mut pos = 0usize;
        let mut image = Vec::with_capacity(v.level());
        for (level, &x) in v.indices().iter().enumerate() {
            let lab = self.label_at_index(level_offset(d, level) + pos);
            image.push(lab[x as usize]);
            pos = pos * d + x as usize;
        }
        Ok(Vertex::from_indices(image))
    }

    /// The depth-`m` section at `v`: its label at `w` is this portrait's label at `vw`.
    pub fn section(&self, v: &Vertex, m: usize) -> Result<Self> {
        if v.level() + m > self.depth {
            return Err(Error::TooDeep {
                level: v.level() + m,
                depth: self.depth,
            });
        }
        v.check_arity(self.arity)?;
        let d = self.arity;
        let base = v.level_index(d);
        let mut labels = Vec::with_capacity(interior_size(d, m) * d);
        for j in 0..m {
            let width = level_size(d, j);
            let start = level_offset(d, v.level() + j) + base * width;
            labels.extend_from_slice(&self.labels[start * d..(start + width) * d]);
        }
        Ok(TruncatedAutomorphism {
            arity: d,
            depth: m,
            labels,
        })
    }

    /// Restriction to the first `n` levels.
    pub fn project(&self, n: usize) -> Result<Self> {
        if n > self.depth {
            return Err(Error::TooDeep {
                level: n,
                depth: self.depth,
            });
        }
        let len = interior_size(self.arity, n) * self.arity;
        Ok(TruncatedAutomorphism {
            arity: self.arity,
            depth: n,
            labels: self.labels[..len].to_vec(),
        })
    }

    /// The portrait with the given root label and subtree portraits (one per child).
    pub fn from_root_and_children(root: &Perm, children: &[Self]) -> Result<Self> {
        let d = root.degree();
        if children.len() != d {
            return Err(Error::ArityMismatch(d, children.len()));
        }
        let m = children[0].depth;
        for c in children {
            if c.arity != d {
                return Err(Error::ArityMismatch(d, c.arity));
            }
            if c.depth != m {
                return Err(Error::DepthMismatch(m, c.depth));
            }
        }
        let mut labels = Vec::with_capacity(interior_size(d, m + 1) * d);
        labels.extend_from_slice(root.images());
        for j in 0..m {
            let width = level_size(d, j);
            let off = level_offset(d, j);
            for c in children {
                labels.extend_from_slice(&c.labels[off * d..(off + width) * d]);
            }
        }
        Ok(TruncatedAutomorphism {
            arity: d,
            depth: m + 1,
            labels,
        })
    }

    /// Vertices of level `level` fixed by this automorphism, in lexicographic order.
    pub fn fixed_vertices_at_level(&self, level: usize) -> Result<Vec<Vertex>> {
        if level > self.depth {
            return Err(Error::TooDeep {
                level,
                depth: self.depth,
            });
        }
        let d = self.arity;
        let mut fixed = vec![0usize];
        for l in 0..level {
            let off = level_offset(d, l);
            let mut next = Vec::new();
            for &i in &fixed {
                let lab = self.label_at_index(off + i);
                for x in 0..d {
                    if lab[x] as usize == x {
                        next.push(i * d + x);
                    }
                }
            }
            fixed = next;
        }
        Ok(fixed
            .into_iter()
            .map(|i| Vertex::from_level_index(d, level, i))
            .collect())
    }

    /// Number of fixed vertices at each level `0..=depth`.
    pub fn fixed_counts(&self) -> Vec<usize> {
        let d = self.arity;
        let mut counts = Vec::with_capacity(self.depth + 1);
        let mut fixed = vec![0usize];
        counts.push(1);
        for l in 0..self.depth {
            let off = level_offset(d, l);
            let mut next = Vec::new();
            for &i in &fixed {
                let lab = self.label_at_index(off + i);
                for x in 0..d {
                    if lab[x] as usize == x {
                        next.push(i * d + x);
                    }
                }
            }
            counts.push(next.len());
            fixed = next;
        }
        counts
    }

    /// Whether some vertex of level `level` is fixed (depth-first, stops at the first one).
    pub fn fixes_vertex_at(&self, level: usize) -> bool {
        assert!(level <= self.depth);
        fn go(g: &TruncatedAutomorphism, l: usize, pos: usize, target: usize) -> bool {
            if l == target {
                return true;
            }
            let d = g.arity;
            let lab = g.label_at_index(level_offset(d, l) + pos);
            (0..d).any(|x| lab[x] as usize == x && go(g, l + 1, pos * d + x, target))
        }
        go(self, 0, 0, level)
    }

    /// Whether every vertex of level `n` is fixed (all labels above level `n` trivial).
    pub fn in_level_stabilizer(&self, n: usize) -> bool {
        let d = self.arity;
        let end = interior_size(d, n.min(self.depth)) * d;
        self.labels[..end]
            .chunks(d)
            .all(|c| c.iter().enumerate().all(|(x, &y)| x == y as usize))
    }
}

impl fmt::Debug for TruncatedAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncatedAutomorphism(d={}, n={}, {self})",
            self.arity, self.depth
        )
    }
}
