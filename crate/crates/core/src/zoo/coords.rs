//! Coordinate descriptions of the parametric families.
//!
//! An element of depth `n` is a tuple of *shared* coordinates (global or one
//! per level) plus one *local* coordinate per vertex of level `< n`. The label
//! at a vertex depends only on the shared tuple, the vertex level and its own
//! local coordinate, and the coordinate map is a bijection onto `pi_n(G)`.
//! Given the shared tuple, labels at distinct vertices are therefore
//! independent and uniform over their local coordinate, which the exact
//! routines in `haar` exploit.

use num_bigint::BigUint;

use crate::haar::SeededRng;
use crate::tree::{interior_size, level_size, Perm, TruncatedAutomorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum CoordKind {
    /// Any permutation at every vertex; local coordinate is a rank into `Perm::all(d)`.
    Full(Vec<Perm>),
    /// Powers of the `d`-cycle at every vertex.
    Cyclic,
    /// One power of the `d`-cycle per level, shared by the whole level.
    AbelianLevel,
    /// `x -> a x + b_v` with one multiplier `a` (a unit) and a translation per vertex.
    Affine(Vec<u8>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSystem {
    pub(crate) arity: usize,
    pub(crate) kind: CoordKind,
}

impl CoordinateSystem {
    pub(crate) fn full(d: usize) -> Self {
        CoordinateSystem {
            arity: d,
            kind: CoordKind::Full(Perm::all(d)),
        }
    }

    pub(crate) fn cyclic(d: usize) -> Self {
        CoordinateSystem {
            arity: d,
            kind: CoordKind::Cyclic,
        }
    }

    pub(crate) fn abelian_level(d: usize) -> Self {
        CoordinateSystem {
            arity: d,
            kind: CoordKind::AbelianLevel,
        }
    }

    pub(crate) fn affine(d: usize) -> Self {
        let units = (1..d)
            .filter(|&a| gcd(a, d) == 1)
            .map(|a| a as u8)
            .collect();
        CoordinateSystem {
            arity: d,
            kind: CoordKind::Affine(units),
        }
    }

    /// Sizes of the shared coordinates at depth `n`.
    pub fn shared_dims(&self, n: usize) -> Vec<usize> {
        if n == 0 {
            return Vec::new();
        }
        match &self.kind {
            CoordKind::Full(_) | CoordKind::Cyclic => Vec::new(),
            CoordKind::AbelianLevel => vec![self.arity; n],
            CoordKind::Affine(units) => vec![units.len()],
        }
    }

    /// Size of the per-vertex coordinate (1 when labels carry no local freedom).
    pub fn local_dim(&self) -> usize {
        match &self.kind {
            CoordKind::Full(perms) => perms.len(),
            CoordKind::Cyclic | CoordKind::Affine(_) => self.arity,
            CoordKind::AbelianLevel => 1,
        }
    }

    pub(crate) fn write_label(&self, shared: &[usize], level: usize, local: usize, out: &mut [u8]) {
        let d = self.arity;
        match &self.kind {
            CoordKind::Full(perms) => out.copy_from_slice(perms[local].images()),
            CoordKind::Cyclic => {
                for (x, o) in out.iter_mut().enumerate() {
                    *o = ((x + local) % d) as u8;
                }
            }
            CoordKind::AbelianLevel => {
                let e = shared[level];
                for (x, o) in out.iter_mut().enumerate() {
                    *o = ((x + e) % d) as u8;
                }
            }
            CoordKind::Affine(units) => {
                let a = units[shared[0]] as usize;
                for (x, o) in out.iter_mut().enumerate() {
                    *o = ((a * x + local) % d) as u8;
                }
            }
        }
    }

    pub fn label(&self, shared: &[usize], level: usize, local: usize) -> Perm {
        let mut buf = vec![0u8; self.arity];
        self.write_label(shared, level, local, &mut buf);
        Perm::from_images_unchecked(buf)
    }

    /// Number of local values giving the identity label, for a shared tuple and level.
    pub(crate) fn identity_multiplicity(&self, shared: &[usize], level: usize) -> usize {
        let mut buf = vec![0u8; self.arity];
        (0..self.local_dim())
            .filter(|&loc| {
                self.write_label(shared, level, loc, &mut buf);
                buf.iter().enumerate().all(|(x, &y)| x == y as usize)
            })
            .count()
    }

    /// Builds the depth-`n` element with the given coordinates (`locals` in breadth-first order).
    pub fn build(&self, n: usize, shared: &[usize], locals: &[usize]) -> TruncatedAutomorphism {
        let d = self.arity;
        let count = interior_size(d, n);
        assert_eq!(locals.len(), count);
        let mut flat = vec![0u8; count * d];
        let mut idx = 0;
        for level in 0..n {
            for _ in 0..level_size(d, level) {
                self.write_label(
                    shared,
                    level,
                    locals[idx],
                    &mut flat[idx * d..(idx + 1) * d],
                );
                idx += 1;
            }
        }
        TruncatedAutomorphism::from_flat_unchecked(d, n, flat)
    }

    pub fn order(&self, n: usize) -> BigUint {
        let mut acc = BigUint::from(1u32);
        for s in self.shared_dims(n) {
            acc *= BigUint::from(s);
        }
        acc * BigUint::from(self.local_dim()).pow(interior_size(self.arity, n) as u32)
    }

    pub fn sample(&self, n: usize, rng: &mut SeededRng) -> TruncatedAutomorphism {
        let shared: Vec<usize> = self
            .shared_dims(n)
            .into_iter()
            .map(|s| rng.below(s))
            .collect();
        let d = self.arity;
        let local_dim = self.local_dim();
        let mut flat = vec![0u8; interior_size(d, n) * d];
        let mut idx = 0;
        for level in 0..n {
            for _ in 0..level_size(d, level) {
                let loc = if local_dim == 1 {
                    0
                } else {
                    rng.below(local_dim)
                };
                self.write_label(&shared, level, loc, &mut flat[idx * d..(idx + 1) * d]);
                idx += 1;
            }
        }
        TruncatedAutomorphism::from_flat_unchecked(d, n, flat)
    }

    /// Visits every element of depth `n` in coordinate order.
    pub fn for_each(
        &self,
        n: usize,
        mut f: impl FnMut(&[usize], &[usize], &TruncatedAutomorphism),
    ) {
        let shared_dims = self.shared_dims(n);
        let count = interior_size(self.arity, n);
        let local_dims = vec![self.local_dim(); count];
        for_each_tuple(&shared_dims, |shared| {
            for_each_tuple(&local_dims, |locals| {
                let g = self.build(n, shared, locals);
                f(shared, locals, &g);
            });
        });
    }

    /// Parametric membership test, independent of the coordinate map.
    pub fn contains(&self, g: &TruncatedAutomorphism) -> bool {
        let d = self.arity;
        if g.arity() != d {
            return false;
        }
        let shift_of = |lab: &[u8]| -> Option<usize> {
            let k = lab[0] as usize;
            lab.iter()
                .enumerate()
                .all(|(x, &y)| y as usize == (x + k) % d)
                .then_some(k)
        };
        let labels = g.flat_labels();
        match &self.kind {
            CoordKind::Full(_) => true,
            CoordKind::Cyclic => labels.chunks(d).all(|c| shift_of(c).is_some()),
            CoordKind::AbelianLevel => {
                let mut idx = 0;
                for level in 0..g.depth() {
                    let mut level_shift = None;
                    for _ in 0..level_size(d, level) {
                        match (shift_of(&labels[idx * d..(idx + 1) * d]), level_shift) {
                            (None, _) => return false,
                            (Some(k), None) => level_shift = Some(k),
                            (Some(k), Some(j)) if k != j => return false,
                            _ => {}
                        }
                        idx += 1;
                    }
                }
                true
            }
            CoordKind::Affine(_) => {
                let mut common = None;
                for c in labels.chunks(d) {
                    let b = c[0] as usize;
                    let a = (c[1] as usize + d - b) % d;
                    if gcd(a, d) != 1
                        || c.iter()
                            .enumerate()
                            .any(|(x, &y)| y as usize != (a * x + b) % d)
                    {
                        return false;
                    }
                    match common {
                        None => common = Some(a),
                        Some(a0) if a0 != a => return false,
                        _ => {}
                    }
                }
                true
            }
        }
    }
}

/// Calls `f` on every tuple of the mixed-radix space `dims`, last coordinate fastest.
pub(crate) fn for_each_tuple(dims: &[usize], mut f: impl FnMut(&[usize])) {
    if dims.iter().any(|&x| x == 0) {
        return;
    }
    let mut t = vec![0usize; dims.len()];
    loop {
        f(&t);
        let mut k = dims.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            t[k] += 1;
            if t[k] < dims[k] {
                break;
            }
            t[k] = 0;
        }
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
