//! Exact arithmetic on truncated automorphisms of the `d`-regular rooted tree.

mod encoding;
mod perm;
mod portrait;
mod vertex;

pub use perm::Perm;
pub use portrait::TruncatedAutomorphism;
pub use vertex::{are_m_cousins, tree_distance, Vertex};

pub(crate) use vertex::{interior_size, level_size};

/// Every element of `Aut(T^n)`, in lexicographic order of the flat labels.
pub fn all_portraits(d: usize, n: usize) -> Vec<TruncatedAutomorphism> {
    let perms = Perm::all(d);
    let count = interior_size(d, n);
    let mut out = Vec::new();
    let mut idx = vec![0usize; count];
    loop {
        let mut flat = Vec::with_capacity(count * d);
        for &i in &idx {
            flat.extend_from_slice(perms[i].images());
        }
        out.push(TruncatedAutomorphism::from_flat_unchecked(d, n, flat));
        let mut k = count;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < perms.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
