use crate::tree::{interior_size, TruncatedAutomorphism};

/// An enumerated congruence quotient `pi_n(G)`: distinct portraits stored
/// contiguously in sorted order, so membership is a binary search.
#[derive(Clone, Debug)]
pub struct Quotient {
    arity: usize,
    depth: usize,
    stride: usize,
    data: Vec<u8>,
}

impl Quotient {
    /// Sorts and deduplicates `data`, a concatenation of flat portraits.
    pub(crate) fn from_flat(arity: usize, depth: usize, data: Vec<u8>) -> Self {
        let stride = interior_size(arity, depth) * arity;
        if stride == 0 {
            return Quotient {
                arity,
                depth,
                stride,
                data: Vec::new(),
            };
        }
        assert_eq!(data.len() % stride, 0);
        let count = data.len() / stride;
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_unstable_by(|&a, &b| {
            data[a * stride..(a + 1) * stride].cmp(&data[b * stride..(b + 1) * stride])
        });
        let mut sorted: Vec<u8> = Vec::with_capacity(data.len());
        let mut last: Option<usize> = None;
        for i in order {
            let rec = &data[i * stride..(i + 1) * stride];
            if let Some(j) = last {
                if &data[j * stride..(j + 1) * stride] == rec {
                    continue;
                }
            }
            sorted.extend_from_slice(rec);
            last = Some(i);
        }
        Quotient {
            arity,
            depth,
            stride,
            data: sorted,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        if self.stride == 0 {
            1
        } else {
            self.data.len() / self.stride
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn flat(&self, i: usize) -> &[u8] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn get(&self, i: usize) -> TruncatedAutomorphism {
        assert!(i < self.len());
        TruncatedAutomorphism::from_flat_unchecked(self.arity, self.depth, self.flat(i).to_vec())
    }

    pub fn iter(&self) -> impl Iterator<Item = TruncatedAutomorphism> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub(crate) fn index_of_flat(&self, labels: &[u8]) -> Option<usize> {
        if self.stride == 0 {
            return if labels.is_empty() { Some(0) } else { None };
        }
        if labels.len() != self.stride {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.flat(mid).cmp(labels) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn index_of(&self, g: &TruncatedAutomorphism) -> Option<usize> {
        if g.arity() != self.arity || g.depth() != self.depth {
            return None;
        }
        self.index_of_flat(g.flat_labels())
    }

    pub fn contains(&self, g: &TruncatedAutomorphism) -> bool {
        self.index_of(g).is_some()
    }
}
