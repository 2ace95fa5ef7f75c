//! Canonical text form of a portrait: depth-first `perm(children...)`.
//!
//! `21(12(),12())` is the depth-2 binary portrait with a swap at the root and
//! trivial labels below. Vertices of the last labelled level print `perm()`.
//! A depth-0 portrait prints as the empty string. Arity is limited to 9 so
//! that every label is a run of single digits.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::perm::Perm;
use crate::tree::portrait::TruncatedAutomorphism;
use crate::tree::vertex::{level_offset, level_size};

fn write_node(g: &TruncatedAutomorphism, level: usize, pos: usize, out: &mut String) {
    let d = g.arity();
    for &y in g.label_at_index(level_offset(d, level) + pos) {
        out.push(char::from(b'1' + y));
    }
    out.push('(');
    if level + 1 < g.depth() {
        for x in 0..d {
            if x > 0 {
                out.push(',');
            }
            write_node(g, level + 1, pos * d + x, out);
        }
    }
    out.push(')');
}

impl fmt::Display for TruncatedAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity() > 9 {
            return Err(fmt::Error);
        }
        let mut s = String::new();
        if self.depth() > 0 {
            write_node(self, 0, 0, &mut s);
        }
        f.write_str(&s)
    }
}

struct Node {
    label: Perm,
    children: Vec<Node>,
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of portrait", self.pos))
    }

    fn node(&mut self) -> Result<Node> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a permutation"));
        }
        let label: Perm = std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()?;
        if self.bytes.get(self.pos) != Some(&b'(') {
            return Err(self.err("expected '('"));
        }
        self.pos += 1;
        let mut children = Vec::new();
        if self.bytes.get(self.pos) != Some(&b')') {
            loop {
                children.push(self.node()?);
                match self.bytes.get(self.pos) {
                    Some(b',') => self.pos += 1,
                    Some(b')') => break,
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
        }
        self.pos += 1;
        Ok(Node { label, children })
    }
}

fn node_depth(node: &Node, d: usize) -> Result<usize> {
    if node.label.degree() != d {
        return Err(Error::Parse(format!(
            "label {} has degree {}, expected {d}",
            node.label,
            node.label.degree()
        )));
    }
    if node.children.is_empty() {
        return Ok(1);
    }
    if node.children.len() != d {
        return Err(Error::Parse(format!(
            "a vertex has {} children, expected {d}",
            node.children.len()
        )));
    }
    let depths = node
        .children
        .iter()
        .map(|c| node_depth(c, d))
        .collect::<Result<Vec<_>>>()?;
    if depths.iter().any(|&x| x != depths[0]) {
        return Err(Error::Parse("subtrees of unequal depth".into()));
    }
    Ok(depths[0] + 1)
}

impl FromStr for TruncatedAutomorphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse(
                "empty portrait; use identity(d, 0) for depth 0".into(),
            ));
        }
        let mut parser = Parser {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let root = parser.node()?;
        if parser.pos != s.len() {
            return Err(parser.err("trailing input"));
        }
        let d = root.label.degree();
        if d < 2 {
            return Err(Error::Parse("arity must be at least 2".into()));
        }
        let n = node_depth(&root, d)?;
        // breadth-first flattening
        let mut flat = vec![0u8; super::vertex::interior_size(d, n) * d];
        let mut level: Vec<&Node> = vec![&root];
        for l in 0..n {
            let off = level_offset(d, l);
            debug_assert_eq!(level.len(), level_size(d, l));
            for (i, node) in level.iter().enumerate() {
                flat[(off + i) * d..(off + i + 1) * d].copy_from_slice(node.label.images());
            }
            level = level.iter().flat_map(|node| node.children.iter()).collect();
        }
        TruncatedAutomorphism::from_flat(d, n, flat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_example() {
        let g: TruncatedAutomorphism = "21(12(),12())".parse().unwrap();
        assert_eq!(g.arity(), 2);
        assert_eq!(g.depth(), 2);
        assert_eq!(g.to_string(), "21(12(),12())");
        assert_eq!(TruncatedAutomorphism::identity(3, 1).to_string(), "123()");
        assert_eq!(TruncatedAutomorphism::identity(2, 0).to_string(), "");
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "",
            "21",
            "21(",
            "21(12())",
            "21(12(),123())",
            "21(12(12(),12()),12())",
            "22()",
            "21()x",
        ] {
            assert!(
                bad.parse::<TruncatedAutomorphism>().is_err(),
                "{bad} should not parse"
            );
        }
    }

    fn arb_portrait() -> impl Strategy<Value = TruncatedAutomorphism> {
        (2usize..=4, 1usize..=3).prop_flat_map(|(d, n)| {
            let count = super::super::vertex::interior_size(d, n);
            let perms = Perm::all(d);
            proptest::collection::vec(0..perms.len(), count).prop_map(move |idx| {
                let labels: Vec<Perm> = idx.iter().map(|&i| perms[i].clone()).collect();
                TruncatedAutomorphism::from_labels(d, n, &labels).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_portrait()) {
            let s = g.to_string();
            let back: TruncatedAutomorphism = s.parse().unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_string(), s);
        }
    }
}
