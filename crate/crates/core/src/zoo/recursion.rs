//! Self-similar groups given by wreath recursions `g = perm (s_1, ..., s_d)`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::tree::{Perm, TruncatedAutomorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SectionRef {
    Identity,
    Generator(usize),
    Inverse(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDef {
    pub name: String,
    pub perm: Perm,
    pub sections: Vec<SectionRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathRecursionSpec {
    arity: usize,
    generators: Vec<GeneratorDef>,
}

impl WreathRecursionSpec {
    /// `defs` holds `(name, one-line permutation, section names)`. Section
    /// names are generator names, `name^-1` for inverses, or `e` / `1` / `id`.
    pub fn new(d: usize, defs: &[(&str, Vec<usize>, Vec<&str>)]) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameters(format!("arity {d} < 2")));
        }
        let names: Vec<&str> = defs.iter().map(|(n, _, _)| *n).collect();
        if defs.is_empty() {
            return Err(Error::InvalidParameters("no generators".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if is_identity_name(n) || n.ends_with("^-1") || !seen.insert(*n) {
                return Err(Error::InvalidParameters(format!(
                    "bad or duplicate generator name {n:?}"
                )));
            }
        }
        let resolve = |s: &str| -> Result<SectionRef> {
            let s = s.trim();
            if is_identity_name(s) {
                return Ok(SectionRef::Identity);
            }
            let (base, inverse) = match s.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (s, false),
            };
            let i = names.iter().position(|n| *n == base).ok_or_else(|| {
                Error::InvalidParameters(format!("unresolved section name {s:?}"))
            })?;
            Ok(if inverse {
                SectionRef::Inverse(i)
            } else {
                SectionRef::Generator(i)
            })
        };
        let mut generators = Vec::new();
        for (name, perm, sections) in defs {
            let perm = Perm::from_one_line(perm)?;
            if perm.degree() != d || sections.len() != d {
                return Err(Error::InvalidParameters(format!(
                    "generator {name} does not have arity {d}"
                )));
            }
            let sections = sections
                .iter()
                .map(|s| resolve(s))
                .collect::<Result<Vec<_>>>()?;
            generators.push(GeneratorDef {
                name: name.to_string(),
                perm,
                sections,
            });
        }
        Ok(WreathRecursionSpec {
            arity: d,
            generators,
        })
    }

    /// The first Grigorchuk group: `a = s(e, e)`, `b = (a, c)`, `c = (a, d)`, `d = (e, b)`.
    pub fn grigorchuk() -> Self {
        Self::new(
            2,
            &[
                ("a", vec![2, 1], vec!["e", "e"]),
                ("b", vec![1, 2], vec!["a", "c"]),
                ("c", vec![1, 2], vec!["a", "d"]),
                ("d", vec![1, 2], vec!["e", "b"]),
            ],
        )
        .expect("static definition")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[GeneratorDef] {
        &self.generators
    }

    /// Depth-`n` portraits of all generators, by unfolding the recursion.
    pub fn generator_portraits(&self, n: usize) -> Vec<TruncatedAutomorphism> {
        let mut memo = HashMap::new();
        (0..self.generators.len())
            .map(|i| self.unfold(SectionRef::Generator(i), n, &mut memo))
            .collect()
    }

    fn unfold(
        &self,
        s: SectionRef,
        n: usize,
        memo: &mut HashMap<(SectionRef, usize), TruncatedAutomorphism>,
    ) -> TruncatedAutomorphism {
        if let Some(g) = memo.get(&(s, n)) {
            return g.clone();
        }
        let g = match s {
            _ if n == 0 => TruncatedAutomorphism::identity(self.arity, 0),
            SectionRef::Identity => TruncatedAutomorphism::identity(self.arity, n),
            SectionRef::Inverse(i) => self.unfold(SectionRef::Generator(i), n, memo).invert(),
            SectionRef::Generator(i) => {
                let def = &self.generators[i];
                let children: Vec<_> = def
                    .sections
                    .iter()
                    .map(|&c| self.unfold(c, n - 1, memo))
                    .collect();
                TruncatedAutomorphism::from_root_and_children(&def.perm, &children)
                    .expect("consistent arity")
            }
        };
        memo.insert((s, n), g.clone());
        g
    }

    /// Breadth-first closure of the generator portraits under right multiplication.
    pub(crate) fn closure(&self, n: usize, cap: usize) -> Result<Vec<u8>> {
        let gens = self.generator_portraits(n);
        let identity = TruncatedAutomorphism::identity(self.arity, n);
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut data = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.flat_labels().to_vec());
        data.extend_from_slice(identity.flat_labels());
        queue.push_back(identity);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = g.compose(s)?;
                if seen.insert(h.flat_labels().to_vec()) {
                    if seen.len() > cap {
                        return Err(Error::TooLarge {
                            what: format!("closure at depth {n}"),
                            cap,
                        });
                    }
                    data.extend_from_slice(h.flat_labels());
                    queue.push_back(h);
                }
            }
        }
        Ok(data)
    }
}

fn is_identity_name(s: &str) -> bool {
    matches!(s, "e" | "1" | "id")
}
