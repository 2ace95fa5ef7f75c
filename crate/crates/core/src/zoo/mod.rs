//! Concrete groups acting on the tree, with exact quotients and samplers.

mod checks;
mod config;
mod coords;
mod pattern;
mod quotient;
mod recursion;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use checks::{
    check_branching_witness, check_fractal, check_level_transitive, check_pattern_closure,
    check_self_similar, check_super_strongly_fractal,
};
pub use config::{GeneratorConfig, GroupConfig};
pub use coords::CoordinateSystem;
pub use pattern::PatternSpec;
pub use quotient::Quotient;
pub use recursion::{GeneratorDef, SectionRef, WreathRecursionSpec};

pub(crate) use coords::for_each_tuple;
pub(crate) use pattern::PatternIndex;

use crate::error::{Error, Result};
use crate::haar::SeededRng;
use crate::tree::TruncatedAutomorphism;

/// Default bound on the number of elements an enumerated quotient may hold.
pub const DEFAULT_CAP: usize = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    FullWreath,
    CyclicWreath,
    AbelianLevel,
    Affine,
    WreathRecursion,
    Pattern,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::FullWreath => "full-wreath",
            FamilyTag::CyclicWreath => "cyclic-wreath",
            FamilyTag::AbelianLevel => "abelian-level",
            FamilyTag::Affine => "affine",
            FamilyTag::WreathRecursion => "wreath-recursion",
            FamilyTag::Pattern => "pattern",
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
enum Source {
    Coords(CoordinateSystem),
    Recursion(WreathRecursionSpec),
    Pattern {
        spec: PatternSpec,
        index: Arc<PatternIndex>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Capabilities {
    pub coordinate_sampler: bool,
    /// Largest depth whose quotient fits under the cap, when it is known
    /// without enumerating (coordinate models).
    pub enumerable_depth: Option<usize>,
}

/// A closed group acting on the `d`-regular tree, seen through its finite quotients.
#[derive(Clone)]
pub struct GroupModel {
    id: String,
    arity: usize,
    family: FamilyTag,
    declared_depth: Option<usize>,
    cap: usize,
    source: Source,
    cache: Arc<Mutex<HashMap<usize, Arc<Quotient>>>>,
}

impl fmt::Debug for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupModel")
            .field("id", &self.id)
            .field("family", &self.family)
            .field("arity", &self.arity)
            .field("declared_depth", &self.declared_depth)
            .finish()
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| p % i != 0)
}

fn check_arity(d: usize) -> Result<()> {
    if !(2..=9).contains(&d) {
        return Err(Error::InvalidParameters(format!("arity {d} outside 2..=9")));
    }
    Ok(())
}

impl GroupModel {
    fn new(
        id: String,
        arity: usize,
        family: FamilyTag,
        declared_depth: Option<usize>,
        source: Source,
    ) -> Self {
        GroupModel {
            id,
            arity,
            family,
            declared_depth,
            cap: DEFAULT_CAP,
            source,
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    /// `Aut(T)` for the `d`-regular tree.
    pub fn full_wreath(d: usize) -> Result<Self> {
        check_arity(d)?;
        Ok(Self::new(
            format!("full-wreath:{d}"),
            d,
            FamilyTag::FullWreath,
            Some(1),
            Source::Coords(CoordinateSystem::full(d)),
        ))
    }

    /// The iterated wreath product of the cyclic group of prime order `p`.
    pub fn cyclic_wreath(p: usize) -> Result<Self> {
        check_arity(p)?;
        if !is_prime(p) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        Ok(Self::new(
            format!("cyclic-wreath:{p}"),
            p,
            FamilyTag::CyclicWreath,
            Some(1),
            Source::Coords(CoordinateSystem::cyclic(p)),
        ))
    }

    /// Labels constant on each level, each a power of the standard `p`-cycle.
    pub fn abelian_level(p: usize) -> Result<Self> {
        check_arity(p)?;
        if !is_prime(p) {
            return Err(Error::InvalidParameters(format!("{p} is not prime")));
        }
        Ok(Self::new(
            format!("abelian-level:{p}"),
            p,
            FamilyTag::AbelianLevel,
            None,
            Source::Coords(CoordinateSystem::abelian_level(p)),
        ))
    }

    /// Labels `x -> a x + b_v` on residues mod `d`, with a common unit `a`.
    pub fn affine(d: usize) -> Result<Self> {
        check_arity(d)?;
        Ok(Self::new(
            format!("affine:{d}"),
            d,
            FamilyTag::Affine,
            Some(2),
            Source::Coords(CoordinateSystem::affine(d)),
        ))
    }

    pub fn wreath_recursion(
        id: &str,
        spec: WreathRecursionSpec,
        declared_depth: Option<usize>,
    ) -> Self {
        let d = spec.arity();
        Self::new(
            id.to_string(),
            d,
            FamilyTag::WreathRecursion,
            declared_depth,
            Source::Recursion(spec),
        )
    }

    pub fn grigorchuk() -> Self {
        Self::wreath_recursion("grigorchuk", WreathRecursionSpec::grigorchuk(), None)
    }

    /// The finite-type group of a pattern set. Windows that cannot occur in
    /// any element are pruned first.
    pub fn pattern(id: &str, spec: PatternSpec) -> Self {
        let core = spec.consistent_core();
        let index = Arc::new(PatternIndex::new(spec.arity(), spec.depth(), &core));
        Self::new(
            id.to_string(),
            spec.arity(),
            FamilyTag::Pattern,
            Some(spec.depth()),
            Source::Pattern { spec, index },
        )
    }

    /// Parses a built-in tag such as `full-wreath:2` or `grigorchuk`.
    pub fn from_tag(tag: &str) -> Result<Self> {
        let tag = tag.trim();
        if tag == "grigorchuk" {
            return Ok(Self::grigorchuk());
        }
        let (kind, param) = tag
            .split_once(':')
            .ok_or_else(|| Error::UnknownGroup(tag.to_string()))?;
        let param: usize = param
            .parse()
            .map_err(|_| Error::UnknownGroup(tag.to_string()))?;
        match kind {
            "full-wreath" => Self::full_wreath(param),
            "cyclic-wreath" => Self::cyclic_wreath(param),
            "abelian-level" => Self::abelian_level(param),
            "affine" => Self::affine(param),
            _ => Err(Error::UnknownGroup(tag.to_string())),
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.cache = Arc::new(Mutex::new(HashMap::new()));
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn family(&self) -> FamilyTag {
        self.family
    }

    /// Finite-type depth `D`, when the model asserts one.
    pub fn declared_depth(&self) -> Option<usize> {
        self.declared_depth
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coordinates(&self) -> Option<&CoordinateSystem> {
        match &self.source {
            Source::Coords(c) => Some(c),
            _ => None,
        }
    }

    pub fn pattern_spec(&self) -> Option<&PatternSpec> {
        match &self.source {
            Source::Pattern { spec, .. } => Some(spec),
            _ => None,
        }
    }

    pub fn capabilities(&self) -> Capabilities {
        match &self.source {
            Source::Coords(c) => {
                let cap = BigUint::from(self.cap);
                let mut n = 0;
                while c.order(n + 1) <= cap {
                    n += 1;
                }
                Capabilities {
                    coordinate_sampler: true,
                    enumerable_depth: Some(n),
                }
            }
            _ => Capabilities {
                coordinate_sampler: false,
                enumerable_depth: None,
            },
        }
    }

    /// `|pi_n(G)|`, without enumerating when the model has coordinates.
    pub fn order(&self, n: usize) -> Result<BigUint> {
        match &self.source {
            Source::Coords(c) => Ok(c.order(n)),
            _ => Ok(BigUint::from(self.enumerate(n)?.len())),
        }
    }

    /// The quotient `pi_n(G)`, computed once per depth and cached.
    pub fn enumerate(&self, n: usize) -> Result<Arc<Quotient>> {
        if let Some(q) = self.cache.lock().expect("cache lock").get(&n) {
            return Ok(q.clone());
        }
        let d = self.arity;
        let data = match &self.source {
            Source::Coords(c) => {
                let order = c.order(n);
                if order > BigUint::from(self.cap) {
                    return Err(Error::TooLarge {
                        what: format!("{} at depth {n} ({order} elements)", self.id),
                        cap: self.cap,
                    });
                }
                let mut data = Vec::with_capacity(
                    order.to_usize().unwrap_or(0) * crate::tree::interior_size(d, n) * d,
                );
                c.for_each(n, |_, _, g| data.extend_from_slice(g.flat_labels()));
                data
            }
            Source::Recursion(spec) => spec.closure(n, self.cap)?,
            Source::Pattern { index, .. } => index.enumerate(n, self.cap)?,
        };
        let q = Arc::new(Quotient::from_flat(d, n, data));
        self.cache.lock().expect("cache lock").insert(n, q.clone());
        Ok(q)
    }

    /// Membership of a portrait in `pi_{depth}(G)`.
    pub fn contains(&self, g: &TruncatedAutomorphism) -> Result<bool> {
        if g.arity() != self.arity {
            return Ok(false);
        }
        match &self.source {
            Source::Coords(c) => Ok(c.contains(g)),
            Source::Pattern { index, .. } => Ok(index.contains(g)),
            Source::Recursion(_) => Ok(self.enumerate(g.depth())?.contains(g)),
        }
    }

    /// An exactly uniform element of `pi_n(G)`: independent uniform
    /// coordinates, or a uniform index into the enumerated quotient.
    pub fn sample(&self, n: usize, rng: &mut SeededRng) -> Result<TruncatedAutomorphism> {
        match &self.source {
            Source::Coords(c) => Ok(c.sample(n, rng)),
            _ => {
                let q = self.enumerate(n).map_err(|e| match e {
                    Error::TooLarge { .. } => {
                        Error::NoSampler(format!("{} at depth {n}: {e}", self.id))
                    }
                    other => other,
                })?;
                Ok(q.get(rng.below(q.len())))
            }
        }
    }

    /// Checks ahead of time that `sample(n, ..)` will succeed.
    pub fn ensure_sampler(&self, n: usize) -> Result<()> {
        match &self.source {
            Source::Coords(_) => Ok(()),
            _ => self.enumerate(n).map(|_| ()).map_err(|e| match e {
                Error::TooLarge { .. } => {
                    Error::NoSampler(format!("{} at depth {n}: {e}", self.id))
                }
                other => other,
            }),
        }
    }
}
