//! Named experiments over the group zoo, with seed-stamped JSON reports.

mod config;
mod report;
mod run;

pub use config::{ExperimentConfig, OutputFormat};
pub use report::{Report, EXIT_OK, EXIT_USAGE, EXIT_VERDICT};
pub use run::run;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Accepted values of `mode`; the first is the default when there is one.
    pub modes: &'static [&'static str],
    pub mode_required: bool,
    pub randomized: &'static [&'static str],
    pub description: &'static str,
}

const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "enumerate",
        modes: &[],
        mode_required: false,
        randomized: &[],
        description: "order of the level-n quotient, listing small quotients",
    },
    CatalogEntry {
        name: "checks",
        modes: &["transitive", "fractal", "ssf", "pattern", "branching"],
        mode_required: true,
        randomized: &[],
        description: "structural property check at depth n",
    },
    CatalogEntry {
        name: "sample",
        modes: &[],
        mode_required: false,
        randomized: &[""],
        description: "one Haar-random element of the level-n quotient",
    },
    CatalogEntry {
        name: "cone",
        modes: &[],
        mode_required: false,
        randomized: &[],
        description: "Haar measure of the cylinder set over the given elements",
    },
    CatalogEntry {
        name: "section-mp",
        modes: &[],
        mode_required: false,
        randomized: &[],
        description: "exact uniformity of depth-m sections at level-n vertices",
    },
    CatalogEntry {
        name: "kernel",
        modes: &[],
        mode_required: false,
        randomized: &[],
        description: "kernel size of the joint section map against the predicted quotient",
    },
    CatalogEntry {
        name: "independence",
        modes: &["exact", "chi2"],
        mode_required: false,
        randomized: &["chi2"],
        description: "independence of sections at the given vertices",
    },
    CatalogEntry {
        name: "fpp",
        modes: &["exact", "mc", "curve", "recursion"],
        mode_required: false,
        randomized: &["mc", "curve"],
        description: "fixed-point proportion at level n",
    },
    CatalogEntry {
        name: "freeness",
        modes: &[],
        mode_required: false,
        randomized: &[""],
        description: "search for short words trivial at depth n on random tuples",
    },
    CatalogEntry {
        name: "free-action",
        modes: &[],
        mode_required: false,
        randomized: &[""],
        description: "fixed vertices of word evaluations on random tuples",
    },
    CatalogEntry {
        name: "cousins",
        modes: &[],
        mode_required: false,
        randomized: &[""],
        description: "non-cousin property along a word trajectory",
    },
    CatalogEntry {
        name: "formula",
        modes: &[],
        mode_required: false,
        randomized: &[],
        description: "probability that k random elements of F_p^d generate it",
    },
    CatalogEntry {
        name: "formula-mc",
        modes: &[],
        mode_required: false,
        randomized: &[""],
        description: "Monte Carlo estimate of the generation probability",
    },
];

pub fn list_experiments() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn catalog_entry(name: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name)
}

impl CatalogEntry {
    /// Whether a run in `mode` draws random numbers.
    pub fn is_randomized(&self, mode: Option<&str>) -> bool {
        let mode = mode.unwrap_or("");
        self.randomized.iter().any(|&r| r.is_empty() || r == mode)
    }
}
