//! Reduced words, word maps on sampled tuples, and generation probabilities.

mod eval;
mod experiments;
mod generation;
mod reduced;

pub use eval::{
    cousins_along_trajectory, evaluate, trajectory, trajectory_sections, CousinReport, TupleSample,
};
pub use experiments::{
    free_action_experiment, freeness_experiment, ProportionEstimate, WordExperimentKind,
    WordExperimentReport, WordOutcome,
};
pub use generation::{
    count_full_rank_exhaustive, generation_probability_formula, generation_probability_monte_carlo,
    rank_mod_p, GenerationEstimate, GenerationFormula,
};
pub use reduced::{count_reduced_words, enumerate_reduced_words, reduce, ReducedWord};
