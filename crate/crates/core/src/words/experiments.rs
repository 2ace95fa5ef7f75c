//! Word-map experiments on sampled tuples: trivial evaluations and fixed vertices.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::reduced::letters_in_order;
use super::{enumerate_reduced_words, ReducedWord, TupleSample};
use crate::error::{Error, Result};
use crate::haar::stats::{proportion_interval, Interval, CONFIDENCE};
use crate::haar::SeededRng;
use crate::tree::TruncatedAutomorphism;
use crate::zoo::GroupModel;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordOutcome {
    pub index: usize,
    pub word: String,
    /// Tuples on which the word evaluates to the identity at depth `n`.
    pub trivial: u64,
    /// Tuples on which the evaluation fixes some level-`n` vertex.
    pub fixes_at_depth: u64,
    /// Fixed vertices at each level `0..=n`, summed over tuples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_curve: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProportionEstimate {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub interval: Interval,
}

impl ProportionEstimate {
    pub fn new(successes: u64, trials: u64) -> Self {
        ProportionEstimate {
            successes,
            trials,
            estimate: successes as f64 / trials as f64,
            interval: proportion_interval(successes, trials, CONFIDENCE),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordExperimentKind {
    Freeness,
    FreeAction,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WordExperimentReport {
    pub kind: WordExperimentKind,
    pub group: String,
    pub k: usize,
    pub max_len: usize,
    pub depth: usize,
    pub samples: u64,
    pub seed: u64,
    pub stream: u64,
    pub word_count: usize,
    /// Tuples with at least one nonempty word evaluating to the identity.
    pub tuples_with_trivial_word: u64,
    /// "consistent at depth n" when no tuple has a trivial word, otherwise
    /// "witness at depth n". Neither says anything about freeness in `G`.
    pub finding: String,
    /// Pairs (tuple, word) whose evaluation fixes a level-`n` vertex.
    pub fixed_at_depth: ProportionEstimate,
    /// Single positive letters `x_1..x_k` fixing a level-`n` vertex; each is
    /// an exact Haar draw.
    pub single_letter: ProportionEstimate,
    /// Per tuple: the first level at which no evaluated word fixes a vertex.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_levels: Option<Vec<Option<usize>>>,
    pub words: Vec<WordOutcome>,
}

impl WordExperimentReport {
    pub fn failure_rate(&self) -> f64 {
        self.tuples_with_trivial_word as f64 / self.samples as f64
    }
}

struct TupleResult {
    trivial: Vec<bool>,
    fixed: Vec<Vec<u32>>,
    single: u64,
}

/// Evaluates every word of the list on one tuple, reusing prefix products.
fn evaluate_all(
    tuple: &TupleSample,
    words: &[ReducedWord],
    index: &HashMap<Vec<i32>, usize>,
    curves: bool,
) -> Result<TupleResult> {
    let max_len = words.last().map(|w| w.len()).unwrap_or(0);
    let alphabet = letters_in_order(tuple.rank());
    let depth = tuple.elements()[0].depth();
    let mut out = TupleResult {
        trivial: vec![false; words.len()],
        fixed: vec![Vec::new(); words.len()],
        single: 0,
    };
    for g in tuple.elements() {
        if g.fixes_vertex_at(depth) {
            out.single += 1;
        }
    }
    let mut record = |letters: &[i32], g: &TruncatedAutomorphism| {
        let i = index[letters];
        out.trivial[i] = g.is_identity();
        out.fixed[i] = if curves {
            g.fixed_counts().into_iter().map(|c| c as u32).collect()
        } else {
            vec![u32::from(g.fixes_vertex_at(depth))]
        };
    };
    let mut stack: Vec<(Vec<i32>, TruncatedAutomorphism)> = Vec::new();
    for &x in alphabet.iter().rev() {
        stack.push((vec![x], tuple.letter(x).clone()));
    }
    while let Some((letters, g)) = stack.pop() {
        record(&letters, &g);
        if letters.len() < max_len {
            let last = *letters.last().expect("nonempty");
            for &x in alphabet.iter().rev() {
                if x == -last {
                    continue;
                }
                let mut next = letters.clone();
                next.push(x);
                stack.push((next, g.compose(tuple.letter(x))?));
            }
        }
    }
    Ok(out)
}

fn run(
    kind: WordExperimentKind,
    model: &GroupModel,
    k: usize,
    max_len: usize,
    n: usize,
    samples: u64,
    rng: &SeededRng,
) -> Result<WordExperimentReport> {
    if k == 0 || max_len == 0 {
        return Err(Error::EmptyWord);
    }
    if samples == 0 {
        return Err(Error::InvalidParameters(
            "at least one tuple is needed".into(),
        ));
    }
    model.ensure_sampler(n)?;
    let curves = kind == WordExperimentKind::FreeAction;
    let words = enumerate_reduced_words(k, max_len);
    let index: HashMap<Vec<i32>, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.letters().to_vec(), i))
        .collect();
    let results: Vec<TupleResult> = (0..samples)
        .into_par_iter()
        .map(|t| {
            let mut r = rng.substream(t);
            let tuple = TupleSample::sample(model, k, n, &mut r)?;
            evaluate_all(&tuple, &words, &index, curves)
        })
        .collect::<Result<_>>()?;

    let mut outcomes: Vec<WordOutcome> = words
        .iter()
        .enumerate()
        .map(|(i, w)| WordOutcome {
            index: i,
            word: w.to_string(),
            trivial: 0,
            fixes_at_depth: 0,
            fixed_curve: curves.then(|| vec![0; n + 1]),
        })
        .collect();
    let mut tuples_with_trivial_word = 0;
    let mut fixed_pairs = 0;
    let mut single = 0;
    let mut empirical = Vec::with_capacity(results.len());
    for res in &results {
        if res.trivial.iter().any(|&t| t) {
            tuples_with_trivial_word += 1;
        }
        single += res.single;
        for (o, (&triv, fixed)) in outcomes.iter_mut().zip(res.trivial.iter().zip(&res.fixed)) {
            o.trivial += u64::from(triv);
            let at_depth = *fixed.last().expect("nonempty") > 0;
            o.fixes_at_depth += u64::from(at_depth);
            fixed_pairs += u64::from(at_depth);
            if let Some(curve) = o.fixed_curve.as_mut() {
                for (c, &f) in curve.iter_mut().zip(fixed) {
                    *c += f as u64;
                }
            }
        }
        if curves {
            empirical.push((1..=n).find(|&l| res.fixed.iter().all(|f| f[l] == 0)));
        }
    }
    let finding = if tuples_with_trivial_word == 0 {
        format!("consistent at depth {n}")
    } else {
        format!("witness at depth {n}")
    };
    Ok(WordExperimentReport {
        kind,
        group: model.id().to_string(),
        k,
        max_len,
        depth: n,
        samples,
        seed: rng.seed(),
        stream: rng.stream(),
        word_count: words.len(),
        tuples_with_trivial_word,
        finding,
        fixed_at_depth: ProportionEstimate::new(fixed_pairs, samples * words.len() as u64),
        single_letter: ProportionEstimate::new(single, samples * k as u64),
        empirical_levels: curves.then_some(empirical),
        words: outcomes,
    })
}

/// Looks for nonempty reduced words of length `<= L` that evaluate to the
/// identity at depth `n` on sampled `k`-tuples.
pub fn freeness_experiment(
    model: &GroupModel,
    k: usize,
    max_len: usize,
    n: usize,
    samples: u64,
    rng: &SeededRng,
) -> Result<WordExperimentReport> {
    run(
        WordExperimentKind::Freeness,
        model,
        k,
        max_len,
        n,
        samples,
        rng,
    )
}

/// Per-level fixed-vertex counts of every word evaluation on sampled tuples.
pub fn free_action_experiment(
    model: &GroupModel,
    k: usize,
    max_len: usize,
    n: usize,
    samples: u64,
    rng: &SeededRng,
) -> Result<WordExperimentReport> {
    run(
        WordExperimentKind::FreeAction,
        model,
        k,
        max_len,
        n,
        samples,
        rng,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::evaluate;

    #[test]
    fn abelian_squares_are_trivial() {
        let g = GroupModel::abelian_level(2).unwrap();
        let r = freeness_experiment(&g, 2, 2, 6, 20, &SeededRng::new(3, 0)).unwrap();
        assert_eq!(r.tuples_with_trivial_word, 20);
        let sq = r.words.iter().find(|w| w.word == "x1 x1").unwrap();
        assert_eq!(sq.trivial, 20);
        assert_eq!(r.finding, "witness at depth 6");
    }

    #[test]
    fn trie_matches_direct_evaluation() {
        let g = GroupModel::full_wreath(2).unwrap();
        let mut rng = SeededRng::new(9, 4);
        let tuple = TupleSample::sample(&g, 2, 4, &mut rng).unwrap();
        let words = enumerate_reduced_words(2, 4);
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.letters().to_vec(), i))
            .collect();
        let res = evaluate_all(&tuple, &words, &index, true).unwrap();
        for (i, w) in words.iter().enumerate() {
            let e = evaluate(w, &tuple).unwrap();
            assert_eq!(res.trivial[i], e.is_identity());
            let expect: Vec<u32> = e.fixed_counts().into_iter().map(|c| c as u32).collect();
            assert_eq!(res.fixed[i], expect);
        }
    }

    #[test]
    fn abelian_commutator_fixes_everything() {
        let g = GroupModel::abelian_level(2).unwrap();
        let r = free_action_experiment(&g, 2, 4, 5, 10, &SeededRng::new(1, 0)).unwrap();
        let c = r
            .words
            .iter()
            .find(|w| w.word == "x1^-1 x2^-1 x1 x2")
            .unwrap();
        assert_eq!(c.trivial, 10);
        assert_eq!(c.fixes_at_depth, 10);
        assert_eq!(c.fixed_curve.as_ref().unwrap()[5], 10 * 32);
    }

    #[test]
    fn empty_words_rejected() {
        let g = GroupModel::full_wreath(2).unwrap();
        assert!(matches!(
            free_action_experiment(&g, 2, 0, 3, 1, &SeededRng::new(0, 0)),
            Err(Error::EmptyWord)
        ));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let g = GroupModel::full_wreath(2).unwrap();
        let rng = SeededRng::new(77, 0);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one
            .install(|| free_action_experiment(&g, 2, 3, 6, 16, &rng))
            .unwrap();
        let b = four
            .install(|| free_action_experiment(&g, 2, 3, 6, 16, &rng))
            .unwrap();
        assert_eq!(a, b);
    }
}
