use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use proptest::prelude::*;
use treehaar::tree::{all_portraits, Perm, TruncatedAutomorphism, Vertex};
use treehaar::zoo::{
    check_branching_witness, check_fractal, check_level_transitive, check_pattern_closure, check_self_similar,
    check_super_strongly_fractal, GroupConfig, GroupModel, PatternSpec,
};
use treehaar::Error;

type Aut = TruncatedAutomorphism;

fn model(tag: &str) -> GroupModel {
    GroupModel::from_tag(tag).unwrap()
}

fn set(m: &GroupModel, n: usize) -> HashSet<Aut> {
    m.enumerate(n).unwrap().iter().collect()
}

fn zoo() -> Vec<GroupModel> {
    let mut out: Vec<GroupModel> = ["full-wreath:2", "full-wreath:3", "cyclic-wreath:3", "abelian-level:2", "abelian-level:3", "affine:3", "affine:4", "grigorchuk"]
        .iter()
        .map(|t| model(t))
        .collect();
    let pattern = PatternSpec::new(2, 2, vec!["12(12(),12())".parse().unwrap(), "21(21(),21())".parse().unwrap()]).unwrap();
    out.push(GroupModel::pattern("diagonal", pattern));
    out
}

/// Depths small enough to enumerate quickly.
fn depths(m: &GroupModel) -> std::ops::RangeInclusive<usize> {
    let mut n = 0;
    while n < 4 && m.order(n + 1).map(|o| o <= BigUint::from(40_000u32)).unwrap_or(false) {
        n += 1;
    }
    0..=n
}

#[test]
fn spec_examples() {
    assert_eq!(model("full-wreath:2").enumerate(2).unwrap().len(), 8);
    assert_eq!(model("abelian-level:2").enumerate(2).unwrap().len(), 4);
    assert_eq!(model("affine:3").enumerate(2).unwrap().len(), 162);
    for m in zoo() {
        let q = m.enumerate(0).unwrap();
        assert_eq!(q.len(), 1);
        assert!(q.get(0).is_identity());
    }
    assert!(check_level_transitive(&model("full-wreath:2"), 3).unwrap());
    assert!(check_level_transitive(&model("abelian-level:2"), 3).unwrap());
    let trivial = GroupModel::pattern("trivial", PatternSpec::trivial(2, 1));
    for n in 1..=3 {
        assert!(!check_level_transitive(&trivial, n).unwrap());
    }
    for tag in ["full-wreath:2", "abelian-level:2", "abelian-level:3", "affine:3"] {
        assert!(check_fractal(&model(tag), 1).unwrap(), "{tag}");
        assert!(check_fractal(&model(tag), 2).unwrap(), "{tag}");
    }
    assert!(check_super_strongly_fractal(&model("full-wreath:2"), 2, 2).unwrap());
    assert!(!check_super_strongly_fractal(&model("affine:3"), 1, 1).unwrap());
    assert!(check_super_strongly_fractal(&model("abelian-level:2"), 2, 2).unwrap());
    for n in 1..=4 {
        assert!(check_pattern_closure(&model("full-wreath:2"), 1, n).unwrap());
    }
    for dd in 1..=3 {
        assert!(!check_pattern_closure(&model("abelian-level:2"), dd, dd + 1).unwrap());
    }
    assert!(check_pattern_closure(&model("affine:3"), 2, 3).unwrap());
    assert!(check_pattern_closure(&model("affine:3"), 2, 4).unwrap());
    assert!(check_branching_witness(&model("full-wreath:2"), 1, 2).unwrap());
    assert!(check_branching_witness(&model("full-wreath:2"), 1, 3).unwrap());
    assert!(check_branching_witness(&model("affine:3"), 2, 3).unwrap());
    for dd in [1, 2] {
        assert!(!check_branching_witness(&model("abelian-level:2"), dd, 3).unwrap());
    }
}

#[test]
fn invalid_models() {
    assert!(GroupModel::from_tag("full-wreath:1").is_err());
    assert!(GroupModel::from_tag("abelian-level:4").is_err());
    assert!(GroupModel::from_tag("cyclic-wreath:6").is_err());
    assert!(matches!(GroupModel::from_tag("nosuch:2"), Err(Error::UnknownGroup(_))));
    assert!(matches!(GroupModel::from_tag("grigorchuk").unwrap().with_cap(100).enumerate(3), Err(Error::TooLarge { .. })));
    assert!(matches!(model("full-wreath:2").with_cap(100).enumerate(3), Err(Error::TooLarge { .. })));
}

#[test]
fn quotients_are_subgroups() {
    for m in zoo() {
        for n in depths(&m) {
            let q = set(&m, n);
            assert!(q.contains(&Aut::identity(m.arity(), n)));
            let elems: Vec<&Aut> = q.iter().collect();
            let step = (elems.len() / 60).max(1);
            for g in &elems {
                assert!(q.contains(&g.invert()), "{} {n}", m.id());
            }
            for g in elems.iter().step_by(step) {
                for h in &elems {
                    assert!(q.contains(&g.compose(h).unwrap()), "{} {n}", m.id());
                }
            }
        }
    }
}

#[test]
fn restriction_is_onto_with_equal_fibres() {
    for m in zoo() {
        let range = depths(&m);
        for n in 0..*range.end() {
            let lower = set(&m, n);
            let mut fibres: HashMap<Aut, usize> = HashMap::new();
            for g in m.enumerate(n + 1).unwrap().iter() {
                *fibres.entry(g.project(n).unwrap()).or_default() += 1;
            }
            assert_eq!(fibres.keys().cloned().collect::<HashSet<_>>(), lower, "{} {n}", m.id());
            let sizes: BTreeSet<usize> = fibres.values().copied().collect();
            assert_eq!(sizes.len(), 1, "{} {n}", m.id());
            let kernel = *sizes.iter().next().unwrap();
            assert_eq!(m.order(n + 1).unwrap(), m.order(n).unwrap() * BigUint::from(kernel));
        }
    }
}

#[test]
fn self_similarity() {
    for m in zoo() {
        let range = depths(&m);
        for n in range.clone() {
            if n < *range.end() {
                assert!(check_self_similar(&m, n).unwrap(), "{} {n}", m.id());
            }
            if n == 0 {
                continue;
            }
            let lower = set(&m, n - 1);
            for g in m.enumerate(n).unwrap().iter() {
                for v in Vertex::level_vertices(m.arity(), 1) {
                    assert!(lower.contains(&g.section(&v, n - 1).unwrap()));
                }
            }
        }
    }
}

#[test]
fn super_strong_fractality_table() {
    for tag in ["full-wreath:2", "abelian-level:2", "abelian-level:3"] {
        let g = model(tag);
        for n in 1..=3 {
            for m in 1..=4 - n {
                assert!(check_super_strongly_fractal(&g, n, m).unwrap(), "{tag} {n} {m}");
            }
        }
    }
    let affine = model("affine:3");
    for (n, m) in [(1, 1), (1, 2), (2, 1)] {
        assert!(!check_super_strongly_fractal(&affine, n, m).unwrap(), "{n} {m}");
    }
}

#[test]
fn affine_composition_law() {
    let d = 3;
    let vertices: Vec<Vertex> = (0..=1).flat_map(|l| Vertex::level_vertices(d, l)).collect();
    let build = |a: usize, b: &[usize]| {
        let labels: Vec<Perm> = b
            .iter()
            .map(|&bv| Perm::from_images((0..d).map(|x| ((a * x + bv) % d) as u8).collect()).unwrap())
            .collect();
        Aut::from_labels(d, 2, &labels).unwrap()
    };
    let mut coords = Vec::new();
    for a in [1, 2] {
        for code in 0..81 {
            let b: Vec<usize> = (0..4).map(|i| code / 3usize.pow(i) % 3).collect();
            coords.push((a, b));
        }
    }
    let portraits: Vec<Aut> = coords.iter().map(|(a, b)| build(*a, b)).collect();
    assert_eq!(portraits.iter().collect::<HashSet<_>>(), set(&model("affine:3"), 2).iter().collect());
    for (g, (ag, bg)) in portraits.iter().zip(&coords) {
        for (h, (ah, bh)) in portraits.iter().zip(&coords) {
            let b: Vec<usize> = vertices
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let j = vertices.iter().position(|w| *w == g.act(v).unwrap()).unwrap();
                    (ah * bg[i] + bh[j]) % d
                })
                .collect();
            assert_eq!(g.compose(h).unwrap(), build(ag * ah % d, &b));
        }
    }
}

/// Subgroups of `Aut(T^D)` for `d = 2`, by brute force over subsets.
fn subgroups(depth: usize) -> Vec<Vec<Aut>> {
    let all = all_portraits(2, depth);
    assert!(all.len() <= 8);
    let mut out = Vec::new();
    for mask in 1u32..(1 << all.len()) {
        let s: Vec<Aut> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
        let hs: HashSet<&Aut> = s.iter().collect();
        if hs.contains(&Aut::identity(2, depth)) && s.iter().all(|g| s.iter().all(|h| hs.contains(&g.compose(h).unwrap()))) {
            out.push(s);
        }
    }
    out
}

fn core(p: &[Aut], depth: usize) -> Vec<Aut> {
    let mut cur = p.to_vec();
    loop {
        let tops: HashSet<Aut> = cur.iter().map(|w| w.project(depth - 1).unwrap()).collect();
        let next: Vec<Aut> = cur
            .iter()
            .filter(|w| Vertex::level_vertices(2, 1).iter().all(|c| tops.contains(&w.section(c, depth - 1).unwrap())))
            .cloned()
            .collect();
        if next.len() == cur.len() {
            return next;
        }
        cur = next;
    }
}

fn filtered(p: &[Aut], depth: usize, n: usize) -> HashSet<Aut> {
    let windows: HashSet<&Aut> = p.iter().collect();
    let shallow: HashSet<Aut> = p.iter().filter_map(|w| w.project(n.min(depth)).ok()).collect();
    all_portraits(2, n)
        .into_iter()
        .filter(|g| {
            if n < depth {
                return shallow.contains(g);
            }
            (0..=n - depth).all(|l| Vertex::level_vertices(2, l).iter().all(|v| windows.contains(&g.section(v, depth).unwrap())))
        })
        .collect()
}

#[test]
fn pattern_models_match_filter() {
    for depth in [1, 2] {
        let groups = subgroups(depth);
        assert_eq!(groups.len(), if depth == 1 { 2 } else { 10 });
        for p in groups {
            let c = core(&p, depth);
            let spec = PatternSpec::new(2, depth, p.clone()).unwrap();
            assert_eq!(spec.consistent_core().iter().collect::<HashSet<_>>(), c.iter().collect());
            let g = GroupModel::pattern("p", spec);
            for n in 0..=4 {
                assert_eq!(set(&g, n), filtered(&c, depth, n), "{p:?} {n}");
            }
            assert!(check_pattern_closure(&g, depth, 4).unwrap());
        }
    }
}

#[test]
fn grigorchuk_structure() {
    let g = model("grigorchuk");
    let sizes: Vec<usize> = (1..=4).map(|n| g.enumerate(n).unwrap().len()).collect();
    assert_eq!(sizes, [2, 8, 128, 4096]);
    for n in 1..=3 {
        assert!(check_level_transitive(&g, n).unwrap());
        assert!(check_self_similar(&g, n).unwrap());
    }
    assert!(check_fractal(&g, 2).unwrap());
}

#[test]
fn config_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("affine.json");
    std::fs::write(&path, r#"{"kind": "pattern", "d": 2, "D": 2, "name": "diag", "patterns": ["12(12(),12())", "21(21(),21())"]}"#).unwrap();
    let cfg = GroupConfig::from_file(&path).unwrap();
    let g = cfg.build().unwrap();
    assert_eq!(g.id(), "diag");
    assert_eq!(g.declared_depth(), Some(2));
    let text = serde_json::to_string(&cfg).unwrap();
    assert_eq!(GroupConfig::from_json(&text).unwrap(), cfg);
    assert!(GroupConfig::from_file(&dir.path().join("missing.json")).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coordinate_samples_are_members(tag in prop::sample::select(vec!["full-wreath:3", "cyclic-wreath:5", "abelian-level:3", "affine:5"]), n in 0usize..6, seed in any::<u64>()) {
        let g = model(tag);
        let mut rng = treehaar::haar::SeededRng::new(seed, 0);
        let x = g.sample(n, &mut rng).unwrap();
        prop_assert_eq!(x.depth(), n);
        prop_assert!(g.contains(&x).unwrap());
        prop_assert!(g.contains(&x.invert()).unwrap());
        if n > 0 {
            prop_assert!(g.contains(&x.project(n - 1).unwrap()).unwrap());
            prop_assert!(g.contains(&x.section(&Vertex::level_vertices(g.arity(), 1)[0], n - 1).unwrap()).unwrap());
        }
    }
}
