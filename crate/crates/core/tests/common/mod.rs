#![allow(dead_code)]

use std::collections::BTreeMap;

use afa_core::eqsolver::{EquationSystem, Term};
use afa_core::hyperset::{ArenaBuilder, AtomLabel, HGraph};
use afa_core::langmodel::{LanguageSpec, Str};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn e1() -> LanguageSpec {
    spec_with_cb("R")
}

pub fn e2() -> LanguageSpec {
    spec_with_cb("T")
}

fn spec_with_cb(cb: &str) -> LanguageSpec {
    LanguageSpec::from_parts(
        &["a", "b", "c"],
        &[&["a"], &["b"], &["c"], &["c", "a"], &["c", "b"]],
        &[(&["a"], "P"), (&["b"], "P"), (&["c"], "Q"), (&["c", "a"], "R"), (&["c", "b"], cb)],
    )
    .unwrap()
}

pub fn e3() -> LanguageSpec {
    LanguageSpec::from_parts(&["a"], &[&["a"], &["a", "a"]], &[(&["a"], "P"), (&["a", "a"], "Q")]).unwrap()
}

pub fn s(text: &str) -> Str {
    Str::parse(text).unwrap()
}

pub fn meaning(label: &str) -> AtomLabel {
    AtomLabel::meaning(label).unwrap()
}

/// Node `i` is atom `a` (kind 0), atom `b` (kind 1) or a set whose
/// children are the bits of `mask` below `desc.len()`. Node 0 is the root.
pub fn graph_from_desc(desc: &[(u8, u8)]) -> HGraph {
    let mut b = ArenaBuilder::new();
    let ids: Vec<_> = desc
        .iter()
        .map(|&(kind, _)| match kind {
            0 => b.atom(&meaning("a")),
            1 => b.atom(&meaning("b")),
            _ => b.placeholder(),
        })
        .collect();
    for (i, &(kind, mask)) in desc.iter().enumerate() {
        if kind >= 2 {
            let children = (0..desc.len()).filter(|j| mask >> j & 1 == 1).map(|j| ids[j]);
            b.fill(ids[i], children);
        }
    }
    HGraph::from_parts(b.finish(), ids[0])
}

pub fn random_desc(rng: &mut impl Rng, n: usize) -> Vec<(u8, u8)> {
    (0..n).map(|_| (rng.gen_range(0..5), rng.gen())).collect()
}

fn random_term(rng: &mut ChaCha8Rng, vars: &[String], depth: u32) -> Term {
    let roll = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..4) };
    match roll {
        0 if !vars.is_empty() => Term::var(&vars[rng.gen_range(0..vars.len())]),
        0 | 1 => Term::Atom(meaning(["p", "q"][rng.gen_range(0..2)])),
        2 => Term::Set((0..rng.gen_range(0..4)).map(|_| random_term(rng, vars, depth - 1)).collect()),
        _ => Term::pair(random_term(rng, vars, depth - 1), random_term(rng, vars, depth - 1)),
    }
}

/// A closed system over `X0..Xn-1`. Top-level variable bindings only point
/// to lower indices, so there are no unguarded alias cycles. With
/// `acyclic`, every reference points to a lower index.
pub fn random_system(seed: u64, acyclic: bool) -> EquationSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=6);
    let names: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    let bindings = (0..n).map(|i| {
        let lower = &names[..i];
        let term = loop {
            let scope = if acyclic { lower } else { &names[..] };
            let t = random_term(&mut rng, scope, 3);
            match &t {
                Term::Var(v) if !lower.contains(v) => continue,
                _ => break t,
            }
        };
        (names[i].clone(), term)
    });
    EquationSystem::new(bindings.collect::<BTreeMap<_, _>>()).unwrap()
}
