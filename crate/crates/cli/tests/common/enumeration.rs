//! Graph families for the bisimulation and decoration oracles.
//!
//! An arena of `n` nodes holds up to two atoms (`a`, `b`, interned, placed
//! first) and set nodes whose member sets are arbitrary subsets of all `n`
//! nodes. Set nodes are generated in nondecreasing out-degree, which loses
//! no arena up to isomorphism. Every pointed graph with at most `n` nodes is
//! the reachable part of some node of some `n`-node arena.

use std::sync::Arc;

use afa_core::hyperset::{coarsest_partition, naive_bisimulation, Arena, ArenaBuilder, AtomLabel, HGraph, NodeId};
use rand::Rng;

const ATOM_SETS: [&[&str]; 4] = [&[], &["a"], &["b"], &["a", "b"]];

pub fn build(atoms: &[&str], masks: &[u32]) -> (Arc<Arena>, Vec<NodeId>) {
    let mut b = ArenaBuilder::new();
    let mut ids: Vec<NodeId> = atoms.iter().map(|l| b.atom(&AtomLabel::meaning(*l).unwrap())).collect();
    ids.extend(masks.iter().map(|_| b.placeholder()));
    let n = ids.len();
    for (k, &mask) in masks.iter().enumerate() {
        let children: Vec<NodeId> = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| ids[j]).collect();
        b.fill(ids[atoms.len() + k], children);
    }
    (b.finish(), ids)
}

/// Calls `f` on every `n`-node arena of the family.
pub fn for_each_arena(n: usize, mut f: impl FnMut(&Arc<Arena>, &[NodeId])) {
    let mut by_degree: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 0..1u32 << n {
        by_degree[mask.count_ones() as usize].push(mask);
    }
    for atoms in ATOM_SETS.iter().filter(|a| a.len() <= n) {
        let sets = n - atoms.len();
        let mut masks = Vec::with_capacity(sets);
        extend(&by_degree, atoms, sets, 0, &mut masks, &mut f);
    }
}

fn extend(
    by_degree: &[Vec<u32>],
    atoms: &[&str],
    sets: usize,
    min_degree: usize,
    masks: &mut Vec<u32>,
    f: &mut impl FnMut(&Arc<Arena>, &[NodeId]),
) {
    if masks.len() == sets {
        let (arena, ids) = build(atoms, masks);
        f(&arena, &ids);
        return;
    }
    for d in min_degree..by_degree.len() {
        for &m in &by_degree[d] {
            masks.push(m);
            extend(by_degree, atoms, sets, d, masks, f);
            masks.pop();
        }
    }
}

pub fn random_arena(rng: &mut impl Rng, n: usize) -> (Arc<Arena>, Vec<NodeId>) {
    let atoms = ATOM_SETS[rng.gen_range(0..ATOM_SETS.len())];
    let atoms = if atoms.len() > n { &atoms[..n] } else { atoms };
    let masks: Vec<u32> = (atoms.len()..n).map(|_| rng.gen_range(0..1u32 << n)).collect();
    build(atoms, &masks)
}

/// A random pointed graph with 1 to `max_nodes` nodes and sparse edges.
pub fn random_graph(rng: &mut impl Rng, max_nodes: usize) -> HGraph {
    let n = rng.gen_range(1..=max_nodes);
    let atoms = ATOM_SETS[rng.gen_range(0..ATOM_SETS.len())];
    let atoms = if atoms.len() > n { &atoms[..n] } else { atoms };
    let masks: Vec<u32> = (atoms.len()..n)
        .map(|_| (0..n).filter(|_| rng.gen_bool(0.3)).fold(0, |m, j| m | 1 << j))
        .collect();
    let (arena, ids) = build(atoms, &masks);
    HGraph::from_parts(arena, ids[rng.gen_range(0..n)])
}

/// Node pairs on which refinement and the naive fixpoint disagree.
pub fn disagreements(arena: &Arena, ids: &[NodeId]) -> usize {
    let block = coarsest_partition(arena);
    let naive = naive_bisimulation(arena);
    let mut bad = 0;
    for (i, &x) in ids.iter().enumerate() {
        for &y in &ids[i + 1..] {
            if (block[x.index()] == block[y.index()]) != naive.contains(x, y) {
                bad += 1;
            }
        }
    }
    bad
}

/// Pairs of well-founded nodes where equal decorations and equal blocks
/// disagree, and the number of such pairs compared.
pub fn decoration_disagreements(arena: &Arc<Arena>, ids: &[NodeId]) -> (usize, usize) {
    let block = coarsest_partition(arena);
    let terms: Vec<_> = ids
        .iter()
        .map(|&id| HGraph::from_parts(arena.clone(), id).decorate().ok())
        .collect();
    let (mut bad, mut compared) = (0, 0);
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            if let (Some(x), Some(y)) = (&terms[i], &terms[j]) {
                compared += 1;
                if (x == y) != (block[ids[i].index()] == block[ids[j].index()]) {
                    bad += 1;
                }
            }
        }
    }
    (bad, compared)
}
