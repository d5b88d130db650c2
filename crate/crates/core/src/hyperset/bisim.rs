//! Coinductive equality of graphs.
//!
//! [`coarsest_partition`] is the production path: naive iterated splitting,
//! starting from one block per atom label plus one block holding every set
//! node, and splitting set nodes by the set of blocks of their members until
//! the block count stops growing. [`naive_bisimulation`] computes the same
//! relation as a greatest fixpoint over node pairs and is kept only as an
//! independent oracle.

use std::collections::HashMap;
use std::sync::Arc;

use super::graph::{Arena, ArenaBuilder, AtomLabel, HGraph, Node, NodeId};

/// Block index of every node of `arena` under the greatest bisimulation.
/// Blocks are ranked by signature: atoms by label first, then sets ordered
/// by their member blocks. The relative order of two nodes depends only on
/// what they reach, so quotients built from it are canonical.
pub fn coarsest_partition(arena: &Arena) -> Vec<u32> {
    let mut labels: Vec<&AtomLabel> = arena
        .nodes()
        .iter()
        .filter_map(|node| match node {
            Node::Atom(a) => Some(a),
            Node::Set(_) => None,
        })
        .collect();
    labels.sort_unstable();
    labels.dedup();
    let mut block: Vec<u32> = arena
        .nodes()
        .iter()
        .map(|node| match node {
            Node::Atom(a) => labels.binary_search(&a).expect("collected") as u32,
            Node::Set(_) => labels.len() as u32,
        })
        .collect();
    let mut count = block.iter().collect::<std::collections::BTreeSet<_>>().len();

    loop {
        let signatures: Vec<(u32, Vec<u32>)> = arena
            .nodes()
            .iter()
            .enumerate()
            .map(|(i, node)| {
                let mut kids: Vec<u32> = node.children().iter().map(|c| block[c.index()]).collect();
                kids.sort_unstable();
                kids.dedup();
                (block[i], kids)
            })
            .collect();
        let mut ranked: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        ranked.sort_unstable();
        ranked.dedup();
        block = signatures
            .iter()
            .map(|s| ranked.binary_search(&s).expect("collected") as u32)
            .collect();
        if ranked.len() == count {
            return block;
        }
        count = ranked.len();
    }
}

/// Dense boolean relation over the nodes of one arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    size: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn contains(&self, a: NodeId, b: NodeId) -> bool {
        self.bits[a.index() * self.size + b.index()]
    }
}

/// Greatest bisimulation by deletion: start from all pairs and remove pairs
/// violating the back-and-forth condition until nothing changes.
pub fn naive_bisimulation(arena: &Arena) -> Relation {
    let n = arena.len();
    let mut bits = vec![true; n * n];
    let nodes = arena.nodes();
    loop {
        let mut changed = false;
        for u in 0..n {
            for v in 0..n {
                if !bits[u * n + v] {
                    continue;
                }
                let ok = match (&nodes[u], &nodes[v]) {
                    (Node::Atom(a), Node::Atom(b)) => a == b,
                    (Node::Set(us), Node::Set(vs)) => {
                        us.iter()
                            .all(|c| vs.iter().any(|d| bits[c.index() * n + d.index()]))
                            && vs
                                .iter()
                                .all(|d| us.iter().any(|c| bits[c.index() * n + d.index()]))
                    }
                    _ => false,
                };
                if !ok {
                    bits[u * n + v] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return Relation { size: n, bits };
        }
    }
}

/// Collapses bisimilar nodes of `arena`, keeping only what is reachable from
/// `roots`. Nodes of the quotient are numbered breadth-first from the roots,
/// visiting members in block order, so bisimilar inputs give identical
/// quotients.
pub fn quotient(arena: &Arena, roots: &[NodeId]) -> (Arc<Arena>, Vec<NodeId>) {
    let block = coarsest_partition(arena);
    let mut representative: HashMap<u32, NodeId> = HashMap::new();
    for n in arena.reachable(roots) {
        representative.entry(block[n.index()]).or_insert(n);
    }

    let mut builder = ArenaBuilder::new();
    let mut image: HashMap<u32, NodeId> = HashMap::new();
    let mut queue: std::collections::VecDeque<u32> = std::collections::VecDeque::new();
    let mut visit = |b: u32, builder: &mut ArenaBuilder, queue: &mut std::collections::VecDeque<u32>| {
        if let Some(&id) = image.get(&b) {
            return id;
        }
        let id = match arena.node(representative[&b]) {
            Node::Atom(a) => builder.atom(a),
            Node::Set(_) => {
                queue.push_back(b);
                builder.placeholder()
            }
        };
        image.insert(b, id);
        id
    };

    let new_roots: Vec<NodeId> = roots
        .iter()
        .map(|r| visit(block[r.index()], &mut builder, &mut queue))
        .collect();
    while let Some(b) = queue.pop_front() {
        let rep = representative[&b];
        let mut member_blocks: Vec<u32> = arena.node(rep).children().iter().map(|c| block[c.index()]).collect();
        member_blocks.sort_unstable();
        member_blocks.dedup();
        let kids: Vec<NodeId> = member_blocks
            .into_iter()
            .map(|m| visit(m, &mut builder, &mut queue))
            .collect();
        let id = visit(b, &mut builder, &mut queue);
        builder.fill(id, kids);
    }
    (builder.finish(), new_roots)
}

/// Copies several graphs into one fresh arena.
pub(crate) fn union(graphs: &[&HGraph]) -> (Arc<Arena>, Vec<NodeId>) {
    let mut builder = ArenaBuilder::new();
    let roots = graphs.iter().map(|g| builder.import(g)).collect();
    (builder.finish(), roots)
}

/// Minimizes several graphs into one shared quotient arena, in which two
/// roots are bisimilar exactly when they are the same node.
pub fn minimize_all(graphs: &[&HGraph]) -> Vec<HGraph> {
    let (arena, roots) = union(graphs);
    let (q, new_roots) = quotient(&arena, &roots);
    new_roots
        .into_iter()
        .map(|r| HGraph::from_parts(q.clone(), r))
        .collect()
}

/// Reads a Kuratowski pair off a node of a minimized arena.
pub(crate) fn decode_pair_in(arena: &Arena, n: NodeId) -> Option<(NodeId, NodeId)> {
    let set_members = |id: NodeId| match arena.node(id) {
        Node::Set(c) => Some(c.as_slice()),
        Node::Atom(_) => None,
    };
    let outer = set_members(n)?;
    match outer {
        [only] => match set_members(*only)? {
            [x] => Some((*x, *x)),
            _ => None,
        },
        [p, q] => {
            let (p, q) = (set_members(*p)?, set_members(*q)?);
            let (single, double) = match (p.len(), q.len()) {
                (1, 2) => (p, q),
                (2, 1) => (q, p),
                _ => return None,
            };
            let x = single[0];
            let y = match double {
                [a, b] if *a == x => *b,
                [a, b] if *b == x => *a,
                _ => return None,
            };
            Some((x, y))
        }
        _ => None,
    }
}

impl HGraph {
    /// Equality of hypersets: the roots are related by the greatest
    /// bisimulation of the disjoint union.
    pub fn bisimilar(&self, other: &HGraph) -> bool {
        let (arena, roots) = union(&[self, other]);
        let block = coarsest_partition(&arena);
        block[roots[0].index()] == block[roots[1].index()]
    }

    pub fn minimize(&self) -> HGraph {
        minimize_all(&[self]).pop().expect("one graph in, one out")
    }

    /// Inverse of [`HGraph::pair`], up to bisimulation.
    pub fn decode_pair(&self) -> Option<(HGraph, HGraph)> {
        let m = self.minimize();
        let (x, y) = decode_pair_in(&m.arena, m.root)?;
        Some((m.at(x), m.at(y)))
    }
}

/// Oracle counterpart of [`HGraph::bisimilar`].
pub fn bisimilar_naive(a: &HGraph, b: &HGraph) -> bool {
    let (arena, roots) = union(&[a, b]);
    naive_bisimulation(&arena).contains(roots[0], roots[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(l: &str) -> HGraph {
        HGraph::new_atom(AtomLabel::meaning(l).unwrap())
    }

    fn two_cycle() -> HGraph {
        let mut b = ArenaBuilder::new();
        let x = b.placeholder();
        let y = b.set([x]);
        b.fill(x, [y]);
        HGraph::from_parts(b.finish(), x)
    }

    fn cycle(len: usize) -> HGraph {
        let mut b = ArenaBuilder::new();
        let first = b.placeholder();
        let mut prev = first;
        for _ in 1..len {
            prev = b.set([prev]);
        }
        b.fill(first, [prev]);
        HGraph::from_parts(b.finish(), first)
    }

    #[test]
    fn omega_cycles_are_equal() {
        assert!(HGraph::omega().bisimilar(&two_cycle()));
        assert!(bisimilar_naive(&HGraph::omega(), &two_cycle()));
    }

    #[test]
    fn distinct_atoms_differ() {
        assert!(!atom("P").bisimilar(&atom("Q")));
        assert!(atom("P").bisimilar(&atom("P")));
        let tag = HGraph::new_atom(AtomLabel::tag("P").unwrap());
        assert!(!atom("P").bisimilar(&tag));
    }

    #[test]
    fn nesting_depth_matters_when_wellfounded() {
        let e = HGraph::empty_set();
        let se = HGraph::set_of(std::slice::from_ref(&e));
        let sse = HGraph::set_of(std::slice::from_ref(&se));
        assert!(!se.bisimilar(&sse));
        assert!(!bisimilar_naive(&se, &sse));
        assert!(bisimilar_naive(&e, &HGraph::empty_set()));
    }

    #[test]
    fn member_count_split() {
        let omega = HGraph::omega();
        let other = HGraph::set_of(&[omega.clone(), HGraph::empty_set()]);
        assert!(!omega.bisimilar(&other));
        assert!(!bisimilar_naive(&omega, &other));
    }

    #[test]
    fn minimize_collapses_cycles() {
        let m = cycle(3).minimize();
        assert_eq!(m.node_count(), 1);
        assert!(m.bisimilar(&HGraph::omega()));
        assert_eq!(m.minimize().node_count(), 1);
    }

    #[test]
    fn minimize_removes_duplicate_members() {
        let s = HGraph::set_of(&[atom("P"), atom("P")]).minimize();
        assert_eq!(s.members().unwrap().len(), 1);
    }

    #[test]
    fn degenerate_pair_is_singleton_of_singleton() {
        let p = HGraph::pair(&atom("P"), &atom("P"));
        let pp = HGraph::set_of(&[HGraph::set_of(&[atom("P")])]);
        assert!(p.bisimilar(&pp));
        let (x, y) = pp.decode_pair().unwrap();
        assert!(x.bisimilar(&atom("P")) && y.bisimilar(&atom("P")));
        // re-encoding the decoded components gives the input back
        assert!(HGraph::pair(&x, &y).bisimilar(&pp));
    }

    #[test]
    fn decode_pair_cases() {
        let (x, y) = HGraph::pair(&atom("P"), &atom("Q")).decode_pair().unwrap();
        assert!(x.bisimilar(&atom("P")));
        assert!(y.bisimilar(&atom("Q")));
        assert!(HGraph::set_of(&[HGraph::empty_set()]).decode_pair().is_none());
        assert!(HGraph::empty_set().decode_pair().is_none());
        assert!(atom("P").decode_pair().is_none());
        // {{P},{Q}} is not a pair
        let not_pair = HGraph::set_of(&[HGraph::set_of(&[atom("P")]), HGraph::set_of(&[atom("Q")])]);
        assert!(not_pair.decode_pair().is_none());
    }

    #[test]
    fn pair_of_omegas_is_omega() {
        let o = HGraph::omega();
        assert!(HGraph::pair(&o, &o).bisimilar(&o));
        let (x, y) = HGraph::pair(&o, &o).decode_pair().unwrap();
        assert!(x.bisimilar(&o) && y.bisimilar(&o));
    }

    #[test]
    fn shared_quotient_identifies_bisimilar_roots() {
        let gs = minimize_all(&[&cycle(2), &cycle(5), &HGraph::empty_set()]);
        assert_eq!(gs[0].root(), gs[1].root());
        assert_ne!(gs[0].root(), gs[2].root());
    }
}
