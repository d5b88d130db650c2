use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::graph::{find_cycle, AtomLabel, HGraph, Node, NodeId};
use super::HypersetError;

/// A ground, well-founded set term compared extensionally.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NestedSetTerm {
    Atom(AtomLabel),
    Set(BTreeSet<NestedSetTerm>),
}

impl NestedSetTerm {
    pub fn set(members: impl IntoIterator<Item = NestedSetTerm>) -> Self {
        NestedSetTerm::Set(members.into_iter().collect())
    }
}

impl fmt::Display for NestedSetTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestedSetTerm::Atom(a) => write!(f, "{a}"),
            NestedSetTerm::Set(ms) => {
                f.write_str("{")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl HGraph {
    /// Mostowski collapse of an acyclic graph.
    pub fn decorate(&self) -> Result<NestedSetTerm, HypersetError> {
        if find_cycle(&self.arena, self.root).is_some() {
            return Err(HypersetError::CyclicGraph);
        }
        let mut memo: HashMap<NodeId, NestedSetTerm> = HashMap::new();
        // post-order over the reachable DAG
        let mut stack = vec![(self.root, false)];
        while let Some((n, expanded)) = stack.pop() {
            if memo.contains_key(&n) {
                continue;
            }
            match self.arena.node(n) {
                Node::Atom(a) => {
                    memo.insert(n, NestedSetTerm::Atom(a.clone()));
                }
                Node::Set(children) if expanded => {
                    let term = NestedSetTerm::set(children.iter().map(|c| memo[c].clone()));
                    memo.insert(n, term);
                }
                Node::Set(children) => {
                    stack.push((n, true));
                    stack.extend(children.iter().map(|&c| (c, false)));
                }
            }
        }
        Ok(memo.remove(&self.root).expect("root decorated"))
    }
}
