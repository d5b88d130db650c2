//! JSON graph documents and DOT rendering.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::graph::{ArenaBuilder, AtomLabel, HGraph, Namespace, Node, NodeId};
use super::HypersetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKindDoc {
    Atom,
    Set,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: u64,
    pub kind: NodeKindDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ns: Option<Namespace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<u64>>,
}

/// `{"root": <int>, "nodes": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub root: u64,
    pub nodes: Vec<NodeDoc>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> HypersetError {
    HypersetError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

impl HGraph {
    /// Reachable nodes renumbered breadth-first from the root (root is 0),
    /// members sorted ascending.
    pub fn to_doc(&self) -> GraphDoc {
        let order = self.reachable();
        let ids: HashMap<NodeId, u64> = order
            .iter()
            .enumerate()
            .map(|(i, &n)| (n, i as u64))
            .collect();
        let nodes = order
            .iter()
            .map(|&n| match self.arena.node(n) {
                Node::Atom(a) => NodeDoc {
                    id: ids[&n],
                    kind: NodeKindDoc::Atom,
                    ns: Some(a.namespace()),
                    label: Some(a.label().to_string()),
                    members: None,
                },
                Node::Set(children) => {
                    let mut members: Vec<u64> = children.iter().map(|c| ids[c]).collect();
                    members.sort_unstable();
                    NodeDoc {
                        id: ids[&n],
                        kind: NodeKindDoc::Set,
                        ns: None,
                        label: None,
                        members: Some(members),
                    }
                }
            })
            .collect();
        GraphDoc { root: 0, nodes }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<HGraph, HypersetError> {
        let mut by_id: BTreeMap<u64, &NodeDoc> = BTreeMap::new();
        for n in &doc.nodes {
            if by_id.insert(n.id, n).is_some() {
                return Err(parse_err(format!("node {}", n.id), "duplicate node id"));
            }
        }
        if !by_id.contains_key(&doc.root) {
            return Err(parse_err("root", format!("root {} is not a node", doc.root)));
        }

        let mut builder = ArenaBuilder::new();
        let mut map: HashMap<u64, NodeId> = HashMap::new();
        for (&id, n) in &by_id {
            let loc = format!("node {id}");
            let node = match n.kind {
                NodeKindDoc::Atom => {
                    if n.members.is_some() {
                        return Err(parse_err(loc, "atom node with members"));
                    }
                    let (Some(ns), Some(label)) = (n.ns, n.label.as_ref()) else {
                        return Err(parse_err(loc, "atom node needs ns and label"));
                    };
                    let atom = AtomLabel::new(ns, label.clone())
                        .map_err(|e| parse_err(loc.clone(), e.to_string()))?;
                    builder.atom(&atom)
                }
                NodeKindDoc::Set => {
                    if n.ns.is_some() || n.label.is_some() {
                        return Err(parse_err(loc, "set node with ns or label"));
                    }
                    if n.members.is_none() {
                        return Err(parse_err(loc, "set node needs members"));
                    }
                    builder.placeholder()
                }
            };
            map.insert(id, node);
        }
        for (&id, n) in &by_id {
            if let Some(members) = &n.members {
                let mut kids = Vec::with_capacity(members.len());
                for m in members {
                    let Some(&k) = map.get(m) else {
                        return Err(parse_err(format!("node {id}"), format!("unknown member {m}")));
                    };
                    kids.push(k);
                }
                builder.fill(map[&id], kids);
            }
        }
        let g = HGraph::from_parts(builder.finish(), map[&doc.root]);

        let reached = g.reachable();
        let mut reached_ids: Vec<bool> = vec![false; g.arena.len()];
        for n in reached {
            reached_ids[n.index()] = true;
        }
        for &id in by_id.keys() {
            if !reached_ids[map[&id].index()] {
                return Err(parse_err(format!("node {id}"), "not reachable from root"));
            }
        }
        Ok(g)
    }

    pub fn serialize_graph(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph documents always serialize")
    }

    pub fn parse_graph(text: &str) -> Result<HGraph, HypersetError> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| {
            parse_err(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        HGraph::from_doc(&doc)
    }

    /// DOT digraph: atoms as boxes labelled `namespace:label`, sets as
    /// circles, one edge per membership, nodes listed root first.
    pub fn to_dot(&self) -> String {
        let doc = self.to_doc();
        let mut out = String::from("digraph hyperset {\n");
        for n in &doc.nodes {
            match n.kind {
                NodeKindDoc::Atom => {
                    let label = format!(
                        "{}:{}",
                        n.ns.expect("atom ns").as_str(),
                        n.label.as_deref().unwrap_or_default()
                    );
                    let _ = writeln!(out, "  n{} [shape=box, label=\"{}\"];", n.id, escape(&label));
                }
                NodeKindDoc::Set => {
                    let _ = writeln!(out, "  n{} [shape=circle, label=\"\"];", n.id);
                }
            }
        }
        for n in &doc.nodes {
            for m in n.members.iter().flatten() {
                let _ = writeln!(out, "  n{} -> n{};", n.id, m);
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
