use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::HypersetError;

/// The three disjoint kinds of urelement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Namespace {
    Meaning,
    Tag,
    Marker,
}

impl Namespace {
    pub fn as_str(self) -> &'static str {
        match self {
            Namespace::Meaning => "meaning",
            Namespace::Tag => "tag",
            Namespace::Marker => "marker",
        }
    }
}

/// The only label allowed in the marker namespace.
pub const DOLLAR: &str = "$";

/// An atom (urelement). Two atoms are equal iff namespace and label agree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomLabel {
    namespace: Namespace,
    label: String,
}

impl AtomLabel {
    pub fn new(namespace: Namespace, label: impl Into<String>) -> Result<Self, HypersetError> {
        let label = label.into();
        if label.is_empty() {
            return Err(HypersetError::EmptyLabel);
        }
        if namespace == Namespace::Marker && label != DOLLAR {
            return Err(HypersetError::UnknownMarker(label));
        }
        Ok(AtomLabel { namespace, label })
    }

    pub fn meaning(label: impl Into<String>) -> Result<Self, HypersetError> {
        Self::new(Namespace::Meaning, label)
    }

    pub fn tag(label: impl Into<String>) -> Result<Self, HypersetError> {
        Self::new(Namespace::Tag, label)
    }

    /// The distinguished end-of-expression marker `$`.
    pub fn dollar() -> Self {
        AtomLabel {
            namespace: Namespace::Marker,
            label: DOLLAR.to_string(),
        }
    }

    pub fn namespace(&self) -> Namespace {
        self.namespace
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Display for AtomLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.namespace.as_str(), self.label)
    }
}

/// Index of a node inside one [`Arena`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub(crate) u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Atom(AtomLabel),
    Set(Vec<NodeId>),
}

impl Node {
    pub fn children(&self) -> &[NodeId] {
        match self {
            Node::Atom(_) => &[],
            Node::Set(children) => children,
        }
    }
}

/// Immutable node storage shared by any number of [`HGraph`] handles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Arena {
    nodes: Vec<Node>,
}

impl Arena {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Nodes reachable from `roots`, in breadth-first order of discovery.
    pub fn reachable(&self, roots: &[NodeId]) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &r in roots {
            if !seen[r.index()] {
                seen[r.index()] = true;
                queue.push_back(r);
            }
        }
        while let Some(n) = queue.pop_front() {
            order.push(n);
            for &c in self.node(n).children() {
                if !seen[c.index()] {
                    seen[c.index()] = true;
                    queue.push_back(c);
                }
            }
        }
        order
    }
}

/// Mutable arena under construction. Atoms are interned by label.
#[derive(Debug, Default)]
pub struct ArenaBuilder {
    nodes: Vec<Node>,
    atoms: HashMap<AtomLabel, NodeId>,
}

impl ArenaBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn push(&mut self, node: Node) -> NodeId {
        let id = NodeId(u32::try_from(self.nodes.len()).expect("arena exceeds u32 nodes"));
        self.nodes.push(node);
        id
    }

    pub fn atom(&mut self, label: &AtomLabel) -> NodeId {
        if let Some(&id) = self.atoms.get(label) {
            return id;
        }
        let id = self.push(Node::Atom(label.clone()));
        self.atoms.insert(label.clone(), id);
        id
    }

    /// A set node; duplicate children are dropped.
    pub fn set(&mut self, children: impl IntoIterator<Item = NodeId>) -> NodeId {
        let children = dedup(children);
        self.push(Node::Set(children))
    }

    /// Kuratowski pair `{{x},{x,y}}`.
    pub fn pair(&mut self, x: NodeId, y: NodeId) -> NodeId {
        let single = self.set([x]);
        let double = self.set([x, y]);
        self.set([single, double])
    }

    /// An empty set node whose members are supplied later with [`fill`](Self::fill).
    pub fn placeholder(&mut self) -> NodeId {
        self.push(Node::Set(Vec::new()))
    }

    pub fn fill(&mut self, id: NodeId, children: impl IntoIterator<Item = NodeId>) {
        let children = dedup(children);
        match &mut self.nodes[id.index()] {
            Node::Set(slot) => *slot = children,
            Node::Atom(a) => panic!("cannot fill atom node {a}"),
        }
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    /// Copies the part of `g` reachable from its root; returns the copy's root.
    pub fn import(&mut self, g: &HGraph) -> NodeId {
        let order = g.arena.reachable(&[g.root]);
        let mut map = HashMap::with_capacity(order.len());
        for &n in &order {
            let id = match g.arena.node(n) {
                Node::Atom(a) => self.atom(a),
                Node::Set(_) => self.placeholder(),
            };
            map.insert(n, id);
        }
        for &n in &order {
            if let Node::Set(children) = g.arena.node(n) {
                let kids: Vec<NodeId> = children.iter().map(|c| map[c]).collect();
                self.fill(map[&n], kids);
            }
        }
        map[&g.root]
    }

    pub fn finish(self) -> Arc<Arena> {
        Arc::new(Arena { nodes: self.nodes })
    }
}

fn dedup(children: impl IntoIterator<Item = NodeId>) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = Vec::new();
    for c in children {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// An accessible pointed graph: the value is the subgraph of `arena`
/// reachable from `root`. Cycles are allowed.
#[derive(Clone, Debug)]
pub struct HGraph {
    pub(crate) arena: Arc<Arena>,
    pub(crate) root: NodeId,
}

impl HGraph {
    pub fn from_parts(arena: Arc<Arena>, root: NodeId) -> Self {
        assert!(root.index() < arena.len(), "root outside arena");
        HGraph { arena, root }
    }

    pub fn arena(&self) -> &Arc<Arena> {
        &self.arena
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn root_node(&self) -> &Node {
        self.arena.node(self.root)
    }

    /// Same arena, different root.
    pub fn at(&self, root: NodeId) -> HGraph {
        HGraph::from_parts(self.arena.clone(), root)
    }

    pub fn reachable(&self) -> Vec<NodeId> {
        self.arena.reachable(&[self.root])
    }

    pub fn node_count(&self) -> usize {
        self.reachable().len()
    }

    pub fn edge_count(&self) -> usize {
        self.reachable()
            .iter()
            .map(|&n| self.arena.node(n).children().len())
            .sum()
    }

    pub fn as_atom(&self) -> Option<&AtomLabel> {
        match self.root_node() {
            Node::Atom(a) => Some(a),
            Node::Set(_) => None,
        }
    }

    pub fn new_atom(label: AtomLabel) -> HGraph {
        let mut b = ArenaBuilder::new();
        let root = b.atom(&label);
        HGraph::from_parts(b.finish(), root)
    }

    pub fn empty_set() -> HGraph {
        let mut b = ArenaBuilder::new();
        let root = b.set([]);
        HGraph::from_parts(b.finish(), root)
    }

    /// `Ω = {Ω}`.
    pub fn omega() -> HGraph {
        let mut b = ArenaBuilder::new();
        let root = b.placeholder();
        b.fill(root, [root]);
        HGraph::from_parts(b.finish(), root)
    }

    pub fn set_of(elems: &[HGraph]) -> HGraph {
        let mut b = ArenaBuilder::new();
        let kids: Vec<NodeId> = elems.iter().map(|e| b.import(e)).collect();
        let root = b.set(kids);
        HGraph::from_parts(b.finish(), root)
    }

    pub fn pair(x: &HGraph, y: &HGraph) -> HGraph {
        let mut b = ArenaBuilder::new();
        let x = b.import(x);
        let y = b.import(y);
        let root = b.pair(x, y);
        HGraph::from_parts(b.finish(), root)
    }

    pub fn members(&self) -> Result<Vec<HGraph>, HypersetError> {
        match self.root_node() {
            Node::Atom(a) => Err(HypersetError::AtomHasNoMembers(a.clone())),
            Node::Set(children) => Ok(children.iter().map(|&c| self.at(c)).collect()),
        }
    }

    /// Acyclicity of the reachable subgraph.
    pub fn is_wellfounded(&self) -> bool {
        find_cycle(&self.arena, self.root).is_none()
    }
}

/// Returns some node lying on a cycle reachable from `root`, if any.
pub(crate) fn find_cycle(arena: &Arena, root: NodeId) -> Option<NodeId> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; arena.len()];
    let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
    mark[root.index()] = Mark::Active;
    while let Some(&mut (n, ref mut next)) = stack.last_mut() {
        let children = arena.node(n).children();
        if *next < children.len() {
            let c = children[*next];
            *next += 1;
            match mark[c.index()] {
                Mark::Active => return Some(c),
                Mark::New => {
                    mark[c.index()] = Mark::Active;
                    stack.push((c, 0));
                }
                Mark::Done => {}
            }
        } else {
            mark[n.index()] = Mark::Done;
            stack.pop();
        }
    }
    None
}
