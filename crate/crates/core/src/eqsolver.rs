//! Finite systems of set equations and their unique solutions.
//!
//! Solving is graph construction: every variable gets a node, right-hand
//! sides are compiled with the variables in scope, and a variable bound to an
//! atom or to another variable aliases that node. Anti-foundation makes the
//! resulting graph the unique solution up to bisimulation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperset::{
    coarsest_partition, ArenaBuilder, AtomLabel, HGraph, HypersetError, Namespace, NodeId,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("variable {0:?} is referenced but never bound")]
    NotClosed(String),
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
    #[error("variable {0:?} is bound twice")]
    DuplicateVariable(String),
    #[error("variables {0:?} only alias each other and have no unique solution")]
    UnguardedCycle(Vec<String>),
    #[error("renaming is not a bijection on the system's variables: {0}")]
    NotBijective(String),
    #[error("equation document: {0}")]
    Parse(String),
    #[error(transparent)]
    Atom(#[from] HypersetError),
}

/// Right-hand side of an equation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Atom(AtomLabel),
    Set(Vec<Term>),
    Pair(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn pair(x: Term, y: Term) -> Term {
        Term::Pair(Box::new(x), Box::new(y))
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::Atom(_) => {}
            Term::Set(ms) => ms.iter().for_each(|m| m.collect_vars(out)),
            Term::Pair(x, y) => {
                x.collect_vars(out);
                y.collect_vars(out);
            }
        }
    }

    /// Rewrites variable names and atoms bottom-up.
    pub fn map(&self, var: &impl Fn(&str) -> String, atom: &impl Fn(&AtomLabel) -> AtomLabel) -> Term {
        match self {
            Term::Var(v) => Term::Var(var(v)),
            Term::Atom(a) => Term::Atom(atom(a)),
            Term::Set(ms) => Term::Set(ms.iter().map(|m| m.map(var, atom)).collect()),
            Term::Pair(x, y) => Term::pair(x.map(var, atom), y.map(var, atom)),
        }
    }

    /// Canonical member order, recursively. Two terms denoting the same
    /// syntactic set up to member order normalize to the same term.
    pub fn normalized(&self) -> Term {
        match self {
            Term::Set(ms) => {
                let mut ms: Vec<Term> = ms.iter().map(Term::normalized).collect();
                ms.sort();
                ms.dedup();
                Term::Set(ms)
            }
            Term::Pair(x, y) => Term::pair(x.normalized(), y.normalized()),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Atom(a) => write!(f, "{a}"),
            Term::Set(ms) => {
                f.write_str("{")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("}")
            }
            Term::Pair(x, y) => write!(f, "<{x}, {y}>"),
        }
    }
}

/// A closed system: one binding per variable, every referenced variable bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSystem {
    bindings: BTreeMap<String, Term>,
}

impl EquationSystem {
    pub fn new(bindings: impl IntoIterator<Item = (String, Term)>) -> Result<Self, SolverError> {
        let mut map = BTreeMap::new();
        for (var, term) in bindings {
            if map.contains_key(&var) {
                return Err(SolverError::DuplicateVariable(var));
            }
            map.insert(var, term);
        }
        let sys = EquationSystem { bindings: map };
        sys.check_closed()?;
        Ok(sys)
    }

    fn check_closed(&self) -> Result<(), SolverError> {
        let mut used = BTreeSet::new();
        for t in self.bindings.values() {
            t.collect_vars(&mut used);
        }
        match used.into_iter().find(|v| !self.bindings.contains_key(*v)) {
            Some(v) => Err(SolverError::NotClosed(v.to_string())),
            None => Ok(()),
        }
    }

    pub fn bindings(&self) -> &BTreeMap<String, Term> {
        &self.bindings
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Every right-hand side with members in canonical order.
    pub fn normalized(&self) -> EquationSystem {
        EquationSystem {
            bindings: self
                .bindings
                .iter()
                .map(|(k, v)| (k.clone(), v.normalized()))
                .collect(),
        }
    }

    /// Applies a variable renaming to binders and references alike.
    pub fn rename_vars(&self, rho: &BTreeMap<String, String>) -> Result<EquationSystem, SolverError> {
        let mut images = BTreeSet::new();
        for v in self.bindings.keys() {
            let Some(image) = rho.get(v) else {
                return Err(SolverError::NotBijective(format!("{v:?} has no image")));
            };
            if !images.insert(image) {
                return Err(SolverError::NotBijective(format!("{image:?} is hit twice")));
            }
        }
        let rename = |v: &str| rho[v].clone();
        let keep = |a: &AtomLabel| a.clone();
        Ok(EquationSystem {
            bindings: self
                .bindings
                .iter()
                .map(|(k, t)| (rename(k), t.map(&rename, &keep)))
                .collect(),
        })
    }

    pub fn from_json(text: &str) -> Result<EquationSystem, SolverError> {
        let doc: EquationsDoc =
            serde_json::from_str(text).map_err(|e| SolverError::Parse(e.to_string()))?;
        let bindings = doc
            .equations
            .into_iter()
            .map(|(k, t)| Ok((k, t.into_term()?)))
            .collect::<Result<Vec<_>, SolverError>>()?;
        EquationSystem::new(bindings)
    }

    pub fn to_json(&self) -> String {
        let doc = EquationsDoc {
            equations: self
                .bindings
                .iter()
                .map(|(k, t)| (k.clone(), TermDoc::from_term(t)))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("equation documents always serialize")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquationsDoc {
    equations: BTreeMap<String, TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct AtomDoc {
    ns: Namespace,
    label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum TermDoc {
    Var(String),
    Atom(AtomDoc),
    Set(Vec<TermDoc>),
    Pair(Box<TermDoc>, Box<TermDoc>),
}

impl TermDoc {
    fn into_term(self) -> Result<Term, SolverError> {
        Ok(match self {
            TermDoc::Var(v) => Term::Var(v),
            TermDoc::Atom(a) => Term::Atom(AtomLabel::new(a.ns, a.label)?),
            TermDoc::Set(ms) => Term::Set(
                ms.into_iter()
                    .map(TermDoc::into_term)
                    .collect::<Result<_, _>>()?,
            ),
            TermDoc::Pair(x, y) => Term::pair(x.into_term()?, y.into_term()?),
        })
    }

    fn from_term(t: &Term) -> TermDoc {
        match t {
            Term::Var(v) => TermDoc::Var(v.clone()),
            Term::Atom(a) => TermDoc::Atom(AtomDoc {
                ns: a.namespace(),
                label: a.label().to_string(),
            }),
            Term::Set(ms) => TermDoc::Set(ms.iter().map(TermDoc::from_term).collect()),
            Term::Pair(x, y) => TermDoc::Pair(
                Box::new(TermDoc::from_term(x)),
                Box::new(TermDoc::from_term(y)),
            ),
        }
    }
}

/// Compiles `t` into `arena`, resolving variables through `env`.
pub fn eval_term(
    t: &Term,
    env: &BTreeMap<String, NodeId>,
    arena: &mut ArenaBuilder,
) -> Result<NodeId, SolverError> {
    Ok(match t {
        Term::Var(v) => *env
            .get(v)
            .ok_or_else(|| SolverError::UnboundVariable(v.clone()))?,
        Term::Atom(a) => arena.atom(a),
        Term::Set(ms) => {
            let kids = ms
                .iter()
                .map(|m| eval_term(m, env, arena))
                .collect::<Result<Vec<_>, _>>()?;
            arena.set(kids)
        }
        Term::Pair(x, y) => {
            let x = eval_term(x, env, arena)?;
            let y = eval_term(y, env, arena)?;
            arena.pair(x, y)
        }
    })
}

/// An assignment of hypersets to variables.
#[derive(Clone, Debug)]
pub struct Solution {
    assignment: BTreeMap<String, HGraph>,
}

impl Solution {
    pub fn new(assignment: BTreeMap<String, HGraph>) -> Self {
        Solution { assignment }
    }

    pub fn get(&self, var: &str) -> Option<&HGraph> {
        self.assignment.get(var)
    }

    pub fn assignment(&self) -> &BTreeMap<String, HGraph> {
        &self.assignment
    }
}

/// The unique solution of a closed system.
pub fn solve(sys: &EquationSystem) -> Result<Solution, SolverError> {
    sys.check_closed()?;
    let mut arena = ArenaBuilder::new();
    let mut env: BTreeMap<String, NodeId> = BTreeMap::new();

    // Set and pair bindings get a node of their own up front.
    for (var, term) in &sys.bindings {
        if matches!(term, Term::Set(_) | Term::Pair(..)) {
            env.insert(var.clone(), arena.placeholder());
        }
    }
    // Atom and variable bindings alias an existing node.
    for var in sys.bindings.keys() {
        let mut chain: Vec<&str> = Vec::new();
        let mut cur = var.as_str();
        let node = loop {
            if let Some(&n) = env.get(cur) {
                break n;
            }
            if chain.contains(&cur) {
                let cycle = chain.iter().map(|s| s.to_string()).collect();
                return Err(SolverError::UnguardedCycle(cycle));
            }
            chain.push(cur);
            match &sys.bindings[cur] {
                Term::Atom(a) => break arena.atom(a),
                Term::Var(next) => cur = next,
                _ => unreachable!("set and pair bindings are preallocated"),
            }
        };
        for v in chain {
            env.insert(v.to_string(), node);
        }
    }
    for (var, term) in &sys.bindings {
        let kids = match term {
            Term::Set(ms) => ms
                .iter()
                .map(|m| eval_term(m, &env, &mut arena))
                .collect::<Result<Vec<_>, _>>()?,
            Term::Pair(x, y) => {
                let x = eval_term(x, &env, &mut arena)?;
                let y = eval_term(y, &env, &mut arena)?;
                vec![arena.set([x]), arena.set([x, y])]
            }
            _ => continue,
        };
        arena.fill(env[var], kids);
    }

    let arena = arena.finish();
    Ok(Solution {
        assignment: env
            .into_iter()
            .map(|(v, n)| (v, HGraph::from_parts(Arc::clone(&arena), n)))
            .collect(),
    })
}

/// True iff every equation `X = T` holds up to bisimulation under `sol`.
pub fn check_solution(sys: &EquationSystem, sol: &Solution) -> bool {
    let mut arena = ArenaBuilder::new();
    let mut env = BTreeMap::new();
    for var in sys.bindings.keys() {
        let Some(g) = sol.get(var) else {
            return false;
        };
        env.insert(var.clone(), arena.import(g));
    }
    let mut sides = Vec::with_capacity(sys.len());
    for (var, term) in &sys.bindings {
        match eval_term(term, &env, &mut arena) {
            Ok(n) => sides.push((env[var], n)),
            Err(_) => return false,
        }
    }
    let arena = arena.finish();
    let block = coarsest_partition(&arena);
    sides
        .iter()
        .all(|(l, r)| block[l.index()] == block[r.index()])
}
