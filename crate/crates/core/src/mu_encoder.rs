//! The compositional encoding `μ`.
//!
//! Every string `s` gets an indeterminate `X_s`, solved together with `X_$`
//! and the recovery variables `X_s$`:
//!
//! ```text
//! X_s  = { <X_$, m(s)> } ∪ { <X_t, X_{s·t}> : s·t ∈ L }  [∪ { <contexts, profile(s)> }]
//! X_$  = { <X_$, X_$> }
//! X_s$ = m(s)
//! ```
//!
//! `μ(s)` is the solution for `X_s`, so `μ(s)(μ(t)) = μ(s·t)` is a lookup in
//! the graph of `μ(s)` and `μ(s)(μ($)) = m(s)` recovers the meaning.
//!
//! With [`Scheme::Bare`] the bracketed member is absent. That system can
//! identify two strings that differ only in their left contexts and then
//! `μ` of a common left neighbour is not a function. [`Scheme::ContextProfiled`]
//! (the default) adds the occurrence-context profile of `s`: a well-founded set
//! of `<<x, y>, m(x·s·y)>` over all contexts. Profiles coincide exactly for
//! synonyms, so two strings get bisimilar values iff they are synonyms.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eqsolver::{check_solution, solve, EquationSystem, Solution, SolverError, Term};
use crate::hyperset::{
    decode_pair_in, minimize_all, AtomLabel, GraphDoc, HGraph, HypersetError, Namespace, Node,
    NodeId,
};
use crate::langmodel::{join_symbols, LangError, LanguageSpec, MeaningLabel, Str, Symbol, SEPARATOR};
use crate::report::Report;

/// Name of the `$` indeterminate.
pub const DOLLAR_VAR: &str = "$";
/// Tag keying the context-profile member of `μ(s)`.
pub const PROFILE_TAG: &str = "contexts";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scheme {
    /// Value and continuation members only.
    Bare,
    /// Adds each string's context profile.
    #[default]
    ContextProfiled,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Bare => "bare",
            Scheme::ContextProfiled => "profiled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("not a function: no member decodes as a pair")]
    NotAFunction,
    #[error("no argument of the function matches")]
    NoMatch,
    #[error("matching arguments carry different values")]
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MuError {
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] HypersetError),
    #[error("application failed: {0}")]
    Apply(#[from] ApplyError),
    #[error("recovered value is not a meaning atom")]
    NotAMeaning,
    #[error("graph is not bisimilar to any value of μ")]
    NotInImage,
    #[error("{0} is not a single-symbol string of the language")]
    NotSymbols(String),
    #[error("{0} and {1} are not synonyms")]
    NotSynonyms(String, String),
    #[error("bundle: {0}")]
    Bundle(String),
}

pub fn string_var(s: &Str) -> String {
    format!("S:{}", s.key())
}

pub fn recovery_var(s: &Str) -> String {
    format!("R:{}", s.key())
}

/// Tag atom for a possibly empty symbol sequence. The empty sequence is the
/// lone separator, which no nonempty join can produce.
pub(crate) fn sequence_tag(symbols: &[Symbol]) -> AtomLabel {
    let label = if symbols.is_empty() {
        SEPARATOR.to_string()
    } else {
        join_symbols(symbols)
    };
    AtomLabel::tag(label).expect("nonempty tag label")
}

fn meaning_atom(m: &MeaningLabel) -> AtomLabel {
    AtomLabel::meaning(m.as_str()).expect("meaning labels are nonempty")
}

pub fn build_equations(spec: &LanguageSpec) -> EquationSystem {
    build_equations_with(spec, Scheme::default())
}

pub fn build_equations_with(spec: &LanguageSpec, scheme: Scheme) -> EquationSystem {
    build_renamed(spec, scheme, &|s: &Symbol| s.clone())
}

/// Builds the system from `spec`, writing every string that appears in a
/// variable name or tag through `rename`.
fn build_renamed(spec: &LanguageSpec, scheme: Scheme, rename: &dyn Fn(&Symbol) -> Symbol) -> EquationSystem {
    let name = |s: &Str| s.map_symbols(rename);
    let rename_seq = |xs: &[Symbol]| xs.iter().map(rename).collect::<Vec<_>>();
    let mut bindings = Vec::with_capacity(2 * spec.len() + 1);
    for (s, m) in spec.meanings() {
        let mut members = vec![Term::pair(Term::var(DOLLAR_VAR), Term::Atom(meaning_atom(m)))];
        for t in spec.right_extensions(s).expect("s in language") {
            members.push(Term::pair(
                Term::var(string_var(&name(&t))),
                Term::var(string_var(&name(&s.concat(&t)))),
            ));
        }
        if scheme == Scheme::ContextProfiled {
            let profile = spec
                .contexts(s)
                .expect("s in language")
                .into_iter()
                .map(|ctx| {
                    let key = Term::pair(
                        Term::Atom(sequence_tag(&rename_seq(&ctx.left))),
                        Term::Atom(sequence_tag(&rename_seq(&ctx.right))),
                    );
                    let value = spec.meaning(&ctx.wrap(s)).expect("context stays in language");
                    Term::pair(key, Term::Atom(meaning_atom(value)))
                })
                .collect();
            members.push(Term::pair(
                Term::Atom(AtomLabel::tag(PROFILE_TAG).expect("constant tag")),
                Term::Set(profile),
            ));
        }
        bindings.push((string_var(&name(s)), Term::Set(members)));
        bindings.push((recovery_var(&name(s)), Term::Atom(meaning_atom(m))));
    }
    bindings.push((
        DOLLAR_VAR.to_string(),
        Term::Set(vec![Term::pair(Term::var(DOLLAR_VAR), Term::var(DOLLAR_VAR))]),
    ));
    EquationSystem::new(bindings).expect("generated systems are closed")
}

/// `f(x)`: the value paired with `x` among the pair members of `f`.
pub fn apply(f: &HGraph, x: &HGraph) -> Result<HGraph, ApplyError> {
    let gs = minimize_all(&[f, x]);
    let (fg, arg) = (&gs[0], gs[1].root());
    let Node::Set(members) = fg.root_node() else {
        return Err(ApplyError::NotAFunction);
    };
    let pairs: Vec<(NodeId, NodeId)> = members
        .iter()
        .filter_map(|&m| decode_pair_in(fg.arena(), m))
        .collect();
    if pairs.is_empty() {
        return Err(ApplyError::NotAFunction);
    }
    let mut values = pairs.iter().filter(|(k, _)| *k == arg).map(|(_, v)| *v);
    let Some(first) = values.next() else {
        return Err(ApplyError::NoMatch);
    };
    if values.any(|v| v != first) {
        return Err(ApplyError::Ambiguous);
    }
    Ok(fg.at(first))
}

/// Argument/value pairs of `f` whose arguments repeat with different values.
fn functionality_violations(f: &HGraph) -> Result<Vec<NodeId>, ()> {
    let f = f.minimize();
    let Node::Set(members) = f.root_node() else {
        return Err(());
    };
    let mut seen: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    let mut bad = Vec::new();
    for &m in members {
        if let Some((k, v)) = decode_pair_in(f.arena(), m) {
            match seen.get(&k) {
                Some(&prev) if prev != v => bad.push(k),
                Some(_) => {}
                None => {
                    seen.insert(k, v);
                }
            }
        }
    }
    Ok(bad)
}

/// The solved encoding of one spec.
#[derive(Clone, Debug)]
pub struct MuEncoding {
    spec: LanguageSpec,
    scheme: Scheme,
    system: EquationSystem,
    solution: Solution,
    mu_of: BTreeMap<Str, HGraph>,
    mu_dollar: HGraph,
}

pub fn encode(spec: &LanguageSpec) -> Result<MuEncoding, MuError> {
    encode_with(spec, Scheme::default())
}

pub fn encode_with(spec: &LanguageSpec, scheme: Scheme) -> Result<MuEncoding, MuError> {
    let system = build_equations_with(spec, scheme);
    let solution = solve(&system)?;
    MuEncoding::assemble(spec.clone(), scheme, system, solution)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleDoc {
    spec: serde_json::Value,
    graphs: BTreeMap<String, GraphDoc>,
}

impl MuEncoding {
    fn assemble(spec: LanguageSpec, scheme: Scheme, system: EquationSystem, solution: Solution) -> Result<Self, MuError> {
        let lookup = |var: &str| {
            solution
                .get(var)
                .ok_or_else(|| MuError::Bundle(format!("no value for {var}")))
        };
        let mut raw: Vec<&HGraph> = vec![lookup(DOLLAR_VAR)?];
        for s in spec.language() {
            raw.push(lookup(&string_var(s))?);
        }
        let mut minimized = minimize_all(&raw).into_iter();
        let mu_dollar = minimized.next().expect("dollar graph");
        let mu_of = spec.language().cloned().zip(minimized).collect();
        Ok(MuEncoding {
            spec,
            scheme,
            system,
            solution,
            mu_of,
            mu_dollar,
        })
    }

    pub fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn system(&self) -> &EquationSystem {
        &self.system
    }

    /// Unminimized solver output, kept for replaying the equations.
    pub fn solution(&self) -> &Solution {
        &self.solution
    }

    pub fn mu(&self, s: &Str) -> Result<&HGraph, MuError> {
        self.mu_of
            .get(s)
            .ok_or_else(|| LangError::NotInLanguage(s.to_string()).into())
    }

    pub fn mu_of(&self) -> &BTreeMap<Str, HGraph> {
        &self.mu_of
    }

    pub fn mu_dollar(&self) -> &HGraph {
        &self.mu_dollar
    }

    /// Distinct values of `μ` over the language.
    pub fn image(&self) -> Vec<HGraph> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for g in self.mu_of.values() {
            if !seen.contains(&g.root()) {
                seen.push(g.root());
                out.push(g.clone());
            }
        }
        out
    }

    /// `m(s)`, read back as `μ(s)(μ($))`.
    pub fn recover(&self, s: &Str) -> Result<MeaningLabel, MuError> {
        let value = apply(self.mu(s)?, &self.mu_dollar)?;
        as_meaning(&value)
    }

    /// `μ` extended to its own values: `μ(μ(s)) = m(s)`.
    pub fn mu_of_meaning(&self, h: &HGraph) -> Result<MeaningLabel, MuError> {
        if !self.image().iter().any(|g| g.bisimilar(h)) {
            return Err(MuError::NotInImage);
        }
        as_meaning(&apply(h, &self.mu_dollar)?)
    }

    pub fn from_bundle(text: &str) -> Result<Self, MuError> {
        let doc: BundleDoc = serde_json::from_str(text).map_err(|e| MuError::Bundle(e.to_string()))?;
        let spec = LanguageSpec::from_json_value(doc.spec)?;
        let mut assignment = BTreeMap::new();
        for (key, graph) in &doc.graphs {
            let g = HGraph::from_doc(graph)?;
            if key == DOLLAR_VAR {
                assignment.insert(DOLLAR_VAR.to_string(), g);
                continue;
            }
            let s = Str::from_key(key)?;
            if !spec.contains(&s) {
                return Err(MuError::Bundle(format!("graph for {s}, which is not in the language")));
            }
            assignment.insert(string_var(&s), g);
        }
        if !assignment.contains_key(DOLLAR_VAR) {
            return Err(MuError::Bundle("no graph for $".into()));
        }
        for (s, m) in spec.meanings() {
            if !assignment.contains_key(&string_var(s)) {
                return Err(MuError::Bundle(format!("no graph for {s}")));
            }
            assignment.insert(recovery_var(s), HGraph::new_atom(meaning_atom(m)));
        }
        let system = build_equations(&spec);
        Self::assemble(spec, Scheme::default(), system, Solution::new(assignment))
    }

    pub fn to_bundle(&self) -> String {
        let mut graphs = BTreeMap::new();
        graphs.insert(DOLLAR_VAR.to_string(), self.mu_dollar.minimize().to_doc());
        for (s, g) in &self.mu_of {
            graphs.insert(s.key(), g.minimize().to_doc());
        }
        let doc = BundleDoc {
            spec: self.spec.to_json(),
            graphs,
        };
        serde_json::to_string_pretty(&doc).expect("bundles always serialize") + "\n"
    }

    /// Machine-checks the encoding; failures become report entries.
    pub fn verify(&self) -> Report {
        let spec = &self.spec;
        let mut report = Report::new();

        let mut instances = 0;
        let mut failures = Vec::new();
        for x in spec.language() {
            for (s, t) in spec.decompositions(x).expect("x in language") {
                instances += 1;
                match apply(&self.mu_of[&s], &self.mu_of[&t]) {
                    Ok(v) if v.bisimilar(&self.mu_of[x]) => {}
                    Ok(_) => failures.push(format!("{s} + {t}: value differs from μ({x})")),
                    Err(e) => failures.push(format!("{s} + {t}: {e}")),
                }
            }
        }
        report.push_outcome("V1", "compositionality", format!("{instances} instances"), &failures);

        let mut failures = Vec::new();
        for (s, m) in spec.meanings() {
            match self.recover(s) {
                Ok(r) if &r == m => {}
                Ok(r) => failures.push(format!("{s}: recovered {r}, expected {m}")),
                Err(e) => failures.push(format!("{s}: {e}")),
            }
        }
        report.push_outcome("V2", "recoverability", format!("{} strings", spec.len()), &failures);

        let synonyms = spec.synonym_pairs();
        let failures: Vec<String> = synonyms
            .iter()
            .filter(|(a, b)| self.mu_of[a].root() != self.mu_of[b].root())
            .map(|(a, b)| format!("{a} ~ {b} but μ differs"))
            .collect();
        report.push_outcome("V3", "synonymy", format!("{} synonym pairs", synonyms.len()), &failures);

        let mut failures = Vec::new();
        let named = std::iter::once(("$".to_string(), &self.mu_dollar))
            .chain(self.mu_of.iter().map(|(s, g)| (s.to_string(), g)));
        for (name, g) in named {
            match functionality_violations(g) {
                Ok(bad) if bad.is_empty() => {}
                Ok(bad) => failures.push(format!("μ({name}) has {} ambiguous argument(s)", bad.len())),
                Err(()) => failures.push(format!("μ({name}) is not a set")),
            }
        }
        report.push_outcome("V4", "functionality", format!("{} values", spec.len() + 1), &failures);

        let omega = HGraph::omega();
        let failures = if self.mu_dollar.bisimilar(&omega) {
            vec![]
        } else {
            vec!["μ($) is not Ω".to_string()]
        };
        report.push_outcome("V5", "dollar-is-omega", "μ($) = Ω", &failures);

        let failures = if check_solution(&self.system, &self.solution) {
            vec![]
        } else {
            vec!["assignment does not satisfy the equations".to_string()]
        };
        report.push_outcome("V6", "solution", format!("{} equations", self.system.len()), &failures);

        let strings: Vec<&Str> = spec.language().collect();
        let mut distinct = 0;
        let mut failures = Vec::new();
        let mut collapsed = Vec::new();
        for (i, a) in strings.iter().enumerate() {
            for b in &strings[i + 1..] {
                let same_mu = self.mu_of[*a].root() == self.mu_of[*b].root();
                if spec.meanings()[*a] != spec.meanings()[*b] {
                    distinct += 1;
                    if same_mu {
                        failures.push(format!("{a} and {b} have different meanings but equal μ"));
                    }
                } else if same_mu && !spec.synonyms(a, b).expect("in language") {
                    collapsed.push(format!("{a} = {b}"));
                }
            }
        }
        report.push_outcome("V7", "separation", format!("{distinct} pairs"), &failures);

        let detail = if collapsed.is_empty() {
            "none".to_string()
        } else {
            collapsed.join("; ")
        };
        report.push("D1", "equal-mu-non-synonyms", crate::report::Status::Note, detail);
        report
    }
}

fn as_meaning(g: &HGraph) -> Result<MeaningLabel, MuError> {
    match g.as_atom() {
        Some(a) if a.namespace() == Namespace::Meaning => Ok(MeaningLabel::new(a.label())?),
        _ => Err(MuError::NotAMeaning),
    }
}

impl fmt::Display for MuEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, g) in &self.mu_of {
            writeln!(f, "μ({s}) = {}", g.serialize_graph())?;
        }
        writeln!(f, "μ($) = {}", self.mu_dollar.serialize_graph())
    }
}

/// Checks the mechanism behind `μ(a) = μ(b)` for synonymous symbols:
/// swapping `a` and `b` in every variable name and tag leaves the system
/// unchanged up to member order, so by uniqueness the solutions agree.
pub fn swap_invariance_check(spec: &LanguageSpec, a: &Symbol, b: &Symbol) -> Result<bool, MuError> {
    swap_invariance_check_with(spec, a, b, Scheme::default())
}

pub fn swap_invariance_check_with(
    spec: &LanguageSpec,
    a: &Symbol,
    b: &Symbol,
    scheme: Scheme,
) -> Result<bool, MuError> {
    let single = |x: &Symbol| -> Result<Str, MuError> {
        let s = Str::new(vec![x.clone()]).expect("one symbol");
        if spec.has_symbol(x) && spec.contains(&s) {
            Ok(s)
        } else {
            Err(MuError::NotSymbols(x.to_string()))
        }
    };
    let (sa, sb) = (single(a)?, single(b)?);
    if !spec.synonyms(&sa, &sb)? {
        return Err(MuError::NotSynonyms(sa.to_string(), sb.to_string()));
    }
    let swap = |x: &Symbol| {
        if x == a {
            b.clone()
        } else if x == b {
            a.clone()
        } else {
            x.clone()
        }
    };
    let original = build_equations_with(spec, scheme).normalized();
    let renamed = build_renamed(spec, scheme, &swap).normalized();
    Ok(original == renamed)
}
