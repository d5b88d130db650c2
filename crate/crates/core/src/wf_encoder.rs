//! The well-founded encoding `m̄` and its pseudo-application `APP*`.
//!
//! `m̄(s) = { <<s,0>, m(s)> } ∪ { <<t,1>, m(s·t)> : s·t ∈ L }`, with strings
//! written as tag atoms. Every value is an ordinary well-founded set, but
//! `APP*` has to look the result up in the meaning table: it takes the language
//! spec as a parameter, whereas [`crate::mu_encoder::apply`] works on two graphs
//! alone.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::hyperset::{decode_pair_in, ArenaBuilder, AtomLabel, HGraph, Namespace, Node};
use crate::langmodel::{LangError, LanguageSpec, MeaningLabel, Str};
use crate::report::{Report, Status};

pub const TAG_SELF: &str = "0";
pub const TAG_EXTENSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WfError {
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error("not an encoding: {0}")]
    NotAnEncoding(String),
    #[error("{0}·{1} is not in the language")]
    NotComposable(String, String),
}

fn tag(label: &str) -> AtomLabel {
    AtomLabel::tag(label).expect("nonempty tag")
}

pub fn mbar(spec: &LanguageSpec, s: &Str) -> Result<HGraph, WfError> {
    let own = spec.meaning(s)?;
    let mut b = ArenaBuilder::new();
    let entry = |b: &mut ArenaBuilder, t: &Str, bit: &str, m: &MeaningLabel| {
        let t = b.atom(&tag(&t.key()));
        let bit = b.atom(&tag(bit));
        let key = b.pair(t, bit);
        let value = b.atom(&AtomLabel::meaning(m.as_str()).expect("nonempty meaning"));
        b.pair(key, value)
    };
    let mut members = vec![entry(&mut b, s, TAG_SELF, own)];
    for t in spec.right_extensions(s)? {
        let m = spec.meaning(&s.concat(&t))?;
        members.push(entry(&mut b, &t, TAG_EXTENSION, m));
    }
    let root = b.set(members);
    Ok(HGraph::from_parts(b.finish(), root))
}

/// The string and meaning carried by the unique 0-tagged member.
fn self_entry(spec: &LanguageSpec, x: &HGraph) -> Result<(Str, MeaningLabel), WfError> {
    let x = x.minimize();
    let arena = x.arena();
    let Node::Set(members) = x.root_node() else {
        return Err(WfError::NotAnEncoding("an atom".into()));
    };
    let atom_of = |n| match arena.node(n) {
        Node::Atom(a) => Some(a),
        Node::Set(_) => None,
    };
    let mut found = Vec::new();
    for &m in members {
        let Some((key, value)) = decode_pair_in(arena, m) else { continue };
        let Some((string, bit)) = decode_pair_in(arena, key) else { continue };
        if atom_of(bit) != Some(&tag(TAG_SELF)) {
            continue;
        }
        found.push((string, value));
    }
    let [(string, value)] = found[..] else {
        return Err(WfError::NotAnEncoding(format!("{} 0-tagged members", found.len())));
    };
    let string = match atom_of(string) {
        Some(a) if a.namespace() == Namespace::Tag => Str::from_key(a.label())
            .map_err(|e| WfError::NotAnEncoding(format!("bad string tag: {e}")))?,
        _ => return Err(WfError::NotAnEncoding("string tag is not a tag atom".into())),
    };
    if !spec.contains(&string) {
        return Err(WfError::NotAnEncoding(format!("{string} is not in the language")));
    }
    let meaning = match atom_of(value) {
        Some(a) if a.namespace() == Namespace::Meaning => MeaningLabel::new(a.label())?,
        _ => return Err(WfError::NotAnEncoding("value is not a meaning atom".into())),
    };
    Ok((string, meaning))
}

pub fn wf_recover(spec: &LanguageSpec, x: &HGraph) -> Result<MeaningLabel, WfError> {
    self_entry(spec, x).map(|(_, m)| m)
}

/// `APP*(m̄(s), m̄(t)) = m̄(s·t)`, found through the meaning table.
pub fn app_star(spec: &LanguageSpec, x: &HGraph, y: &HGraph) -> Result<HGraph, WfError> {
    let (u, _) = self_entry(spec, x)?;
    let (v, _) = self_entry(spec, y)?;
    let uv = u.concat(&v);
    if !spec.contains(&uv) {
        return Err(WfError::NotComposable(u.to_string(), v.to_string()));
    }
    mbar(spec, &uv)
}

/// `m̄` tabulated over a whole language.
#[derive(Clone, Debug)]
pub struct WfEncoding {
    spec: LanguageSpec,
    mbar_of: BTreeMap<Str, HGraph>,
}

impl WfEncoding {
    pub fn new(spec: &LanguageSpec) -> Result<Self, WfError> {
        let mbar_of = spec
            .language()
            .map(|s| Ok((s.clone(), mbar(spec, s)?)))
            .collect::<Result<_, WfError>>()?;
        Ok(WfEncoding {
            spec: spec.clone(),
            mbar_of,
        })
    }

    pub fn spec(&self) -> &LanguageSpec {
        &self.spec
    }

    pub fn get(&self, s: &Str) -> Option<&HGraph> {
        self.mbar_of.get(s)
    }

    pub fn mbar_of(&self) -> &BTreeMap<Str, HGraph> {
        &self.mbar_of
    }
}

pub fn verify_wf(spec: &LanguageSpec) -> Report {
    let mut report = Report::new();
    let enc = match WfEncoding::new(spec) {
        Ok(enc) => enc,
        Err(e) => {
            report.push("W0", "construction", Status::Fail, e.to_string());
            return report;
        }
    };

    let mut failures = Vec::new();
    for (s, m) in spec.meanings() {
        match wf_recover(spec, &enc.mbar_of[s]) {
            Ok(r) if &r == m => {}
            Ok(r) => failures.push(format!("{s}: recovered {r}, expected {m}")),
            Err(e) => failures.push(format!("{s}: {e}")),
        }
    }
    report.push_outcome("W1", "recoverability", format!("{} strings", spec.len()), &failures);

    let mut instances = 0;
    let mut failures = Vec::new();
    for x in spec.language() {
        for (s, t) in spec.decompositions(x).expect("x in language") {
            instances += 1;
            match app_star(spec, &enc.mbar_of[&s], &enc.mbar_of[&t]) {
                Ok(v) if v.bisimilar(&enc.mbar_of[x]) => {}
                Ok(_) => failures.push(format!("{s} + {t}: value differs from m̄({x})")),
                Err(e) => failures.push(format!("{s} + {t}: {e}")),
            }
        }
    }
    report.push_outcome("W2", "app-star", format!("{instances} instances"), &failures);

    let failures: Vec<String> = enc
        .mbar_of
        .iter()
        .filter(|(_, g)| !g.is_wellfounded())
        .map(|(s, _)| format!("m̄({s}) is cyclic"))
        .collect();
    report.push_outcome("W3", "well-founded", format!("{} values", spec.len()), &failures);

    report.push(
        "W4",
        "table-dependence",
        Status::Note,
        "APP* takes the meaning table as an input; μ application takes only its two arguments",
    );
    report
}
