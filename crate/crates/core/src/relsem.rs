//! Relational scope semantics by quantifier storage.
//!
//! A clause's value is the set of all scoped readings, one per retrieval
//! order of its stored quantifiers. Values are sets, not single terms, and
//! depend only on the predicate and the argument contents.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("clause parse error: {0}")]
    Parse(String),
    #[error("clause has no arguments")]
    EmptyArguments,
    #[error("argument position {position} out of range for arity {arity}")]
    IndexOutOfRange { position: usize, arity: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantNp {
    #[serde(rename = "quant")]
    pub quantifier: String,
    pub noun: String,
}

impl QuantNp {
    pub fn new(quantifier: &str, noun: &str) -> Result<Self, RelError> {
        if quantifier.is_empty() || noun.is_empty() {
            return Err(RelError::Parse("quantifier and noun must be nonempty".into()));
        }
        Ok(QuantNp {
            quantifier: quantifier.into(),
            noun: noun.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    predicate: String,
    arguments: Vec<QuantNp>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ClauseDoc {
    pred: String,
    args: Vec<QuantNp>,
}

impl Clause {
    pub fn new(predicate: &str, arguments: Vec<QuantNp>) -> Result<Self, RelError> {
        if predicate.is_empty() {
            return Err(RelError::Parse("predicate must be nonempty".into()));
        }
        if arguments.is_empty() {
            return Err(RelError::EmptyArguments);
        }
        for a in &arguments {
            QuantNp::new(&a.quantifier, &a.noun)?;
        }
        Ok(Clause {
            predicate: predicate.into(),
            arguments,
        })
    }

    pub fn predicate(&self) -> &str {
        &self.predicate
    }

    pub fn arguments(&self) -> &[QuantNp] {
        &self.arguments
    }

    pub fn arity(&self) -> usize {
        self.arguments.len()
    }

    pub fn with_argument(&self, position: usize, np: QuantNp) -> Result<Clause, RelError> {
        if position >= self.arity() {
            return Err(RelError::IndexOutOfRange {
                position,
                arity: self.arity(),
            });
        }
        let mut c = self.clone();
        c.arguments[position] = np;
        Ok(c)
    }
}

pub fn parse_clause(text: &str) -> Result<Clause, RelError> {
    let doc: ClauseDoc = serde_json::from_str(text).map_err(|e| RelError::Parse(e.to_string()))?;
    Clause::new(&doc.pred, doc.args)
}

/// Variables are numbered by scope depth, outermost quantifier first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reading {
    Quant {
        quantifier: String,
        var: usize,
        noun: String,
        body: Box<Reading>,
    },
    Pred { predicate: String, vars: Vec<usize> },
}

pub fn render(r: &Reading) -> String {
    r.to_string()
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reading::Quant {
                quantifier,
                var,
                noun,
                body,
            } => write!(f, "({quantifier} x{var} {noun} {body})"),
            Reading::Pred { predicate, vars } => {
                write!(f, "({predicate}")?;
                for v in vars {
                    write!(f, " x{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Readings keyed by their rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemValue {
    readings: BTreeMap<String, Reading>,
}

impl SemValue {
    pub fn len(&self) -> usize {
        self.readings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.readings.is_empty()
    }

    pub fn readings(&self) -> impl Iterator<Item = &Reading> {
        self.readings.values()
    }

    /// Sorted renderings.
    pub fn rendered(&self) -> Vec<String> {
        self.readings.keys().cloned().collect()
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Discharges the store in `order`, first element outermost.
fn retrieve(clause: &Clause, order: &[usize]) -> Reading {
    let mut depth_of = vec![0; clause.arity()];
    for (d, &pos) in order.iter().enumerate() {
        depth_of[pos] = d + 1;
    }
    let mut body = Reading::Pred {
        predicate: clause.predicate.clone(),
        vars: depth_of.clone(),
    };
    for &pos in order.iter().rev() {
        let np = &clause.arguments[pos];
        body = Reading::Quant {
            quantifier: np.quantifier.clone(),
            var: depth_of[pos],
            noun: np.noun.clone(),
            body: Box::new(body),
        };
    }
    body
}

pub fn sv(clause: &Clause) -> SemValue {
    let readings = permutations(clause.arity())
        .iter()
        .map(|order| {
            let r = retrieve(clause, order);
            (r.to_string(), r)
        })
        .collect();
    SemValue { readings }
}

/// Content-equal replacement at `position` must leave the value unchanged.
/// Replacements with different content impose no requirement.
pub fn systematicity_check(clause: &Clause, position: usize, replacement: &QuantNp) -> Result<bool, RelError> {
    let replaced = clause.with_argument(position, replacement.clone())?;
    if &clause.arguments[position] != replacement {
        return Ok(true);
    }
    Ok(sv(clause) == sv(&replaced))
}

/// Checks a reading against its clause: every quantifier once, the core
/// once, distinct binders, every predicate argument bound from above.
pub fn check_reading(clause: &Clause, reading: &Reading) -> Result<(), String> {
    let mut seen = Vec::new();
    let mut binders = Vec::new();
    let mut node = reading;
    loop {
        match node {
            Reading::Quant {
                quantifier,
                var,
                noun,
                body,
            } => {
                if binders.contains(var) {
                    return Err(format!("x{var} bound twice"));
                }
                binders.push(*var);
                seen.push(QuantNp {
                    quantifier: quantifier.clone(),
                    noun: noun.clone(),
                });
                node = body;
            }
            Reading::Pred { predicate, vars } => {
                if predicate != &clause.predicate || vars.len() != clause.arity() {
                    return Err("predicate core does not match the clause".into());
                }
                if let Some(v) = vars.iter().find(|v| !binders.contains(v)) {
                    return Err(format!("x{v} is free"));
                }
                for (pos, v) in vars.iter().enumerate() {
                    let depth = binders.iter().position(|b| b == v).expect("bound");
                    if seen[depth] != clause.arguments[pos] {
                        return Err(format!("argument {pos} bound by the wrong quantifier"));
                    }
                }
                let mut used = vars.clone();
                used.sort_unstable();
                used.dedup();
                if used.len() != clause.arity() || binders.len() != clause.arity() {
                    return Err("quantifier count does not match the clause".into());
                }
                return Ok(());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(k: usize) -> Clause {
        let nps = [("every", "dog"), ("some", "cat"), ("no", "bird"), ("most", "fish")];
        let args = nps[..k].iter().map(|(q, n)| QuantNp::new(q, n).unwrap()).collect();
        Clause::new("saw", args).unwrap()
    }

    #[test]
    fn parsing() {
        let c = parse_clause(
            r#"{"pred":"saw","args":[{"quant":"every","noun":"dog"},{"quant":"some","noun":"cat"}]}"#,
        )
        .unwrap();
        assert_eq!(c.arity(), 2);
        let c = parse_clause(r#"{"pred":"barks","args":[{"quant":"every","noun":"dog"}]}"#).unwrap();
        assert_eq!(c.arity(), 1);
        assert_eq!(parse_clause(r#"{"pred":"x","args":[]}"#), Err(RelError::EmptyArguments));
        assert!(matches!(parse_clause("{"), Err(RelError::Parse(_))));
        assert!(matches!(
            parse_clause(r#"{"pred":"x","args":[{"quant":"","noun":"dog"}]}"#),
            Err(RelError::Parse(_))
        ));
    }

    #[test]
    fn two_readings() {
        assert_eq!(
            sv(&clause(2)).rendered(),
            [
                "(every x1 dog (some x2 cat (saw x1 x2)))",
                "(some x1 cat (every x2 dog (saw x2 x1)))"
            ]
        );
        let barks = Clause::new("barks", vec![QuantNp::new("every", "dog").unwrap()]).unwrap();
        assert_eq!(sv(&barks).rendered(), ["(every x1 dog (barks x1))"]);
    }

    #[test]
    fn factorial_counts_and_invariants() {
        for (k, expected) in [(1, 1), (2, 2), (3, 6), (4, 24)] {
            let c = clause(k);
            let v = sv(&c);
            assert_eq!(v.len(), expected);
            for r in v.readings() {
                check_reading(&c, r).unwrap();
            }
        }
    }

    #[test]
    fn repeated_arguments_stay_distinct() {
        let np = QuantNp::new("every", "dog").unwrap();
        for k in 1..=4 {
            let c = Clause::new("r", vec![np.clone(); k]).unwrap();
            assert_eq!(sv(&c).len(), (1..=k).product::<usize>());
        }
    }

    #[test]
    fn systematicity() {
        let c = clause(3);
        assert!(systematicity_check(&c, 0, &QuantNp::new("every", "dog").unwrap()).unwrap());
        assert_eq!(
            systematicity_check(&c, 3, &QuantNp::new("every", "dog").unwrap()),
            Err(RelError::IndexOutOfRange { position: 3, arity: 3 })
        );
        let text = r#"{"pred":"saw","args":[{"quant":"every","noun":"dog"},{"quant":"some","noun":"cat"}]}"#;
        assert_eq!(sv(&parse_clause(text).unwrap()), sv(&parse_clause(text).unwrap()));
    }

    #[test]
    fn malformed_readings_rejected() {
        let c = clause(2);
        let free = Reading::Quant {
            quantifier: "every".into(),
            var: 1,
            noun: "dog".into(),
            body: Box::new(Reading::Pred {
                predicate: "saw".into(),
                vars: vec![1, 2],
            }),
        };
        assert!(check_reading(&c, &free).is_err());
    }
}
