mod common;

use std::collections::BTreeMap;

use afa_core::eqsolver::{check_solution, solve, EquationSystem, Solution, Term};
use afa_core::hyperset::NestedSetTerm;
use common::random_system;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Bottom-up substitution for systems whose references all point downward.
fn substitute(sys: &EquationSystem) -> BTreeMap<String, NestedSetTerm> {
    fn value(t: &Term, env: &BTreeMap<String, NestedSetTerm>) -> NestedSetTerm {
        match t {
            Term::Var(v) => env[v].clone(),
            Term::Atom(a) => NestedSetTerm::Atom(a.clone()),
            Term::Set(ms) => NestedSetTerm::set(ms.iter().map(|m| value(m, env))),
            Term::Pair(x, y) => {
                let (x, y) = (value(x, env), value(y, env));
                NestedSetTerm::set([NestedSetTerm::set([x.clone()]), NestedSetTerm::set([x, y])])
            }
        }
    }
    let mut env = BTreeMap::new();
    let mut order: Vec<&String> = sys.bindings().keys().collect();
    order.sort_by_key(|v| v[1..].parse::<usize>().unwrap());
    for v in order {
        let t = value(&sys.bindings()[v], &env);
        env.insert(v.clone(), t);
    }
    env
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solutions_satisfy_their_systems(seed in any::<u64>()) {
        let sys = random_system(seed, false);
        let sol = solve(&sys).unwrap();
        prop_assert!(check_solution(&sys, &sol));
    }

    #[test]
    fn renaming_does_not_change_the_solution(seed in any::<u64>()) {
        let sys = random_system(seed, false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names: Vec<String> = sys.variables().map(String::from).collect();
        let mut targets: Vec<String> = (0..names.len()).map(|i| format!("Y{i}")).collect();
        targets.shuffle(&mut rng);
        let rho: BTreeMap<_, _> = names.iter().cloned().zip(targets).collect();
        let sol = solve(&sys).unwrap();
        let renamed = solve(&sys.rename_vars(&rho).unwrap()).unwrap();
        for (x, y) in &rho {
            prop_assert!(renamed.get(y).unwrap().bisimilar(sol.get(x).unwrap()));
        }
    }

    #[test]
    fn wellfounded_systems_match_substitution(seed in any::<u64>()) {
        let sys = random_system(seed, true);
        let sol = solve(&sys).unwrap();
        for (v, expected) in substitute(&sys) {
            prop_assert_eq!(sol.get(&v).unwrap().decorate().unwrap(), expected);
        }
    }

    #[test]
    fn a_wrong_assignment_is_rejected(seed in any::<u64>()) {
        let sys = random_system(seed, true);
        let sol = solve(&sys).unwrap();
        let mut assignment = sol.assignment().clone();
        let first = assignment.keys().next().unwrap().clone();
        let wrapped = afa_core::hyperset::HGraph::set_of(&[assignment[&first].clone()]);
        assignment.insert(first, wrapped);
        prop_assert!(!check_solution(&sys, &Solution::new(assignment)));
    }
}
