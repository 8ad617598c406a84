//! Finite random structures and a naive model checker.

use std::collections::{BTreeMap, HashSet};

use cgauto::fo::{AutomaticStructure, Formula};
use cgauto::{Alphabet, RegularRelation, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub fn ab() -> Alphabet {
    Alphabet::plain(&["a", "b"]).unwrap()
}

/// All words of length at most 2 over `{a, b}`.
pub fn universe() -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for s in 0..2 {
        out.push(Word(vec![s]));
        for t in 0..2 {
            out.push(Word(vec![s, t]));
        }
    }
    out
}

pub struct Model {
    pub structure: AutomaticStructure,
    pub domain: Vec<Word>,
    pub tables: BTreeMap<String, HashSet<Vec<Word>>>,
}

/// A finite structure on a random non-empty subset of the universe with
/// random relations `U/1`, `R/2`, `T/3`.
pub fn random_model(seed: u64) -> Model {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut domain: Vec<Word> = universe()
        .into_iter()
        .filter(|_| rng.gen_bool(0.75))
        .collect();
    if domain.is_empty() {
        domain.push(Word::empty());
    }
    let tuples: Vec<Vec<Word>> = domain.iter().map(|u| vec![u.clone()]).collect();
    let dom = RegularRelation::from_tuples(&[ab()], &tuples).unwrap();
    let mut s = AutomaticStructure::new("finite", dom.dfa());
    let mut tables = BTreeMap::new();
    for (name, arity, density) in [("U", 1, 0.5), ("R", 2, 0.3), ("T", 3, 0.1)] {
        let mut set = HashSet::new();
        let mut all: Vec<Vec<Word>> = vec![vec![]];
        for _ in 0..arity {
            all = all
                .into_iter()
                .flat_map(|t| {
                    domain.iter().map(move |u| {
                        let mut t = t.clone();
                        t.push(u.clone());
                        t
                    })
                })
                .collect();
        }
        for t in all {
            if rng.gen_bool(density) {
                set.insert(t);
            }
        }
        let list: Vec<Vec<Word>> = set.iter().cloned().collect();
        s.insert(
            name,
            RegularRelation::from_tuples(&vec![ab(); arity], &list).unwrap(),
        )
        .unwrap();
        tables.insert(name.to_string(), set);
    }
    Model {
        structure: s,
        domain,
        tables,
    }
}

pub fn holds(m: &Model, f: &Formula, env: &mut BTreeMap<String, Word>) -> bool {
    match f {
        Formula::Atom(r, vs) => {
            m.tables[r].contains(&vs.iter().map(|v| env[v].clone()).collect::<Vec<_>>())
        }
        Formula::VarEqual(a, b) => env[a] == env[b],
        Formula::Not(g) => !holds(m, g, env),
        Formula::And(a, b) => holds(m, a, env) && holds(m, b, env),
        Formula::Or(a, b) => holds(m, a, env) || holds(m, b, env),
        Formula::Implies(a, b) => !holds(m, a, env) || holds(m, b, env),
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let saved = env.get(x).cloned();
            let want = matches!(f, Formula::Exists(..));
            let mut result = !want;
            for u in &m.domain {
                env.insert(x.clone(), u.clone());
                if holds(m, g, env) == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(u) => env.insert(x.clone(), u),
                None => env.remove(x),
            };
            result
        }
    }
}

pub fn assignments(domain: &[Word], k: usize) -> Vec<Vec<Word>> {
    let mut all = vec![vec![]];
    for _ in 0..k {
        all = all
            .into_iter()
            .flat_map(|t: Vec<Word>| {
                domain.iter().map(move |u| {
                    let mut t = t.clone();
                    t.push(u.clone());
                    t
                })
            })
            .collect();
    }
    all
}

/// Number of assignments on which the compiled relation and the naive
/// evaluation disagree.
pub fn mismatches(m: &Model, f: &Formula) -> usize {
    let free: Vec<String> = f.free_vars().into_iter().collect();
    if free.is_empty() {
        let got = m.structure.decide(f).unwrap();
        return (got != holds(m, f, &mut BTreeMap::new())) as usize;
    }
    let order: Vec<&str> = free.iter().map(String::as_str).collect();
    let rel = m.structure.compile(f, &order).unwrap();
    let mut bad = 0;
    for t in assignments(&universe(), free.len()) {
        let in_domain = t.iter().all(|u| m.domain.contains(u));
        let expect = in_domain && {
            let mut env: BTreeMap<String, Word> =
                free.iter().cloned().zip(t.iter().cloned()).collect();
            holds(m, f, &mut env)
        };
        if rel.contains(&t).unwrap() != expect {
            bad += 1;
        }
    }
    bad
}

/// Random formula over `U/1`, `R/2`, `T/3` and equality with quantifier and
/// connective nesting at most `depth`.
pub fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    let var = |rng: &mut ChaCha8Rng| VARS[rng.gen_range(0..VARS.len())].to_string();
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..4) {
            0 => Formula::Atom("U".into(), vec![var(rng)]),
            1 => Formula::Atom("R".into(), vec![var(rng), var(rng)]),
            2 => Formula::Atom("T".into(), vec![var(rng), var(rng), var(rng)]),
            _ => Formula::VarEqual(var(rng), var(rng)),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(random_formula(rng, depth - 1));
    match rng.gen_range(0..6) {
        0 => Formula::Not(sub(rng)),
        1 => Formula::And(sub(rng), sub(rng)),
        2 => Formula::Or(sub(rng), sub(rng)),
        3 => Formula::Implies(sub(rng), sub(rng)),
        4 => Formula::Exists(var(rng), sub(rng)),
        _ => Formula::Forall(var(rng), sub(rng)),
    }
}
