//! Synchronous product of relations placed on shared tracks.
//!
//! Every boolean operation, cylindrification and composition reduces to this
//! one construction. A positive constraint `(r, map)` demands that the tracks
//! `map[0], map[1], ...` of the result, read together, form a tuple of `r`; a
//! negative constraint forbids it. Tracks may repeat inside a map.

use std::collections::HashMap;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::fa::{Dfa, StateId};
use crate::limits;
use crate::relation::{RegularRelation, Shape};

const UNSET: u32 = u32::MAX;
/// Positive constraint whose tuple has ended / negative constraint already violated.
const FINISHED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Constraint<'a> {
    pub rel: &'a RegularRelation,
    pub map: Vec<usize>,
    pub positive: bool,
}

impl<'a> Constraint<'a> {
    pub fn pos(rel: &'a RegularRelation, map: Vec<usize>) -> Self {
        Constraint {
            rel,
            map,
            positive: true,
        }
    }

    pub fn neg(rel: &'a RegularRelation, map: Vec<usize>) -> Self {
        Constraint {
            rel,
            map,
            positive: false,
        }
    }
}

/// One way to advance a positive constraint: its column digits and successor.
struct Choice {
    digits: Vec<u32>,
    next: u32,
}

/// Choices of a positive constraint in one state, bucketed by the digits on
/// tracks fixed by earlier constraints.
type Index = HashMap<Vec<u32>, Vec<Choice>>;

struct Plan<'a> {
    rel: &'a RegularRelation,
    map: Vec<usize>,
    /// Positions of `map` whose tracks are assigned before this constraint runs.
    known: Vec<usize>,
}

/// Build the relation over `tracks` satisfying all constraints.
pub fn join(tracks: &[Alphabet], constraints: &[Constraint]) -> Result<RegularRelation> {
    let shape = Shape::new(tracks)?;
    let n = tracks.len();
    for c in constraints {
        if c.map.len() != c.rel.arity() {
            return Err(Error::ArityMismatch(format!(
                "map of length {} for relation of arity {}",
                c.map.len(),
                c.rel.arity()
            )));
        }
        for (i, &t) in c.map.iter().enumerate() {
            if t >= n {
                return Err(Error::TrackOutOfRange(t, n));
            }
            if c.rel.tracks()[i] != tracks[t] {
                return Err(Error::AlphabetMismatch(format!(
                    "track {t} is {} but constraint expects {}",
                    tracks[t],
                    c.rel.tracks()[i]
                )));
            }
        }
    }

    // Uncovered tracks get an unconstrained unary relation.
    let mut covered = vec![false; n];
    for c in constraints.iter().filter(|c| c.positive) {
        for &t in &c.map {
            covered[t] = true;
        }
    }
    let universals: Vec<(usize, RegularRelation)> = (0..n)
        .filter(|&t| !covered[t])
        .map(|t| {
            (
                t,
                RegularRelation::unary(&Dfa::universal(tracks[t].clone())),
            )
        })
        .collect();
    let mut positives: Vec<(&RegularRelation, Vec<usize>)> = constraints
        .iter()
        .filter(|c| c.positive)
        .map(|c| (c.rel, c.map.clone()))
        .collect();
    positives.extend(universals.iter().map(|(t, r)| (r, vec![*t])));
    let negatives: Vec<(&RegularRelation, Vec<usize>)> = constraints
        .iter()
        .filter(|c| !c.positive)
        .map(|c| (c.rel, c.map.clone()))
        .collect();

    // Greedy order: prefer constraints with many already-fixed tracks.
    let mut plans: Vec<Plan> = Vec::with_capacity(positives.len());
    let mut assigned = vec![false; n];
    let mut remaining: Vec<usize> = (0..positives.len()).collect();
    while !remaining.is_empty() {
        let score = |k: usize| {
            let (r, map) = &positives[k];
            let fixed = map.iter().filter(|&&t| assigned[t]).count();
            (fixed, r.arity(), std::cmp::Reverse(k))
        };
        let (pos, &best) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(_, &k)| score(k))
            .expect("non-empty");
        remaining.remove(pos);
        let (rel, map) = positives[best].clone();
        let known: Vec<usize> = (0..map.len()).filter(|&i| assigned[map[i]]).collect();
        for &t in &map {
            assigned[t] = true;
        }
        plans.push(Plan { rel, map, known });
    }

    let np = plans.len();
    let nn = negatives.len();
    let mut index_cache: HashMap<(usize, u32), Arc<Index>> = HashMap::new();

    let initial: Vec<u32> = plans
        .iter()
        .map(|p| p.rel.dfa().initial())
        .chain(negatives.iter().map(|(r, _)| r.dfa().initial()))
        .collect();
    let mut ids: HashMap<Vec<u32>, StateId> = HashMap::new();
    let mut states: Vec<Vec<u32>> = vec![initial.clone()];
    ids.insert(initial, 0);
    let mut rows: Vec<Vec<(Sym, StateId)>> = Vec::new();
    let mut accepting: Vec<bool> = Vec::new();

    let mut column = vec![UNSET; n];
    let mut chosen = vec![0u32; np];
    let mut neg_digits: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let st = states[i].clone();
        let acc = plans
            .iter()
            .enumerate()
            .all(|(k, p)| st[k] == FINISHED || p.rel.dfa().is_accepting(st[k]))
            && negatives
                .iter()
                .enumerate()
                .all(|(k, (r, _))| st[np + k] == FINISHED || !r.dfa().is_accepting(st[np + k]));
        accepting.push(acc);

        // Fetch indexes for this product state.
        let indexes: Vec<Arc<Index>> = plans
            .iter()
            .enumerate()
            .map(|(k, p)| {
                index_cache
                    .entry((k, st[k]))
                    .or_insert_with(|| Arc::new(build_index(p, st[k])))
                    .clone()
            })
            .collect();

        let mut row: Vec<(Sym, StateId)> = Vec::new();
        let mut ctx = Dfs {
            plans: &plans,
            indexes: &indexes,
            column: &mut column,
            chosen: &mut chosen,
            key: Vec::new(),
        };
        let mut leaves: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        ctx.run(0, &mut |col, ch| leaves.push((col.to_vec(), ch.to_vec())));

        'leaf: for (col, ch) in leaves {
            let sym = match shape.encode(&col) {
                Some(s) => s,
                None => continue,
            };
            let mut next = ch;
            for (k, (r, map)) in negatives.iter().enumerate() {
                let q = st[np + k];
                if q == FINISHED {
                    next.push(FINISHED);
                    continue;
                }
                neg_digits.clear();
                neg_digits.extend(map.iter().map(|&t| col[t]));
                match r.shape().encode(&neg_digits) {
                    None => {
                        if r.dfa().is_accepting(q) {
                            continue 'leaf;
                        }
                        next.push(FINISHED);
                    }
                    Some(s) => match r.dfa().step(q, s) {
                        Some(q2) => next.push(q2),
                        None => next.push(FINISHED),
                    },
                }
            }
            debug_assert_eq!(next.len(), np + nn);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = states.len() as StateId;
                    limits::check_states(states.len() + 1)?;
                    ids.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            row.push((sym, id));
        }
        row.sort_unstable_by_key(|e| e.0);
        rows.push(row);
        i += 1;
    }

    let dfa = Dfa::from_parts(shape.alphabet().clone(), rows, 0, accepting).minimize();
    Ok(RegularRelation::from_minimal(shape, dfa))
}

fn build_index(plan: &Plan, q: u32) -> Index {
    let shape = plan.rel.shape();
    let arity = shape.arity();
    let pads: Vec<u32> = (0..arity).map(|i| shape.pad(i)).collect();
    let mut idx: Index = HashMap::new();
    let mut push = |digits: Vec<u32>, next: u32| {
        let key: Vec<u32> = plan.known.iter().map(|&i| digits[i]).collect();
        idx.entry(key).or_default().push(Choice { digits, next });
    };
    if q == FINISHED {
        push(pads, FINISHED);
        return idx;
    }
    let dfa = plan.rel.dfa();
    let mut buf = Vec::with_capacity(arity);
    for &(s, t) in dfa.transitions(q) {
        shape.decode_into(s, &mut buf);
        push(buf.clone(), t);
    }
    if dfa.is_accepting(q) {
        push(pads, FINISHED);
    }
    idx
}

struct Dfs<'p, 'a> {
    plans: &'p [Plan<'a>],
    indexes: &'p [Arc<Index>],
    column: &'p mut Vec<u32>,
    chosen: &'p mut Vec<u32>,
    key: Vec<u32>,
}

impl Dfs<'_, '_> {
    fn run(&mut self, k: usize, leaf: &mut dyn FnMut(&[u32], &[u32])) {
        if k == self.plans.len() {
            leaf(self.column, self.chosen);
            return;
        }
        let plan = &self.plans[k];
        self.key.clear();
        for &i in &plan.known {
            self.key.push(self.column[plan.map[i]]);
        }
        let index = self.indexes[k].clone();
        let Some(choices) = index.get(&self.key) else {
            return;
        };
        let mut set: Vec<usize> = Vec::with_capacity(plan.map.len());
        for ch in choices {
            set.clear();
            let mut ok = true;
            for (i, &t) in plan.map.iter().enumerate() {
                let d = ch.digits[i];
                if self.column[t] == UNSET {
                    self.column[t] = d;
                    set.push(t);
                } else if self.column[t] != d {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.chosen[k] = ch.next;
                self.run(k + 1, leaf);
            }
            for &t in &set {
                self.column[t] = UNSET;
            }
        }
    }
}
