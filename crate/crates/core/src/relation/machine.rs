use std::collections::HashMap;
use std::hash::Hash;

use crate::alphabet::{Alphabet, Sym};
use crate::error::Result;
use crate::fa::{Dfa, StateId};
use crate::limits;
use crate::relation::{RegularRelation, Shape};

/// Build a relation from a deterministic column machine.
///
/// `step(state, column)` sees `None` on tracks that are padding in this
/// column; columns that resume an ended track are never offered.
/// `accept(state, ended)` decides acceptance, where `ended[i]` tells whether
/// track `i` was padded somewhere (i.e. is shorter than the convolution).
/// Every valid column is enumerated per state, so this is meant for tracks
/// with small alphabets.
pub fn machine<S, F, A>(
    tracks: &[Alphabet],
    init: S,
    mut step: F,
    mut accept: A,
) -> Result<RegularRelation>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, &[Option<u32>]) -> Option<S>,
    A: FnMut(&S, &[bool]) -> bool,
{
    let shape = Shape::new(tracks)?;
    let n = tracks.len();
    let radix: Vec<u32> = tracks.iter().map(|t| t.size() + 1).collect();
    let mut ids: HashMap<(S, Vec<bool>), StateId> = HashMap::new();
    let mut states: Vec<(S, Vec<bool>)> = vec![(init.clone(), vec![false; n])];
    ids.insert(states[0].clone(), 0);
    let mut rows: Vec<Vec<(Sym, StateId)>> = Vec::new();
    let mut acc: Vec<bool> = Vec::new();
    let mut digits = vec![0u32; n];
    let mut col: Vec<Option<u32>> = vec![None; n];
    let mut i = 0;
    while i < states.len() {
        let (s, ended) = states[i].clone();
        acc.push(accept(&s, &ended));
        let mut row = Vec::new();
        // Odometer over columns: ended tracks stay at padding.
        for t in 0..n {
            digits[t] = if ended[t] { radix[t] - 1 } else { 0 };
        }
        loop {
            if let Some(sym) = shape.encode(&digits) {
                for t in 0..n {
                    col[t] = if digits[t] == radix[t] - 1 {
                        None
                    } else {
                        Some(digits[t])
                    };
                }
                if let Some(s2) = step(&s, &col) {
                    let e2: Vec<bool> = (0..n).map(|t| col[t].is_none()).collect();
                    let key = (s2, e2);
                    let id = match ids.get(&key) {
                        Some(&id) => id,
                        None => {
                            limits::check_states(states.len() + 1)?;
                            let id = states.len() as StateId;
                            ids.insert(key.clone(), id);
                            states.push(key);
                            id
                        }
                    };
                    row.push((sym, id));
                }
            }
            // Advance the odometer over non-ended tracks.
            let mut t = 0;
            loop {
                if t == n {
                    break;
                }
                if ended[t] {
                    t += 1;
                    continue;
                }
                digits[t] += 1;
                if digits[t] < radix[t] {
                    break;
                }
                digits[t] = 0;
                t += 1;
            }
            if t == n {
                break;
            }
        }
        row.sort_unstable_by_key(|e| e.0);
        rows.push(row);
        i += 1;
    }
    let dfa = Dfa::from_parts(shape.alphabet().clone(), rows, 0, acc).minimize();
    Ok(RegularRelation::from_minimal(shape, dfa))
}
