use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::sync::Arc;

use crate::alphabet::{llex_cmp, Word};
use crate::decide::Evaluator;
use crate::error::Result;
use crate::groups::{GraphAutomaticPresentation, Side};
use crate::par::{self, Parallelism};
use crate::relation::RegularRelation;

/// Evaluators for every generator followed by its inverse.
fn edge_evaluators(p: &GraphAutomaticPresentation) -> Result<Vec<Arc<Evaluator>>> {
    let mut out = Vec::with_capacity(2 * p.generators().len());
    for g in p.generators() {
        out.push(g.evaluator(Side::Right, false)?);
        out.push(g.evaluator(Side::Right, true)?);
    }
    Ok(out)
}

/// Spheres of radius `0..=radius` around the identity, each sorted by
/// length-lexicographic order.
pub fn ball_shells(
    p: &GraphAutomaticPresentation,
    radius: usize,
    mode: Parallelism,
) -> Result<Vec<Vec<Word>>> {
    let evs = edge_evaluators(p)?;
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(p.identity().clone());
    let mut shells = vec![vec![p.identity().clone()]];
    for _ in 0..radius {
        let frontier = shells.last().expect("non-empty");
        let nbrs: Vec<Result<Vec<Word>>> = par::map(mode, frontier, |u| {
            evs.iter().map(|e| e.eval(&[u])).collect()
        });
        let mut next = Vec::new();
        for r in nbrs {
            for v in r? {
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        let mut keyed: Vec<(usize, Word)> = next.into_iter().map(|w| (w.len(), w)).collect();
        par::sort(mode, &mut keyed);
        shells.push(keyed.into_iter().map(|(_, w)| w).collect());
    }
    Ok(shells)
}

/// All representatives within distance `radius` of the identity, shell by
/// shell, each shell in length-lexicographic order.
pub fn ball(p: &GraphAutomaticPresentation, radius: usize) -> Result<Vec<Word>> {
    Ok(ball_shells(p, radius, Parallelism::default())?.concat())
}

/// `C = C1 * C2` for one function graph: states of the relation times
/// states of the domain.
pub fn growth_constant(rel: &RegularRelation, p: &GraphAutomaticPresentation) -> usize {
    rel.num_states() * p.domain().num_states()
}

/// Ball sizes against the bound `|Σ|^(C n)`.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub sizes: Vec<usize>,
    /// Per generator: constants for the edge relation and its transpose.
    pub constants: Vec<(String, usize, usize)>,
    /// The largest constant, used in the bound.
    pub c: usize,
    pub alphabet_size: u32,
    /// `ln` of the bound `|Σ|^(C n)` for each radius.
    pub log_bounds: Vec<f64>,
}

impl GrowthReport {
    pub fn within_bound(&self) -> bool {
        self.sizes
            .iter()
            .zip(&self.log_bounds)
            .all(|(&s, &b)| (s as f64).ln() <= b + 1e-9)
    }

    pub fn nondecreasing(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] <= w[1])
    }
}

pub fn growth_profile(p: &GraphAutomaticPresentation, radius: usize) -> Result<GrowthReport> {
    let shells = ball_shells(p, radius, Parallelism::default())?;
    let mut sizes = Vec::with_capacity(radius + 1);
    let mut total = 0;
    for s in &shells {
        total += s.len();
        sizes.push(total);
    }
    let mut constants = Vec::new();
    for g in p.generators() {
        let fwd = growth_constant(g.right(), p);
        let back = growth_constant(&g.right().transpose()?, p);
        constants.push((g.name().to_string(), fwd, back));
    }
    let c = constants
        .iter()
        .map(|&(_, a, b)| a.max(b))
        .max()
        .unwrap_or(0);
    let alphabet_size = p.alphabet().size();
    let ln_sigma = (alphabet_size.max(1) as f64).ln();
    let log_bounds = (0..=radius).map(|n| (c * n) as f64 * ln_sigma).collect();
    Ok(GrowthReport {
        sizes,
        constants,
        c,
        alphabet_size,
        log_bounds,
    })
}

/// Edges `(u, v)` met during a ball search of the given radius that break
/// `|v| <= |u| + C` for their relation. Empty when the constant growth bound
/// holds on the sample.
pub fn cgl_violations(
    p: &GraphAutomaticPresentation,
    radius: usize,
) -> Result<Vec<(String, Word, Word)>> {
    let words = ball(p, radius)?;
    let mut out = Vec::new();
    for g in p.generators() {
        for inverse in [false, true] {
            let rel = if inverse {
                g.right().transpose()?
            } else {
                g.right().clone()
            };
            let c = growth_constant(&rel, p);
            let ev = g.evaluator(Side::Right, inverse)?;
            for u in &words {
                let v = ev.eval(&[u])?;
                if v.len() > u.len() + c {
                    let name = if inverse {
                        format!("{}^-1", g.name())
                    } else {
                        g.name().to_string()
                    };
                    out.push((name, u.clone(), v));
                }
            }
        }
    }
    Ok(out)
}

/// Compare the ball of `p` with a model of the same group. `gens` lists the
/// generators of `p` whose right action is mirrored by `act(x, i, inverse)`
/// on model elements. Returns a description of the first disagreement, or
/// `None` when the balls are isomorphic as rooted edge-labelled graphs.
pub fn compare_ball_with<T, F>(
    p: &GraphAutomaticPresentation,
    gens: &[&str],
    radius: usize,
    identity: T,
    act: F,
) -> Result<Option<String>>
where
    T: Clone + Eq + Hash + std::fmt::Debug,
    F: Fn(&T, usize, bool) -> T,
{
    let mut evs = Vec::new();
    for name in gens {
        let g = p.generator(name)?;
        evs.push([
            g.evaluator(Side::Right, false)?,
            g.evaluator(Side::Right, true)?,
        ]);
    }
    let render = |w: &Word| p.alphabet().render(w);
    let mut to_model: HashMap<Word, T> = HashMap::new();
    let mut to_word: HashMap<T, Word> = HashMap::new();
    to_model.insert(p.identity().clone(), identity.clone());
    to_word.insert(identity, p.identity().clone());
    let mut shell = vec![p.identity().clone()];
    for r in 0..=radius {
        let mut next = Vec::new();
        for u in &shell {
            let x = to_model[u].clone();
            for (i, pair) in evs.iter().enumerate() {
                for (inverse, ev) in [(false, &pair[0]), (true, &pair[1])] {
                    let v = ev.eval(&[u])?;
                    let y = act(&x, i, inverse);
                    match (to_model.get(&v), to_word.get(&y)) {
                        (Some(yv), _) if *yv != y => {
                            return Ok(Some(format!(
                                "edge {}{} from {} reaches {} = {:?}, model says {:?}",
                                gens[i],
                                if inverse { "^-1" } else { "" },
                                render(u),
                                render(&v),
                                yv,
                                y
                            )))
                        }
                        (None, Some(w)) => {
                            return Ok(Some(format!(
                                "model element {y:?} is {} but the edge reaches {}",
                                render(w),
                                render(&v)
                            )))
                        }
                        (None, None) if r < radius => {
                            to_model.insert(v.clone(), y.clone());
                            to_word.insert(y, v.clone());
                            next.push(v);
                        }
                        _ => {}
                    }
                }
            }
        }
        next.sort_by(|a, b| llex_cmp(&a.0, &b.0));
        shell = next;
    }
    Ok(None)
}
