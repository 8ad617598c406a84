//! Word problem, relators, balls, growth diagnostics and conjugacy.

mod ball;
mod chain;
mod check;
mod eval;

pub use ball::{
    ball, ball_shells, cgl_violations, compare_ball_with, growth_constant, growth_profile,
    GrowthReport,
};
pub use chain::chain_witness;
pub(crate) use check::check_relation_on;
pub use check::{
    check_presentation, monoid_growth_bound_check, MonoidGrowthReport, PresentationReport,
    RelationCheck,
};
pub use eval::{eval_function, Evaluator};

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::groups::{GraphAutomaticPresentation, GroupWord, Side};
use crate::par::{self, Parallelism};
use crate::relation::RegularRelation;

/// Representatives visited while multiplying out a group word.
#[derive(Clone, Debug)]
pub struct EvalTrace {
    pub word: GroupWord,
    pub steps: Vec<Word>,
    pub transitions: usize,
}

fn check_rep(p: &GraphAutomaticPresentation, u: &Word) -> Result<()> {
    p.alphabet().check_word(u)?;
    if !p.domain().accepts(u)? {
        return Err(Error::InvalidParameter(format!(
            "`{}` is not a representative",
            p.alphabet().render(u)
        )));
    }
    Ok(())
}

/// Representative of `u * w`, letter by letter.
pub fn right_multiply(p: &GraphAutomaticPresentation, u: &Word, w: &GroupWord) -> Result<Word> {
    Ok(trace_from(p, u, w)?
        .steps
        .pop()
        .unwrap_or_else(|| u.clone()))
}

/// Representative of `w * u` using the left multiplication graphs.
pub fn left_multiply(p: &GraphAutomaticPresentation, w: &GroupWord, u: &Word) -> Result<Word> {
    check_rep(p, u)?;
    p.check_word(w)?;
    let mut cur = u.clone();
    for l in w.letters().iter().rev() {
        let ev = p.generator(&l.name)?.evaluator(Side::Left, l.inverse)?;
        cur = ev.eval(&[&cur])?;
    }
    Ok(cur)
}

fn trace_from(p: &GraphAutomaticPresentation, u: &Word, w: &GroupWord) -> Result<EvalTrace> {
    check_rep(p, u)?;
    p.check_word(w)?;
    let mut steps = Vec::with_capacity(w.len());
    let mut transitions = 0;
    let mut cur = u.clone();
    for l in w.letters() {
        let ev = p.generator(&l.name)?.evaluator(Side::Right, l.inverse)?;
        let (next, t) = ev.eval_counted(&[&cur])?;
        transitions += t;
        steps.push(next.clone());
        cur = next;
    }
    Ok(EvalTrace {
        word: w.clone(),
        steps,
        transitions,
    })
}

/// Per-letter representatives of the prefixes of `w`.
pub fn eval_trace(p: &GraphAutomaticPresentation, w: &GroupWord) -> Result<EvalTrace> {
    trace_from(p, p.identity(), w)
}

/// Representative of the element spelled by `w`.
pub fn canonical_rep(p: &GraphAutomaticPresentation, w: &GroupWord) -> Result<Word> {
    right_multiply(p, p.identity(), w)
}

/// Representatives of many words, evaluated independently.
pub fn canonical_reps(
    p: &GraphAutomaticPresentation,
    words: &[GroupWord],
    mode: Parallelism,
) -> Result<Vec<Word>> {
    par::map(mode, words, |w| canonical_rep(p, w))
        .into_iter()
        .collect()
}

pub fn words_equal(p: &GraphAutomaticPresentation, a: &GroupWord, b: &GroupWord) -> Result<bool> {
    Ok(canonical_rep(p, a)? == canonical_rep(p, b)?)
}

pub fn is_identity(p: &GraphAutomaticPresentation, w: &GroupWord) -> Result<bool> {
    Ok(canonical_rep(p, w)? == *p.identity())
}

/// True when `u * w = u` for every representative `u`. Searches the chain
/// of edge relations along `w` for a start and end that differ, so it
/// assumes every edge relation is a bijection of the domain.
pub fn relator_holds(p: &GraphAutomaticPresentation, w: &GroupWord) -> Result<bool> {
    Ok(relator_counterexample(p, w)?.is_none())
}

/// A representative `u` with `u * w != u`, if any.
pub fn relator_counterexample(
    p: &GraphAutomaticPresentation,
    w: &GroupWord,
) -> Result<Option<Word>> {
    if w.is_empty() {
        return Err(Error::InvalidParameter("empty relator".into()));
    }
    p.check_word(w)?;
    let mut links = Vec::with_capacity(w.len());
    for l in w.letters() {
        let r = p.generator(&l.name)?.right();
        links.push(if l.inverse { r.transpose()? } else { r.clone() });
    }
    let refs: Vec<&RegularRelation> = links.iter().collect();
    Ok(chain_witness(&refs)?.map(|mut t| t.swap_remove(0)))
}

/// Representatives `u` with `u * a = b * u`.
pub fn conjugators(
    p: &GraphAutomaticPresentation,
    a: &GroupWord,
    b: &GroupWord,
) -> Result<RegularRelation> {
    if !p.is_biautomatic() {
        return Err(Error::NotBiautomatic);
    }
    let right = p.word_relation(a, Side::Right)?;
    let left = p.word_relation(b, Side::Left)?;
    right.intersect(&left)?.project(1)
}

/// Conjugacy of `a` and `b`: `Some(u)` with `u^-1 b u = a` and `u` the
/// length-lexicographically least such representative, `None` otherwise.
pub fn conjugate(
    p: &GraphAutomaticPresentation,
    a: &GroupWord,
    b: &GroupWord,
) -> Result<Option<Word>> {
    Ok(conjugators(p, a, b)?.dfa().shortest_witness())
}

#[cfg(test)]
mod tests;
