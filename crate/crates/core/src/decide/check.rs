use std::fmt;

use crate::alphabet::Word;
use crate::decide::chain::chain_witness;
use crate::decide::eval::Evaluator;
use crate::error::{Error, Result};
use crate::fo::AutomaticStructure;
use crate::groups::{GraphAutomaticPresentation, Side};
use crate::relation::RegularRelation;

/// Bijection checks for one edge relation.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub generator: String,
    pub side: Side,
    pub within_domain: bool,
    pub total: bool,
    pub functional: bool,
    pub injective: bool,
    pub surjective: bool,
    pub growth_constant: usize,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.within_domain && self.total && self.functional && self.injective && self.surjective
    }
}

#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub identity_in_domain: bool,
    pub relations: Vec<RelationCheck>,
}

impl PresentationReport {
    pub fn passed(&self) -> bool {
        self.identity_in_domain && self.relations.iter().all(|r| r.passed())
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.identity_in_domain {
            out.push("identity word is not in the domain".to_string());
        }
        for r in &self.relations {
            let side = if r.side == Side::Left { "left " } else { "" };
            for (ok, what) in [
                (r.within_domain, "leaves the domain"),
                (r.total, "is not total"),
                (r.functional, "is not functional"),
                (r.injective, "is not injective"),
                (r.surjective, "is not surjective"),
            ] {
                if !ok {
                    out.push(format!("{side}relation of `{}` {what}", r.generator));
                }
            }
        }
        out
    }
}

impl fmt::Display for PresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "identity in domain: {}", yn(self.identity_in_domain))?;
        for r in &self.relations {
            let side = if r.side == Side::Left {
                "left"
            } else {
                "right"
            };
            writeln!(
                f,
                "{} ({side}): domain {} total {} functional {} injective {} surjective {} C={}",
                r.generator,
                yn(r.within_domain),
                yn(r.total),
                yn(r.functional),
                yn(r.injective),
                yn(r.surjective),
                r.growth_constant
            )?;
        }
        write!(f, "result: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

fn check_relation(
    p: &GraphAutomaticPresentation,
    name: &str,
    side: Side,
    rel: &RegularRelation,
) -> Result<RelationCheck> {
    check_relation_on(p.domain(), name, side, rel)
}

/// Bijection checks for `rel` as a map of the language `domain` to itself.
pub(crate) fn check_relation_on(
    domain: &crate::fa::Dfa,
    name: &str,
    side: Side,
    rel: &RegularRelation,
) -> Result<RelationCheck> {
    let dom = RegularRelation::unary(domain);
    let within_domain = rel.restrict(&[Some(&dom), Some(&dom)])?.equivalent(rel);
    let t = rel.transpose()?;
    Ok(RelationCheck {
        generator: name.to_string(),
        side,
        within_domain,
        total: domain.is_subset_of(rel.project(1)?.dfa())?,
        functional: chain_witness(&[&t, rel])?.is_none(),
        injective: chain_witness(&[rel, &t])?.is_none(),
        surjective: domain.is_subset_of(rel.project(0)?.dfa())?,
        growth_constant: rel.num_states() * domain.num_states(),
    })
}

/// Verify the presentation: identity in the domain and every edge relation
/// a bijection of the domain.
pub fn check_presentation(p: &GraphAutomaticPresentation) -> Result<PresentationReport> {
    let identity_in_domain = p.domain().accepts(p.identity())?;
    let mut relations = Vec::new();
    for g in p.generators() {
        relations.push(check_relation(p, g.name(), Side::Right, g.right())?);
        if let Some(l) = g.left() {
            relations.push(check_relation(p, g.name(), Side::Left, l)?);
        }
    }
    Ok(PresentationReport {
        identity_in_domain,
        relations,
    })
}

/// Outcome of evaluating a long product by balanced splitting.
#[derive(Clone, Debug)]
pub struct MonoidGrowthReport {
    pub value: Word,
    pub length: usize,
    pub max_input: usize,
    pub constant: usize,
    pub depth: usize,
    pub bound: usize,
}

impl MonoidGrowthReport {
    pub fn holds(&self) -> bool {
        self.length <= self.bound
    }
}

/// Multiply `elements` with the ternary operation `op` of `s`, splitting
/// the product in halves, and compare the result length with
/// `max |m_i| + C * ceil(log2 n)`.
pub fn monoid_growth_bound_check(
    s: &AutomaticStructure,
    op: &str,
    elements: &[Word],
) -> Result<MonoidGrowthReport> {
    if elements.is_empty() {
        return Err(Error::InvalidParameter("empty product".into()));
    }
    let rel = s.relation(op)?;
    if rel.arity() != 3 {
        return Err(Error::ArityMismatch(format!(
            "`{op}` is not a binary operation"
        )));
    }
    let ev = Evaluator::new(rel)?;
    fn go(ev: &Evaluator, xs: &[Word]) -> Result<Word> {
        if xs.len() == 1 {
            return Ok(xs[0].clone());
        }
        let mid = xs.len() / 2;
        let a = go(ev, &xs[..mid])?;
        let b = go(ev, &xs[mid..])?;
        ev.eval(&[&a, &b])
    }
    let value = go(&ev, elements)?;
    let n = elements.len();
    let depth = (usize::BITS - (n - 1).leading_zeros()) as usize;
    let constant = rel.num_states() * s.domain_dfa().num_states();
    let max_input = elements.iter().map(|w| w.len()).max().unwrap_or(0);
    Ok(MonoidGrowthReport {
        length: value.len(),
        value,
        max_input,
        constant,
        depth,
        bound: max_input + constant * depth,
    })
}
