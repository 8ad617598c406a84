//! Formula to automaton compilation.
//!
//! Every intermediate result is a relation over the sorted list of its free
//! variables, restricted to the domain on each track. Conjunctions become a
//! single join, negation a join with a negative constraint, existential
//! quantification a projection.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fo::{AutomaticStructure, Formula};
use crate::relation::{join, Constraint, RegularRelation};

#[derive(Clone, Debug)]
enum Compiled {
    Const(bool),
    Rel(Vec<String>, RegularRelation),
}

/// Remove `Forall`, `Implies` and double negations.
fn normalize(f: &Formula) -> Formula {
    match f {
        Formula::Atom(..) | Formula::VarEqual(..) => f.clone(),
        Formula::Not(g) => match normalize(g) {
            Formula::Not(h) => *h,
            h => Formula::not(h),
        },
        Formula::And(a, b) => Formula::and(normalize(a), normalize(b)),
        Formula::Or(a, b) => Formula::or(normalize(a), normalize(b)),
        Formula::Implies(a, b) => {
            normalize(&Formula::or(Formula::not((**a).clone()), (**b).clone()))
        }
        Formula::Exists(x, g) => Formula::exists(x, normalize(g)),
        Formula::Forall(x, g) => normalize(&Formula::not(Formula::exists(
            x,
            Formula::not((**g).clone()),
        ))),
    }
}

struct Compiler<'s> {
    s: &'s AutomaticStructure,
}

impl Compiler<'_> {
    fn tracks(&self, n: usize) -> Vec<crate::alphabet::Alphabet> {
        vec![self.s.alphabet().clone(); n]
    }

    /// Join of positive and negative parts over `vars`, each variable
    /// restricted to the domain.
    fn conj(&self, vars: &[String], pos: &[&Compiled], neg: &[&Compiled]) -> Result<Compiled> {
        let mut cons = Vec::new();
        let idx = |v: &String| vars.iter().position(|w| w == v).expect("variable in scope");
        for c in pos {
            match c {
                Compiled::Const(true) => {}
                Compiled::Const(false) => return self.empty(vars),
                Compiled::Rel(vs, r) => cons.push(Constraint::pos(r, vs.iter().map(idx).collect())),
            }
        }
        for c in neg {
            match c {
                Compiled::Const(false) => {}
                Compiled::Const(true) => return self.empty(vars),
                Compiled::Rel(vs, r) => cons.push(Constraint::neg(r, vs.iter().map(idx).collect())),
            }
        }
        if vars.is_empty() {
            return Ok(Compiled::Const(true));
        }
        let dom = self.s.domain();
        for i in 0..vars.len() {
            cons.push(Constraint::pos(dom, vec![i]));
        }
        let r = join(&self.tracks(vars.len()), &cons)?;
        Ok(Compiled::Rel(vars.to_vec(), r))
    }

    fn empty(&self, vars: &[String]) -> Result<Compiled> {
        if vars.is_empty() {
            return Ok(Compiled::Const(false));
        }
        Ok(Compiled::Rel(
            vars.to_vec(),
            RegularRelation::empty(&self.tracks(vars.len()))?,
        ))
    }

    fn vars_of(c: &Compiled) -> &[String] {
        match c {
            Compiled::Const(_) => &[],
            Compiled::Rel(vs, _) => vs,
        }
    }

    fn compile(&self, f: &Formula) -> Result<Compiled> {
        match f {
            Formula::Atom(name, args) => {
                let rel = self.s.relation(name)?;
                if rel.arity() != args.len() {
                    return Err(Error::ArityMismatch(format!(
                        "`{name}` has arity {}, got {}",
                        rel.arity(),
                        args.len()
                    )));
                }
                let vars: Vec<String> = args
                    .iter()
                    .cloned()
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let map = args
                    .iter()
                    .map(|a| vars.iter().position(|v| v == a).unwrap())
                    .collect();
                let mut cons = vec![Constraint::pos(rel, map)];
                let dom = self.s.domain();
                for i in 0..vars.len() {
                    cons.push(Constraint::pos(dom, vec![i]));
                }
                let r = join(&self.tracks(vars.len()), &cons)?;
                Ok(Compiled::Rel(vars, r))
            }
            Formula::VarEqual(x, y) => {
                if x == y {
                    return Ok(Compiled::Rel(vec![x.clone()], self.s.domain().clone()));
                }
                let eq = RegularRelation::equality(self.s.domain_dfa())?;
                let (a, b) = if x < y { (x, y) } else { (y, x) };
                Ok(Compiled::Rel(vec![a.clone(), b.clone()], eq))
            }
            Formula::Not(g) => {
                let c = self.compile(g)?;
                match c {
                    Compiled::Const(b) => Ok(Compiled::Const(!b)),
                    Compiled::Rel(ref vs, _) => {
                        let vs = vs.clone();
                        self.conj(&vs, &[], &[&c])
                    }
                }
            }
            Formula::And(..) => {
                let mut parts = Vec::new();
                flatten_and(f, &mut parts);
                let mut pos = Vec::new();
                let mut neg = Vec::new();
                for p in parts {
                    match p {
                        Formula::Not(g) => neg.push(self.compile(g)?),
                        other => pos.push(self.compile(other)?),
                    }
                }
                let vars: Vec<String> = pos
                    .iter()
                    .chain(&neg)
                    .flat_map(|c| Self::vars_of(c).iter().cloned())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let pos: Vec<&Compiled> = pos.iter().collect();
                let neg: Vec<&Compiled> = neg.iter().collect();
                self.conj(&vars, &pos, &neg)
            }
            Formula::Or(..) => {
                let mut parts = Vec::new();
                flatten_or(f, &mut parts);
                let compiled: Vec<Compiled> = parts
                    .iter()
                    .map(|p| self.compile(p))
                    .collect::<Result<_>>()?;
                let vars: Vec<String> = compiled
                    .iter()
                    .flat_map(|c| Self::vars_of(c).iter().cloned())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect();
                if vars.is_empty() {
                    return Ok(Compiled::Const(
                        compiled.iter().any(|c| matches!(c, Compiled::Const(true))),
                    ));
                }
                let mut acc: Option<RegularRelation> = None;
                for c in &compiled {
                    if matches!(c, Compiled::Const(false)) {
                        continue;
                    }
                    let widened = match c {
                        Compiled::Rel(vs, r) if *vs == vars => r.clone(),
                        other => match self.conj(&vars, &[other], &[])? {
                            Compiled::Rel(_, r) => r,
                            Compiled::Const(_) => unreachable!("vars are non-empty"),
                        },
                    };
                    acc = Some(match acc {
                        None => widened,
                        Some(a) => a.union(&widened)?,
                    });
                }
                match acc {
                    Some(r) => Ok(Compiled::Rel(vars, r)),
                    None => self.empty(&vars),
                }
            }
            Formula::Exists(x, g) => {
                let c = self.compile(g)?;
                match c {
                    Compiled::Const(b) => Ok(Compiled::Const(b && !self.s.domain().is_empty())),
                    Compiled::Rel(vs, r) => match vs.iter().position(|v| v == x) {
                        None => {
                            if self.s.domain().is_empty() {
                                self.empty(&vs)
                            } else {
                                Ok(Compiled::Rel(vs, r))
                            }
                        }
                        Some(_) if vs.len() == 1 => Ok(Compiled::Const(!r.is_empty())),
                        Some(k) => {
                            let mut rest = vs.clone();
                            rest.remove(k);
                            Ok(Compiled::Rel(rest, r.project(k)?))
                        }
                    },
                }
            }
            Formula::Implies(..) | Formula::Forall(..) => self.compile(&normalize(f)),
        }
    }
}

fn flatten_and<'f>(f: &'f Formula, out: &mut Vec<&'f Formula>) {
    match f {
        Formula::And(a, b) => {
            flatten_and(a, out);
            flatten_and(b, out);
        }
        other => out.push(other),
    }
}

fn flatten_or<'f>(f: &'f Formula, out: &mut Vec<&'f Formula>) {
    match f {
        Formula::Or(a, b) => {
            flatten_or(a, out);
            flatten_or(b, out);
        }
        other => out.push(other),
    }
}

/// Compile `f` into a relation whose tracks follow `order`.
pub fn compile(s: &AutomaticStructure, f: &Formula, order: &[&str]) -> Result<RegularRelation> {
    s.check_formula(f)?;
    let free = f.free_vars();
    let mut seen = BTreeSet::new();
    for v in order {
        if !seen.insert(v.to_string()) {
            return Err(Error::VariableOrder(format!("`{v}` listed twice")));
        }
        if !free.contains(*v) {
            return Err(Error::VariableOrder(format!(
                "`{v}` is not free in the formula"
            )));
        }
    }
    if let Some(v) = free.iter().find(|v| !seen.contains(*v)) {
        return Err(Error::UnboundVariable(v.clone()));
    }
    if order.is_empty() {
        return Err(Error::VariableOrder(
            "formula has no free variables; use decide".into(),
        ));
    }
    let c = Compiler { s }.compile(&normalize(f))?;
    match c {
        Compiled::Rel(vs, r) => {
            let perm: Vec<usize> = order
                .iter()
                .map(|o| vs.iter().position(|v| v == o).expect("free variable"))
                .collect();
            r.permute_tracks(&perm)
        }
        Compiled::Const(_) => unreachable!("formula with free variables"),
    }
}

/// Truth of a sentence: the body conjoined with one fresh domain variable is
/// compiled and tested for non-emptiness.
pub fn decide(s: &AutomaticStructure, sentence: &Formula) -> Result<bool> {
    s.check_formula(sentence)?;
    let free = sentence.free_vars();
    if !free.is_empty() {
        return Err(Error::FreeVariables(free.into_iter().collect()));
    }
    let mut names = BTreeSet::new();
    collect_names(sentence, &mut names);
    let mut k = 0;
    let fresh = loop {
        let cand = format!("_v{k}");
        if !names.contains(&cand) {
            break cand;
        }
        k += 1;
    };
    let body = Formula::and(sentence.clone(), Formula::eq(&fresh, &fresh));
    let r = compile(s, &body, &[&fresh])?;
    Ok(!r.is_empty())
}

fn collect_names(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Atom(_, vs) => out.extend(vs.iter().cloned()),
        Formula::VarEqual(x, y) => {
            out.insert(x.clone());
            out.insert(y.clone());
        }
        Formula::Not(g) => collect_names(g, out),
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            out.insert(x.clone());
            collect_names(g, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_names(a, out);
            collect_names(b, out);
        }
    }
}
