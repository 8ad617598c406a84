use std::collections::BTreeMap;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::fa::Dfa;
use crate::fo::compile::{compile, decide};
use crate::fo::{parse_formula, Formula};
use crate::relation::RegularRelation;

/// A regular domain together with named regular relations over it.
#[derive(Clone, Debug)]
pub struct AutomaticStructure {
    name: String,
    domain: RegularRelation,
    relations: BTreeMap<String, RegularRelation>,
}

impl AutomaticStructure {
    pub fn new(name: &str, domain: &Dfa) -> Self {
        AutomaticStructure {
            name: name.to_string(),
            domain: RegularRelation::unary(domain),
            relations: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.domain.alphabet()
    }

    pub fn domain(&self) -> &RegularRelation {
        &self.domain
    }

    pub fn domain_dfa(&self) -> &Dfa {
        self.domain.dfa()
    }

    pub fn relations(&self) -> &BTreeMap<String, RegularRelation> {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Result<&RegularRelation> {
        self.relations
            .get(name)
            .ok_or_else(|| Error::UnknownRelation(name.to_string()))
    }

    /// Add a relation; every track must be over the domain alphabet.
    pub fn with_relation(mut self, name: &str, rel: RegularRelation) -> Result<Self> {
        self.insert(name, rel)?;
        Ok(self)
    }

    pub fn insert(&mut self, name: &str, rel: RegularRelation) -> Result<()> {
        if self.relations.contains_key(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
        if rel.tracks().iter().any(|t| t != self.alphabet()) {
            return Err(Error::AlphabetMismatch(format!(
                "relation `{name}` is not over {}",
                self.alphabet()
            )));
        }
        self.relations.insert(name.to_string(), rel);
        Ok(())
    }

    /// Check relation names and arities used by `f`.
    pub fn check_formula(&self, f: &Formula) -> Result<()> {
        match f {
            Formula::Atom(r, vs) => {
                let rel = self.relation(r)?;
                if rel.arity() != vs.len() {
                    return Err(Error::ArityMismatch(format!(
                        "`{r}` has arity {} but is applied to {} variables",
                        rel.arity(),
                        vs.len()
                    )));
                }
                Ok(())
            }
            Formula::VarEqual(..) => Ok(()),
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => {
                self.check_formula(g)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                self.check_formula(a)?;
                self.check_formula(b)
            }
        }
    }

    /// Parse and check a formula against this structure.
    pub fn parse(&self, text: &str) -> Result<Formula> {
        let f = parse_formula(text)?;
        self.check_formula(&f)?;
        Ok(f)
    }

    /// Relation of tuples (in `order`) satisfying `f`.
    pub fn compile(&self, f: &Formula, order: &[&str]) -> Result<RegularRelation> {
        compile(self, f, order)
    }

    pub fn decide(&self, sentence: &Formula) -> Result<bool> {
        decide(self, sentence)
    }

    /// New structure with the relation defined by `f` added as `name`.
    pub fn define_relation(&self, name: &str, f: &Formula, order: &[&str]) -> Result<Self> {
        if self.relations.contains_key(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
        let rel = self.compile(f, order)?;
        self.clone().with_relation(name, rel)
    }

    /// Rename the structure.
    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}
