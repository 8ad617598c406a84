//! Graph automatic presentations of groups, builders and closure combinators.

mod abelian;
mod bs;
mod combinators;
mod coords;
mod free;
mod matrix;
mod nilpotent;
mod table;
mod word;
mod wreath;


pub use abelian::{abelian_decode, abelian_encode, fa_abelian_multiplication, fg_abelian, zn};
pub use bs::{bs1n, bs1n_decode, bs1n_encode};
pub use combinators::{
    direct_product, extend_generator, finite_extension, free_product, free_product_encode,
    restrict_to_regular_subgroup, semidirect, FiniteExtensionData,
};
pub use coords::{Affine, Coord, CoordSpace};
pub use free::{free_group, gamma_free};
pub use matrix::{heisenberg, ut, ut_m};
pub use nilpotent::{nilpotent2, semidirect_zn_z, Nilpotent2Spec};
pub use table::FiniteGroupTable;
pub use word::{GroupWord, Letter};
pub use wreath::{wreath_decode, wreath_encode, wreath_finite_by_z};

use std::sync::{Arc, OnceLock};

use crate::alphabet::{Alphabet, Word};
use crate::decide::Evaluator;
use crate::error::{Error, Result};
use crate::fa::Dfa;
use crate::fo::AutomaticStructure;
use crate::relation::RegularRelation;

/// A generator with its right (and optionally left) multiplication graph.
#[derive(Clone, Debug)]
pub struct Generator {
    name: String,
    right: RegularRelation,
    left: Option<RegularRelation>,
    evals: [OnceLock<Arc<Evaluator>>; 4],
}

/// Which multiplication graph an evaluator runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

impl Generator {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn right(&self) -> &RegularRelation {
        &self.right
    }

    pub fn left(&self) -> Option<&RegularRelation> {
        self.left.as_ref()
    }

    /// Cached evaluator for multiplication by this generator (or its inverse).
    pub fn evaluator(&self, side: Side, inverse: bool) -> Result<Arc<Evaluator>> {
        let rel = match side {
            Side::Right => &self.right,
            Side::Left => self.left.as_ref().ok_or(Error::NotBiautomatic)?,
        };
        let slot = &self.evals[(side == Side::Left) as usize * 2 + inverse as usize];
        if let Some(e) = slot.get() {
            return Ok(e.clone());
        }
        let ev = if inverse {
            Evaluator::new(&rel.transpose()?)?
        } else {
            Evaluator::new(rel)?
        };
        Ok(slot.get_or_init(|| Arc::new(ev)).clone())
    }
}

/// Regular set of representatives plus one automatic edge relation per
/// generator.
#[derive(Clone, Debug)]
pub struct GraphAutomaticPresentation {
    domain: Dfa,
    identity: Word,
    generators: Vec<Generator>,
    meta: String,
}

impl GraphAutomaticPresentation {
    pub fn new(domain: Dfa, identity: Word, meta: &str) -> Result<Self> {
        domain.alphabet().check_word(&identity)?;
        if !domain.accepts(&identity)? {
            return Err(Error::Inconsistent(
                "identity word is not in the domain".into(),
            ));
        }
        Ok(GraphAutomaticPresentation {
            domain: domain.minimize(),
            identity,
            generators: Vec::new(),
            meta: meta.to_string(),
        })
    }

    /// Add a generator. Both relations must be binary over the domain alphabet.
    pub fn add_generator(
        &mut self,
        name: &str,
        right: RegularRelation,
        left: Option<RegularRelation>,
    ) -> Result<()> {
        if !word::valid_generator_name(name) {
            return Err(Error::InvalidParameter(format!(
                "bad generator name `{name}`"
            )));
        }
        if self.generators.iter().any(|g| g.name == name) {
            return Err(Error::NameCollision(name.to_string()));
        }
        let a = self.alphabet().clone();
        for r in std::iter::once(&right).chain(left.as_ref()) {
            if r.arity() != 2 {
                return Err(Error::ArityMismatch(format!(
                    "edge relation of `{name}` is not binary"
                )));
            }
            if r.tracks().iter().any(|t| *t != a) {
                return Err(Error::AlphabetMismatch(format!(
                    "edge relation of `{name}` is not over {a}"
                )));
            }
        }
        self.generators.push(Generator {
            name: name.to_string(),
            right,
            left,
            evals: Default::default(),
        });
        Ok(())
    }

    pub fn with_generator(
        mut self,
        name: &str,
        right: RegularRelation,
        left: Option<RegularRelation>,
    ) -> Result<Self> {
        self.add_generator(name, right, left)?;
        Ok(self)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.domain.alphabet()
    }

    pub fn domain(&self) -> &Dfa {
        &self.domain
    }

    pub fn identity(&self) -> &Word {
        &self.identity
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn generator(&self, name: &str) -> Result<&Generator> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }

    pub fn set_meta(&mut self, meta: &str) {
        self.meta = meta.to_string();
    }

    /// True when every generator carries a left multiplication graph.
    pub fn is_biautomatic(&self) -> bool {
        !self.generators.is_empty() && self.generators.iter().all(|g| g.left.is_some())
    }

    /// Check that every letter of `w` names a generator.
    pub fn check_word(&self, w: &GroupWord) -> Result<()> {
        for l in w.letters() {
            self.generator(&l.name)?;
        }
        Ok(())
    }

    /// `(R; E_x ...)` with one relation per generator, named after it.
    pub fn right_structure(&self) -> Result<AutomaticStructure> {
        let mut s = AutomaticStructure::new(&self.meta, &self.domain);
        for g in &self.generators {
            s.insert(&g.name, g.right.clone())?;
        }
        Ok(s)
    }

    /// Composition of the edge relations along `w`: pairs `(u, u * w)` for
    /// the right side, `(u, w * u)` for the left side.
    pub fn word_relation(&self, w: &GroupWord, side: Side) -> Result<RegularRelation> {
        self.check_word(w)?;
        let mut steps: Vec<RegularRelation> = Vec::with_capacity(w.len());
        for l in w.letters() {
            let g = self.generator(&l.name)?;
            let r = match side {
                Side::Right => g.right.clone(),
                Side::Left => g.left.clone().ok_or(Error::NotBiautomatic)?,
            };
            steps.push(if l.inverse { r.transpose()? } else { r });
        }
        if side == Side::Left {
            steps.reverse();
        }
        let mut acc = RegularRelation::equality(&self.domain)?;
        for s in &steps {
            acc = acc.compose(s)?;
        }
        Ok(acc)
    }
}

/// Binary relation over `[V, V]` from a relation over `2k` flat tracks whose
/// first `k` tracks make up the input and last `k` the output.
pub(crate) fn pair_of_groups(rel: &RegularRelation, k: usize) -> Result<RegularRelation> {
    if k == 1 {
        return Ok(rel.clone());
    }
    rel.group_tracks(&[(0..k).collect(), (k..2 * k).collect()])
}
