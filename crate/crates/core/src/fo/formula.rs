use std::collections::BTreeSet;
use std::fmt;

/// First-order formula over named relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String, Vec<String>),
    VarEqual(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str, vars: &[&str]) -> Self {
        Formula::Atom(name.into(), vars.iter().map(|v| v.to_string()).collect())
    }

    pub fn eq(x: &str, y: &str) -> Self {
        Formula::VarEqual(x.into(), y.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(x: &str, f: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn forall(x: &str, f: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(f))
    }

    /// Conjunction of a non-empty list.
    pub fn all(mut fs: Vec<Formula>) -> Self {
        let last = fs.pop().expect("non-empty conjunction");
        fs.into_iter()
            .rev()
            .fold(last, |acc, f| Formula::and(f, acc))
    }

    /// Existential closure over the listed variables, innermost last.
    pub fn exists_many(vars: &[&str], f: Formula) -> Self {
        vars.iter().rev().fold(f, |acc, v| Formula::exists(v, acc))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add = |v: &String, bound: &Vec<String>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Atom(_, vs) => vs.iter().for_each(|v| add(v, bound)),
            Formula::VarEqual(x, y) => {
                add(x, bound);
                add(y, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(x.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Quantifier and connective nesting depth.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::VarEqual(..) => 0,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Implies(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, g: &Formula, min: u8| {
            if g.prec() < min {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            Formula::Atom(r, vs) => write!(f, "{r}({})", vs.join(",")),
            Formula::VarEqual(x, y) => write!(f, "{x} = {y}"),
            Formula::Not(g) => {
                f.write_str("!")?;
                wrap(f, g, 3)
            }
            Formula::And(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(" & ")?;
                wrap(f, b, 3)
            }
            Formula::Or(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" | ")?;
                wrap(f, b, 2)
            }
            Formula::Implies(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" -> ")?;
                wrap(f, b, 0)
            }
            Formula::Exists(x, g) => write!(f, "E {x} ({g})"),
            Formula::Forall(x, g) => write!(f, "A {x} ({g})"),
        }
    }
}
