use std::fmt;

use crate::error::{Error, Result};

/// One letter of a group word: a generator or its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub name: String,
    pub inverse: bool,
}

/// A word over generators and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<Letter>);

pub(crate) fn valid_generator_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !s.starts_with(|c: char| c.is_ascii_digit())
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord(Vec::new())
    }

    pub fn gen(name: &str) -> Self {
        GroupWord(vec![Letter {
            name: name.to_string(),
            inverse: false,
        }])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    name: l.name.clone(),
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        GroupWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::new();
        for _ in 0..k.unsigned_abs() {
            out.extend(base.0.iter().cloned());
        }
        GroupWord(out)
    }

    /// Parse whitespace-separated generators, each optionally followed by
    /// `^k` for a non-zero integer `k` (e.g. `A C A^-1 C^-1 B^-1`).
    pub fn parse(text: &str) -> Result<GroupWord> {
        let mut out = Vec::new();
        let mut offset = 0;
        for tok in text.split_whitespace() {
            let pos = text[offset..].find(tok).map_or(offset, |p| p + offset);
            offset = pos + tok.len();
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e.parse().map_err(|_| Error::Parse {
                        pos: pos + n.len() + 1,
                        msg: format!("bad exponent `{e}`"),
                    })?;
                    (n, k)
                }
                None => (tok, 1),
            };
            if !valid_generator_name(name) {
                return Err(Error::Parse {
                    pos,
                    msg: format!("bad generator name `{name}`"),
                });
            }
            out.extend(GroupWord::gen(name).pow(exp).0);
        }
        Ok(GroupWord(out))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&l.name)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = GroupWord::parse("A C A^-1 C^-1 B^-1").unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.to_string(), "A C A^-1 C^-1 B^-1");
        assert_eq!(
            GroupWord::parse("b^-3 a^2").unwrap().to_string(),
            "b^-1 b^-1 b^-1 a a"
        );
        assert!(GroupWord::parse("").unwrap().is_empty());
        assert!(GroupWord::parse("a^x").is_err());
        assert!(GroupWord::parse("a-b").is_err());
    }

    #[test]
    fn inverse_reverses() {
        let w = GroupWord::parse("a b^-1 c").unwrap();
        assert_eq!(w.inverse().to_string(), "c^-1 b a^-1");
        assert_eq!(w.pow(0), GroupWord::empty());
    }
}
