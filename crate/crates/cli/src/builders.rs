use std::fs;
use std::path::{Path, PathBuf};

use cgauto::fa::text::parse_dfa;
use cgauto::fo::AutomaticStructure;
use cgauto::groups::{
    self, FiniteExtensionData, FiniteGroupTable, GraphAutomaticPresentation, GroupWord,
    Nilpotent2Spec,
};
use cgauto::io::Document;
use cgauto::presburger::{linear_map, presburger_nat_structure, presburger_structure};
use cgauto::{Error, RegularRelation, Result};
use clap::{Args, Subcommand};
use serde::Deserialize;

#[derive(Subcommand, Debug)]
pub enum Builder {
    /// Z^n on vectors of integers.
    Zn {
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Z^n + Z/m_1 + ... + Z/m_k.
    Abelian {
        #[arg(short, default_value_t = 1)]
        n: usize,
        /// Comma-separated torsion orders.
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u32>,
    },
    /// Heisenberg group of n x n unitriangular matrices with one central entry.
    Heisenberg {
        #[arg(short, default_value_t = 3)]
        n: usize,
    },
    /// Unitriangular matrices UT(n, Z), or UT(n, Z/m) with -m.
    Ut {
        #[arg(short, default_value_t = 3)]
        n: usize,
        #[arg(short)]
        m: Option<usize>,
    },
    /// BS(1, p).
    Bs1n {
        #[arg(short, default_value_t = 2)]
        p: u32,
    },
    /// Free group.
    Free {
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// Free group Cayley graph with prefix and equal-length relations (a structure).
    GammaFree {
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    /// G wr Z for a cyclic G of the given order, or a table from a JSON file.
    Wreath {
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// JSON `{"names": [...], "table": [[...]]}`.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Class-2 nilpotent group; Heisenberg unless a spec file is given.
    Nilpotent2 {
        /// JSON `{"n", "split", "orders", "commutators": [[j, i, [..]]]}`.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Z^n semidirect Z by an integer matrix `a,b;c,d`.
    SemidirectZnZ {
        #[arg(long)]
        matrix: String,
    },
    DirectProduct(Pair),
    FreeProduct(Pair),
    /// P semidirect Q, with the action of generators of Q on P.
    Semidirect {
        #[command(flatten)]
        pair: Pair,
        /// `y=FILE`: relation text for `r -> y^-1 r y`.
        #[arg(long)]
        action: Vec<String>,
        /// `y=MATRIX`: a linear action on an integer vector encoding.
        #[arg(long)]
        linear: Vec<String>,
    },
    /// Finite extension from a JSON description.
    FiniteExtension {
        /// JSON with `base` (presentation path), `coset_names`, `conjugation`,
        /// `g`, `correction`; words use the group word syntax.
        data: PathBuf,
    },
    /// Subgroup on a regular set of representatives.
    Restrict {
        input: PathBuf,
        /// Automaton text for the set.
        #[arg(long)]
        subset: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
    },
    /// Add a generator standing for a word.
    ExtendGen {
        input: PathBuf,
        #[arg(long)]
        name: String,
        #[arg(long)]
        word: String,
    },
    /// Integers with addition (a structure); naturals with `--nat`.
    Presburger {
        #[arg(long)]
        nat: bool,
    },
    /// Multiplication structure of a finitely generated abelian group.
    FaAbelian {
        #[arg(short, default_value_t = 1)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        torsion: Vec<u32>,
    },
}

#[derive(Args, Debug)]
pub struct Pair {
    pub first: PathBuf,
    pub second: PathBuf,
}

#[derive(Deserialize)]
struct TableFile {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct SpecFile {
    n: usize,
    split: usize,
    orders: Vec<Option<u32>>,
    commutators: Vec<(usize, usize, Vec<i64>)>,
}

#[derive(Deserialize)]
struct ExtensionFile {
    base: PathBuf,
    coset_names: Vec<String>,
    conjugation: Vec<Vec<String>>,
    g: Vec<Vec<usize>>,
    correction: Vec<Vec<String>>,
}

pub enum Built {
    Presentation(GraphAutomaticPresentation),
    Structure(AutomaticStructure),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn load_presentation(path: &Path) -> Result<GraphAutomaticPresentation> {
    Document::load(path)?.into_presentation()
}

/// `a,b;c,d` as rows.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("bad matrix entry `{x}`")))
                })
                .collect()
        })
        .collect()
}

fn split_assignment(s: &str) -> Result<(&str, &str)> {
    s.split_once('=')
        .ok_or_else(|| Error::InvalidParameter(format!("expected NAME=VALUE, got `{s}`")))
}

fn words(rows: &[Vec<String>]) -> Result<Vec<Vec<GroupWord>>> {
    rows.iter()
        .map(|r| r.iter().map(|w| GroupWord::parse(w)).collect())
        .collect()
}

pub fn build(b: &Builder) -> Result<Built> {
    use Built::{Presentation as P, Structure as S};
    Ok(match b {
        Builder::Zn { n } => P(groups::zn(*n)?),
        Builder::Abelian { n, torsion } => P(groups::fg_abelian(*n, torsion)?),
        Builder::Heisenberg { n } => P(groups::heisenberg(*n)?),
        Builder::Ut { n, m: None } => P(groups::ut(*n)?),
        Builder::Ut { n, m: Some(m) } => P(groups::ut_m(*n, *m)?),
        Builder::Bs1n { p } => P(groups::bs1n(*p)?),
        Builder::Free { rank } => P(groups::free_group(*rank)?),
        Builder::GammaFree { rank } => S(groups::gamma_free(*rank)?),
        Builder::Wreath { order, table } => {
            let t = match table {
                Some(path) => {
                    let f: TableFile = read_json(path)?;
                    FiniteGroupTable::new(f.names, f.table)?
                }
                None => FiniteGroupTable::cyclic(*order)?,
            };
            P(groups::wreath_finite_by_z(&t)?)
        }
        Builder::Nilpotent2 { spec } => {
            let s = match spec {
                Some(path) => {
                    let f: SpecFile = read_json(path)?;
                    Nilpotent2Spec {
                        n: f.n,
                        split: f.split,
                        orders: f.orders,
                        commutators: f.commutators,
                    }
                }
                None => Nilpotent2Spec::heisenberg(),
            };
            P(groups::nilpotent2(&s)?)
        }
        Builder::SemidirectZnZ { matrix } => P(groups::semidirect_zn_z(&parse_matrix(matrix)?)?),
        Builder::DirectProduct(pair) => P(groups::direct_product(
            &load_presentation(&pair.first)?,
            &load_presentation(&pair.second)?,
        )?),
        Builder::FreeProduct(pair) => P(groups::free_product(
            &load_presentation(&pair.first)?,
            &load_presentation(&pair.second)?,
        )?),
        Builder::Semidirect {
            pair,
            action,
            linear,
        } => {
            let p = load_presentation(&pair.first)?;
            let q = load_presentation(&pair.second)?;
            let mut acts: Vec<(String, RegularRelation)> = Vec::new();
            for a in action {
                let (y, file) = split_assignment(a)?;
                acts.push((
                    y.to_string(),
                    RegularRelation::from_text(&fs::read_to_string(file)?)?,
                ));
            }
            for a in linear {
                let (y, m) = split_assignment(a)?;
                let m = parse_matrix(m)?;
                acts.push((y.to_string(), linear_map(&m, &vec![0; m.len()])?));
            }
            let refs: Vec<(&str, RegularRelation)> =
                acts.iter().map(|(y, r)| (y.as_str(), r.clone())).collect();
            P(groups::semidirect(&p, &q, &refs)?)
        }
        Builder::FiniteExtension { data } => {
            let f: ExtensionFile = read_json(data)?;
            let base = data.parent().unwrap_or(Path::new(".")).join(&f.base);
            let d = FiniteExtensionData {
                base: load_presentation(&base)?,
                coset_names: f.coset_names,
                conjugation: words(&f.conjugation)?,
                g: f.g,
                correction: words(&f.correction)?,
            };
            P(groups::finite_extension(&d)?)
        }
        Builder::Restrict {
            input,
            subset,
            gens,
        } => {
            let p = load_presentation(input)?;
            let sub = parse_dfa(&fs::read_to_string(subset)?)?;
            let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
            P(groups::restrict_to_regular_subgroup(&p, &sub, &gens)?)
        }
        Builder::ExtendGen { input, name, word } => P(groups::extend_generator(
            &load_presentation(input)?,
            name,
            &GroupWord::parse(word)?,
        )?),
        Builder::Presburger { nat: false } => S(presburger_structure()),
        Builder::Presburger { nat: true } => S(presburger_nat_structure()),
        Builder::FaAbelian { n, torsion } => S(groups::fa_abelian_multiplication(*n, torsion)?),
    })
}
