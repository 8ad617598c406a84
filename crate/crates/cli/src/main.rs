//! `cgauto`: build presentations, run decision procedures, compile formulas.
//!
//! Exit codes: 0 success or true, 1 false, 2 validation failure, 3 usage or
//! parse error.

mod builders;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cgauto::decide::{self, cgl_violations, check_presentation, growth_profile};
use cgauto::fa::dot::dfa_to_dot;
use cgauto::fa::Limit;
use cgauto::groups::{GraphAutomaticPresentation, GroupWord, Letter};
use cgauto::io::Document;
use cgauto::par::Parallelism;
use cgauto::presburger::{decode_in_base, encode_in_base};
use cgauto::{limits, Alphabet, Error, Result, Word};
use clap::{ArgGroup, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use builders::{build, load_presentation, Builder, Built};

const TRUE: u8 = 0;
const FALSE: u8 = 1;
const INVALID: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cgauto",
    version,
    about = "Automatic structures and Cayley graph automatic groups"
)]
struct Cli {
    /// Abort when an automaton grows past this many states.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_states: usize,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a presentation or structure and write it as JSON.
    Build {
        #[command(subcommand)]
        builder: Builder,
        /// Output file; stdout when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Skip the bijection checks on the edge relations.
        #[arg(long, global = true)]
        no_check: bool,
    },
    /// Print the representative of a group word.
    Eval {
        file: PathBuf,
        word: String,
        /// Print the representative after every letter.
        #[arg(long)]
        trace: bool,
    },
    /// Exit 0 iff two group words are equal.
    Equal { file: PathBuf, a: String, b: String },
    /// Exit 0 iff the word is a relator.
    Relator { file: PathBuf, word: String },
    /// Ball sizes up to a radius.
    Ball {
        file: PathBuf,
        #[arg(short)]
        r: usize,
        /// Print the representatives, shell by shell.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        sequential: bool,
    },
    /// Exit 0 iff the words are conjugate; prints the least conjugator.
    Conj { file: PathBuf, a: String, b: String },
    /// Diagnostic report for a presentation.
    Check {
        file: PathBuf,
        /// Also report growth and constant growth checks up to this radius.
        #[arg(short)]
        r: Option<usize>,
    },
    /// Decide or compile a first-order formula (a string or a file).
    #[command(group(ArgGroup::new("mode").required(true).multiple(true).args(["decide", "compile", "list"])))]
    Fo {
        file: PathBuf,
        formula: String,
        #[arg(long)]
        decide: bool,
        /// Write the relation defined by the formula.
        #[arg(long)]
        compile: Option<PathBuf>,
        /// Print the first tuples of the defined relation.
        #[arg(long)]
        list: Option<usize>,
        /// Order of the free variables; sorted names when absent.
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Write DOT files for the domain and every relation, or canonical JSON.
    #[command(group(ArgGroup::new("target").required(true).multiple(true).args(["dot", "json"])))]
    Export {
        file: PathBuf,
        /// Output directory for DOT files.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Integer encodings, least significant digit first.
    Int {
        #[command(subcommand)]
        cmd: IntCommand,
    },
    /// Random group words and their representatives.
    Random {
        file: PathBuf,
        #[arg(short = 'c', long, default_value_t = 10)]
        count: usize,
        #[arg(short = 'l', long, default_value_t = 20)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum IntCommand {
    Encode {
        #[arg(allow_hyphen_values = true)]
        n: i64,
        #[arg(short, default_value_t = 2)]
        p: u32,
    },
    Decode {
        word: String,
        #[arg(short, default_value_t = 2)]
        p: u32,
    },
}

fn show(a: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        "λ".to_string()
    } else {
        a.render(w)
    }
}

fn word(p: &GraphAutomaticPresentation, text: &str) -> Result<GroupWord> {
    let w = GroupWord::parse(text)?;
    p.check_word(&w)?;
    Ok(w)
}

fn read_formula(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        Ok(fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

fn digits_text(w: &Word, p: u32) -> String {
    let sep = if p > 10 { " " } else { "" };
    w.0.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn parse_digits(text: &str, p: u32) -> Result<Word> {
    let toks: Vec<String> = if text.trim().contains(char::is_whitespace) {
        text.split_whitespace().map(str::to_string).collect()
    } else {
        text.trim().chars().map(|c| c.to_string()).collect()
    };
    toks.iter()
        .enumerate()
        .map(|(i, t)| match t.parse::<u32>() {
            Ok(d) if d < p => Ok(d),
            _ => Err(Error::Parse {
                pos: i,
                msg: format!("`{t}` is not a base-{p} digit"),
            }),
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    limits::set_max_states(cli.max_states);
    match cli.cmd {
        Command::Build {
            builder,
            out,
            no_check,
        } => match build(&builder)? {
            Built::Presentation(p) => {
                if !no_check {
                    let report = check_presentation(&p)?;
                    if !report.passed() {
                        for f in report.failures() {
                            eprintln!("check failed: {f}");
                        }
                        return Ok(INVALID);
                    }
                }
                write_out(&out, &Document::Presentation(p).to_json())?;
                Ok(TRUE)
            }
            Built::Structure(s) => {
                write_out(&out, &Document::Structure(s).to_json())?;
                Ok(TRUE)
            }
        },
        Command::Eval {
            file,
            word: w,
            trace,
        } => {
            let p = load_presentation(&file)?;
            let w = word(&p, &w)?;
            if trace {
                let t = decide::eval_trace(&p, &w)?;
                for (l, u) in w.letters().iter().zip(&t.steps) {
                    let inv = if l.inverse { "^-1" } else { "" };
                    println!("{}{inv}\t{}", l.name, show(p.alphabet(), u));
                }
            }
            println!("{}", show(p.alphabet(), &decide::canonical_rep(&p, &w)?));
            Ok(TRUE)
        }
        Command::Equal { file, a, b } => {
            let p = load_presentation(&file)?;
            let eq = decide::words_equal(&p, &word(&p, &a)?, &word(&p, &b)?)?;
            println!("{eq}");
            Ok(if eq { TRUE } else { FALSE })
        }
        Command::Relator { file, word: w } => {
            let p = load_presentation(&file)?;
            match decide::relator_counterexample(&p, &word(&p, &w)?)? {
                None => {
                    println!("true");
                    Ok(TRUE)
                }
                Some(u) => {
                    println!("false: fails at {}", show(p.alphabet(), &u));
                    Ok(FALSE)
                }
            }
        }
        Command::Ball {
            file,
            r,
            list,
            sequential,
        } => {
            let p = load_presentation(&file)?;
            let mode = if sequential {
                Parallelism::Sequential
            } else {
                Parallelism::Parallel
            };
            let shells = decide::ball_shells(&p, r, mode)?;
            let mut total = 0;
            let sizes: Vec<String> = shells
                .iter()
                .map(|s| {
                    total += s.len();
                    total.to_string()
                })
                .collect();
            println!("{}", sizes.join(", "));
            if list {
                for (k, s) in shells.iter().enumerate() {
                    println!("radius {k}:");
                    for u in s {
                        println!("  {}", show(p.alphabet(), u));
                    }
                }
            }
            Ok(TRUE)
        }
        Command::Conj { file, a, b } => {
            let p = load_presentation(&file)?;
            match decide::conjugate(&p, &word(&p, &a)?, &word(&p, &b)?)? {
                Some(z) => {
                    println!("true: conjugator {}", show(p.alphabet(), &z));
                    Ok(TRUE)
                }
                None => {
                    println!("false");
                    Ok(FALSE)
                }
            }
        }
        Command::Check { file, r } => {
            let p = load_presentation(&file)?;
            let report = check_presentation(&p)?;
            println!("{report}");
            let mut ok = report.passed();
            if let Some(r) = r {
                let g = growth_profile(&p, r)?;
                let sizes: Vec<String> = g.sizes.iter().map(|s| s.to_string()).collect();
                println!("ball sizes: {}", sizes.join(", "));
                println!(
                    "growth bound |S|^(C n) with |S| = {}, C = {}: {}",
                    g.alphabet_size,
                    g.c,
                    if g.within_bound() { "ok" } else { "FAIL" }
                );
                let bad = cgl_violations(&p, r)?;
                println!("constant growth violations: {}", bad.len());
                for (name, u, v) in bad.iter().take(5) {
                    println!(
                        "  {name}: {} -> {}",
                        show(p.alphabet(), u),
                        show(p.alphabet(), v)
                    );
                }
                ok &= g.within_bound() && bad.is_empty();
            }
            Ok(if ok { TRUE } else { INVALID })
        }
        Command::Fo {
            file,
            formula,
            decide,
            compile,
            list,
            vars,
        } => {
            let s = Document::load(&file)?.into_structure()?;
            let f = s.parse(&read_formula(&formula)?)?;
            if decide {
                if compile.is_some() || list.is_some() {
                    return Err(Error::InvalidParameter(
                        "--decide takes a sentence and no other mode".into(),
                    ));
                }
                let v = s.decide(&f)?;
                println!("{v}");
                return Ok(if v { TRUE } else { FALSE });
            }
            let order: Vec<String> = if vars.is_empty() {
                f.free_vars().into_iter().collect()
            } else {
                vars
            };
            let order: Vec<&str> = order.iter().map(String::as_str).collect();
            let rel = s.compile(&f, &order)?;
            if let Some(path) = compile {
                fs::write(path, rel.to_text())?;
            }
            if let Some(n) = list {
                for w in rel.dfa().enumerate(Limit::Count(n)) {
                    let parts = rel.shape().deconvolve(&w)?;
                    let cols: Vec<String> = parts
                        .iter()
                        .zip(rel.tracks())
                        .map(|(u, a)| show(a, u))
                        .collect();
                    println!("{}", cols.join("\t"));
                }
            }
            Ok(TRUE)
        }
        Command::Export { file, dot, json } => {
            let doc = Document::load(&file)?;
            if let Some(path) = json {
                doc.save(&path)?;
            }
            if let Some(dir) = dot {
                fs::create_dir_all(&dir)?;
                let mut files: Vec<(String, String)> = Vec::new();
                match &doc {
                    Document::Presentation(p) => {
                        files.push(("domain".into(), dfa_to_dot(p.domain(), "domain")));
                        for g in p.generators() {
                            let name = format!("{}.right", g.name());
                            files.push((name.clone(), dfa_to_dot(g.right().dfa(), &name)));
                            if let Some(l) = g.left() {
                                let name = format!("{}.left", g.name());
                                files.push((name.clone(), dfa_to_dot(l.dfa(), &name)));
                            }
                        }
                    }
                    Document::Structure(s) => {
                        files.push(("domain".into(), dfa_to_dot(s.domain_dfa(), "domain")));
                        for (name, r) in s.relations() {
                            files.push((name.clone(), dfa_to_dot(r.dfa(), name)));
                        }
                    }
                }
                for (name, text) in files {
                    let path = dir.join(format!("{name}.dot"));
                    fs::write(&path, text)?;
                    println!("{}", path.display());
                }
            }
            Ok(TRUE)
        }
        Command::Int { cmd } => {
            match cmd {
                IntCommand::Encode { n, p } => {
                    check_base(p)?;
                    println!("{}", digits_text(&encode_in_base(n, p), p));
                }
                IntCommand::Decode { word, p } => {
                    check_base(p)?;
                    println!("{}", decode_in_base(&parse_digits(&word, p)?, p)?);
                }
            }
            Ok(TRUE)
        }
        Command::Random {
            file,
            count,
            max_len,
        } => {
            let p = load_presentation(&file)?;
            let names: Vec<String> = p.generator_names().iter().map(|s| s.to_string()).collect();
            if names.is_empty() {
                return Err(Error::InvalidParameter(
                    "presentation has no generators".into(),
                ));
            }
            let mut rng = StdRng::seed_from_u64(cli.seed);
            for _ in 0..count {
                let len = rng.gen_range(0..=max_len);
                let w = GroupWord(
                    (0..len)
                        .map(|_| Letter {
                            name: names[rng.gen_range(0..names.len())].clone(),
                            inverse: rng.gen_bool(0.5),
                        })
                        .collect(),
                );
                println!(
                    "{w}\t{}",
                    show(p.alphabet(), &decide::canonical_rep(&p, &w)?)
                );
            }
            Ok(TRUE)
        }
    }
}

fn check_base(p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidParameter("base must be at least 2".into()));
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Format(_)
        | Error::Io(_)
        | Error::UnknownGenerator(_)
        | Error::UnknownRelation(_)
        | Error::UnboundVariable(_)
        | Error::VariableOrder(_)
        | Error::FreeVariables(_)
        | Error::InvalidParameter(_)
        | Error::ArityMismatch(_) => USAGE,
        _ => INVALID,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { TRUE });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
