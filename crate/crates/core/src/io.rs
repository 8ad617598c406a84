//! JSON files for presentations and structures.
//!
//! ```json
//! {
//!   "kind": "presentation",
//!   "meta": "Z^1",
//!   "alphabet": "{0,1}",
//!   "domain": "nfa 0 1 5\n...",
//!   "identity": "0",
//!   "generators": { "e1": { "right": "relation 2 over ...", "left": "..." } }
//! }
//! ```
//!
//! Structures use `"kind": "structure"` with `name`, `alphabet`, `domain`
//! and `relations` (name to relation text). Automata are written with
//! canonical state numbering, so saving is deterministic.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::fa::text::{parse_dfa, write_dfa};
use crate::fo::AutomaticStructure;
use crate::groups::GraphAutomaticPresentation;
use crate::relation::RegularRelation;

#[derive(Serialize, Deserialize)]
struct EdgeEntry {
    right: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    kind: String,
    meta: String,
    alphabet: String,
    domain: String,
    identity: String,
    generators: Map<String, Value>,
}

#[derive(Serialize, Deserialize)]
struct StructureFile {
    kind: String,
    name: String,
    alphabet: String,
    domain: String,
    relations: Map<String, Value>,
}

/// Contents of a JSON file.
#[derive(Clone, Debug)]
pub enum Document {
    Presentation(GraphAutomaticPresentation),
    Structure(AutomaticStructure),
}

fn fmt_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

pub fn presentation_to_json(p: &GraphAutomaticPresentation) -> String {
    let mut generators = Map::new();
    for g in p.generators() {
        let entry = EdgeEntry {
            right: g.right().to_text(),
            left: g.left().map(|l| l.to_text()),
        };
        generators.insert(
            g.name().to_string(),
            serde_json::to_value(entry).expect("plain strings"),
        );
    }
    let f = PresentationFile {
        kind: "presentation".into(),
        meta: p.meta().to_string(),
        alphabet: p.alphabet().to_expr(),
        domain: write_dfa(p.domain()),
        identity: p.alphabet().render(p.identity()),
        generators,
    };
    serde_json::to_string_pretty(&f).expect("plain strings")
}

pub fn structure_to_json(s: &AutomaticStructure) -> String {
    let relations = s
        .relations()
        .iter()
        .map(|(k, r)| (k.clone(), Value::String(r.to_text())))
        .collect();
    let f = StructureFile {
        kind: "structure".into(),
        name: s.name().to_string(),
        alphabet: s.alphabet().to_expr(),
        domain: write_dfa(s.domain_dfa()),
        relations,
    };
    serde_json::to_string_pretty(&f).expect("plain strings")
}

fn domain_over(alphabet: &str, text: &str) -> Result<crate::fa::Dfa> {
    let a = Alphabet::from_expr(alphabet)?;
    let d = parse_dfa(text)?;
    if *d.alphabet() != a {
        return Err(Error::Format(format!(
            "domain is over {} but the file declares {a}",
            d.alphabet()
        )));
    }
    Ok(d)
}

fn presentation_from(f: PresentationFile) -> Result<GraphAutomaticPresentation> {
    let domain = domain_over(&f.alphabet, &f.domain)?;
    let identity = domain.alphabet().parse_word(&f.identity)?;
    let mut p = GraphAutomaticPresentation::new(domain, identity, &f.meta)?;
    for (name, v) in f.generators {
        let e: EdgeEntry = serde_json::from_value(v).map_err(fmt_err)?;
        let right = RegularRelation::from_text(&e.right)?;
        let left = e
            .left
            .as_deref()
            .map(RegularRelation::from_text)
            .transpose()?;
        p.add_generator(&name, right, left)?;
    }
    Ok(p)
}

fn structure_from(f: StructureFile) -> Result<AutomaticStructure> {
    let domain = domain_over(&f.alphabet, &f.domain)?;
    let mut s = AutomaticStructure::new(&f.name, &domain);
    for (name, v) in f.relations {
        let text = v
            .as_str()
            .ok_or_else(|| Error::Format(format!("relation `{name}` is not a string")))?;
        s.insert(&name, RegularRelation::from_text(text)?)?;
    }
    Ok(s)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(fmt_err)?;
    match v.get("kind").and_then(Value::as_str) {
        Some("presentation") => Ok(Document::Presentation(presentation_from(
            serde_json::from_value(v).map_err(fmt_err)?,
        )?)),
        Some("structure") => Ok(Document::Structure(structure_from(
            serde_json::from_value(v).map_err(fmt_err)?,
        )?)),
        Some(k) => Err(Error::Format(format!("unknown kind `{k}`"))),
        None => Err(Error::Format("missing `kind`".into())),
    }
}

impl Document {
    pub fn to_json(&self) -> String {
        match self {
            Document::Presentation(p) => presentation_to_json(p),
            Document::Structure(s) => structure_to_json(s),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Document> {
        parse_document(&fs::read_to_string(path)?)
    }

    pub fn into_presentation(self) -> Result<GraphAutomaticPresentation> {
        match self {
            Document::Presentation(p) => Ok(p),
            Document::Structure(_) => Err(Error::Format(
                "expected a presentation, found a structure".into(),
            )),
        }
    }

    /// A structure, or the right Cayley graph structure of a presentation.
    pub fn into_structure(self) -> Result<AutomaticStructure> {
        match self {
            Document::Presentation(p) => p.right_structure(),
            Document::Structure(s) => Ok(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{bs1n, free_group, gamma_free, heisenberg};
    use crate::presburger::presburger_structure;

    #[test]
    fn presentations_round_trip() {
        for p in [
            heisenberg(3).unwrap(),
            bs1n(2).unwrap(),
            free_group(2).unwrap(),
        ] {
            let text = presentation_to_json(&p);
            let q = parse_document(&text).unwrap().into_presentation().unwrap();
            assert_eq!(presentation_to_json(&q), text);
            assert_eq!(q.identity(), p.identity());
            assert_eq!(q.generator_names(), p.generator_names());
            assert_eq!(q.is_biautomatic(), p.is_biautomatic());
        }
    }

    #[test]
    fn structures_round_trip() {
        for s in [presburger_structure(), gamma_free(2).unwrap()] {
            let text = structure_to_json(&s);
            let t = parse_document(&text).unwrap().into_structure().unwrap();
            assert_eq!(structure_to_json(&t), text);
        }
    }

    #[test]
    fn malformed_files() {
        assert!(parse_document("{").is_err());
        assert!(parse_document("{\"kind\": \"group\"}").is_err());
        assert!(parse_document("{\"kind\": \"presentation\"}").is_err());
        let p = heisenberg(3).unwrap();
        let mut v: Value = serde_json::from_str(&presentation_to_json(&p)).unwrap();
        v["identity"] = Value::String("(0,0,0) (0,0,0)".into());
        assert!(parse_document(&v.to_string()).is_err());
        v["identity"] = Value::String("(0,0,0)".into());
        v["alphabet"] = Value::String("{0,1}".into());
        assert!(parse_document(&v.to_string()).is_err());
    }
}
