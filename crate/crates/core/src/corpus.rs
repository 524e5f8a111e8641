//! Named diagrams shipped with the library.
//!
//! The corpus is a line-oriented text file:
//!
//! ```text
//! entry <name> gauss <signed Gauss code>
//! entry <name> braid <virtual braid word>
//! note <name> <free text>
//! equiv <name> <name>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::diagram::{parse_braid, parse_gauss, Diagram, GaussCode, VirtualBraidWord};
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../corpus/entries.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Gauss(GaussCode),
    Braid(VirtualBraidWord),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Gauss(g) => write!(f, "gauss {g}"),
            Source::Braid(b) => write!(f, "braid {b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub source: Source,
    pub note: String,
}

impl CorpusEntry {
    pub fn gauss_code(&self) -> GaussCode {
        match &self.source {
            Source::Gauss(g) => g.clone(),
            Source::Braid(b) => b.close(),
        }
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::from_gauss(&self.gauss_code())
    }

    pub fn braid(&self) -> Option<&VirtualBraidWord> {
        match &self.source {
            Source::Braid(b) => Some(b),
            Source::Gauss(_) => None,
        }
    }

    pub fn summary(&self) -> EntrySummary {
        let d = self.diagram();
        EntrySummary {
            name: self.name.clone(),
            source: self.source.to_string(),
            gauss: self.gauss_code().to_string(),
            crossings: d.crossing_count(),
            components: d.component_count(),
            note: self.note.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntrySummary {
    pub name: String,
    pub source: String,
    pub gauss: String,
    pub crossings: usize,
    pub components: usize,
    pub note: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
    index: BTreeMap<String, usize>,
    equivalences: Vec<(String, String)>,
}

impl Corpus {
    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Result<&CorpusEntry> {
        self.index
            .get(name)
            .map(|&i| &self.entries[i])
            .ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    /// Pairs of entries whose diagrams differ by generalized Reidemeister
    /// moves (including braid conjugation and stabilization).
    pub fn equivalences(&self) -> &[(String, String)] {
        &self.equivalences
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }
}

fn line_error(line: usize, token: &str, message: impl Into<String>) -> Error {
    Error::parse(line, token, message)
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Parses corpus text. Parse errors report the 1-based line number as the
/// token index.
pub fn parse_corpus(text: &str) -> Result<Corpus> {
    let mut corpus = Corpus::default();
    let mut pending_notes: Vec<(usize, String, String)> = Vec::new();
    let mut pending_equiv: Vec<(usize, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim_start();
        match keyword {
            "entry" => {
                let (name, rest) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                if !valid_name(name) {
                    return Err(line_error(lineno, name, "invalid entry name"));
                }
                let rest = rest.trim_start();
                let (kind, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let source = match kind {
                    "gauss" => Source::Gauss(parse_gauss(body)?),
                    "braid" => Source::Braid(parse_braid(body)?),
                    _ => return Err(line_error(lineno, kind, "expected `gauss` or `braid`")),
                };
                if corpus.index.contains_key(name) {
                    return Err(line_error(lineno, name, "duplicate entry name"));
                }
                corpus.index.insert(name.to_string(), corpus.entries.len());
                corpus.entries.push(CorpusEntry {
                    name: name.to_string(),
                    source,
                    note: String::new(),
                });
            }
            "note" => {
                let (name, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                pending_notes.push((lineno, name.to_string(), text.trim().to_string()));
            }
            "equiv" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(line_error(lineno, rest, "expected two entry names"));
                }
                pending_equiv.push((lineno, parts[0].to_string(), parts[1].to_string()));
            }
            _ => return Err(line_error(lineno, keyword, "unknown keyword")),
        }
    }
    for (lineno, name, text) in pending_notes {
        let Some(&i) = corpus.index.get(&name) else {
            return Err(line_error(lineno, &name, "note for unknown entry"));
        };
        let note = &mut corpus.entries[i].note;
        if !note.is_empty() {
            note.push(' ');
        }
        note.push_str(&text);
    }
    for (lineno, a, b) in pending_equiv {
        for n in [&a, &b] {
            if !corpus.index.contains_key(n) {
                return Err(line_error(lineno, n, "equivalence names unknown entry"));
            }
        }
        corpus.equivalences.push((a, b));
    }
    Ok(corpus)
}

/// The built-in corpus.
pub fn builtin() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| parse_corpus(BUILTIN).expect("built-in corpus parses"))
}

pub fn lookup(name: &str) -> Result<&'static CorpusEntry> {
    builtin().get(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let c = builtin();
        assert!(c.entries().len() >= 20);
        for e in c.entries() {
            let d = e.diagram();
            assert_eq!(d.gauss_code().crossing_count(), d.crossing_count(), "{}", e.name);
            assert!(!e.note.is_empty(), "{} has no note", e.name);
        }
    }

    #[test]
    fn known_shapes() {
        let k = lookup("kishino").unwrap().diagram();
        assert_eq!((k.crossing_count(), k.component_count()), (4, 1));
        let h = lookup("vhopf").unwrap().diagram();
        assert_eq!((h.crossing_count(), h.component_count()), (1, 2));
        assert_eq!(lookup("unknot").unwrap().diagram().edge_count(), 1);
        assert_eq!(
            lookup("kishino_braid").unwrap().gauss_code(),
            lookup("kishino").unwrap().gauss_code()
        );
        assert_eq!(
            lookup("vhopf").unwrap().gauss_code(),
            lookup("vhopf_gauss").unwrap().gauss_code()
        );
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(lookup("nope"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "entry x knot O1+",
            "entry x gauss O1+",
            "entry x gauss\nentry x gauss",
            "note y hello",
            "equiv a",
            "frobnicate",
            "entry a gauss\nequiv a b",
        ] {
            assert!(parse_corpus(bad).is_err(), "{bad:?}");
        }
    }
}
