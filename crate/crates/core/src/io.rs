//! Facet files.
//!
//! The `.sc` format is UTF-8 text with one facet per line and whitespace
//! separated vertex tokens. Lines starting with `#` are comments. Tokens are
//! arbitrary strings and are numbered in first-seen order. The JSON form is
//! `{"facets": [[...], ...]}` with string or integer tokens.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::complex::{ComplexError, Face, SimplicialComplex, Vertex};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {source}")]
    Face { line: usize, source: ComplexError },
    #[error("line {line}: {message}")]
    Json { line: usize, message: String },
    #[error("line {line}: vertex {token} appears twice in one face")]
    DuplicateToken { line: usize, token: String },
    #[error("line {line}: unsupported token {token}")]
    Token { line: usize, token: String },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// A complex together with the external name of each vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledComplex {
    pub complex: SimplicialComplex,
    /// `labels[v]` names vertex `v`.
    pub labels: Vec<String>,
}

impl LabeledComplex {
    /// Labels every vertex by its integer id.
    pub fn plain(complex: SimplicialComplex) -> Self {
        let labels = (0..complex.vertex_bound()).map(|v| v.to_string()).collect();
        LabeledComplex { complex, labels }
    }

    pub fn label(&self, v: Vertex) -> &str {
        self.labels.get(v as usize).map_or("?", String::as_str)
    }

    pub fn face_labels(&self, face: &Face) -> Vec<String> {
        face.vertices().iter().map(|&v| self.label(v).to_string()).collect()
    }

    pub fn to_sc(&self) -> String {
        let mut out = String::new();
        for f in self.complex.facets() {
            let _ = writeln!(out, "{}", self.face_labels(f).join(" "));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let facets: Vec<Vec<String>> = self.complex.facets().iter().map(|f| self.face_labels(f)).collect();
        serde_json::json!({ "facets": facets })
    }
}

#[derive(Default)]
struct SymbolTable {
    ids: HashMap<String, Vertex>,
    labels: Vec<String>,
}

impl SymbolTable {
    fn intern(&mut self, token: &str) -> Vertex {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = self.labels.len() as Vertex;
        self.ids.insert(token.to_string(), id);
        self.labels.push(token.to_string());
        id
    }
}

pub fn parse_sc(text: &str) -> Result<LabeledComplex, ParseError> {
    let mut table = SymbolTable::default();
    let mut faces = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if let Some(dup) = tokens.iter().enumerate().find(|(i, t)| tokens[..*i].contains(t)) {
            return Err(ParseError::DuplicateToken { line: idx + 1, token: dup.1.to_string() });
        }
        let ids: Vec<Vertex> = tokens.iter().map(|t| table.intern(t)).collect();
        let face = Face::new(ids).map_err(|source| ParseError::Face { line: idx + 1, source })?;
        faces.push(face);
    }
    Ok(LabeledComplex { complex: SimplicialComplex::from_facets(faces), labels: table.labels })
}

#[derive(Deserialize)]
struct JsonFacets {
    facets: Vec<Vec<serde_json::Value>>,
}

pub fn parse_json(text: &str) -> Result<LabeledComplex, ParseError> {
    let doc: JsonFacets =
        serde_json::from_str(text).map_err(|e| ParseError::Json { line: e.line(), message: e.to_string() })?;
    let mut table = SymbolTable::default();
    let mut faces = Vec::new();
    for facet in &doc.facets {
        let mut ids = Vec::with_capacity(facet.len());
        for tok in facet {
            let token = match tok {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) if n.is_u64() => n.to_string(),
                other => return Err(ParseError::Token { line: 0, token: other.to_string() }),
            };
            ids.push(table.intern(&token));
        }
        faces.push(Face::new(ids).map_err(|source| ParseError::Face { line: 0, source })?);
    }
    Ok(LabeledComplex { complex: SimplicialComplex::from_facets(faces), labels: table.labels })
}

/// Parses JSON when the text starts with `{`, the `.sc` format otherwise.
pub fn parse_auto(text: &str) -> Result<LabeledComplex, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_sc(text)
    }
}

pub fn read_path(path: &Path) -> Result<LabeledComplex, ParseError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.display().to_string(), source })?;
    parse_auto(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_are_interned_in_first_seen_order() {
        let lc = parse_sc("# comment\nb a c\n\n  c d\n").unwrap();
        assert_eq!(lc.labels, vec!["b", "a", "c", "d"]);
        assert_eq!(lc.complex.facets().len(), 2);
        assert_eq!(lc.complex.facets()[0].vertices(), &[0, 1, 2]);
        assert_eq!(lc.complex.facets()[1].vertices(), &[2, 3]);
    }

    #[test]
    fn duplicate_token_names_the_line() {
        let err = parse_sc("0 1 2\n# x\nb a b\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: vertex b appears twice in one face");
    }

    #[test]
    fn json_accepts_numbers_and_strings() {
        let lc = parse_auto(r#"{"facets": [[0, 1, "x"], [1, 2]]}"#).unwrap();
        assert_eq!(lc.labels, vec!["0", "1", "x", "2"]);
        assert_eq!(lc.complex.num_vertices(), 4);
        assert!(parse_json(r#"{"facets": [[0, -1]]}"#).is_err());
        assert!(matches!(parse_json("{\n\"facets\": [[0,\n}"), Err(ParseError::Json { line: 3, .. })));
    }

    #[test]
    fn sc_text_round_trips_through_labels() {
        let lc = parse_sc("v1 v2 w1\nw1 w2 w3\n").unwrap();
        let again = parse_sc(&lc.to_sc()).unwrap();
        assert_eq!(again.to_sc(), lc.to_sc());
        let json = lc.to_json().to_string();
        assert_eq!(parse_json(&json).unwrap().to_sc(), lc.to_sc());
    }
}
