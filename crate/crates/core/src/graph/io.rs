//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! v a
//! e a b
//! ```

use std::fmt::Write;
use std::str::FromStr;

use super::Graph;
use crate::error::Error;

pub type ParseError = Error;

impl FromStr for Graph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut g = Graph::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            let err = |message: &str| Error::Parse {
                line,
                message: message.to_string(),
            };
            match parts.as_slice() {
                ["v", name] => {
                    g.add_vertex(*name).map_err(|e| match e {
                        Error::DuplicateVertex(n) => Error::Parse {
                            line,
                            message: format!("duplicate vertex `{n}`"),
                        },
                        other => other,
                    })?;
                }
                ["e", a, b] => {
                    let a = g.vertex_or_insert(a).map_err(|e| err(&e.to_string()))?;
                    let b = g.vertex_or_insert(b).map_err(|e| err(&e.to_string()))?;
                    g.add_edge(a, b)?;
                }
                ["v", ..] => return Err(err("expected `v <name>`")),
                ["e", ..] => return Err(err("expected `e <name> <name>`")),
                _ => return Err(err(&format!("unrecognised directive `{}`", parts[0]))),
            }
        }
        Ok(g)
    }
}

impl Graph {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            writeln!(out, "v {}", self.name(v)).unwrap();
        }
        for e in self.edges() {
            let (a, b) = self.endpoints(e);
            writeln!(out, "e {} {}", self.name(a), self.name(b)).unwrap();
        }
        out
    }
}
