use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{smith_diagonal, IntMatrix};
use super::word::Word;
use crate::error::Error;
use crate::graph::Graph;
use crate::planner::{Motion, VertexConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    /// A loop at the presentation's base realising the generator.
    pub witness: Option<Motion>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
    pub base: Option<VertexConfig>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Presentation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Presentation with named generators and no witnesses.
    pub fn from_names(names: &[&str], relators: Vec<Word>) -> Self {
        Self {
            generators: names
                .iter()
                .map(|n| Generator {
                    name: n.to_string(),
                    witness: None,
                })
                .collect(),
            relators,
            base: None,
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn exponent_matrix(&self) -> IntMatrix {
        let n = self.generators.len();
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(n)).collect();
        IntMatrix::from_i64(&rows, n)
    }

    pub fn abelianization(&self) -> Abelianization {
        abelianization(self)
    }

    pub fn to_text(&self) -> String {
        let names = self.names();
        let mut out = String::new();
        for g in &names {
            out.push_str(&format!("gen {g}\n"));
        }
        for r in &self.relators {
            out.push_str(&format!("rel {}\n", r.display(&names)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut p = Self::new();
        let mut names: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match key {
                "gen" => {
                    let name = rest.trim();
                    if name.is_empty()
                        || name.contains(char::is_whitespace)
                        || names.iter().any(|n| n == name)
                    {
                        return Err(err(format!("bad generator name `{name}`")));
                    }
                    names.push(name.to_string());
                    p.generators.push(Generator {
                        name: name.to_string(),
                        witness: None,
                    });
                }
                "rel" => p.relators.push(Word::parse(rest, &names).map_err(err)?),
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        Ok(p)
    }

    /// JSON with witnesses inlined as frames of vertex names.
    pub fn to_json(&self, graph: Option<&Graph>) -> serde_json::Value {
        let names = self.names();
        let config = |c: &VertexConfig| -> serde_json::Value {
            match graph {
                Some(g) => c.iter().map(|&v| g.name(v)).collect::<Vec<_>>().into(),
                None => c.iter().map(|v| v.0).collect::<Vec<_>>().into(),
            }
        };
        let witnesses: serde_json::Map<String, serde_json::Value> = self
            .generators
            .iter()
            .filter_map(|g| {
                g.witness.as_ref().map(|w| {
                    let frames: Vec<serde_json::Value> = w.frames.iter().map(config).collect();
                    (g.name.clone(), serde_json::json!({ "frames": frames }))
                })
            })
            .collect();
        serde_json::json!({
            "schema": "graphbraid.presentation/1",
            "generators": names,
            "relators": self.relators.iter().map(|r| r.display(&names).to_string()).collect::<Vec<_>>(),
            "base": self.base.as_ref().map(config),
            "witnesses": witnesses,
        })
    }
}

pub fn abelianization(p: &Presentation) -> Abelianization {
    let n = p.generators.len();
    if p.relators.is_empty() {
        return Abelianization {
            rank: n,
            torsion: Vec::new(),
        };
    }
    let d = smith_diagonal(&p.exponent_matrix());
    let nonzero: Vec<&BigInt> = d.iter().filter(|x| !x.is_zero()).collect();
    Abelianization {
        rank: n - nonzero.len(),
        torsion: nonzero
            .into_iter()
            .filter(|x| !x.is_one())
            .cloned()
            .collect(),
    }
}

/// Concatenates witness loops along `w` (reversed for inverse letters).
pub fn evaluate_word(p: &Presentation, w: &Word) -> Result<Motion, Error> {
    let base = p
        .base
        .as_ref()
        .ok_or_else(|| Error::MissingWitness("presentation has no base".into()))?;
    let mut out = Motion::constant(base);
    for &(g, e) in &w.letters {
        let gen = p
            .generators
            .get(g)
            .ok_or_else(|| Error::MissingWitness(format!("generator index {g}")))?;
        let witness = gen
            .witness
            .as_ref()
            .ok_or_else(|| Error::MissingWitness(gen.name.clone()))?;
        if witness.start() != base || !witness.is_loop() {
            return Err(Error::MissingWitness(format!(
                "witness of {} is not a loop at the base",
                gen.name
            )));
        }
        out = if e > 0 {
            out.then(witness)
        } else {
            out.then(&witness.reversed())
        };
    }
    Ok(out)
}
