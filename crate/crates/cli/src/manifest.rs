//! Line-oriented manifest: one JSON object per field or algebra.
//!
//! ```text
//! {"name":"K","base":"Q","generator":"w","minpoly":["1","1","1"],"automorphisms":[["-1","-1"]]}
//! {"name":"h","field":"Q","dim":3,"brackets":[{"i":1,"j":2,"k":3,"coeff":"1"}]}
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. Bracket indices are
//! 1-based with `i < j`; coefficients and polynomial coefficients are element
//! literals in the named field.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::refs::names_field;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDef {
    pub name: String,
    pub base: String,
    /// Generator name used in element literals; defaults to `a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    /// Coefficients over `base`, low to high; must be monic.
    pub minpoly: Vec<String>,
    /// Images of the generator as coordinate vectors over `base`.
    #[serde(default)]
    pub automorphisms: Vec<Vec<String>>,
}

impl FieldDef {
    pub fn generator_name(&self) -> &str {
        self.generator.as_deref().unwrap_or("a")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDef {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub brackets: Vec<BracketDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entity {
    Field(FieldDef),
    Algebra(AlgebraDef),
}

impl Entity {
    pub fn name(&self) -> &str {
        match self {
            Entity::Field(f) => &f.name,
            Entity::Algebra(a) => &a.name,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    pub entities: Vec<Entity>,
}

impl Manifest {
    /// Parses and checks structure: unique names, `i < j`, indices within
    /// `1..=dim`, algebras referring to fields defined earlier or built in.
    /// Field arithmetic is validated later when the context is built.
    pub fn parse(text: &str) -> CliResult<Manifest> {
        let mut entities = Vec::new();
        let mut names = HashSet::new();
        let mut fields = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |message: String| CliError::Manifest { line, message };
            let entity: Entity =
                serde_json::from_str(trimmed).map_err(|e| err(format!("not a field or algebra entity ({e})")))?;
            if !names.insert(entity.name().to_string()) {
                return Err(err(format!("duplicate name '{}'", entity.name())));
            }
            match &entity {
                Entity::Field(f) => {
                    if !names_field(&f.base, &fields) {
                        return Err(err(format!("unknown base field '{}'", f.base)));
                    }
                    fields.insert(f.name.clone());
                }
                Entity::Algebra(a) => {
                    if !names_field(&a.field, &fields) {
                        return Err(err(format!("unknown field '{}'", a.field)));
                    }
                    for b in &a.brackets {
                        if b.i >= b.j {
                            return Err(err(format!("bracket ({}, {}) must have i < j", b.i, b.j)));
                        }
                        if [b.i, b.j, b.k].iter().any(|&x| x == 0 || x > a.dim) {
                            return Err(err(format!("bracket index outside 1..={}", a.dim)));
                        }
                    }
                }
            }
            entities.push(entity);
        }
        Ok(Manifest { entities })
    }

    /// One compact JSON object per line, in input order.
    pub fn to_canonical(&self) -> String {
        self.entities
            .iter()
            .map(|e| serde_json::to_string(e).expect("plain data") + "\n")
            .collect()
    }

    pub fn fields(&self) -> impl Iterator<Item = &FieldDef> {
        self.entities.iter().filter_map(|e| match e {
            Entity::Field(f) => Some(f),
            Entity::Algebra(_) => None,
        })
    }

    pub fn algebra(&self, name: &str) -> Option<&AlgebraDef> {
        self.entities.iter().find_map(|e| match e {
            Entity::Algebra(a) if a.name == name => Some(a),
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
# Q(w) with w^2 + w + 1 = 0 and a Heisenberg algebra over it
{"name":"K","base":"Q","generator":"w","minpoly":["1","1","1"],"automorphisms":[["-1","-1"]]}
{"name":"h","field":"K","dim":3,"brackets":[{"i":1,"j":2,"k":3,"coeff":"w"}]}
"#;

    #[test]
    fn round_trip() {
        let m = Manifest::parse(SAMPLE).unwrap();
        assert_eq!(m.entities.len(), 2);
        let canon = m.to_canonical();
        assert_eq!(Manifest::parse(&canon).unwrap(), m);
        assert_eq!(Manifest::parse(&canon).unwrap().to_canonical(), canon);
        assert_eq!(m.algebra("h").unwrap().dim, 3);
        assert_eq!(m.fields().next().unwrap().generator_name(), "w");
    }

    #[test]
    fn rejects_bad_lines() {
        let bad = [
            r#"{"name":"h","field":"Q","dim":3,"brackets":[{"i":2,"j":1,"k":3,"coeff":"1"}]}"#,
            r#"{"name":"h","field":"Q","dim":3,"brackets":[{"i":1,"j":2,"k":4,"coeff":"1"}]}"#,
            r#"{"name":"h","field":"L","dim":3,"brackets":[]}"#,
            r#"{"name":"h","field":"Q","dim":3,"brackets":[],"extra":1}"#,
            "not json",
        ];
        for line in bad {
            assert!(
                matches!(Manifest::parse(line), Err(CliError::Manifest { line: 1, .. })),
                "{line}"
            );
        }
        let dup = "{\"name\":\"a\",\"field\":\"Q\",\"dim\":1,\"brackets\":[]}\n".repeat(2);
        assert!(matches!(Manifest::parse(&dup), Err(CliError::Manifest { line: 2, .. })));
    }
}
