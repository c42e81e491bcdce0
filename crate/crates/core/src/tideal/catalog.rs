//! Named varieties: the built-in catalog plus optional user files.
//!
//! A catalog file is TOML with `[[variety]]` tables (`name`, optional
//! `aliases`, `flavor`, `identities` in the identity language, optional
//! `notes`) and optional `[[macro]]` tables (`name`, `arity`, `body`,
//! optional `description`).

use serde::Deserialize;

use super::VarietyPresentation;
use crate::error::{Error, Result};
use crate::lang::MacroTable;
use crate::term::{parse_rational, Flavor};

const BUILTIN: &str = r#"
[[variety]]
name = "assosymmetric"
aliases = ["assym"]
flavor = "planar"
identities = ["lsym(t1,t2,t3)", "rsym(t1,t2,t3)"]
notes = "associator invariant under all permutations of its arguments"

[[variety]]
name = "associative"
aliases = ["assoc"]
flavor = "planar"
identities = ["A(t1,t2,t3)"]

[[variety]]
name = "dual-assosymmetric"
aliases = ["assym-dual", "assym!"]
flavor = "planar"
identities = ["[t1,t2] t3 + [t2,t3] t1 + [t3,t1] t2", "A(t1,t2,t3)"]
notes = "quadratic dual of the assosymmetric operad"

[[variety]]
name = "magmatic"
aliases = ["free"]
flavor = "planar"
identities = []

[[variety]]
name = "commutative"
aliases = ["comm", "commutative-magmatic"]
flavor = "commutative"
identities = []

[[variety]]
name = "lie-triple"
aliases = ["lietriple"]
flavor = "commutative"
identities = ["lietriple(t1,t2,t3)"]

[[variety]]
name = "jordan"
aliases = ["jor"]
flavor = "commutative"
identities = ["jor(t1,t2)"]
notes = "in characteristic 2 and 3 the linearized Jordan identity is not equivalent to jor"

[[variety]]
name = "assder"
aliases = ["assder-variety"]
flavor = "planar"
identities = ["assder(t1,t2,t3,t4)"]
"#;

#[derive(Debug, Clone, Deserialize)]
struct RawVariety {
    name: String,
    #[serde(default)]
    aliases: Vec<String>,
    flavor: String,
    #[serde(default)]
    identities: Vec<String>,
    #[serde(default)]
    notes: String,
}

#[derive(Debug, Clone, Deserialize)]
struct RawMacro {
    name: String,
    arity: usize,
    body: String,
    #[serde(default)]
    description: String,
}

#[derive(Debug, Clone, Default, Deserialize)]
struct RawCatalog {
    #[serde(default)]
    variety: Vec<RawVariety>,
    #[serde(default, rename = "macro")]
    macros: Vec<RawMacro>,
}

/// Variety definitions and the macro table their identities are parsed with.
#[derive(Clone)]
pub struct Catalog {
    entries: Vec<RawVariety>,
    macros: MacroTable,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        let raw: RawCatalog = toml::from_str(BUILTIN).expect("built-in catalog parses");
        Catalog {
            entries: raw.variety,
            macros: MacroTable::builtin().clone(),
        }
    }

    /// The built-ins extended by a user catalog. Built-in names cannot be redefined.
    pub fn with_user_text(text: &str) -> Result<Catalog> {
        let mut cat = Catalog::builtin();
        let raw: RawCatalog = toml::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        for m in raw.macros {
            cat.macros.define(&m.name, m.arity, &m.body, &m.description)?;
        }
        for v in raw.variety {
            for key in std::iter::once(&v.name).chain(&v.aliases) {
                if cat.find(key).is_some() {
                    return Err(Error::Catalog(format!("variety name {key} is already taken")));
                }
            }
            cat.entries.push(v);
        }
        // Surface parse errors at load time rather than at first use.
        for v in &cat.entries {
            cat.build(v)?;
        }
        Ok(cat)
    }

    pub fn load(path: &std::path::Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Self::with_user_text(&text)
    }

    pub fn macros(&self) -> &MacroTable {
        &self.macros
    }

    fn find(&self, name: &str) -> Option<&RawVariety> {
        self.entries
            .iter()
            .find(|v| v.name == name || v.aliases.iter().any(|a| a == name))
    }

    /// Canonical names, in catalog order.
    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|v| v.name.as_str()).collect()
    }

    /// Looks up a name or alias; `quasi:<q>` gives the quasi-assosymmetric
    /// variety at parameter `q`.
    pub fn get(&self, name: &str) -> Result<VarietyPresentation> {
        if let Some(q) = name.strip_prefix("quasi:") {
            let q = parse_rational(q)?;
            let ids = [format!("lsym_q{{q={q}}}(t1,t2,t3)"), format!("rsym_q{{q={q}}}(t1,t2,t3)")];
            let raw = RawVariety {
                name: format!("quasi-assosymmetric(q={q})"),
                aliases: Vec::new(),
                flavor: "planar".into(),
                identities: ids.to_vec(),
                notes: "image of the assosymmetric identities under the q-commutator substitution at -q"
                    .into(),
            };
            return self.build(&raw);
        }
        let raw = self
            .find(name)
            .ok_or_else(|| Error::Catalog(format!("unknown variety {name}")))?;
        self.build(raw)
    }

    fn build(&self, raw: &RawVariety) -> Result<VarietyPresentation> {
        let flavor: Flavor = raw.flavor.parse()?;
        VarietyPresentation::from_sources(&raw.name, flavor, &raw.identities, &raw.notes, &self.macros)
    }
}
