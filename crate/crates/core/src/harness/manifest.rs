//! Corpus manifests: `label = spec-expression` lines, `action id = table`
//! lines for semidirect products, and `#` comments.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::perm::{parse_group_spec, ActionRegistry, ActionTable, GroupSpec, SpecError};

/// The manifest shipped with the crate.
pub const BUILTIN_MANIFEST: &str = include_str!("../../corpus/manifest.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ManifestError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Size classes of the corpus, decided by group order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Fast,
    Standard,
    Long,
}

impl Tier {
    pub fn of_order(order: u128) -> Tier {
        match order {
            0..=200 => Tier::Fast,
            201..=400 => Tier::Standard,
            _ => Tier::Long,
        }
    }

    /// Whether a group of tier `self` is run when `selected` is requested.
    /// Tiers are cumulative: `standard` includes `fast`.
    pub fn within(self, selected: Tier) -> bool {
        self <= selected
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Fast => "fast",
            Tier::Standard => "standard",
            Tier::Long => "long",
        })
    }
}

impl std::str::FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Tier::Fast),
            "standard" => Ok(Tier::Standard),
            "long" => Ok(Tier::Long),
            _ => Err(format!("unknown tier {s:?} (expected fast, standard or long)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub label: String,
    pub spec: GroupSpec,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
    pub actions: ActionRegistry,
    /// SHA-256 of the manifest text, hex encoded.
    pub hash: String,
}

impl Manifest {
    pub fn builtin() -> Manifest {
        parse_manifest(BUILTIN_MANIFEST).expect("the bundled manifest is valid")
    }

    pub fn get(&self, label: &str) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let hash = Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let mut entries = Vec::new();
    let mut actions = ActionRegistry::new();
    let mut labels = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: String| ManifestError {
            line,
            column,
            message,
        };
        let Some(eq) = content.find('=') else {
            return Err(err(1, "expected 'label = spec' or 'action id = table'".into()));
        };
        let lhs = content[..eq].trim();
        let rhs_start = eq + 1 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
        let rhs = content[eq + 1..].trim();
        if let Some(id) = lhs.strip_prefix("action ") {
            let id = id.trim();
            if !valid_label(id) {
                return Err(err(1, format!("invalid action id {id:?}")));
            }
            let table = ActionTable::parse(rhs).map_err(|m| err(rhs_start + 1, m))?;
            if actions.insert(id, table).is_some() {
                return Err(err(1, format!("duplicate action id {id:?}")));
            }
            continue;
        }
        if !valid_label(lhs) {
            return Err(err(1, format!("invalid label {lhs:?}")));
        }
        let spec = parse_group_spec(rhs).map_err(|e| match e {
            SpecError::Syntax { position, message } => err(rhs_start + position + 1, message),
            other => err(rhs_start + 1, other.to_string()),
        })?;
        if !labels.insert(lhs.to_string()) {
            return Err(err(1, format!("duplicate label {lhs:?}")));
        }
        entries.push(ManifestEntry {
            label: lhs.to_string(),
            spec,
            line,
        });
    }
    for e in &entries {
        for id in e.spec.action_ids() {
            if actions.get(id).is_none() {
                return Err(ManifestError {
                    line: e.line,
                    column: 1,
                    message: format!("unknown action id {id:?}"),
                });
            }
        }
    }
    Ok(Manifest {
        entries,
        actions,
        hash,
    })
}
