//! Theorem registry, corpus runner and open-problem hunts.

mod bundle;
mod gap3249;
pub mod hunt;
mod manifest;
pub mod registry;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analytics::Budgets;
use crate::classify::ClassifyError;
use crate::lattice::LatticeError;
use crate::perm::{realize, PermError, DEFAULT_ORDER_CAP};

pub use bundle::{Bound, Compute, DifferenceFacts, GroupBundle, LatticeSource, StarFacts};
pub use gap3249::{find_gap3249_action, gap3249_spec, Gap3249Result, GAP3249_ACTION_ID};
pub use hunt::{hunt, Finding, FindingStatus, HuntId, HuntReport};
pub use manifest::{parse_manifest, Manifest, ManifestEntry, ManifestError, Tier, BUILTIN_MANIFEST};
pub use registry::{registry, select, Outcome, Status, TheoremCheck};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{label}: {source}")]
    Realize {
        label: String,
        #[source]
        source: PermError,
    },
    #[error("{label}: {source}")]
    Lattice {
        label: String,
        #[source]
        source: LatticeError,
    },
    #[error("{label}: {source}")]
    Classify {
        label: String,
        #[source]
        source: ClassifyError,
    },
    #[error("manifest: {0}")]
    Manifest(#[from] ManifestError),
    #[error("{0}")]
    NoCandidate(String),
    #[error("{0}")]
    UnknownTheorem(String),
}

/// Identifies the inputs a report was produced from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub tool_version: String,
    pub manifest_hash: String,
}

impl Provenance {
    pub fn of(manifest: &Manifest) -> Self {
        Provenance {
            tool_version: TOOL_VERSION.to_string(),
            manifest_hash: manifest.hash.clone(),
        }
    }
}

/// Realizes the entries of `tier` (and smaller tiers) and computes their
/// bundles in parallel; the result is in manifest order.
pub fn build_bundles(
    manifest: &Manifest,
    tier: Tier,
    budgets: Budgets,
    source: &dyn LatticeSource,
) -> Result<Vec<GroupBundle>, HarnessError> {
    let realized = manifest
        .entries
        .par_iter()
        .map(|e| {
            realize(&e.spec, &manifest.actions, DEFAULT_ORDER_CAP)
                .map(|g| (e, g))
                .map_err(|source| HarnessError::Realize {
                    label: e.label.clone(),
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    realized
        .into_par_iter()
        .filter(|(_, g)| Tier::of_order(g.order() as u128).within(tier))
        .map(|(e, g)| GroupBundle::from_group(&e.label, &e.spec, g, &manifest.actions, budgets, source))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatusCounts {
    pub vacuous: usize,
    pub confirmed: usize,
    pub counterexample: usize,
    pub unverified: usize,
}

impl StatusCounts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Vacuous => self.vacuous += 1,
            Status::Confirmed => self.confirmed += 1,
            Status::Counterexample => self.counterexample += 1,
            Status::Unverified => self.unverified += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupRow {
    pub label: String,
    pub order: usize,
    pub tier: Tier,
    /// One outcome per theorem, in the report's theorem order.
    pub outcomes: Vec<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub provenance: Provenance,
    pub tier: Tier,
    pub theorems: Vec<String>,
    pub rows: Vec<GroupRow>,
    pub summary: BTreeMap<String, StatusCounts>,
}

impl CorpusReport {
    pub fn total(&self) -> StatusCounts {
        let mut t = StatusCounts::default();
        for row in &self.rows {
            for o in &row.outcomes {
                t.add(o.status);
            }
        }
        t
    }

    pub fn counterexamples(&self) -> Vec<(&str, &str, &Outcome)> {
        self.rows
            .iter()
            .flat_map(|r| {
                r.outcomes
                    .iter()
                    .zip(&self.theorems)
                    .filter(|(o, _)| o.status == Status::Counterexample)
                    .map(move |(o, t)| (r.label.as_str(), t.as_str(), o))
            })
            .collect()
    }

    pub fn outcome(&self, label: &str, theorem: &str) -> Option<&Outcome> {
        let col = self.theorems.iter().position(|t| t == theorem)?;
        self.rows.iter().find(|r| r.label == label).map(|r| &r.outcomes[col])
    }

    /// Plain-text grid: one row per group, one column per theorem, with the
    /// status codes `+` confirmed, `.` vacuous, `X` counterexample, `?` unverified.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# tool version {}", self.provenance.tool_version);
        let _ = writeln!(out, "# manifest sha256 {}", self.provenance.manifest_hash);
        let _ = writeln!(out, "# tier {}", self.tier);
        let width = self.rows.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
        let _ = write!(out, "{:width$} {:>6}", "group", "order");
        for t in &self.theorems {
            let _ = write!(out, " {t:>7}");
        }
        out.push('\n');
        for r in &self.rows {
            let _ = write!(out, "{:width$} {:>6}", r.label, r.order);
            for o in &r.outcomes {
                let _ = write!(out, " {:>7}", o.status.code());
            }
            out.push('\n');
        }
        out.push('\n');
        let _ = writeln!(
            out,
            "{:8} {:>9} {:>7} {:>14} {:>10}",
            "theorem", "confirmed", "vacuous", "counterexample", "unverified"
        );
        for (t, c) in &self.summary {
            let _ = writeln!(
                out,
                "{t:8} {:>9} {:>7} {:>14} {:>10}",
                c.confirmed, c.vacuous, c.counterexample, c.unverified
            );
        }
        for (label, t, o) in self.counterexamples() {
            let _ = writeln!(out, "counterexample {t} on {label}: {} (witness {:?})", o.note, o.witness);
        }
        out
    }
}

/// Evaluates `checks` on every bundle. Bundles must come from `manifest`.
pub fn run_checks(
    manifest: &Manifest,
    bundles: &[GroupBundle],
    checks: &[TheoremCheck],
    tier: Tier,
) -> CorpusReport {
    let rows: Vec<GroupRow> = bundles
        .par_iter()
        .map(|b| GroupRow {
            label: b.label.clone(),
            order: b.order(),
            tier: b.tier,
            outcomes: checks.iter().map(|c| (c.check)(b)).collect(),
        })
        .collect();
    let mut summary: BTreeMap<String, StatusCounts> =
        checks.iter().map(|c| (c.id.to_string(), StatusCounts::default())).collect();
    for row in &rows {
        for (c, o) in checks.iter().zip(&row.outcomes) {
            summary.get_mut(c.id).unwrap().add(o.status);
        }
    }
    CorpusReport {
        provenance: Provenance::of(manifest),
        tier,
        theorems: checks.iter().map(|c| c.id.to_string()).collect(),
        rows,
        summary,
    }
}

/// Builds the bundles for `tier` and runs the checks selected by `filter`
/// (all of them when empty).
pub fn run_corpus(
    manifest: &Manifest,
    filter: &[String],
    tier: Tier,
    budgets: Budgets,
    source: &dyn LatticeSource,
) -> Result<CorpusReport, HarnessError> {
    let checks = select(filter).map_err(HarnessError::UnknownTheorem)?;
    let bundles = build_bundles(manifest, tier, budgets, source)?;
    Ok(run_checks(manifest, &bundles, &checks, tier))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Manifest {
        parse_manifest(
            "s3 = symmetric(3)\nd4 = dihedral(4)\nz6 = cyclic(6)\na4 = alternating(4)\na5 = alternating(5)\n",
        )
        .unwrap()
    }

    #[test]
    fn small_corpus_has_no_counterexamples() {
        let m = small();
        let r = run_corpus(&m, &[], Tier::Fast, Budgets::default(), &Compute).unwrap();
        assert_eq!(r.rows.len(), 5);
        assert!(r.counterexamples().is_empty(), "{}", r.to_text());
        assert_eq!(r.outcome("a5", "T-2.5").unwrap().status, Status::Confirmed);
        assert_eq!(r.outcome("d4", "T-2.6").unwrap().status, Status::Confirmed);
        assert_eq!(r.outcome("z6", "T-2.8").unwrap().status, Status::Vacuous);
        assert_eq!(r.total().unverified, 0);
    }

    #[test]
    fn filter_and_empty_corpus() {
        let m = small();
        let r = run_corpus(&m, &["T-6.1".to_string()], Tier::Fast, Budgets::default(), &Compute).unwrap();
        assert_eq!(r.theorems, vec!["T-6.1"]);
        assert!(run_corpus(&m, &["T-9".to_string()], Tier::Fast, Budgets::default(), &Compute).is_err());
        let empty = parse_manifest("# nothing\n").unwrap();
        let r = run_corpus(&empty, &[], Tier::Long, Budgets::default(), &Compute).unwrap();
        assert!(r.rows.is_empty());
        assert!(r.to_text().contains("manifest sha256"));
    }

    #[test]
    fn registry_ids_unique() {
        let ids: std::collections::BTreeSet<_> = registry().iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), registry().len());
        assert_eq!(ids.len(), 28);
    }
}
