//! Search for an action of `Z2^2` on `Z2^3` whose semidirect product behaves
//! like the order-32 group with a non-bipartite difference graph and a
//! disconnected reduced graph.

use std::sync::Arc;

use super::HarnessError;
use crate::analytics::{components, is_bipartite};
use crate::graphs::build_all;
use crate::lattice::all_subgroups;
use crate::perm::{
    parse_group_spec, realize, ActionRegistry, ActionTable, GroupSpec, Word, DEFAULT_ORDER_CAP,
};

/// Action id used for the frozen result in the manifest.
pub const GAP3249_ACTION_ID: &str = "gap3249";

/// An invertible 3x3 matrix over GF(2), stored as the images of the basis
/// vectors; bit `j` of `cols[i]` is the `x_j` coefficient of the image of `x_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Mat {
    cols: [u8; 3],
}

impl Mat {
    fn apply(self, v: u8) -> u8 {
        (0..3)
            .filter(|&i| v >> i & 1 == 1)
            .fold(0, |acc, i| acc ^ self.cols[i])
    }

    fn invertible(self) -> bool {
        let [a, b, c] = self.cols;
        a != 0 && b != 0 && c != 0 && a != b && a != c && b != c && a ^ b != c
    }

    fn is_involution_or_identity(self) -> bool {
        (0..3).all(|i| self.apply(self.cols[i]) == 1 << i)
    }

    fn commutes(self, other: Mat) -> bool {
        (0..3).all(|i| self.apply(other.cols[i]) == other.apply(self.cols[i]))
    }

    fn words(self) -> Vec<Word> {
        self.cols
            .iter()
            .map(|&v| Word((0..3).filter(|&j| v >> j & 1 == 1).map(|j| (j, 1)).collect()))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Gap3249Result {
    pub action: ActionTable,
    pub spec: GroupSpec,
    /// Candidate actions examined before the first qualifying one.
    pub scanned: usize,
}

/// The group expression the manifest uses for the result.
pub fn gap3249_spec() -> GroupSpec {
    parse_group_spec(&format!(
        "semidirect(elem_abelian(2, 3), elem_abelian(2, 2), {GAP3249_ACTION_ID})"
    ))
    .expect("fixed expression parses")
}

/// Scans pairs of commuting automorphisms of order at most 2 in canonical
/// order (matrices ordered by their column codes) and returns the first whose
/// product has a non-bipartite difference graph and a disconnected `D*`.
pub fn find_gap3249_action() -> Result<Gap3249Result, HarnessError> {
    let mats: Vec<Mat> = (0u32..512)
        .map(|code| Mat {
            cols: [(code & 7) as u8, (code >> 3 & 7) as u8, (code >> 6 & 7) as u8],
        })
        .filter(|m| m.invertible() && m.is_involution_or_identity())
        .collect();
    let spec = gap3249_spec();
    let mut scanned = 0;
    for &a in &mats {
        for &b in &mats {
            if !a.commutes(b) {
                continue;
            }
            scanned += 1;
            let action = ActionTable {
                images: vec![a.words(), b.words()],
            };
            let mut actions = ActionRegistry::new();
            actions.insert(GAP3249_ACTION_ID, action.clone());
            let group = realize(&spec, &actions, DEFAULT_ORDER_CAP).map_err(|e| {
                HarnessError::Realize {
                    label: "gap_32_49_like".into(),
                    source: e,
                }
            })?;
            let lat = all_subgroups(Arc::new(group)).map_err(|e| HarnessError::Lattice {
                label: "gap_32_49_like".into(),
                source: e,
            })?;
            let graphs = build_all(&lat);
            if !is_bipartite(&graphs.difference.graph)
                && components(&graphs.difference_star.graph).len() > 1
            {
                return Ok(Gap3249Result {
                    action,
                    spec,
                    scanned,
                });
            }
        }
    }
    Err(HarnessError::NoCandidate(
        "no action of Z2^2 on Z2^3 gives a non-bipartite D with disconnected D*".into(),
    ))
}
