//! Local graph patches replacing a singular point of `C` in the dual graph.
//!
//! File format (JSON): `{"schema": "singzeta-catalog/1", "entries": [...]}`;
//! each entry lists the new exceptional curves with genus, multiplicity of
//! `z2` and self-intersection, the node each local branch of `C` attaches to,
//! edges between the new curves, and the ambient weight of the blow-up.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dot, gcd_all};
use crate::poly::Polynomial;

pub const CATALOG_SCHEMA: &str = "singzeta-catalog/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatchNode {
    pub name: String,
    pub genus: i64,
    pub multiplicity: u32,
    pub self_intersection: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub type_tag: String,
    /// Valid only when `h` does not vanish at the point.
    pub requires_h_nonzero: bool,
    pub weight: [i64; 3],
    pub nodes: Vec<PatchNode>,
    /// For each local branch of `C`, the patch node it meets (once).
    pub branch_attachments: Vec<usize>,
    pub internal_edges: Vec<(usize, usize, u32)>,
    #[serde(default)]
    pub derivation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub schema: String,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: Catalog = serde_json::from_str(text).map_err(|e| Error::Io(format!("catalog: {e}")))?;
        if c.schema != CATALOG_SCHEMA {
            return Err(Error::Io(format!("catalog: unsupported schema `{}`", c.schema)));
        }
        for e in &c.entries {
            let n = e.nodes.len();
            if e.branch_attachments.iter().any(|&i| i >= n) || e.internal_edges.iter().any(|&(a, b, _)| a >= n || b >= n) {
                return Err(Error::Io(format!("catalog: entry {} refers to a missing node", e.type_tag)));
            }
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn get(&self, tag: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.type_tag == tag)
            .ok_or_else(|| Error::Uncatalogued(tag.to_string()))
    }
}

pub fn builtin_catalog() -> Catalog {
    Catalog::from_json(include_str!("../../data/catalog.json")).expect("bundled catalog is valid")
}

/// Recompute the A1 entry from the model `v1^{d+2}(v2 v3 + c v1)`, `c != 0`.
///
/// On the strict transform `v1 = -v2 v3 / c`, so `z2 = u1 u2` restricts to
/// `v2 v3` times a unit and `E(P)` is the node `v2 v3 = 0`. The blow-up with
/// weight `a = (1,1)` separates the branches; its ambient lift is
/// `(m, a)` where `m` is the `a`-order of `v2 v3`.
pub fn derive_a1_entry() -> CatalogEntry {
    let normal_form = Polynomial::from_int_terms(2, &[(&[1, 1], 1)]);
    let a = [1i64, 1];
    let support = normal_form.support();
    let multiplicity = support.iter().map(|p| dot(&a, p)).min().unwrap();
    // branches are the coordinate axes, each the strict transform of one
    // ray e2, e3 adjacent to `a` in a unimodular cone
    let branches: Vec<[i64; 2]> = vec![[1, 0], [0, 1]];
    for b in &branches {
        assert_eq!((a[0] * b[1] - a[1] * b[0]).abs(), 1);
    }
    assert_eq!(gcd_all(&a), 1);
    // Laufer relation on the new curve: m E^2 + Σ_branches 1 = 0
    let self_intersection = -(branches.len() as i64) / multiplicity;
    CatalogEntry {
        type_tag: "A1".into(),
        requires_h_nonzero: true,
        weight: [multiplicity, a[0], a[1]],
        nodes: vec![PatchNode {
            name: "E(A1)".into(),
            genus: 0,
            multiplicity: multiplicity as u32,
            self_intersection,
        }],
        branch_attachments: vec![0; branches.len()],
        internal_edges: Vec::new(),
        derivation: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_a1_matches_derivation() {
        let cat = builtin_catalog();
        let mut stored = cat.get("A1").unwrap().clone();
        stored.derivation.clear();
        assert_eq!(stored, derive_a1_entry());
    }

    #[test]
    fn unknown_tag() {
        assert_eq!(builtin_catalog().get("E8").unwrap_err(), Error::Uncatalogued("E8".into()));
    }

    #[test]
    fn rejects_dangling_reference() {
        let text = r#"{"schema":"singzeta-catalog/1","entries":[{"type_tag":"X","requires_h_nonzero":true,
            "weight":[1,1,1],"nodes":[],"branch_attachments":[0],"internal_edges":[]}]}"#;
        assert!(Catalog::from_json(text).is_err());
    }
}
