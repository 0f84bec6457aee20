use std::sync::OnceLock;

use serde::Deserialize;

use super::Status;

/// One registered claim: id, anchors, a short quote and the expected status.
#[derive(Clone, Debug, Deserialize)]
pub struct ClaimSpec {
    pub id: String,
    pub anchors: Vec<String>,
    pub quote: String,
    pub expected: Status,
}

const CLAIMS: &str = include_str!("../../fixtures/claims.json");
const IN_SCOPE: &str = include_str!("../../fixtures/in_scope.json");

pub fn claim_specs() -> &'static [ClaimSpec] {
    static SPECS: OnceLock<Vec<ClaimSpec>> = OnceLock::new();
    SPECS.get_or_init(|| serde_json::from_str(CLAIMS).expect("claims fixture is valid"))
}

pub fn in_scope_anchors() -> Vec<String> {
    serde_json::from_str(IN_SCOPE).expect("in-scope fixture is valid")
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    #[test]
    fn registry_has_unique_ids_with_checks() {
        let specs = claim_specs();
        assert_eq!(specs.len(), 23);
        let ids: BTreeSet<&str> = specs.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids.len(), specs.len());
        for id in ids {
            assert!(super::super::checks::has_check(id), "{id} has no check");
        }
    }

    #[test]
    fn every_in_scope_anchor_has_exactly_one_claim() {
        for anchor in in_scope_anchors() {
            let owners: Vec<&str> =
                claim_specs().iter().filter(|c| c.anchors.contains(&anchor)).map(|c| c.id.as_str()).collect();
            assert_eq!(owners.len(), 1, "{anchor} is claimed by {owners:?}");
        }
    }

    #[test]
    fn anchors_are_not_shared() {
        let mut seen = BTreeSet::new();
        for c in claim_specs() {
            for a in &c.anchors {
                assert!(seen.insert(a.clone()), "{a} appears twice");
            }
        }
    }
}
