//! Scenarios shipped with the binary.

use crate::scenario::{Scenario, ScenarioFile};

const FILES: [(&str, &str); 7] = [
    (
        "dependence.json",
        include_str!("../scenarios/dependence.json"),
    ),
    ("equality.json", include_str!("../scenarios/equality.json")),
    (
        "conditions.json",
        include_str!("../scenarios/conditions.json"),
    ),
    (
        "counterexamples.json",
        include_str!("../scenarios/counterexamples.json"),
    ),
    (
        "continuum.json",
        include_str!("../scenarios/continuum.json"),
    ),
    (
        "integrals.json",
        include_str!("../scenarios/integrals.json"),
    ),
    (
        "properties.json",
        include_str!("../scenarios/properties.json"),
    ),
];

/// Every bundled scenario, in file order.
pub fn all() -> Vec<Scenario> {
    FILES
        .iter()
        .flat_map(|(origin, text)| {
            ScenarioFile::parse(origin, text)
                .unwrap_or_else(|e| panic!("bundled scenario file is malformed: {e}"))
                .scenarios
        })
        .collect()
}

pub fn find(name: &str) -> Option<Scenario> {
    all().into_iter().find(|s| s.name == name)
}

pub fn names() -> Vec<String> {
    all().into_iter().map(|s| s.name).collect()
}
