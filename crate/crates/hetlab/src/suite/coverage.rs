use std::collections::BTreeSet;

use super::builtin_catalog;

/// Every labelled equation of the source, in order of appearance.
pub const ALL_LABELS: &[&str] = &[
    "GG1", "GG2", "GG3", "GG4", "GG5", "GG6", "GG7", "GG8", "GG9", "GG10", "GG11", "GG12", "GG13",
    "GG14", "GG15", "HH1", "HH2", "HH3", "HH4", "HH5", "HH6", "HH7", "HH8", "HH9", "HH10", "HH11",
    "HH12", "HH13", "HH14", "HH15", "HH16", "HH17", "HH18", "HH19", "HH20", "HH21", "II1", "II2",
    "II3", "II4", "II5", "II6", "II7", "II8", "II9", "II10", "II11", "II12", "II13", "II14", "II15",
    "II16", "II17", "L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9", "L10", "L11", "L12",
    "L13", "L14", "L15", "L16", "L17", "L18", "L19", "L20", "L21", "L22", "L23", "L24", "L25",
    "L26", "L27", "L28", "L29", "L30", "L31", "L32", "L33", "L34", "N1", "N2", "N3", "N4", "N5",
    "H6", "N7", "N8", "N9", "N10", "N11", "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "M9",
    "M10", "M11", "M12", "M13", "M14", "M15", "M16", "M17", "M18", "M19", "M20", "M21", "M22",
    "M23", "M24", "M25", "M26", "M27", "M28", "M29", "M30", "M31", "M32", "M33", "M34", "M35",
    "Z1", "Z2", "Z3", "Z4", "ZR1", "ZR2", "Z5", "Z6", "Z7", "Z71", "Z8", "Z9", "Z10", "Z11", "Z12",
    "Z13", "Z14", "Z15", "Z16", "Z0", "Z17", "Z18", "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8",
    "C9", "C10", "C11", "C12", "C13", "C14", "C15", "C16", "C17", "C18", "C19", "C20", "C21", "C22",
    "C23", "C24", "C25",
];

/// Continuous-basis unitary equivalence and the product density operator.
pub const OUT_OF_SCOPE: [&str; 3] = ["GG9", "GG10", "HH18"];

/// Library operations and the labels they realize directly.
const OPERATION_REFS: &[(&str, &[&str])] = &[
    ("heterodyne::build_psi", &["GG1", "II1", "II2", "II12", "II13"]),
    ("heterodyne::rotated_modes", &["II6", "II10", "II11", "II14"]),
    ("heterodyne::HeterodyneParams::caves_frequency", &["GG14", "II15", "II16"]),
    ("rns::rns_map", &["GG2", "GG3"]),
    ("rns::rns_phase_operator", &["GG5"]),
    ("rns::amplitude_operator", &["GG11"]),
    ("rns::theta_operator", &["GG12"]),
    ("classical::integrate_oscillator", &["HH2"]),
    ("classical::emp_amplitude", &["HH3", "HH4", "HH5"]),
    ("classical::classical_phase", &["HH1", "HH6", "HH7", "M1", "M2"]),
    (
        "classical::coherent_expectations",
        &["HH9", "HH10", "HH11", "HH12", "HH15", "HH16", "HH17"],
    ),
    ("caves::k_expansion", &["C13"]),
];

pub fn operation_refs() -> &'static [(&'static str, &'static [&'static str])] {
    OPERATION_REFS
}

pub fn in_scope_labels() -> BTreeSet<&'static str> {
    ALL_LABELS
        .iter()
        .copied()
        .filter(|l| !OUT_OF_SCOPE.contains(l))
        .collect()
}

/// Labels referenced by the catalog or by an operation.
pub fn referenced_labels() -> BTreeSet<&'static str> {
    let mut out: BTreeSet<&'static str> = builtin_catalog()
        .iter()
        .flat_map(|c| c.covers.iter().copied())
        .collect();
    out.extend(OPERATION_REFS.iter().flat_map(|(_, labels)| labels.iter().copied()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn every_in_scope_label_is_referenced_and_nothing_else() {
        let scope = in_scope_labels();
        let referenced = referenced_labels();
        let missing: Vec<_> = scope.difference(&referenced).collect();
        let extra: Vec<_> = referenced.difference(&scope).collect();
        assert!(missing.is_empty(), "unreferenced: {missing:?}");
        assert!(extra.is_empty(), "not in scope: {extra:?}");
    }

    #[test]
    fn catalog_cases_cover_disjoint_labels() {
        let mut seen = HashSet::new();
        for case in builtin_catalog() {
            for label in case.covers {
                assert!(seen.insert(*label), "{label} covered twice (again by {})", case.id);
            }
        }
    }

    #[test]
    fn label_list_has_no_duplicates() {
        let set: HashSet<_> = ALL_LABELS.iter().collect();
        assert_eq!(set.len(), ALL_LABELS.len());
        assert_eq!(ALL_LABELS.len(), 180);
    }
}
