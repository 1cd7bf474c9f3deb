//! Data files compiled into the library, and the classification rows that tie
//! them together.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DataFile {
    /// Path relative to the crate's `data/` directory.
    pub path: &'static str,
    pub text: &'static str,
}

impl DataFile {
    /// File stem, e.g. `e8` for `graphs/e8.graph`.
    pub fn stem(&self) -> &'static str {
        let base = self.path.rsplit('/').next().unwrap_or(self.path);
        base.split('.').next().unwrap_or(base)
    }
}

macro_rules! data {
    ($($path:literal),* $(,)?) => {
        &[$(DataFile { path: $path, text: include_str!(concat!("../data/", $path)) }),*]
    };
}

pub const GRAPHS: &[DataFile] = data![
    "graphs/d4d4.graph",
    "graphs/d8.graph",
    "graphs/e6a2.graph",
    "graphs/e7a1_c1.graph",
    "graphs/e7a1_c2.graph",
    "graphs/e7a1_ss.graph",
    "graphs/e8.graph",
    "graphs/type_vii.graph",
    "graphs/type_viii.graph",
];

/// Mutated graphs that must fail the Vinberg check.
pub const CONTROLS: &[DataFile] = data![
    "controls/broken_edge_flipped.graph",
    "controls/broken_triple_edge.graph",
    "controls/broken_vertex_deleted.graph",
];

pub const DERIVATIONS: &[DataFile] = data![
    "derivations/d4d4.deriv",
    "derivations/d4d4_tw.deriv",
    "derivations/d8_classical.deriv",
    "derivations/d8_supersingular.deriv",
    "derivations/e6a2_classical.deriv",
    "derivations/e6a2_supersingular.deriv",
    "derivations/e7a1_classical_1.deriv",
    "derivations/e7a1_classical_2.deriv",
    "derivations/e7a1_supersingular.deriv",
    "derivations/e8_classical.deriv",
    "derivations/e8_supersingular.deriv",
    "derivations/type_vii.deriv",
    "derivations/type_viii.deriv",
];

pub const AUTOMORPHISMS: &[DataFile] = data![
    "automorphisms/d4d4.aut",
    "automorphisms/d8_classical.aut",
    "automorphisms/d8_supersingular.aut",
    "automorphisms/e6a2_classical.aut",
    "automorphisms/e6a2_supersingular.aut",
    "automorphisms/e7a1_classical_2iii.aut",
    "automorphisms/e7a1_classical_iii.aut",
    "automorphisms/e7a1_supersingular_generic.aut",
    "automorphisms/e7a1_supersingular_special.aut",
    "automorphisms/e8_classical.aut",
    "automorphisms/e8_supersingular.aut",
];

pub const TABLES: &[DataFile] = data!["tables/conductrix.json"];

pub fn all_files() -> impl Iterator<Item = &'static DataFile> {
    GRAPHS.iter().chain(CONTROLS).chain(DERIVATIONS).chain(AUTOMORPHISMS).chain(TABLES)
}

pub fn find(path: &str) -> Option<&'static DataFile> {
    all_files().find(|f| f.path == path)
}

fn by_stem(files: &'static [DataFile], stem: &str) -> Option<&'static DataFile> {
    files.iter().find(|f| f.stem() == stem)
}

pub fn graph(stem: &str) -> Option<&'static DataFile> {
    by_stem(GRAPHS, stem)
}
pub fn derivation(stem: &str) -> Option<&'static DataFile> {
    by_stem(DERIVATIONS, stem)
}
pub fn automorphism(stem: &str) -> Option<&'static DataFile> {
    by_stem(AUTOMORPHISMS, stem)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cover {
    Supersingular,
    Classical,
}

impl std::fmt::Display for Cover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Cover::Supersingular => "supersingular",
            Cover::Classical => "classical",
        })
    }
}

/// One line of the classification: a dual graph, the claimed Aut(X), and the
/// data files that back it.
#[derive(Clone, Copy, Debug)]
pub struct ClassificationRow {
    pub cover: Cover,
    pub label: &'static str,
    pub graph: &'static str,
    pub aut: &'static str,
    /// Order of the dual-graph symmetry group when Aut(X) is read off from it.
    pub graph_symmetry: Option<u64>,
    pub derivations: &'static [&'static str],
    pub automorphisms: &'static [&'static str],
}

pub const CLASSIFICATION: &[ClassificationRow] = &[
    ClassificationRow {
        cover: Cover::Supersingular,
        label: "~E8",
        graph: "e8",
        aut: "Z/11",
        graph_symmetry: None,
        derivations: &["e8_supersingular"],
        automorphisms: &["e8_supersingular"],
    },
    ClassificationRow {
        cover: Cover::Supersingular,
        label: "~E7+~A1",
        graph: "e7a1_ss",
        aut: "Z/2 or Z/14",
        graph_symmetry: None,
        derivations: &["e7a1_supersingular"],
        automorphisms: &["e7a1_supersingular_generic", "e7a1_supersingular_special"],
    },
    ClassificationRow {
        cover: Cover::Supersingular,
        label: "~E6+~A2",
        graph: "e6a2",
        aut: "Z/5xS3",
        graph_symmetry: None,
        derivations: &["e6a2_supersingular"],
        automorphisms: &["e6a2_supersingular"],
    },
    ClassificationRow {
        cover: Cover::Supersingular,
        label: "~D8",
        graph: "d8",
        aut: "Q8",
        graph_symmetry: None,
        derivations: &["d8_supersingular"],
        automorphisms: &["d8_supersingular"],
    },
    ClassificationRow {
        cover: Cover::Supersingular,
        label: "VII",
        graph: "type_vii",
        aut: "S5",
        graph_symmetry: Some(120),
        derivations: &[],
        automorphisms: &[],
    },
    ClassificationRow {
        cover: Cover::Classical,
        label: "~E8",
        graph: "e8",
        aut: "1",
        graph_symmetry: None,
        derivations: &["e8_classical"],
        automorphisms: &["e8_classical"],
    },
    ClassificationRow {
        cover: Cover::Classical,
        label: "~E7+~A1 (2III*, III)",
        graph: "e7a1_c1",
        aut: "Z/2",
        graph_symmetry: None,
        derivations: &["e7a1_classical_1"],
        automorphisms: &["e7a1_classical_iii"],
    },
    ClassificationRow {
        cover: Cover::Classical,
        label: "~E7+~A1 (2III*, 2III)",
        graph: "e7a1_c2",
        aut: "Z/2",
        graph_symmetry: None,
        derivations: &["e7a1_classical_2"],
        automorphisms: &["e7a1_classical_2iii"],
    },
    ClassificationRow {
        cover: Cover::Classical,
        label: "~E6+~A2",
        graph: "e6a2",
        aut: "S3",
        graph_symmetry: None,
        derivations: &["e6a2_classical"],
        automorphisms: &["e6a2_classical"],
    },
    ClassificationRow {
        cover: Cover::Classical,
        label: "~D8",
        graph: "d8",
        aut: "Z/2",
        graph_symmetry: None,
        derivations: &["d8_classical"],
        automorphisms: &["d8_classical"],
    },
    ClassificationRow {
        cover: Cover::Classical,
        label: "~D4+~D4",
        graph: "d4d4",
        aut: "(Z/2)^3",
        graph_symmetry: None,
        derivations: &["d4d4", "d4d4_tw"],
        automorphisms: &["d4d4"],
    },
    ClassificationRow {
        cover: Cover::Classical,
        label: "VII",
        graph: "type_vii",
        aut: "S5",
        graph_symmetry: Some(120),
        derivations: &["type_vii"],
        automorphisms: &[],
    },
    ClassificationRow {
        cover: Cover::Classical,
        label: "VIII",
        graph: "type_viii",
        aut: "S4",
        graph_symmetry: Some(24),
        derivations: &["type_viii"],
        automorphisms: &[],
    },
];

/// What a shipped graph is expected to produce. Census entries are census
/// keys with an exact count, or `None` where only the type must occur; with
/// `exact_types` the key set must match exactly.
#[derive(Clone, Copy, Debug)]
pub struct GraphExpectation {
    pub graph: &'static str,
    pub census: &'static [(&'static str, Option<usize>)],
    pub exact_types: bool,
    pub symmetry_order: u64,
}

pub const GRAPH_EXPECTATIONS: &[GraphExpectation] = &[
    GraphExpectation { graph: "e8", census: &[("~E8", Some(1))], exact_types: true, symmetry_order: 1 },
    GraphExpectation {
        graph: "e7a1_ss",
        census: &[("~E7+~A1", None), ("~E8", None)],
        exact_types: false,
        symmetry_order: 2,
    },
    GraphExpectation {
        graph: "e7a1_c1",
        census: &[("~E7+~A1", None), ("~E8", None)],
        exact_types: false,
        symmetry_order: 2,
    },
    GraphExpectation {
        graph: "e7a1_c2",
        census: &[("~E7+~A1", None), ("~E8", None)],
        exact_types: false,
        symmetry_order: 1,
    },
    GraphExpectation {
        graph: "e6a2",
        census: &[("~E6+~A2", Some(1)), ("~E7+~A1", Some(3))],
        exact_types: true,
        symmetry_order: 6,
    },
    GraphExpectation { graph: "d8", census: &[("~D8", Some(1)), ("~E8", Some(2))], exact_types: true, symmetry_order: 2 },
    GraphExpectation {
        graph: "d4d4",
        census: &[("~D4+~D4", None), ("~D8", None)],
        exact_types: true,
        symmetry_order: 72,
    },
    GraphExpectation {
        graph: "type_viii",
        census: &[("~D5+~A3", Some(3)), ("~D6+~A1+~A1", Some(3)), ("~E6+~A2", Some(8))],
        exact_types: true,
        symmetry_order: 24,
    },
    GraphExpectation {
        graph: "type_vii",
        census: &[("~A8", None), ("~A7+~A1", None), ("~A4+~A4", None), ("~A5+~A2+~A1", None)],
        exact_types: true,
        symmetry_order: 120,
    },
];

impl GraphExpectation {
    /// Compare against a census given as (key, count) pairs; returns the
    /// mismatches.
    pub fn census_mismatches(&self, actual: &[(String, usize)]) -> Vec<String> {
        let mut out = Vec::new();
        for (key, count) in self.census {
            match (actual.iter().find(|(k, _)| k == key), count) {
                (None, _) => out.push(format!("{key} missing")),
                (Some((_, got)), Some(want)) if got != want => out.push(format!("{key}: {got} (expected {want})")),
                _ => {}
            }
        }
        if self.exact_types {
            for (k, _) in actual {
                if !self.census.iter().any(|(key, _)| key == k) {
                    out.push(format!("unexpected {k}"));
                }
            }
        }
        out
    }
}

pub fn expectation(graph: &str) -> Option<&'static GraphExpectation> {
    GRAPH_EXPECTATIONS.iter().find(|e| e.graph == graph)
}

/// Corpus files no classification row refers to (tables and controls are
/// exempt).
pub fn unreferenced() -> Vec<&'static str> {
    let mut out = Vec::new();
    for f in GRAPHS {
        if !CLASSIFICATION.iter().any(|r| r.graph == f.stem()) {
            out.push(f.path);
        }
    }
    for f in DERIVATIONS {
        if !CLASSIFICATION.iter().any(|r| r.derivations.contains(&f.stem())) {
            out.push(f.path);
        }
    }
    for f in AUTOMORPHISMS {
        if !CLASSIFICATION.iter().any(|r| r.automorphisms.contains(&f.stem())) {
            out.push(f.path);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_point_at_shipped_files() {
        for r in CLASSIFICATION {
            assert!(graph(r.graph).is_some(), "{}", r.graph);
            for d in r.derivations {
                assert!(derivation(d).is_some(), "{d}");
            }
            for a in r.automorphisms {
                assert!(automorphism(a).is_some(), "{a}");
            }
        }
        assert!(unreferenced().is_empty(), "{:?}", unreferenced());
        for f in GRAPHS {
            assert!(expectation(f.stem()).is_some(), "{}", f.path);
        }
    }
}
