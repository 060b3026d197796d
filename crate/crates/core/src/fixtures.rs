// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Built-in finite fixtures. The same groups ship as JSON documents under
//! `crates/core/examples/`.

use std::f64::consts::PI;

use crate::linalg::{block_diag, rotation2, Matrix};
use crate::repr::RepresentationSpec;

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub generators: Vec<Matrix>,
}

impl Fixture {
    pub fn spec(&self) -> RepresentationSpec {
        RepresentationSpec::finite(self.generators.clone())
            .expect("fixture generators are orthogonal")
    }

    pub fn dimension(&self) -> usize {
        self.generators[0].nrows()
    }
}

fn reflection() -> Matrix {
    Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
}

fn id(n: usize) -> Matrix {
    Matrix::identity(n, n)
}

/// Left multiplication by `i` and `j` on the quaternions, basis `1, i, j, k`.
pub fn q8_generators() -> Vec<Matrix> {
    let i = Matrix::from_row_slice(
        4,
        4,
        &[
            0., -1., 0., 0., 1., 0., 0., 0., 0., 0., 0., -1., 0., 0., 1., 0.,
        ],
    );
    let j = Matrix::from_row_slice(
        4,
        4,
        &[
            0., 0., -1., 0., 0., 0., 0., 1., 1., 0., 0., 0., 0., -1., 0., 0.,
        ],
    );
    vec![i, j]
}

pub fn all() -> Vec<Fixture> {
    let r3 = rotation2(2.0 * PI / 3.0);
    let r4 = rotation2(PI / 2.0);
    let r5 = rotation2(2.0 * PI / 5.0);
    let mut out = vec![
        Fixture {
            name: "c3",
            description: "C3 rotating R^2",
            generators: vec![r3.clone()],
        },
        Fixture {
            name: "c4",
            description: "C4 rotating R^2",
            generators: vec![r4.clone()],
        },
        Fixture {
            name: "c5",
            description: "C5 rotating R^2",
            generators: vec![r5.clone()],
        },
        Fixture {
            name: "d4",
            description: "dihedral group of order 8 on R^2",
            generators: vec![r4.clone(), reflection()],
        },
    ];
    for n in 1..=4 {
        out.push(Fixture {
            name: ["pm-r1", "pm-r2", "pm-r3", "pm-r4"][n - 1],
            description: "{±I} on R^n",
            generators: vec![-id(n)],
        });
    }
    let q8 = q8_generators();
    out.extend([
        Fixture {
            name: "q8",
            description: "quaternion group on R^4",
            generators: q8.clone(),
        },
        Fixture {
            name: "c3-plus-d4",
            description: "C3 x D4 on R^2 + R^2",
            generators: vec![
                block_diag(&[r3.clone(), id(2)]),
                block_diag(&[id(2), r4.clone()]),
                block_diag(&[id(2), reflection()]),
            ],
        },
        Fixture {
            name: "c3-fixed-r3",
            description: "C3 on R^2 + R",
            generators: vec![block_diag(&[r3, id(1)])],
        },
        Fixture {
            name: "trivial-r3",
            description: "trivial group on R^3",
            generators: vec![id(3)],
        },
        Fixture {
            name: "c5x2",
            description: "C5 acting diagonally on R^2 + R^2",
            generators: vec![block_diag(&[r5.clone(), r5])],
        },
        Fixture {
            name: "q8x2",
            description: "quaternion group acting diagonally on R^4 + R^4",
            generators: q8
                .iter()
                .map(|g| block_diag(&[g.clone(), g.clone()]))
                .collect(),
        },
    ]);
    out
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

/// JSON document for a fixture, entries as shortest round-trip decimals.
pub fn to_json(fixture: &Fixture) -> String {
    let n = fixture.dimension();
    let gens: Vec<Vec<Vec<String>>> = fixture
        .generators
        .iter()
        .map(|g| {
            (0..n)
                .map(|i| (0..n).map(|j| format!("{:?}", g[(i, j)] + 0.0)).collect())
                .collect()
        })
        .collect();
    let doc = serde_json::json!({
        "dimension": n,
        "kind": "finite",
        "generators": gens,
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::repr::parse_spec;
    use std::path::Path;

    #[test]
    fn shipped_documents_match() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
        for f in all() {
            let text = std::fs::read_to_string(dir.join(format!("{}.json", f.name))).unwrap();
            let spec = parse_spec(&text).unwrap();
            assert_eq!(spec.generators.len(), f.generators.len(), "{}", f.name);
            for (a, b) in spec.generators.iter().zip(&f.generators) {
                assert_eq!(max_abs_diff(a, b), 0.0, "{}", f.name);
            }
        }
    }

    #[test]
    fn names_are_unique() {
        let names: Vec<_> = all().iter().map(|f| f.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }
}
