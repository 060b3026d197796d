// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use orbit_isom::catalog::{self, CatalogAction};
use orbit_isom::fixtures;
use orbit_isom::linalg::{self, Matrix};
use orbit_isom::quotient::{
    self, analyze, AnalyzeOptions, IrreducibleClass, FORMULA_NO_BOUNDARY, FORMULA_SEARCH,
};
use orbit_isom::repr::parse_spec;
use orbit_isom::{RepresentationSpec, SchurType};

fn fixture(name: &str) -> quotient::Analysis {
    analyze(
        &fixtures::by_name(name).unwrap().spec(),
        AnalyzeOptions::default(),
    )
    .unwrap()
}

fn catalog(id: &str) -> quotient::Analysis {
    let a = CatalogAction::by_id(id).unwrap();
    analyze(
        &RepresentationSpec::catalog(id, a.dimension),
        AnalyzeOptions::default(),
    )
    .unwrap()
}

/// Fixture, factors, quotient types, rank, boundary, kernel order, circle
/// directions; worked out by hand.
type Row = (
    &'static str,
    &'static [&'static str],
    &'static [&'static str],
    usize,
    bool,
    usize,
    usize,
);

#[test]
fn fixture_table() {
    let table: &[Row] = &[
        ("c3", &["U(1)"], &["U(1)"], 1, false, 3, 0),
        ("c4", &["U(1)"], &["U(1)"], 1, false, 4, 0),
        ("c5", &["U(1)"], &["U(1)"], 1, false, 5, 0),
        ("d4", &["SO(1)"], &["1"], 0, true, 1, 0),
        ("pm-r1", &["SO(1)"], &["1"], 0, true, 1, 0),
        ("pm-r2", &["SO(2)"], &["SO(2)"], 1, false, 2, 0),
        ("pm-r3", &["SO(3)"], &["SO(3)"], 1, false, 1, 0),
        ("pm-r4", &["SO(4)"], &["SO(4)/{±I}"], 2, false, 2, 0),
        ("q8", &["Sp(1)"], &["SO(3)"], 1, false, 2, 0),
        (
            "c3-plus-d4",
            &["U(1)", "SO(1)"],
            &["U(1)", "1"],
            1,
            true,
            3,
            0,
        ),
        ("c3-fixed-r3", &["U(1)"], &["U(1)"], 1, false, 3, 0),
        ("trivial-r3", &[], &[], 0, false, 1, 0),
        ("c5x2", &["U(2)"], &["U(2)/Z_5"], 2, false, 5, 0),
        ("q8x2", &["Sp(2)"], &["Sp(2)/{±I}"], 2, false, 2, 0),
    ];
    for &(name, factors, quotients, rank, boundary, order, circles) in table {
        let a = fixture(name);
        let got: Vec<String> = a.equivariant.factors.iter().map(|f| f.name()).collect();
        assert_eq!(got, factors, "{name}");
        let q: Vec<&str> = a
            .report
            .compact_factors
            .iter()
            .map(|f| f.quotient.as_str())
            .collect();
        assert_eq!(q, quotients, "{name}");
        assert_eq!(a.report.rank, rank, "{name}");
        assert_eq!(a.report.boundary, boundary, "{name}");
        assert_eq!(a.report.kernel.finite_order, order, "{name}");
        assert_eq!(a.report.kernel.circle_directions, circles, "{name}");
        let formula = if boundary {
            FORMULA_SEARCH
        } else {
            FORMULA_NO_BOUNDARY
        };
        assert_eq!(a.report.formula_applied, formula, "{name}");
        assert_eq!(a.report.theorem_b, "pass", "{name}");
    }
}

#[test]
fn euclidean_factor() {
    let r = fixture("trivial-r3").report;
    assert_eq!((r.euclidean_factor_dim, r.notes.quotient_dim), (3, 6));
    let r = fixture("c3-fixed-r3").report;
    // Isom(R)_0 x U(1)/Z_3
    assert_eq!((r.euclidean_factor_dim, r.notes.quotient_dim), (1, 2));
}

#[test]
fn hopf_pipeline() {
    let a = catalog(catalog::HOPF);
    assert_eq!(a.equivariant.factors.len(), 1);
    assert_eq!(a.equivariant.factors[0].schur_type, SchurType::Complex);
    assert_eq!(a.equivariant.factors[0].multiplicity, 2);
    assert_eq!(a.equivariant.total_dim, 4);
    let r = &a.report;
    assert!(!r.boundary);
    assert_eq!(r.compact_factors[0].name, "U(2)/U(1) ≅ SO(3)");
    assert_eq!(
        (r.rank, r.kernel.circle_directions, r.kernel.finite_order),
        (1, 1, 1)
    );
    assert!(r.kernel.contains_center_of_g);
    assert_eq!(r.notes.quotient_dim, 3);
    assert_eq!(r.theorem_b, "pass");
}

#[test]
fn continuous_examples_with_boundary() {
    for id in [catalog::PRODUCT, catalog::TENSOR] {
        let r = catalog(id).report;
        assert!(r.boundary, "{id}");
        assert_eq!(r.formula_applied, FORMULA_SEARCH);
        assert_eq!((r.rank, r.notes.quotient_dim), (0, 0), "{id}");
        assert!(r.notes.caveats.iter().any(|c| c.contains("boundary")));
    }
}

#[test]
fn irreducible_classes() {
    let cases = [
        ("d4", IrreducibleClass::FiniteGroup, "1"),
        ("c5", IrreducibleClass::TrivialOrU1, "U(1)"),
        ("q8", IrreducibleClass::TrivialOrSp1OrSo3, "SO(3)"),
        ("pm-r4", IrreducibleClass::NotIrreducible, ""),
    ];
    for (name, class, computed) in cases {
        let v = quotient::classify_irreducible(&fixture(name).report);
        assert_eq!((v.class, v.computed.as_str()), (class, computed), "{name}");
    }
    let hopf = quotient::classify_irreducible(&catalog(catalog::HOPF).report);
    assert_eq!(hopf.class, IrreducibleClass::NotIrreducible);
}

#[test]
fn reports_do_not_depend_on_seed() {
    for f in fixtures::all() {
        let mut a = analyze(&f.spec().with_seed(1), AnalyzeOptions::default())
            .unwrap()
            .report;
        let b = analyze(&f.spec().with_seed(2), AnalyzeOptions::default())
            .unwrap()
            .report;
        a.seed = b.seed;
        assert_eq!(a, b, "{}", f.name);
    }
}

#[test]
fn conjugated_representation_gives_same_report() {
    // Q = random orthogonal matrix; Q G Q^T is equivalent
    let mut rng = linalg::rng(99, 0);
    let g = linalg::gaussian_vector(&mut rng, 16);
    let q = Matrix::from_column_slice(4, 4, g.as_slice()).qr().q();
    let gens: Vec<Matrix> = fixtures::q8_generators()
        .iter()
        .map(|x| &q * x * q.transpose())
        .collect();
    let r = analyze(
        &RepresentationSpec::finite(gens).unwrap(),
        AnalyzeOptions::default(),
    )
    .unwrap()
    .report;
    assert_eq!(r.compact_factors[0].quotient, "SO(3)");
    assert_eq!(r.kernel.finite_order, 2);
}

#[test]
fn shipped_catalog_documents() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    for id in [catalog::HOPF, catalog::PRODUCT, catalog::TENSOR] {
        let text = std::fs::read_to_string(dir.join(format!("{id}.json"))).unwrap();
        let spec = parse_spec(&text).unwrap();
        assert_eq!(spec.dimension, CatalogAction::by_id(id).unwrap().dimension);
    }
}

#[test]
fn infinite_group_is_rejected() {
    let spec = RepresentationSpec::finite(vec![linalg::rotation2(1.0)]).unwrap();
    let err = analyze(&spec, AnalyzeOptions::default()).unwrap_err();
    assert!(err.to_string().contains("cap"), "{err}");
    assert!(!err.is_ambiguity());
}

#[test]
fn wrong_catalog_dimension() {
    let spec = RepresentationSpec::catalog(catalog::HOPF, 5);
    assert!(analyze(&spec, AnalyzeOptions::default()).is_err());
}
