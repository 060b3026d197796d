// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use nalgebra::Matrix3;
use proptest::prelude::*;

use orbit_isom::catalog::{self, CatalogAction};
use orbit_isom::commutant::{self, sample_equivariant_isometry};
use orbit_isom::fixtures;
use orbit_isom::lift::{self, HopfFrame};
use orbit_isom::linalg::{self, Matrix, Vector};
use orbit_isom::quotient::{analyze, AnalyzeOptions};
use orbit_isom::repr::{enumerate_group, fixed_subspace};
use orbit_isom::{GroupContext, RepresentationSpec};

fn orthogonal(seed: u64, n: usize) -> Matrix {
    let mut rng = linalg::rng(seed, 0x0a);
    let g = linalg::gaussian_vector(&mut rng, n * n);
    Matrix::from_column_slice(n, n, g.as_slice()).qr().q()
}

fn rotation3(seed: u64) -> Matrix3<f64> {
    catalog::random_rotation3(&mut linalg::rng(seed, 0x3))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(24))]

    /// C_m conjugated into R^n has order m and the commutant of
    /// `U(1) x O(n-2)`-type: dim 2 + (n-2)^2 for m >= 3.
    #[test]
    fn cyclic_groups(m in 3usize..13, extra in 0usize..3, seed in any::<u64>()) {
        let n = 2 + extra;
        let q = orthogonal(seed, n);
        let r = linalg::rotation2(2.0 * PI / m as f64);
        let g = if extra == 0 { r } else { linalg::block_diag(&[r, Matrix::identity(extra, extra)]) };
        let spec = RepresentationSpec::finite(vec![&q * g * q.transpose()]).unwrap();
        prop_assert_eq!(enumerate_group(&spec).unwrap().order, m);
        let split = fixed_subspace(&spec).unwrap();
        prop_assert_eq!(split.fixed_dim(), extra);
        let c = commutant::commutant_basis(&split, Default::default()).unwrap();
        prop_assert_eq!(c.len(), 2);
    }

    /// Isotypic projectors are orthogonal idempotents summing to I and
    /// commuting with G; the commutant identity holds.
    #[test]
    fn isotypic_projectors(index in 0usize..14, seed in any::<u64>()) {
        let f = &fixtures::all()[index];
        let a = analyze(&f.spec().with_seed(seed), AnalyzeOptions::default()).unwrap();
        let n = a.split.complement_dim();
        let mut total = Matrix::zeros(n, n);
        for c in &a.components {
            let p = c.projector();
            prop_assert!(linalg::max_abs_diff(&(&p * &p), &p) <= 1e-9);
            for g in &a.split.restricted_generators {
                prop_assert!(linalg::commutator_residual(&p, g) <= 1e-9);
            }
            total += p;
        }
        prop_assert!(linalg::max_abs_diff(&total, &Matrix::identity(n, n)) <= 1e-9);
        prop_assert_eq!(commutant::predicted_commutant_dim(&a.components), a.commutant.len());
    }

    /// Quotient distance: symmetric, G-invariant, bounded by |a - b|,
    /// triangle inequality.
    #[test]
    fn quotient_metric_axioms(index in 0usize..14, seed in any::<u64>()) {
        let f = &fixtures::all()[index];
        let ctx = GroupContext::finite("p", &f.spec()).unwrap();
        let group = ctx.finite_group().unwrap().clone();
        let mut rng = linalg::rng(seed, 1);
        let n = f.dimension();
        let (a, b, c) = (
            linalg::gaussian_vector(&mut rng, n),
            linalg::gaussian_vector(&mut rng, n),
            linalg::gaussian_vector(&mut rng, n),
        );
        let d = |x: &Vector, y: &Vector| ctx.distance(x, y);
        prop_assert!((d(&a, &b) - d(&b, &a)).abs() <= 1e-12);
        prop_assert!(d(&a, &b) <= (&a - &b).norm() + 1e-12);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
        for g in &group.elements {
            prop_assert!((d(&(g * &a), &b) - d(&a, &b)).abs() <= 1e-12);
        }
    }

    /// Equivariant isometries descend.
    #[test]
    fn descend(index in 0usize..14, t in 0.0f64..3.0, seed in any::<u64>()) {
        let f = &fixtures::all()[index];
        let a = analyze(&f.spec(), AnalyzeOptions::default()).unwrap();
        let x = a.split.embed(&sample_equivariant_isometry(&a.equivariant, t, seed));
        prop_assert!(linalg::orthogonality_residual(&x) <= 1e-10);
        prop_assert!(lift::descend_check(&x, &a.context, 20, seed).unwrap() <= 1e-8);
    }

    /// Skew-symmetric exponentials are rotations.
    #[test]
    fn expm_of_skew(n in 1usize..7, scale in 0.0f64..20.0, seed in any::<u64>()) {
        let mut rng = linalg::rng(seed, 2);
        let g = linalg::gaussian_vector(&mut rng, n * n);
        let a = linalg::skew_part(&Matrix::from_column_slice(n, n, g.as_slice())) * scale;
        let e = linalg::expm(&a);
        prop_assert!(linalg::orthogonality_residual(&e) <= 1e-10);
        prop_assert!((e.determinant() - 1.0).abs() <= 1e-9);
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn hopf_map_invariants(theta in -10.0f64..10.0, seed in any::<u64>()) {
        let x = linalg::gaussian_vector(&mut linalg::rng(seed, 4), 4);
        let h = HopfFrame::map(&x);
        prop_assert!((HopfFrame::map(&(HopfFrame::action(theta) * &x)) - h).norm() <= 1e-12);
        prop_assert!((h.norm() - x.norm_squared() / 2.0).abs() <= 1e-12);
    }

    #[test]
    fn lifts_form_a_double_cover(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (r1, r2) = (rotation3(s1), rotation3(s2));
        let w = lift::lift_rotation(&r1).unwrap();
        prop_assert!(w.residual <= 1e-8 && w.u1_residual <= 1e-9);
        let l12 = lift::lift_rotation(&(r1 * r2)).unwrap().lift;
        let prod = w.lift * lift::lift_rotation(&r2).unwrap().lift;
        let err = linalg::max_abs_diff(&l12, &prod).min(linalg::max_abs_diff(&l12, &-prod));
        prop_assert!(err <= 1e-8);
    }

    /// Refined catalog distances never exceed the grid value, and the grid
    /// overestimate stays within its bound.
    #[test]
    fn catalog_distance_refinement(which in 0usize..3, seed in any::<u64>()) {
        let id = [catalog::HOPF, catalog::PRODUCT, catalog::TENSOR][which];
        let action = CatalogAction::by_id(id).unwrap().with_density(256);
        let mut rng = linalg::rng(seed, 5);
        let a = linalg::random_unit_vector(&mut rng, action.dimension);
        let b = linalg::random_unit_vector(&mut rng, action.dimension);
        let fine = action.orbit_distance(&a, &b, true);
        let grid = action.orbit_distance(&a, &b, false);
        prop_assert!(fine <= grid + 1e-15);
        prop_assert!(grid - fine <= action.grid_error_bound(1.0) + 1e-12);
        let g = action.sample_elements(1, seed).pop().unwrap();
        prop_assert!((action.orbit_distance(&a, &(&g * &b), true) - fine).abs() <= 1e-9);
    }
}
