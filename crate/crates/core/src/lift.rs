// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Lifting quotient isometries: the explicit `SU(2) -> SO(3)` section on the
//! Hopf quotient, descend checks for equivariant isometries, and normalizer
//! tests for finite groups.
//!
//! Coordinates on `R^4 = C^2`: `z = x0 + i x1`, `w = x2 + i x3`, matching the
//! `hopf-u1-r4` catalog action `e^{i theta}(z, w)`.

use std::fmt;

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::catalog::{self, CatalogAction};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::orbit::{self, GroupContext};
use crate::repr::FiniteGroupData;

/// Points of `SV` used to measure a lift.
pub const LIFT_TEST_POINTS: usize = 100;
const LIFT_SEED: u64 = 0x11f7;

/// The Hopf quotient `SV/U(1) = S^2(1/2)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HopfFrame;

impl HopfFrame {
    /// `h(z, w) = (Re z conj(w), Im z conj(w), (|z|^2 - |w|^2) / 2)`.
    pub fn map(x: &Vector) -> Vector3<f64> {
        let (a, b, c, d) = (x[0], x[1], x[2], x[3]);
        // z conj(w) = (a + ib)(c - id)
        Vector3::new(
            a * c + b * d,
            b * c - a * d,
            (a * a + b * b - c * c - d * d) / 2.0,
        )
    }

    /// `e^{i theta}` acting on `C^2`.
    pub fn action(theta: f64) -> Matrix {
        let r = linalg::rotation2(theta);
        linalg::block_diag(&[r.clone(), r])
    }

    /// Generator of the circle action.
    pub fn complex_structure() -> Matrix {
        Matrix::from_row_slice(
            4,
            4,
            &[
                0., -1., 0., 0., 1., 0., 0., 0., 0., 0., 0., -1., 0., 0., 1., 0.,
            ],
        )
    }
}

#[derive(Debug, Clone)]
pub struct LiftWitness {
    pub quotient_isometry: Matrix3<f64>,
    /// Element of `SU(2)` realized on `R^4`.
    pub lift: Matrix,
    /// `max |h(lift x) - R h(x)|` over the test points.
    pub residual: f64,
    /// `max |lift J - J lift|`.
    pub u1_residual: f64,
}

/// Unit quaternion `(w, x, y, z)` of a rotation, from the largest pivot.
pub fn rotation_to_quaternion(r: &Matrix3<f64>) -> [f64; 4] {
    let t = r.trace();
    let pivots = [t, r[(0, 0)], r[(1, 1)], r[(2, 2)]];
    let k = (0..4)
        .max_by(|&i, &j| pivots[i].total_cmp(&pivots[j]))
        .expect("four pivots");
    let q = match k {
        0 => {
            let s = 2.0 * (1.0 + t).sqrt();
            [
                s / 4.0,
                (r[(2, 1)] - r[(1, 2)]) / s,
                (r[(0, 2)] - r[(2, 0)]) / s,
                (r[(1, 0)] - r[(0, 1)]) / s,
            ]
        }
        1 => {
            let s = 2.0 * (1.0 + r[(0, 0)] - r[(1, 1)] - r[(2, 2)]).sqrt();
            [
                (r[(2, 1)] - r[(1, 2)]) / s,
                s / 4.0,
                (r[(0, 1)] + r[(1, 0)]) / s,
                (r[(0, 2)] + r[(2, 0)]) / s,
            ]
        }
        2 => {
            let s = 2.0 * (1.0 - r[(0, 0)] + r[(1, 1)] - r[(2, 2)]).sqrt();
            [
                (r[(0, 2)] - r[(2, 0)]) / s,
                (r[(0, 1)] + r[(1, 0)]) / s,
                s / 4.0,
                (r[(1, 2)] + r[(2, 1)]) / s,
            ]
        }
        _ => {
            let s = 2.0 * (1.0 - r[(0, 0)] - r[(1, 1)] + r[(2, 2)]).sqrt();
            [
                (r[(1, 0)] - r[(0, 1)]) / s,
                (r[(0, 2)] + r[(2, 0)]) / s,
                (r[(1, 2)] + r[(2, 1)]) / s,
                s / 4.0,
            ]
        }
    };
    let norm = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    q.map(|c| c / norm)
}

/// `U = w - i (x s_x + y s_y + z s_z)` as a real `4 x 4` matrix. It satisfies
/// `<s>(U psi) = R(q) <s>(psi)` for the Pauli expectation vector `<s>`.
fn su2_real(q: [f64; 4]) -> Matrix {
    let [w, x, y, z] = q;
    // complex entries (re, im), row-major
    let u = [[(w, -z), (-y, -x)], [(y, -x), (w, z)]];
    let mut m = Matrix::zeros(4, 4);
    for (i, row) in u.iter().enumerate() {
        for (j, &(re, im)) in row.iter().enumerate() {
            m[(2 * i, 2 * j)] = re;
            m[(2 * i, 2 * j + 1)] = -im;
            m[(2 * i + 1, 2 * j)] = im;
            m[(2 * i + 1, 2 * j + 1)] = re;
        }
    }
    m
}

/// Lift a rotation of `S^2(1/2)` to a `U(1)`-equivariant isometry of `R^4`.
///
/// `h = D <s> / 2` with `D = diag(1, -1, 1)`, so the lift of `R` is the
/// `SU(2)` element covering `D R D`. Either preimage is returned.
pub fn lift_rotation(r: &Matrix3<f64>) -> Result<LiftWitness> {
    let orth = (r.transpose() * r - Matrix3::identity()).abs().max();
    if orth > 1e-9 {
        return Err(Error::NotRotation(format!(
            "not orthogonal, residual {orth:.3e}"
        )));
    }
    let det = r.determinant();
    if (det - 1.0).abs() > 1e-9 {
        return Err(Error::NotRotation(format!("det = {det:.6}")));
    }
    let d = Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, 1.0));
    let lift = su2_real(rotation_to_quaternion(&(d * r * d)));

    let mut rng = linalg::rng(LIFT_SEED, 0);
    let mut residual: f64 = 0.0;
    for _ in 0..LIFT_TEST_POINTS {
        let x = linalg::random_unit_vector(&mut rng, 4);
        let lhs = HopfFrame::map(&(&lift * &x));
        let rhs = r * HopfFrame::map(&x);
        residual = residual.max((lhs - rhs).norm());
    }
    let u1_residual = linalg::commutator_residual(&lift, &HopfFrame::complex_structure());
    Ok(LiftWitness {
        quotient_isometry: *r,
        lift,
        residual,
        u1_residual,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HopfMetricReport {
    pub pairs: usize,
    pub density: usize,
    /// Circle-grid minimum only.
    pub max_residual_grid: f64,
    /// Grid plus golden-section refinement.
    pub max_residual_refined: f64,
    /// Bound on the grid chord error for unit vectors.
    pub grid_bound: f64,
}

fn angle(u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
    u.cross(v).norm().atan2(u.dot(v))
}

/// Compare the intrinsic distance of `SV/U(1)` with great-circle distance on
/// the sphere of radius 1/2 through `h`.
pub fn verify_hopf_metric(sample_count: usize, seed: u64, density: usize) -> HopfMetricReport {
    let action = CatalogAction::by_id(catalog::HOPF)
        .expect("hopf in catalog")
        .with_density(density);
    let mut rng = linalg::rng(seed, 0x4097);
    let (mut grid, mut refined) = (0.0f64, 0.0f64);
    for _ in 0..sample_count {
        let a = linalg::random_unit_vector(&mut rng, 4);
        let b = linalg::random_unit_vector(&mut rng, 4);
        let expected = 0.5 * angle(&HopfFrame::map(&a), &HopfFrame::map(&b));
        let to_angle = |chord: f64| 2.0 * (chord / 2.0).min(1.0).asin();
        grid = grid.max((to_angle(action.orbit_distance(&a, &b, false)) - expected).abs());
        refined = refined.max((to_angle(action.orbit_distance(&a, &b, true)) - expected).abs());
    }
    HopfMetricReport {
        pairs: sample_count,
        density,
        max_residual_grid: grid,
        max_residual_refined: refined,
        grid_bound: action.grid_error_bound(1.0),
    }
}

/// `max |d(Xa, Xb) - d(a, b)|` over sampled pairs, for `X` commuting with `G`.
pub fn descend_check(
    x: &Matrix,
    ctx: &GroupContext,
    sample_count: usize,
    seed: u64,
) -> Result<f64> {
    let n = ctx.dimension();
    if x.nrows() != n || x.ncols() != n {
        return Err(Error::VectorDimension {
            expected: n,
            got: x.nrows(),
        });
    }
    let orth = linalg::orthogonality_residual(x);
    let comm = ctx
        .equivariance_generators()
        .iter()
        .map(|g| linalg::commutator_residual(x, g))
        .fold(orth, f64::max);
    if comm > 1e-8 {
        return Err(Error::NotEquivariant(comm));
    }
    let mut rng = linalg::rng(seed, 0xde5);
    let mut worst: f64 = 0.0;
    for _ in 0..sample_count {
        let a = linalg::gaussian_vector(&mut rng, n);
        let b = linalg::gaussian_vector(&mut rng, n);
        let before = ctx.distance(&a, &b);
        let after = ctx.distance(&(x * &a), &(x * &b));
        worst = worst.max((after - before).abs());
    }
    Ok(worst)
}

/// Whether `f g f^-1` lies in the group for every element `g`.
pub fn normalizer_check(group: &FiniteGroupData, f: &Matrix) -> bool {
    let inv = f.transpose();
    group
        .elements
        .iter()
        .all(|g| matches!(group.find(&(f * g * &inv)), Ok(Some(_))))
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NonLiftReport {
    pub id: String,
    pub sector_angle: f64,
    pub expected_angle: f64,
    pub statement: String,
    pub obstruction: String,
}

impl fmt::Display for NonLiftReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "action: {}", self.id)?;
        writeln!(
            f,
            "sector angle: {:.6} (expected {:.6})",
            self.sector_angle, self.expected_angle
        )?;
        writeln!(f, "{}", self.statement)?;
        write!(f, "obstruction: {}", self.obstruction)
    }
}

/// Sector angle and the reason the sector reflection has no lift.
pub fn non_lift_demo(id: &str, sample_count: usize, seed: u64) -> Result<NonLiftReport> {
    if id != catalog::PRODUCT && id != catalog::TENSOR {
        return Err(Error::UnknownCatalog(id.to_string()));
    }
    let action = CatalogAction::by_id(id)?;
    let sector_angle = orbit::sector_angle_estimate(&action, sample_count, seed)?;
    Ok(NonLiftReport {
        id: id.to_string(),
        sector_angle,
        expected_angle: action.metadata.expected_sector_angle.unwrap_or(f64::NAN),
        statement: "the reflection of SV/G across the bisector of the sector swaps its two boundary rays; \
                    it is an isometry outside the identity component and is induced by no isometry of V"
            .to_string(),
        obstruction: action.metadata.singular_isotropy_note.to_string(),
    })
}
