// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Fixed catalog of continuous orthogonal actions.
//!
//! Each group is `SO(2)`, `U(1)`, or `SO(2) x SO(3)`. Orbit distances are found
//! by a coarse grid over the circle parameter followed by golden-section
//! refinement; when an `SO(3)` factor is present it is optimized exactly for
//! every circle parameter (orthogonal Procrustes restricted to `SO(3)`).

use std::f64::consts::{PI, TAU};
use std::ops::Add;
use std::sync::OnceLock;

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};

pub const HOPF: &str = "hopf-u1-r4";
pub const PRODUCT: &str = "so2xso3-r5";
pub const TENSOR: &str = "so2-tensor-so3-r6";
/// Degenerate entry: the trivial group on `R^2`.
pub const TRIVIAL: &str = "trivial-r2";

pub const CATALOG_IDS: [&str; 4] = [HOPF, PRODUCT, TENSOR, TRIVIAL];

/// Default number of grid points on each circle parameter.
pub const DEFAULT_DENSITY: usize = 2048;

const GOLDEN_ITERATIONS: usize = 90;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Hopf,
    Product,
    Tensor,
    Trivial,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalogMetadata {
    pub group: &'static str,
    pub description: &'static str,
    pub has_boundary: bool,
    pub cohomogeneity: usize,
    pub expected_sector_angle: Option<f64>,
    pub singular_isotropy_note: &'static str,
}

#[derive(Debug, Clone)]
pub struct CatalogAction {
    pub id: String,
    pub dimension: usize,
    pub metadata: CatalogMetadata,
    /// Grid points per circle parameter.
    pub density: usize,
    shape: Shape,
}

fn j2() -> Matrix {
    Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
}

fn so3_basis() -> [Matrix; 3] {
    [
        Matrix::from_row_slice(3, 3, &[0., 0., 0., 0., 0., -1., 0., 1., 0.]),
        Matrix::from_row_slice(3, 3, &[0., 0., 1., 0., 0., 0., -1., 0., 0.]),
        Matrix::from_row_slice(3, 3, &[0., -1., 0., 1., 0., 0., 0., 0., 0.]),
    ]
}

fn to_dmatrix(m: &Matrix3<f64>) -> Matrix {
    Matrix::from_fn(3, 3, |i, j| m[(i, j)])
}

/// The 60 rotations of the icosahedron. Averaging over them reproduces the
/// Haar average of every polynomial of degree at most 5 on `SO(3)`.
pub fn icosahedral_rotations() -> &'static [Matrix3<f64>] {
    static CELL: OnceLock<Vec<Matrix3<f64>>> = OnceLock::new();
    CELL.get_or_init(|| {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let five = Rotation3::from_axis_angle(
            &Unit::new_normalize(Vector3::new(0.0, 1.0, phi)),
            TAU / 5.0,
        );
        let three = Rotation3::from_axis_angle(
            &Unit::new_normalize(Vector3::new(1.0, 1.0, 1.0)),
            TAU / 3.0,
        );
        let gens = vec![to_dmatrix(five.matrix()), to_dmatrix(three.matrix())];
        let group =
            crate::repr::enumerate_from_generators(&gens, 1000).expect("icosahedral closure");
        assert_eq!(group.order, 60, "icosahedral group order");
        group
            .elements
            .iter()
            .map(|m| Matrix3::from_fn(|i, j| m[(i, j)]))
            .collect()
    })
}

/// Maximum of `<S, N>_F` over `S` in `SO(3)`, with the maximizer.
fn procrustes_so3(n: &Matrix3<f64>) -> (f64, Matrix3<f64>) {
    let svd = n.svd(true, true);
    let u = svd.u.unwrap();
    let v_t = svd.v_t.unwrap();
    let d = (u * v_t).determinant().signum();
    let mut smallest = 0;
    for k in 1..3 {
        if svd.singular_values[k] < svd.singular_values[smallest] {
            smallest = k;
        }
    }
    let mut signs = Matrix3::identity();
    signs[(smallest, smallest)] = d;
    let s = u * signs * v_t;
    let value = svd.singular_values.sum() - (1.0 - d) * svd.singular_values[smallest];
    (value, s)
}

/// Value-only variant of [`procrustes_so3`].
#[cfg(test)]
fn procrustes_so3_value(n: &Matrix3<f64>) -> f64 {
    let sv = n.singular_values();
    let smallest = sv.min();
    if n.determinant() < 0.0 {
        sv.sum() - 2.0 * smallest
    } else {
        sv.sum()
    }
}

/// Uniform random rotation from a normalized Gaussian quaternion.
pub fn random_rotation3(rng: &mut linalg::Rng) -> Matrix3<f64> {
    let q = linalg::random_unit_vector(rng, 4);
    let uq = nalgebra::UnitQuaternion::from_quaternion(nalgebra::Quaternion::new(
        q[0], q[1], q[2], q[3],
    ));
    *uq.to_rotation_matrix().matrix()
}

impl CatalogAction {
    pub fn by_id(id: &str) -> Result<Self> {
        let (dimension, shape, metadata) = match id {
            HOPF => (
                4,
                Shape::Hopf,
                CatalogMetadata {
                    group: "U(1)",
                    description: "scalar circle action on C^2 = R^4",
                    has_boundary: false,
                    cohomogeneity: 3,
                    expected_sector_angle: None,
                    singular_isotropy_note: "free on the unit sphere; SV/G is the round 2-sphere of radius 1/2",
                },
            ),
            PRODUCT => (
                5,
                Shape::Product,
                CatalogMetadata {
                    group: "SO(2) x SO(3)",
                    description: "product action on R^2 x R^3",
                    has_boundary: true,
                    cohomogeneity: 2,
                    expected_sector_angle: Some(PI / 2.0),
                    singular_isotropy_note:
                        "boundary rays carry singular orbits isometric to a 2-sphere and a circle",
                },
            ),
            TENSOR => (
                6,
                Shape::Tensor,
                CatalogMetadata {
                    group: "SO(2) x SO(3)",
                    description: "outer tensor product action on R^2 (x) R^3",
                    has_boundary: true,
                    cohomogeneity: 2,
                    expected_sector_angle: Some(PI / 4.0),
                    singular_isotropy_note:
                        "isotropy along the boundary rays is SO(2) and SO(2) x Z_2, so the singular orbits are not diffeomorphic",
                },
            ),
            TRIVIAL => (
                2,
                Shape::Trivial,
                CatalogMetadata {
                    group: "1",
                    description: "trivial group on R^2",
                    has_boundary: false,
                    cohomogeneity: 2,
                    expected_sector_angle: Some(PI),
                    singular_isotropy_note: "no singular orbits; SV/G is the unit circle",
                },
            ),
            other => return Err(Error::UnknownCatalog(other.to_string())),
        };
        Ok(CatalogAction {
            id: id.to_string(),
            dimension,
            metadata,
            density: DEFAULT_DENSITY,
            shape,
        })
    }

    pub fn all() -> Vec<Self> {
        CATALOG_IDS
            .iter()
            .map(|id| CatalogAction::by_id(id).expect("catalog id"))
            .collect()
    }

    pub fn with_density(mut self, density: usize) -> Self {
        self.density = density.max(1);
        self
    }

    /// Basis of the Lie algebra of the acting group.
    pub fn lie_generators(&self) -> Vec<Matrix> {
        let j = j2();
        match self.shape {
            Shape::Hopf => vec![linalg::block_diag(&[j.clone(), j])],
            Shape::Product => {
                let mut out = vec![linalg::block_diag(&[j, Matrix::zeros(3, 3)])];
                out.extend(
                    so3_basis()
                        .iter()
                        .map(|l| linalg::block_diag(&[Matrix::zeros(2, 2), l.clone()])),
                );
                out
            }
            Shape::Tensor => {
                let mut out = vec![j.kronecker(&Matrix::identity(3, 3))];
                out.extend(
                    so3_basis()
                        .iter()
                        .map(|l| Matrix::identity(2, 2).kronecker(l)),
                );
                out
            }
            Shape::Trivial => Vec::new(),
        }
    }

    /// Group element for circle parameter `theta` and `SO(3)` part `s`
    /// (ignored when the group has no `SO(3)` factor).
    pub fn element(&self, theta: f64, s: &Matrix3<f64>) -> Matrix {
        let r = linalg::rotation2(theta);
        match self.shape {
            Shape::Hopf => linalg::block_diag(&[r.clone(), r]),
            Shape::Product => linalg::block_diag(&[r, to_dmatrix(s)]),
            Shape::Tensor => r.kronecker(&to_dmatrix(s)),
            Shape::Trivial => Matrix::identity(2, 2),
        }
    }

    /// Finite set whose uniform average equals the Haar average for
    /// polynomials of degree at most 4 in the matrix entries.
    pub fn quadrature(&self) -> Vec<Matrix> {
        let circle: Vec<f64> = (0..8).map(|k| TAU * k as f64 / 8.0).collect();
        let id3 = Matrix3::identity();
        match self.shape {
            Shape::Hopf => circle.iter().map(|&t| self.element(t, &id3)).collect(),
            Shape::Product | Shape::Tensor => circle
                .iter()
                .flat_map(|&t| icosahedral_rotations().iter().map(move |s| (t, s)))
                .map(|(t, s)| self.element(t, s))
                .collect(),
            Shape::Trivial => vec![Matrix::identity(2, 2)],
        }
    }

    /// `m` elements: the circle grid paired with seeded random rotations for
    /// the `SO(3)` factor.
    pub fn sample_elements(&self, m: usize, seed: u64) -> Vec<Matrix> {
        let mut rng = linalg::rng(seed, 0xca7);
        (0..m)
            .map(|k| {
                let s = random_rotation3(&mut rng);
                self.element(TAU * k as f64 / m as f64, &s)
            })
            .collect()
    }

    /// `min_g |a - g b|`; with `refine == false` the minimum over the circle
    /// grid only.
    pub fn orbit_distance(&self, a: &Vector, b: &Vector, refine: bool) -> f64 {
        let problem = Problem::new(self.shape, a, b);
        if self.shape == Shape::Trivial {
            return (a - b).norm();
        }
        let m = self.density;
        let step = TAU / m as f64;
        let mut best = (f64::NEG_INFINITY, 0usize);
        for k in 0..m {
            let v = problem.value(step * k as f64);
            if v > best.0 {
                best = (v, k);
            }
        }
        let theta0 = step * best.1 as f64;
        let at_grid = problem.explicit(theta0);
        if !refine {
            return at_grid;
        }
        // golden section on the explicit distance
        let gr = (5f64.sqrt() - 1.0) / 2.0;
        let (mut lo, mut hi) = (theta0 - step, theta0 + step);
        let mut x1 = hi - gr * (hi - lo);
        let mut x2 = lo + gr * (hi - lo);
        let mut f1 = problem.explicit(x1);
        let mut f2 = problem.explicit(x2);
        for _ in 0..GOLDEN_ITERATIONS {
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = problem.explicit(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = problem.explicit(x2);
            }
            if hi - lo < 1e-15 {
                break;
            }
        }
        at_grid.min(f1).min(f2)
    }

    /// Upper bound on the grid-only overestimate of the chordal distance for
    /// points of norm at most `radius`.
    pub fn grid_error_bound(&self, radius: f64) -> f64 {
        match self.shape {
            Shape::Trivial => 0.0,
            _ => radius * PI / self.density as f64,
        }
    }
}

/// Orbit-distance problem for one pair of points.
struct Problem {
    shape: Shape,
    a: Vec<f64>,
    b: Vec<f64>,
    norms: f64,
    // Hopf: <a, b>, <a, J b>
    hopf: (f64, f64),
    // Product: SO(3) optimum for the R^3 parts
    product_inner: (f64, Matrix3<f64>),
    // Tensor: A^T B and A^T J B
    tensor: (Matrix3<f64>, Matrix3<f64>),
    // Tensor: A A^T, B B^T and |a1 x a2| |b1 x b2|
    tensor_gram: (nalgebra::Matrix2<f64>, nalgebra::Matrix2<f64>, f64),
}

impl Problem {
    fn new(shape: Shape, a: &Vector, b: &Vector) -> Self {
        let mut p = Problem {
            shape,
            a: a.iter().copied().collect(),
            b: b.iter().copied().collect(),
            norms: a.norm_squared() + b.norm_squared(),
            hopf: (0.0, 0.0),
            product_inner: (0.0, Matrix3::identity()),
            tensor: (Matrix3::zeros(), Matrix3::zeros()),
            tensor_gram: (nalgebra::Matrix2::zeros(), nalgebra::Matrix2::zeros(), 0.0),
        };
        let (a, b) = (&p.a, &p.b);
        match shape {
            Shape::Hopf => {
                let dot = a.iter().zip(b).map(|(x, y)| x * y).sum();
                let jb = [-b[1], b[0], -b[3], b[2]];
                let dot_j = a.iter().zip(jb.iter()).map(|(x, y)| x * y).sum();
                p.hopf = (dot, dot_j);
            }
            Shape::Product => {
                let a2 = Vector3::new(a[2], a[3], a[4]);
                let b2 = Vector3::new(b[2], b[3], b[4]);
                p.product_inner = procrustes_so3(&(a2 * b2.transpose()));
            }
            Shape::Tensor => {
                let am = nalgebra::Matrix2x3::from_row_slice(a);
                let bm = nalgebra::Matrix2x3::from_row_slice(b);
                let jb = nalgebra::Matrix2::new(0.0, -1.0, 1.0, 0.0) * bm;
                p.tensor = (am.transpose() * bm, am.transpose() * jb);
                let cross = |m: &nalgebra::Matrix2x3<f64>| {
                    m.row(0).transpose().cross(&m.row(1).transpose()).norm()
                };
                p.tensor_gram = (
                    am * am.transpose(),
                    bm * bm.transpose(),
                    cross(&am) * cross(&bm),
                );
            }
            Shape::Trivial => {}
        }
        p
    }

    /// `max over the non-circle factors of <a, g(theta, .) b>`.
    fn value(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        match self.shape {
            Shape::Hopf => c * self.hopf.0 + s * self.hopf.1,
            Shape::Product => {
                let (a, b) = (&self.a, &self.b);
                let rb = [c * b[0] - s * b[1], s * b[0] + c * b[1]];
                a[0] * rb[0] + a[1] * rb[1] + self.product_inner.0
            }
            // A^T R B has rank <= 2, so its nuclear norm is
            // sqrt(|A^T R B|_F^2 + 2 s1 s2) with s1 s2 = |a1 x a2| |b1 x b2|.
            Shape::Tensor => {
                let (p, q, kappa) = &self.tensor_gram;
                let r = nalgebra::Matrix2::new(c, -s, s, c);
                (p * r * q * r.transpose())
                    .trace()
                    .add(2.0 * kappa)
                    .max(0.0)
                    .sqrt()
            }
            Shape::Trivial => self.a.iter().zip(&self.b).map(|(x, y)| x * y).sum(),
        }
    }

    /// `|a - g b|` evaluated directly at the optimal non-circle factors.
    fn explicit(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let (a, b) = (&self.a, &self.b);
        let rot = |x: f64, y: f64| (c * x - s * y, s * x + c * y);
        match self.shape {
            Shape::Hopf => {
                let (p0, p1) = rot(b[0], b[1]);
                let (p2, p3) = rot(b[2], b[3]);
                let d = [a[0] - p0, a[1] - p1, a[2] - p2, a[3] - p3];
                d.iter().map(|x| x * x).sum::<f64>().sqrt()
            }
            Shape::Product => {
                let (p0, p1) = rot(b[0], b[1]);
                let sb = self.product_inner.1 * Vector3::new(b[2], b[3], b[4]);
                let d = [
                    a[0] - p0,
                    a[1] - p1,
                    a[2] - sb[0],
                    a[3] - sb[1],
                    a[4] - sb[2],
                ];
                d.iter().map(|x| x * x).sum::<f64>().sqrt()
            }
            Shape::Tensor => {
                let (_, sopt) = procrustes_so3(&(self.tensor.0 * c + self.tensor.1 * s));
                let am = nalgebra::Matrix2x3::from_row_slice(a);
                let bm = nalgebra::Matrix2x3::from_row_slice(b);
                let r = nalgebra::Matrix2::new(c, -s, s, c);
                (am - r * bm * sopt.transpose()).norm()
            }
            Shape::Trivial => {
                let _ = self.norms;
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_closed_form_matches_svd() {
        let action = CatalogAction::by_id(TENSOR).unwrap();
        let mut rng = linalg::rng(21, 0);
        for _ in 0..50 {
            let a = linalg::gaussian_vector(&mut rng, 6);
            let b = linalg::gaussian_vector(&mut rng, 6);
            let p = Problem::new(action.shape, &a, &b);
            for k in 0..16 {
                let t = 0.4 * k as f64;
                let (s, c) = t.sin_cos();
                let oracle = procrustes_so3_value(&(p.tensor.0 * c + p.tensor.1 * s));
                assert!(
                    (p.value(t) - oracle).abs() <= 1e-10,
                    "{} vs {oracle}",
                    p.value(t)
                );
            }
        }
    }

    #[test]
    fn icosahedral_group_has_sixty_rotations() {
        let rots = icosahedral_rotations();
        assert_eq!(rots.len(), 60);
        for r in rots {
            assert!((r.determinant() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn quadrature_reproduces_haar_moments() {
        // Haar: E[S] = 0, E[S_ij S_kl] = delta_ik delta_jl / 3
        let rots = icosahedral_rotations();
        let n = rots.len() as f64;
        let mean: Matrix3<f64> = rots.iter().sum::<Matrix3<f64>>() / n;
        assert!(mean.abs().max() < 1e-12);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let m: f64 = rots.iter().map(|r| r[(i, j)] * r[(k, l)]).sum::<f64>() / n;
                        let want = if i == k && j == l { 1.0 / 3.0 } else { 0.0 };
                        assert!((m - want).abs() < 1e-12, "({i}{j})({k}{l}) -> {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn sampled_elements_are_orthogonal_and_deterministic() {
        for action in CatalogAction::all() {
            let a = action.sample_elements(16, 3);
            let b = action.sample_elements(16, 3);
            for (x, y) in a.iter().zip(&b) {
                assert!(linalg::orthogonality_residual(x) <= 1e-9);
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn lie_generators_are_skew_and_tangent() {
        for action in CatalogAction::all() {
            for l in action.lie_generators() {
                assert_eq!(linalg::max_abs(&(&l + l.transpose())), 0.0);
            }
        }
    }

    #[test]
    fn product_distance_matches_norm_oracle() {
        // orbits of SO(2) x SO(3) on R^2 x R^3 are products of spheres
        let action = CatalogAction::by_id(PRODUCT).unwrap();
        let mut rng = linalg::rng(5, 0);
        for _ in 0..20 {
            let a = linalg::gaussian_vector(&mut rng, 5);
            let b = linalg::gaussian_vector(&mut rng, 5);
            let (a1, a2) = (a.rows(0, 2).norm(), a.rows(2, 3).norm());
            let (b1, b2) = (b.rows(0, 2).norm(), b.rows(2, 3).norm());
            let oracle = ((a1 - b1).powi(2) + (a2 - b2).powi(2)).sqrt();
            assert!((action.orbit_distance(&a, &b, true) - oracle).abs() < 1e-10);
        }
    }

    #[test]
    fn tensor_distance_matches_singular_value_oracle() {
        // SO(2) x SO(3) orbits on 2x3 matrices are classified by singular values
        let action = CatalogAction::by_id(TENSOR).unwrap();
        let mut rng = linalg::rng(6, 0);
        for _ in 0..20 {
            let a = linalg::gaussian_vector(&mut rng, 6);
            let b = linalg::gaussian_vector(&mut rng, 6);
            let sa = nalgebra::Matrix2x3::from_row_slice(a.as_slice()).singular_values();
            let sb = nalgebra::Matrix2x3::from_row_slice(b.as_slice()).singular_values();
            let (mut sa, mut sb) = ([sa[0], sa[1]], [sb[0], sb[1]]);
            sa.sort_by(|x, y| y.total_cmp(x));
            sb.sort_by(|x, y| y.total_cmp(x));
            let oracle = ((sa[0] - sb[0]).powi(2) + (sa[1] - sb[1]).powi(2)).sqrt();
            assert!((action.orbit_distance(&a, &b, true) - oracle).abs() < 1e-9);
        }
    }

    #[test]
    fn hopf_distance_of_orthogonal_lines() {
        let action = CatalogAction::by_id(HOPF).unwrap();
        let a = Vector::from_vec(vec![1.0, 0.0, 0.0, 0.0]);
        let b = Vector::from_vec(vec![0.0, 0.0, 1.0, 0.0]);
        assert!((action.orbit_distance(&a, &b, true) - 2f64.sqrt()).abs() < 1e-12);
        // same orbit
        let c = action.element(0.7, &Matrix3::identity()) * &a;
        assert!(action.orbit_distance(&a, &c, true) < 1e-12);
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            CatalogAction::by_id("nope"),
            Err(Error::UnknownCatalog(_))
        ));
    }
}
