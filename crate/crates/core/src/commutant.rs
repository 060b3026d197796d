// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Commutant algebra, isotypic decomposition and `Isom_G(V)_0`.
//!
//! Everything here works in `F^perp` coordinates (see [`TrivialSplit`]), where
//! the representation has no trivial factors. The isotypic projectors are the
//! spectral projectors of a random symmetric element of the center of the
//! commutant; no character table is ever built.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use nalgebra::SymmetricEigen;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, RankPolicy};
use crate::repr::TrivialSplit;

/// Name recorded in reports for the decomposition method.
pub const ISOTYPIC_METHOD: &str = "commutant-center split";

/// Consecutive eigenvalues closer than this belong to one cluster.
const CLUSTER_MERGE: f64 = 1e-10;
/// Distinct clusters must be separated by more than this.
const CLUSTER_GAP: f64 = 1e-6;
const SEPARATION_ATTEMPTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SchurType {
    Real,
    Complex,
    Quaternionic,
}

impl SchurType {
    /// Real dimension of the endomorphism skew field: 1, 2 or 4.
    pub fn field_dim(self) -> usize {
        match self {
            SchurType::Real => 1,
            SchurType::Complex => 2,
            SchurType::Quaternionic => 4,
        }
    }

    /// `so(n)`, `u(n)` or `sp(n)` dimension.
    pub fn group_dim(self, n: usize) -> usize {
        match self {
            SchurType::Real => n * n.saturating_sub(1) / 2,
            SchurType::Complex => n * n,
            SchurType::Quaternionic => n * (2 * n + 1),
        }
    }

    pub fn group_rank(self, n: usize) -> usize {
        match self {
            SchurType::Real => n / 2,
            SchurType::Complex | SchurType::Quaternionic => n,
        }
    }

    pub fn group_name(self, n: usize) -> String {
        match self {
            SchurType::Real => format!("SO({n})"),
            SchurType::Complex => format!("U({n})"),
            SchurType::Quaternionic => format!("Sp({n})"),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SchurType::Real => "real",
            SchurType::Complex => "complex",
            SchurType::Quaternionic => "quaternionic",
        }
    }
}

impl fmt::Display for SchurType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One isotypic block `V_i^{n_i}` of `F^perp`.
#[derive(Debug, Clone)]
pub struct IsotypicComponent {
    /// Columns: orthonormal basis of the block, in `F^perp` coordinates.
    pub basis: Matrix,
    pub multiplicity: usize,
    pub irreducible_dim: usize,
    pub schur_type: SchurType,
    /// `(1/|G|) sum_g trace(P rho(g^2) P)`.
    pub fs_sum: f64,
    /// Dimension of the commutant restricted to this block.
    pub commutant_dim: usize,
}

impl IsotypicComponent {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projector(&self) -> Matrix {
        &self.basis * self.basis.transpose()
    }
}

/// Basis of `{A : A rho(g) = rho(g) A}` over the restricted generators,
/// orthonormal for the Frobenius inner product.
pub fn commutant_basis(split: &TrivialSplit, policy: RankPolicy) -> Result<Vec<Matrix>> {
    let n = split.complement_dim();
    commuting_matrices(&split.restricted_generators, n, policy)
}

/// Frobenius-orthonormal basis of the matrices commuting with every member of
/// `with`.
pub(crate) fn commuting_matrices(
    with: &[Matrix],
    n: usize,
    policy: RankPolicy,
) -> Result<Vec<Matrix>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let nn = n * n;
    let mut system = Matrix::zeros(with.len() * nn, nn);
    for (k, a) in with.iter().enumerate() {
        for col in 0..nn {
            let mut e = Matrix::zeros(n, n);
            e[(col % n, col / n)] = 1.0;
            let c = a * &e - &e * a;
            system
                .view_mut((k * nn, col), (nn, 1))
                .copy_from_slice(c.as_slice());
        }
    }
    let null = linalg::null_space(&system, policy)?;
    Ok(null
        .column_iter()
        .map(|c| linalg::unvectorize(c.as_slice(), n))
        .collect())
}

/// Basis of the center of the algebra spanned by `basis`, as combinations of
/// `basis`.
pub(crate) fn algebra_center(basis: &[Matrix], policy: RankPolicy) -> Result<Vec<Matrix>> {
    let m = basis.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let n = basis[0].nrows();
    let nn = n * n;
    // sum_k c_k [B_k, B_j] = 0 for all j
    let mut system = Matrix::zeros(m * nn, m);
    for j in 0..m {
        for k in 0..m {
            let c = &basis[k] * &basis[j] - &basis[j] * &basis[k];
            system
                .view_mut((j * nn, k), (nn, 1))
                .copy_from_slice(c.as_slice());
        }
    }
    let null = linalg::null_space(&system, policy)?;
    Ok(null
        .column_iter()
        .map(|c| {
            let mut z = Matrix::zeros(n, n);
            for (k, b) in basis.iter().enumerate() {
                z += b * c[k];
            }
            z
        })
        .collect())
}

/// Isotypic blocks as orthonormal bases, from a random symmetric element of the
/// center of the commutant.
pub fn isotypic_split(commutant: &[Matrix], seed: u64, policy: RankPolicy) -> Result<Vec<Matrix>> {
    let Some(first) = commutant.first() else {
        return Ok(Vec::new());
    };
    let n = first.nrows();
    let center = algebra_center(commutant, policy)?;
    let mut rng = linalg::rng(seed, 0x150);
    for _ in 0..SEPARATION_ATTEMPTS {
        let mut z = Matrix::zeros(n, n);
        for c in &center {
            let w: f64 = StandardNormal.sample(&mut rng);
            z += c * w;
        }
        let sym = linalg::symmetric_part(&z);
        let eig = SymmetricEigen::new(sym);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let mut clusters: Vec<Vec<usize>> = vec![vec![order[0]]];
        let mut ok = true;
        for w in order.windows(2) {
            let gap = eig.eigenvalues[w[1]] - eig.eigenvalues[w[0]];
            if gap <= CLUSTER_MERGE {
                clusters.last_mut().unwrap().push(w[1]);
            } else if gap > CLUSTER_GAP {
                clusters.push(vec![w[1]]);
            } else {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let mut blocks: Vec<Matrix> = clusters
            .iter()
            .map(|idx| {
                let mut b = Matrix::zeros(n, idx.len());
                for (j, &i) in idx.iter().enumerate() {
                    b.set_column(j, &eig.eigenvectors.column(i));
                }
                b
            })
            .collect();
        blocks.sort_by(compare_blocks);
        return Ok(blocks);
    }
    Err(Error::IsotypicSeparation {
        attempts: SEPARATION_ATTEMPTS,
    })
}

/// Seed-independent order: dimension, then projector entries on a 1e-9 grid.
fn compare_blocks(a: &Matrix, b: &Matrix) -> Ordering {
    a.ncols().cmp(&b.ncols()).then_with(|| {
        let pa = a * a.transpose();
        let pb = b * b.transpose();
        for (x, y) in pa.iter().zip(pb.iter()) {
            let (x, y) = ((x * 1e9).round(), (y * 1e9).round());
            match x.total_cmp(&y) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

/// The commutant restricted to a block, in block coordinates, orthonormalized.
fn block_algebra(basis: &Matrix, commutant: &[Matrix]) -> Vec<Matrix> {
    let restricted: Vec<Matrix> = commutant
        .iter()
        .map(|a| basis.transpose() * a * basis)
        .collect();
    linalg::frobenius_orthonormalize(&restricted, 1e-8)
}

/// Frobenius–Schur sum and type classification of one block.
///
/// `averaging` must average polynomials of degree two in the group elements
/// exactly: all elements of a finite group, or a Haar quadrature.
pub fn classify_component(
    basis: &Matrix,
    averaging: &[Matrix],
    commutant: &[Matrix],
    policy: RankPolicy,
) -> Result<IsotypicComponent> {
    let dim = basis.ncols();
    let fs_sum = averaging
        .iter()
        .map(|g| (basis.transpose() * (g * g) * basis).trace())
        .sum::<f64>()
        / averaging.len() as f64;

    let restricted: Vec<Matrix> = commutant
        .iter()
        .map(|a| basis.transpose() * a * basis)
        .collect();
    let mut stacked = Matrix::zeros(dim * dim, restricted.len());
    for (k, r) in restricted.iter().enumerate() {
        stacked.set_column(k, &linalg::vectorize(r));
    }
    let commutant_dim = linalg::rank(&stacked, policy)?;

    let inconsistent = || Error::TypeInconsistency {
        fs_sum,
        commutant_dim,
    };
    if (fs_sum - fs_sum.round()).abs() > 1e-6 {
        return Err(inconsistent());
    }
    let (schur_type, multiplicity) = if fs_sum > 0.5 {
        let n = fs_sum.round() as usize;
        if commutant_dim != n * n {
            return Err(inconsistent());
        }
        (SchurType::Real, n)
    } else if fs_sum < -0.5 {
        // a real irreducible of quaternionic type complexifies to two copies
        // of a complex irreducible with indicator -1
        let twice = (-fs_sum).round() as usize;
        if !twice.is_multiple_of(2) || commutant_dim != twice * twice {
            return Err(inconsistent());
        }
        (SchurType::Quaternionic, twice / 2)
    } else {
        let n = (commutant_dim as f64 / 2.0).sqrt();
        if (n - n.round()).abs() > 1e-6 || n.round() < 1.0 {
            return Err(inconsistent());
        }
        (SchurType::Complex, n.round() as usize)
    };
    if multiplicity == 0 || !dim.is_multiple_of(multiplicity) {
        return Err(inconsistent());
    }
    let irreducible_dim = dim / multiplicity;
    if !irreducible_dim.is_multiple_of(schur_type.field_dim()) {
        return Err(inconsistent());
    }
    Ok(IsotypicComponent {
        basis: basis.clone(),
        multiplicity,
        irreducible_dim,
        schur_type,
        fs_sum,
        commutant_dim,
    })
}

/// One factor `H_i` of `Isom_G(V)_0`.
#[derive(Debug, Clone)]
pub struct Factor {
    pub schur_type: SchurType,
    pub multiplicity: usize,
    /// Index into the component list.
    pub component: usize,
    /// Indices of this factor's elements in `lie_basis`.
    pub lie_range: Range<usize>,
    /// Index in `lie_basis` of the generator of the central circle, for
    /// `U(n)` and `SO(2)`.
    pub circle: Option<usize>,
}

impl Factor {
    pub fn name(&self) -> String {
        self.schur_type.group_name(self.multiplicity)
    }

    pub fn dim(&self) -> usize {
        self.lie_range.len()
    }

    pub fn rank(&self) -> usize {
        self.schur_type.group_rank(self.multiplicity)
    }
}

/// `Isom_G(V)_0 = prod H_i` with a basis of its Lie algebra.
#[derive(Debug, Clone)]
pub struct EquivariantIsometryGroup {
    pub factors: Vec<Factor>,
    /// Skew-symmetric commutant elements in `F^perp` coordinates.
    pub lie_basis: Vec<Matrix>,
    pub total_dim: usize,
    pub rank: usize,
    /// Dimension of `F^perp`.
    pub dim: usize,
}

/// Assemble the factor list and the Lie algebra basis, block by block.
pub fn equivariant_isometry_group(
    components: &[IsotypicComponent],
    commutant: &[Matrix],
    generators: &[Matrix],
    dim: usize,
    policy: RankPolicy,
) -> Result<EquivariantIsometryGroup> {
    let mut factors = Vec::new();
    let mut lie_basis: Vec<Matrix> = Vec::new();
    for (ci, comp) in components.iter().enumerate() {
        let algebra = block_algebra(&comp.basis, commutant);
        let skews: Vec<Matrix> = algebra.iter().map(linalg::skew_part).collect();

        let mut ordered = Vec::new();
        let circle_wanted = comp.schur_type == SchurType::Complex
            || (comp.schur_type == SchurType::Real && comp.multiplicity == 2);
        if comp.schur_type == SchurType::Complex {
            let center = algebra_center(&algebra, policy)?;
            let j = center
                .iter()
                .map(linalg::skew_part)
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .ok_or_else(|| Error::Internal("complex block without center".into()))?;
            ordered.push(j);
        }
        ordered.extend(skews);
        let local = linalg::frobenius_orthonormalize(&ordered, 1e-8);

        let expected = comp.schur_type.group_dim(comp.multiplicity);
        if local.len() != expected {
            return Err(Error::Internal(format!(
                "component {ci}: {} skew commutant elements, {} expected for {}",
                local.len(),
                expected,
                comp.schur_type.group_name(comp.multiplicity)
            )));
        }
        let start = lie_basis.len();
        for k in &local {
            let embedded = linalg::skew_part(&(&comp.basis * k * comp.basis.transpose()));
            lie_basis.push(embedded);
        }
        factors.push(Factor {
            schur_type: comp.schur_type,
            multiplicity: comp.multiplicity,
            component: ci,
            lie_range: start..lie_basis.len(),
            circle: circle_wanted.then_some(start),
        });
    }
    for a in &lie_basis {
        for g in generators {
            let r = linalg::commutator_residual(a, g);
            if r > 1e-8 {
                return Err(Error::Internal(format!(
                    "Lie basis element fails to commute: residual {r:.3e}"
                )));
            }
        }
    }
    let total_dim: usize = factors
        .iter()
        .map(|f| f.schur_type.group_dim(f.multiplicity))
        .sum();
    if total_dim != lie_basis.len() {
        return Err(Error::Internal("Lie basis count mismatch".into()));
    }
    let rank = factors.iter().map(Factor::rank).sum();
    Ok(EquivariantIsometryGroup {
        factors,
        lie_basis,
        total_dim,
        rank,
        dim,
    })
}

/// `sum_i n_i^2 t_i` with `t = 1, 2, 4` by type.
pub fn predicted_commutant_dim(components: &[IsotypicComponent]) -> usize {
    components
        .iter()
        .map(|c| c.multiplicity * c.multiplicity * c.schur_type.field_dim())
        .sum()
}

impl EquivariantIsometryGroup {
    /// `exp(t A)` for a seeded random unit combination `A` of `indices`.
    pub fn exp_random(&self, indices: Range<usize>, t: f64, rng: &mut linalg::Rng) -> Matrix {
        if indices.is_empty() {
            return Matrix::identity(self.dim, self.dim);
        }
        let mut coeffs: Vec<f64> = indices
            .clone()
            .map(|_| StandardNormal.sample(&mut *rng))
            .collect();
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        coeffs.iter_mut().for_each(|c| *c /= norm);
        let mut a = Matrix::zeros(self.dim, self.dim);
        for (c, i) in coeffs.iter().zip(indices) {
            a += &self.lie_basis[i] * *c;
        }
        linalg::expm(&(a * t))
    }

    /// A random element of factor `index`, at a random time in `[0.5, 2.5)`.
    pub fn random_factor_element(&self, index: usize, rng: &mut linalg::Rng) -> Matrix {
        let t = 0.5 + 2.0 * rng.random::<f64>();
        self.exp_random(self.factors[index].lie_range.clone(), t, rng)
    }
}

/// `exp(t A)` with `A` a seeded random unit combination of the Lie basis.
pub fn sample_equivariant_isometry(group: &EquivariantIsometryGroup, t: f64, seed: u64) -> Matrix {
    let mut rng = linalg::rng(seed, 0x5a);
    group.exp_random(0..group.lie_basis.len(), t, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{block_diag, rotation2};
    use crate::repr::{enumerate_group, fixed_subspace, RepresentationSpec};
    use std::f64::consts::PI;

    struct Fixture {
        split: TrivialSplit,
        elements: Vec<Matrix>,
        commutant: Vec<Matrix>,
    }

    fn fixture(gens: Vec<Matrix>) -> Fixture {
        let spec = RepresentationSpec::finite(gens).unwrap();
        let group = enumerate_group(&spec).unwrap();
        let split = fixed_subspace(&spec).unwrap();
        let elements = group.elements.iter().map(|g| split.restrict(g)).collect();
        let commutant = commutant_basis(&split, RankPolicy::default()).unwrap();
        Fixture {
            split,
            elements,
            commutant,
        }
    }

    fn q8() -> Vec<Matrix> {
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

    fn classify_all(f: &Fixture, seed: u64) -> Vec<IsotypicComponent> {
        isotypic_split(&f.commutant, seed, RankPolicy::default())
            .unwrap()
            .iter()
            .map(|b| {
                classify_component(b, &f.elements, &f.commutant, RankPolicy::default()).unwrap()
            })
            .collect()
    }

    #[test]
    fn commutant_dimensions() {
        assert_eq!(fixture(vec![-Matrix::identity(2, 2)]).commutant.len(), 4);
        let c5 = fixture(vec![rotation2(2.0 * PI / 5.0)]);
        assert_eq!(c5.commutant.len(), 2);
        // oracle: span(I, J); each basis element is a + bJ
        for a in &c5.commutant {
            assert!((a[(0, 0)] - a[(1, 1)]).abs() < 1e-12);
            assert!((a[(0, 1)] + a[(1, 0)]).abs() < 1e-12);
        }
        let d4 = fixture(vec![
            rotation2(PI / 2.0),
            Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
        ]);
        assert_eq!(d4.commutant.len(), 1);
    }

    #[test]
    fn isotypic_blocks() {
        let c5 = fixture(vec![rotation2(2.0 * PI / 5.0)]);
        assert_eq!(
            isotypic_split(&c5.commutant, 1, RankPolicy::default())
                .unwrap()
                .len(),
            1
        );

        let pm4 = fixture(vec![-Matrix::identity(4, 4)]);
        let blocks = isotypic_split(&pm4.commutant, 1, RankPolicy::default()).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].ncols(), 4);

        let mixed = fixture(vec![
            block_diag(&[rotation2(2.0 * PI / 3.0), Matrix::identity(2, 2)]),
            block_diag(&[Matrix::identity(2, 2), rotation2(PI / 2.0)]),
            block_diag(&[
                Matrix::identity(2, 2),
                Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
            ]),
        ]);
        let blocks = isotypic_split(&mixed.commutant, 3, RankPolicy::default()).unwrap();
        assert_eq!(
            blocks.iter().map(|b| b.ncols()).collect::<Vec<_>>(),
            vec![2, 2]
        );
        // oracle: the commutant is block diagonal, so each block lives in one
        // coordinate plane of F^perp
        for b in &blocks {
            let p = b * b.transpose();
            let diag: Vec<f64> = (0..4).map(|i| p[(i, i)]).collect();
            let in_first = diag[0] > 0.5;
            for (i, d) in diag.iter().enumerate() {
                let want = if (i < 2) == in_first { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn fs_sums_against_brute_force() {
        // {±I} on R^4: chi(g^2) = 4 for both elements
        let pm4 = fixture(vec![-Matrix::identity(4, 4)]);
        let comps = classify_all(&pm4, 0);
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert!((c.fs_sum - 4.0).abs() < 1e-12);
        assert_eq!(
            (c.schur_type, c.multiplicity, c.commutant_dim),
            (SchurType::Real, 4, 16)
        );

        // C5 on R^2: sum_k 2 cos(4 pi k / 5) = 0
        let oracle: f64 = (0..5)
            .map(|k| 2.0 * (4.0 * PI * k as f64 / 5.0).cos())
            .sum::<f64>()
            / 5.0;
        let c5 = fixture(vec![rotation2(2.0 * PI / 5.0)]);
        let c = &classify_all(&c5, 0)[0];
        assert!((c.fs_sum - oracle).abs() < 1e-12);
        assert_eq!(
            (c.schur_type, c.multiplicity, c.commutant_dim),
            (SchurType::Complex, 1, 2)
        );

        // Q8 on R^4: g^2 = 1 for ±1 and -1 for the six others,
        // (2*4 + 6*(-4)) / 8 = -2
        let q = fixture(q8());
        let c = &classify_all(&q, 0)[0];
        assert!((c.fs_sum + 2.0).abs() < 1e-12);
        assert_eq!(
            (
                c.schur_type,
                c.multiplicity,
                c.commutant_dim,
                c.irreducible_dim
            ),
            (SchurType::Quaternionic, 1, 4, 4)
        );
    }

    #[test]
    fn equivariant_groups() {
        let c5 = fixture(vec![rotation2(2.0 * PI / 5.0)]);
        let comps = classify_all(&c5, 0);
        let g = equivariant_isometry_group(
            &comps,
            &c5.commutant,
            &c5.split.restricted_generators,
            2,
            RankPolicy::default(),
        )
        .unwrap();
        assert_eq!(
            g.factors.iter().map(Factor::name).collect::<Vec<_>>(),
            vec!["U(1)"]
        );
        assert_eq!((g.total_dim, g.rank), (1, 1));
        // the single skew element is ±J/sqrt(2)
        let j = &g.lie_basis[0];
        assert!((j[(1, 0)].abs() - 1.0 / 2f64.sqrt()).abs() < 1e-12);

        let pm4 = fixture(vec![-Matrix::identity(4, 4)]);
        let comps = classify_all(&pm4, 0);
        let g = equivariant_isometry_group(
            &comps,
            &pm4.commutant,
            &pm4.split.restricted_generators,
            4,
            RankPolicy::default(),
        )
        .unwrap();
        assert_eq!(g.factors[0].name(), "SO(4)");
        assert_eq!((g.total_dim, g.rank), (6, 2));
        assert_eq!(predicted_commutant_dim(&comps), pm4.commutant.len());
    }

    #[test]
    fn sampled_isometries() {
        let c5 = fixture(vec![rotation2(2.0 * PI / 5.0)]);
        let comps = classify_all(&c5, 0);
        let g = equivariant_isometry_group(
            &comps,
            &c5.commutant,
            &c5.split.restricted_generators,
            2,
            RankPolicy::default(),
        )
        .unwrap();
        assert_eq!(
            sample_equivariant_isometry(&g, 0.0, 9),
            Matrix::identity(2, 2)
        );
        // exp(pi/2 J) with J the unit rotation generator
        let j = &g.lie_basis[0] * 2f64.sqrt();
        let r = linalg::expm(&(j.clone() * (PI / 2.0)));
        let expected = if j[(1, 0)] > 0.0 {
            rotation2(PI / 2.0)
        } else {
            rotation2(-PI / 2.0)
        };
        assert!(linalg::max_abs_diff(&r, &expected) < 1e-14);

        let pm4 = fixture(vec![-Matrix::identity(4, 4)]);
        let comps = classify_all(&pm4, 0);
        let g = equivariant_isometry_group(
            &comps,
            &pm4.commutant,
            &pm4.split.restricted_generators,
            4,
            RankPolicy::default(),
        )
        .unwrap();
        let x = sample_equivariant_isometry(&g, 0.3, 11);
        assert!(linalg::orthogonality_residual(&x) <= 1e-12);
    }

    #[test]
    fn projectors_do_not_depend_on_seed() {
        let mixed = fixture(vec![
            block_diag(&[rotation2(2.0 * PI / 3.0), Matrix::identity(2, 2)]),
            block_diag(&[Matrix::identity(2, 2), rotation2(PI / 2.0)]),
        ]);
        let reference: Vec<Matrix> = isotypic_split(&mixed.commutant, 0, RankPolicy::default())
            .unwrap()
            .iter()
            .map(|b| b * b.transpose())
            .collect();
        for seed in 1..6 {
            let blocks = isotypic_split(&mixed.commutant, seed, RankPolicy::default()).unwrap();
            for (b, p) in blocks.iter().zip(&reference) {
                assert!(linalg::max_abs_diff(&(b * b.transpose()), p) < 1e-8);
            }
        }
    }
}
