// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense linear-algebra helpers shared by the pipeline stages.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

pub type Matrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Name of the generator behind every random draw, recorded in reports.
pub const RNG_NAME: &str = "chacha8";

pub type Rng = ChaCha8Rng;

/// Seeded generator for an independent stream of draws. Stages use distinct
/// `stream` values so that adding draws in one stage never shifts another.
pub fn rng(seed: u64, stream: u64) -> Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Singular-value threshold policy for rank decisions.
///
/// Values below `factor * eps * sigma_max` count as zero; values inside
/// `[tol, 100 tol]` are rejected as ambiguous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankPolicy {
    pub factor: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy { factor: 100.0 }
    }
}

impl RankPolicy {
    fn threshold(&self, sigma_max: f64) -> f64 {
        self.factor * f64::EPSILON * sigma_max.max(1.0)
    }
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
}

/// `max |g^T g - I|`.
pub fn orthogonality_residual(g: &Matrix) -> f64 {
    let n = g.ncols();
    max_abs_diff(&(g.transpose() * g), &Matrix::identity(n, n))
}

/// `max |AB - BA|`.
pub fn commutator_residual(a: &Matrix, b: &Matrix) -> f64 {
    max_abs_diff(&(a * b), &(b * a))
}

pub fn rotation2(theta: f64) -> Matrix {
    let (s, c) = theta.sin_cos();
    Matrix::from_row_slice(2, 2, &[c, -s, s, c])
}

/// Block-diagonal matrix from square blocks.
pub fn block_diag(blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = Matrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, off), (b.nrows(), b.ncols()))
            .copy_from(b);
        off += b.nrows();
    }
    out
}

/// Singular values and right singular vectors (as rows of `v_t`) of `m`,
/// padding with zero rows so that `v_t` is always square.
fn full_right_svd(m: &Matrix) -> (Vec<f64>, Matrix) {
    let cols = m.ncols();
    let padded = if m.nrows() < cols {
        let mut p = Matrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested v_t");
    (svd.singular_values.iter().copied().collect(), v_t)
}

/// Orthonormal basis (as columns) of the null space of `m`.
pub fn null_space(m: &Matrix, policy: RankPolicy) -> Result<Matrix> {
    let cols = m.ncols();
    if cols == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    if m.nrows() == 0 {
        return Ok(Matrix::identity(cols, cols));
    }
    let (sv, v_t) = full_right_svd(m);
    let sigma_max = sv.iter().fold(0.0_f64, |a, &b| a.max(b));
    let tol = policy.threshold(sigma_max);
    let mut kept = Vec::new();
    for (i, &s) in sv.iter().enumerate() {
        if s < tol {
            kept.push(i);
        } else if s <= 100.0 * tol {
            return Err(Error::RankAmbiguity {
                value: s,
                lo: tol,
                hi: 100.0 * tol,
            });
        }
    }
    let mut out = Matrix::zeros(cols, kept.len());
    for (j, &i) in kept.iter().enumerate() {
        out.set_column(j, &v_t.row(i).transpose());
    }
    Ok(out)
}

/// Orthonormal basis of the column span of `m`.
pub fn range_basis(m: &Matrix, policy: RankPolicy) -> Result<Matrix> {
    let rows = m.nrows();
    if m.ncols() == 0 || rows == 0 {
        return Ok(Matrix::zeros(rows, 0));
    }
    // range(m) = null(m^T)^perp
    let null = null_space(&m.transpose(), policy)?;
    orthonormal_complement(&null, rows, policy)
}

/// Orthonormal basis of the orthogonal complement of the span of the
/// (orthonormal) columns of `basis` inside `R^n`.
pub fn orthonormal_complement(basis: &Matrix, n: usize, policy: RankPolicy) -> Result<Matrix> {
    if basis.ncols() == 0 {
        return Ok(Matrix::identity(n, n));
    }
    null_space(&basis.transpose(), policy)
}

/// Numerical rank of `m` under `policy`.
pub fn rank(m: &Matrix, policy: RankPolicy) -> Result<usize> {
    Ok(m.ncols() - null_space(m, policy)?.ncols())
}

/// `vec` of a square matrix, column-major.
pub fn vectorize(m: &Matrix) -> Vector {
    Vector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &[f64], n: usize) -> Matrix {
    Matrix::from_column_slice(n, n, v)
}

pub fn expm(a: &Matrix) -> Matrix {
    a.exp()
}

pub fn gaussian_vector(rng: &mut Rng, n: usize) -> Vector {
    Vector::from_iterator(n, (0..n).map(|_| StandardNormal.sample(rng)))
}

pub fn random_unit_vector(rng: &mut Rng, n: usize) -> Vector {
    loop {
        let v = gaussian_vector(rng, n);
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

/// Symmetric part `(A + A^T)/2`.
pub fn symmetric_part(a: &Matrix) -> Matrix {
    (a + a.transpose()) * 0.5
}

/// Skew part `(A - A^T)/2`.
pub fn skew_part(a: &Matrix) -> Matrix {
    (a - a.transpose()) * 0.5
}

/// Gram-Schmidt a list of matrices against the Frobenius inner product,
/// dropping members that are (numerically) dependent on earlier ones.
pub fn frobenius_orthonormalize(items: &[Matrix], drop_below: f64) -> Vec<Matrix> {
    let mut out: Vec<Matrix> = Vec::new();
    for m in items {
        let mut v = m.clone();
        for _ in 0..2 {
            for q in &out {
                let c = v.dot(q);
                v -= q * c;
            }
        }
        let norm = v.norm();
        if norm > drop_below {
            out.push(v / norm);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_space_of_rank_one() {
        let m = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&m, RankPolicy::default()).unwrap();
        assert_eq!(ns.ncols(), 2);
        assert!(max_abs(&(&m * &ns)) < 1e-14);
        assert!(max_abs_diff(&(ns.transpose() * &ns), &Matrix::identity(2, 2)) < 1e-14);
    }

    #[test]
    fn null_space_rejects_ambiguous_singular_value() {
        let m = Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-12]);
        assert!(matches!(
            null_space(&m, RankPolicy::default()),
            Err(Error::RankAmbiguity { .. })
        ));
    }

    #[test]
    fn expm_of_rotation_generator() {
        let j = Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let t = std::f64::consts::FRAC_PI_2;
        let r = expm(&(&j * t));
        assert!(max_abs_diff(&r, &rotation2(t)) < 1e-14);
        assert!(max_abs_diff(&expm(&Matrix::zeros(3, 3)), &Matrix::identity(3, 3)) == 0.0);
    }

    #[test]
    fn expm_large_norm_matches_rotation() {
        let j = Matrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
        let r = expm(&(&j * 37.3));
        assert!(max_abs_diff(&r, &rotation2(37.3)) < 1e-12);
    }

    #[test]
    fn range_and_complement_split_space() {
        let m = Matrix::from_row_slice(3, 2, &[1.0, 2.0, 0.0, 0.0, 1.0, 2.0]);
        let r = range_basis(&m, RankPolicy::default()).unwrap();
        assert_eq!(r.ncols(), 1);
        let c = orthonormal_complement(&r, 3, RankPolicy::default()).unwrap();
        assert_eq!(c.ncols(), 2);
        assert!(max_abs(&(r.transpose() * c)) < 1e-14);
    }
}
