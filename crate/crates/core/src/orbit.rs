// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Quotient metric on `V/G` and `SV/G`, boundary detection, sector angles and
//! orbit-equivalence tests.

use crate::catalog::CatalogAction;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Vector};
use crate::repr::{self, FiniteGroupData, RepresentationSpec};

/// Membership threshold for orbit-triviality decisions.
pub const MEMBERSHIP_TOL: f64 = 1e-7;
/// Distances in `(MEMBERSHIP_TOL, GUARD_BAND]` are ambiguous.
pub const GUARD_BAND: f64 = 10.0 * MEMBERSHIP_TOL;
/// Generic points are moved at least this far by every non-identity element.
const GENERIC_MIN_MOTION: f64 = 1e-4;

/// The group a quotient is taken by.
#[derive(Debug, Clone)]
pub enum GroupContext {
    Finite {
        id: String,
        generators: Vec<Matrix>,
        group: FiniteGroupData,
    },
    Catalog(CatalogAction),
}

/// A point of `V/G`, carried by a representative.
#[derive(Debug, Clone)]
pub struct QuotientPoint {
    pub representative: Vector,
    pub context_id: String,
}

impl GroupContext {
    pub fn finite(id: impl Into<String>, spec: &RepresentationSpec) -> Result<Self> {
        let group = repr::enumerate_group(spec)?;
        Ok(GroupContext::Finite {
            id: id.into(),
            generators: spec.generators.clone(),
            group,
        })
    }

    pub fn id(&self) -> String {
        match self {
            GroupContext::Finite { id, .. } => id.clone(),
            GroupContext::Catalog(a) => format!("catalog:{}", a.id),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            GroupContext::Finite { group, .. } => group.dimension(),
            GroupContext::Catalog(a) => a.dimension,
        }
    }

    pub fn finite_group(&self) -> Option<&FiniteGroupData> {
        match self {
            GroupContext::Finite { group, .. } => Some(group),
            GroupContext::Catalog(_) => None,
        }
    }

    pub fn point(&self, representative: Vector) -> QuotientPoint {
        QuotientPoint {
            representative,
            context_id: self.id(),
        }
    }

    /// Matrices an equivariant map must commute with: the generators of a
    /// finite group, or the Lie algebra of a connected catalog group.
    pub fn equivariance_generators(&self) -> Vec<Matrix> {
        match self {
            GroupContext::Finite { generators, .. } => generators.clone(),
            GroupContext::Catalog(a) => a.lie_generators(),
        }
    }

    /// `min_g |a - g b|` over the full group (finite) or the refined sampler
    /// (catalog).
    pub fn distance(&self, a: &Vector, b: &Vector) -> f64 {
        match self {
            GroupContext::Finite { group, .. } => group
                .elements
                .iter()
                .map(|g| (a - g * b).norm())
                .fold(f64::INFINITY, f64::min),
            GroupContext::Catalog(action) => action.orbit_distance(a, b, true),
        }
    }

    /// A random unit vector with trivial isotropy (finite case: every
    /// non-identity element moves it by at least 1e-4).
    pub fn generic_point(&self, rng: &mut linalg::Rng) -> Vector {
        let n = self.dimension();
        match self {
            GroupContext::Finite { group, .. } => {
                let mut x = linalg::random_unit_vector(rng, n);
                for _ in 0..1000 {
                    let ok = group
                        .elements
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != group.identity_index)
                        .all(|(_, g)| (g * &x - &x).norm() >= GENERIC_MIN_MOTION);
                    if ok {
                        break;
                    }
                    x = linalg::random_unit_vector(rng, n);
                }
                x
            }
            GroupContext::Catalog(_) => linalg::random_unit_vector(rng, n),
        }
    }
}

/// Distance in `V/G` between two points of the same context.
pub fn quotient_distance(ctx: &GroupContext, a: &QuotientPoint, b: &QuotientPoint) -> Result<f64> {
    let id = ctx.id();
    for p in [a, b] {
        if p.context_id != id {
            return Err(Error::ContextMismatch(p.context_id.clone(), id));
        }
        if p.representative.len() != ctx.dimension() {
            return Err(Error::VectorDimension {
                expected: ctx.dimension(),
                got: p.representative.len(),
            });
        }
    }
    Ok(ctx.distance(&a.representative, &b.representative))
}

fn chord_to_angle(chord: f64) -> f64 {
    2.0 * (chord / 2.0).min(1.0).asin()
}

fn check_unit(v: &Vector) -> Result<()> {
    let norm = v.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnit(norm));
    }
    Ok(())
}

/// Intrinsic distance in `SV/G` for the round unit sphere:
/// `min_g arccos <a, g b>`, evaluated through the chord for accuracy near 0.
pub fn sphere_quotient_distance(ctx: &GroupContext, a: &Vector, b: &Vector) -> Result<f64> {
    check_unit(a)?;
    check_unit(b)?;
    Ok(chord_to_angle(ctx.distance(a, b)))
}

/// Whether `V/G` has boundary.
///
/// Finite groups: some element is a hyperplane reflection (symmetric, so its
/// eigenvalues are `±1`, with trace `n - 2`, so exactly one is `-1`).
/// Catalog actions: stored metadata.
pub fn has_boundary(ctx: &GroupContext) -> bool {
    match ctx {
        GroupContext::Finite { group, .. } => {
            let n = group.dimension() as f64;
            group.elements.iter().any(|g| {
                linalg::max_abs_diff(g, &g.transpose()) <= 1e-9
                    && (g.trace() - (n - 2.0)).abs() <= 1e-9
            })
        }
        GroupContext::Catalog(a) => a.metadata.has_boundary,
    }
}

/// Estimate of the angle of the planar sector `SV/G` for a cohomogeneity-two
/// catalog action.
///
/// Draws `sample_count` random pairs of unit vectors; every pair that improves
/// the running maximum is refined by a seeded hill climb. Prefixes of the pair
/// sequence give subsets of the refined starts, so the estimate is
/// nondecreasing in `sample_count`.
pub fn sector_angle_estimate(
    action: &CatalogAction,
    sample_count: usize,
    seed: u64,
) -> Result<f64> {
    if action.metadata.cohomogeneity != 2 {
        return Err(Error::Cohomogeneity {
            got: action.metadata.cohomogeneity,
        });
    }
    let ctx = GroupContext::Catalog(action.clone());
    let n = action.dimension;
    let dist = |a: &Vector, b: &Vector| chord_to_angle(ctx.distance(a, b));

    let mut rng = linalg::rng(seed, 0x5ec);
    let mut best = f64::NEG_INFINITY;
    let mut records = Vec::new();
    for index in 0..sample_count {
        let a = linalg::random_unit_vector(&mut rng, n);
        let b = linalg::random_unit_vector(&mut rng, n);
        let d = dist(&a, &b);
        if d > best {
            best = d;
            records.push((index, a, b, d));
        }
    }
    let mut estimate = best.max(0.0);
    for (index, a, b, d) in records {
        let mut climb = linalg::rng(seed ^ 0x5ec7_0000, index as u64);
        estimate = estimate.max(hill_climb(&dist, a, b, d, &mut climb));
    }
    Ok(estimate)
}

fn hill_climb(
    dist: &impl Fn(&Vector, &Vector) -> f64,
    mut a: Vector,
    mut b: Vector,
    mut d: f64,
    rng: &mut linalg::Rng,
) -> f64 {
    let n = a.len();
    let mut step = 0.5;
    let mut failures = 0;
    for iter in 0..600 {
        let noise = linalg::gaussian_vector(rng, n) * (step / (n as f64).sqrt());
        let (na, nb) = if iter % 2 == 0 {
            let x = &a + noise;
            (x.normalize(), b.clone())
        } else {
            let x = &b + noise;
            (a.clone(), x.normalize())
        };
        let nd = dist(&na, &nb);
        if nd > d {
            a = na;
            b = nb;
            d = nd;
            failures = 0;
        } else {
            failures += 1;
            if failures >= 12 {
                step *= 0.5;
                failures = 0;
                if step < 1e-6 {
                    break;
                }
            }
        }
    }
    d
}

/// Whether `candidate` preserves every orbit: `d(candidate x, x) <= 1e-7` on
/// sampled generic points. Distances inside the guard band are an error.
pub fn orbit_equivalence_test(
    ctx: &GroupContext,
    candidate: &Matrix,
    sample_count: usize,
    seed: u64,
) -> Result<bool> {
    let mut rng = linalg::rng(seed, 0x0e);
    for _ in 0..sample_count {
        let x = ctx.generic_point(&mut rng);
        let d = ctx.distance(&(candidate * &x), &x);
        if d > GUARD_BAND {
            return Ok(false);
        }
        if d > MEMBERSHIP_TOL {
            return Err(Error::GuardBand(d));
        }
    }
    Ok(true)
}
