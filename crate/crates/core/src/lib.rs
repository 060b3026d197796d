// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Identity component of the isometry group of the orbit space `V/G` of an
//! orthogonal representation.
//!
//! The pipeline splits off the trivial factors of `V`, enumerates the image of
//! a finite group (or takes a continuous action from a small catalog), computes
//! the commutant algebra and the isotypic decomposition, classifies each
//! isotypic block as real, complex or quaternionic, and assembles the
//! equivariant isometry group `Isom_G(V)_0 = prod SO(n_i) | U(n_i) | Sp(n_i)`.
//! The kernel of its action on `V/G` is then found by orbit-equivalence tests
//! against a brute-force quotient metric.

pub mod catalog;
pub mod cli;
pub mod commutant;
pub mod error;
pub mod fixtures;
pub mod lift;
pub mod linalg;
pub mod orbit;
pub mod quotient;
pub mod repr;
pub mod verify;

pub use catalog::CatalogAction;
pub use commutant::{EquivariantIsometryGroup, IsotypicComponent, SchurType};
pub use error::{Error, Result};
pub use orbit::{GroupContext, QuotientPoint};
pub use quotient::{analyze, quotient_isometry_group, AnalyzeOptions, QuotientIsometryReport};
pub use repr::{FiniteGroupData, RepresentationSpec, TrivialSplit};
