// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Representation input, finite-group enumeration and the trivial-factor split.

use std::collections::{HashMap, VecDeque};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, RankPolicy};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_GROUP_SIZE_CAP: usize = 20_000;
pub const DEFAULT_SEED: u64 = 0;

/// Two group elements closer than this (max norm) are identified.
pub const DEDUP_TOL: f64 = 1e-8;
/// Hash grid spacing for the dedup key.
const DEDUP_GRID: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Finite,
    Catalog(String),
}

impl Kind {
    pub fn label(&self) -> String {
        match self {
            Kind::Finite => "finite".to_string(),
            Kind::Catalog(id) => format!("catalog:{id}"),
        }
    }
}

/// A validated orthogonal representation.
#[derive(Debug, Clone)]
pub struct RepresentationSpec {
    pub dimension: usize,
    pub generators: Vec<Matrix>,
    pub kind: Kind,
    /// Orthogonality tolerance for the generators.
    pub tolerance: f64,
    pub group_size_cap: usize,
    pub seed: u64,
    /// Not part of the JSON document; override through the API.
    pub rank_policy: RankPolicy,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    dimension: i64,
    kind: String,
    #[serde(default)]
    generators: Vec<Vec<Vec<String>>>,
    tolerance: Option<f64>,
    #[serde(rename = "groupSizeCap")]
    group_size_cap: Option<i64>,
    seed: Option<u64>,
}

/// Parse and validate a representation document.
pub fn parse_spec(document: &str) -> Result<RepresentationSpec> {
    let raw: RawSpec =
        serde_json::from_str(document).map_err(|e| Error::Malformed(e.to_string()))?;
    if raw.dimension < 1 {
        return Err(Error::Malformed(format!(
            "dimension must be positive, got {}",
            raw.dimension
        )));
    }
    let dimension = raw.dimension as usize;
    let kind = if raw.kind == "finite" {
        Kind::Finite
    } else if let Some(id) = raw.kind.strip_prefix("catalog:") {
        Kind::Catalog(id.to_string())
    } else {
        return Err(Error::Malformed(format!("unknown kind {:?}", raw.kind)));
    };
    let tolerance = raw.tolerance.unwrap_or(DEFAULT_TOLERANCE);
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::Malformed(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let group_size_cap = match raw.group_size_cap {
        None => DEFAULT_GROUP_SIZE_CAP,
        Some(c) if c >= 1 => c as usize,
        Some(c) => {
            return Err(Error::Malformed(format!(
                "groupSizeCap must be positive, got {c}"
            )))
        }
    };

    let mut generators = Vec::with_capacity(raw.generators.len());
    for (index, rows) in raw.generators.iter().enumerate() {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NonSquare { index });
        }
        if n != dimension {
            return Err(Error::DimensionMismatch {
                index,
                rows: n,
                cols: n,
                dim: dimension,
            });
        }
        let mut m = Matrix::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                m[(i, j)] = f64::from_str(s.trim()).map_err(|_| {
                    Error::Malformed(format!(
                        "generator {index} entry ({i},{j}) {s:?} is not a decimal"
                    ))
                })?;
            }
        }
        generators.push(m);
    }

    let spec = RepresentationSpec {
        dimension,
        generators,
        kind,
        tolerance,
        group_size_cap,
        seed: raw.seed.unwrap_or(DEFAULT_SEED),
        rank_policy: RankPolicy::default(),
    };
    spec.validate()?;
    Ok(spec)
}

impl RepresentationSpec {
    /// Finite-kind spec from in-memory generators.
    pub fn finite(generators: Vec<Matrix>) -> Result<Self> {
        let dimension = generators.first().map(|g| g.nrows()).unwrap_or(0);
        let spec = RepresentationSpec {
            dimension,
            generators,
            kind: Kind::Finite,
            tolerance: DEFAULT_TOLERANCE,
            group_size_cap: DEFAULT_GROUP_SIZE_CAP,
            seed: DEFAULT_SEED,
            rank_policy: RankPolicy::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn catalog(id: &str, dimension: usize) -> Self {
        RepresentationSpec {
            dimension,
            generators: Vec::new(),
            kind: Kind::Catalog(id.to_string()),
            tolerance: DEFAULT_TOLERANCE,
            group_size_cap: DEFAULT_GROUP_SIZE_CAP,
            seed: DEFAULT_SEED,
            rank_policy: RankPolicy::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        if self.kind == Kind::Finite && self.generators.is_empty() {
            return Err(Error::Malformed(
                "finite kind needs at least one generator".into(),
            ));
        }
        for (index, g) in self.generators.iter().enumerate() {
            if g.nrows() != g.ncols() {
                return Err(Error::NonSquare { index });
            }
            if g.nrows() != self.dimension {
                return Err(Error::DimensionMismatch {
                    index,
                    rows: g.nrows(),
                    cols: g.ncols(),
                    dim: self.dimension,
                });
            }
            let residual = linalg::orthogonality_residual(g);
            if residual.is_nan() || residual > self.tolerance {
                return Err(Error::NonOrthogonal { index, residual });
            }
        }
        Ok(())
    }
}

/// The image of a finite group in `O(V)`, fully enumerated.
#[derive(Debug, Clone)]
pub struct FiniteGroupData {
    pub elements: Vec<Matrix>,
    pub identity_index: usize,
    pub order: usize,
    pub cayley_closed: bool,
    index: HashMap<Vec<i64>, Vec<usize>>,
}

fn dedup_key(m: &Matrix) -> Vec<i64> {
    m.iter().map(|v| (v / DEDUP_GRID).round() as i64).collect()
}

/// Keys reachable by perturbing `m` by up to `window` grid cells. Entries far
/// from a rounding boundary contribute a single value.
fn probe_keys(m: &Matrix, window: f64) -> Vec<Vec<i64>> {
    let base = dedup_key(m);
    let mut keys = vec![base.clone()];
    let mut borderline = 0;
    for (i, v) in m.iter().enumerate() {
        let scaled = v / DEDUP_GRID;
        let frac = scaled - scaled.floor();
        if (frac - 0.5).abs() < window && borderline < 6 {
            borderline += 1;
            let alt = if scaled.round() == scaled.floor() {
                base[i] + 1
            } else {
                base[i] - 1
            };
            let extra: Vec<Vec<i64>> = keys
                .iter()
                .map(|k| {
                    let mut k = k.clone();
                    k[i] = alt;
                    k
                })
                .collect();
            keys.extend(extra);
        }
    }
    keys
}

impl FiniteGroupData {
    fn new_with_identity(dim: usize) -> Self {
        let id = Matrix::identity(dim, dim);
        let mut index = HashMap::new();
        index.insert(dedup_key(&id), vec![0]);
        FiniteGroupData {
            elements: vec![id],
            identity_index: 0,
            order: 1,
            cayley_closed: false,
            index,
        }
    }

    /// Build from a list assumed to be a closed group (used for restrictions
    /// and images); rejects duplicates.
    pub fn from_elements(elements: Vec<Matrix>) -> Result<Self> {
        let dim = elements.first().map(|m| m.nrows()).unwrap_or(0);
        let mut g = FiniteGroupData::new_with_identity(dim);
        g.elements.clear();
        g.index.clear();
        g.order = 0;
        for m in elements {
            if g.find(&m)?.is_some() {
                return Err(Error::Internal("duplicate element in group list".into()));
            }
            g.insert(m);
        }
        g.identity_index = g
            .find(&Matrix::identity(dim, dim))?
            .ok_or_else(|| Error::Internal("group list lacks the identity".into()))?;
        g.cayley_closed = true;
        Ok(g)
    }

    fn insert(&mut self, m: Matrix) -> usize {
        let i = self.elements.len();
        self.index.entry(dedup_key(&m)).or_default().push(i);
        self.elements.push(m);
        self.order = self.elements.len();
        i
    }

    pub fn dimension(&self) -> usize {
        self.elements[0].nrows()
    }

    /// Index of the stored element within `DEDUP_TOL` of `m`, if any.
    pub fn find(&self, m: &Matrix) -> Result<Option<usize>> {
        let mut found = None;
        for key in probe_keys(m, 0.1) {
            if let Some(bucket) = self.index.get(&key) {
                for &i in bucket {
                    let d = linalg::max_abs_diff(&self.elements[i], m);
                    if d <= DEDUP_TOL {
                        found = Some(i);
                    } else if d <= 10.0 * DEDUP_TOL {
                        return Err(Error::DedupAmbiguity { distance: d });
                    }
                }
            }
        }
        Ok(found)
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        matches!(self.find(m), Ok(Some(_)))
    }
}

/// Breadth-first closure of the generators under multiplication.
pub fn enumerate_group(spec: &RepresentationSpec) -> Result<FiniteGroupData> {
    if spec.kind != Kind::Finite {
        return Err(Error::NotFinite);
    }
    enumerate_from_generators(&spec.generators, spec.group_size_cap)
}

pub(crate) fn enumerate_from_generators(
    generators: &[Matrix],
    cap: usize,
) -> Result<FiniteGroupData> {
    let dim = generators[0].nrows();
    let mut group = FiniteGroupData::new_with_identity(dim);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let product = g * &group.elements[i];
            if group.find(&product)?.is_none() {
                if group.order >= cap {
                    return Err(Error::GroupCapExceeded { cap });
                }
                let j = group.insert(product);
                queue.push_back(j);
            }
        }
    }
    group.cayley_closed = true;
    Ok(group)
}

/// `V = F + F^perp` with `F` the subspace fixed by the group.
#[derive(Debug, Clone)]
pub struct TrivialSplit {
    /// Columns: orthonormal basis of `F` (possibly zero columns).
    pub fixed_basis: Matrix,
    /// Columns: orthonormal basis of `F^perp`.
    pub complement_basis: Matrix,
    /// Generators in `complement_basis` coordinates.
    pub restricted_generators: Vec<Matrix>,
}

impl TrivialSplit {
    pub fn fixed_dim(&self) -> usize {
        self.fixed_basis.ncols()
    }

    pub fn complement_dim(&self) -> usize {
        self.complement_basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.complement_basis.nrows()
    }

    /// `C^T M C`.
    pub fn restrict(&self, m: &Matrix) -> Matrix {
        self.complement_basis.transpose() * m * &self.complement_basis
    }

    /// Extend a map of `F^perp` by the identity on `F`.
    pub fn embed(&self, m: &Matrix) -> Matrix {
        &self.complement_basis * m * self.complement_basis.transpose()
            + &self.fixed_basis * self.fixed_basis.transpose()
    }

    /// Extend a linear (Lie algebra) map of `F^perp` by zero on `F`.
    pub fn embed_linear(&self, m: &Matrix) -> Matrix {
        &self.complement_basis * m * self.complement_basis.transpose()
    }
}

/// Fixed subspace of a finite-kind spec, from its generators.
pub fn fixed_subspace(spec: &RepresentationSpec) -> Result<TrivialSplit> {
    let n = spec.dimension;
    let id = Matrix::identity(n, n);
    let system: Vec<Matrix> = spec.generators.iter().map(|g| g - &id).collect();
    split_from_system(n, &system, &spec.generators, spec.rank_policy)
}

/// `F = intersection of ker(M)` over `system`; `to_restrict` are expressed in
/// `F^perp` coordinates.
pub(crate) fn split_from_system(
    n: usize,
    system: &[Matrix],
    to_restrict: &[Matrix],
    policy: RankPolicy,
) -> Result<TrivialSplit> {
    let mut stacked = Matrix::zeros(system.len() * n, n);
    for (k, m) in system.iter().enumerate() {
        stacked.view_mut((k * n, 0), (n, n)).copy_from(m);
    }
    let fixed_basis = linalg::null_space(&stacked, policy)?;
    let complement_basis = linalg::orthonormal_complement(&fixed_basis, n, policy)?;
    let restricted_generators = to_restrict
        .iter()
        .map(|g| complement_basis.transpose() * g * &complement_basis)
        .collect();
    Ok(TrivialSplit {
        fixed_basis,
        complement_basis,
        restricted_generators,
    })
}
