// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! `Isom(V/G)_0` as `Isom(F)_0 x Isom_G(F^perp)_0 / ker(p)`.
//!
//! `ker(p)` is searched among the center of `Isom_G(V)_0` (sign blocks of
//! `SO(2k)` and `Sp(n)` factors, central circles of `U(n)` and `SO(2)`
//! factors, central elements of `G` in the identity component) plus whole
//! factors, each candidate decided by an orbit-equivalence test. A normal
//! subgroup of a connected group with discrete intersection is central, and
//! the connected normal subgroups of the product are sub-products times
//! central tori, so this candidate list is complete when `V/G` has no
//! boundary.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogAction;
use crate::commutant::{
    self, EquivariantIsometryGroup, IsotypicComponent, SchurType, ISOTYPIC_METHOD,
};
use crate::error::{Error, Result, StageExt};
use crate::linalg::{self, Matrix, RankPolicy};
use crate::orbit::{self, GroupContext};
use crate::repr::{self, FiniteGroupData, Kind, RepresentationSpec, TrivialSplit};

/// Generic points used per orbit-equivalence decision in the kernel search.
pub const KERNEL_SAMPLES: usize = 24;
/// Circle parameters at which a central circle is probed; irrational ratios
/// avoid aliasing with rotation angles of finite subgroups.
pub const CIRCLE_TIMES: [f64; 3] = [0.1, 0.37, 1.01];
const FACTOR_PROBES: usize = 5;

pub const FORMULA_NO_BOUNDARY: &str = "proposition-4.1b";
pub const FORMULA_SEARCH: &str = "central-kernel-search";

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    /// Catalog grid density per circle parameter.
    pub density: usize,
    pub kernel_samples: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            density: crate::catalog::DEFAULT_DENSITY,
            kernel_samples: KERNEL_SAMPLES,
        }
    }
}

/// Elements of `Z(G)` lying in `Isom_G(V)_0`, in `F^perp` coordinates, and
/// (for connected catalog groups) generators of the central circles of `G`.
#[derive(Debug, Clone, Default)]
pub struct CenterInComponent {
    pub elements: Vec<Matrix>,
    pub circle_generators: Vec<Matrix>,
}

#[derive(Debug, Clone)]
pub struct KernelDescription {
    /// Discrete kernel elements (identity included), `F^perp` coordinates.
    pub finite_part: Vec<Matrix>,
    /// Lie basis indices spanning the identity component of the kernel.
    pub continuous_part: Vec<usize>,
    /// Factors whose central circle acts trivially on `V/G`.
    pub circle_factors: Vec<usize>,
    /// Factors acting trivially on `V/G` as a whole.
    pub trivial_factors: Vec<usize>,
    pub contains_center_of_g: bool,
    /// Every discrete kernel element commutes with `Isom_G(V)_0`.
    pub central: bool,
}

/// Brute force: elements commuting with every element.
pub fn center_of_group(group: &FiniteGroupData) -> Vec<Matrix> {
    center_commuting_with(group, &group.elements)
}

/// Elements commuting with `generators` (equivalent to the full center).
pub fn center_commuting_with(group: &FiniteGroupData, generators: &[Matrix]) -> Vec<Matrix> {
    group
        .elements
        .iter()
        .filter(|z| {
            generators
                .iter()
                .all(|g| linalg::commutator_residual(z, g) <= 1e-9)
        })
        .cloned()
        .collect()
}

fn nullity_of_plus_identity(z: &Matrix) -> usize {
    let n = z.nrows();
    (z + Matrix::identity(n, n))
        .singular_values()
        .iter()
        .filter(|s| **s < 1e-6)
        .count()
}

/// Central elements whose coordinates lie in the identity component of every
/// factor. Only real-type factors impose a condition: the coordinate matrix
/// `M` in `O(n_i)` must have `det M = +1`. `z` restricted to the block is
/// `M (x) I_{d_i}`, so the `-1` eigenspace of the block has dimension
/// `d_i` times that of `M`.
pub fn center_in_component(
    center: &[Matrix],
    split: &TrivialSplit,
    components: &[IsotypicComponent],
) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    'element: for z in center {
        let zr = split.restrict(z);
        for comp in components {
            let b = &comp.basis;
            let block = b.transpose() * &zr * b;
            let residual = linalg::max_abs(&(&zr * b - b * &block));
            if residual > 1e-8 {
                return Err(Error::CoordinateResidual(residual));
            }
            if comp.schur_type != SchurType::Real {
                continue;
            }
            let minus = nullity_of_plus_identity(&block);
            if !minus.is_multiple_of(comp.irreducible_dim) {
                return Err(Error::Internal(format!(
                    "-1 eigenspace of dimension {minus} is not a multiple of {}",
                    comp.irreducible_dim
                )));
            }
            if (minus / comp.irreducible_dim) % 2 == 1 {
                continue 'element;
            }
        }
        out.push(zr);
    }
    Ok(out)
}

/// Frobenius-normalized generators of the center of a Lie algebra.
fn central_circles(lie: &[Matrix], policy: RankPolicy) -> Result<Vec<Matrix>> {
    let basis = linalg::frobenius_orthonormalize(lie, 1e-12);
    let center = commutant::algebra_center(&basis, policy)?;
    Ok(linalg::frobenius_orthonormalize(&center, 1e-8))
}

fn contains(set: &[Matrix], m: &Matrix) -> bool {
    set.iter()
        .any(|s| linalg::max_abs_diff(s, m) <= repr::DEDUP_TOL)
}

/// Outcome of probing a one-parameter subgroup at several parameters.
fn all_or_none(results: &[bool], what: &str) -> Result<bool> {
    if results.iter().all(|r| *r) {
        Ok(true)
    } else if results.iter().all(|r| !*r) {
        Ok(false)
    } else {
        Err(Error::KernelAmbiguous(format!("{what}: {results:?}")))
    }
}

/// Search `ker(p)` among central candidates and whole factors.
pub fn compute_kernel(
    ctx: &GroupContext,
    split: &TrivialSplit,
    equiv: &EquivariantIsometryGroup,
    components: &[IsotypicComponent],
    cic: &CenterInComponent,
    samples: usize,
    seed: u64,
) -> Result<KernelDescription> {
    let n = equiv.dim;
    let id = Matrix::identity(n, n);
    let trivial_on_quotient =
        |k: &Matrix| orbit::orbit_equivalence_test(ctx, &split.embed(k), samples, seed);

    let mut circle_factors = Vec::new();
    let mut trivial_factors = Vec::new();
    for (fi, factor) in equiv.factors.iter().enumerate() {
        let block_dim = components[factor.component].dim() as f64;
        let circle_killed = match factor.circle {
            Some(c) => {
                // unit complex structure on the block: J^2 = -I
                let j = &equiv.lie_basis[c] * block_dim.sqrt();
                let results = CIRCLE_TIMES
                    .iter()
                    .map(|t| trivial_on_quotient(&linalg::expm(&(&j * *t))))
                    .collect::<Result<Vec<_>>>()?;
                all_or_none(&results, &format!("circle of factor {}", factor.name()))?
            }
            None => false,
        };
        let whole_killed = if factor.dim() == 0 {
            false
        } else if factor.dim() == 1 && factor.circle.is_some() {
            circle_killed
        } else {
            let mut rng = linalg::rng(seed, 0xfac0 + fi as u64);
            let results = (0..FACTOR_PROBES)
                .map(|_| trivial_on_quotient(&equiv.random_factor_element(fi, &mut rng)))
                .collect::<Result<Vec<_>>>()?;
            all_or_none(&results, &format!("factor {}", factor.name()))?
        };
        if whole_killed {
            trivial_factors.push(fi);
        } else if circle_killed {
            circle_factors.push(fi);
        }
    }

    let mut continuous_part = Vec::new();
    for (fi, factor) in equiv.factors.iter().enumerate() {
        if trivial_factors.contains(&fi) {
            continuous_part.extend(factor.lie_range.clone());
        } else if circle_factors.contains(&fi) {
            continuous_part.push(factor.circle.expect("circle factor"));
        }
    }

    let mut candidates: Vec<Matrix> = vec![id.clone()];
    for z in &cic.elements {
        if !contains(&candidates, z) {
            candidates.push(z.clone());
        }
    }
    for (fi, factor) in equiv.factors.iter().enumerate() {
        let eligible = match factor.schur_type {
            SchurType::Real => factor.multiplicity % 2 == 0,
            SchurType::Quaternionic => true,
            SchurType::Complex => false,
        };
        if !eligible || trivial_factors.contains(&fi) || circle_factors.contains(&fi) {
            continue;
        }
        let p = components[factor.component].projector();
        let sign = &id - p * 2.0;
        let extra: Vec<Matrix> = candidates.iter().map(|c| &sign * c).collect();
        for e in extra {
            if !contains(&candidates, &e) {
                candidates.push(e);
            }
        }
    }
    let mut finite_part = vec![id.clone()];
    for c in candidates.iter().skip(1) {
        if trivial_on_quotient(c)? {
            finite_part.push(c.clone());
        }
    }

    let central = finite_part.iter().all(|k| {
        equiv
            .lie_basis
            .iter()
            .all(|a| linalg::commutator_residual(k, a) <= 1e-8)
    });

    let mut contains_center_of_g = cic.elements.iter().all(|z| contains(&finite_part, z));
    for z in &cic.circle_generators {
        let results = CIRCLE_TIMES
            .iter()
            .map(|t| trivial_on_quotient(&linalg::expm(&(z * *t))))
            .collect::<Result<Vec<_>>>()?;
        contains_center_of_g &= all_or_none(&results, "central circle of G")?;
    }

    Ok(KernelDescription {
        finite_part,
        continuous_part,
        circle_factors,
        trivial_factors,
        contains_center_of_g,
        central,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompactFactor {
    /// Factor of `Isom_G(V)_0` with its kernel annotation.
    pub name: String,
    #[serde(rename = "type")]
    pub schur_type: String,
    pub multiplicity: usize,
    /// Isomorphism type of the factor modulo its kernel part.
    pub quotient: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelSummary {
    pub finite_order: usize,
    pub circle_directions: usize,
    #[serde(rename = "containsCenterOfG")]
    pub contains_center_of_g: bool,
    pub central: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportNotes {
    pub input: String,
    pub euclidean_factor: String,
    pub quotient_dim: usize,
    pub equivariant_dim: usize,
    pub isotypic_method: String,
    pub kernel_method: String,
    pub rng: String,
    pub catalog_density: Option<usize>,
    pub distance_error_bound: Option<f64>,
    pub caveats: Vec<String>,
}

/// Structural description of `Isom(V/G)_0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientIsometryReport {
    pub euclidean_factor_dim: usize,
    pub compact_factors: Vec<CompactFactor>,
    pub kernel: KernelSummary,
    pub boundary: bool,
    pub formula_applied: String,
    pub rank: usize,
    #[serde(rename = "theoremB")]
    pub theorem_b: String,
    #[serde(rename = "theoremC")]
    pub theorem_c: String,
    pub seed: u64,
    pub irreducible: bool,
    pub notes: ReportNotes,
}

/// All intermediate stages of one run.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub spec: RepresentationSpec,
    pub context: GroupContext,
    pub split: TrivialSplit,
    /// Elements averaged over for Frobenius–Schur sums, `F^perp` coordinates.
    pub averaging: Vec<Matrix>,
    pub commutant: Vec<Matrix>,
    pub components: Vec<IsotypicComponent>,
    pub equivariant: EquivariantIsometryGroup,
    pub boundary: bool,
    /// `Z(G)` in `V` coordinates (finite groups only).
    pub center: Vec<Matrix>,
    pub center_in_component: CenterInComponent,
    pub kernel: KernelDescription,
    pub report: QuotientIsometryReport,
}

/// Run the full pipeline with default options.
pub fn quotient_isometry_group(spec: &RepresentationSpec) -> Result<QuotientIsometryReport> {
    analyze(spec, AnalyzeOptions::default()).map(|a| a.report)
}

pub fn analyze(spec: &RepresentationSpec, options: AnalyzeOptions) -> Result<Analysis> {
    let policy = spec.rank_policy;
    let seed = spec.seed;
    let n = spec.dimension;
    let (context, split, averaging_full) = match &spec.kind {
        Kind::Finite => {
            let context = GroupContext::finite("finite", spec).stage("enumerate")?;
            let split = repr::fixed_subspace(spec).stage("fixed-subspace")?;
            let elements = context.finite_group().expect("finite").elements.clone();
            (context, split, elements)
        }
        Kind::Catalog(id) => {
            let action = CatalogAction::by_id(id)
                .stage("catalog")?
                .with_density(options.density);
            if action.dimension != n {
                return Err(Error::VectorDimension {
                    expected: action.dimension,
                    got: n,
                })
                .stage("catalog");
            }
            let lie = action.lie_generators();
            let split = repr::split_from_system(n, &lie, &lie, policy).stage("fixed-subspace")?;
            let quadrature = action.quadrature();
            (GroupContext::Catalog(action), split, quadrature)
        }
    };
    let averaging: Vec<Matrix> = averaging_full.iter().map(|g| split.restrict(g)).collect();

    let commutant = commutant::commutant_basis(&split, policy).stage("commutant")?;
    let blocks = commutant::isotypic_split(&commutant, seed, policy).stage("isotypic")?;
    let components = blocks
        .iter()
        .map(|b| commutant::classify_component(b, &averaging, &commutant, policy))
        .collect::<Result<Vec<_>>>()
        .stage("classify")?;
    let covered: usize = components.iter().map(IsotypicComponent::dim).sum();
    if covered != split.complement_dim() {
        return Err(Error::Internal(format!(
            "components cover {covered} of {} dimensions",
            split.complement_dim()
        )))
        .stage("isotypic");
    }
    if commutant::predicted_commutant_dim(&components) != commutant.len() {
        return Err(Error::Internal(format!(
            "commutant dimension {} differs from sum n_i^2 t_i = {}",
            commutant.len(),
            commutant::predicted_commutant_dim(&components)
        )))
        .stage("classify");
    }
    let equivariant = commutant::equivariant_isometry_group(
        &components,
        &commutant,
        &split.restricted_generators,
        split.complement_dim(),
        policy,
    )
    .stage("equivariant")?;

    let boundary = orbit::has_boundary(&context);

    let (center, cic) = match &context {
        GroupContext::Finite {
            group, generators, ..
        } => {
            let center = center_commuting_with(group, generators);
            let elements = center_in_component(&center, &split, &components).stage("center")?;
            (
                center,
                CenterInComponent {
                    elements,
                    circle_generators: Vec::new(),
                },
            )
        }
        GroupContext::Catalog(_) => {
            let circles = central_circles(&split.restricted_generators, policy).stage("center")?;
            (
                Vec::new(),
                CenterInComponent {
                    elements: Vec::new(),
                    circle_generators: circles,
                },
            )
        }
    };

    let kernel = compute_kernel(
        &context,
        &split,
        &equivariant,
        &components,
        &cic,
        options.kernel_samples,
        seed,
    )
    .stage("kernel")?;

    let formula = if boundary {
        FORMULA_SEARCH
    } else {
        check_no_boundary_formula(&kernel, &cic).stage("kernel")?;
        FORMULA_NO_BOUNDARY
    };

    let report = assemble_report(
        spec,
        &context,
        &split,
        &components,
        &equivariant,
        &kernel,
        boundary,
        formula,
        options.kernel_samples,
    );
    Ok(Analysis {
        spec: spec.clone(),
        context,
        split,
        averaging,
        commutant,
        components,
        equivariant,
        boundary,
        center,
        center_in_component: cic,
        kernel,
        report,
    })
}

/// Without boundary the kernel must be exactly `Z(G) cap Isom_G(V)_0`.
fn check_no_boundary_formula(kernel: &KernelDescription, cic: &CenterInComponent) -> Result<()> {
    let mut expected = cic.elements.clone();
    if expected.is_empty() {
        if let Some(k) = kernel.finite_part.first() {
            expected.push(k.clone());
        }
    }
    let same_discrete = expected.len() == kernel.finite_part.len()
        && expected.iter().all(|z| contains(&kernel.finite_part, z));
    if !same_discrete {
        return Err(Error::BoundaryFormula(format!(
            "discrete kernel of order {} but {} central elements in the identity component",
            kernel.finite_part.len(),
            expected.len()
        )));
    }
    if kernel.continuous_part.len() != cic.circle_generators.len() {
        return Err(Error::BoundaryFormula(format!(
            "kernel has {} circle directions, center of G has {}",
            kernel.continuous_part.len(),
            cic.circle_generators.len()
        )));
    }
    Ok(())
}

/// Kernel elements supported on a single block.
fn block_kernel_order(kernel: &KernelDescription, comp: &IsotypicComponent) -> usize {
    let p = comp.projector();
    let n = p.nrows();
    let outside = Matrix::identity(n, n) - &p;
    kernel
        .finite_part
        .iter()
        .filter(|k| linalg::max_abs_diff(&(&outside * *k * &outside), &outside) <= 1e-8)
        .count()
}

fn factor_names(base: &str, st: SchurType, n: usize, killed: Killed) -> (String, String) {
    match killed {
        Killed::Whole => (format!("{base}/{base}"), "1".to_string()),
        Killed::Circle => {
            let q = if n == 2 {
                "SO(3)".to_string()
            } else {
                format!("PU({n})")
            };
            (format!("{base}/U(1)"), q)
        }
        Killed::Discrete(k) if k > 1 => {
            let name = match st {
                SchurType::Complex => format!("{base}/Z_{k}"),
                _ => format!("{base}/{{±I}}"),
            };
            let q = match (st, n) {
                (SchurType::Complex, 1) => "U(1)".to_string(),
                (SchurType::Real, 2) => "SO(2)".to_string(),
                (SchurType::Quaternionic, 1) => "SO(3)".to_string(),
                _ => name.clone(),
            };
            (name, q)
        }
        Killed::Discrete(_) => {
            let q = if st == SchurType::Real && n <= 1 {
                "1".to_string()
            } else {
                base.to_string()
            };
            (base.to_string(), q)
        }
    }
}

#[derive(Clone, Copy)]
enum Killed {
    Whole,
    Circle,
    Discrete(usize),
}

#[allow(clippy::too_many_arguments)]
fn assemble_report(
    spec: &RepresentationSpec,
    context: &GroupContext,
    split: &TrivialSplit,
    components: &[IsotypicComponent],
    equiv: &EquivariantIsometryGroup,
    kernel: &KernelDescription,
    boundary: bool,
    formula: &str,
    kernel_samples: usize,
) -> QuotientIsometryReport {
    let mut compact_factors = Vec::new();
    let mut rank = 0;
    let mut product_of_block_orders = 1;
    for (fi, factor) in equiv.factors.iter().enumerate() {
        let comp = &components[factor.component];
        let killed = if kernel.trivial_factors.contains(&fi) {
            Killed::Whole
        } else if kernel.circle_factors.contains(&fi) {
            Killed::Circle
        } else {
            let k = block_kernel_order(kernel, comp);
            product_of_block_orders *= k.max(1);
            Killed::Discrete(k)
        };
        rank += match killed {
            Killed::Whole => 0,
            Killed::Circle => factor.rank() - 1,
            Killed::Discrete(_) => factor.rank(),
        };
        let (name, quotient) = factor_names(
            &factor.name(),
            factor.schur_type,
            factor.multiplicity,
            killed,
        );
        let name = if name == quotient {
            name
        } else {
            format!("{name} ≅ {quotient}")
        };
        compact_factors.push(CompactFactor {
            name,
            schur_type: factor.schur_type.label().to_string(),
            multiplicity: factor.multiplicity,
            quotient,
        });
    }

    let f = split.fixed_dim();
    let euclid_dim = f + f * f.saturating_sub(1) / 2;
    let quotient_dim = euclid_dim + equiv.total_dim - kernel.continuous_part.len();
    let irreducible = f == 0 && components.len() == 1 && components[0].multiplicity == 1;

    let mut caveats = Vec::new();
    if boundary {
        caveats.push(
            "V/G has boundary: the kernel is searched among central elements and whole factors; completeness is not claimed"
                .to_string(),
        );
    }
    if kernel.finite_part.len() > product_of_block_orders {
        caveats.push("kernel contains elements acting nontrivially on several factors".to_string());
    }
    let (catalog_density, distance_error_bound) = match context {
        GroupContext::Catalog(a) => (Some(a.density), Some(a.grid_error_bound(1.0))),
        GroupContext::Finite { .. } => (None, None),
    };

    let mut report = QuotientIsometryReport {
        euclidean_factor_dim: f,
        compact_factors,
        kernel: KernelSummary {
            finite_order: kernel.finite_part.len(),
            circle_directions: kernel.continuous_part.len(),
            contains_center_of_g: kernel.contains_center_of_g,
            central: kernel.central,
        },
        boundary,
        formula_applied: formula.to_string(),
        rank,
        theorem_b: String::new(),
        theorem_c: String::new(),
        seed: spec.seed,
        irreducible,
        notes: ReportNotes {
            input: spec.kind.label(),
            euclidean_factor: if f == 0 {
                "trivial".to_string()
            } else {
                format!("Isom(R^{f})_0 = R^{f} x| SO({f}), dim {euclid_dim}")
            },
            quotient_dim,
            equivariant_dim: equiv.total_dim,
            isotypic_method: format!("method: {ISOTYPIC_METHOD}"),
            kernel_method: format!(
                "center of Isom_G(V)_0 probed at t = {CIRCLE_TIMES:?} plus {FACTOR_PROBES} whole-factor probes, {kernel_samples} generic points each"
            ),
            rng: linalg::RNG_NAME.to_string(),
            catalog_density,
            distance_error_bound,
            caveats,
        },
    };
    report.theorem_b = pass_fail(verify_theorem_b(&report)).to_string();
    report.theorem_c = match classify_irreducible(&report).theorem_c {
        None => "n/a".to_string(),
        Some(ok) => pass_fail(ok).to_string(),
    };
    report
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Leading `SO(n)`, `U(n)` or `Sp(n)` of a factor name.
fn classical_base(name: &str) -> Option<(&str, usize)> {
    let (family, rest) = ["SO(", "Sp(", "U("]
        .iter()
        .find_map(|p| name.strip_prefix(p).map(|r| (&p[..p.len() - 1], r)))?;
    let close = rest.find(')')?;
    let n = rest[..close].parse().ok()?;
    Some((family, n))
}

/// Every compact factor is classical and the kernel is central, so up to a
/// finite cover the result is a torus times classical simple groups.
pub fn verify_theorem_b(report: &QuotientIsometryReport) -> bool {
    report
        .compact_factors
        .iter()
        .all(|f| classical_base(&f.name).is_some())
        && report.kernel.central
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IrreducibleClass {
    FiniteGroup,
    TrivialOrU1,
    TrivialOrSp1OrSo3,
    NotIrreducible,
}

impl fmt::Display for IrreducibleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibleClass::FiniteGroup => "finite-group",
            IrreducibleClass::TrivialOrU1 => "trivial-or-U1",
            IrreducibleClass::TrivialOrSp1OrSo3 => "trivial-or-Sp1-or-SO3",
            IrreducibleClass::NotIrreducible => "not-irreducible",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleVerdict {
    pub class: IrreducibleClass,
    /// Computed isomorphism type of `Isom(V/G)_0`.
    pub computed: String,
    pub rank: usize,
    /// `Some(rank <= 1)` for irreducible representations.
    pub theorem_c: Option<bool>,
}

pub fn classify_irreducible(report: &QuotientIsometryReport) -> IrreducibleVerdict {
    let single = report.compact_factors.len() == 1
        && report.compact_factors[0].multiplicity == 1
        && report.euclidean_factor_dim == 0;
    if !single {
        return IrreducibleVerdict {
            class: IrreducibleClass::NotIrreducible,
            computed: String::new(),
            rank: report.rank,
            theorem_c: None,
        };
    }
    let factor = &report.compact_factors[0];
    let class = match factor.schur_type.as_str() {
        "real" => IrreducibleClass::FiniteGroup,
        "complex" => IrreducibleClass::TrivialOrU1,
        _ => IrreducibleClass::TrivialOrSp1OrSo3,
    };
    IrreducibleVerdict {
        class,
        computed: factor.quotient.clone(),
        rank: report.rank,
        theorem_c: Some(report.rank <= 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rotation2;
    use std::f64::consts::PI;

    fn run(gens: Vec<Matrix>) -> Analysis {
        analyze(
            &RepresentationSpec::finite(gens).unwrap(),
            AnalyzeOptions::default(),
        )
        .unwrap()
    }

    fn reflection() -> Matrix {
        Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
    }

    #[test]
    fn centers_by_brute_force() {
        let d4 = run(vec![rotation2(PI / 2.0), reflection()]);
        let group = d4.context.finite_group().unwrap();
        let z = center_of_group(group);
        assert_eq!(z.len(), 2);
        assert!(contains(&z, &Matrix::identity(2, 2)) && contains(&z, &-Matrix::identity(2, 2)));
        assert_eq!(d4.center.len(), 2);

        let c5 = run(vec![rotation2(2.0 * PI / 5.0)]);
        assert_eq!(center_of_group(c5.context.finite_group().unwrap()).len(), 5);
    }

    #[test]
    fn center_in_identity_component() {
        assert_eq!(
            run(vec![-Matrix::identity(4, 4)])
                .center_in_component
                .elements
                .len(),
            2
        );
        assert_eq!(
            run(vec![-Matrix::identity(3, 3)])
                .center_in_component
                .elements
                .len(),
            1
        );
        assert_eq!(
            run(vec![rotation2(2.0 * PI / 5.0)])
                .center_in_component
                .elements
                .len(),
            5
        );
        assert_eq!(
            run(vec![rotation2(PI / 2.0), reflection()])
                .center_in_component
                .elements
                .len(),
            1
        );
    }

    #[test]
    fn c5_kernel_is_the_group() {
        let a = run(vec![rotation2(2.0 * PI / 5.0)]);
        assert_eq!(a.kernel.finite_part.len(), 5);
        assert!(a.kernel.continuous_part.is_empty());
        let r = &a.report;
        assert_eq!(r.compact_factors[0].quotient, "U(1)");
        assert_eq!(r.compact_factors[0].name, "U(1)/Z_5 ≅ U(1)");
        assert_eq!((r.rank, r.boundary), (1, false));
        assert_eq!(r.formula_applied, FORMULA_NO_BOUNDARY);
    }

    #[test]
    fn sign_group_on_r4() {
        let r = run(vec![-Matrix::identity(4, 4)]).report;
        assert_eq!(r.compact_factors[0].name, "SO(4)/{±I}");
        assert_eq!((r.rank, r.boundary, r.kernel.finite_order), (2, false, 2));
        assert_eq!(r.theorem_b, "pass");
        assert_eq!(r.theorem_c, "n/a");
    }

    #[test]
    fn trivial_group_is_euclidean_only() {
        let r = run(vec![Matrix::identity(3, 3)]).report;
        assert_eq!(r.euclidean_factor_dim, 3);
        assert!(r.compact_factors.is_empty());
        assert_eq!(r.notes.quotient_dim, 6);
        assert_eq!(r.kernel.finite_order, 1);
    }

    #[test]
    fn irreducible_trichotomy() {
        let d4 = run(vec![rotation2(PI / 2.0), reflection()]).report;
        let v = classify_irreducible(&d4);
        assert_eq!(
            (v.class, v.rank, v.theorem_c),
            (IrreducibleClass::FiniteGroup, 0, Some(true))
        );
        assert_eq!(d4.formula_applied, FORMULA_SEARCH);

        let c5 = classify_irreducible(&run(vec![rotation2(2.0 * PI / 5.0)]).report);
        assert_eq!(
            (c5.class, c5.computed.as_str()),
            (IrreducibleClass::TrivialOrU1, "U(1)")
        );
    }

    #[test]
    fn theorem_b_parser() {
        assert_eq!(classical_base("Sp(1)/{±I}"), Some(("Sp", 1)));
        assert_eq!(classical_base("U(12)/Z_3"), Some(("U", 12)));
        assert_eq!(classical_base("SO(4)"), Some(("SO", 4)));
        assert_eq!(classical_base("G2"), None);
    }
}
