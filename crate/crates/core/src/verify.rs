// Copyright 2026 The orbit-isom Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite AC1..AC9. Detail strings depend only on the seed;
//! runtime limits enter as pass/fail only, so same-seed reports are
//! byte-identical.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::catalog::{self, random_rotation3, CatalogAction};
use crate::commutant;
use crate::error::Result;
use crate::fixtures;
use crate::lift;
use crate::linalg::{self, Matrix};
use crate::orbit;
use crate::quotient::{self, analyze, Analysis, AnalyzeOptions, IrreducibleClass};
use crate::repr::RepresentationSpec;

#[derive(Debug, Clone, Copy)]
pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    pub tags: &'static [&'static str],
    run: fn(u64) -> Outcome,
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from(r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Outcome { passed, detail },
            Err(e) => Outcome {
                passed: false,
                detail: format!("error: {e}"),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
    pub all_passed: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            let verdict = if c.passed { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:<4} {:<4} {:<26} {}",
                c.id, verdict, c.title, c.detail
            );
        }
        let _ = writeln!(
            out,
            "{} of {} criteria passed (seed {})",
            self.criteria.iter().filter(|c| c.passed).count(),
            self.criteria.len(),
            self.seed
        );
        out
    }
}

pub const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: "AC1",
        title: "Hopf pipeline",
        tags: &["hopf", "pipeline"],
        run: ac1_hopf_pipeline,
    },
    Criterion {
        id: "AC2",
        title: "Hopf metric",
        tags: &["hopf", "metric"],
        run: ac2_hopf_metric,
    },
    Criterion {
        id: "AC3",
        title: "Hopf lifting",
        tags: &["hopf", "lift"],
        run: ac3_hopf_lifting,
    },
    Criterion {
        id: "AC4",
        title: "Sector angles",
        tags: &["sector", "catalog"],
        run: ac4_sector_angles,
    },
    Criterion {
        id: "AC5",
        title: "Irreducible trichotomy",
        tags: &["irreducible", "fixtures"],
        run: ac5_trichotomy,
    },
    Criterion {
        id: "AC6",
        title: "Central kernel",
        tags: &["kernel", "fixtures"],
        run: ac6_kernel,
    },
    Criterion {
        id: "AC7",
        title: "Descend property",
        tags: &["descend", "fixtures"],
        run: ac7_descend,
    },
    Criterion {
        id: "AC8",
        title: "Structural validators",
        tags: &["structure", "fixtures"],
        run: ac8_structure,
    },
    Criterion {
        id: "AC9",
        title: "Determinism",
        tags: &["determinism"],
        run: ac9_determinism,
    },
];

/// Whether a criterion is selected by a comma-separated filter of ids or tags.
pub fn selected(c: &Criterion, only: Option<&str>) -> bool {
    match only {
        None => true,
        Some(filter) => filter
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .any(|f| {
                f.eq_ignore_ascii_case(c.id) || c.tags.iter().any(|t| t.eq_ignore_ascii_case(f))
            }),
    }
}

pub fn run_suite(seed: u64, only: Option<&str>) -> SuiteReport {
    let criteria: Vec<CriterionResult> = CRITERIA
        .iter()
        .filter(|c| selected(c, only))
        .map(|c| {
            let o = (c.run)(seed);
            CriterionResult {
                id: c.id.to_string(),
                title: c.title.to_string(),
                passed: o.passed,
                detail: o.detail,
            }
        })
        .collect();
    let all_passed = criteria.iter().all(|c| c.passed);
    SuiteReport {
        seed,
        criteria,
        all_passed,
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

fn catalog_spec(id: &str) -> Result<RepresentationSpec> {
    let action = CatalogAction::by_id(id)?;
    Ok(RepresentationSpec::catalog(id, action.dimension))
}

fn ac1_hopf_pipeline(seed: u64) -> Outcome {
    Outcome::from((|| {
        let start = Instant::now();
        let spec = catalog_spec(catalog::HOPF)?.with_seed(seed);
        let a = analyze(&spec, AnalyzeOptions::default())?;
        let fast = within(start.elapsed(), 30);
        let eq = &a.equivariant;
        let r = &a.report;
        let factor = &r.compact_factors;
        let ok = eq.factors.len() == 1
            && eq.factors[0].name() == "U(2)"
            && eq.total_dim == 4
            && !r.boundary
            && r.kernel.circle_directions == 1
            && r.kernel.finite_order == 1
            && a.kernel.circle_factors == vec![0]
            && factor.len() == 1
            && factor[0].quotient == "SO(3)"
            && r.rank == 1;
        Ok((
            ok && fast,
            format!(
                "Isom_G(V)_0 = {} (dim {}), boundary {}, kernel circles {}, quotient {}, rank {}, time<30s {}",
                eq.factors.iter().map(|f| f.name()).collect::<Vec<_>>().join(" x "),
                eq.total_dim,
                r.boundary,
                r.kernel.circle_directions,
                factor.first().map(|f| f.quotient.as_str()).unwrap_or("-"),
                r.rank,
                fast
            ),
        ))
    })())
}

fn ac2_hopf_metric(seed: u64) -> Outcome {
    let coarse = lift::verify_hopf_metric(100, seed, 2048);
    let fine = lift::verify_hopf_metric(100, seed, 4096);
    let ok = fine.max_residual_grid <= 1e-3 && fine.max_residual_grid < coarse.max_residual_grid;
    Outcome {
        passed: ok,
        detail: format!(
            "max residual {:.3e} at m=4096, {:.3e} at m=2048, refined {:.1e}",
            fine.max_residual_grid, coarse.max_residual_grid, fine.max_residual_refined
        ),
    }
}

fn ac3_hopf_lifting(seed: u64) -> Outcome {
    Outcome::from((|| {
        let mut rng = linalg::rng(seed, 0xac3);
        let mut worst: f64 = 0.0;
        let mut worst_u1: f64 = 0.0;
        for _ in 0..50 {
            let w = lift::lift_rotation(&random_rotation3(&mut rng))?;
            worst = worst.max(w.residual);
            worst_u1 = worst_u1.max(w.u1_residual);
        }
        let mut cover: f64 = 0.0;
        for _ in 0..20 {
            let (r1, r2) = (random_rotation3(&mut rng), random_rotation3(&mut rng));
            let l12 = lift::lift_rotation(&(r1 * r2))?.lift;
            let prod = lift::lift_rotation(&r1)?.lift * lift::lift_rotation(&r2)?.lift;
            cover = cover
                .max(linalg::max_abs_diff(&l12, &prod).min(linalg::max_abs_diff(&l12, &-prod)));
        }
        Ok((
            worst <= 1e-8 && worst_u1 <= 1e-9 && cover <= 1e-8,
            format!(
                "50 lifts, residual <= 1e-8 {}, U(1) commutator <= 1e-9 {}, double cover on 20 pairs <= 1e-8 {}",
                worst <= 1e-8,
                worst_u1 <= 1e-9,
                cover <= 1e-8
            ),
        ))
    })())
}

fn ac4_sector_angles(seed: u64) -> Outcome {
    Outcome::from((|| {
        let mut ok = true;
        let mut parts = Vec::new();
        for (id, expected) in [(catalog::PRODUCT, PI / 2.0), (catalog::TENSOR, PI / 4.0)] {
            let start = Instant::now();
            let angle = orbit::sector_angle_estimate(&CatalogAction::by_id(id)?, 5000, seed)?;
            let fast = within(start.elapsed(), 60);
            let close = (angle - expected).abs() <= 0.01;
            ok &= close && fast;
            parts.push(format!(
                "{id} {angle:.4} (expected {expected:.4}, time<60s {fast})"
            ));
        }
        Ok((ok, parts.join("; ")))
    })())
}

fn fixture_analysis(name: &str, seed: u64) -> Result<Analysis> {
    let f = fixtures::by_name(name).expect("fixture");
    analyze(&f.spec().with_seed(seed), AnalyzeOptions::default())
}

fn ac5_trichotomy(seed: u64) -> Outcome {
    Outcome::from((|| {
        let cases = [
            ("d4", IrreducibleClass::FiniteGroup, "1", 0),
            ("c5", IrreducibleClass::TrivialOrU1, "U(1)", 1),
            ("q8", IrreducibleClass::TrivialOrSp1OrSo3, "SO(3)", 1),
        ];
        let mut ok = true;
        let mut parts = Vec::new();
        for (name, class, computed, rank) in cases {
            let a = fixture_analysis(name, seed)?;
            let v = quotient::classify_irreducible(&a.report);
            let good = v.class == class
                && v.computed == computed
                && v.rank == rank
                && v.theorem_c == Some(true);
            ok &= good;
            parts.push(format!(
                "{name}: {} {} rank {}",
                v.class, v.computed, v.rank
            ));
        }
        Ok((ok, parts.join("; ")))
    })())
}

fn same_set(a: &[Matrix], b: &[Matrix]) -> bool {
    let sub = |x: &[Matrix], y: &[Matrix]| {
        x.iter().all(|m| {
            y.iter()
                .any(|n| linalg::max_abs_diff(m, n) <= crate::repr::DEDUP_TOL)
        })
    };
    sub(a, b) && sub(b, a)
}

fn ac6_kernel(seed: u64) -> Outcome {
    Outcome::from((|| {
        let mut failures = Vec::new();
        let mut exact = 0;
        let all = fixtures::all();
        for f in &all {
            let a = analyze(&f.spec().with_seed(seed), AnalyzeOptions::default())?;
            let cic = &a.center_in_component.elements;
            let kernel = &a.kernel.finite_part;
            let contains = cic.iter().all(|z| {
                kernel
                    .iter()
                    .any(|k| linalg::max_abs_diff(z, k) <= crate::repr::DEDUP_TOL)
            });
            let finite = a.kernel.continuous_part.is_empty();
            let equal = a.boundary || same_set(cic, kernel);
            if !a.boundary {
                exact += 1;
            }
            if !(contains && finite && equal) {
                failures.push(f.name);
            }
        }
        Ok((
            failures.is_empty(),
            format!(
                "{} finite fixtures, {} boundary-free with kernel = Z(G) cap Isom_G(V)_0; failures: {:?}",
                all.len(),
                exact,
                failures
            ),
        ))
    })())
}

fn ac7_descend(seed: u64) -> Outcome {
    Outcome::from((|| {
        let all = fixtures::all();
        let analyses = all
            .iter()
            .map(|f| analyze(&f.spec().with_seed(seed), AnalyzeOptions::default()))
            .collect::<Result<Vec<_>>>()?;
        let mut worst: f64 = 0.0;
        for k in 0..100u64 {
            let a = &analyses[k as usize % analyses.len()];
            let t = 0.3 + 0.017 * k as f64;
            let x = commutant::sample_equivariant_isometry(&a.equivariant, t, seed.wrapping_add(k));
            let x = a.split.embed(&x);
            worst = worst.max(lift::descend_check(&x, &a.context, 100, seed ^ k)?);
        }
        Ok((
            worst <= 1e-8,
            format!(
                "100 isometries x 100 pairs, max residual <= 1e-8 {}",
                worst <= 1e-8
            ),
        ))
    })())
}

/// Dimension of the skew-symmetric part of the commutant.
fn skew_commutant_dim(commutant: &[Matrix]) -> Result<usize> {
    let skews = commutant.iter().map(linalg::skew_part).collect::<Vec<_>>();
    Ok(linalg::frobenius_orthonormalize(&skews, 1e-8).len())
}

fn ac8_structure(seed: u64) -> Outcome {
    Outcome::from((|| {
        let mut analyses = Vec::new();
        for f in fixtures::all() {
            analyses.push((
                f.name.to_string(),
                analyze(&f.spec().with_seed(seed), AnalyzeOptions::default())?,
            ));
        }
        for id in [catalog::HOPF, catalog::PRODUCT, catalog::TENSOR] {
            analyses.push((
                id.to_string(),
                analyze(
                    &catalog_spec(id)?.with_seed(seed),
                    AnalyzeOptions::default(),
                )?,
            ));
        }
        let mut failures = Vec::new();
        for (name, a) in &analyses {
            let theorem_b = quotient::verify_theorem_b(&a.report) && a.report.theorem_b == "pass";
            let commutant_identity =
                commutant::predicted_commutant_dim(&a.components) == a.commutant.len();
            let formula: usize = a
                .equivariant
                .factors
                .iter()
                .map(|f| f.schur_type.group_dim(f.multiplicity))
                .sum();
            let per_factor = a
                .equivariant
                .factors
                .iter()
                .all(|f| f.lie_range.len() == f.schur_type.group_dim(f.multiplicity));
            let skew =
                skew_commutant_dim(&a.commutant)? == formula && formula == a.equivariant.total_dim;
            if !(theorem_b && commutant_identity && per_factor && skew) {
                failures.push(name.clone());
            }
        }
        Ok((
            failures.is_empty(),
            format!(
                "{} reports: theorem B, sum n_i^2 t_i, skew dimensions; failures: {:?}",
                analyses.len(),
                failures
            ),
        ))
    })())
}

fn ac9_determinism(seed: u64) -> Outcome {
    let rest = CRITERIA.iter().filter(|c| c.id != "AC9");
    let render = || {
        rest.clone()
            .map(|c| {
                let o = (c.run)(seed);
                format!("{} {} {}\n", c.id, o.passed, o.detail)
            })
            .collect::<String>()
    };
    let first = render();
    let second = render();
    let ok = first == second;
    Outcome {
        passed: ok,
        detail: format!("two runs of AC1-AC8 byte-identical {}", first == second),
    }
}
