//! α̂- and γ̂-vectors and the verification battery.
//!
//! `α̂_i(P) = Σ_R α(R)·f_i(D(R,P))` and `γ̂_k(P) = Σ_R α(R)·h_k(D(R,P))`.
//! γ̂ is computed both as this region sum and as the h-transform of α̂; the
//! two must agree exactly. `-P` is analysed from its own facet enumeration
//! over the same arrangement.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angles::{estimate_tolerance, evaluate, AngleModel, RegionWeightVector};
use crate::arrangement::{build_arrangement, enumerate_regions, CentralArrangement, Region, SignVector};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, rational_to_f64, serde_rational, Rational};
use crate::polytope::{Polytope, VPolytope};
use crate::shadow::{
    ball_dehn_sommerville_check, line_shelling, shadow_decomposition, shelling_h_vector, BoundaryComplex,
    ShadowDecomposition,
};
use crate::vectors::{
    binomial, gamma_from_alpha, is_nondecreasing, is_unimodal, AngleVector, FVector, GVector, GammaVector,
    HVector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Original,
    Reflected,
}

/// `P`, `-P`, their common arrangement and its regions.
#[derive(Debug, Clone)]
pub struct Analysis {
    id: String,
    polytope: Polytope,
    reflected: Polytope,
    arrangement: CentralArrangement,
    reflected_arrangement: CentralArrangement,
    regions: Vec<Region>,
    region_index: HashMap<SignVector, usize>,
    boundary: BoundaryComplex,
    reflected_boundary: BoundaryComplex,
}

impl Analysis {
    pub fn new(geometry: VPolytope) -> Result<Self> {
        let polytope = Polytope::new(geometry)?;
        let reflected = polytope.negated()?;
        let arrangement = build_arrangement(&polytope)?;
        let reflected_arrangement = build_arrangement(&reflected)?;
        if arrangement.hyperplanes() != reflected_arrangement.hyperplanes() {
            return Err(Error::Precondition(
                "arrangements of P and -P differ".into(),
            ));
        }
        let regions = enumerate_regions(&arrangement);
        let region_index = regions
            .iter()
            .enumerate()
            .map(|(i, r)| (r.signs.clone(), i))
            .collect();
        let boundary = BoundaryComplex::new(&polytope);
        let reflected_boundary = BoundaryComplex::new(&reflected);
        Ok(Analysis {
            id: String::from("polytope"),
            polytope,
            reflected,
            arrangement,
            reflected_arrangement,
            regions,
            region_index,
            boundary,
            reflected_boundary,
        })
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn polytope(&self, side: Side) -> &Polytope {
        match side {
            Side::Original => &self.polytope,
            Side::Reflected => &self.reflected,
        }
    }

    pub fn arrangement(&self) -> &CentralArrangement {
        &self.arrangement
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region(&self, signs: &SignVector) -> Option<&Region> {
        self.region_index.get(signs).map(|&i| &self.regions[i])
    }

    pub fn boundary(&self, side: Side) -> &BoundaryComplex {
        match side {
            Side::Original => &self.boundary,
            Side::Reflected => &self.reflected_boundary,
        }
    }

    pub fn is_simplicial(&self) -> bool {
        self.polytope.is_simplicial()
    }

    pub fn f_boundary(&self) -> &FVector {
        self.boundary.f_vector()
    }

    pub fn h_boundary(&self) -> HVector {
        self.boundary.h_vector()
    }

    pub fn decomposition(&self, region: &SignVector, side: Side) -> ShadowDecomposition {
        match side {
            Side::Original => shadow_decomposition(&self.boundary, &self.arrangement, region),
            Side::Reflected => {
                shadow_decomposition(&self.reflected_boundary, &self.reflected_arrangement, region)
            }
        }
    }

    /// Region weights of a model on this arrangement.
    pub fn weights(&self, model: &AngleModel) -> Result<RegionWeightVector> {
        evaluate(model, &self.arrangement, &self.regions)
    }

    fn check_keys(&self, w: &RegionWeightVector) -> Result<()> {
        for k in w.weights().keys() {
            self.arrangement.check_signs(k)?;
            if !self.region_index.contains_key(k) {
                return Err(Error::UnknownRegion(k.to_string()));
            }
        }
        Ok(())
    }

    fn require_simplicial(&self) -> Result<()> {
        if self.is_simplicial() {
            Ok(())
        } else {
            Err(Error::NotSimplicial)
        }
    }

    /// `Σ_R α(R)·v(R)` over the support of `w`.
    fn weighted<F>(&self, w: &RegionWeightVector, len: usize, side: Side, f: F) -> Vec<Rational>
    where
        F: Fn(&ShadowDecomposition) -> Vec<i64>,
    {
        let mut acc = vec![Rational::zero(); len];
        for (signs, weight) in w.support() {
            let dec = self.decomposition(signs, side);
            for (a, x) in acc.iter_mut().zip(f(&dec)) {
                *a += weight * Rational::from_integer(x.into());
            }
        }
        acc
    }

    pub fn alpha_hat(&self, w: &RegionWeightVector, side: Side) -> Result<AngleVector> {
        self.check_keys(w)?;
        let d = self.dim();
        let v = self.weighted(w, d + 1, side, |dec| dec.dark.f_vector().entries().to_vec());
        Ok(AngleVector::new(-1, v))
    }

    /// γ̂ by the region sum of h(D), cross-checked against the transform of α̂.
    pub fn gamma_hat(&self, w: &RegionWeightVector, side: Side) -> Result<GammaVector> {
        self.require_simplicial()?;
        let d = self.dim();
        let by_transform = gamma_from_alpha(&self.alpha_hat(w, side)?, d)?;
        let by_regions = GammaVector::new(
            0,
            self.weighted(w, d + 1, side, |dec| dec.dark.h_vector().entries().to_vec()),
        );
        for (i, (a, b)) in by_transform
            .entries()
            .iter()
            .zip(by_regions.entries())
            .enumerate()
        {
            if a != b {
                return Err(Error::RouteDisagreement {
                    index: i,
                    transform: format_rational(a),
                    region_sum: format_rational(b),
                });
            }
        }
        Ok(by_regions)
    }

    /// `Σ_R α(R)·f(π(R,P))`.
    pub fn weighted_shadow_f(&self, w: &RegionWeightVector) -> AngleVector {
        let d = self.dim();
        AngleVector::new(
            -1,
            self.weighted(w, d + 1, Side::Original, |dec| dec.shadow.f_vector().entries().to_vec()),
        )
    }

    /// `Σ_R α(R)·g(π(R,P))`, with `g(π)` the d-dimensional h-transform of `f(π)`.
    pub fn weighted_shadow_g(&self, w: &RegionWeightVector) -> GammaVector {
        let d = self.dim();
        GammaVector::new(
            0,
            self.weighted(w, d + 1, Side::Original, |dec| dec.shadow.h_vector().entries().to_vec()),
        )
    }
}

/// `g(π(R,P))` for one region.
pub fn shadow_g(dec: &ShadowDecomposition) -> GVector {
    dec.shadow.h_vector()
}

pub fn alpha_hat(a: &Analysis, w: &RegionWeightVector) -> Result<AngleVector> {
    a.alpha_hat(w, Side::Original)
}

pub fn gamma_hat(a: &Analysis, w: &RegionWeightVector) -> Result<GammaVector> {
    a.gamma_hat(w, Side::Original)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ApproxPass,
    NotApplicable,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &str, status: Status, witness: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            status,
            witness,
        }
    }

    fn from_failure(name: &str, failure: Option<String>, tol: Option<f64>) -> Self {
        match failure {
            Some(w) => Self::new(name, Status::Fail, Some(w)),
            None if tol.is_some() => Self::new(name, Status::ApproxPass, None),
            None => Self::new(name, Status::Pass, None),
        }
    }

    fn not_applicable(name: &str, why: &str) -> Self {
        Self::new(name, Status::NotApplicable, Some(why.to_string()))
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::ApproxPass)
    }
}

fn tolerance(w: &RegionWeightVector) -> Option<f64> {
    w.samples().map(estimate_tolerance)
}

fn close(a: &Rational, b: &Rational, tol: Option<f64>) -> bool {
    a == b || tol.is_some_and(|t| rational_to_f64(&(a - b)).abs() <= t)
}

fn at_most(a: &Rational, b: &Rational, tol: Option<f64>) -> bool {
    a <= b || tol.is_some_and(|t| rational_to_f64(&(a - b)) <= t)
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// `γ̂_i(P) + γ̂_{d-i}(-P) = h_i(∂P)`.
pub fn check_dehn_sommerville(a: &Analysis, w: &RegionWeightVector) -> Result<CheckResult> {
    let d = a.dim() as i32;
    let g = a.gamma_hat(w, Side::Original)?;
    let gr = a.gamma_hat(w, Side::Reflected)?;
    let h = a.h_boundary().to_rational();
    let tol = tolerance(w);
    let failure = (0..=d).find_map(|i| {
        let lhs = g.at(i) + gr.at(d - i);
        (!close(&lhs, &h.at(i), tol)).then(|| {
            format!(
                "i={i}: gamma[{i}](P) + gamma[{}](-P) = {} but h[{i}] = {}",
                d - i,
                format_rational(&lhs),
                format_rational(&h.at(i))
            )
        })
    });
    Ok(CheckResult::from_failure("ds", failure, tol))
}

/// Non-negativity, first-half monotonicity, flawlessness and the per-region
/// h(D) inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub nonneg: CheckResult,
    pub first_half: CheckResult,
    pub flawless: CheckResult,
    pub region_h: CheckResult,
}

pub fn check_inequalities(a: &Analysis, w: &RegionWeightVector) -> Result<InequalityReport> {
    let d = a.dim() as i32;
    let g = a.gamma_hat(w, Side::Original)?;
    let tol = tolerance(w);
    let zero = Rational::zero();
    let ceil = (d + 1) / 2;
    let floor = d / 2;

    let nonneg = (0..=d).find_map(|i| {
        (!at_most(&zero, &g.at(i), tol)).then(|| format!("gamma[{i}] = {}", format_rational(&g.at(i))))
    });
    let first_half = if !close(&g.at(0), &zero, tol) {
        Some(format!("gamma[0] = {}", format_rational(&g.at(0))))
    } else {
        (1..=ceil).find_map(|i| {
            (!at_most(&g.at(i - 1), &g.at(i), tol)).then(|| {
                format!(
                    "gamma[{}] = {} > gamma[{i}] = {}",
                    i - 1,
                    format_rational(&g.at(i - 1)),
                    format_rational(&g.at(i))
                )
            })
        })
    };
    let flawless = (0..=floor).find_map(|i| {
        (!at_most(&g.at(i), &g.at(d - i), tol)).then(|| {
            format!(
                "gamma[{i}] = {} > gamma[{}] = {}",
                format_rational(&g.at(i)),
                d - i,
                format_rational(&g.at(d - i))
            )
        })
    });
    let region_h = w.support().find_map(|(signs, _)| {
        let h = a.decomposition(signs, Side::Original).dark.h_vector();
        let bad_mono = (0..=ceil).find(|&i| h.at(i - 1) > h.at(i) || h.at(i) < 0);
        let bad_flaw = (0..=floor).find(|&i| h.at(i) > h.at(d - i));
        bad_mono
            .or(bad_flaw)
            .map(|i| format!("region {signs}: h(D) = {h}, fails at i={i}"))
    });
    Ok(InequalityReport {
        nonneg: CheckResult::from_failure("nonneg", nonneg, tol),
        first_half: CheckResult::from_failure("first-half", first_half, tol),
        flawless: CheckResult::from_failure("flawless", flawless, tol),
        region_h: CheckResult::from_failure("region-h", region_h, None),
    })
}

/// `α̂(P) + α̂(-P) = Σ α(R)(f(∂P) - f(π))` and, for simplicial `P`,
/// `γ̂(P) + γ̂(-P) = h(∂P) - Σ α(R) g(π)`.
pub fn check_projection_identities(a: &Analysis, w: &RegionWeightVector) -> Result<CheckResult> {
    let d = a.dim() as i32;
    let tol = tolerance(w);
    let total = w.total();
    let alpha_sum = alpha_hat(a, w)?.checked_add(&a.alpha_hat(w, Side::Reflected)?)?;
    let f = a.f_boundary().to_rational().scaled(&total);
    let alpha_rhs = f.checked_sub(&a.weighted_shadow_f(w))?;
    let mut failure = (-1..d).find_map(|i| {
        (!close(&alpha_sum.at(i), &alpha_rhs.at(i), tol)).then(|| {
            format!(
                "alpha-hat(P) + alpha-hat(-P) = {} but sum of f(bd P) - f(pi) = {}",
                fmt_vec(alpha_sum.entries()),
                fmt_vec(alpha_rhs.entries())
            )
        })
    });
    if failure.is_none() && a.is_simplicial() {
        let gamma_sum = gamma_hat(a, w)?.checked_add(&a.gamma_hat(w, Side::Reflected)?)?;
        let h = a.h_boundary().to_rational().scaled(&total);
        let gamma_rhs = h.checked_sub(&a.weighted_shadow_g(w))?;
        failure = (0..=d).find_map(|i| {
            (!close(&gamma_sum.at(i), &gamma_rhs.at(i), tol)).then(|| {
                format!(
                    "gamma-hat(P) + gamma-hat(-P) = {} but h(bd P) - sum g(pi) = {}",
                    fmt_vec(gamma_sum.entries()),
                    fmt_vec(gamma_rhs.entries())
                )
            })
        });
    }
    Ok(CheckResult::from_failure("projection", failure, tol))
}

/// `α̂(P) = α̂(-P)`.
pub fn check_alpha_symmetric(a: &Analysis, w: &RegionWeightVector) -> Result<CheckResult> {
    let tol = tolerance(w);
    let p = a.alpha_hat(w, Side::Original)?;
    let q = a.alpha_hat(w, Side::Reflected)?;
    let same = p.entries().iter().zip(q.entries()).all(|(x, y)| close(x, y, tol));
    let failure = (!same).then(|| {
        format!(
            "alpha-hat(P) = {} but alpha-hat(-P) = {}",
            fmt_vec(p.entries()),
            fmt_vec(q.entries())
        )
    });
    Ok(CheckResult::from_failure("alpha-symmetric", failure, tol))
}

/// `2γ̂_{d/2}(P) = h_{d/2}(∂P)` for even `d` and α-symmetric `P`.
pub fn check_middle_entry(a: &Analysis, w: &RegionWeightVector) -> Result<CheckResult> {
    a.require_simplicial()?;
    let d = a.dim();
    if d % 2 == 1 {
        return Err(Error::Precondition(format!("dimension {d} is odd")));
    }
    if !check_alpha_symmetric(a, w)?.passed() {
        return Err(Error::Precondition("polytope is not alpha-symmetric".into()));
    }
    let m = (d / 2) as i32;
    let g = gamma_hat(a, w)?;
    let lhs = g.at(m) * Rational::from_integer(2.into());
    let rhs = Rational::from_integer(a.h_boundary().at(m).into());
    let tol = tolerance(w);
    let failure = (!close(&lhs, &rhs, tol)).then(|| {
        format!(
            "2 gamma[{m}] = {} but h[{m}] = {}",
            format_rational(&lhs),
            format_rational(&rhs)
        )
    });
    Ok(CheckResult::from_failure("middle", failure, tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    /// γ̂ is not non-decreasing.
    NotNonDecreasing,
    Simplex,
    Bipyramid,
    /// Non-decreasing, neither simplex nor bipyramid, and `P` not α-symmetric.
    Unclassified,
    /// Non-decreasing, α-symmetric, neither simplex nor bipyramid.
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub unimodal: bool,
    pub nondecreasing: bool,
    pub alpha_symmetric: bool,
    pub classification: Classification,
    /// For bipyramids: γ̂ = (0,1,…,1) and every weighted region has π ≅ ∂Δ_{d-1}.
    pub bipyramid_pattern: Option<bool>,
}

pub fn unimodality_and_structure(a: &Analysis, w: &RegionWeightVector) -> Result<Structure> {
    let g = gamma_hat(a, w)?;
    let d = a.dim();
    let unimodal = is_unimodal(g.entries());
    let nondecreasing = is_nondecreasing(g.entries());
    let alpha_symmetric = w.is_exact() && check_alpha_symmetric(a, w)?.passed();
    let p = a.polytope(Side::Original);
    let mut bipyramid_pattern = None;
    let classification = if !nondecreasing {
        Classification::NotNonDecreasing
    } else if p.num_vertices() == d + 1 {
        Classification::Simplex
    } else if p.is_bipyramid() {
        let ones = g
            .entries()
            .iter()
            .enumerate()
            .all(|(i, x)| if i == 0 { x.is_zero() } else { x.is_one() });
        let simplex_boundary: Vec<i64> = (0..=d)
            .map(|i| if i < d { binomial(d, i) as i64 } else { 0 })
            .collect();
        let shadows = w.support().all(|(signs, _)| {
            a.decomposition(signs, Side::Original).shadow.f_vector().entries() == simplex_boundary
        });
        bipyramid_pattern = Some(ones && shadows);
        Classification::Bipyramid
    } else if alpha_symmetric {
        Classification::Violation
    } else {
        Classification::Unclassified
    };
    Ok(Structure {
        unimodal,
        nondecreasing,
        alpha_symmetric,
        classification,
        bipyramid_pattern,
    })
}

/// Which regions the per-region identities run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionScope {
    All,
    Support,
}

/// Per-region identities: ball Dehn–Sommerville, partition, `B(R,P) = D(-R,P)`,
/// `D(R,-P) ≅ B(R,P)`, and line shellings reproducing h(D) and h(B̄).
pub fn check_region_lemmas(
    a: &Analysis,
    w: &RegionWeightVector,
    scope: RegionScope,
    shelling: Option<RegionScope>,
) -> Vec<CheckResult> {
    let regions: Vec<&SignVector> = match scope {
        RegionScope::All => a.regions().iter().map(|r| &r.signs).collect(),
        RegionScope::Support => w.support().map(|(s, _)| s).collect(),
    };
    let f = a.f_boundary().clone();
    let simplicial = a.is_simplicial();
    let d = a.dim();

    let results: Vec<[Option<String>; 4]> = regions
        .par_iter()
        .map(|signs| {
            let dec = a.decomposition(signs, Side::Original);
            let neg = a.decomposition(&signs.negated(), Side::Original);
            let refl = a.decomposition(signs, Side::Reflected);

            let ball = (simplicial && !ball_dehn_sommerville_check(&dec)).then(|| {
                format!(
                    "region {signs}: h(D) = {}, h(D-bar) = {}",
                    dec.dark.h_vector(),
                    dec.dark_closure.h_vector()
                )
            });

            let sum = dec.dark.f_vector().checked_add(dec.bright.f_vector()).ok();
            let rhs = f.checked_sub(dec.shadow.f_vector()).ok();
            let partition = (sum.is_none() || sum != rhs).then(|| {
                format!(
                    "region {signs}: f(D) + f(B) = {} but f(bd P) - f(pi) = {}",
                    sum.map(|v| v.to_string()).unwrap_or_default(),
                    rhs.map(|v| v.to_string()).unwrap_or_default()
                )
            });

            let b = a.boundary(Side::Original);
            let rb = a.boundary(Side::Reflected);
            let faces_of = |bd: &BoundaryComplex, rc: &crate::shadow::RelativeComplex| {
                let mut v: Vec<_> = rc.kept_faces(bd).map(|x| x.vertices).collect();
                v.sort();
                v
            };
            let bright = faces_of(b, &dec.bright);
            let reflection = if bright != faces_of(b, &neg.dark) {
                Some(format!("region {signs}: B(R,P) != D(-R,P)"))
            } else if bright != faces_of(rb, &refl.dark) {
                Some(format!("region {signs}: D(R,-P) does not match B(R,P) under vertex negation"))
            } else {
                None
            };

            let shell_here = match shelling {
                Some(RegionScope::All) => true,
                Some(RegionScope::Support) => w.weight(signs).is_positive(),
                None => false,
            };
            let shell = if shell_here && simplicial {
                let region = a.region(signs).expect("known region");
                let p = a.polytope(Side::Original);
                match line_shelling(p, a.arrangement(), region) {
                    Err(e) => Some(format!("region {signs}: {e}")),
                    Ok(order) => {
                        let m = b.facets().len();
                        let hd = shelling_h_vector(b.facets(), &order.facet_order, order.split..m, d);
                        let hb = shelling_h_vector(b.facets(), &order.facet_order, 0..order.split, d);
                        if hd != dec.dark.h_vector() || hb != dec.bright_closure.h_vector() {
                            Some(format!(
                                "region {signs}: shelling gives h(D) = {hd}, h(B-bar) = {hb}; transforms give {}, {}",
                                dec.dark.h_vector(),
                                dec.bright_closure.h_vector()
                            ))
                        } else {
                            None
                        }
                    }
                }
            } else {
                None
            };
            [ball, partition, reflection, shell]
        })
        .collect();

    let first = |i: usize| results.iter().find_map(|r| r[i].clone());
    let mut out = Vec::new();
    if simplicial {
        out.push(CheckResult::from_failure("ball-ds", first(0), None));
    } else {
        out.push(CheckResult::not_applicable("ball-ds", "polytope is not simplicial"));
    }
    out.push(CheckResult::from_failure("partition", first(1), None));
    out.push(CheckResult::from_failure("reflection", first(2), None));
    if shelling.is_none() {
        out.push(CheckResult::not_applicable("shelling", "not requested"));
    } else if simplicial {
        out.push(CheckResult::from_failure("shelling", first(3), None));
    } else {
        out.push(CheckResult::not_applicable("shelling", "polytope is not simplicial"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSummary {
    pub id: String,
    pub dim: usize,
    pub vertices: usize,
    pub facets: usize,
    pub simplicial: bool,
    pub f_vector: FVector,
    pub h_vector: HVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSummary {
    pub hyperplanes: usize,
    pub regions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSummary {
    pub exact: bool,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub support: usize,
    pub even: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub signs: SignVector,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
    pub f_dark: FVector,
    pub h_dark: HVector,
    pub f_shadow: FVector,
    pub g_shadow: GVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub polytope: PolytopeSummary,
    pub arrangement: ArrangementSummary,
    pub weights: WeightSummary,
    pub regions: Vec<RegionRecord>,
    pub alpha_hat: AngleVector,
    pub alpha_hat_reflected: AngleVector,
    pub gamma_hat: Option<GammaVector>,
    pub gamma_hat_reflected: Option<GammaVector>,
    pub h_boundary: HVector,
    pub checks: Vec<CheckResult>,
    pub properties: Vec<CheckResult>,
}

impl AnalysisReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks
            .iter()
            .chain(&self.properties)
            .find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status.is_failure())
    }
}

pub const CHECK_NAMES: &[&str] = &[
    "routes",
    "ds",
    "nonneg",
    "first-half",
    "flawless",
    "region-h",
    "projection",
    "top",
    "middle",
    "structure",
    "ball-ds",
    "partition",
    "reflection",
    "shelling",
];

pub const PROPERTY_NAMES: &[&str] = &["alpha-symmetric", "even-model", "unimodal", "nondecreasing", "classification"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub scope: RegionScope,
    /// Regions to line-shell; `None` skips the shelling check.
    pub shelling: Option<RegionScope>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            scope: RegionScope::All,
            shelling: Some(RegionScope::All),
        }
    }
}

fn from_result(name: &str, r: Result<CheckResult>) -> CheckResult {
    match r {
        Ok(c) => c,
        Err(Error::Precondition(why)) => CheckResult::not_applicable(name, &why),
        Err(Error::NotSimplicial) => CheckResult::not_applicable(name, "polytope is not simplicial"),
        Err(e) => CheckResult::new(name, Status::Fail, Some(e.to_string())),
    }
}

fn property(name: &str, value: bool, witness: Option<String>) -> CheckResult {
    CheckResult::new(name, if value { Status::Pass } else { Status::Fail }, witness)
}

/// Full report: vectors, per-region records for the weighted regions, all checks.
pub fn analyze(a: &Analysis, w: &RegionWeightVector, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let d = a.dim();
    let alpha = a.alpha_hat(w, Side::Original)?;
    let alpha_reflected = a.alpha_hat(w, Side::Reflected)?;
    let simplicial = a.is_simplicial();
    let tol = tolerance(w);

    let mut checks = Vec::new();
    let mut properties = Vec::new();
    let (gamma, gamma_reflected) = if simplicial {
        let g = a.gamma_hat(w, Side::Original);
        let gr = a.gamma_hat(w, Side::Reflected);
        let routes = match (&g, &gr) {
            (Ok(_), Ok(_)) => CheckResult::from_failure("routes", None, None),
            (Err(e), _) | (_, Err(e)) => CheckResult::new("routes", Status::Fail, Some(e.to_string())),
        };
        checks.push(routes);
        (g.ok(), gr.ok())
    } else {
        checks.push(CheckResult::not_applicable("routes", "polytope is not simplicial"));
        (None, None)
    };

    if let (Some(g), Some(_)) = (&gamma, &gamma_reflected) {
        checks.push(from_result("ds", check_dehn_sommerville(a, w)));
        let ineq = check_inequalities(a, w)?;
        checks.extend([ineq.nonneg, ineq.first_half, ineq.flawless, ineq.region_h]);
        checks.push(from_result("projection", check_projection_identities(a, w)));
        let top = g.at(d as i32);
        let total = w.total();
        checks.push(CheckResult::from_failure(
            "top",
            (!close(&top, &total, tol)).then(|| {
                format!("gamma[{d}] = {} but total weight {}", format_rational(&top), format_rational(&total))
            }),
            tol,
        ));
        checks.push(from_result("middle", check_middle_entry(a, w)));
        let s = unimodality_and_structure(a, w)?;
        let structure = match (s.classification, s.bipyramid_pattern) {
            (Classification::Violation, _) => CheckResult::new(
                "structure",
                Status::Fail,
                Some("alpha-symmetric with non-decreasing gamma-hat but neither simplex nor bipyramid".into()),
            ),
            (Classification::Bipyramid, Some(false)) if s.alpha_symmetric => CheckResult::new(
                "structure",
                Status::Fail,
                Some(format!("bipyramid with gamma-hat {g} or weighted shadow not a simplex boundary")),
            ),
            _ => CheckResult::from_failure("structure", None, None),
        };
        checks.push(structure);
        properties.push(property("unimodal", s.unimodal, (!s.unimodal).then(|| format!("gamma-hat = {g}"))));
        properties.push(property("nondecreasing", s.nondecreasing, None));
        properties.push(CheckResult::new(
            "classification",
            Status::Pass,
            Some(serde_json::to_value(s.classification).expect("enum").as_str().unwrap_or("").to_string()),
        ));
    } else {
        for name in ["ds", "nonneg", "first-half", "flawless", "region-h"] {
            checks.push(CheckResult::not_applicable(name, "polytope is not simplicial"));
        }
        checks.push(from_result("projection", check_projection_identities(a, w)));
        for name in ["top", "middle", "structure"] {
            checks.push(CheckResult::not_applicable(name, "polytope is not simplicial"));
        }
    }
    checks.extend(check_region_lemmas(a, w, opts.scope, opts.shelling));

    properties.insert(0, from_result("alpha-symmetric", check_alpha_symmetric(a, w)));
    properties.insert(1, property("even-model", w.is_exact() && w.is_even(), None));

    let regions = w
        .support()
        .map(|(signs, weight)| {
            let dec = a.decomposition(signs, Side::Original);
            RegionRecord {
                signs: signs.clone(),
                weight: weight.clone(),
                f_dark: dec.dark.f_vector().clone(),
                h_dark: dec.dark.h_vector(),
                f_shadow: dec.shadow.f_vector().clone(),
                g_shadow: shadow_g(&dec),
            }
        })
        .collect();

    let p = a.polytope(Side::Original);
    let (samples, seed) = match w.exactness() {
        crate::angles::Exactness::Exact => (None, None),
        crate::angles::Exactness::Estimated { samples, seed } => (Some(samples), Some(seed)),
    };
    Ok(AnalysisReport {
        polytope: PolytopeSummary {
            id: a.id().to_string(),
            dim: d,
            vertices: p.num_vertices(),
            facets: p.facets().len(),
            simplicial,
            f_vector: a.f_boundary().clone(),
            h_vector: a.h_boundary(),
        },
        arrangement: ArrangementSummary {
            hyperplanes: a.arrangement().len(),
            regions: a.regions().len(),
        },
        weights: WeightSummary {
            exact: w.is_exact(),
            samples,
            seed,
            support: w.support().count(),
            even: w.is_exact() && w.is_even(),
        },
        regions,
        alpha_hat: alpha,
        alpha_hat_reflected: alpha_reflected,
        gamma_hat: gamma,
        gamma_hat_reflected: gamma_reflected,
        h_boundary: a.h_boundary(),
        checks,
        properties,
    })
}

/// Region weights from an explicit map, for weights on a subset of regions.
pub fn sparse_weights(entries: &[(SignVector, Rational)]) -> Result<RegionWeightVector> {
    let mut m: BTreeMap<SignVector, Rational> = BTreeMap::new();
    for (k, v) in entries {
        if v.is_negative() {
            return Err(Error::NegativeWeight(format_rational(v)));
        }
        *m.entry(k.clone()).or_insert_with(Rational::zero) += v;
    }
    RegionWeightVector::exact(m)
}
