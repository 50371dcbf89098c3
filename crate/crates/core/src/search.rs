//! Instance generators, the example registry, and searches.

use std::collections::BTreeMap;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angles::{AngleModel, RegionWeightVector};
use crate::anglevec::{analyze, Analysis, AnalysisReport, AnalyzeOptions, RegionScope, Side};
use crate::arrangement::{build_arrangement, enumerate_regions, region_of_ray, Region, SignVector};
use crate::error::{Error, Result};
use crate::geometry::{
    affine_dimension, format_rational, rat, ratio, rational_to_f64, ProjectiveMap, RVector, Rational, Sign,
    SquareMap,
};
use crate::polytope::{apply_map, apply_projective, combinations, Polytope, VPolytope};
use crate::vectors::{is_unimodal, GammaVector};

pub const GENERATOR_ATTEMPTS: usize = 500;
const SPHERE_RADIUS: f64 = 100.0;
const BOX_HALF_SIDE: i64 = 100;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Every `d+1` of the points are affinely independent.
pub fn in_general_position(points: &[RVector], d: usize) -> bool {
    combinations(points.len(), d + 1).all(|s| {
        let pts: Vec<&RVector> = s.iter().map(|&i| &points[i]).collect();
        affine_dimension(&pts) == d as isize
    })
}

/// `n` integer points near the sphere of radius 100 in the box `[-100, 100]^d`,
/// in general position and all vertices of their hull (hence simplicial).
pub fn random_simplicial_polytope(d: usize, n: usize, seed: u64) -> Result<VPolytope> {
    if d == 0 || n < d + 1 {
        return Err(Error::TooFewVertices);
    }
    let mut rng = rng_for(seed, 0);
    for _ in 0..GENERATOR_ATTEMPTS {
        let points: Vec<RVector> = (0..n)
            .map(|_| {
                let g: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
                let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-9);
                let radius = SPHERE_RADIUS * rng.random_range(0.85..1.0);
                let ints: Vec<i64> = g
                    .iter()
                    .map(|x| ((x / norm * radius).round() as i64).clamp(-BOX_HALF_SIDE, BOX_HALF_SIDE))
                    .collect();
                RVector::from_ints(&ints)
            })
            .collect();
        if !in_general_position(&points, d) {
            continue;
        }
        let Ok(v) = VPolytope::new(d, points) else {
            continue;
        };
        match Polytope::new(v.clone()) {
            Ok(p) if p.is_simplicial() => return Ok(v),
            _ => continue,
        }
    }
    Err(Error::RetriesExhausted {
        attempts: GENERATOR_ATTEMPTS,
    })
}

pub fn random_simplex(d: usize, seed: u64) -> Result<VPolytope> {
    random_simplicial_polytope(d, d + 1, seed)
}

/// `conv{±e_1, …, ±e_d}`.
pub fn cross_polytope(d: usize) -> VPolytope {
    let mut vs = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [1, -1] {
            let mut v = vec![0; d];
            v[i] = s;
            vs.push(RVector::from_ints(&v));
        }
    }
    VPolytope::new(d, vs).expect("cross-polytope is full-dimensional")
}

/// Bipyramid over the simplex `conv{e_1, …, e_{d-1}, -(1,…,1)}` in `x_d = 0`
/// with apexes `±e_d`.
pub fn bipyramid(d: usize) -> Result<VPolytope> {
    if d < 2 {
        return Err(Error::TooFewVertices);
    }
    let mut vs = Vec::with_capacity(d + 2);
    for i in 0..d - 1 {
        vs.push(RVector::unit(d, i));
    }
    let mut last = vec![-1; d];
    last[d - 1] = 0;
    vs.push(RVector::from_ints(&last));
    vs.push(RVector::unit(d, d - 1));
    vs.push(-&RVector::unit(d, d - 1));
    VPolytope::new(d, vs)
}

/// Point masses ½ at `±e_d`.
pub fn apex_axis_model(d: usize) -> AngleModel {
    let e = RVector::unit(d, d - 1);
    AngleModel::point_masses(vec![(-&e, ratio(1, 2)), (e, ratio(1, 2))])
}

#[derive(Debug, Clone)]
pub struct Flattened {
    pub polytope: VPolytope,
    /// Facet vertex sets agree with the input's.
    pub same_combinatorics: bool,
}

/// Scale the `axis` coordinate by `eps`.
pub fn flatten(p: &Polytope, eps: &Rational, axis: usize) -> Result<Flattened> {
    if !eps.is_positive() || *eps > Rational::one() {
        return Err(Error::Precondition(format!(
            "flattening factor must lie in (0, 1], got {}",
            format_rational(eps)
        )));
    }
    if axis >= p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: axis,
        });
    }
    let q = apply_map(&SquareMap::flattening(p.dim(), axis, eps.clone()), p.geometry())?;
    let same = Polytope::new(q.clone())?.facet_sets() == p.facet_sets();
    Ok(Flattened {
        polytope: q,
        same_combinatorics: same,
    })
}

/// A projective image of `P` with the same facets and a region with exactly
/// one dark facet.
#[derive(Debug, Clone)]
pub struct OneDarkFacet {
    pub polytope: VPolytope,
    /// `c` in `x ↦ x / (1 + <c, x>)`.
    pub map: RVector,
    pub region: Region,
    pub iterations: usize,
}

fn dark_count(arr: &crate::arrangement::CentralArrangement, signs: &SignVector) -> usize {
    arr.facet_signs(signs)
        .iter()
        .filter(|s| **s == Sign::Negative)
        .count()
}

/// Scale `u` to `λ·t_max·u`, where `t_max` is the largest step keeping
/// `1 + <c, v> > 0` on every vertex.
fn admissible_step(p: &VPolytope, u: &RVector, lambda: &Rational) -> Option<RVector> {
    let worst = p
        .vertices()
        .iter()
        .map(|v| u.dot(v).expect("dimension"))
        .filter(|x| x.is_negative())
        .map(|x| -x)
        .max()?;
    Some(u.scale(&(lambda / worst)))
}

pub fn projective_one_dark_facet_search(p: &Polytope, seed: u64, max_iter: usize) -> Result<OneDarkFacet> {
    if !p.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let d = p.dim();
    let mut rng = rng_for(seed, 1);
    let mut best: Option<usize> = None;
    for iter in 0..max_iter {
        let c = if iter == 0 {
            RVector::zeros(d)
        } else {
            let u: Vec<i64> = if rng.random_bool(0.7) {
                let k = rng.random_range(0..p.facets().len());
                let a = p.facets()[k].functional.normal().to_primitive_ray();
                a.iter()
                    .map(|x| {
                        let noise = if rng.random_bool(0.5) { 0 } else { rng.random_range(-1..=1) };
                        i64::try_from(x).unwrap_or(1) * 4 + noise
                    })
                    .collect()
            } else {
                (0..d).map(|_| rng.random_range(-5..=5)).collect()
            };
            let u = RVector::from_ints(&u);
            if u.is_zero() {
                continue;
            }
            let lambda = ratio(rng.random_range(11..=19), 20);
            match admissible_step(p.geometry(), &u, &lambda) {
                Some(c) => c,
                None => continue,
            }
        };
        let map = ProjectiveMap::rank_one(&c);
        let Ok(image) = apply_projective(&map, p.geometry()) else {
            continue;
        };
        let Ok(q) = Polytope::new(image.clone()) else {
            continue;
        };
        if q.facet_sets() != p.facet_sets() {
            continue;
        }
        let arr = build_arrangement(&q)?;
        let regions = enumerate_regions(&arr);
        let (min, region) = regions
            .iter()
            .map(|r| (dark_count(&arr, &r.signs), r))
            .min_by_key(|(k, _)| *k)
            .expect("at least one region");
        best = Some(best.map_or(min, |b: usize| b.min(min)));
        if min == 1 {
            return Ok(OneDarkFacet {
                polytope: image,
                map: c,
                region: region.clone(),
                iterations: iter + 1,
            });
        }
    }
    Err(Error::SearchNotFound {
        iterations: max_iter,
        best,
    })
}

/// How an example chooses its cone angle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExampleAngle {
    Model(AngleModel),
    /// Run the projective search on the polytope, then weight the
    /// one-dark-facet region `R` by `dark_weight` and `-R` by the rest.
    OneDarkFacet {
        seed: u64,
        max_iter: usize,
        dark_weight: Rational,
    },
}

/// A quantity an example is expected to reproduce.
#[derive(Debug, Clone, PartialEq)]
pub struct Expected {
    pub quantity: &'static str,
    pub value: String,
    /// Entrywise absolute tolerance; `None` means exact.
    pub tolerance: Option<f64>,
}

impl Expected {
    fn exact(quantity: &'static str, value: &str) -> Self {
        Expected {
            quantity,
            value: value.to_string(),
            tolerance: None,
        }
    }

    fn approx(quantity: &'static str, value: &str, tol: f64) -> Self {
        Expected {
            quantity,
            value: value.to_string(),
            tolerance: Some(tol),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExampleSpec {
    pub name: &'static str,
    pub description: &'static str,
    pub polytope: VPolytope,
    pub angle: ExampleAngle,
    pub expected: Vec<Expected>,
}

pub const NONUNIMODAL6_VERTICES: [[i64; 6]; 9] = [
    [-48, -8, 16, -10, 6, -12],
    [-23, -2, -4, 6, 2, 8],
    [-20, -8, 2, -8, 9, 5],
    [-12, -6, -8, 4, 2, 2],
    [3, 0, 2, -2, 3, 1],
    [22, -12, 2, -9, 6, -3],
    [36, 0, -8, 1, -1, -7],
    [50, -9, 4, -10, 6, -4],
    [56, 6, 4, -2, 0, -2],
];

pub fn nonunimodal6() -> VPolytope {
    let vs: Vec<RVector> = NONUNIMODAL6_VERTICES.iter().map(|v| RVector::from_ints(v)).collect();
    VPolytope::new(6, vs).expect("valid vertex table")
}

pub fn triangle() -> VPolytope {
    VPolytope::from_ints(2, &[&[2, 0], &[-1, 2], &[-1, -2]]).expect("triangle")
}

/// `α = ¼ Σ ω_{-x} + 1/12 Σ ω_x` over the vertices `x`.
pub fn triangle_model(p: &VPolytope) -> AngleModel {
    let mut atoms = Vec::new();
    for v in p.vertices() {
        atoms.push((-v, ratio(1, 4)));
        atoms.push((v.clone(), ratio(1, 12)));
    }
    AngleModel::point_masses(atoms)
}

pub fn pentagon() -> VPolytope {
    VPolytope::from_ints(2, &[&[2, 0], &[2, 2], &[0, 3], &[-1, 2], &[-1, 0]]).expect("pentagon")
}

/// Vertices at 90°, 210° and 330°, scaled by 1560 and rounded (`1351/780 ≈ √3`).
pub fn equilateral_triangle() -> VPolytope {
    VPolytope::from_ints(2, &[&[0, 1560], &[-1351, -780], &[1351, -780]]).expect("triangle")
}

pub const DEFAULT_MC_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_MC_SEED: u64 = 42;

pub fn example_registry() -> Vec<ExampleSpec> {
    let t = triangle();
    let mut out = vec![
        ExampleSpec {
            name: "triangle",
            description: "origin-interior triangle with point masses 1/4 at -x and 1/12 at x per vertex",
            angle: ExampleAngle::Model(triangle_model(&t)),
            polytope: t,
            expected: vec![
                Expected::exact("f_boundary", "(1, 3, 3)"),
                Expected::exact("h_boundary", "(1, 1, 1)"),
                Expected::exact("alpha_hat", "(0, 3/4, 7/4)"),
                Expected::exact("gamma_hat", "(0, 3/4, 1)"),
                Expected::exact("gamma_hat_reflected", "(0, 1/4, 1)"),
                Expected::exact("ds_sum", "(1, 1, 1)"),
                Expected::exact("naive_ds", "false"),
            ],
        },
        ExampleSpec {
            name: "pentagon",
            description: "pentagon with a point mass on the ray (4,-1)",
            polytope: pentagon(),
            angle: ExampleAngle::Model(AngleModel::point_masses(vec![(RVector::from_ints(&[4, -1]), rat(1))])),
            expected: vec![
                Expected::exact("f_boundary", "(1, 5, 5)"),
                Expected::exact("f_dark", "(0, 1, 2)"),
                Expected::exact("f_shadow", "(1, 2, 0)"),
                Expected::exact("f_bright", "(0, 2, 3)"),
            ],
        },
        ExampleSpec {
            name: "nonunimodal6",
            description: "9-vertex simplicial 6-polytope with the even angle (w_e1 + w_-e1)/2",
            polytope: nonunimodal6(),
            angle: ExampleAngle::Model(AngleModel::point_masses(vec![
                (RVector::unit(6, 0), ratio(1, 2)),
                (-&RVector::unit(6, 0), ratio(1, 2)),
            ])),
            expected: vec![
                Expected::exact("facets", "21"),
                Expected::exact("f_boundary", "(1, 9, 34, 71, 88, 63, 21)"),
                Expected::exact("h_boundary", "(1, 3, 4, 5, 4, 3, 1)"),
                Expected::exact("f_shadow", "(1, 9, 30, 50, 45, 18, 0)"),
                Expected::exact("g_shadow", "(1, 3, 0, 0, 0, -3, -1)"),
                Expected::exact("twice_gamma_hat", "(0, 0, 4, 5, 4, 6, 2)"),
                Expected::exact("unimodal", "false"),
                Expected::exact("alpha_symmetric", "true"),
            ],
        },
        ExampleSpec {
            name: "cross4",
            description: "projective image of the 4-cross-polytope with a one-dark-facet region R, weights 5/6 on R and 1/6 on -R",
            polytope: cross_polytope(4),
            angle: ExampleAngle::OneDarkFacet {
                seed: 7,
                max_iter: 2000,
                dark_weight: ratio(5, 6),
            },
            expected: vec![
                Expected::exact("f_boundary", "(1, 8, 24, 32, 16)"),
                Expected::exact("h_dark", "(0, 0, 0, 0, 1)"),
                Expected::exact("gamma_hat", "(0, 2/3, 1, 2/3, 1)"),
                Expected::exact("unimodal", "false"),
            ],
        },
        ExampleSpec {
            name: "equilateral-nu",
            description: "equilateral triangle under the standard angle, Monte-Carlo estimate",
            polytope: equilateral_triangle(),
            angle: ExampleAngle::Model(AngleModel::SphericalMc {
                samples: DEFAULT_MC_SAMPLES,
                seed: DEFAULT_MC_SEED,
            }),
            expected: vec![
                Expected::approx("alpha_hat", "(0, 1/2, 3/2)", 0.01),
                Expected::approx("gamma_hat", "(0, 1/2, 1)", 0.01),
                Expected::approx("region_weights", "1/6", 0.005),
            ],
        },
    ];
    for d in 3..=5 {
        let name: &'static str = match d {
            3 => "bipyramid3",
            4 => "bipyramid4",
            _ => "bipyramid5",
        };
        let ones: Vec<&str> = std::iter::once("0").chain(std::iter::repeat_n("1", d)).collect();
        out.push(ExampleSpec {
            name,
            description: "bipyramid over a simplex with point masses 1/2 on the apex axis",
            polytope: bipyramid(d).expect("bipyramid"),
            angle: ExampleAngle::Model(apex_axis_model(d)),
            expected: vec![
                Expected::exact("gamma_hat", &format!("({})", ones.join(", "))),
                Expected::exact("classification", "bipyramid"),
            ],
        });
    }
    out
}

/// Overrides for registry entries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExampleOverrides {
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub quantity: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: Option<f64>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleOutcome {
    pub name: String,
    pub comparisons: Vec<Comparison>,
    pub report: AnalysisReport,
}

impl ExampleOutcome {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.ok) && self.report.failures().next().is_none()
    }

    pub fn actual(&self, quantity: &str) -> Option<&str> {
        self.comparisons
            .iter()
            .find(|c| c.quantity == quantity)
            .map(|c| c.actual.as_str())
    }
}

fn fmt_rats(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn parse_rats(s: &str) -> Option<Vec<Rational>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    inner
        .split(',')
        .map(|x| crate::geometry::parse_rational(x.trim()).ok())
        .collect()
}

fn compare(expected: &Expected, actual: String) -> Comparison {
    let ok = match expected.tolerance {
        None => actual == expected.value,
        Some(tol) => match (parse_rats(&expected.value), parse_rats(&actual)) {
            (Some(e), Some(a)) if e.len() == a.len() => e
                .iter()
                .zip(&a)
                .all(|(x, y)| rational_to_f64(&(x - y)).abs() <= tol),
            _ => match (
                crate::geometry::parse_rational(&expected.value),
                parse_rats(&actual),
            ) {
                // A scalar expectation applies to every entry.
                (Ok(e), Some(a)) => a.iter().all(|y| rational_to_f64(&(&e - y)).abs() <= tol),
                _ => false,
            },
        },
    };
    Comparison {
        quantity: expected.quantity.to_string(),
        expected: expected.value.clone(),
        actual,
        tolerance: expected.tolerance,
        ok,
    }
}

/// Analysis, weights and reference region of an example.
pub struct PreparedExample {
    pub analysis: Analysis,
    pub weights: RegionWeightVector,
    pub reference: SignVector,
}

pub fn prepare_example(spec: &ExampleSpec, overrides: ExampleOverrides) -> Result<PreparedExample> {
    match &spec.angle {
        ExampleAngle::Model(model) => {
            let model = match model {
                AngleModel::SphericalMc { samples, seed } => AngleModel::SphericalMc {
                    samples: overrides.samples.unwrap_or(*samples),
                    seed: overrides.seed.unwrap_or(*seed),
                },
                m => m.clone(),
            };
            let analysis = Analysis::new(spec.polytope.clone())?.with_id(spec.name);
            let weights = analysis.weights(&model)?;
            let reference = match &model {
                AngleModel::PointMasses { atoms } => region_of_ray(analysis.arrangement(), &atoms[0].ray)?.signs,
                _ => analysis.regions()[0].signs.clone(),
            };
            Ok(PreparedExample {
                analysis,
                weights,
                reference,
            })
        }
        ExampleAngle::OneDarkFacet {
            seed,
            max_iter,
            dark_weight,
        } => {
            let p = Polytope::new(spec.polytope.clone())?;
            let found = projective_one_dark_facet_search(
                &p,
                overrides.seed.unwrap_or(*seed),
                overrides.max_iter.unwrap_or(*max_iter),
            )?;
            let analysis = Analysis::new(found.polytope)?.with_id(spec.name);
            let r = found.region.signs;
            let mut m = BTreeMap::new();
            m.insert(r.clone(), dark_weight.clone());
            m.insert(r.negated(), Rational::one() - dark_weight);
            let weights = RegionWeightVector::exact(m)?;
            Ok(PreparedExample {
                analysis,
                weights,
                reference: r,
            })
        }
    }
}

/// Shell every region in scope unless there are too many to do quickly.
pub fn shelling_scope(a: &Analysis, scope: RegionScope) -> RegionScope {
    if a.regions().len() <= SHELL_ALL_LIMIT {
        scope
    } else {
        RegionScope::Support
    }
}

pub const SHELL_ALL_LIMIT: usize = 20_000;

pub fn run_example(name: &str, overrides: ExampleOverrides) -> Result<ExampleOutcome> {
    let spec = example_registry()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    let prepared = prepare_example(&spec, overrides)?;
    let (a, w) = (&prepared.analysis, &prepared.weights);
    let scope = if w.is_exact() { RegionScope::All } else { RegionScope::Support };
    let report = analyze(
        a,
        w,
        AnalyzeOptions {
            scope,
            shelling: Some(shelling_scope(a, scope)),
        },
    )?;
    let dec = a.decomposition(&prepared.reference, Side::Original);
    let gamma = report.gamma_hat.clone();
    let mut comparisons = Vec::new();
    for e in &spec.expected {
        let actual = match e.quantity {
            "facets" => a.polytope(Side::Original).facets().len().to_string(),
            "f_boundary" => a.f_boundary().to_string(),
            "h_boundary" => a.h_boundary().to_string(),
            "alpha_hat" => report.alpha_hat.to_string(),
            "gamma_hat" => gamma.as_ref().map(|g| g.to_string()).unwrap_or_default(),
            "gamma_hat_reflected" => report
                .gamma_hat_reflected
                .as_ref()
                .map(|g| g.to_string())
                .unwrap_or_default(),
            "twice_gamma_hat" => gamma
                .as_ref()
                .map(|g| g.scaled(&rat(2)).to_string())
                .unwrap_or_default(),
            "ds_sum" => match (&gamma, &report.gamma_hat_reflected) {
                (Some(g), Some(gr)) => {
                    let d = a.dim() as i32;
                    fmt_rats(&(0..=d).map(|i| g.at(i) + gr.at(d - i)).collect::<Vec<_>>())
                }
                _ => String::new(),
            },
            "naive_ds" => match &gamma {
                Some(g) => {
                    let d = a.dim() as i32;
                    let h = a.h_boundary();
                    (0..=d).all(|i| g.at(i) + g.at(d - i) == rat(h.at(i))).to_string()
                }
                None => String::new(),
            },
            "f_dark" => dec.dark.f_vector().to_string(),
            "h_dark" => dec.dark.h_vector().to_string(),
            "f_shadow" => dec.shadow.f_vector().to_string(),
            "f_bright" => dec.bright.f_vector().to_string(),
            "g_shadow" => crate::anglevec::shadow_g(&dec).to_string(),
            "unimodal" => gamma
                .as_ref()
                .map(|g| is_unimodal(g.entries()).to_string())
                .unwrap_or_default(),
            "alpha_symmetric" => report
                .check("alpha-symmetric")
                .map(|c| c.passed().to_string())
                .unwrap_or_default(),
            "classification" => report
                .check("classification")
                .and_then(|c| c.witness.clone())
                .unwrap_or_default(),
            "region_weights" => {
                let ws: Vec<Rational> = a.regions().iter().map(|r| w.weight(&r.signs)).collect();
                fmt_rats(&ws)
            }
            other => format!("unknown quantity {other}"),
        };
        comparisons.push(compare(e, actual));
    }
    Ok(ExampleOutcome {
        name: spec.name.to_string(),
        comparisons,
        report,
    })
}

/// Random exact non-negative weights on up to six regions; mirrored onto
/// the antipodes when `even`.
pub fn random_exact_weights(regions: &[Region], even: bool, rng: &mut impl Rng) -> Result<RegionWeightVector> {
    let k = rng.random_range(1..=regions.len().min(6));
    let mut raw: BTreeMap<SignVector, i64> = BTreeMap::new();
    for _ in 0..k {
        let r = &regions[rng.random_range(0..regions.len())];
        let wt = rng.random_range(1..=10);
        *raw.entry(r.signs.clone()).or_default() += wt;
        if even {
            *raw.entry(r.signs.negated()).or_default() += wt;
        }
    }
    let total: i64 = raw.values().sum();
    RegionWeightVector::exact(raw.into_iter().map(|(k, v)| (k, ratio(v, total))).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignConfig {
    pub instances: usize,
    pub max_dim: usize,
    pub seed: u64,
    /// Fail on a non-unimodal γ̂ with `d ≤ 3` or an even model.
    pub enforce_unimodality: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub vertices: VPolytope,
    pub even: bool,
    pub gamma_hat: GammaVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub instances: usize,
    pub even_instances: usize,
    pub regions_checked: usize,
    pub max_regions: usize,
    pub per_dim: BTreeMap<usize, usize>,
    /// Instances with non-unimodal γ̂.
    pub non_unimodal: Vec<Instance>,
}

/// Dimension, region count, the instance if γ̂ is not unimodal, evenness.
type InstanceOutcome = (usize, usize, Option<Instance>, bool);

/// Random (polytope, exact weights) pairs with `2 ≤ d ≤ max_dim` and
/// `d+1 ≤ n ≤ d+4`. Every check must pass; unimodality is asserted for
/// `d ≤ 3` and for even models with `d ≤ 5`.
pub fn random_verify_campaign(cfg: CampaignConfig) -> Result<CampaignSummary> {
    if cfg.max_dim < 2 {
        return Err(Error::Precondition("campaign needs max_dim >= 2".into()));
    }
    let dims = cfg.max_dim - 1;
    let results: Vec<Result<InstanceOutcome>> = (0..cfg.instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(cfg.seed, 1000 + i as u64);
            let d = 2 + i % dims;
            let n = d + 1 + rng.random_range(0..4);
            let even = i % 2 == 1;
            let inst_seed: u64 = rng.random();
            let v = random_simplicial_polytope(d, n, inst_seed)?;
            let a = Analysis::new(v.clone())?;
            let w = random_exact_weights(a.regions(), even, &mut rng)?;
            let rep = analyze(
                &a,
                &w,
                AnalyzeOptions {
                    scope: RegionScope::All,
                    shelling: Some(RegionScope::Support),
                },
            )?;
            let fail = |what: String| {
                Error::CampaignFailure(format!(
                    "instance {i} (campaign seed {}, instance seed {inst_seed}, d={d}, n={n}, even={even}): {what}; vertices {}",
                    cfg.seed,
                    serde_json::to_string(&v).unwrap_or_default()
                ))
            };
            if let Some(c) = rep.failures().next() {
                return Err(fail(format!("check {} failed: {}", c.name, c.witness.clone().unwrap_or_default())));
            }
            let g = rep.gamma_hat.clone().ok_or_else(|| fail("no gamma-hat".into()))?;
            let unimodal = is_unimodal(g.entries());
            if cfg.enforce_unimodality && !unimodal && (d <= 3 || (even && d <= 5)) {
                return Err(fail(format!("gamma-hat {g} is not unimodal")));
            }
            let found = (!unimodal).then_some(Instance {
                index: i,
                seed: inst_seed,
                dim: d,
                vertices: v,
                even,
                gamma_hat: g,
            });
            Ok((d, a.regions().len(), found, even))
        })
        .collect();
    let mut summary = CampaignSummary {
        instances: 0,
        even_instances: 0,
        regions_checked: 0,
        max_regions: 0,
        per_dim: BTreeMap::new(),
        non_unimodal: Vec::new(),
    };
    for r in results {
        let (d, regions, found, even) = r?;
        summary.instances += 1;
        summary.even_instances += usize::from(even);
        summary.regions_checked += regions;
        summary.max_regions = summary.max_regions.max(regions);
        *summary.per_dim.entry(d).or_default() += 1;
        summary.non_unimodal.extend(found);
    }
    Ok(summary)
}

/// Random `d`-polytopes with `n` vertices and random exact weights until
/// γ̂ is not unimodal.
pub fn non_unimodal_search(d: usize, n: usize, seed: u64, max_iter: usize) -> Result<Instance> {
    for i in 0..max_iter {
        let mut rng = rng_for(seed, 5000 + i as u64);
        let inst_seed: u64 = rng.random();
        let v = random_simplicial_polytope(d, n, inst_seed)?;
        let a = Analysis::new(v.clone())?;
        let w = random_exact_weights(a.regions(), false, &mut rng)?;
        let g = a.gamma_hat(&w, Side::Original)?;
        if !is_unimodal(g.entries()) {
            return Ok(Instance {
                index: i,
                seed: inst_seed,
                dim: d,
                vertices: v,
                even: false,
                gamma_hat: g,
            });
        }
    }
    Err(Error::SearchNotFound {
        iterations: max_iter,
        best: None,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatteningStep {
    pub eps: String,
    pub same_combinatorics: bool,
    pub gamma_hat: Vec<f64>,
    pub distance_to_gamma: f64,
    pub distance_to_twice_gamma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatteningReport {
    pub samples: u64,
    pub seed: u64,
    /// `γ̂(α, P)` for `α = ½(ω_{e_1} + ω_{-e_1})`.
    pub gamma: Vec<String>,
    pub twice_gamma: Vec<String>,
    pub steps: Vec<FlatteningStep>,
}

/// γ̂(ν, C_ε P) by Monte Carlo for each `ε`, with sup-distances to `γ̂(α,P)`
/// and `2γ̂(α,P)`.
pub fn flattening_experiment(eps: &[Rational], samples: u64, seed: u64) -> Result<FlatteningReport> {
    let base = Analysis::new(nonunimodal6())?;
    let e1 = RVector::unit(6, 0);
    let w = base.weights(&AngleModel::point_masses(vec![(e1.clone(), ratio(1, 2)), (-&e1, ratio(1, 2))]))?;
    let gamma = base.gamma_hat(&w, Side::Original)?;
    let twice = gamma.scaled(&rat(2));
    let p = Polytope::new(nonunimodal6())?;
    let mut steps = Vec::new();
    for e in eps {
        let flat = flatten(&p, e, 0)?;
        let a = Analysis::new(flat.polytope)?;
        let wn = a.weights(&AngleModel::SphericalMc { samples, seed })?;
        let g = a.gamma_hat(&wn, Side::Original)?;
        let gf: Vec<f64> = g.entries().iter().map(rational_to_f64).collect();
        let dist = |t: &GammaVector| {
            t.entries()
                .iter()
                .zip(&gf)
                .map(|(x, y)| (rational_to_f64(x) - y).abs())
                .fold(0.0, f64::max)
        };
        steps.push(FlatteningStep {
            eps: format_rational(e),
            same_combinatorics: flat.same_combinatorics,
            distance_to_gamma: dist(&gamma),
            distance_to_twice_gamma: dist(&twice),
            gamma_hat: gf,
        });
    }
    Ok(FlatteningReport {
        samples,
        seed,
        gamma: gamma.entries().iter().map(format_rational).collect(),
        twice_gamma: twice.entries().iter().map(format_rational).collect(),
        steps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    NonUnimodal,
    OneDarkFacetProjective,
    RandomVerify,
    Flatten,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub dim: usize,
    pub vertices: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub mode: SearchMode,
    pub samples: u64,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::Precondition("dim must be at least 2".into()));
        }
        if self.vertices < self.dim + 1 {
            return Err(Error::Precondition("vertices must be at least dim + 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_polytopes_are_simplicial_and_deterministic() {
        let t = random_simplicial_polytope(2, 3, 1).unwrap();
        assert_eq!(t.num_vertices(), 3);
        let p = random_simplicial_polytope(4, 8, 11).unwrap();
        let q = Polytope::new(p.clone()).unwrap();
        assert!(q.is_simplicial());
        assert_eq!(q.num_vertices(), 8);
        assert_eq!(p, random_simplicial_polytope(4, 8, 11).unwrap());
        let six = Polytope::new(random_simplicial_polytope(6, 9, 3).unwrap()).unwrap();
        assert!(six.is_simplicial());
        assert_eq!(six.f_vector().at(0), 9);
        for v in p.vertices() {
            assert!(v.coords().iter().all(|c| c.abs() <= rat(BOX_HALF_SIDE)));
        }
    }

    #[test]
    fn general_position_detects_collinear() {
        let pts: Vec<RVector> = [[0, 0], [1, 1], [2, 2], [0, 5]].iter().map(|v| RVector::from_ints(v)).collect();
        assert!(!in_general_position(&pts, 2));
    }

    #[test]
    fn bipyramid_shape() {
        for d in 2..=5 {
            let p = Polytope::new(bipyramid(d).unwrap()).unwrap();
            assert!(p.is_simplicial());
            assert!(p.is_bipyramid());
            assert_eq!(p.facets().len(), 2 * d);
        }
    }

    #[test]
    fn flatten_identity_and_preservation() {
        let p = Polytope::new(triangle()).unwrap();
        let same = flatten(&p, &rat(1), 0).unwrap();
        assert_eq!(&same.polytope, p.geometry());
        assert!(same.same_combinatorics);
        assert!(flatten(&p, &rat(0), 0).is_err());
        assert!(flatten(&p, &rat(2), 0).is_err());
    }

    #[test]
    fn simplex_needs_no_transform() {
        let p = Polytope::new(random_simplex(3, 5).unwrap()).unwrap();
        let found = projective_one_dark_facet_search(&p, 1, 1).unwrap();
        assert!(found.map.is_zero());
        assert_eq!(found.iterations, 1);
    }

    #[test]
    fn zero_iterations_not_found() {
        let p = Polytope::new(cross_polytope(3)).unwrap();
        assert!(matches!(
            projective_one_dark_facet_search(&p, 1, 0),
            Err(Error::SearchNotFound { iterations: 0, best: None })
        ));
    }

    #[test]
    fn registry_names() {
        let names: Vec<&str> = example_registry().iter().map(|e| e.name).collect();
        for n in ["triangle", "nonunimodal6", "cross4", "equilateral-nu", "pentagon"] {
            assert!(names.contains(&n));
        }
        assert!(matches!(
            run_example("nope", ExampleOverrides::default()),
            Err(Error::UnknownExample(_))
        ));
    }

    #[test]
    fn small_examples_pass() {
        for name in ["triangle", "pentagon", "bipyramid3", "bipyramid4"] {
            let out = run_example(name, ExampleOverrides::default()).unwrap();
            assert!(out.passed(), "{name}: {:?} {:?}", out.comparisons, out.report.checks);
        }
    }

    #[test]
    fn small_campaign() {
        let s = random_verify_campaign(CampaignConfig {
            instances: 12,
            max_dim: 4,
            seed: 3,
            enforce_unimodality: true,
        })
        .unwrap();
        assert_eq!(s.instances, 12);
        assert_eq!(s.even_instances, 6);
        assert_eq!(
            s,
            random_verify_campaign(CampaignConfig {
                instances: 12,
                max_dim: 4,
                seed: 3,
                enforce_unimodality: true,
            })
            .unwrap()
        );
    }
}
