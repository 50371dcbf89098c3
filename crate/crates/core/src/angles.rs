//! Cone-angle models and their weights on the regions of an arrangement.
//!
//! A point mass `ω_q` at a generic ray `q` is the indicator of the region
//! containing `q`, so finite combinations of point masses give every
//! non-negative weighting of the regions exactly. The standard angle `ν` is
//! estimated by seeded Monte Carlo.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{region_of_ray, CentralArrangement, Region, SignVector};
use crate::error::{Error, Result};
use crate::geometry::{format_rational, serde_rational, RVector, Rational, Sign};

/// A point mass `weight · ω_ray`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub ray: RVector,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AngleModel {
    PointMasses {
        atoms: Vec<Atom>,
    },
    RegionWeights {
        #[serde(with = "serde_weight_map")]
        weights: BTreeMap<SignVector, Rational>,
    },
    SphericalMc {
        samples: u64,
        seed: u64,
    },
}

mod serde_weight_map {
    use super::*;
    use crate::geometry::parse_rational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<SignVector, Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k, format_rational(v))))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<SignVector, Rational>, D::Error> {
        let raw = BTreeMap::<SignVector, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                parse_rational(&v)
                    .map(|q| (k, q))
                    .map_err(serde::de::Error::custom)
            })
            .collect()
    }
}

impl AngleModel {
    pub fn point_masses(atoms: Vec<(RVector, Rational)>) -> Self {
        AngleModel::PointMasses {
            atoms: atoms
                .into_iter()
                .map(|(ray, weight)| Atom { ray, weight })
                .collect(),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, AngleModel::SphericalMc { .. })
    }

    /// Non-negativity and normalization.
    pub fn validate(&self) -> Result<()> {
        let weights: Vec<&Rational> = match self {
            AngleModel::PointMasses { atoms } => {
                if atoms.iter().any(|a| a.ray.is_zero()) {
                    return Err(Error::ZeroVector);
                }
                atoms.iter().map(|a| &a.weight).collect()
            }
            AngleModel::RegionWeights { weights } => weights.values().collect(),
            AngleModel::SphericalMc { samples, .. } => {
                if *samples == 0 {
                    return Err(Error::Parse("spherical_mc needs samples > 0".into()));
                }
                return Ok(());
            }
        };
        check_weights(weights)
    }
}

fn check_weights<'a>(weights: impl IntoIterator<Item = &'a Rational>) -> Result<()> {
    let mut sum = Rational::zero();
    for w in weights {
        if w.is_negative() {
            return Err(Error::NegativeWeight(format_rational(w)));
        }
        sum += w;
    }
    if !sum.is_one() {
        return Err(Error::WeightSum(format_rational(&sum)));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    Estimated { samples: u64, seed: u64 },
}

/// Weights `α(R)` per region; regions absent from the map weigh zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionWeightVector {
    weights: BTreeMap<SignVector, Rational>,
    exactness: Exactness,
}

impl RegionWeightVector {
    pub fn exact(weights: BTreeMap<SignVector, Rational>) -> Result<Self> {
        check_weights(weights.values())?;
        Ok(RegionWeightVector {
            weights,
            exactness: Exactness::Exact,
        })
    }

    pub fn indicator(region: &SignVector) -> Self {
        RegionWeightVector {
            weights: BTreeMap::from([(region.clone(), Rational::one())]),
            exactness: Exactness::Exact,
        }
    }

    pub fn weight(&self, region: &SignVector) -> Rational {
        self.weights.get(region).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> &BTreeMap<SignVector, Rational> {
        &self.weights
    }

    /// Regions with positive weight.
    pub fn support(&self) -> impl Iterator<Item = (&SignVector, &Rational)> {
        self.weights.iter().filter(|(_, w)| w.is_positive())
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }

    /// Sample count of an estimate.
    pub fn samples(&self) -> Option<u64> {
        match self.exactness {
            Exactness::Exact => None,
            Exactness::Estimated { samples, .. } => Some(samples),
        }
    }

    pub fn total(&self) -> Rational {
        self.weights.values().fold(Rational::zero(), |a, b| a + b)
    }

    /// `α(R) = α(-R)` for every region.
    pub fn is_even(&self) -> bool {
        self.weights
            .iter()
            .all(|(k, v)| self.weight(&k.negated()) == *v)
    }
}

/// Region weights of a model on an arrangement.
pub fn evaluate(model: &AngleModel, arr: &CentralArrangement, regions: &[Region]) -> Result<RegionWeightVector> {
    match model {
        AngleModel::PointMasses { atoms } => {
            model.validate()?;
            let mut weights: BTreeMap<SignVector, Rational> = BTreeMap::new();
            for a in atoms {
                let r = region_of_ray(arr, &a.ray)?;
                *weights.entry(r.signs).or_insert_with(Rational::zero) += &a.weight;
            }
            RegionWeightVector::exact(weights)
        }
        AngleModel::RegionWeights { weights } => {
            for k in weights.keys() {
                arr.check_signs(k)?;
            }
            let known: std::collections::BTreeSet<&SignVector> = regions.iter().map(|r| &r.signs).collect();
            if let Some(k) = weights.keys().find(|k| !known.contains(k)) {
                return Err(Error::UnknownRegion(k.to_string()));
            }
            if let Some(r) = known.iter().find(|r| !weights.contains_key(**r)) {
                return Err(Error::RegionKeyMismatch(format!("no weight for region {r}")));
            }
            RegionWeightVector::exact(weights.clone())
        }
        AngleModel::SphericalMc { samples, seed } => {
            model.validate()?;
            Ok(spherical_monte_carlo(arr, *samples, *seed))
        }
    }
}

/// Transport by `x ↦ -x`.
pub fn mirror(model: &AngleModel) -> Result<AngleModel> {
    match model {
        AngleModel::PointMasses { atoms } => Ok(AngleModel::PointMasses {
            atoms: atoms
                .iter()
                .map(|a| Atom {
                    ray: -&a.ray,
                    weight: a.weight.clone(),
                })
                .collect(),
        }),
        AngleModel::RegionWeights { weights } => Ok(AngleModel::RegionWeights {
            weights: weights.iter().map(|(k, v)| (k.negated(), v.clone())).collect(),
        }),
        AngleModel::SphericalMc { .. } => Err(Error::MirrorUnsupported),
    }
}

pub fn is_even_on(model: &AngleModel, arr: &CentralArrangement, regions: &[Region]) -> Result<bool> {
    if !model.is_exact() {
        return Err(Error::EstimatedWeights);
    }
    Ok(evaluate(model, arr, regions)?.is_even())
}

const MC_CHUNK: u64 = 1 << 15;
const MC_SCALE: f64 = (1u64 << 30) as f64;

enum Normals {
    Small(Vec<Vec<i64>>),
    Big(Vec<Vec<BigInt>>),
}

impl Normals {
    fn new(arr: &CentralArrangement) -> Self {
        let small: Option<Vec<Vec<i64>>> = arr
            .hyperplanes()
            .iter()
            .map(|h| {
                h.iter()
                    .map(|x| x.to_i64().filter(|v| v.unsigned_abs() < 1 << 60))
                    .collect()
            })
            .collect();
        match small {
            Some(s) if arr.dim() <= 16 => Normals::Small(s),
            _ => Normals::Big(arr.hyperplanes().to_vec()),
        }
    }

    /// Signs of a sample against every hyperplane, `None` if one vanishes.
    fn signs(&self, x: &[i64]) -> Option<Vec<bool>> {
        match self {
            Normals::Small(hs) => hs
                .iter()
                .map(|h| {
                    let dot: i128 = h.iter().zip(x).map(|(a, b)| *a as i128 * *b as i128).sum();
                    (dot != 0).then_some(dot > 0)
                })
                .collect(),
            Normals::Big(hs) => hs
                .iter()
                .map(|h| {
                    let dot: BigInt = h.iter().zip(x).map(|(a, b)| a * BigInt::from(*b)).sum();
                    (!dot.is_zero()).then(|| dot.is_positive())
                })
                .collect(),
        }
    }
}

/// Seeded estimate of `ν`: Gaussian directions, rationalized to integer
/// rays and classified by exact signs. Chunk `c` draws from stream `c` of the
/// seed, so the result does not depend on thread scheduling.
pub fn spherical_monte_carlo(arr: &CentralArrangement, samples: u64, seed: u64) -> RegionWeightVector {
    let normals = Normals::new(arr);
    let d = arr.dim();
    let chunks = samples.div_ceil(MC_CHUNK);
    let counts: HashMap<Vec<bool>, u64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let n = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut local: HashMap<Vec<bool>, u64> = HashMap::new();
            let mut x = vec![0i64; d];
            for _ in 0..n {
                let signs = loop {
                    for xi in x.iter_mut() {
                        let g: f64 = rng.sample(StandardNormal);
                        *xi = (g * MC_SCALE).round() as i64;
                    }
                    if x.iter().all(|v| *v == 0) {
                        continue;
                    }
                    if let Some(s) = normals.signs(&x) {
                        break s;
                    }
                };
                *local.entry(signs).or_default() += 1;
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let total = BigInt::from(samples);
    let weights = counts
        .into_iter()
        .map(|(k, v)| {
            let signs = k
                .into_iter()
                .map(|p| if p { Sign::Positive } else { Sign::Negative })
                .collect();
            (
                SignVector::new(signs).expect("strict signs"),
                Rational::new(BigInt::from(v), total.clone()),
            )
        })
        .collect();
    RegionWeightVector {
        weights,
        exactness: Exactness::Estimated { samples, seed },
    }
}

/// Entrywise tolerance used for estimated weights.
pub fn estimate_tolerance(samples: u64) -> f64 {
    4.0 / (samples as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_arrangement, enumerate_regions, negate_region};
    use crate::geometry::{rat, ratio, rational_to_f64};
    use crate::polytope::{Polytope, VPolytope};
    use crate::shadow::{is_dark, BoundaryComplex};

    fn setup(p: VPolytope) -> (Polytope, CentralArrangement, Vec<Region>) {
        let p = Polytope::new(p).unwrap();
        let a = build_arrangement(&p).unwrap();
        let r = enumerate_regions(&a);
        (p, a, r)
    }

    fn triangle() -> (Polytope, CentralArrangement, Vec<Region>) {
        setup(VPolytope::from_ints(2, &[&[2, 0], &[-1, 2], &[-1, -2]]).unwrap())
    }

    fn triangle_model(p: &Polytope) -> AngleModel {
        let mut atoms = Vec::new();
        for v in p.geometry().vertices() {
            atoms.push((-v, ratio(1, 4)));
            atoms.push((v.clone(), ratio(1, 12)));
        }
        AngleModel::point_masses(atoms)
    }

    #[test]
    fn triangle_point_masses() {
        let (p, a, regions) = triangle();
        let w = evaluate(&triangle_model(&p), &a, &regions).unwrap();
        assert_eq!(w.total(), rat(1));
        for v in p.geometry().vertices() {
            let r = region_of_ray(&a, &-v).unwrap();
            assert_eq!(w.weight(&r.signs), ratio(1, 4));
            assert_eq!(w.weight(&r.signs.negated()), ratio(1, 12));
        }
        assert!(!w.is_even());
        assert!(!is_even_on(&triangle_model(&p), &a, &regions).unwrap());
    }

    #[test]
    fn atom_at_witness_is_indicator() {
        let (_, a, regions) = triangle();
        for r in &regions {
            let m = AngleModel::point_masses(vec![(r.witness.clone(), rat(1))]);
            let w = evaluate(&m, &a, &regions).unwrap();
            assert_eq!(w, RegionWeightVector::indicator(&r.signs));
        }
    }

    #[test]
    fn mirror_reindexes_antipodally() {
        let (p, a, regions) = triangle();
        let m = triangle_model(&p);
        let w = evaluate(&m, &a, &regions).unwrap();
        let wm = evaluate(&mirror(&m).unwrap(), &a, &regions).unwrap();
        for r in &regions {
            assert_eq!(wm.weight(&r.signs), w.weight(&negate_region(r).signs));
        }
        let e1 = RVector::from_ints(&[1, 0]);
        let single = AngleModel::point_masses(vec![(e1.clone(), rat(1))]);
        assert_eq!(
            mirror(&single).unwrap(),
            AngleModel::point_masses(vec![(-&e1, rat(1))])
        );
        let even = AngleModel::point_masses(vec![(e1.clone(), ratio(1, 2)), (-&e1, ratio(1, 2))]);
        assert!(is_even_on(&even, &a, &regions).unwrap());
        assert_eq!(
            evaluate(&mirror(&even).unwrap(), &a, &regions).unwrap(),
            evaluate(&even, &a, &regions).unwrap()
        );
        assert!(matches!(
            mirror(&AngleModel::SphericalMc { samples: 10, seed: 1 }),
            Err(Error::MirrorUnsupported)
        ));
        assert!(matches!(
            is_even_on(&AngleModel::SphericalMc { samples: 10, seed: 1 }, &a, &regions),
            Err(Error::EstimatedWeights)
        ));
    }

    #[test]
    fn region_weights_validation() {
        let (_, a, regions) = triangle();
        let uniform: BTreeMap<SignVector, Rational> =
            regions.iter().map(|r| (r.signs.clone(), ratio(1, 6))).collect();
        let m = AngleModel::RegionWeights { weights: uniform.clone() };
        assert!(is_even_on(&m, &a, &regions).unwrap());

        let mut missing = uniform.clone();
        missing.pop_first();
        assert!(matches!(
            evaluate(&AngleModel::RegionWeights { weights: missing }, &a, &regions),
            Err(Error::RegionKeyMismatch(_))
        ));
        let mut bad_sum = uniform.clone();
        *bad_sum.values_mut().next().unwrap() = ratio(1, 3);
        assert!(matches!(
            evaluate(&AngleModel::RegionWeights { weights: bad_sum }, &a, &regions),
            Err(Error::WeightSum(_))
        ));
        let mut short = BTreeMap::new();
        short.insert("+-".parse().unwrap(), rat(1));
        assert!(matches!(
            evaluate(&AngleModel::RegionWeights { weights: short }, &a, &regions),
            Err(Error::SignLength { .. })
        ));
        let neg = AngleModel::point_masses(vec![
            (RVector::from_ints(&[1, 0]), rat(2)),
            (RVector::from_ints(&[-1, 0]), rat(-1)),
        ]);
        assert!(matches!(evaluate(&neg, &a, &regions), Err(Error::NegativeWeight(_))));
        let on_line = AngleModel::point_masses(vec![(RVector::from_ints(&[0, 1]), rat(1))]);
        assert!(matches!(evaluate(&on_line, &a, &regions), Err(Error::BoundaryRay { .. })));
    }

    #[test]
    fn json_shapes() {
        let m: AngleModel = serde_json::from_str(
            r#"{"type":"point_masses","atoms":[{"ray":["0","-1"],"weight":"1/4"},{"ray":["0","1"],"weight":"3/4"}]}"#,
        )
        .unwrap();
        m.validate().unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<AngleModel>(&s).unwrap(), m);
        let r: AngleModel =
            serde_json::from_str(r#"{"type":"region_weights","weights":{"+-+":"1/2","-+-":"1/2"}}"#).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"type":"region_weights","weights":{"+-+":"1/2","-+-":"1/2"}}"#
        );
        let mc: AngleModel = serde_json::from_str(r#"{"type":"spherical_mc","samples":1000000,"seed":42}"#).unwrap();
        assert_eq!(mc, AngleModel::SphericalMc { samples: 1_000_000, seed: 42 });
    }

    #[test]
    fn point_masses_are_simple_valuations() {
        // Summing region weights inside T_F P equals the atom mass inside T_F P.
        let p = VPolytope::from_ints(3, &[&[3, 0, 0], &[0, 2, 0], &[-1, -1, 1], &[0, 0, -2], &[1, 1, 2]]).unwrap();
        let (p, a, regions) = setup(p);
        let b = BoundaryComplex::new(&p);
        let atoms: Vec<(RVector, Rational)> = regions
            .iter()
            .take(5)
            .map(|r| (r.witness.clone(), ratio(1, 5)))
            .collect();
        let w = evaluate(&AngleModel::point_masses(atoms.clone()), &a, &regions).unwrap();
        for face in b.faces() {
            let by_regions = regions
                .iter()
                .filter(|r| is_dark(&face.cone, &a, &r.signs))
                .fold(rat(0), |s, r| s + w.weight(&r.signs));
            let direct = atoms
                .iter()
                .filter(|(ray, _)| {
                    face.cone.active_facets.ones().all(|k| {
                        p.facets()[k].functional.normal().dot(ray).unwrap().is_negative()
                    })
                })
                .fold(rat(0), |s, (_, wt)| s + wt);
            assert_eq!(by_regions, direct);
        }
    }

    #[test]
    fn monte_carlo_square_quadrants() {
        let a = CentralArrangement::from_normals(
            2,
            &[RVector::from_ints(&[1, 0]), RVector::from_ints(&[0, 1])],
        )
        .unwrap();
        let w = spherical_monte_carlo(&a, 100_000, 7);
        assert_eq!(w.weights().len(), 4);
        assert_eq!(w.total(), rat(1));
        for v in w.weights().values() {
            assert!((rational_to_f64(v) - 0.25).abs() < estimate_tolerance(100_000));
        }
        assert_eq!(w, spherical_monte_carlo(&a, 100_000, 7));
        assert_ne!(w, spherical_monte_carlo(&a, 100_000, 8));
        assert!(!w.is_exact());
    }
}
