//! The central arrangement of facet hyperplanes and its regions.
//!
//! Regions are found by inserting hyperplanes one at a time. A new
//! hyperplane `h` splits exactly the old regions that meet it, and those are
//! in bijection with the regions of the old arrangement restricted to `h`,
//! so the restriction is solved recursively one dimension down. Everything
//! stays in integers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{int_dot, primitive_integer_normal, reduce_by_gcd, RVector, Sign};
use crate::polytope::Polytope;

/// Strict sign pattern of a region, one entry per stored hyperplane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    /// Fails on zero entries: a region sign vector is strict.
    pub fn new(signs: Vec<Sign>) -> Result<Self> {
        if signs.contains(&Sign::Zero) {
            return Err(Error::InvalidSignString(
                signs.iter().map(|s| s.as_char()).collect(),
            ));
        }
        Ok(SignVector(signs))
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }
}

impl Ord for SignVector {
    /// Same order as the sign strings.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .iter()
            .map(|s| s.as_char())
            .cmp(other.0.iter().map(|s| s.as_char()))
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Positive),
                '-' => Ok(Sign::Negative),
                _ => Err(Error::InvalidSignString(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A full-dimensional region with a strictly interior integer witness ray.
#[derive(Debug, Clone)]
pub struct Region {
    pub signs: SignVector,
    pub witness: RVector,
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs
    }
}

impl Eq for Region {}

/// Where a facet's hyperplane sits in the arrangement, and whether its
/// outer normal agrees with the stored normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FacetSource {
    pub hyperplane: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralArrangement {
    dim: usize,
    hyperplanes: Vec<Vec<BigInt>>,
    source_map: Vec<FacetSource>,
}

impl CentralArrangement {
    /// Hyperplanes through the origin with the given normals; parallel
    /// normals of either orientation share one hyperplane.
    pub fn from_normals(dim: usize, normals: &[RVector]) -> Result<Self> {
        let mut hyperplanes: Vec<Vec<BigInt>> = Vec::new();
        let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
        let mut source_map = Vec::with_capacity(normals.len());
        for n in normals {
            if n.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: n.dim(),
                });
            }
            let canonical = primitive_integer_normal(n)?;
            let sign = {
                let first = n.coords().iter().find(|c| !c.is_zero()).expect("nonzero");
                Sign::of(first)
            };
            let hyperplane = *index.entry(canonical.clone()).or_insert_with(|| {
                hyperplanes.push(canonical);
                hyperplanes.len() - 1
            });
            source_map.push(FacetSource { hyperplane, sign });
        }
        Ok(CentralArrangement {
            dim,
            hyperplanes,
            source_map,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Vec<BigInt>] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn source_map(&self) -> &[FacetSource] {
        &self.source_map
    }

    /// Sign of `<a_k, r>` for facet `k` and any `r` in the region.
    pub fn facet_sign(&self, facet: usize, region: &SignVector) -> Sign {
        let src = self.source_map[facet];
        region.get(src.hyperplane).times(src.sign)
    }

    /// Oriented facet signs for all facets.
    pub fn facet_signs(&self, region: &SignVector) -> Vec<Sign> {
        (0..self.source_map.len())
            .map(|k| self.facet_sign(k, region))
            .collect()
    }

    /// Signs of `r` against every hyperplane, zeros included.
    pub fn raw_signs(&self, r: &RVector) -> Result<Vec<Sign>> {
        if r.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: r.dim(),
            });
        }
        let ints = RVector::new(r.coords().to_vec()).to_primitive_ray();
        Ok(self
            .hyperplanes
            .iter()
            .map(|h| Sign::of(&int_dot(h, &ints)))
            .collect())
    }

    pub fn check_signs(&self, signs: &SignVector) -> Result<()> {
        if signs.len() != self.len() {
            return Err(Error::SignLength {
                expected: self.len(),
                got: signs.len(),
            });
        }
        Ok(())
    }
}

pub fn build_arrangement(p: &Polytope) -> Result<CentralArrangement> {
    let normals: Vec<RVector> = p
        .facets()
        .iter()
        .map(|f| f.functional.normal().clone())
        .collect();
    CentralArrangement::from_normals(p.dim(), &normals)
}

/// All regions, sorted by sign string.
pub fn enumerate_regions(arr: &CentralArrangement) -> Vec<Region> {
    let raw = regions_of(arr.dim, &arr.hyperplanes);
    let mut regions: Vec<Region> = raw
        .into_iter()
        .map(|(signs, w)| Region {
            signs: SignVector(signs),
            witness: RVector::from_bigints(&w),
        })
        .collect();
    regions.sort_by(|a, b| a.signs.cmp(&b.signs));
    regions
}

/// The region whose interior contains `r`.
pub fn region_of_ray(arr: &CentralArrangement, r: &RVector) -> Result<Region> {
    let signs = arr.raw_signs(r)?;
    if let Some(hyperplane) = signs.iter().position(|s| *s == Sign::Zero) {
        return Err(Error::BoundaryRay { hyperplane });
    }
    Ok(Region {
        signs: SignVector(signs),
        witness: RVector::from_bigints(&RVector::new(r.coords().to_vec()).to_primitive_ray()),
    })
}

pub fn negate_region(region: &Region) -> Region {
    Region {
        signs: region.signs.negated(),
        witness: -&region.witness,
    }
}

type RawRegion = (Vec<Sign>, Vec<BigInt>);

fn sign_of_dot(h: &[BigInt], w: &[BigInt]) -> Sign {
    Sign::of(&int_dot(h, w))
}

/// Regions of the central arrangement with the given nonzero, pairwise
/// non-parallel integer normals in `Z^dim`.
fn regions_of(dim: usize, normals: &[Vec<BigInt>]) -> Vec<RawRegion> {
    let mut regions: Vec<RawRegion> = vec![(Vec::new(), vec![BigInt::zero(); dim])];
    for (i, h) in normals.iter().enumerate() {
        let old = &normals[..i];
        let crossing = restriction_witnesses(dim, h, old);
        let lookup: HashMap<Vec<Sign>, usize> = regions
            .iter()
            .enumerate()
            .map(|(j, (s, _))| (s.clone(), j))
            .collect();
        let mut split: Vec<Option<Vec<BigInt>>> = vec![None; regions.len()];
        for y in crossing {
            let signs: Vec<Sign> = old.iter().map(|n| sign_of_dot(n, &y)).collect();
            let j = lookup[&signs];
            split[j] = Some(y);
        }
        let hh = int_dot(h, h);
        let mut next = Vec::with_capacity(regions.len() * 2);
        for ((signs, w), y) in regions.into_iter().zip(split) {
            match y {
                None => {
                    let s = sign_of_dot(h, &w);
                    debug_assert!(s != Sign::Zero);
                    let mut signs = signs;
                    signs.push(s);
                    next.push((signs, w));
                }
                Some(y) => {
                    let (p, q) = push_off_scale(old, h, &y);
                    for s in [Sign::Positive, Sign::Negative] {
                        let w: Vec<BigInt> = y
                            .iter()
                            .zip(h)
                            .map(|(yi, hi)| {
                                let off = &p * hi;
                                if s == Sign::Positive {
                                    &q * yi + off
                                } else {
                                    &q * yi - off
                                }
                            })
                            .collect();
                        let w = reduce_by_gcd(w);
                        debug_assert_eq!(sign_of_dot(h, &w), s);
                        debug_assert!(!hh.is_zero());
                        let mut signs = signs.clone();
                        signs.push(s);
                        let w = shrink_witness(w, &normals[..=i], &signs);
                        next.push((signs, w));
                    }
                }
            }
        }
        regions = next;
    }
    regions
}

/// Truncate the low bits of `w` as long as every sign is kept, so that
/// witnesses stay short through repeated splits.
fn shrink_witness(w: Vec<BigInt>, normals: &[Vec<BigInt>], signs: &[Sign]) -> Vec<BigInt> {
    let bits = w.iter().map(|x| x.bits()).max().unwrap_or(0);
    let mut keep = 4;
    while keep < bits {
        let t: Vec<BigInt> = w.iter().map(|x| x >> (bits - keep) as usize).collect();
        if normals.iter().zip(signs).all(|(n, s)| sign_of_dot(n, &t) == *s) {
            return reduce_by_gcd(t);
        }
        keep *= 2;
    }
    w
}

/// `t = p/q` with `|t·<n_j, h>| < |<n_j, y>|` for every old normal, so that
/// `y ± t·h` keeps all old signs of `y`.
fn push_off_scale(old: &[Vec<BigInt>], h: &[BigInt], y: &[BigInt]) -> (BigInt, BigInt) {
    let mut best: Option<(BigInt, BigInt)> = None;
    for n in old {
        let nh = int_dot(n, h).abs();
        if nh.is_zero() {
            continue;
        }
        let ny = int_dot(n, y).abs();
        let cand = (ny, BigInt::from(2) * nh);
        best = match best {
            Some((bp, bq)) if &bp * &cand.1 <= &cand.0 * &bq => Some((bp, bq)),
            _ => Some(cand),
        };
    }
    let (p, q) = best.unwrap_or((BigInt::one(), BigInt::one()));
    let g = p.gcd(&q);
    (p / &g, q / g)
}

/// One point in the relative interior of each region of the old arrangement
/// restricted to the hyperplane `h`, in ambient coordinates.
fn restriction_witnesses(dim: usize, h: &[BigInt], old: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let pivot = h.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    // Integer basis of ker(h): b_j = h_p e_j - h_j e_p for j != p.
    let basis: Vec<Vec<BigInt>> = (0..dim)
        .filter(|&j| j != pivot)
        .map(|j| {
            let mut b = vec![BigInt::zero(); dim];
            b[j] = h[pivot].clone();
            b[pivot] = -h[j].clone();
            b
        })
        .collect();

    let mut restricted: Vec<Vec<BigInt>> = Vec::new();
    let mut seen: HashMap<Vec<BigInt>, ()> = HashMap::new();
    for n in old {
        let r: Vec<BigInt> = basis.iter().map(|b| int_dot(n, b)).collect();
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        let mut r = reduce_by_gcd(r);
        if r.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in &mut r {
                *x = -&*x;
            }
        }
        if seen.insert(r.clone(), ()).is_none() {
            restricted.push(r);
        }
    }

    regions_of(dim - 1, &restricted)
        .into_iter()
        .map(|(_, z)| {
            let mut y = vec![BigInt::zero(); dim];
            for (zk, b) in z.iter().zip(&basis) {
                for (yi, bi) in y.iter_mut().zip(b) {
                    *yi += zk * bi;
                }
            }
            reduce_by_gcd(y)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;
    use crate::polytope::VPolytope;
    use crate::vectors::binomial;
    use num_traits::ToPrimitive;

    fn arr(dim: usize, normals: &[&[i64]]) -> CentralArrangement {
        let ns: Vec<RVector> = normals.iter().map(|n| RVector::from_ints(n)).collect();
        CentralArrangement::from_normals(dim, &ns).unwrap()
    }

    fn check_regions(a: &CentralArrangement, regions: &[Region]) {
        let mut seen = std::collections::HashSet::new();
        for r in regions {
            assert!(seen.insert(r.signs.clone()), "duplicate region {}", r.signs);
            assert_eq!(region_of_ray(a, &r.witness).unwrap().signs, r.signs);
        }
        for r in regions {
            assert!(seen.contains(&r.signs.negated()));
        }
    }

    /// Oracle for planar arrangements: sort the 2n boundary rays by angle and
    /// count the sectors between them.
    fn planar_sectors(normals: &[&[i64]]) -> usize {
        let mut angles: Vec<f64> = normals
            .iter()
            .flat_map(|n| {
                let a = (-(n[0] as f64)).atan2(n[1] as f64);
                [a, a + std::f64::consts::PI]
            })
            .map(|a| a.rem_euclid(2.0 * std::f64::consts::PI))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        angles.len()
    }

    #[test]
    fn empty_and_single() {
        let a = arr(2, &[]);
        let r = enumerate_regions(&a);
        assert_eq!(r.len(), 1);
        assert!(r[0].signs.is_empty());

        let a = arr(2, &[&[1, 1]]);
        let r = enumerate_regions(&a);
        assert_eq!(r.len(), 2);
        check_regions(&a, &r);
    }

    #[test]
    fn planar_generic_lines() {
        let normals: &[&[i64]] = &[&[1, 0], &[0, 1], &[1, 1], &[1, -2]];
        let a = arr(2, normals);
        let r = enumerate_regions(&a);
        assert_eq!(r.len(), 8);
        assert_eq!(r.len(), planar_sectors(normals));
        check_regions(&a, &r);
    }

    #[test]
    fn dedup_parallel_normals() {
        let a = arr(2, &[&[1, 2], &[-2, -4], &[3, 1]]);
        assert_eq!(a.len(), 2);
        assert_eq!(a.source_map()[0].hyperplane, a.source_map()[1].hyperplane);
        assert_eq!(a.source_map()[0].sign, Sign::Positive);
        assert_eq!(a.source_map()[1].sign, Sign::Negative);
    }

    #[test]
    fn triangle_has_six_regions() {
        let p = VPolytope::from_ints(2, &[&[2, 0], &[-1, 2], &[-1, -2]]).unwrap();
        let p = Polytope::new(p).unwrap();
        let a = build_arrangement(&p).unwrap();
        assert_eq!(a.len(), 3);
        let r = enumerate_regions(&a);
        assert_eq!(r.len(), 6);
        check_regions(&a, &r);
        let q = p.negated().unwrap();
        assert_eq!(build_arrangement(&q).unwrap().hyperplanes(), a.hyperplanes());
    }

    #[test]
    fn cross_polytope_hyperplanes() {
        let mut vs = Vec::new();
        for i in 0..4 {
            for s in [1, -1] {
                let mut v = vec![0; 4];
                v[i] = s;
                vs.push(RVector::from_ints(&v));
            }
        }
        let p = Polytope::new(VPolytope::new(4, vs).unwrap()).unwrap();
        let a = build_arrangement(&p).unwrap();
        assert_eq!(a.len(), 8);
        let r = enumerate_regions(&a);
        check_regions(&a, &r);
    }

    #[test]
    fn simple_arrangement_region_count() {
        // Moment-curve normals: every d of them are independent.
        for d in 2..=4usize {
            for n in d..=d + 4 {
                let normals: Vec<RVector> = (1..=n as i64)
                    .map(|t| RVector::from_ints(&(0..d as u32).map(|k| t.pow(k)).collect::<Vec<_>>()))
                    .collect();
                let a = CentralArrangement::from_normals(d, &normals).unwrap();
                let r = enumerate_regions(&a);
                let expected: u64 = 2 * (0..d).map(|k| binomial(n - 1, k)).sum::<u64>();
                assert_eq!(r.len() as u64, expected, "d={d} n={n}");
                check_regions(&a, &r);
            }
        }
    }

    #[test]
    fn boundary_ray_rejected() {
        let a = arr(2, &[&[1, 0], &[0, 1]]);
        assert!(matches!(
            region_of_ray(&a, &RVector::from_ints(&[0, 5])),
            Err(Error::BoundaryRay { hyperplane: 0 })
        ));
        let r = region_of_ray(&a, &RVector::new(vec![rat(1) / rat(3), rat(-2)])).unwrap();
        assert_eq!(r.signs.to_string(), "+-");
        assert_eq!(negate_region(&negate_region(&r)), r);
        assert_eq!(negate_region(&r).witness, -&r.witness);
    }

    #[test]
    fn sign_strings_parse_and_sort() {
        let s: SignVector = "+-+".parse().unwrap();
        assert_eq!(s.to_string(), "+-+");
        assert!("+0".parse::<SignVector>().is_err());
        let a: SignVector = "++".parse().unwrap();
        let b: SignVector = "+-".parse().unwrap();
        assert!(a < b);
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"+-+\"");
    }

    #[test]
    fn witnesses_are_small_integers() {
        let normals: &[&[i64]] = &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, -1, 2]];
        let a = arr(3, normals);
        for r in enumerate_regions(&a) {
            for c in r.witness.coords() {
                assert!(c.is_integer());
                assert!(c.to_integer().abs().to_i64().is_some());
            }
        }
    }
}
