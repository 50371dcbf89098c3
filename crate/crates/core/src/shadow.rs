//! Tangent cones and the dark / shadow / bright split of the boundary.
//!
//! For a region `R` a face `F` is dark when `R ⊆ T_F P`, which holds iff every
//! facet through `F` has `<a_k, r> < 0` for `r` in `R`. Darkness is read off
//! the region's sign vector only, never from witness coordinates.

use std::ops::Range;

use fixedbitset::FixedBitSet;
use num_traits::{Signed, Zero};

use crate::arrangement::{CentralArrangement, Region, SignVector};
use crate::error::{Error, Result};
use crate::geometry::{int_dot, RVector, Rational, Sign};
use crate::polytope::{Facet, Polytope, VertexSet};
use crate::vectors::{h_from_f, FVector, HVector};

/// Facets whose hyperplane contains a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentCone {
    pub active_facets: FixedBitSet,
}

pub fn tangent_active_set(face: VertexSet, facets: &[Facet]) -> Result<TangentCone> {
    if face.is_empty() {
        return Err(Error::EmptyFace);
    }
    let mut active = FixedBitSet::with_capacity(facets.len());
    for (k, f) in facets.iter().enumerate() {
        if face.is_subset(f.vertices) {
            active.insert(k);
        }
    }
    Ok(TangentCone {
        active_facets: active,
    })
}

/// `R ⊆ T_F P`: every active facet is dark for the region.
pub fn is_dark(cone: &TangentCone, arr: &CentralArrangement, region: &SignVector) -> bool {
    cone.active_facets
        .ones()
        .all(|k| arr.facet_sign(k, region) == Sign::Negative)
}

#[derive(Debug, Clone)]
pub struct BoundaryFace {
    pub dim: isize,
    pub vertices: VertexSet,
    pub cone: TangentCone,
}

/// The non-empty proper faces of `P` with their tangent cones.
#[derive(Debug, Clone)]
pub struct BoundaryComplex {
    dim: usize,
    faces: Vec<BoundaryFace>,
    facets: Vec<VertexSet>,
    f: FVector,
}

impl BoundaryComplex {
    pub fn new(p: &Polytope) -> Self {
        let faces = p
            .lattice()
            .boundary_faces()
            .map(|(dim, vertices)| BoundaryFace {
                dim,
                vertices,
                cone: tangent_active_set(vertices, p.facets()).expect("non-empty face"),
            })
            .collect();
        BoundaryComplex {
            dim: p.dim(),
            faces,
            facets: p.facet_sets(),
            f: p.f_vector(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn faces(&self) -> &[BoundaryFace] {
        &self.faces
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn f_vector(&self) -> &FVector {
        &self.f
    }

    pub fn h_vector(&self) -> HVector {
        h_from_f(&self.f, self.dim).expect("boundary f-vector has length d+1")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceClass {
    Dark,
    Shadow,
    Bright,
}

/// Which part of the boundary a [`RelativeComplex`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Dark,
    Bright,
    Shadow,
    DarkClosure,
    BrightClosure,
}

impl Flavor {
    /// `f_{-1}`: zero for the relative complexes `D` and `B`, one for genuine complexes.
    pub fn empty_face_count(self) -> i64 {
        match self {
            Flavor::Dark | Flavor::Bright => 0,
            Flavor::Shadow | Flavor::DarkClosure | Flavor::BrightClosure => 1,
        }
    }
}

/// A set of boundary faces, indexed like [`BoundaryComplex::faces`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeComplex {
    flavor: Flavor,
    kept: FixedBitSet,
    f: FVector,
}

impl RelativeComplex {
    fn new(boundary: &BoundaryComplex, flavor: Flavor, kept: FixedBitSet) -> Self {
        let d = boundary.dim();
        let mut entries = vec![0i64; d + 1];
        entries[0] = flavor.empty_face_count();
        for i in kept.ones() {
            entries[(boundary.faces[i].dim + 1) as usize] += 1;
        }
        RelativeComplex {
            flavor,
            kept,
            f: FVector::new(-1, entries),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn kept(&self) -> &FixedBitSet {
        &self.kept
    }

    pub fn contains(&self, face: usize) -> bool {
        self.kept.contains(face)
    }

    pub fn f_vector(&self) -> &FVector {
        &self.f
    }

    /// h-vector with respect to the ambient dimension `d`.
    pub fn h_vector(&self) -> HVector {
        let d = self.f.len() - 1;
        h_from_f(&self.f, d).expect("relative f-vector has length d+1")
    }

    pub fn kept_faces<'a>(&'a self, boundary: &'a BoundaryComplex) -> impl Iterator<Item = &'a BoundaryFace> + 'a {
        self.kept.ones().map(move |i| &boundary.faces[i])
    }
}

pub fn relative_f_vector(rc: &RelativeComplex) -> FVector {
    rc.f.clone()
}

/// `∂P = D ⊔ π ⊔ B` for one region, plus the closures `D̄ = ∂P \ B` and `B̄ = ∂P \ D`.
#[derive(Debug, Clone)]
pub struct ShadowDecomposition {
    pub dark: RelativeComplex,
    pub shadow: RelativeComplex,
    pub bright: RelativeComplex,
    pub dark_closure: RelativeComplex,
    pub bright_closure: RelativeComplex,
}

pub fn classify(boundary: &BoundaryComplex, arr: &CentralArrangement, region: &SignVector) -> Vec<FaceClass> {
    let signs = arr.facet_signs(region);
    let mut dark = FixedBitSet::with_capacity(signs.len());
    let mut bright = FixedBitSet::with_capacity(signs.len());
    for (k, s) in signs.iter().enumerate() {
        match s {
            Sign::Negative => dark.insert(k),
            Sign::Positive => bright.insert(k),
            Sign::Zero => unreachable!("region signs are strict"),
        }
    }
    boundary
        .faces
        .iter()
        .map(|f| {
            if f.cone.active_facets.is_subset(&dark) {
                FaceClass::Dark
            } else if f.cone.active_facets.is_subset(&bright) {
                FaceClass::Bright
            } else {
                FaceClass::Shadow
            }
        })
        .collect()
}

pub fn shadow_decomposition(
    boundary: &BoundaryComplex,
    arr: &CentralArrangement,
    region: &SignVector,
) -> ShadowDecomposition {
    let classes = classify(boundary, arr, region);
    let n = classes.len();
    let set = |pred: &dyn Fn(FaceClass) -> bool| {
        let mut s = FixedBitSet::with_capacity(n);
        for (i, c) in classes.iter().enumerate() {
            if pred(*c) {
                s.insert(i);
            }
        }
        s
    };
    ShadowDecomposition {
        dark: RelativeComplex::new(boundary, Flavor::Dark, set(&|c| c == FaceClass::Dark)),
        shadow: RelativeComplex::new(boundary, Flavor::Shadow, set(&|c| c == FaceClass::Shadow)),
        bright: RelativeComplex::new(boundary, Flavor::Bright, set(&|c| c == FaceClass::Bright)),
        dark_closure: RelativeComplex::new(
            boundary,
            Flavor::DarkClosure,
            set(&|c| c != FaceClass::Bright),
        ),
        bright_closure: RelativeComplex::new(
            boundary,
            Flavor::BrightClosure,
            set(&|c| c != FaceClass::Dark),
        ),
    }
}

/// `h_i(D) = h_{d-i}(D̄)` and `h_i(B) = h_{d-i}(B̄)` for all `0 ≤ i ≤ d`.
pub fn ball_dehn_sommerville_check(dec: &ShadowDecomposition) -> bool {
    let pair = |a: &RelativeComplex, b: &RelativeComplex| {
        let (ha, hb) = (a.h_vector(), b.h_vector());
        let d = ha.len() as i32 - 1;
        (0..=d).all(|i| ha.at(i) == hb.at(d - i))
    };
    pair(&dec.dark, &dec.dark_closure) && pair(&dec.bright, &dec.bright_closure)
}

/// A facet order of `∂P`; the first `split` facets are the bright ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingOrder {
    pub facet_order: Vec<usize>,
    pub split: usize,
}

pub const SHELLING_ATTEMPTS: usize = 8;

/// Line shelling along a ray of the region, started from the vertex centroid.
pub fn line_shelling(p: &Polytope, arr: &CentralArrangement, region: &Region) -> Result<ShellingOrder> {
    if !p.is_simplicial() {
        return Err(Error::NotSimplicial);
    }
    let c = p.geometry().centroid();
    let base = RVector::new(region.witness.coords().to_vec()).to_primitive_ray();
    let mut ray = base.clone();
    for attempt in 0..=SHELLING_ATTEMPTS {
        if attempt > 0 {
            ray = perturb(arr, &base, attempt);
        }
        let r = RVector::from_bigints(&ray);
        if let Some(order) = line_order(p, &c, &r) {
            validate_shelling(&p.facet_sets(), &order.facet_order)?;
            return Ok(order);
        }
    }
    Err(Error::Shelling(format!(
        "ray ties persisted after {SHELLING_ATTEMPTS} perturbations"
    )))
}

/// Facet order by hitting parameter, or `None` on a tie.
fn line_order(p: &Polytope, c: &RVector, r: &RVector) -> Option<ShellingOrder> {
    let mut bright: Vec<(Rational, usize)> = Vec::new();
    let mut dark: Vec<(Rational, usize)> = Vec::new();
    for (k, f) in p.facets().iter().enumerate() {
        let ar = f.functional.normal().dot(r).expect("dimension");
        let slack = -f.functional.value(c).expect("dimension");
        if ar.is_zero() {
            return None;
        }
        let t = slack / &ar;
        if ar.is_positive() {
            bright.push((t, k));
        } else {
            dark.push((t, k));
        }
    }
    for list in [&mut bright, &mut dark] {
        list.sort();
        if list.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
    }
    let split = bright.len();
    Some(ShellingOrder {
        facet_order: bright.into_iter().chain(dark).map(|(_, k)| k).collect(),
        split,
    })
}

/// `base + ε·v` with `v` on the moment curve and `ε` below the region slack.
fn perturb(arr: &CentralArrangement, base: &[num_bigint::BigInt], attempt: usize) -> Vec<num_bigint::BigInt> {
    use num_bigint::BigInt;
    let d = base.len();
    let s = BigInt::from(attempt as i64 + 1);
    let mut v = Vec::with_capacity(d);
    let mut pow = BigInt::from(1);
    for _ in 0..d {
        v.push(pow.clone());
        pow *= &s;
    }
    // ε = p/q with |ε<n,v>| < |<n,base>| on every hyperplane.
    let mut eps: Option<Rational> = None;
    for n in arr.hyperplanes() {
        let nv = int_dot(n, &v).abs();
        if nv.is_zero() {
            continue;
        }
        let nb = int_dot(n, base).abs();
        let cand = Rational::new(nb, nv * BigInt::from(2 * (attempt as i64 + 1)));
        eps = Some(match eps {
            Some(e) if e <= cand => e,
            _ => cand,
        });
    }
    let eps = eps.unwrap_or_else(|| Rational::from_integer(1.into()));
    let (p, q) = (eps.numer().clone(), eps.denom().clone());
    base.iter().zip(&v).map(|(b, vi)| &q * b + &p * vi).collect()
}

/// Each facet after the first must meet the earlier ones in a pure
/// `(d-2)`-dimensional complex: every `F_i ∩ F_k` with `i < k` lies in some
/// earlier ridge `F_j ∩ F_k` of size `d - 1`.
pub fn validate_shelling(facets: &[VertexSet], order: &[usize]) -> Result<()> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..facets.len()).collect::<Vec<_>>() {
        return Err(Error::Shelling("order is not a permutation of the facets".into()));
    }
    for (pos, &k) in order.iter().enumerate().skip(1) {
        let fk = facets[k];
        let d = fk.len();
        let ridges: Vec<VertexSet> = order[..pos]
            .iter()
            .map(|&j| facets[j].intersection(fk))
            .filter(|r| r.len() + 1 == d)
            .collect();
        for &i in &order[..pos] {
            let meet = facets[i].intersection(fk);
            if !ridges.iter().any(|r| meet.is_subset(*r)) {
                return Err(Error::Shelling(format!(
                    "facet {k} at position {pos} meets facet {i} outside the earlier ridges"
                )));
            }
        }
    }
    Ok(())
}

/// h-vector contributed by the facets at positions `range` of a shelling:
/// `h_j` counts the facets with exactly `j` ridges shared with earlier facets.
pub fn shelling_h_vector(facets: &[VertexSet], order: &[usize], range: Range<usize>, d: usize) -> HVector {
    let mut h = vec![0i64; d + 1];
    for pos in range {
        let fk = facets[order[pos]];
        let shared = order[..pos]
            .iter()
            .map(|&j| facets[j].intersection(fk))
            .filter(|r| r.len() + 1 == fk.len())
            .collect::<std::collections::HashSet<_>>()
            .len();
        h[shared] += 1;
    }
    HVector::new(0, h)
}
