//! V-polytopes, facet enumeration and the face lattice.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    affine_dimension, nullspace, rank, LinearFunctional, ProjectiveMap, RVector, Rational,
    SquareMap,
};
use crate::vectors::FVector;

pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        VertexSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for VertexSet {
    /// Lexicographic on the sorted index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let idx = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex index {bad} too large")));
        }
        Ok(VertexSet::from_indices(idx))
    }
}

/// A full-dimensional point configuration in `Q^d`, read as the vertex list
/// of its convex hull.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<RVector>,
}

#[derive(Deserialize)]
struct RawPolytope {
    dim: usize,
    vertices: Vec<RVector>,
}

impl<'de> Deserialize<'de> for VPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPolytope::deserialize(d)?;
        VPolytope::new(raw.dim, raw.vertices).map_err(serde::de::Error::custom)
    }
}

impl VPolytope {
    /// Checks dimensions, distinctness and full-dimensionality. Whether every
    /// point is a vertex is decided by [`facet_enumeration`].
    pub fn new(dim: usize, vertices: Vec<RVector>) -> Result<Self> {
        if dim == 0 || vertices.len() < dim + 1 {
            return Err(Error::TooFewVertices);
        }
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                max: MAX_VERTICES,
                got: vertices.len(),
            });
        }
        for v in &vertices {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(Error::DuplicateVertex { first: i, second: j });
                }
            }
        }
        let refs: Vec<&RVector> = vertices.iter().collect();
        let affine_dim = affine_dimension(&refs);
        if affine_dim < dim as isize {
            return Err(Error::NotFullDimensional {
                dim,
                affine_dim: affine_dim.max(0) as usize,
            });
        }
        Ok(VPolytope { dim, vertices })
    }

    pub fn from_ints(dim: usize, vertices: &[&[i64]]) -> Result<Self> {
        Self::new(dim, vertices.iter().map(|v| RVector::from_ints(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RVector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Mean of the vertices; an interior point.
    pub fn centroid(&self) -> RVector {
        let n = Rational::from_integer(self.vertices.len().into());
        let mut sum = RVector::zeros(self.dim);
        for v in &self.vertices {
            sum = sum.add(v).expect("same dimension");
        }
        sum.scale(&n.recip())
    }
}

/// A facet: outer inequality `<a, x> ≤ b` with `a` a primitive integer
/// vector, together with the vertices attaining equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub functional: LinearFunctional,
    pub vertices: VertexSet,
}

/// All facet-defining inequalities, sorted by vertex set.
///
/// Every facet contains an affinely independent `d`-subset of its vertices,
/// so trying all `d`-subsets finds every facet, simplicial or not.
pub fn facet_enumeration(p: &VPolytope) -> Result<Vec<Facet>> {
    let d = p.dim();
    let n = p.num_vertices();
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut facets = Vec::new();

    for subset in combinations(n, d) {
        let set = VertexSet::from_indices(subset.iter().copied());
        if seen.iter().any(|f| set.is_subset(*f)) {
            continue;
        }
        let rows: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| {
                let mut r = p.vertices[i].0.clone();
                r.push(-Rational::from_integer(1.into()));
                r
            })
            .collect();
        let ns = nullspace(&rows, d + 1);
        if ns.len() != 1 {
            continue;
        }
        let mut sol = ns.into_iter().next().expect("one nullspace vector");
        let offset = sol.pop().expect("offset coordinate");
        let normal = RVector::new(sol);
        if normal.is_zero() {
            continue;
        }
        let values: Vec<Rational> = p
            .vertices
            .iter()
            .map(|v| normal.dot(v).expect("dimension") - &offset)
            .collect();
        let has_pos = values.iter().any(Signed::is_positive);
        let has_neg = values.iter().any(Signed::is_negative);
        if has_pos && has_neg {
            continue;
        }
        let (normal, offset) = if has_pos {
            (-&normal, -offset)
        } else {
            (normal, offset)
        };
        let on = VertexSet::from_indices(values.iter().enumerate().filter_map(|(i, v)| {
            if v.is_zero() {
                Some(i)
            } else {
                None
            }
        }));
        if !seen.insert(on) {
            continue;
        }
        let ints = normal.to_primitive_ray();
        let scale = &ints[normal.0.iter().position(|c| !c.is_zero()).unwrap()];
        let first = normal.0.iter().find(|c| !c.is_zero()).unwrap();
        let factor = Rational::from_integer(scale.clone()) / first;
        let functional = LinearFunctional::new(RVector::from_bigints(&ints), offset * factor)?;
        facets.push(Facet {
            functional,
            vertices: on,
        });
    }
    facets.sort_by_key(|f| f.vertices);

    // A listed point is a vertex iff the facets through it pin it down.
    for i in 0..n {
        let normals: Vec<Vec<Rational>> = facets
            .iter()
            .filter(|f| f.vertices.contains(i))
            .map(|f| f.functional.normal().0.clone())
            .collect();
        if rank(&normals) < d {
            return Err(Error::RedundantPoint { index: i });
        }
    }
    Ok(facets)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Faces of a polytope graded by dimension `-1..=d`, each a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    dim: usize,
    /// `ranks[i + 1]` holds the `i`-dimensional faces, sorted.
    ranks: Vec<Vec<VertexSet>>,
    /// `covers[i + 1][j]` lists the indices of the `(i-1)`-faces contained in face `j`.
    covers: Vec<Vec<Vec<usize>>>,
}

pub fn face_lattice(p: &VPolytope, facets: &[Facet]) -> Result<FaceLattice> {
    let d = p.dim();
    let mut all: HashSet<VertexSet> = facets.iter().map(|f| f.vertices).collect();
    let mut queue: Vec<VertexSet> = all.iter().copied().collect();
    while let Some(g) = queue.pop() {
        for f in facets {
            let h = g.intersection(f.vertices);
            if all.insert(h) {
                queue.push(h);
            }
        }
    }
    all.insert(VertexSet::empty());
    all.insert(VertexSet::full(p.num_vertices()));

    let mut ranks = vec![Vec::new(); d + 2];
    for face in all {
        let dim = if face.is_empty() {
            -1
        } else if face == VertexSet::full(p.num_vertices()) {
            d as isize
        } else {
            let pts: Vec<&RVector> = face.iter().map(|i| &p.vertices()[i]).collect();
            affine_dimension(&pts)
        };
        ranks[(dim + 1) as usize].push(face);
    }
    for r in &mut ranks {
        r.sort();
    }
    let covers = (0..ranks.len())
        .map(|r| {
            ranks[r]
                .iter()
                .map(|face| {
                    if r == 0 {
                        return Vec::new();
                    }
                    ranks[r - 1]
                        .iter()
                        .enumerate()
                        .filter(|(_, g)| g.is_subset(*face))
                        .map(|(j, _)| j)
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(FaceLattice { dim: d, ranks, covers })
}

impl FaceLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `i`-dimensional faces, `-1 ≤ i ≤ d`.
    pub fn faces(&self, i: isize) -> &[VertexSet] {
        &self.ranks[(i + 1) as usize]
    }

    pub fn covers(&self, i: isize, j: usize) -> &[usize] {
        &self.covers[(i + 1) as usize][j]
    }

    /// Non-empty proper faces with their dimensions.
    pub fn boundary_faces(&self) -> impl Iterator<Item = (isize, VertexSet)> + '_ {
        (0..self.dim as isize).flat_map(move |i| self.faces(i).iter().map(move |&f| (i, f)))
    }

    /// Structural sanity: graded, bounded, ridges in two facets, Euler relation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let d = self.dim as isize;
        if self.faces(-1) != [VertexSet::empty()] || self.faces(d).len() != 1 {
            return Err("lattice is not bounded by the empty face and the polytope".into());
        }
        for i in 0..=d {
            for (j, _) in self.faces(i).iter().enumerate() {
                if self.covers(i, j).is_empty() {
                    return Err(format!("face {j} of dimension {i} covers nothing"));
                }
            }
        }
        if d >= 2 {
            for ridge in self.faces(d - 2) {
                let count = self
                    .faces(d - 1)
                    .iter()
                    .filter(|f| ridge.is_subset(**f))
                    .count();
                if count != 2 {
                    return Err(format!("ridge {ridge:?} lies in {count} facets"));
                }
            }
        }
        let euler: i64 = (0..d)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * self.faces(i).len() as i64
            })
            .sum();
        let expected = 1 + if (d - 1) % 2 == 0 { 1 } else { -1 };
        if euler != expected {
            return Err(format!("Euler sum {euler}, expected {expected}"));
        }
        Ok(())
    }
}

/// `(f_{-1}, f_0, …, f_{d-1})` of the boundary complex.
pub fn f_vector(lattice: &FaceLattice) -> FVector {
    FVector::new(
        -1,
        (-1..lattice.dim() as isize)
            .map(|i| lattice.faces(i).len() as i64)
            .collect(),
    )
}

pub fn is_simplicial(facets: &[Facet], dim: usize) -> bool {
    facets.iter().all(|f| f.vertices.len() == dim)
}

pub fn negate(p: &VPolytope) -> VPolytope {
    VPolytope {
        dim: p.dim,
        vertices: p.vertices.iter().map(|v| -v).collect(),
    }
}

pub fn apply_map(m: &SquareMap, p: &VPolytope) -> Result<VPolytope> {
    if m.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: m.dim(),
        });
    }
    if m.determinant().is_zero() {
        return Err(Error::SingularMap);
    }
    let vertices = p
        .vertices
        .iter()
        .map(|v| m.apply(v))
        .collect::<Result<Vec<_>>>()?;
    VPolytope::new(p.dim, vertices)
}

/// Image under a projective map; every vertex must stay on the positive side.
pub fn apply_projective(m: &ProjectiveMap, p: &VPolytope) -> Result<VPolytope> {
    if m.matrix().determinant().is_zero() {
        return Err(Error::SingularMap);
    }
    let vertices = p
        .vertices
        .iter()
        .enumerate()
        .map(|(index, v)| m.apply_point(v)?.ok_or(Error::ProjectiveOutOfRange { index }))
        .collect::<Result<Vec<_>>>()?;
    VPolytope::new(p.dim, vertices)
}

/// A polytope together with its facets and face lattice.
#[derive(Debug, Clone)]
pub struct Polytope {
    geometry: VPolytope,
    facets: Vec<Facet>,
    lattice: FaceLattice,
}

impl Polytope {
    pub fn new(geometry: VPolytope) -> Result<Self> {
        let facets = facet_enumeration(&geometry)?;
        let lattice = face_lattice(&geometry, &facets)?;
        Ok(Polytope {
            geometry,
            facets,
            lattice,
        })
    }

    pub fn geometry(&self) -> &VPolytope {
        &self.geometry
    }

    pub fn dim(&self) -> usize {
        self.geometry.dim()
    }

    pub fn num_vertices(&self) -> usize {
        self.geometry.num_vertices()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn is_simplicial(&self) -> bool {
        is_simplicial(&self.facets, self.dim())
    }

    pub fn f_vector(&self) -> FVector {
        f_vector(&self.lattice)
    }

    pub fn negated(&self) -> Result<Polytope> {
        Polytope::new(negate(&self.geometry))
    }

    /// Facet vertex sets, for comparing combinatorial types under a fixed labelling.
    pub fn facet_sets(&self) -> Vec<VertexSet> {
        self.facets.iter().map(|f| f.vertices).collect()
    }

    /// Combinatorially a bipyramid over a `(d-1)`-simplex: for some pair of
    /// apexes `a, b`, the facets are exactly `{a} ∪ (B - x)` and `{b} ∪ (B - x)`
    /// for `x` in the base `B` of the remaining `d` vertices.
    pub fn is_bipyramid(&self) -> bool {
        let n = self.num_vertices();
        let d = self.dim();
        if n != d + 2 || self.facets.len() != 2 * d {
            return false;
        }
        let actual: std::collections::BTreeSet<VertexSet> = self.facet_sets().into_iter().collect();
        for a in 0..n {
            for b in a + 1..n {
                let base: Vec<usize> = (0..n).filter(|&k| k != a && k != b).collect();
                let expected: std::collections::BTreeSet<VertexSet> = base
                    .iter()
                    .flat_map(|&x| {
                        let rest = base.iter().copied().filter(move |&k| k != x);
                        [
                            VertexSet::from_indices(rest.clone().chain([a])),
                            VertexSet::from_indices(rest.chain([b])),
                        ]
                    })
                    .collect();
                if expected == actual {
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rat, ratio};

    fn triangle() -> VPolytope {
        VPolytope::from_ints(2, &[&[2, 0], &[-1, 2], &[-1, -2]]).unwrap()
    }

    fn cross_polytope(d: usize) -> VPolytope {
        let mut vs = Vec::new();
        for i in 0..d {
            for s in [1, -1] {
                let mut v = vec![0; d];
                v[i] = s;
                vs.push(RVector::from_ints(&v));
            }
        }
        VPolytope::new(d, vs).unwrap()
    }

    fn cube3() -> VPolytope {
        let mut vs = Vec::new();
        for x in [0, 1] {
            for y in [0, 1] {
                for z in [0, 1] {
                    vs.push(RVector::from_ints(&[x, y, z]));
                }
            }
        }
        VPolytope::new(3, vs).unwrap()
    }

    /// Brute-force facet count: d-subsets whose affine hull supports all points.
    fn brute_force_facet_sets(p: &VPolytope) -> HashSet<VertexSet> {
        let d = p.dim();
        let mut out = HashSet::new();
        for s in combinations(p.num_vertices(), d) {
            let rows: Vec<Vec<Rational>> = s
                .iter()
                .map(|&i| {
                    let mut r = p.vertices()[i].0.clone();
                    r.push(rat(-1));
                    r
                })
                .collect();
            let ns = nullspace(&rows, d + 1);
            if ns.len() != 1 {
                continue;
            }
            let vals: Vec<Rational> = p
                .vertices()
                .iter()
                .map(|v| {
                    v.0.iter()
                        .zip(&ns[0])
                        .fold(rat(0), |a, (x, y)| a + x * y)
                        - &ns[0][d]
                })
                .collect();
            if vals.iter().all(|v| !v.is_positive()) || vals.iter().all(|v| !v.is_negative()) {
                out.insert(VertexSet::from_indices(
                    (0..vals.len()).filter(|&i| vals[i].is_zero()),
                ));
            }
        }
        out
    }

    #[test]
    fn triangle_facets_and_f_vector() {
        let p = Polytope::new(triangle()).unwrap();
        assert_eq!(p.facets().len(), 3);
        assert_eq!(p.f_vector().entries(), &[1, 3, 3]);
        assert!(p.is_simplicial());
        p.lattice().validate().unwrap();
        for f in p.facets() {
            for (i, v) in p.geometry().vertices().iter().enumerate() {
                let val = f.functional.value(v).unwrap();
                assert_eq!(val.is_zero(), f.vertices.contains(i));
                assert!(!val.is_positive());
            }
        }
    }

    #[test]
    fn pentagon_f_vector() {
        let p = VPolytope::from_ints(2, &[&[2, 0], &[2, 2], &[0, 3], &[-1, 2], &[-1, 0]]).unwrap();
        let p = Polytope::new(p).unwrap();
        assert_eq!(p.f_vector().entries(), &[1, 5, 5]);
    }

    #[test]
    fn cross_polytope_4() {
        let v = cross_polytope(4);
        let p = Polytope::new(v.clone()).unwrap();
        assert_eq!(p.facets().len(), 16);
        assert_eq!(brute_force_facet_sets(&v).len(), 16);
        assert_eq!(p.f_vector().entries(), &[1, 8, 24, 32, 16]);
        assert!(p.is_simplicial());
        p.lattice().validate().unwrap();
        for f in p.facets() {
            assert!(f.functional.normal().0.iter().all(|c| c.abs() == rat(1)));
        }
    }

    #[test]
    fn cube_is_not_simplicial() {
        let p = Polytope::new(cube3()).unwrap();
        assert_eq!(p.facets().len(), 6);
        assert!(!p.is_simplicial());
        assert_eq!(p.f_vector().entries(), &[1, 8, 12, 6]);
        p.lattice().validate().unwrap();
    }

    #[test]
    fn tetrahedron_boundary() {
        let p = VPolytope::from_ints(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let p = Polytope::new(p).unwrap();
        assert_eq!(p.f_vector().entries(), &[1, 4, 6, 4]);
        assert!(!p.is_bipyramid());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            VPolytope::from_ints(2, &[&[0, 0], &[1, 0], &[2, 0]]),
            Err(Error::NotFullDimensional { .. })
        ));
        assert!(matches!(
            VPolytope::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 0]]),
            Err(Error::DuplicateVertex { first: 1, second: 3 })
        ));
        let interior = VPolytope::from_ints(2, &[&[0, 0], &[4, 0], &[0, 4], &[1, 1]]).unwrap();
        assert!(matches!(
            facet_enumeration(&interior),
            Err(Error::RedundantPoint { index: 3 })
        ));
        let on_edge = VPolytope::from_ints(2, &[&[0, 0], &[4, 0], &[0, 4], &[2, 0]]).unwrap();
        assert!(matches!(
            facet_enumeration(&on_edge),
            Err(Error::RedundantPoint { index: 3 })
        ));
    }

    #[test]
    fn negation_flips_normals() {
        let p = Polytope::new(triangle()).unwrap();
        let q = p.negated().unwrap();
        assert_eq!(negate(&negate(p.geometry())), *p.geometry());
        for (f, g) in p.facets().iter().zip(q.facets()) {
            assert_eq!(f.vertices, g.vertices);
            assert_eq!(&-f.functional.normal(), g.functional.normal());
        }
        let c = cross_polytope(3);
        let nc = negate(&c);
        let a: HashSet<_> = c.vertices().iter().cloned().collect();
        let b: HashSet<_> = nc.vertices().iter().cloned().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn maps() {
        let t = triangle();
        assert_eq!(apply_map(&SquareMap::identity(2), &t).unwrap(), t);
        assert_eq!(apply_map(&SquareMap::flattening(2, 0, rat(1)), &t).unwrap(), t);
        let half = apply_map(&SquareMap::flattening(2, 0, ratio(1, 2)), &t).unwrap();
        assert_eq!(half.vertices()[0], RVector::from_ints(&[1, 0]));
        assert!(matches!(
            apply_map(&SquareMap::diagonal(&[rat(1), rat(0)]), &t),
            Err(Error::SingularMap)
        ));
        let bad = ProjectiveMap::rank_one(&RVector::from_ints(&[-1, 0]));
        assert!(matches!(
            apply_projective(&bad, &t),
            Err(Error::ProjectiveOutOfRange { index: 0 })
        ));
    }

    #[test]
    fn bipyramid_recognition() {
        let bp = VPolytope::from_ints(
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        )
        .unwrap();
        assert!(Polytope::new(bp).unwrap().is_bipyramid());
        assert!(!Polytope::new(cross_polytope(3)).unwrap().is_bipyramid());
    }

    #[test]
    fn combinations_enumerate_all() {
        let all: Vec<_> = combinations(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }

    #[test]
    fn vertex_set_order_is_lexicographic() {
        let a = VertexSet::from_indices([0, 5]);
        let b = VertexSet::from_indices([1, 2]);
        assert!(a < b);
        assert_eq!(format!("{a:?}"), "{0, 5}");
    }
}
