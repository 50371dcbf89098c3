//! Exact rational scalars, vectors, hyperplanes and linear/projective maps.
//!
//! Everything here is exact: coordinates are [`BigRational`]s, integer
//! directions are [`BigInt`] vectors, and signs are decided without any
//! tolerance.

use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"-48"` or `"p/q"`; the result is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"n"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter storing a [`Rational`] as its canonical string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as an array of strings.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

/// A point or direction in `Q^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RVector(pub Vec<Rational>);

impl RVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RVector(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coords: &[BigInt]) -> Self {
        RVector(coords.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        RVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RVector) -> Result<Rational> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn add(&self, other: &RVector) -> Result<RVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(RVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &RVector) -> Result<RVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(RVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, s: &Rational) -> RVector {
        RVector(self.0.iter().map(|a| a * s).collect())
    }

    /// Integer vector pointing in the same direction (positive rescaling only), gcd 1.
    pub fn to_primitive_ray(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect();
        reduce_by_gcd(ints)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(rational_to_f64).collect()
    }
}

impl Neg for &RVector {
    type Output = RVector;
    fn neg(self) -> RVector {
        RVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(q))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rational_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for RVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        serde_rational_vec::deserialize(d).map(RVector)
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// The affine functional `x ↦ <normal, x> - offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearFunctional {
    normal: RVector,
    offset: Rational,
}

impl LinearFunctional {
    pub fn new(normal: RVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(LinearFunctional { normal, offset })
    }

    /// Hyperplane through the origin.
    pub fn central(normal: RVector) -> Result<Self> {
        Self::new(normal, Rational::zero())
    }

    pub fn normal(&self) -> &RVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn value(&self, point: &RVector) -> Result<Rational> {
        Ok(self.normal.dot(point)? - &self.offset)
    }

    pub fn negated(&self) -> LinearFunctional {
        LinearFunctional {
            normal: -&self.normal,
            offset: -&self.offset,
        }
    }
}

pub fn sign_eval(functional: &LinearFunctional, point: &RVector) -> Result<Sign> {
    functional.value(point).map(|v| Sign::of(&v))
}

pub fn reduce_by_gcd(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Canonical integer representative of the line spanned by `v`: gcd 1 and
/// first nonzero entry positive.
pub fn primitive_integer_normal(v: &RVector) -> Result<Vec<BigInt>> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut ints = v.to_primitive_ray();
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    Ok(ints)
}

pub fn primitive_normal(v: &RVector) -> Result<RVector> {
    primitive_integer_normal(v).map(|ints| RVector::from_bigints(&ints))
}

pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row[c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Dimension of the affine hull of the given points (`-1` for no points).
pub fn affine_dimension(points: &[&RVector]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.0.iter().zip(&first.0).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs) as isize
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in rest.iter_mut() {
            if !row[c].is_zero() {
                let factor = &row[c] / &pivot_row[c];
                for (x, y) in row[c..n].iter_mut().zip(&pivot_row[c..n]) {
                    *x -= &factor * y;
                }
            }
        }
    }
    det
}

/// A linear map of `Q^d`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMap {
    entries: Vec<Vec<Rational>>,
}

impl SquareMap {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            check_dim(n, row.len())?;
        }
        Ok(SquareMap { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); dim])
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let n = diag.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { diag[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        SquareMap { entries }
    }

    /// `C_eps`: scales coordinate `axis` by `eps`, fixes the others.
    pub fn flattening(dim: usize, axis: usize, eps: Rational) -> Self {
        let mut diag = vec![Rational::one(); dim];
        diag[axis] = eps;
        Self::diagonal(&diag)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn determinant(&self) -> Rational {
        determinant(&self.entries)
    }

    pub fn apply(&self, v: &RVector) -> Result<RVector> {
        check_dim(self.dim(), v.dim())?;
        Ok(RVector(
            self.entries
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&v.0)
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }
}

/// A projective transformation acting on homogenized points `(x, 1)` by a
/// `(d+1)×(d+1)` matrix followed by dehomogenization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveMap {
    matrix: SquareMap,
}

impl ProjectiveMap {
    pub fn new(matrix: SquareMap) -> Result<Self> {
        if matrix.dim() < 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: matrix.dim(),
            });
        }
        Ok(ProjectiveMap { matrix })
    }

    /// `x ↦ x / (1 + <c, x>)`: the identity plus a rank-one change of the
    /// homogenizing row.
    pub fn rank_one(c: &RVector) -> Self {
        let d = c.dim();
        let mut m = SquareMap::identity(d + 1).entries;
        for (j, cj) in c.0.iter().enumerate() {
            m[d][j] = cj.clone();
        }
        ProjectiveMap {
            matrix: SquareMap { entries: m },
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim() - 1
    }

    pub fn matrix(&self) -> &SquareMap {
        &self.matrix
    }

    /// Image of an affine point; `None` when the homogeneous coordinate is not positive.
    pub fn apply_point(&self, x: &RVector) -> Result<Option<RVector>> {
        check_dim(self.dim(), x.dim())?;
        let mut h = x.0.clone();
        h.push(Rational::one());
        let image = self.matrix.apply(&RVector(h))?;
        let mut coords = image.0;
        let w = coords.pop().expect("homogeneous coordinate");
        if !w.is_positive() {
            return Ok(None);
        }
        Ok(Some(RVector(coords.iter().map(|c| c / &w).collect())))
    }
}
