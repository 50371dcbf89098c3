//! f-, h-, g-, α̂- and γ̂-vectors and the binomial transforms between them.
//!
//! Index conventions are fixed: f-vectors and α̂-vectors start at index −1,
//! h-, g- and γ̂-vectors at index 0. Reading outside the stored range yields
//! zero.

use std::fmt;

use num_traits::{FromPrimitive, Num, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{format_rational, parse_rational, Rational};

/// Scalars that can live in an [`IndexedVector`] and serialize as rational strings.
pub trait Entry: Clone + PartialEq + Num + FromPrimitive + fmt::Debug {
    fn encode(&self) -> String;
    fn decode(s: &str) -> Result<Self>;
}

impl Entry for i64 {
    fn encode(&self) -> String {
        self.to_string()
    }

    fn decode(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map_err(|_| Error::InvalidRational(s.to_string()))
    }
}

impl Entry for Rational {
    fn encode(&self) -> String {
        format_rational(self)
    }

    fn decode(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

/// A finite sequence with an explicit starting index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexedVector<T> {
    first_index: i32,
    entries: Vec<T>,
}

pub type FVector = IndexedVector<i64>;
pub type HVector = IndexedVector<i64>;
pub type GVector = IndexedVector<i64>;
pub type AngleVector = IndexedVector<Rational>;
pub type GammaVector = IndexedVector<Rational>;

impl<T: Entry> IndexedVector<T> {
    pub fn new(first_index: i32, entries: Vec<T>) -> Self {
        IndexedVector {
            first_index,
            entries,
        }
    }

    pub fn zeros(first_index: i32, len: usize) -> Self {
        Self::new(first_index, vec![T::zero(); len])
    }

    pub fn first_index(&self) -> i32 {
        self.first_index
    }

    pub fn last_index(&self) -> i32 {
        self.first_index + self.entries.len() as i32 - 1
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at index `i`; zero outside the stored range.
    pub fn at(&self, i: i32) -> T {
        let k = i - self.first_index;
        if k < 0 {
            return T::zero();
        }
        self.entries.get(k as usize).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, i: i32, value: T) {
        let k = (i - self.first_index) as usize;
        self.entries[k] = value;
    }

    pub fn iter_indexed(&self) -> impl Iterator<Item = (i32, &T)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, v)| (self.first_index + k as i32, v))
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> IndexedVector<U> {
        IndexedVector::new(self.first_index, self.entries.iter().map(f).collect())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.first_index != other.first_index {
            return Err(Error::IndexConvention {
                expected: self.first_index,
                got: other.first_index,
            });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::new(
            self.first_index,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self::new(
            self.first_index,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
    }

    pub fn scaled(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Entries in reverse order, keeping the first index.
    pub fn reversed(&self) -> Self {
        let mut e = self.entries.clone();
        e.reverse();
        Self::new(self.first_index, e)
    }

    /// Text form with index labels, e.g. `h[0]=1 h[1]=3`.
    pub fn labeled(&self, name: &str) -> String {
        self.iter_indexed()
            .map(|(i, v)| format!("{name}[{i}]={}", v.encode()))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FVector {
    pub fn to_rational(&self) -> AngleVector {
        self.map(|&x| Rational::from_integer(x.into()))
    }
}

impl<T: Entry> fmt::Display for IndexedVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(Entry::encode).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct RawIndexed {
    first_index: i32,
    entries: Vec<String>,
}

impl<T: Entry> Serialize for IndexedVector<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawIndexed {
            first_index: self.first_index,
            entries: self.entries.iter().map(Entry::encode).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Entry> Deserialize<'de> for IndexedVector<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawIndexed::deserialize(d)?;
        let entries = raw
            .entries
            .iter()
            .map(|s| T::decode(s).map_err(D::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Ok(IndexedVector::new(raw.first_index, entries))
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn coeff<T: Entry>(c: u64, negative: bool) -> T {
    let c = T::from_u64(c).expect("binomial coefficient fits the scalar type");
    if negative {
        T::zero() - c
    } else {
        c
    }
}

/// Coefficients `y_k` of `Σ_k y_k t^{d-k} = Σ_i x_i (t-1)^{d-i}`, where `x`
/// holds `d + 1` values indexed from 0.
pub fn binomial_transform<T: Entry>(x: &[T], d: usize) -> Vec<T> {
    (0..=d)
        .map(|k| {
            (0..=k).fold(T::zero(), |acc, i| {
                let c = coeff::<T>(binomial(d - i, k - i), (k - i) % 2 == 1);
                acc + c * x[i].clone()
            })
        })
        .collect()
}

/// Inverse of [`binomial_transform`].
pub fn inverse_binomial_transform<T: Entry>(y: &[T], d: usize) -> Vec<T> {
    (0..=d)
        .map(|i| {
            (0..=i).fold(T::zero(), |acc, k| {
                acc + coeff::<T>(binomial(d - k, i - k), false) * y[k].clone()
            })
        })
        .collect()
}

fn check_transform_input<T: Entry>(v: &IndexedVector<T>, first: i32, d: usize) -> Result<()> {
    if v.first_index() != first {
        return Err(Error::IndexConvention {
            expected: first,
            got: v.first_index(),
        });
    }
    if v.len() != d + 1 {
        return Err(Error::LengthMismatch {
            expected: d + 1,
            got: v.len(),
        });
    }
    Ok(())
}

/// `Σ_i f_{i-1} (t-1)^{d-i} = Σ_k h_k t^{d-k}`.
pub fn h_from_f(f: &FVector, d: usize) -> Result<HVector> {
    check_transform_input(f, -1, d)?;
    Ok(HVector::new(0, binomial_transform(f.entries(), d)))
}

pub fn f_from_h(h: &HVector, d: usize) -> Result<FVector> {
    check_transform_input(h, 0, d)?;
    Ok(FVector::new(-1, inverse_binomial_transform(h.entries(), d)))
}

/// Coefficients of `(t-1)·h(t)`; one entry longer than the input.
pub fn g_from_h(h: &HVector) -> GVector {
    let m = h.len();
    let e = h.entries();
    let g = (0..=m)
        .map(|k| {
            let cur = if k < m { e[k] } else { 0 };
            let prev = if k > 0 { e[k - 1] } else { 0 };
            cur - prev
        })
        .collect();
    GVector::new(h.first_index(), g)
}

/// The γ̂-vector: same kernel as [`h_from_f`], over rational weights.
pub fn gamma_from_alpha(alpha: &AngleVector, d: usize) -> Result<GammaVector> {
    check_transform_input(alpha, -1, d)?;
    if !alpha.at(-1).is_zero() {
        return Err(Error::Precondition(format!(
            "alpha-hat[-1] must be 0, got {}",
            format_rational(&alpha.at(-1))
        )));
    }
    Ok(GammaVector::new(0, binomial_transform(alpha.entries(), d)))
}

pub fn alpha_from_gamma(gamma: &GammaVector, d: usize) -> Result<AngleVector> {
    check_transform_input(gamma, 0, d)?;
    Ok(AngleVector::new(-1, inverse_binomial_transform(gamma.entries(), d)))
}

pub fn partial_sums<T: Entry>(v: &[T]) -> Vec<T> {
    let mut acc = T::zero();
    v.iter()
        .map(|x| {
            acc = acc.clone() + x.clone();
            acc.clone()
        })
        .collect()
}

pub fn is_palindromic<T: PartialEq>(v: &[T]) -> bool {
    v.iter().eq(v.iter().rev())
}

pub fn is_nondecreasing<T: PartialOrd>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// Weak unimodality: `a_0 ≤ … ≤ a_p ≥ … ≥ a_n` for some `p`.
pub fn is_unimodal<T: PartialOrd>(v: &[T]) -> bool {
    let mut i = 0;
    while i + 1 < v.len() && v[i] <= v[i + 1] {
        i += 1;
    }
    v[i..].windows(2).all(|w| w[0] >= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rat, ratio};

    /// Expands `Σ_i x_i (t-1)^{d-i}` by repeated polynomial multiplication
    /// and reads off coefficients from the top degree down.
    fn expand_oracle(x: &[i64], d: usize) -> Vec<i64> {
        let mut total = vec![0i64; d + 1]; // index = power of t
        for (i, &xi) in x.iter().enumerate() {
            let mut poly = vec![1i64];
            for _ in 0..(d - i) {
                let mut next = vec![0i64; poly.len() + 1];
                for (p, &c) in poly.iter().enumerate() {
                    next[p + 1] += c;
                    next[p] -= c;
                }
                poly = next;
            }
            for (p, c) in poly.iter().enumerate() {
                total[p] += xi * c;
            }
        }
        total.into_iter().rev().collect()
    }

    #[test]
    fn h_from_f_examples() {
        let h = h_from_f(&FVector::new(-1, vec![1, 3, 3]), 2).unwrap();
        assert_eq!(h.entries(), &[1, 1, 1]);
        let h = h_from_f(&FVector::new(-1, vec![1, 5, 5]), 2).unwrap();
        assert_eq!(h.entries(), &[1, 3, 1]);
        assert_eq!(expand_oracle(&[1, 5, 5], 2), vec![1, 3, 1]);
        // f(∂P) of the nine-vertex 6-polytope (boundary face counts by enumeration)
        let f = FVector::new(-1, vec![1, 9, 34, 71, 88, 63, 21]);
        assert_eq!(expand_oracle(f.entries(), 6), vec![1, 3, 4, 5, 4, 3, 1]);
        assert_eq!(h_from_f(&f, 6).unwrap().entries(), &[1, 3, 4, 5, 4, 3, 1]);
    }

    #[test]
    fn h_from_f_rejects_bad_shapes() {
        assert!(matches!(
            h_from_f(&FVector::new(-1, vec![1, 3]), 2),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            h_from_f(&FVector::new(0, vec![1, 3, 3]), 2),
            Err(Error::IndexConvention { .. })
        ));
    }

    #[test]
    fn g_from_h_examples() {
        let g = g_from_h(&HVector::new(0, vec![1, 4, 4, 4, 4, 1]));
        assert_eq!(g.entries(), &[1, 3, 0, 0, 0, -3, -1]);
        assert_eq!(g_from_h(&HVector::new(0, vec![1])).entries(), &[1, -1]);
        assert_eq!(
            g_from_h(&HVector::new(0, vec![1, 1, 1, 1])).entries(),
            &[1, 0, 0, 0, -1]
        );
    }

    #[test]
    fn gamma_from_alpha_examples() {
        let a = AngleVector::new(-1, vec![rat(0), ratio(3, 4), ratio(7, 4)]);
        let g = gamma_from_alpha(&a, 2).unwrap();
        assert_eq!(g.entries(), &[rat(0), ratio(3, 4), rat(1)]);
        let z = gamma_from_alpha(&AngleVector::zeros(-1, 4), 3).unwrap();
        assert!(z.entries().iter().all(Zero::is_zero));
        let bad = AngleVector::new(-1, vec![rat(1), rat(0), rat(0)]);
        assert!(matches!(gamma_from_alpha(&bad, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn indicator_alpha_gives_relative_h() {
        // f(D) of the dark complex of a triangle vertex region
        let f = FVector::new(-1, vec![0, 1, 2]);
        let via_gamma = gamma_from_alpha(&f.to_rational(), 2).unwrap();
        let via_h = h_from_f(&f, 2).unwrap().map(|&x| rat(x));
        assert_eq!(via_gamma, via_h);
        assert_eq!(via_h.entries(), &[rat(0), rat(1), rat(1)]);
    }

    #[test]
    fn padding_reads_zero() {
        let f = FVector::new(-1, vec![1, 3, 3]);
        assert_eq!(f.at(-2), 0);
        assert_eq!(f.at(2), 0);
        assert_eq!(f.at(0), 3);
    }

    #[test]
    fn sequence_predicates() {
        assert!(is_unimodal(&[0, 1, 1, 3, 2, 2, 0]));
        assert!(!is_unimodal(&[0, 0, 4, 5, 4, 6, 2]));
        assert!(is_unimodal(&[1, 1, 1]));
        assert!(is_unimodal::<i64>(&[]));
        assert!(is_nondecreasing(&[0, 1, 1, 2]));
        assert!(!is_nondecreasing(&[0, 2, 1]));
        assert!(is_palindromic(&[1, 3, 4, 3, 1]));
        assert_eq!(partial_sums(&[1i64, 3, 0, 0, 0, -3]), vec![1, 4, 4, 4, 4, 1]);
    }

    #[test]
    fn serializes_with_first_index() {
        let a = AngleVector::new(-1, vec![rat(0), ratio(3, 4), ratio(7, 4)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"first_index":-1,"entries":["0","3/4","7/4"]}"#);
        let back: AngleVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        assert_eq!(a.labeled("a"), "a[-1]=0 a[0]=3/4 a[1]=7/4");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn h_round_trip(d in 1usize..8, seed in prop::collection::vec(-50i64..50, 9)) {
                let f = FVector::new(-1, seed[..=d].to_vec());
                let h = h_from_f(&f, d).unwrap();
                prop_assert_eq!(f_from_h(&h, d).unwrap(), f.clone());
                prop_assert_eq!(h.entries().to_vec(), expand_oracle(f.entries(), d));
            }

            #[test]
            fn h_is_linear(d in 1usize..7,
                           a in prop::collection::vec(-50i64..50, 8),
                           b in prop::collection::vec(-50i64..50, 8)) {
                let fa = FVector::new(-1, a[..=d].to_vec());
                let fb = FVector::new(-1, b[..=d].to_vec());
                let lhs = h_from_f(&fa.checked_add(&fb).unwrap(), d).unwrap();
                let rhs = h_from_f(&fa, d).unwrap().checked_add(&h_from_f(&fb, d).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn g_partial_sums_reproduce_h(h in prop::collection::vec(-20i64..20, 1..9)) {
                let g = g_from_h(&HVector::new(0, h.clone()));
                let sums = partial_sums(g.entries());
                prop_assert_eq!(&sums[..h.len()], &h[..]);
                prop_assert_eq!(sums[h.len()], 0);
            }
        }
    }
}
