//! Integer arithmetic in the Picard lattice of a blowup of the plane at `r`
//! points, in the fixed basis `(L, E_1, ..., E_r)`.
//!
//! The intersection form is diagonal: `L^2 = 1`, `E_i . E_j = -delta_ij`,
//! `L . E_i = 0`. All arithmetic is checked; an overflow is reported as
//! [`Error::Overflow`] by the fallible entry points and panics in the
//! operator impls. Classes of different rank never mix silently.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest number of blown-up points handled by the toolkit.
pub const MAX_RANK: usize = 7;
/// Smallest number of blown-up points handled by the toolkit.
pub const MIN_RANK: usize = 2;

pub(crate) fn check_rank(r: usize) -> Result<()> {
    if (MIN_RANK..=MAX_RANK).contains(&r) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange(r))
    }
}

/// A divisor class `d_0 L + d_1 E_1 + ... + d_r E_r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    rank: u8,
    coeffs: [i64; MAX_RANK + 1],
}

impl DivisorClass {
    /// Builds a class from `[d0, d1, ..., dr]`; the rank is `len - 1`.
    pub fn new(coeffs: &[i64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::RankOutOfRange(0));
        }
        let rank = coeffs.len() - 1;
        check_rank(rank)?;
        let mut c = [0; MAX_RANK + 1];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self {
            rank: rank as u8,
            coeffs: c,
        })
    }

    pub fn zero(rank: usize) -> Result<Self> {
        check_rank(rank)?;
        Ok(Self {
            rank: rank as u8,
            coeffs: [0; MAX_RANK + 1],
        })
    }

    /// The pullback `L` of a line.
    pub fn line(rank: usize) -> Result<Self> {
        let mut d = Self::zero(rank)?;
        d.coeffs[0] = 1;
        Ok(d)
    }

    /// The exceptional divisor `E_i`, with `i` counted from 1.
    pub fn exceptional(rank: usize, i: usize) -> Result<Self> {
        let mut d = Self::zero(rank)?;
        if i == 0 || i > rank {
            return Err(Error::Contract(format!(
                "E_{i} does not exist at rank {rank}"
            )));
        }
        d.coeffs[i] = 1;
        Ok(d)
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    #[inline]
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs[..=self.rank as usize]
    }

    /// Coefficient of `L`.
    #[inline]
    pub fn l_coeff(&self) -> i64 {
        self.coeffs[0]
    }

    /// Coefficient of `E_i` (1-based).
    #[inline]
    pub fn e_coeff(&self, i: usize) -> i64 {
        assert!(i >= 1 && i <= self.rank(), "E_{i} out of range");
        self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0)
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            })
        }
    }

    pub fn try_dot(&self, other: &Self) -> Result<i64> {
        self.same_rank(other)?;
        let mut acc = self.coeffs[0]
            .checked_mul(other.coeffs[0])
            .ok_or(Error::Overflow)?;
        for i in 1..=self.rank() {
            let p = self.coeffs[i]
                .checked_mul(other.coeffs[i])
                .ok_or(Error::Overflow)?;
            acc = acc.checked_sub(p).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Intersection number. Panics on rank mismatch or overflow; use
    /// [`intersect`] for the fallible form.
    #[inline]
    pub fn dot(&self, other: &Self) -> i64 {
        match self.try_dot(other) {
            Ok(v) => v,
            Err(e) => panic!("intersection of {self} and {other}: {e}"),
        }
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    /// `-K . d`.
    pub fn anticanonical_degree(&self) -> i64 {
        let k = canonical_unchecked(self.rank());
        -self.dot(&k)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = *self;
        for i in 0..=self.rank() {
            out.coeffs[i] = f(self.coeffs[i], other.coeffs[i]).ok_or(Error::Overflow)?;
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, i64::checked_add)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, i64::checked_sub)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let mut out = *self;
        for c in out.coeffs[..=self.rank()].iter_mut() {
            *c = c.checked_mul(k).ok_or(Error::Overflow)?;
        }
        Ok(out)
    }

    /// Drops `E_j` (1-based), giving a class on the surface with one point
    /// fewer. Requires `d_j = 0`.
    pub fn drop_exceptional(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.rank() {
            return Err(Error::Contract(format!("no E_{j} at rank {}", self.rank())));
        }
        if self.coeffs[j] != 0 {
            return Err(Error::Contract(format!(
                "{self} meets E_{j}; it does not descend"
            )));
        }
        let mut v: Vec<i64> = self.coeffs().to_vec();
        v.remove(j);
        Self::new(&v)
    }

    /// Order used for reproducible output: anticanonical degree first, then
    /// the coefficient vector lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then_with(|| {
                self.anticanonical_degree()
                    .cmp(&other.anticanonical_degree())
            })
            .then_with(|| self.coeffs().cmp(other.coeffs()))
    }
}

fn canonical_unchecked(r: usize) -> DivisorClass {
    let mut coeffs = [0; MAX_RANK + 1];
    coeffs[0] = -3;
    for c in coeffs[1..=r].iter_mut() {
        *c = 1;
    }
    DivisorClass {
        rank: r as u8,
        coeffs,
    }
}

/// Fallible intersection number `a . b`.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    a.try_dot(b)
}

/// `K = -3L + E_1 + ... + E_r`.
pub fn canonical_class(r: usize) -> Result<DivisorClass> {
    check_rank(r)?;
    Ok(canonical_unchecked(r))
}

pub fn anticanonical_degree(d: &DivisorClass) -> i64 {
    d.anticanonical_degree()
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).unwrap_or_else(|e| panic!("{self} + {rhs}: {e}"))
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(&rhs).unwrap_or_else(|e| panic!("{self} - {rhs}: {e}"))
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        self.checked_scale(-1).unwrap_or_else(|e| panic!("-{self}: {e}"))
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        rhs.checked_scale(self)
            .unwrap_or_else(|e| panic!("{self} * {rhs}: {e}"))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        DivisorClass::new(&v).map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for DivisorClass {
    type Err = Error;

    /// Parses the JSON array form `[d0, d1, ..., dr]`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<i64> = serde_json::from_str(s)
            .map_err(|e| Error::Contract(format!("divisor `{s}` is not an integer array: {e}")))?;
        DivisorClass::new(&v)
    }
}

/// A class `R` with `R^2 = -2` and `R . K = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct RootClass(DivisorClass);

impl RootClass {
    pub fn new(class: DivisorClass) -> Result<Self> {
        let k = canonical_class(class.rank())?;
        if class.self_intersection() == -2 && class.dot(&k) == 0 {
            Ok(Self(class))
        } else {
            Err(Error::Contract(format!("{class} is not a root")))
        }
    }

    pub fn class(&self) -> &DivisorClass {
        &self.0
    }
}

/// Coefficient box searched for roots and exceptional classes:
/// `|d_0| <= 4`, `|d_i| <= 3`.
pub const BOX_L: i64 = 4;
pub const BOX_E: i64 = 3;

/// Visits every class in the search box with prescribed self-intersection and
/// anticanonical degree. Coordinates are chosen one at a time and a branch is
/// dropped as soon as the remaining squares cannot be matched, so the search
/// stays exhaustive over the box without materializing it.
pub(crate) fn box_search(r: usize, square: i64, degree: i64) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; r + 1];
    for d0 in -BOX_L..=BOX_L {
        coeffs[0] = d0;
        // d0^2 - sum d_i^2 = square, and 3 d0 + sum d_i = degree
        let target_sq = d0 * d0 - square;
        let target_sum = degree - 3 * d0;
        if target_sq < 0 {
            continue;
        }
        fill(&mut coeffs, 1, r, target_sq, target_sum, &mut out);
    }
    out
}

fn fill(
    coeffs: &mut [i64],
    i: usize,
    r: usize,
    sq_left: i64,
    sum_left: i64,
    out: &mut Vec<DivisorClass>,
) {
    if i > r {
        if sq_left == 0 && sum_left == 0 {
            out.push(DivisorClass::new(coeffs).expect("rank checked by caller"));
        }
        return;
    }
    let slots = (r - i + 1) as i64;
    for v in -BOX_E..=BOX_E {
        let sq = sq_left - v * v;
        if sq < 0 {
            continue;
        }
        let sum = sum_left - v;
        // Cauchy-Schwarz: sum^2 <= slots_left * sq
        let rest = slots - 1;
        if sum * sum > rest * sq || (rest == 0 && (sq != 0 || sum != 0)) {
            continue;
        }
        coeffs[i] = v;
        fill(coeffs, i + 1, r, sq, sum, out);
    }
    coeffs[i] = 0;
}

/// All roots of the lattice at rank `r`, sorted by coefficient vector.
pub fn weyl_roots(r: usize) -> Result<Vec<RootClass>> {
    check_rank(r)?;
    let mut found = box_search(r, -2, 0);
    found.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    found.into_iter().map(RootClass::new).collect()
}

/// Reflection `d + (d . R) R` in the hyperplane orthogonal to `R`.
pub fn reflect(d: &DivisorClass, root: &RootClass) -> Result<DivisorClass> {
    let k = d.try_dot(root.class())?;
    d.checked_add(&root.class().checked_scale(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v).unwrap()
    }

    #[test]
    fn basic_products() {
        let l = DivisorClass::line(4).unwrap();
        assert_eq!(l.dot(&l), 1);
        let e1 = DivisorClass::exceptional(4, 1).unwrap();
        let e2 = DivisorClass::exceptional(4, 2).unwrap();
        assert_eq!(e1.dot(&e2), 0);
        assert_eq!(e1.dot(&e1), -1);
        assert_eq!(l.dot(&e1), 0);
    }

    #[test]
    fn canonical_squares() {
        for r in 2..=7 {
            let k = canonical_class(r).unwrap();
            assert_eq!(k.dot(&k), 9 - r as i64);
        }
        let k6 = canonical_class(6).unwrap();
        // 9 - 1*6 term by term
        assert_eq!(k6.dot(&k6), 3);
        assert_eq!(canonical_class(5).unwrap().coeffs(), &[-3, 1, 1, 1, 1, 1]);
        assert_eq!(canonical_class(2).unwrap().coeffs(), &[-3, 1, 1]);
        let mk = -canonical_class(7).unwrap();
        assert_eq!(mk.dot(&mk), 2);
        assert_eq!((2 * mk).anticanonical_degree(), 4);
        assert!(canonical_class(8).is_err());
        assert!(canonical_class(1).is_err());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = DivisorClass::line(4).unwrap();
        let b = DivisorClass::line(5).unwrap();
        assert_eq!(
            intersect(&a, &b),
            Err(Error::RankMismatch { left: 4, right: 5 })
        );
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        let a = cls(&[i64::MAX, 0, 0]);
        assert_eq!(a.try_dot(&a), Err(Error::Overflow));
        assert_eq!(a.checked_add(&a), Err(Error::Overflow));
    }

    #[test]
    fn zero_has_degree_zero() {
        assert_eq!(DivisorClass::zero(6).unwrap().anticanonical_degree(), 0);
    }

    #[test]
    fn root_counts() {
        let expected = [(2, 2), (3, 8), (4, 20), (5, 40), (6, 72), (7, 126)];
        for (r, n) in expected {
            assert_eq!(weyl_roots(r).unwrap().len(), n, "rank {r}");
        }
    }

    #[test]
    fn reflections() {
        let roots = weyl_roots(6).unwrap();
        let k = canonical_class(6).unwrap();
        for root in &roots {
            assert_eq!(reflect(&k, root).unwrap(), k);
            assert_eq!(reflect(root.class(), root).unwrap(), -*root.class());
            let d = cls(&[5, -2, 1, 0, -1, 3, -2]);
            assert_eq!(reflect(&reflect(&d, root).unwrap(), root).unwrap(), d);
        }
    }

    #[test]
    fn json_round_trip_and_parse() {
        let d = cls(&[3, -1, -1, -1, -1, -1, -1]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, "[3,-1,-1,-1,-1,-1,-1]");
        let back: DivisorClass = s.parse().unwrap();
        assert_eq!(back, d);
        assert!("[1,2]".parse::<DivisorClass>().is_err());
        assert!("nope".parse::<DivisorClass>().is_err());
    }

    #[test]
    fn dropping_an_exceptional_coordinate() {
        let d = cls(&[3, -1, 0, -1]);
        assert_eq!(d.drop_exceptional(2).unwrap(), cls(&[3, -1, -1]));
        assert!(d.drop_exceptional(1).is_err());
    }

    fn class_strategy(r: usize) -> impl proptest::strategy::Strategy<Value = DivisorClass> {
        proptest::collection::vec(-6i64..7, r + 1).prop_map(|v| DivisorClass::new(&v).unwrap())
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn form_is_symmetric_and_bilinear(
            (a, b, c) in (2usize..8).prop_flat_map(|r| (class_strategy(r), class_strategy(r), class_strategy(r))),
            k in -5i64..6,
        ) {
            prop_assert_eq!(a.dot(&b), b.dot(&a));
            prop_assert_eq!((a + b).dot(&c), a.dot(&c) + b.dot(&c));
            prop_assert_eq!((k * a).dot(&c), k * a.dot(&c));
        }

        #[test]
        fn reflections_are_isometries_fixing_k(
            (d, e, i) in (3usize..8).prop_flat_map(|r| (class_strategy(r), class_strategy(r), 0usize..200)),
        ) {
            let r = d.rank();
            let roots = weyl_roots(r).unwrap();
            let root = &roots[i % roots.len()];
            let (rd, re) = (reflect(&d, root).unwrap(), reflect(&e, root).unwrap());
            prop_assert_eq!(rd.dot(&re), d.dot(&e));
            prop_assert_eq!(reflect(&rd, root).unwrap(), d);
            let k = canonical_class(r).unwrap();
            prop_assert_eq!(reflect(&k, root).unwrap(), k);
            prop_assert_eq!(rd.anticanonical_degree(), d.anticanonical_degree());
        }
    }
}
