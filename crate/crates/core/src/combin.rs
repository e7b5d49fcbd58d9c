//! Subsets of the ordered basis `{1, ..., N}` and the theta statistic.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::LaurentPoly;

pub const MAX_DIM: usize = 16;

/// Subset of `{1, ..., 16}`; bit `i - 1` holds element `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(pub u16);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&i), "basis element {i} out of range");
        SubsetMask(1 << (i - 1))
    }

    pub fn from_elements(elements: &[usize]) -> Result<Self> {
        let mut bits = 0u16;
        for &i in elements {
            if !(1..=MAX_DIM).contains(&i) {
                return Err(Error::InvalidDimension(i));
            }
            bits |= 1 << (i - 1);
        }
        Ok(SubsetMask(bits))
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        SubsetMask(((1u32 << n) - 1) as u16)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_DIM).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    /// Elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_DIM)
            .filter(move |i| bits & (1 << i) != 0)
            .map(|i| i + 1)
    }

    pub fn singletons(self) -> impl Iterator<Item = SubsetMask> {
        self.elements().map(SubsetMask::singleton)
    }

    pub fn union(self, other: Self) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, 0 for the empty set.
    pub fn max_element(self) -> usize {
        MAX_DIM - self.0.leading_zeros() as usize
    }

    /// `E < F`: every element of `E` is below every element of `F`.
    pub fn precedes(self, other: Self) -> bool {
        theta(self, other) == 0 && theta(other, self) == self.len() * other.len()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements: Vec<usize> = Vec::deserialize(deserializer)?;
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom(
                "subset elements must be strictly increasing",
            ));
        }
        SubsetMask::from_elements(&elements).map_err(serde::de::Error::custom)
    }
}

/// Dimension `N` of `V` together with its ordered basis `{1, ..., N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisOrder {
    n: usize,
}

impl BasisOrder {
    pub fn new(n: usize) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self { n })
    }

    pub fn dim(self) -> usize {
        self.n
    }

    pub fn full(self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// All `2^N` subsets, increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetMask> {
        (0..(1u32 << self.n)).map(|b| SubsetMask(b as u16))
    }

    /// All subsets ordered by cardinality, then lexicographically by their
    /// increasing element lists: `{}, {1}, {2}, ..., {1,2}, {1,3}, ...`.
    pub fn graded_subsets(self) -> Vec<SubsetMask> {
        let full = self.full();
        (0..=self.n)
            .flat_map(|k| {
                let mut v = k_subsets(full, k);
                v.sort_by_key(|s| s.elements().collect::<Vec<_>>());
                v
            })
            .collect()
    }
}

/// `theta_{A,B} = #{(a, b) in A x B : a > b}`.
pub fn theta(a: SubsetMask, b: SubsetMask) -> usize {
    a.elements()
        .map(|i| (b.0 & ((1u32 << (i - 1)) - 1) as u16).count_ones() as usize)
        .sum()
}

/// All submasks of `e`, increasing bitmask order.
pub fn subsets(e: SubsetMask) -> Vec<SubsetMask> {
    let mut out = Vec::with_capacity(1 << e.len());
    let mut sub: u16 = 0;
    loop {
        out.push(SubsetMask(sub));
        if sub == e.0 {
            break;
        }
        sub = (sub | !e.0).wrapping_add(1) & e.0;
    }
    out
}

/// The `k`-element subsets of `e`, increasing bitmask order.
pub fn k_subsets(e: SubsetMask, k: usize) -> Vec<SubsetMask> {
    if k > e.len() {
        return Vec::new();
    }
    subsets(e).into_iter().filter(|s| s.len() == k).collect()
}

/// `alpha_{G,H} = prod_{a in G} (p^(theta_{a,H} - theta_{a,G}) - 1)`.
pub fn alpha(g: SubsetMask, h: SubsetMask) -> LaurentPoly {
    g.singletons()
        .map(|a| {
            let e = theta(a, h) as i32 - theta(a, g) as i32;
            &LaurentPoly::p_pow(e) - &LaurentPoly::one()
        })
        .product()
}

/// Nonvanishing test for `alpha_{G,H}` in the form used for the braiding
/// channels: `theta_{a,H} > theta_{a,G}` for every `a` in `G`.
pub fn alpha_nonvanishing(g: SubsetMask, h: SubsetMask) -> bool {
    g.singletons().all(|a| theta(a, h) > theta(a, g))
}
