//! Gcd-sum signatures of integer multisets and exact reconstruction.
//!
//! The signature of a multiset `A` is the function `N -> sum_k gcd(a_k, N)`.
//! It determines `A` uniquely: tabulated for `N = 1..=B` with `B` at least
//! the largest element, the values form a linear system over the GCD matrix
//! of `{1..B}`, whose determinant is a product of positive totients and
//! hence nonzero. [`reconstruct`] solves that system exactly.

use num_bigint::BigInt;

use crate::arith::gcd;
use crate::gcd_matrix::{to_counts, GcdMatrix};
use crate::Error;

/// A finite multiset of positive integers, stored non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multiset {
    elements: Vec<u64>,
}

impl Multiset {
    /// Sorts `elements` into canonical non-decreasing order. Panics on 0.
    pub fn new(mut elements: Vec<u64>) -> Self {
        assert!(
            elements.iter().all(|&a| a >= 1),
            "multiset elements must be positive"
        );
        elements.sort_unstable();
        Self { elements }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_element(&self) -> Option<u64> {
        self.elements.last().copied()
    }
}

impl From<&[u64]> for Multiset {
    fn from(elements: &[u64]) -> Self {
        Self::new(elements.to_vec())
    }
}

/// `sum_k gcd(a_k, n)`.
pub fn gcd_sum(a: &Multiset, n: u64) -> u64 {
    assert!(n >= 1);
    a.elements.iter().map(|&e| gcd(e, n)).sum()
}

/// The same sum evaluated in grouped form: elements are bucketed by
/// `d = gcd(a_k, n)` over the divisors of `n`, and each bucket contributes
/// `d * #bucket`. Always equals [`gcd_sum`]; both routes are kept because
/// the grouped form is the shape the uniqueness argument manipulates.
pub fn gcd_sum_grouped(a: &Multiset, n: u64) -> u64 {
    assert!(n >= 1);
    crate::arith::divisors(n)
        .iter()
        .map(|&d| d * a.elements.iter().filter(|&&e| gcd(e, n) == d).count() as u64)
        .sum()
}

/// The gcd-sum signature of a multiset, tabulated for `N = 1..=bound`.
///
/// Index 0 holds the value at `N = 1`, which is always the multiset size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdSumSignature {
    values: Vec<u64>,
}

impl GcdSumSignature {
    pub fn new(values: Vec<u64>) -> Self {
        Self { values }
    }

    /// The tabulation bound `B`.
    pub fn bound(&self) -> u64 {
        self.values.len() as u64
    }

    /// Values at `N = 1..=B`, 1-based externally, contiguous here.
    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Tabulates the signature of `a` for `N = 1..=bound`.
pub fn signature(a: &Multiset, bound: u64) -> GcdSumSignature {
    assert!(bound >= 1, "signature bound must be at least 1");
    GcdSumSignature {
        values: (1..=bound).map(|n| gcd_sum(a, n)).collect(),
    }
}

/// Multiplicity of each element of a base set in a reconstructed multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    base: Vec<u64>,
    counts: Vec<u64>,
}

impl CountVector {
    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total multiplicity, i.e. the multiset size.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Expands the counts into the multiset they describe.
    pub fn multiset(&self) -> Multiset {
        let mut elements = Vec::with_capacity(self.total() as usize);
        for (&s, &c) in self.base.iter().zip(&self.counts) {
            elements.extend(std::iter::repeat_n(s, c as usize));
        }
        Multiset::new(elements)
    }
}

/// Recovers the unique multiset with elements `<= B` whose signature is
/// `sig`, where `B` is the signature's bound.
///
/// The counts `x_j = #{k : a_k = j}` satisfy `M x = g` with `M` the GCD
/// matrix of `{1..B}` and `g` the signature values; `M` is nonsingular (its
/// determinant is the product of the totients of `1..B`), so the solution
/// is unique. The solve is exact: a negative or non-integer count, or a
/// failed round-trip, means no multiset within the bound produces `sig` --
/// either the bound is below the true largest element or the input is not a
/// signature at all. The two cases are not distinguished.
pub fn reconstruct(sig: &GcdSumSignature) -> Result<Multiset, Error> {
    if sig.values.is_empty() {
        return Err(Error::EmptySignature);
    }
    let bound = sig.values.len() as u64;
    let base: Vec<u64> = (1..=bound).collect();
    let matrix = GcdMatrix::build(&base).expect("base is nonempty");
    let rhs: Vec<BigInt> = sig.values.iter().map(|&v| BigInt::from(v)).collect();
    let solution = matrix
        .solve_integer(&rhs)
        .map_err(|_| Error::BoundTooSmall)?;
    let counts = to_counts(&solution).ok_or(Error::BoundTooSmall)?;
    let multiset = CountVector { base, counts }.multiset();
    if &signature(&multiset, bound) != sig {
        return Err(Error::BoundTooSmall);
    }
    Ok(multiset)
}

/// Whether two multisets are equal, decided purely through signatures
/// tabulated up to the larger maximum element.
pub fn multisets_equal_by_signature(a: &Multiset, b: &Multiset) -> bool {
    let bound = a
        .max_element()
        .unwrap_or(1)
        .max(b.max_element().unwrap_or(1));
    signature(a, bound) == signature(b, bound)
}
