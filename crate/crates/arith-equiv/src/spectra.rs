//! Eigenvalue-1 multiplicities of powers of permutation-type matrices.
//!
//! For a matrix whose characteristic polynomial is a product of `X^f - 1`
//! factors, the multiplicity of the eigenvalue 1 in the `N`-th power has the
//! closed form `sum_i gcd(f_i, N)`. That matrix is realized concretely as a
//! block permutation (one cycle per degree), which gives two independent
//! ways to check the formula: counting cycles of the permutation power, and
//! taking the `(X-1)`-adic valuation of the characteristic polynomial of
//! that power's cycle type.
//!
//! Working with the permutation realization loses no generality. Any matrix
//! with such a characteristic polynomial splits (up to conjugacy) into a
//! diagonalizable part plus a commuting nilpotent part; powers inherit the
//! same split, and algebraic multiplicities only see the diagonalizable
//! part, which is similar to the block permutation. No separate
//! representation of the non-semisimple case is kept.

use crate::arith::{gcd, lcm};
use crate::Error;

/// A non-decreasing sequence of positive cycle degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u64>,
}

impl DegreeSequence {
    /// Sorts `degrees` into canonical order. Panics on 0 entries.
    pub fn new(mut degrees: Vec<u64>) -> Self {
        assert!(degrees.iter().all(|&f| f >= 1), "degrees must be positive");
        degrees.sort_unstable();
        Self { degrees }
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Sum of the degrees: the dimension of the realizing permutation.
    pub fn total(&self) -> u64 {
        self.degrees.iter().sum()
    }

    pub fn lcm(&self) -> u64 {
        self.degrees.iter().fold(1, |acc, &f| lcm(acc, f))
    }
}

/// Multiplicity of the eigenvalue 1 in the `n`-th power: `sum gcd(f_i, n)`.
pub fn mult_one_power(f: &DegreeSequence, n: u64) -> u64 {
    assert!(n >= 1);
    f.degrees.iter().map(|&d| gcd(d, n)).sum()
}

/// A permutation of `{0, .., n-1}` stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    /// Validates that `map` is a bijection.
    pub fn new(map: Vec<usize>) -> Self {
        let mut seen = vec![false; map.len()];
        for &image in &map {
            assert!(image < map.len() && !seen[image], "not a permutation");
            seen[image] = true;
        }
        Self { map }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `self` after `other`: `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    /// `self` to the `n`-th power by binary exponentiation.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::identity(self.len());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            n >>= 1;
        }
        acc
    }

    /// Number of cycles, counted by orbit traversal.
    pub fn cycle_count(&self) -> u64 {
        self.cycle_lengths().len() as u64
    }

    /// Cycle lengths in non-decreasing order (the cycle type).
    pub fn cycle_lengths(&self) -> Vec<u64> {
        let mut visited = vec![false; self.len()];
        let mut lengths = Vec::new();
        for start in 0..self.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                len += 1;
                i = self.map[i];
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }
}

/// The disjoint union of one cycle of length `f_i` per degree, acting on
/// `total()` points. Its characteristic polynomial is the product of the
/// `X^{f_i} - 1`.
pub fn block_permutation(f: &DegreeSequence) -> Result<Permutation, Error> {
    if f.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut map = Vec::with_capacity(f.total() as usize);
    let mut start = 0usize;
    for &degree in f.degrees() {
        let degree = degree as usize;
        for t in 0..degree {
            map.push(start + (t + 1) % degree);
        }
        start += degree;
    }
    Ok(Permutation { map })
}

/// Cycles of `p` to the `n`-th power. Equals the eigenvalue-1 multiplicity
/// of the corresponding permutation matrix power.
pub fn cycle_count_power(p: &Permutation, n: u64) -> u64 {
    assert!(n >= 1);
    p.pow(n).cycle_count()
}

/// A monic integer polynomial, coefficients low-to-high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntCharPoly {
    coeffs: Vec<i128>,
}

impl IntCharPoly {
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval_at_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }
}

/// The product of `X^{f_i} - 1` over the sequence, expanded exactly.
/// The empty product is the constant 1.
pub fn charpoly_product(f: &DegreeSequence) -> IntCharPoly {
    let mut coeffs = vec![1i128];
    for &degree in f.degrees() {
        let degree = degree as usize;
        // Multiply by X^degree - 1.
        let mut next = vec![0i128; coeffs.len() + degree];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + degree] += c;
            next[k] -= c;
        }
        coeffs = next;
    }
    IntCharPoly { coeffs }
}

/// The `(X-1)`-adic valuation of `p`: the largest `k` with `(X-1)^k`
/// dividing `p`, found by repeated exact synthetic division.
pub fn one_valuation(p: &IntCharPoly) -> u64 {
    let mut coeffs = p.coeffs.clone();
    let mut valuation = 0u64;
    while coeffs.len() > 1 && coeffs.iter().sum::<i128>() == 0 {
        // Synthetic division by (X - 1); the remainder is the value at 1,
        // already known to vanish.
        let n = coeffs.len();
        let mut quotient = vec![0i128; n - 1];
        quotient[n - 2] = coeffs[n - 1];
        for k in (0..n - 2).rev() {
            quotient[k] = coeffs[k + 1] + quotient[k + 1];
        }
        coeffs = quotient;
        valuation += 1;
    }
    valuation
}
