//! Arithmetic types and splitting numbers of rational primes in the field
//! defined by a monic integer polynomial.
//!
//! A prime `l` is *good* for `f` when `f mod l` is squarefree, i.e.
//! `gcd(f, f') = 1` over `F_l`. That is equivalent to `l` not dividing
//! `disc(f)`, so good primes are unramified and do not divide the index of
//! `Z[x]/(f)` in the maximal order; the factor degrees of `f mod l` are then
//! the residue class degrees of the primes above `l`.
//!
//! Only the degrees are needed, never the factors themselves, so the scan
//! uses distinct-degree factorization: `gcd(x^(l^d) - x, f*)` collects the
//! product of all irreducible factors of the remaining part `f*` whose
//! degree divides `d`; processing `d` upward and stripping as we go leaves
//! exactly the degree-`d` factors at step `d`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith::{is_prime, mul_mod, pow_mod, primes_up_to};
use crate::signature::Multiset;
use crate::spectra::DegreeSequence;
use crate::Error;

/// A monic integer polynomial of degree at least 1, coefficients
/// low-to-high in signed 64 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn try_new(coeffs: Vec<i64>) -> Result<Self, Error> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(Error::InvalidPolynomial(
                "leading coefficient must be 1".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// A polynomial over `F_l` for a prime `l`, coefficients reduced to
/// `[0, l)` and trimmed (no leading zeros; the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPolynomial {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ModPolynomial {
    /// Reduces arbitrary signed coefficients modulo a prime.
    pub fn new(modulus: u64, coeffs: &[i64]) -> Result<Self, Error> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        let reduced = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(modulus as i128) as u64)
            .collect();
        Ok(Self::from_vec(modulus, reduced))
    }

    fn from_vec(modulus: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    fn constant(modulus: u64, c: u64) -> Self {
        Self::from_vec(modulus, vec![c % modulus])
    }

    fn x(modulus: u64) -> Self {
        Self::from_vec(modulus, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> u64 {
        *self
            .coeffs
            .last()
            .expect("zero polynomial has no leading coefficient")
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return Self::from_vec(p, Vec::new());
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::from_vec(p, out)
    }

    fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; len];
        for (k, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(k).copied().unwrap_or(0);
            let b = rhs.coeffs.get(k).copied().unwrap_or(0);
            *slot = (a + p - b) % p;
        }
        Self::from_vec(p, out)
    }

    /// Quotient and remainder by a nonzero divisor.
    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        debug_assert_eq!(self.modulus, divisor.modulus);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.modulus;
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return (Self::from_vec(p, Vec::new()), self.clone());
        }
        let lead_inv = pow_mod(divisor.leading(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - d];
        for k in (d..rem.len()).rev() {
            let q = mul_mod(rem[k], lead_inv, p);
            if q == 0 {
                continue;
            }
            quot[k - d] = q;
            for (offset, &b) in divisor.coeffs.iter().enumerate() {
                let idx = k - d + offset;
                rem[idx] = (rem[idx] + p - mul_mod(q, b, p)) % p;
            }
        }
        rem.truncate(d);
        (Self::from_vec(p, quot), Self::from_vec(p, rem))
    }

    fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    fn derivative(&self) -> Self {
        let p = self.modulus;
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mul_mod(c, k as u64 % p, p))
            .collect();
        Self::from_vec(p, out)
    }

    /// Scales the polynomial to leading coefficient 1.
    fn monic(&self) -> Self {
        if self.is_zero() || self.leading() == 1 {
            return self.clone();
        }
        let p = self.modulus;
        let inv = pow_mod(self.leading(), p - 2, p);
        let out = self.coeffs.iter().map(|&c| mul_mod(c, inv, p)).collect();
        Self::from_vec(p, out)
    }

    /// Monic gcd by the Euclidean algorithm; `gcd(0, 0) = 0`.
    fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^exp mod modulus_poly` by square-and-multiply.
    fn pow_mod(&self, mut exp: u64, modulus_poly: &Self) -> Self {
        let p = self.modulus;
        let mut acc = Self::constant(p, 1).rem(modulus_poly);
        let mut base = self.rem(modulus_poly);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus_poly);
            }
            base = base.mul(&base).rem(modulus_poly);
            exp >>= 1;
        }
        acc
    }
}

/// Coefficientwise reduction of `f` modulo a prime. The degree is preserved
/// because `f` is monic.
pub fn reduce_mod(f: &IntPolynomial, l: u64) -> Result<ModPolynomial, Error> {
    ModPolynomial::new(l, f.coeffs())
}

/// Whether `f mod l` is squarefree, i.e. `l` does not divide `disc(f)`.
pub fn is_good_prime(f: &IntPolynomial, l: u64) -> Result<bool, Error> {
    let fbar = reduce_mod(f, l)?;
    Ok(is_squarefree(&fbar))
}

fn is_squarefree(fbar: &ModPolynomial) -> bool {
    fbar.gcd(&fbar.derivative()).degree() == Some(0)
}

/// Number of monic irreducible factors of each degree, for a squarefree
/// polynomial over a prime field.
///
/// Iterates `d = 1, 2, ...`: `x^(l^d)` is maintained modulo the shrinking
/// cofactor `f*` by one Frobenius (`l`-th) powering per step, and
/// `gcd(x^(l^d) - x, f*)` splits off the degree-`d` part. Repeated factors
/// violate the squarefree precondition and are reported as
/// [`Error::NotSquarefree`] whenever the bookkeeping exposes them (a
/// degree-`d` gcd of size not divisible by `d`, or a nonempty residual).
pub fn distinct_degree_counts(fbar: &ModPolynomial) -> Result<BTreeMap<u64, u64>, Error> {
    if fbar.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let n = fbar.degree().unwrap();
    let mut counts = BTreeMap::new();
    if n == 0 {
        return Ok(counts);
    }
    let l = fbar.modulus();
    let x = ModPolynomial::x(l);
    let mut remaining = fbar.monic();
    let mut frob = x.rem(&remaining);
    for d in 1..=n as u64 {
        if remaining.degree() == Some(0) {
            break;
        }
        frob = frob.pow_mod(l, &remaining);
        let degree_d_part = frob.sub(&x).rem(&remaining).gcd(&remaining);
        let found = degree_d_part.degree().unwrap_or(0) as u64;
        if found == 0 {
            continue;
        }
        if !found.is_multiple_of(d) {
            return Err(Error::NotSquarefree);
        }
        *counts.entry(d).or_insert(0) += found / d;
        let (quotient, rest) = remaining.div_rem(&degree_d_part);
        debug_assert!(rest.is_zero());
        remaining = quotient;
        frob = frob.rem(&remaining);
    }
    if remaining.degree().unwrap_or(0) > 0 {
        return Err(Error::NotSquarefree);
    }
    Ok(counts)
}

/// The sorted residue class degrees at a good prime, summing to the field
/// degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ArithmeticType {
    degrees: Vec<u64>,
}

impl ArithmeticType {
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// The number of primes above `l`: the length of the type.
    pub fn splitting_number(&self) -> u64 {
        self.degrees.len() as u64
    }
}

impl From<&ArithmeticType> for DegreeSequence {
    fn from(t: &ArithmeticType) -> Self {
        DegreeSequence::new(t.degrees.clone())
    }
}

impl From<&ArithmeticType> for Multiset {
    fn from(t: &ArithmeticType) -> Self {
        Multiset::new(t.degrees.clone())
    }
}

/// The arithmetic type of `l` in the field defined by `f`.
pub fn arithmetic_type(f: &IntPolynomial, l: u64) -> Result<ArithmeticType, Error> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    arithmetic_type_unchecked(f, l)
}

fn arithmetic_type_unchecked(f: &IntPolynomial, l: u64) -> Result<ArithmeticType, Error> {
    let fbar = ModPolynomial::new(l, f.coeffs()).expect("modulus already validated");
    if !is_squarefree(&fbar) {
        return Err(Error::RamifiedPrime(l));
    }
    let counts = distinct_degree_counts(&fbar)?;
    let mut degrees = Vec::new();
    for (&d, &c) in &counts {
        degrees.extend(std::iter::repeat_n(d, c as usize));
    }
    debug_assert_eq!(degrees.iter().sum::<u64>(), f.degree() as u64);
    Ok(ArithmeticType { degrees })
}

/// The splitting number of `l` in the field defined by `f`.
pub fn splitting_number(f: &IntPolynomial, l: u64) -> Result<u64, Error> {
    Ok(arithmetic_type(f, l)?.splitting_number())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeStatus {
    Good,
    Ramified,
}

/// One prime's classification: ramified, or good with its type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeClassification {
    pub prime: u64,
    pub status: PrimeStatus,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub splitting_type: Option<ArithmeticType>,
}

/// Classifies one prime for `f`.
pub fn classify_prime(f: &IntPolynomial, l: u64) -> Result<PrimeClassification, Error> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    Ok(classify_known_prime(f, l))
}

/// As [`classify_prime`], for an `l` already known to be prime.
pub(crate) fn classify_known_prime(f: &IntPolynomial, l: u64) -> PrimeClassification {
    match arithmetic_type_unchecked(f, l) {
        Ok(t) => PrimeClassification {
            prime: l,
            status: PrimeStatus::Good,
            splitting_type: Some(t),
        },
        Err(_) => PrimeClassification {
            prime: l,
            status: PrimeStatus::Ramified,
            splitting_type: None,
        },
    }
}

/// Classifies every prime `l <= bound`, in ascending order.
pub fn prime_scan(f: &IntPolynomial, bound: u64) -> Vec<PrimeClassification> {
    primes_up_to(bound)
        .into_iter()
        .map(|l| classify_known_prime(f, l))
        .collect()
}
