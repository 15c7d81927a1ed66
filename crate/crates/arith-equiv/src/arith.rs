//! Elementary integer arithmetic shared by every other module: gcd and lcm,
//! Euler's totient, divisor enumeration, factor-closed sets, and prime
//! utilities (deterministic Miller-Rabin, Eratosthenes sieve).
//!
//! Everything here is desk-scale: values fit in 64 bits and trial division
//! is fast enough, so no factorization caches are kept.

use crate::Error;

/// Greatest common divisor by Euclid's algorithm. `gcd(0, n) = n`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple. Panics if the result overflows `u64`.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflows u64")
}

/// Euler's totient, the count of `k` in `1..=n` with `gcd(k, n) = 1`,
/// computed via trial-division factorization.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi(0) is undefined");
    let mut rest = n;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p <= rest / p {
        if rest.is_multiple_of(p) {
            let mut q = 1u64;
            while rest.is_multiple_of(p) {
                rest /= p;
                q *= p;
            }
            phi *= q / p * (p - 1);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        phi *= rest - 1;
    }
    phi
}

/// A set of positive integers containing every divisor of each element.
///
/// Elements are stored strictly increasing. The empty set is factor-closed;
/// every nonempty factor-closed set contains 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorClosedSet {
    elements: Vec<u64>,
}

impl FactorClosedSet {
    /// Sorts and deduplicates `elements`, then verifies closure under
    /// divisors.
    pub fn try_new(mut elements: Vec<u64>) -> Result<Self, Error> {
        assert!(
            elements.iter().all(|&s| s >= 1),
            "set elements must be positive"
        );
        elements.sort_unstable();
        elements.dedup();
        for &s in &elements {
            let mut d = 1;
            while d <= s / d {
                if s % d == 0 {
                    for t in [d, s / d] {
                        if elements.binary_search(&t).is_err() {
                            return Err(Error::NotFactorClosed {
                                element: s,
                                missing: t,
                            });
                        }
                    }
                }
                d += 1;
            }
        }
        Ok(Self { elements })
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

    pub fn contains(&self, value: u64) -> bool {
        self.elements.binary_search(&value).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u64> {
        self.elements.iter()
    }
}

/// All positive divisors of `n`, in increasing order.
pub fn divisors(n: u64) -> FactorClosedSet {
    assert!(n >= 1, "divisors(0) is undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d <= n / d {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    FactorClosedSet { elements: small }
}

/// The smallest factor-closed set containing `xs`: the union of the divisor
/// sets of its members.
pub fn factor_closure(xs: &[u64]) -> FactorClosedSet {
    let mut all = std::collections::BTreeSet::new();
    for &x in xs {
        all.extend(divisors(x).elements.iter().copied());
    }
    // A union of divisor sets is closed: a divisor of a divisor of x divides x.
    FactorClosedSet {
        elements: all.into_iter().collect(),
    }
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base ^ exp mod m` by square-and-multiply.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MILLER_RABIN_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in MILLER_RABIN_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MILLER_RABIN_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `l <= bound`, ascending, by a plain sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let bound = bound as usize;
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::new();
    for p in 2..=bound {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut multiple = p * p;
        while multiple <= bound {
            composite[multiple] = true;
            multiple += p;
        }
    }
    primes
}
