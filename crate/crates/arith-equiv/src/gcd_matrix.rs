//! Symmetric GCD matrices over a base set, exact determinants by
//! fraction-free elimination, and the totient-product determinant identity
//! for factor-closed sets.
//!
//! Determinants and products are exact arbitrary-precision integers: the
//! totient product overflows 64 bits already for sets of twenty-odd
//! elements. A probabilistic fast path compares both sides modulo random
//! 61-bit primes instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::arith::{euler_phi, gcd, is_prime, mul_mod, pow_mod, FactorClosedSet};
use crate::Error;

/// The symmetric matrix with entries `gcd(s_i, s_j)` over a fixed base set.
///
/// The base set keeps its caller-supplied order; it is not required to be
/// factor-closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdMatrix {
    base: Vec<u64>,
    entries: Vec<u64>,
}

impl GcdMatrix {
    /// Builds the matrix over `base`, which must be nonempty with positive
    /// entries.
    pub fn build(base: &[u64]) -> Result<Self, Error> {
        if base.is_empty() {
            return Err(Error::EmptySet);
        }
        assert!(
            base.iter().all(|&s| s >= 1),
            "base elements must be positive"
        );
        let n = base.len();
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..=i {
                let g = gcd(base[i], base[j]);
                entries[i * n + j] = g;
                entries[j * n + i] = g;
            }
        }
        Ok(Self {
            base: base.to_vec(),
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base_set(&self) -> &[u64] {
        &self.base
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.dim() + j]
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    ///
    /// Every interior division is exact (each intermediate entry is a minor
    /// of the original matrix), so the computation never leaves the
    /// integers.
    pub fn det_exact(&self) -> BigInt {
        let n = self.dim();
        let mut m: Vec<BigInt> = self.entries.iter().map(|&e| BigInt::from(e)).collect();
        match eliminate(&mut m, n, n) {
            Some(sign) => {
                let d = m[(n - 1) * n + (n - 1)].clone();
                if sign < 0 {
                    -d
                } else {
                    d
                }
            }
            None => BigInt::zero(),
        }
    }

    /// Determinant modulo a prime `p`, by Gaussian elimination over `F_p`.
    pub fn det_mod(&self, p: u64) -> u64 {
        assert!(is_prime(p), "det_mod modulus must be prime");
        let n = self.dim();
        let mut m: Vec<u64> = self.entries.iter().map(|&e| e % p).collect();
        let mut det = 1u64;
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| m[r * n + k] != 0) else {
                return 0;
            };
            if r != k {
                for j in 0..n {
                    m.swap(k * n + j, r * n + j);
                }
                det = p - det;
            }
            let pivot = m[k * n + k];
            det = mul_mod(det, pivot, p);
            let inv = pow_mod(pivot, p - 2, p);
            for i in k + 1..n {
                let factor = mul_mod(m[i * n + k], inv, p);
                if factor == 0 {
                    continue;
                }
                for j in k..n {
                    let t = mul_mod(factor, m[k * n + j], p);
                    m[i * n + j] = (m[i * n + j] + p - t) % p;
                }
            }
        }
        det % p
    }

    /// Exact integer solution of `M x = rhs`.
    ///
    /// Fraction-free forward elimination on the augmented matrix followed
    /// by exact back-substitution; any inexact division proves the unique
    /// rational solution is not integral.
    pub(crate) fn solve_integer(&self, rhs: &[BigInt]) -> Result<Vec<BigInt>, SolveFailure> {
        let n = self.dim();
        assert_eq!(rhs.len(), n, "rhs length must match matrix dimension");
        let w = n + 1;
        let mut m: Vec<BigInt> = Vec::with_capacity(n * w);
        for (i, r) in rhs.iter().enumerate() {
            for j in 0..n {
                m.push(BigInt::from(self.entry(i, j)));
            }
            m.push(r.clone());
        }
        if eliminate(&mut m, n, w).is_none() {
            return Err(SolveFailure::Singular);
        }
        let mut x = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut num = m[i * w + n].clone();
            for j in i + 1..n {
                num -= &m[i * w + j] * &x[j];
            }
            // Every pivot is nonzero once elimination succeeds.
            let (q, r) = num.div_rem(&m[i * w + i]);
            if !r.is_zero() {
                return Err(SolveFailure::NonIntegral);
            }
            x[i] = q;
        }
        Ok(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SolveFailure {
    Singular,
    NonIntegral,
}

/// Bareiss forward elimination on a row-major `rows x cols` matrix whose
/// leading `rows` columns are the square part. Returns the sign flip from
/// row swaps, or `None` if a pivot column vanished (singular square part).
fn eliminate(m: &mut [BigInt], rows: usize, cols: usize) -> Option<i8> {
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..rows.saturating_sub(1) {
        if m[k * cols + k].is_zero() {
            let r = (k + 1..rows).find(|&r| !m[r * cols + k].is_zero())?;
            for j in 0..cols {
                m.swap(k * cols + j, r * cols + j);
            }
            sign = -sign;
        }
        let pivot = m[k * cols + k].clone();
        for i in k + 1..rows {
            for j in k + 1..cols {
                let t = &pivot * &m[i * cols + j] - &m[i * cols + k] * &m[k * cols + j];
                m[i * cols + j] = t / &prev;
            }
            m[i * cols + k] = BigInt::zero();
        }
        prev = pivot;
    }
    if m[(rows - 1) * cols + (rows - 1)].is_zero() {
        return None;
    }
    Some(sign)
}

/// The product of Euler totients over a factor-closed set, as an exact
/// integer. The empty product is 1.
pub fn smith_product(set: &FactorClosedSet) -> BigInt {
    let mut product = BigInt::one();
    for &s in set.elements() {
        product *= BigInt::from(euler_phi(s));
    }
    product
}

/// Outcome of checking the determinant identity on one set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Base set in the order the matrix was built over.
    pub set: Vec<u64>,
    #[serde(serialize_with = "bigint_decimal")]
    pub det: BigInt,
    #[serde(serialize_with = "bigint_decimal")]
    pub product: BigInt,
    pub equal: bool,
}

fn bigint_decimal<S: Serializer>(value: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&value.to_string())
}

/// Checks `det(M) = prod phi(s_i)` exactly over the given factor-closed set.
///
/// The equality holds for every factor-closed set; `equal` is reported
/// rather than assumed so the caller can see both sides.
pub fn verify_smith(set: &FactorClosedSet) -> Result<VerificationReport, Error> {
    let matrix = GcdMatrix::build(set.elements())?;
    let det = matrix.det_exact();
    let product = smith_product(set);
    let equal = det == product;
    Ok(VerificationReport {
        set: set.elements().to_vec(),
        det,
        product,
        equal,
    })
}

/// Probabilistic variant of [`verify_smith`]: compares determinant and
/// totient product modulo `trials` random 61-bit primes. A `false` answer
/// is definitive; `true` means equality modulo every sampled prime.
pub fn verify_smith_fast<R: Rng>(
    set: &FactorClosedSet,
    trials: u32,
    rng: &mut R,
) -> Result<bool, Error> {
    let matrix = GcdMatrix::build(set.elements())?;
    for _ in 0..trials {
        let p = random_prime_61(rng);
        let det = matrix.det_mod(p);
        let mut product = 1u64;
        for &s in set.elements() {
            product = mul_mod(product, euler_phi(s), p);
        }
        if det != product {
            return Ok(false);
        }
    }
    Ok(true)
}

fn random_prime_61<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 60)..(1u64 << 61)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

/// Converts an exact solution vector to `u64` counts; `None` if any entry
/// is negative or out of range.
pub(crate) fn to_counts(solution: &[BigInt]) -> Option<Vec<u64>> {
    solution.iter().map(ToPrimitive::to_u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::divisors;

    /// Cofactor-expansion determinant, independent of the elimination path.
    fn det_cofactor(m: &[Vec<i128>]) -> i128 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut det = 0i128;
        for (j, &top) in m[0].iter().enumerate() {
            if top == 0 {
                continue;
            }
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let term = top * det_cofactor(&minor);
            det += if j % 2 == 0 { term } else { -term };
        }
        det
    }

    fn det_oracle(matrix: &GcdMatrix) -> i128 {
        let n = matrix.dim();
        let rows: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| matrix.entry(i, j) as i128).collect())
            .collect();
        det_cofactor(&rows)
    }

    #[test]
    fn build_records_entries_and_order() {
        let m = GcdMatrix::build(&[1]).unwrap();
        assert_eq!(m.entry(0, 0), 1);

        let m = GcdMatrix::build(&[1, 2]).unwrap();
        assert_eq!(
            (0..2)
                .map(|i| (0..2).map(|j| m.entry(i, j)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            vec![vec![1, 1], vec![1, 2]]
        );

        let m = GcdMatrix::build(&[2, 3, 4]).unwrap();
        assert_eq!(
            (0..3)
                .map(|i| (0..3).map(|j| m.entry(i, j)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            vec![vec![2, 1, 2], vec![1, 3, 1], vec![2, 1, 4]]
        );
        assert_eq!(m.base_set(), &[2, 3, 4]);

        assert!(matches!(GcdMatrix::build(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn determinants_match_cofactor_expansion() {
        for base in [
            vec![1],
            vec![1, 2],
            vec![2, 3, 4],
            vec![5, 10, 2, 7],
            divisors(12).elements().to_vec(),
        ] {
            let m = GcdMatrix::build(&base).unwrap();
            assert_eq!(m.det_exact(), BigInt::from(det_oracle(&m)), "base {base:?}");
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(GcdMatrix::build(&[1]).unwrap().det_exact(), BigInt::one());
        assert_eq!(
            GcdMatrix::build(&[1, 2]).unwrap().det_exact(),
            BigInt::one()
        );
        let m = GcdMatrix::build(divisors(12).elements()).unwrap();
        assert_eq!(m.det_exact(), BigInt::from(32));
    }

    #[test]
    fn smith_product_examples() {
        let one = FactorClosedSet::try_new(vec![1]).unwrap();
        assert_eq!(smith_product(&one), BigInt::one());
        assert_eq!(smith_product(&divisors(12)), BigInt::from(32));
        let two_powers = FactorClosedSet::try_new(vec![1, 2, 4, 8]).unwrap();
        assert_eq!(smith_product(&two_powers), BigInt::from(8));
    }

    #[test]
    fn verification_reports() {
        let r = verify_smith(&FactorClosedSet::try_new(vec![1]).unwrap()).unwrap();
        assert!(r.equal);
        assert_eq!(r.det, BigInt::one());

        let r = verify_smith(&divisors(12)).unwrap();
        assert!(r.equal);
        assert_eq!(r.det, BigInt::from(32));

        let r = verify_smith(&divisors(30)).unwrap();
        assert!(r.equal);
        assert_eq!(r.det, BigInt::from(4096));
        assert_eq!(r.set, vec![1, 2, 3, 5, 6, 10, 15, 30]);
    }

    #[test]
    fn identity_fails_off_the_factor_closed_hypothesis() {
        // {2,3,4} is missing 1, and the identity indeed breaks there.
        let m = GcdMatrix::build(&[2, 3, 4]).unwrap();
        assert_eq!(m.det_exact(), BigInt::from(10));
        let product: u64 = [2u64, 3, 4].iter().map(|&s| euler_phi(s)).product();
        assert_eq!(product, 4);
        assert_ne!(m.det_exact(), BigInt::from(product));
    }

    #[test]
    fn determinant_is_invariant_under_base_reordering() {
        let orders = [
            vec![1, 2, 3, 6],
            vec![6, 3, 2, 1],
            vec![2, 6, 1, 3],
            vec![3, 1, 6, 2],
        ];
        let reference = GcdMatrix::build(&orders[0]).unwrap().det_exact();
        for order in &orders[1..] {
            assert_eq!(GcdMatrix::build(order).unwrap().det_exact(), reference);
        }
    }

    #[test]
    fn modular_determinant_agrees_with_exact() {
        let p = (1u64 << 61) - 1;
        for base in [
            vec![2, 3, 4],
            divisors(30).elements().to_vec(),
            vec![7, 9, 12, 30, 11],
        ] {
            let m = GcdMatrix::build(&base).unwrap();
            let exact = m.det_exact();
            let reduced = exact.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            assert_eq!(m.det_mod(p), reduced, "base {base:?}");
        }
    }

    #[test]
    fn fast_verification_accepts_closed_sets_and_rejects_counterexample() {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        assert!(verify_smith_fast(&divisors(360), 3, &mut rng).unwrap());
        // Not expressible as a FactorClosedSet, so compare by hand.
        let m = GcdMatrix::build(&[2, 3, 4]).unwrap();
        let p = random_prime_61(&mut rng);
        let mut product = 1u64;
        for s in [2u64, 3, 4] {
            product = mul_mod(product, euler_phi(s), p);
        }
        assert_ne!(m.det_mod(p), product);
    }

    #[test]
    fn singular_matrices_have_zero_determinant() {
        // Repeated base elements give repeated rows.
        let m = GcdMatrix::build(&[5, 5, 3]).unwrap();
        assert_eq!(m.det_exact(), BigInt::zero());
        assert_eq!(m.det_mod(1_000_003), 0);
    }

    #[test]
    fn exact_solver_round_trips() {
        let m = GcdMatrix::build(&[1, 2, 3]).unwrap();
        // rhs = M * (0, 2, 1)
        let rhs: Vec<BigInt> = [3u64, 5, 5].iter().map(|&v| BigInt::from(v)).collect();
        let x = m.solve_integer(&rhs).unwrap();
        assert_eq!(x, vec![BigInt::zero(), BigInt::from(2), BigInt::from(1)]);
    }

    #[test]
    fn exact_solver_detects_non_integral_solutions() {
        let m = GcdMatrix::build(&[1, 2, 3]).unwrap();
        let rhs: Vec<BigInt> = [1u64, 1, 2].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(m.solve_integer(&rhs), Err(SolveFailure::NonIntegral));

        let singular = GcdMatrix::build(&[5, 5]).unwrap();
        let rhs = vec![BigInt::from(1), BigInt::from(1)];
        assert_eq!(singular.solve_integer(&rhs), Err(SolveFailure::Singular));
    }
}
