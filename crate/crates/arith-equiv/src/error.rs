use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A GCD matrix was requested over an empty base set.
    #[error("base set is empty")]
    EmptySet,

    /// A set failed the closed-under-divisors check.
    #[error("set is not factor-closed: divisor {missing} of {element} is absent")]
    NotFactorClosed { element: u64, missing: u64 },

    /// A signature with no entries cannot determine a multiset.
    #[error("signature is empty")]
    EmptySignature,

    /// The signature is not realized by any multiset with elements inside
    /// its bound: the exact solve produced a negative or non-integer count,
    /// or the recovered multiset fails the round-trip check.
    #[error("signature bound too small or signature not realizable")]
    BoundTooSmall,

    /// A block permutation was requested for an empty degree sequence.
    #[error("degree sequence is empty")]
    EmptySequence,

    /// A modulus that must be prime is not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Distinct-degree factorization detected a repeated factor.
    #[error("polynomial is not squarefree")]
    NotSquarefree,

    /// An arithmetic type was requested at a ramified prime.
    #[error("prime {0} is ramified")]
    RamifiedPrime(u64),

    /// A polynomial failed validation (degree 0 or non-monic).
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    /// A corpus file or entry could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
