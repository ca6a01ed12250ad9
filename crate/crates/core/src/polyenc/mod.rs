//! Multilinear polynomial encodings of nondeterministic oracle machines,
//! the prime-divisor lemma checker and prime-counting utilities.

pub mod fixtures;
pub mod machine;
pub mod poly;
pub mod primes;

pub use machine::{ComputationPath, OracleMachine, OracleNode, OracleTree, SignedPath};
pub use poly::{
    check_prime_divisor, encode, eval_poly, verify_encoding, EncodingMismatch, EncodingReport,
    Hypothesis, Monomial, MultilinearPoly, PrimeDivisor, Term, MAX_ORACLE_VARS,
    PRIME_DIVISOR_BUDGET,
};
pub use primes::{prime_bound_check, prime_bound_sweep, primes_in_range, PrimeBound};
