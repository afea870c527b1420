use thiserror::Error;

/// Errors shared across the library.
///
/// Mathematical obstructions (a relation that fails to close, a norm target
/// outside the kernel lattice) are ordinary values of the descent pipeline and
/// are reported through certificates; the variants here are hard failures of
/// individual operations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("polynomial is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("{0} does not divide the Galois group order {1}")]
    NonDivisorOrder(u64, u64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("relation {relation} does not close: defect {defect}")]
    RelationDefect { relation: String, defect: String },
    #[error("additive cocycle condition fails on relation {0}")]
    NotAdditiveCocycle(String),
    #[error("exhausted {0} randomized trials without a certified answer")]
    ExhaustedTries(u64),
    #[error("target is not of norm one over the full group")]
    NotNormOne,
    #[error("no {degree}-th root of the given element exists")]
    NoRootExists { degree: u64 },
    #[error("commutator scalar lies outside the kernel intersection K_A ∩ K_B")]
    NotInKernelIntersection,
    #[error("intertwiner space has dimension {0} >= 2; input was not absolutely irreducible")]
    SchurViolation(usize),
    #[error("twisted product is not scalar: {0}")]
    NotScalar(String),
    #[error("norm equation has no solution: {0}")]
    NormUnsolvable(String),
    #[error("representation is not absolutely irreducible")]
    NotAbsolutelyIrreducible,
    #[error("field characteristic divides the group order {0}")]
    PCharDividesG(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid subgroup chain: {0}")]
    InvalidChain(String),
    #[error("{0} is not coprime to the conductor {1}")]
    NotCoprime(u64, u64),
    #[error("subgroup is not generated by complex conjugation")]
    NotConjugationSubgroup,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("norm search was inconclusive: {0}")]
    NormSearchInconclusive(String),
    #[error("element belongs to a different field context")]
    ContextMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
