use thiserror::Error;

use crate::group::GroupSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("rank must be at least 1, got {0}")]
    RankTooSmall(u32),
    #[error("group Z_{p}^{n} exceeds the size limit of {limit} elements")]
    SizeLimit { p: u32, n: u32, limit: usize },
    #[error("coordinate {value} at position {position} is outside [0, {p})")]
    CoordinateOutOfRange { position: usize, value: u32, p: u32 },
    #[error("vector has {got} coordinates, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("index {index} is outside [0, {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("scalar {0} is outside [0, p)")]
    ScalarOutOfRange(u32),
    #[error("operands live in different groups ({0} vs {1})")]
    GroupMismatch(GroupSpec, GroupSpec),
    #[error("matrix is singular mod p")]
    SingularMatrix,
    #[error("matrix must be {expected}x{expected}")]
    MatrixShape { expected: usize },
    #[error("input set {0} is empty")]
    EmptySet(usize),
    #[error("need at least two summands, got {0}")]
    TooFewSets(usize),
    #[error("subgroup is not a maximal proper subgroup")]
    NotMaximalSubgroup,
    #[error("element lies in the subgroup")]
    ElementInSubgroup,
    #[error("subgroup is the whole group; the quotient is trivial")]
    TrivialQuotient,
    #[error("set is not sum-free")]
    NotSumFree,
    #[error("set is not a union of cosets of the subgroup")]
    NotPeriodic,
    #[error("construction element h is not in H")]
    HNotInSubgroup,
    #[error("construction element h must be nonzero")]
    HIsZero,
    #[error("construction element e must lie outside H")]
    EInSubgroup,
    #[error("construction needs rank at least 2")]
    ConstructionRank,
    #[error("element a must be nonzero")]
    ZeroElement,
    #[error("p = {0} is not congruent to 2 mod 3")]
    UnsupportedModulus(u32),
    #[error("operation requires p = {expected}, got {got}")]
    WrongPrime { expected: u32, got: u32 },
    #[error("(A+B) meets C")]
    NotDisjoint,
    #[error("min(|A|,|B|) = {min} does not exceed the floor {floor}")]
    SizeFloor { min: usize, floor: usize },
    #[error("C is empty")]
    EmptyC,
    #[error("character is principal")]
    PrincipalCharacter,
    #[error("no non-principal character reaches the threshold {threshold}")]
    NoNegativeCharacter { threshold: f64 },
    #[error("set must be nonempty and proper")]
    TrivialSet,
    #[error("grid step {0} must lie in (0, 1e-3]")]
    InvalidStep(f64),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}
