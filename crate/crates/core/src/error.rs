use thiserror::Error;

use crate::genset::GenSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse rational `{0}` (expected `p/q` or `p`)")]
    BadRational(String),
    #[error("probability space has no points")]
    EmptySpace,
    #[error("{names} point names but {weights} weights")]
    PointCountMismatch { names: usize, weights: usize },
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("weight of point `{point}` must be positive, got {weight}")]
    NonPositiveWeight { point: String, weight: String },
    #[error("weights must sum to 1, got {sum}")]
    WeightsNotNormalized { sum: String },
    #[error("event is over {got} points, space has {expected}")]
    EventSizeMismatch { expected: usize, got: usize },
    #[error("generator #{index} `{name}` is the zero event")]
    ZeroGenerator { index: usize, name: String },
    #[error("generator `{second}` duplicates generator `{first}`")]
    DuplicateGenerator { first: String, second: String },
    #[error("{count} generators exceed the cap of {cap}")]
    TooManyGenerators { count: usize, cap: usize },
    #[error("index {n} is outside the index universe 0..{len}")]
    IndexOutOfRange { n: usize, len: usize },
    #[error("power k = {k} outside 1..={cap}")]
    PowerOverCap { k: u32, cap: u32 },
    #[error("product space would have {points} points (limit {limit})")]
    ProductSpaceTooLarge { points: u128, limit: usize },
    #[error("function has {got} values, the algebra has {expected} atoms")]
    AtomCountMismatch { expected: usize, got: usize },
    #[error("not a probability measure: {0}")]
    NotProbability(String),
    #[error("subalgebra cells do not partition the atoms: {0}")]
    CellsNotPartition(String),
    #[error("cell #{cell} has negative mass {mass}")]
    NegativeCellMass { cell: usize, mass: String },
    #[error("cell masses must sum to 1, got {sum}")]
    CellMassNotNormalized { sum: String },
    #[error("measure family is empty")]
    EmptyMeasureFamily,
    #[error("measure #{index} in the family is signed")]
    SignedMeasureInFamily { index: usize },
    #[error("no basic neighborhood: the element is empty")]
    EmptyElement,
    #[error("point {point:?} does not belong to the element")]
    PointNotInElement { point: GenSet },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not finer than {{Z, complement of Z}} for Z = {z:?}")]
    PartitionDoesNotSplit { z: GenSet },
    #[error("function is not in S'_D: no support meeting each block at most once with all coefficients nonzero")]
    NotInSPrime,
    #[error("moment order p must be at least 1")]
    ZeroPower,
    #[error("support {s:?} is too small: atoms {first:?} and {second:?} share a cell but carry different values")]
    SupportTooSmall { s: GenSet, first: GenSet, second: GenSet },
    #[error("function is not in A_D for the given partition")]
    NotInAD,
    #[error("block #{block}: neither integral criterion holds for T = {t:?}")]
    PsiUndetermined { block: usize, t: GenSet },
    #[error("block #{block}: bit vector does not identify a unique generator")]
    GeneratorUnrecoverable { block: usize },
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("no partition found for a non-constant function (library bug)")]
    DecompositionFailed,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
