use thiserror::Error;

use crate::lattice::{GroupAction, LatticePoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order must be positive, got {0}")]
    ZeroOrder(i64),
    #[error("weight {weight} is outside [0, {order})")]
    WeightOutOfRange { weight: i64, order: i64 },
    #[error("{0} is not faithful: gcd(r, a1, a2, a3) > 1")]
    NotFaithful(GroupAction),
    #[error("point {0} is not in the lattice")]
    NotInLattice(LatticePoint),
    #[error("point {0} is not primitive in the lattice")]
    NotPrimitive(LatticePoint),
    #[error("generators are linearly dependent")]
    Degenerate,
    #[error("point {0} lies outside the support of the fan")]
    OutsideSupport(LatticePoint),
    #[error("the fan condition fails between cones {0:?} and {1:?}")]
    FanCondition(Vec<usize>, Vec<usize>),
    #[error("fan support is not the positive octant")]
    SupportNotOctant,
    #[error("Euler characteristic V - E + F = {0}, expected 1")]
    Euler(i64),
    #[error("proper fraction entry {entry} is outside [0, {den})")]
    FractionEntry { entry: i64, den: i64 },
    #[error("proper fraction has no entries")]
    EmptyFraction,
    #[error("proper fraction is not semi-unimodular")]
    NotSemiUnimodular,
    #[error("remainder map index {index} out of range 2..={dim}")]
    RemainderIndex { index: usize, dim: usize },
    #[error("remainder maps need a unimodular first slot")]
    FirstSlotNotUnimodular,
    #[error("{choice} is not a semi-unimodular generator of {group}")]
    BadGeneratorChoice {
        group: GroupAction,
        choice: GroupAction,
    },
    #[error("{0} has no semi-unimodular generator")]
    NoSemiUnimodularGenerator(GroupAction),
    #[error("{0} is not a canonical singularity")]
    NotCanonical(GroupAction),
    #[error("{0} needs no subgroup decomposition")]
    NoDecomposition(GroupAction),
    #[error("lattice of {small} is not a sublattice of the lattice of {big}")]
    NotSublattice {
        small: GroupAction,
        big: GroupAction,
    },
    #[error("cone quotient is not cyclic (invariant factors {0:?})")]
    NonCyclicQuotient([i64; 3]),
    #[error("residual singularity {0} is not terminal")]
    ResidualNotTerminal(GroupAction),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("malformed fan data: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
