use thiserror::Error;

/// Failures raised by constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what} = {value} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("no element of order {p} in the norm-one subgroup of F_{{{q}^2}}")]
    NoSuchElement { p: u64, q: u64 },
    #[error("operation not supported on a {0} space")]
    UnsupportedKind(&'static str),
    #[error("operation requires odd characteristic, got q = 2")]
    EvenCharacteristic,
    #[error("rotation parameter must have norm 1")]
    NotNormOne,
    #[error("map does not preserve the quadratic form")]
    NotOrthogonal,
    #[error("group is not dihedral: {0}")]
    NotDihedral(String),
    #[error("metric group is degenerate: {0}")]
    Degenerate(String),
    #[error("p ∤ q+1 for p = {p}, q = {q}")]
    ExistenceViolated { p: u64, q: u64 },
    #[error("no positive integral character: {0}")]
    NotACharacter(String),
    #[error("β block is singular")]
    BetaSingular,
    #[error("α + βδβ⁻¹ has a zero eigenvalue")]
    ZeroEigenvalue,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
