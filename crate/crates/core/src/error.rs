use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not a product of cyclotomic polynomials")]
    NotCyclotomicProduct,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("partition {lambda} is not {n}-permissible")]
    NotPermissible { lambda: String, n: usize },
    #[error("no coset of order {order} for {kind}")]
    IllegalCoset { kind: String, order: u32 },
    #[error("coset of {size} elements exceeds the bound {bound}")]
    TooLarge { size: u128, bound: u128 },
    #[error("mass maps of degrees {0} and {1} cannot be combined")]
    DegreeMismatch(usize, usize),
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("group enumeration exceeded the bound {0}")]
    EnumerationTooLarge(u64),
    #[error("stabilizer enumeration exceeded the bound {0}")]
    StabilizerTooLarge(u64),
    #[error("dimension sum is not an integer: {0}")]
    NonIntegralResult(String),
    #[error("no mass formula for n = {0} (need n = -1, 0, 1 mod 8)")]
    BadResidue(i64),
    #[error("odd weight partition: {0}")]
    OddWeight(String),
    #[error("structural mismatch: {0}")]
    Structure(String),
    #[error("unknown catalog entry {0}")]
    UnknownRecord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
