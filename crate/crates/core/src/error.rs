use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of order {p}^{k} exceeds the supported size")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("element lies outside F_q^* ∪ H")]
    OutsideDomain,
    #[error("element does not lie in the base field")]
    NotInBaseField,
    #[error("element does not belong to this field")]
    ForeignElement,
    #[error("rad({nu}) does not divide rad({n})")]
    BadRadical { nu: u64, n: u64 },
    #[error("{n} and {d} are not coprime")]
    NotCoprime { n: u64, d: u64 },
    #[error("tree is not a summand of the minuend")]
    NotASummand,
    #[error("tree is neither even nor quasi-even")]
    NotBisectable,
    #[error("malformed tree key: {0}")]
    BadTreeKey(String),
    #[error("non-uniform component: cycle of length {cycle_len} carries distinct trees")]
    NonUniformComponent { cycle_len: u64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
