use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("malformed homomorphism: {0}")]
    MalformedHom(String),
    #[error("fan is not a subfan of the positive orthant fan")]
    NotSubfanOfAffineSpace,
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("fantastack precondition violated: {0}")]
    FantastackPreconditionViolated(String),
    #[error("only rank-2 lattices can be rendered")]
    UnsupportedRank,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
