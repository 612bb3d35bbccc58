use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("evaluation pole: denominator factor {factor} vanishes at the evaluation point")]
    EvaluationPole { factor: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("mixed-algebra operands: {0}")]
    MixedAlgebra(String),

    #[error("resource limit exceeded: {what} > {limit}")]
    ResourceLimit { what: String, limit: usize },

    #[error("rule {rule} does not decrease the word order")]
    NonTerminating { rule: String },

    #[error("representation is not extendable: s = ±i q^{n} makes q^k K + q^-k K^-1 singular")]
    NonExtendable { n: i64 },

    #[error("pole on window at indices {indices:?}")]
    PoleOnWindow { indices: Vec<i64> },

    #[error("window {lo}:{hi} is not symmetric about the pairing center {center}")]
    AsymmetricWindow { lo: i64, hi: i64, center: String },

    #[error("parameters {0} describe a reducible representation; decompose it first")]
    Reducible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
