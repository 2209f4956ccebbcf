use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("{0} is not odd (divisible by 1+i)")]
    EvenArgument(String),
    #[error("{0} is not primary")]
    NotPrimary(String),
    #[error("zero argument")]
    Zero,
    #[error("{what} exceeds the desk-scale cap ({value} > {cap})")]
    CapExceeded { what: &'static str, value: String, cap: String },
    #[error("character is not primitive")]
    Imprimitive,
    #[error("argument is a perfect square: {0}")]
    SquareArgument(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
