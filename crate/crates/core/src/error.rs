use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order {0}: must be odd and at least 3")]
    InvalidOrder(i64),

    #[error("exponent {num}/{den} has a denominator that is not invertible modulo {order}")]
    NonInvertibleDenominator { num: i64, den: i64, order: u32 },

    #[error("invalid fraction: {0}")]
    InvalidFraction(String),

    #[error("the 0-tangle is not allowed")]
    ZeroTangle,

    #[error("continued fraction takes a reciprocal of 0 at position {0}")]
    IllFormedExpansion(usize),

    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("malformed PD diagram: {0}")]
    Schema(String),

    #[error("morphism is not D_n-equivariant")]
    NotEquivariant,

    #[error("closure has {0} components; a knot is required")]
    MultiComponentClosure(usize),

    #[error("Montesinos closure has {0} components; the formula is stated for knots")]
    NotAKnot(usize),

    #[error("order {0} is even")]
    EvenOrder(u32),

    #[error("quantum trace is not a rational integer")]
    NonIntegerTrace,

    #[error("N = {0} is not an integer")]
    NonIntegerN(String),

    #[error("naive enumeration needs {0} assignments, over the budget")]
    BudgetExceeded(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
